//! Analytic scalar and vector fields used for manufactured solutions,
//! boundary data and forcing terms.

use crate::error::{Error, Result};
use std::sync::Arc;

type Scalar = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;
type Vector = Arc<dyn Fn(f64, f64) -> [f64; 2] + Send + Sync>;
type Matrix = Arc<dyn Fn(f64, f64) -> [[f64; 2]; 2] + Send + Sync>;

/// Callable scalar field with an optional analytic gradient.
#[derive(Clone)]
pub struct ScalarField {
    value: Scalar,
    gradient: Option<Vector>,
}

impl ScalarField {
    pub fn new(f: impl Fn(f64, f64) -> f64 + Send + Sync + 'static) -> Self {
        ScalarField {
            value: Arc::new(f),
            gradient: None,
        }
    }

    pub fn with_gradient(
        mut self,
        g: impl Fn(f64, f64) -> [f64; 2] + Send + Sync + 'static,
    ) -> Self {
        self.gradient = Some(Arc::new(g));
        self
    }

    pub fn eval(&self, p: [f64; 2]) -> f64 {
        (self.value)(p[0], p[1])
    }

    pub fn gradient(&self, p: [f64; 2]) -> Result<[f64; 2]> {
        match &self.gradient {
            Some(g) => Ok(g(p[0], p[1])),
            None => Err(Error::invalid("scalar field has no gradient")),
        }
    }

    pub fn has_gradient(&self) -> bool {
        self.gradient.is_some()
    }
}

/// Callable vector field with an optional analytic Jacobian
/// (`gradient[i][j] = d v_i / d x_j`).
#[derive(Clone)]
pub struct VectorField {
    value: Vector,
    gradient: Option<Matrix>,
}

impl VectorField {
    pub fn new(f: impl Fn(f64, f64) -> [f64; 2] + Send + Sync + 'static) -> Self {
        VectorField {
            value: Arc::new(f),
            gradient: None,
        }
    }

    pub fn constant(c: [f64; 2]) -> Self {
        VectorField::new(move |_, _| c).with_gradient(|_, _| [[0.0; 2]; 2])
    }

    pub fn zero() -> Self {
        Self::constant([0.0, 0.0])
    }

    pub fn with_gradient(
        mut self,
        g: impl Fn(f64, f64) -> [[f64; 2]; 2] + Send + Sync + 'static,
    ) -> Self {
        self.gradient = Some(Arc::new(g));
        self
    }

    pub fn eval(&self, p: [f64; 2]) -> [f64; 2] {
        (self.value)(p[0], p[1])
    }

    pub fn gradient(&self, p: [f64; 2]) -> Result<[[f64; 2]; 2]> {
        match &self.gradient {
            Some(g) => Ok(g(p[0], p[1])),
            None => Err(Error::invalid("vector field has no gradient")),
        }
    }

    pub fn has_gradient(&self) -> bool {
        self.gradient.is_some()
    }
}
