//! Quadrature rules on the reference triangle and on intervals.
//!
//! Triangle rules are area-normalized: weights sum to one and an integral is
//! computed as `area * sum(w_i * f(p_i))`. Low degrees use the classical
//! symmetric point sets; degrees above five fall back to a conical-product
//! Gauss rule (Gauss-Jacobi in the collapsed direction), which keeps all
//! weights positive at every degree.

use crate::error::{Error, Result};
use nalgebra::DMatrix;

/// Quadrature rule on the reference triangle with barycentric points.
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    /// Barycentric coordinates (l0, l1, l2) of each point.
    pub points: Vec<[f64; 3]>,
    /// Positive weights summing to 1.
    pub weights: Vec<f64>,
    /// Highest total polynomial degree integrated exactly.
    pub degree: usize,
}

/// Maximum supported exactness degree for [`triangle_rule`].
pub const MAX_TRIANGLE_DEGREE: usize = 12;

/// Returns a positive-weight rule exact for polynomials of total degree
/// `degree` (the returned rule may be exact to a higher degree than asked).
pub fn triangle_rule(degree: usize) -> Result<QuadratureRule> {
    if degree < 1 || degree > MAX_TRIANGLE_DEGREE {
        return Err(Error::invalid(format!(
            "quadrature degree {degree} outside supported range 1..={MAX_TRIANGLE_DEGREE}"
        )));
    }
    let rule = match degree {
        1 => centroid_rule(),
        2 => three_point_rule(),
        3 | 4 => six_point_rule(),
        5 => seven_point_rule(),
        d => conical_rule(d),
    };
    Ok(rule)
}

fn centroid_rule() -> QuadratureRule {
    QuadratureRule {
        points: vec![[1.0 / 3.0; 3]],
        weights: vec![1.0],
        degree: 1,
    }
}

fn three_point_rule() -> QuadratureRule {
    let mut points = Vec::with_capacity(3);
    for k in 0..3 {
        let mut p = [1.0 / 6.0; 3];
        p[k] = 2.0 / 3.0;
        points.push(p);
    }
    QuadratureRule {
        points,
        weights: vec![1.0 / 3.0; 3],
        degree: 2,
    }
}

/// Two symmetric orbits, exact to degree 4 (also used for degree-3 requests:
/// the classical 4-point degree-3 rule has a negative weight).
fn six_point_rule() -> QuadratureRule {
    const A1: f64 = 0.445948490915965;
    const W1: f64 = 0.223381589678011;
    const A2: f64 = 0.091576213509771;
    const W2: f64 = 0.109951743655322;
    let mut points = Vec::with_capacity(6);
    let mut weights = Vec::with_capacity(6);
    for &(a, w) in &[(A1, W1), (A2, W2)] {
        for k in 0..3 {
            let mut p = [a; 3];
            p[k] = 1.0 - 2.0 * a;
            points.push(p);
            weights.push(w);
        }
    }
    QuadratureRule {
        points,
        weights,
        degree: 4,
    }
}

fn seven_point_rule() -> QuadratureRule {
    let s15 = 15.0_f64.sqrt();
    let a = (6.0 + s15) / 21.0;
    let wa = (155.0 + s15) / 1200.0;
    let b = (6.0 - s15) / 21.0;
    let wb = (155.0 - s15) / 1200.0;
    let mut points = vec![[1.0 / 3.0; 3]];
    let mut weights = vec![9.0 / 40.0];
    for &(c, w) in &[(a, wa), (b, wb)] {
        for k in 0..3 {
            let mut p = [c; 3];
            p[k] = 1.0 - 2.0 * c;
            points.push(p);
            weights.push(w);
        }
    }
    QuadratureRule {
        points,
        weights,
        degree: 5,
    }
}

/// Conical product rule: Gauss-Jacobi(1,0) x Gauss-Legendre mapped through
/// the Duffy transform (x, y) = (u, v(1-u)).
fn conical_rule(degree: usize) -> QuadratureRule {
    let m = degree / 2 + 1;
    let (xu, wu) = gauss_jacobi10_01(m);
    let (xv, wv) = gauss_legendre_01(m);
    let mut points = Vec::with_capacity(m * m);
    let mut weights = Vec::with_capacity(m * m);
    for i in 0..m {
        for j in 0..m {
            let x = xu[i];
            let y = xv[j] * (1.0 - xu[i]);
            points.push([1.0 - x - y, x, y]);
            // wu sums to 1/2 (triangle area); normalize the product to 1.
            weights.push(2.0 * wu[i] * wv[j]);
        }
    }
    QuadratureRule {
        points,
        weights,
        degree,
    }
}

/// Gauss-Legendre nodes/weights on (0,1); weights sum to 1.
/// Exact for polynomials of degree 2n-1.
pub fn gauss_legendre_01(n: usize) -> (Vec<f64>, Vec<f64>) {
    // Legendre on [-1,1]: diag 0, offdiag^2 = k^2/(4k^2-1), mu0 = 2.
    let offdiag: Vec<f64> = (1..n)
        .map(|k| {
            let k = k as f64;
            (k * k / (4.0 * k * k - 1.0)).sqrt()
        })
        .collect();
    let (nodes, weights) = golub_welsch(&vec![0.0; n], &offdiag, 2.0);
    let nodes01 = nodes.iter().map(|x| 0.5 * (x + 1.0)).collect();
    let weights01 = weights.iter().map(|w| 0.5 * w).collect();
    (nodes01, weights01)
}

/// Gauss-Jacobi nodes/weights for the weight (1-t) on (0,1); weights sum to 1/2.
/// Exact for int_0^1 p(t)(1-t) dt with deg p <= 2n-1.
fn gauss_jacobi10_01(n: usize) -> (Vec<f64>, Vec<f64>) {
    let diag: Vec<f64> = (0..n)
        .map(|k| {
            let k = k as f64;
            -1.0 / ((2.0 * k + 1.0) * (2.0 * k + 3.0))
        })
        .collect();
    let offdiag: Vec<f64> = (1..n)
        .map(|k| {
            let k = k as f64;
            (k * (k + 1.0) / ((2.0 * k + 1.0) * (2.0 * k + 1.0))).sqrt()
        })
        .collect();
    let (nodes, weights) = golub_welsch(&diag, &offdiag, 2.0);
    let nodes01 = nodes.iter().map(|x| 0.5 * (x + 1.0)).collect();
    // int_{-1}^{1} (1-x) dx = 2 maps to int_0^1 (1-t) dt = 1/2.
    let weights01 = weights.iter().map(|w| 0.25 * w).collect();
    (nodes01, weights01)
}

/// Nodes and weights from the symmetric tridiagonal Jacobi matrix.
fn golub_welsch(diag: &[f64], offdiag: &[f64], mu0: f64) -> (Vec<f64>, Vec<f64>) {
    let n = diag.len();
    if n == 1 {
        return (vec![diag[0]], vec![mu0]);
    }
    let mut jac = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        jac[(i, i)] = diag[i];
    }
    for i in 0..n - 1 {
        jac[(i, i + 1)] = offdiag[i];
        jac[(i + 1, i)] = offdiag[i];
    }
    let eig = jac.symmetric_eigen();
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|i| {
            let v0 = eig.eigenvectors[(0, i)];
            (eig.eigenvalues[i], mu0 * v0 * v0)
        })
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    pairs.into_iter().unzip()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// int_T x^a y^b over the reference triangle = a! b! / (a+b+2)!.
    fn exact_monomial(a: u32, b: u32) -> f64 {
        let fact = |k: u32| (1..=k).map(|i| i as f64).product::<f64>().max(1.0);
        fact(a) * fact(b) / fact(a + b + 2)
    }

    fn rule_integral(rule: &QuadratureRule, a: u32, b: u32) -> f64 {
        // physical reference triangle has area 1/2
        0.5 * rule
            .points
            .iter()
            .zip(&rule.weights)
            .map(|(p, w)| w * p[1].powi(a as i32) * p[2].powi(b as i32))
            .sum::<f64>()
    }

    #[test]
    fn degree_one_is_centroid() {
        let r = triangle_rule(1).unwrap();
        assert_eq!(r.points.len(), 1);
        assert_eq!(r.weights[0], 1.0);
        assert_eq!(r.points[0], [1.0 / 3.0; 3]);
    }

    #[test]
    fn degree_two_rule_integrates_quadratics() {
        let r = triangle_rule(2).unwrap();
        assert_eq!(r.points.len(), 3);
        // spec oracle: int x^2 = 1/12
        assert!((rule_integral(&r, 2, 0) - 1.0 / 12.0).abs() < 1e-15);
        assert!((rule_integral(&r, 1, 1) - exact_monomial(1, 1)).abs() < 1e-15);
        assert!((rule_integral(&r, 0, 2) - 1.0 / 12.0).abs() < 1e-15);
    }

    #[test]
    fn degree_eight_rule_matches_beta_oracle() {
        let r = triangle_rule(8).unwrap();
        let exact = exact_monomial(4, 4); // 4!*4!/10!
        assert!((rule_integral(&r, 4, 4) - exact).abs() < 1e-13 * exact.max(1.0));
    }

    #[test]
    fn all_degrees_integrate_monomials_exactly() {
        for degree in 1..=MAX_TRIANGLE_DEGREE {
            let r = triangle_rule(degree).unwrap();
            let wsum: f64 = r.weights.iter().sum();
            assert!(
                (wsum - 1.0).abs() < 1e-14,
                "degree {degree}: weights sum {wsum}"
            );
            assert!(r.weights.iter().all(|&w| w > 0.0), "degree {degree}");
            for a in 0..=degree as u32 {
                for b in 0..=(degree as u32 - a) {
                    let exact = exact_monomial(a, b);
                    let got = rule_integral(&r, a, b);
                    assert!(
                        (got - exact).abs() < 1e-13,
                        "degree {degree} monomial x^{a} y^{b}: {got} vs {exact}"
                    );
                }
            }
        }
    }

    #[test]
    fn unsupported_degrees_are_rejected() {
        assert!(triangle_rule(0).is_err());
        assert!(triangle_rule(13).is_err());
    }

    #[test]
    fn gauss_legendre_is_exact_to_two_n_minus_one() {
        for n in 1..=10 {
            let (x, w) = gauss_legendre_01(n);
            for k in 0..=(2 * n - 1) {
                let got: f64 = x
                    .iter()
                    .zip(&w)
                    .map(|(xi, wi)| wi * xi.powi(k as i32))
                    .sum();
                let exact = 1.0 / (k as f64 + 1.0);
                assert!(
                    (got - exact).abs() < 1e-14,
                    "n={n} k={k}: {got} vs {exact}"
                );
            }
        }
    }
}
