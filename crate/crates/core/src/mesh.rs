//! Triangulations of the unit square: uniform and Shishkin-graded tensor
//! meshes, facet connectivity with globally oriented normals, and a plain
//! text import/export format.
//!
//! Conventions:
//! - every cell of the tensor grid is split by the diagonal from its
//!   lower-left to its upper-right corner;
//! - a facet stores its vertex pair sorted by index, and its unit normal is
//!   the direction `vertices[0] -> vertices[1]` rotated by +90 degrees. The
//!   normal is a property of the facet, not of an adjacent element, so any
//!   quantity attached to it (bubble DOFs, flux moments) is single-valued.

use crate::error::{Error, Result};
use std::collections::HashMap;
use std::fmt::Write as _;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vertex {
    pub x: f64,
    pub y: f64,
    /// True iff the vertex lies on a boundary facet.
    pub on_boundary: bool,
}

#[derive(Debug, Clone, Copy)]
pub struct Triangle {
    /// Vertex indices in counterclockwise order.
    pub vertices: [usize; 3],
    /// `facets[i]` connects the two vertices other than `vertices[i]`.
    pub facets: [usize; 3],
}

#[derive(Debug, Clone)]
pub struct Facet {
    /// Vertex indices with `vertices[0] < vertices[1]`.
    pub vertices: [usize; 2],
    /// Unit normal, fixed by the sorted-vertex convention.
    pub normal: [f64; 2],
    pub length: f64,
    /// One or two adjacent triangle indices.
    pub elements: Vec<usize>,
    pub on_boundary: bool,
}

#[derive(Debug, Clone)]
pub struct Mesh {
    pub vertices: Vec<Vertex>,
    pub triangles: Vec<Triangle>,
    pub facets: Vec<Facet>,
    /// Maximal element diameter.
    pub h_max: f64,
    /// Maximal over elements of longest-edge / (2 * inradius).
    pub aspect_ratio: f64,
}

impl Mesh {
    /// Builds facet connectivity from raw vertex coordinates and triangle
    /// connectivity, validating orientation and conformity.
    pub fn from_raw(coords: &[[f64; 2]], triangles: &[[usize; 3]]) -> Result<Mesh> {
        Self::from_raw_inner(coords, triangles, None)
    }

    fn from_raw_inner(
        coords: &[[f64; 2]],
        triangles: &[[usize; 3]],
        // map from entity to source line for parse diagnostics
        lines: Option<&dyn Fn(usize) -> usize>,
    ) -> Result<Mesh> {
        let n_vertices = coords.len();
        if n_vertices < 3 || triangles.is_empty() {
            return Err(Error::MeshValidation(
                "mesh needs at least 3 vertices and 1 triangle".into(),
            ));
        }
        let fail = |t: usize, msg: String| -> Error {
            match lines {
                Some(line_of) => Error::MeshParse {
                    line: line_of(t),
                    msg,
                },
                None => Error::MeshValidation(format!("triangle {t}: {msg}")),
            }
        };

        let mut used = vec![false; n_vertices];
        for (t, tri) in triangles.iter().enumerate() {
            let [a, b, c] = *tri;
            if a >= n_vertices || b >= n_vertices || c >= n_vertices {
                return Err(fail(t, format!("vertex index out of range in {tri:?}")));
            }
            if a == b || b == c || a == c {
                return Err(fail(t, format!("repeated vertex index in {tri:?}")));
            }
            let area = signed_area(coords[a], coords[b], coords[c]);
            if area <= 0.0 {
                return Err(fail(
                    t,
                    format!("non-positive signed area {area:e} (vertices must be counterclockwise)"),
                ));
            }
            used[a] = true;
            used[b] = true;
            used[c] = true;
        }
        if let Some(v) = used.iter().position(|u| !u) {
            return Err(Error::MeshValidation(format!(
                "vertex {v} is not used by any triangle"
            )));
        }

        // facet extraction keyed on sorted vertex pairs
        let mut facet_ids: HashMap<(usize, usize), usize> = HashMap::new();
        let mut facets: Vec<Facet> = Vec::new();
        let mut tris: Vec<Triangle> = Vec::with_capacity(triangles.len());
        for (t, tri) in triangles.iter().enumerate() {
            let mut facet_of_tri = [0usize; 3];
            for local in 0..3 {
                let p = tri[(local + 1) % 3];
                let q = tri[(local + 2) % 3];
                let key = (p.min(q), p.max(q));
                let id = *facet_ids.entry(key).or_insert_with(|| {
                    let (v0, v1) = key;
                    let d = [coords[v1][0] - coords[v0][0], coords[v1][1] - coords[v0][1]];
                    let len = d[0].hypot(d[1]);
                    facets.push(Facet {
                        vertices: [v0, v1],
                        normal: [-d[1] / len, d[0] / len],
                        length: len,
                        elements: Vec::with_capacity(2),
                        on_boundary: false,
                    });
                    facets.len() - 1
                });
                facets[id].elements.push(t);
                if facets[id].elements.len() > 2 {
                    return Err(fail(
                        t,
                        format!("facet {:?} shared by more than two triangles", key),
                    ));
                }
                facet_of_tri[local] = id;
            }
            tris.push(Triangle {
                vertices: *tri,
                facets: facet_of_tri,
            });
        }

        let mut vertices: Vec<Vertex> = coords
            .iter()
            .map(|c| Vertex {
                x: c[0],
                y: c[1],
                on_boundary: false,
            })
            .collect();
        for facet in &mut facets {
            facet.on_boundary = facet.elements.len() == 1;
            if facet.on_boundary {
                vertices[facet.vertices[0]].on_boundary = true;
                vertices[facet.vertices[1]].on_boundary = true;
            }
        }

        // hanging-vertex check: no vertex may lie strictly inside a boundary facet
        for facet in &facets {
            if !facet.on_boundary {
                continue;
            }
            let a = [vertices[facet.vertices[0]].x, vertices[facet.vertices[0]].y];
            let b = [vertices[facet.vertices[1]].x, vertices[facet.vertices[1]].y];
            for (v, vert) in vertices.iter().enumerate() {
                if v == facet.vertices[0] || v == facet.vertices[1] {
                    continue;
                }
                if point_inside_segment([vert.x, vert.y], a, b) {
                    return Err(Error::MeshValidation(format!(
                        "vertex {v} hangs on facet {:?}",
                        facet.vertices
                    )));
                }
            }
        }

        let mut h_max = 0.0f64;
        let mut aspect = 0.0f64;
        for tri in &tris {
            let [a, b, c] = tri.vertices.map(|v| [vertices[v].x, vertices[v].y]);
            let la = dist(b, c);
            let lb = dist(a, c);
            let lc = dist(a, b);
            let longest = la.max(lb).max(lc);
            let area = signed_area(a, b, c);
            let s = 0.5 * (la + lb + lc);
            let inradius = area / s;
            h_max = h_max.max(longest);
            aspect = aspect.max(longest / (2.0 * inradius));
        }

        Ok(Mesh {
            vertices,
            triangles: tris,
            facets,
            h_max,
            aspect_ratio: aspect,
        })
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn n_triangles(&self) -> usize {
        self.triangles.len()
    }

    pub fn n_facets(&self) -> usize {
        self.facets.len()
    }

    pub fn vertex_coords(&self, v: usize) -> [f64; 2] {
        [self.vertices[v].x, self.vertices[v].y]
    }

    /// Coordinates of the three corners of triangle `t`.
    pub fn triangle_coords(&self, t: usize) -> [[f64; 2]; 3] {
        self.triangles[t].vertices.map(|v| self.vertex_coords(v))
    }

    pub fn triangle_area(&self, t: usize) -> f64 {
        let [a, b, c] = self.triangle_coords(t);
        signed_area(a, b, c)
    }

    pub fn centroid(&self, t: usize) -> [f64; 2] {
        let [a, b, c] = self.triangle_coords(t);
        [
            (a[0] + b[0] + c[0]) / 3.0,
            (a[1] + b[1] + c[1]) / 3.0,
        ]
    }

    /// Physical point of barycentric coordinates on triangle `t`.
    pub fn barycentric_to_physical(&self, t: usize, lambda: [f64; 3]) -> [f64; 2] {
        let [a, b, c] = self.triangle_coords(t);
        [
            lambda[0] * a[0] + lambda[1] * b[0] + lambda[2] * c[0],
            lambda[0] * a[1] + lambda[1] * b[1] + lambda[2] * c[1],
        ]
    }

    /// Barycentric coordinates of a physical point relative to triangle `t`.
    pub fn physical_to_barycentric(&self, t: usize, p: [f64; 2]) -> [f64; 3] {
        let [a, b, c] = self.triangle_coords(t);
        let det = signed_area(a, b, c) * 2.0;
        let l1 = ((p[0] - a[0]) * (c[1] - a[1]) - (p[1] - a[1]) * (c[0] - a[0])) / det;
        let l2 = ((p[1] - a[1]) * (b[0] - a[0]) - (p[0] - a[0]) * (b[1] - a[1])) / det;
        [1.0 - l1 - l2, l1, l2]
    }

    /// +1 if the global normal of `facets[local]` points out of triangle `t`.
    pub fn outward_sign(&self, t: usize, local: usize) -> f64 {
        let facet = &self.facets[self.triangles[t].facets[local]];
        let a = self.vertex_coords(facet.vertices[0]);
        let b = self.vertex_coords(facet.vertices[1]);
        let mid = [0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1])];
        let c = self.centroid(t);
        let d = (mid[0] - c[0]) * facet.normal[0] + (mid[1] - c[1]) * facet.normal[1];
        if d > 0.0 {
            1.0
        } else {
            -1.0
        }
    }

    pub fn total_area(&self) -> f64 {
        (0..self.n_triangles()).map(|t| self.triangle_area(t)).sum()
    }
}

fn signed_area(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> f64 {
    0.5 * ((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]))
}

fn dist(a: [f64; 2], b: [f64; 2]) -> f64 {
    (b[0] - a[0]).hypot(b[1] - a[1])
}

fn point_inside_segment(p: [f64; 2], a: [f64; 2], b: [f64; 2]) -> bool {
    let lab = dist(a, b);
    let d = dist(a, p) + dist(p, b) - lab;
    d.abs() < 1e-12 * lab.max(1.0) && dist(a, p) > 1e-12 && dist(p, b) > 1e-12
}

/// Tensor-product triangulation from sorted coordinate arrays; every cell is
/// split by its lower-left to upper-right diagonal.
fn build_tensor_mesh(xs: &[f64], ys: &[f64]) -> Result<Mesh> {
    let nx = xs.len() - 1;
    let ny = ys.len() - 1;
    let mut coords = Vec::with_capacity((nx + 1) * (ny + 1));
    for y in ys {
        for x in xs {
            coords.push([*x, *y]);
        }
    }
    let vid = |i: usize, j: usize| j * (nx + 1) + i;
    let mut tris = Vec::with_capacity(2 * nx * ny);
    for j in 0..ny {
        for i in 0..nx {
            let a = vid(i, j);
            let b = vid(i + 1, j);
            let c = vid(i + 1, j + 1);
            let d = vid(i, j + 1);
            tris.push([a, b, c]);
            tris.push([a, c, d]);
        }
    }
    Mesh::from_raw(&coords, &tris)
}

/// Uniform n-by-n tensor mesh of the unit square: (n+1)^2 vertices, 2n^2
/// triangles.
pub fn build_uniform_mesh(n: usize) -> Result<Mesh> {
    if n == 0 {
        return Err(Error::invalid("uniform mesh needs n >= 1"));
    }
    let grid: Vec<f64> = (0..=n).map(|i| i as f64 / n as f64).collect();
    build_tensor_mesh(&grid, &grid)
}

/// Shishkin tensor mesh: uniform in x; in y, `ny/2` intervals resolve the
/// layer [0, tau] and `ny/2` cover [tau, 1].
pub fn build_shishkin_mesh(nx: usize, ny: usize, tau: f64) -> Result<Mesh> {
    if nx < 2 || ny < 2 {
        return Err(Error::invalid("shishkin mesh needs nx >= 2 and ny >= 2"));
    }
    if ny % 2 != 0 {
        return Err(Error::invalid(format!("shishkin mesh needs even ny, got {ny}")));
    }
    if !(tau > 0.0 && tau < 1.0) {
        return Err(Error::invalid(format!(
            "shishkin transition tau must lie in (0,1), got {tau}"
        )));
    }
    let xs: Vec<f64> = (0..=nx).map(|i| i as f64 / nx as f64).collect();
    let half = ny / 2;
    let ys: Vec<f64> = (0..=ny)
        .map(|j| {
            if j <= half {
                2.0 * tau * (j as f64 / ny as f64)
            } else {
                // anchored at y=1 so the top boundary is exact
                1.0 - (1.0 - tau) * (2.0 * (ny - j) as f64 / ny as f64)
            }
        })
        .collect();
    build_tensor_mesh(&xs, &ys)
}

/// Transition point tau = min(0.5 sqrt(eps) ln(199), 1/2): the distance from
/// the wall at which the layer profile tanh(y/sqrt(eps)) reaches 99% of the
/// free-stream velocity, clamped so the graded region never exceeds half the
/// domain.
pub fn shishkin_transition(epsilon: f64) -> Result<f64> {
    if !(epsilon > 0.0) {
        return Err(Error::invalid(format!(
            "layer parameter epsilon must be positive, got {epsilon}"
        )));
    }
    Ok((0.5 * epsilon.sqrt() * 199f64.ln()).min(0.5))
}

/// Serializes a mesh to the plain-text exchange format:
/// a header `vertices N / triangles M`, then N lines `x y`, then M lines
/// `i j k` with 0-based counterclockwise connectivity. Facets are derived on
/// import, never serialized.
pub fn export_mesh(mesh: &Mesh) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "vertices {} / triangles {}",
        mesh.n_vertices(),
        mesh.n_triangles()
    );
    for v in &mesh.vertices {
        let _ = writeln!(out, "{} {}", v.x, v.y);
    }
    for t in &mesh.triangles {
        let _ = writeln!(out, "{} {} {}", t.vertices[0], t.vertices[1], t.vertices[2]);
    }
    out
}

/// Parses the plain-text format written by [`export_mesh`]. Errors carry the
/// 1-based line number of the offending entry.
pub fn import_mesh(text: &str) -> Result<Mesh> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (header_line, header) = lines
        .next()
        .ok_or_else(|| Error::MeshParse {
            line: 1,
            msg: "empty input".into(),
        })?;
    let parse_header = |s: &str| -> Option<(usize, usize)> {
        let (v, t) = s.split_once('/')?;
        let n = v.trim().strip_prefix("vertices")?.trim().parse().ok()?;
        let m = t.trim().strip_prefix("triangles")?.trim().parse().ok()?;
        Some((n, m))
    };
    let (n, m) = parse_header(header).ok_or_else(|| Error::MeshParse {
        line: header_line + 1,
        msg: format!("expected header 'vertices N / triangles M', got '{header}'"),
    })?;

    let mut coords = Vec::with_capacity(n);
    let mut tri_lines = Vec::with_capacity(m);
    let mut tris = Vec::with_capacity(m);
    for k in 0..n + m {
        let (idx, line) = lines.next().ok_or_else(|| Error::MeshParse {
            line: header_line + 2 + k,
            msg: "unexpected end of input".into(),
        })?;
        let fields: Vec<&str> = line.split_whitespace().collect();
        if k < n {
            if fields.len() != 2 {
                return Err(Error::MeshParse {
                    line: idx + 1,
                    msg: format!("expected 'x y', got '{line}'"),
                });
            }
            let x: f64 = fields[0].parse().map_err(|_| Error::MeshParse {
                line: idx + 1,
                msg: format!("bad coordinate '{}'", fields[0]),
            })?;
            let y: f64 = fields[1].parse().map_err(|_| Error::MeshParse {
                line: idx + 1,
                msg: format!("bad coordinate '{}'", fields[1]),
            })?;
            coords.push([x, y]);
        } else {
            if fields.len() != 3 {
                return Err(Error::MeshParse {
                    line: idx + 1,
                    msg: format!("expected 'i j k', got '{line}'"),
                });
            }
            let mut tri = [0usize; 3];
            for (slot, f) in tri.iter_mut().zip(&fields) {
                *slot = f.parse().map_err(|_| Error::MeshParse {
                    line: idx + 1,
                    msg: format!("bad vertex index '{f}'"),
                })?;
            }
            tri_lines.push(idx + 1);
            tris.push(tri);
        }
    }
    Mesh::from_raw_inner(&coords, &tris, Some(&|t| tri_lines[t]))
}
