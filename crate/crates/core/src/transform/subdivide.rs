use std::collections::HashMap;

use super::grid::PLField;
use crate::error::{Error, Result};
use crate::hofield::{ElementKind, HighOrderField, Point2};

/// Identity of a subdivision vertex, shared between elements when it lies
/// on an original vertex or edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum SubVertex {
    Corner(usize),
    /// Point `step / m` of the way from `lo` to `hi` (`lo < hi`).
    Edge { lo: usize, hi: usize, step: usize },
    Interior { element: usize, i: usize, j: usize },
}

/// Lattice coordinates `(i, j)` of an element's subdivision points and
/// their reference positions.
fn lattice(kind: ElementKind, m: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for j in 0..=m {
        let top = match kind {
            ElementKind::Triangle => m - j,
            ElementKind::Quadrilateral => m,
        };
        for i in 0..=top {
            out.push((i, j));
        }
    }
    out
}

fn classify(kind: ElementKind, verts: &[usize], e: usize, i: usize, j: usize, m: usize) -> SubVertex {
    // Walk the boundary: corner k sits at a lattice corner, edge k runs from
    // corner k to corner k+1.
    let on_edge = |a: usize, b: usize, step_from_a: usize| {
        if step_from_a == 0 {
            SubVertex::Corner(a)
        } else if step_from_a == m {
            SubVertex::Corner(b)
        } else if a < b {
            SubVertex::Edge { lo: a, hi: b, step: step_from_a }
        } else {
            SubVertex::Edge { lo: b, hi: a, step: m - step_from_a }
        }
    };
    match kind {
        ElementKind::Triangle => {
            if j == 0 {
                on_edge(verts[0], verts[1], i)
            } else if i + j == m {
                on_edge(verts[1], verts[2], j)
            } else if i == 0 {
                on_edge(verts[2], verts[0], m - j)
            } else {
                SubVertex::Interior { element: e, i, j }
            }
        }
        ElementKind::Quadrilateral => {
            if j == 0 {
                on_edge(verts[0], verts[1], i)
            } else if i == m {
                on_edge(verts[1], verts[2], j)
            } else if j == m {
                on_edge(verts[2], verts[3], m - i)
            } else if i == 0 {
                on_edge(verts[3], verts[0], m - j)
            } else {
                SubVertex::Interior { element: e, i, j }
            }
        }
    }
}

/// Uniformly refines every element by factor `m` (triangles into `m²`
/// triangles, quadrilaterals into `m²` quads split along the local
/// `(i, j)–(i+1, j+1)` diagonal). Vertices on shared edges and corners take
/// the mean of the element-local values of every element whose closure
/// contains them.
pub fn subdivide(field: &HighOrderField, m: usize) -> Result<PLField> {
    if m == 0 {
        return Err(Error::InvalidParameter("refinement factor must be >= 1".into()));
    }
    let mesh = field.mesh();
    let mf = m as f64;
    let mut ids: HashMap<SubVertex, usize> = HashMap::new();
    let mut positions: Vec<Point2> = Vec::new();
    let mut sums: Vec<f64> = Vec::new();
    let mut counts: Vec<u32> = Vec::new();
    let mut triangles = Vec::new();

    for e in 0..mesh.num_elements() {
        let el = mesh.element(e);
        let pts = lattice(el.kind, m);
        let mut local = HashMap::with_capacity(pts.len());
        for &(i, j) in &pts {
            let key = classify(el.kind, &el.vertices, e, i, j, m);
            let xi = [i as f64 / mf, j as f64 / mf];
            let value = field.eval_reference(e, xi);
            let id = *ids.entry(key).or_insert_with(|| {
                positions.push(match key {
                    SubVertex::Corner(v) => mesh.vertices()[v],
                    _ => mesh.to_physical(e, xi),
                });
                sums.push(0.0);
                counts.push(0);
                positions.len() - 1
            });
            sums[id] += value;
            counts[id] += 1;
            local.insert((i, j), id);
        }
        let at = |i: usize, j: usize| local[&(i, j)];
        match el.kind {
            ElementKind::Triangle => {
                for j in 0..m {
                    for i in 0..(m - j) {
                        triangles.push([at(i, j), at(i + 1, j), at(i, j + 1)]);
                        if i + j + 1 < m {
                            triangles.push([at(i + 1, j), at(i + 1, j + 1), at(i, j + 1)]);
                        }
                    }
                }
            }
            ElementKind::Quadrilateral => {
                for j in 0..m {
                    for i in 0..m {
                        let q = [at(i, j), at(i + 1, j), at(i + 1, j + 1), at(i, j + 1)];
                        triangles.push([q[0], q[1], q[2]]);
                        triangles.push([q[0], q[2], q[3]]);
                    }
                }
            }
        }
    }
    let values = sums
        .iter()
        .zip(&counts)
        .map(|(s, &c)| s / c as f64)
        .collect();
    PLField::new(positions, triangles, values)
}
