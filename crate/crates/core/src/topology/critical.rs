use serde::{Deserialize, Serialize};

use super::complex::TriangulatedField;
use super::union_find::DisjointSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CriticalType {
    #[serde(rename = "min")]
    Minimum,
    #[serde(rename = "saddle")]
    Saddle,
    #[serde(rename = "1-saddle")]
    OneSaddle,
    #[serde(rename = "2-saddle")]
    TwoSaddle,
    #[serde(rename = "max")]
    Maximum,
}

impl CriticalType {
    pub fn as_str(self) -> &'static str {
        match self {
            CriticalType::Minimum => "min",
            CriticalType::Saddle => "saddle",
            CriticalType::OneSaddle => "1-saddle",
            CriticalType::TwoSaddle => "2-saddle",
            CriticalType::Maximum => "max",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "min" => CriticalType::Minimum,
            "saddle" => CriticalType::Saddle,
            "1-saddle" => CriticalType::OneSaddle,
            "2-saddle" => CriticalType::TwoSaddle,
            "max" => CriticalType::Maximum,
            _ => return None,
        })
    }

    /// Morse index in dimension `dim`.
    pub fn index(self, dim: usize) -> usize {
        match self {
            CriticalType::Minimum => 0,
            CriticalType::Saddle | CriticalType::OneSaddle => 1,
            CriticalType::TwoSaddle => 2,
            CriticalType::Maximum => dim,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CriticalPoint {
    pub vertex: usize,
    pub value: f64,
    pub kind: CriticalType,
    pub index: usize,
    /// Connected components of the lower and upper links.
    pub lower_components: usize,
    pub upper_components: usize,
}

impl CriticalPoint {
    /// Number of simple sublevel merges this vertex stands for.
    pub fn join_multiplicity(&self) -> usize {
        self.lower_components.saturating_sub(1)
    }

    /// Number of simple superlevel merges this vertex stands for.
    pub fn split_multiplicity(&self) -> usize {
        self.upper_components.saturating_sub(1)
    }
}

/// Component counts of the lower and upper link of `v`.
pub fn link_components(tf: &TriangulatedField, v: usize) -> (usize, usize) {
    let nbrs = tf.neighbors(v);
    let local = |u: usize| nbrs.binary_search(&u).unwrap();
    let mut ds = DisjointSet::new(nbrs.len());
    let rv = tf.rank(v);
    for &c in tf.star(v) {
        let cell = tf.cell(c);
        for (i, &a) in cell.iter().enumerate() {
            if a == v {
                continue;
            }
            for &b in &cell[i + 1..] {
                if b != v && (tf.rank(a) < rv) == (tf.rank(b) < rv) {
                    ds.union(local(a), local(b));
                }
            }
        }
    }
    let (mut lower, mut upper) = (0, 0);
    for (i, &u) in nbrs.iter().enumerate() {
        if ds.find(i) == i {
            if tf.rank(u) < rv {
                lower += 1;
            } else {
                upper += 1;
            }
        }
    }
    (lower, upper)
}

/// Classifies a vertex from its link; `None` for regular vertices.
///
/// A vertex whose lower link splits is a (1-)saddle; a 3D vertex whose only
/// irregularity is a split upper link is a 2-saddle. In 2D a split upper
/// link also marks a saddle, which only occurs on the boundary.
pub fn classify_vertex(tf: &TriangulatedField, v: usize) -> Option<CriticalPoint> {
    let (lower, upper) = link_components(tf, v);
    let kind = if lower == 0 {
        CriticalType::Minimum
    } else if upper == 0 {
        CriticalType::Maximum
    } else if lower < 2 && upper < 2 {
        return None;
    } else if tf.dim() == 2 {
        CriticalType::Saddle
    } else if lower >= 2 {
        CriticalType::OneSaddle
    } else {
        CriticalType::TwoSaddle
    };
    Some(CriticalPoint {
        vertex: v,
        value: tf.value(v),
        kind,
        index: kind.index(tf.dim()),
        lower_components: lower,
        upper_components: upper,
    })
}

/// All critical vertices, in vertex order.
pub fn classify_critical_points(tf: &TriangulatedField) -> Vec<CriticalPoint> {
    (0..tf.len()).filter_map(|v| classify_vertex(tf, v)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::triangulate_grid;
    use crate::transform::ScalarGrid;

    fn tf(nx: usize, ny: usize, vals: Vec<f64>) -> TriangulatedField {
        triangulate_grid(&ScalarGrid::new_2d([nx, ny], [0.0, 0.0], [1.0, 1.0], vals).unwrap()).unwrap()
    }

    #[test]
    fn monotone_field_has_two_extrema() {
        let n = 6;
        let vals = (0..n * n).map(|i| ((i % n) + (i / n)) as f64).collect();
        let cps = classify_critical_points(&tf(n, n, vals));
        assert_eq!(cps.len(), 2);
        assert_eq!((cps[0].vertex, cps[0].kind), (0, CriticalType::Minimum));
        assert_eq!((cps[1].vertex, cps[1].kind), (n * n - 1, CriticalType::Maximum));
    }

    #[test]
    fn centre_maximum() {
        let vals = vec![1.0, 2.0, 3.0, 8.0, 10.0, 4.0, 7.0, 6.0, 5.0];
        let cps = classify_critical_points(&tf(3, 3, vals));
        let maxima: Vec<_> = cps.iter().filter(|c| c.kind == CriticalType::Maximum).collect();
        assert_eq!(maxima.len(), 1);
        assert_eq!(maxima[0].vertex, 4);
    }

    #[test]
    fn interior_saddle() {
        // High on one diagonal pair, low on the other.
        let vals = vec![0.0, 9.0, 0.5, 9.5, 5.0, 8.5, 1.0, 8.0, 1.5];
        let c = classify_vertex(&tf(3, 3, vals), 4).unwrap();
        assert_eq!(c.kind, CriticalType::Saddle);
        assert_eq!((c.lower_components, c.upper_components), (2, 2));
    }
}
