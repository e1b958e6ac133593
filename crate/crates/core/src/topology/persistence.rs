use serde::{Deserialize, Serialize};

use super::complex::TriangulatedField;
use super::critical::CriticalType;
use super::union_find::DisjointSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PairKind {
    #[serde(rename = "min-saddle")]
    MinSaddle,
    #[serde(rename = "saddle-max")]
    SaddleMax,
    #[serde(rename = "essential")]
    Essential,
}

impl PairKind {
    pub fn as_str(self) -> &'static str {
        match self {
            PairKind::MinSaddle => "min-saddle",
            PairKind::SaddleMax => "saddle-max",
            PairKind::Essential => "essential",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "min-saddle" => PairKind::MinSaddle,
            "saddle-max" => PairKind::SaddleMax,
            "essential" => PairKind::Essential,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairEnd {
    pub vertex: usize,
    pub value: f64,
    pub kind: CriticalType,
}

/// Birth is the lower end, death the upper end, so `persistence >= 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PersistencePair {
    pub birth: PairEnd,
    pub death: PairEnd,
    pub persistence: f64,
    pub kind: PairKind,
}

impl PersistencePair {
    pub fn is_essential(&self) -> bool {
        self.kind == PairKind::Essential
    }
}

/// One sweep of Elder's rule. `seq` lists vertices in sweep order and
/// `before(a, b)` tells whether `a` is swept before `b`. Returns
/// `(extremum, merge vertex)` pairs in the order the merges happen.
fn sweep(tf: &TriangulatedField, seq: impl Iterator<Item = usize>, before: impl Fn(usize, usize) -> bool) -> Vec<(usize, usize)> {
    let n = tf.len();
    let mut ds = DisjointSet::new(n);
    let mut oldest = vec![usize::MAX; n];
    let mut done = vec![false; n];
    let mut pairs = Vec::new();
    let mut roots: Vec<usize> = Vec::new();
    for v in seq {
        roots.clear();
        for &u in tf.neighbors(v) {
            if done[u] {
                let r = ds.find(u);
                if !roots.contains(&r) {
                    roots.push(r);
                }
            }
        }
        done[v] = true;
        match roots.len() {
            0 => oldest[v] = v,
            _ => {
                // The component born first survives; the others die here.
                roots.sort_by(|&a, &b| {
                    if before(oldest[a], oldest[b]) {
                        std::cmp::Ordering::Less
                    } else {
                        std::cmp::Ordering::Greater
                    }
                });
                let survivor = oldest[roots[0]];
                for &r in &roots[1..] {
                    pairs.push((oldest[r], v));
                }
                let mut root = v;
                for &r in &roots {
                    root = ds.union(root, r);
                }
                oldest[root] = survivor;
            }
        }
    }
    pairs
}

fn end(tf: &TriangulatedField, v: usize, kind: CriticalType) -> PairEnd {
    PairEnd {
        vertex: v,
        value: tf.value(v),
        kind,
    }
}

/// 0-dimensional persistence pairs: min-saddle pairs from the ascending
/// sweep, then saddle-max pairs from the descending sweep, then the
/// essential (global min, global max) pair.
pub fn persistence_pairs(tf: &TriangulatedField) -> Vec<PersistencePair> {
    let (join_saddle, split_saddle) = if tf.dim() == 2 {
        (CriticalType::Saddle, CriticalType::Saddle)
    } else {
        (CriticalType::OneSaddle, CriticalType::TwoSaddle)
    };
    let order = tf.order();
    let mut out = Vec::new();
    for (m, s) in sweep(tf, order.iter().copied(), |a, b| tf.rank(a) < tf.rank(b)) {
        out.push(PersistencePair {
            birth: end(tf, m, CriticalType::Minimum),
            death: end(tf, s, join_saddle),
            persistence: tf.value(s) - tf.value(m),
            kind: PairKind::MinSaddle,
        });
    }
    for (m, s) in sweep(tf, order.iter().rev().copied(), |a, b| tf.rank(a) > tf.rank(b)) {
        out.push(PersistencePair {
            birth: end(tf, s, split_saddle),
            death: end(tf, m, CriticalType::Maximum),
            persistence: tf.value(m) - tf.value(s),
            kind: PairKind::SaddleMax,
        });
    }
    let (lo, hi) = (order[0], order[order.len() - 1]);
    out.push(PersistencePair {
        birth: end(tf, lo, CriticalType::Minimum),
        death: end(tf, hi, CriticalType::Maximum),
        persistence: tf.value(hi) - tf.value(lo),
        kind: PairKind::Essential,
    });
    out
}

/// Non-essential pairs with persistence strictly above `epsilon`, plus the
/// essential pair.
pub fn filter_pairs(pairs: &[PersistencePair], epsilon: f64) -> Vec<PersistencePair> {
    pairs
        .iter()
        .filter(|p| p.is_essential() || p.persistence > epsilon)
        .copied()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::triangulate_grid;
    use crate::transform::ScalarGrid;

    #[test]
    fn w_profile() {
        // Values [0, 2, 1, 3] along x, repeated along y. The index tie-break
        // tilts the value-2 ridge into a maximum at its top end, so the
        // interior extrema of the profile yield one pair per sweep.
        let row = [0.0, 2.0, 1.0, 3.0];
        let vals = (0..8).map(|i| row[i % 4]).collect();
        let g = ScalarGrid::new_2d([4, 2], [0.0, 0.0], [1.0, 1.0], vals).unwrap();
        let pairs = persistence_pairs(&triangulate_grid(&g).unwrap());
        let summary: Vec<_> = pairs
            .iter()
            .map(|p| (p.kind, p.birth.vertex, p.death.vertex, p.persistence))
            .collect();
        assert_eq!(
            summary,
            vec![
                (PairKind::MinSaddle, 2, 1, 1.0),
                (PairKind::SaddleMax, 6, 5, 1.0),
                (PairKind::Essential, 0, 7, 3.0),
            ]
        );
    }

    #[test]
    fn monotone_has_only_essential() {
        let vals = (0..25).map(|i| i as f64).collect();
        let g = ScalarGrid::new_2d([5, 5], [0.0, 0.0], [1.0, 1.0], vals).unwrap();
        let pairs = persistence_pairs(&triangulate_grid(&g).unwrap());
        assert_eq!(pairs.len(), 1);
        assert!(pairs[0].is_essential());
    }
}
