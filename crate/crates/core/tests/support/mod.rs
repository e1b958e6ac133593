#![allow(dead_code)]

use std::collections::VecDeque;

use hotopo::topology::{triangulate_grid, TriangulatedField};
use hotopo::transform::ScalarGrid;

pub fn grid_field(nx: usize, ny: usize, values: Vec<f64>) -> TriangulatedField {
    let g = ScalarGrid::new_2d([nx, ny], [0.0, 0.0], [1.0, 1.0], values).unwrap();
    triangulate_grid(&g).unwrap()
}

/// `(birth vertex, death vertex)` pairs found by recomputing the connected
/// components of every prefix of the sweep from scratch. Each component is
/// named after its first vertex in sweep order; a name that disappears
/// between consecutive prefixes died at the vertex just added.
pub fn brute_force_pairs(tf: &TriangulatedField, ascending: bool) -> Vec<(usize, usize)> {
    let mut seq: Vec<usize> = tf.order().to_vec();
    if !ascending {
        seq.reverse();
    }
    let n = seq.len();
    let mut pos = vec![0; n];
    for (i, &v) in seq.iter().enumerate() {
        pos[v] = i;
    }
    let names = |r: usize| -> Vec<usize> {
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for &s in &seq[..=r] {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut first = s;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                if pos[v] < pos[first] {
                    first = v;
                }
                for &u in tf.neighbors(v) {
                    if pos[u] <= r && !seen[u] {
                        seen[u] = true;
                        queue.push_back(u);
                    }
                }
            }
            out.push(first);
        }
        out.sort_unstable();
        out
    };
    let mut pairs = Vec::new();
    let mut prev = names(0);
    for r in 1..n {
        let cur = names(r);
        for &p in &prev {
            if cur.binary_search(&p).is_err() {
                pairs.push((p, seq[r]));
            }
        }
        prev = cur;
    }
    pairs
}

/// Whether `set` induces a connected subgraph of the complex's edges.
pub fn is_edge_connected(tf: &TriangulatedField, set: &[usize]) -> bool {
    if set.is_empty() {
        return true;
    }
    let mut inside = vec![false; tf.len()];
    for &v in set {
        inside[v] = true;
    }
    let mut seen = vec![false; tf.len()];
    seen[set[0]] = true;
    let mut queue = VecDeque::from([set[0]]);
    let mut count = 1;
    while let Some(v) = queue.pop_front() {
        for &u in tf.neighbors(v) {
            if inside[u] && !seen[u] {
                seen[u] = true;
                count += 1;
                queue.push_back(u);
            }
        }
    }
    count == set.len()
}

/// Multiset equality of `(birth, death)` values of two pair lists up to
/// `tol`, matching greedily.
pub fn pairs_match(a: &[hotopo::topology::PersistencePair], b: &[hotopo::topology::PersistencePair], tol: f64) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut used = vec![false; b.len()];
    a.iter().all(|x| {
        let hit = b.iter().enumerate().position(|(j, y)| {
            !used[j]
                && (x.birth.value - y.birth.value).abs() <= tol
                && (x.death.value - y.death.value).abs() <= tol
        });
        hit.map(|j| used[j] = true).is_some()
    })
}
