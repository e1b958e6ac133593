use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

use super::complex::TriangulatedField;
use super::persistence::{filter_pairs, persistence_pairs, PairKind, PersistencePair};
use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Sweep {
    Ascending,
    Descending,
}

impl Sweep {
    /// Strict "comes after" in this sweep's direction for `(value, index)`.
    fn after(self, a: (f64, usize), b: (f64, usize)) -> bool {
        let ord = a.0.total_cmp(&b.0).then(a.1.cmp(&b.1));
        match self {
            Sweep::Ascending => ord.is_gt(),
            Sweep::Descending => ord.is_lt(),
        }
    }

    /// Smallest value that places `v` right after `last` in sweep order.
    fn next_after(self, last: (f64, usize), v: usize) -> f64 {
        match self {
            Sweep::Ascending if v > last.1 => last.0,
            Sweep::Ascending => last.0.next_up(),
            Sweep::Descending if v < last.1 => last.0,
            Sweep::Descending => last.0.next_down(),
        }
    }
}

/// Priority flood from `seeds`. Vertices are visited in order of their
/// current rank among the frontier, and each receives the closest value
/// that keeps the visit order consistent with the `(value, index)` order.
/// Everything reached from a region that has no seed is flattened onto the
/// level at which the flood enters it.
fn flood(tf: &TriangulatedField, seeds: &[usize], dir: Sweep) -> Vec<f64> {
    let n = tf.len();
    let order = tf.order();
    let key = |v: usize| match dir {
        Sweep::Ascending => tf.rank(v),
        Sweep::Descending => n - 1 - tf.rank(v),
    };
    let vertex = |k: usize| match dir {
        Sweep::Ascending => order[k],
        Sweep::Descending => order[n - 1 - k],
    };
    let mut queued = vec![false; n];
    let mut heap = BinaryHeap::with_capacity(n);
    for &s in seeds {
        if !queued[s] {
            queued[s] = true;
            heap.push(Reverse(key(s)));
        }
    }
    let mut out = tf.values().to_vec();
    let mut last: Option<(f64, usize)> = None;
    while let Some(Reverse(k)) = heap.pop() {
        let v = vertex(k);
        let f = tf.value(v);
        let g = match last {
            Some(l) if !dir.after((f, v), l) => dir.next_after(l, v),
            _ => f,
        };
        out[v] = g;
        last = Some((g, v));
        for &u in tf.neighbors(v) {
            if !queued[u] {
                queued[u] = true;
                heap.push(Reverse(key(u)));
            }
        }
    }
    out
}

fn local_minima(tf: &TriangulatedField) -> Vec<usize> {
    (0..tf.len())
        .filter(|&v| tf.neighbors(v).iter().all(|&u| tf.rank(u) > tf.rank(v)))
        .collect()
}

fn local_maxima(tf: &TriangulatedField) -> Vec<usize> {
    (0..tf.len())
        .filter(|&v| tf.neighbors(v).iter().all(|&u| tf.rank(u) < tf.rank(v)))
        .collect()
}

/// Global two-sided flooding from the surviving extrema, repeated until the
/// extrema are exactly the surviving ones.
fn flood_simplify(
    tf: &TriangulatedField,
    keep_min: &[usize],
    keep_max: &[usize],
    cap: usize,
) -> Result<TriangulatedField> {
    let mut current = tf.clone();
    for _ in 0..cap {
        current = current.with_values(flood(&current, keep_min, Sweep::Ascending))?;
        current = current.with_values(flood(&current, keep_max, Sweep::Descending))?;
        if local_minima(&current) == keep_min && local_maxima(&current) == keep_max {
            return Ok(current);
        }
    }
    Err(Error::ConvergenceFailure { iterations: cap })
}

/// Sorted `(birth, death)` values.
fn pair_values(pairs: &[PersistencePair]) -> Vec<(f64, f64)> {
    let mut k: Vec<(f64, f64)> = pairs.iter().map(|p| (p.birth.value, p.death.value)).collect();
    k.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    k
}

/// Multiset equality of `(birth, death)` values up to `tol`, matching each
/// pair of `a` greedily with the first unused pair of `b` within tolerance.
fn same_pairs(a: &[(f64, f64)], b: &[(f64, f64)], tol: f64) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut used = vec![false; b.len()];
    a.iter().all(|x| {
        let hit = b.iter().enumerate().position(|(j, y)| {
            !used[j] && (x.0 - y.0).abs() <= tol && (x.1 - y.1).abs() <= tol
        });
        hit.map(|j| used[j] = true).is_some()
    })
}

/// Vertices strictly on the extremum's side of `saddle` in sweep `dir` that
/// are connected to `extremum`: the basin (or cap) cancelled with the pair.
fn region(tf: &TriangulatedField, extremum: usize, saddle: usize, dir: Sweep) -> Vec<bool> {
    let rs = tf.rank(saddle);
    let inside = |v: usize| match dir {
        Sweep::Ascending => tf.rank(v) < rs,
        Sweep::Descending => tf.rank(v) > rs,
    };
    let mut mark = vec![false; tf.len()];
    mark[extremum] = true;
    let mut queue = VecDeque::from([extremum]);
    while let Some(v) = queue.pop_front() {
        for &u in tf.neighbors(v) {
            if !mark[u] && inside(u) {
                mark[u] = true;
                queue.push_back(u);
            }
        }
    }
    mark
}

/// Bottleneck path in sweep `dir`: among paths from `from` through vertices
/// accepted by `allowed` to a vertex satisfying `target`, one minimizing the
/// latest-in-sweep vertex. Returns the path including both ends.
fn bottleneck_path(
    tf: &TriangulatedField,
    from: usize,
    dir: Sweep,
    allowed: impl Fn(usize) -> bool,
    target: impl Fn(usize) -> bool,
) -> Option<Vec<usize>> {
    let n = tf.len();
    let key = |v: usize| match dir {
        Sweep::Ascending => tf.rank(v),
        Sweep::Descending => n - 1 - tf.rank(v),
    };
    let mut prev = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    let mut heap = BinaryHeap::new();
    seen[from] = true;
    heap.push(Reverse((0usize, 0usize, from)));
    while let Some(Reverse((bottleneck, hops, v))) = heap.pop() {
        if v != from && target(v) {
            let mut path = vec![v];
            let mut w = v;
            while w != from {
                w = prev[w];
                path.push(w);
            }
            path.reverse();
            return Some(path);
        }
        for &u in tf.neighbors(v) {
            if !seen[u] && allowed(u) {
                seen[u] = true;
                prev[u] = v;
                heap.push(Reverse((bottleneck.max(key(u)), hops + 1, u)));
            }
        }
    }
    None
}

/// Cancels the pair `(extremum, saddle)` around a pivot vertex of its
/// region. The part of the region that precedes the pivot in sweep order
/// and is connected to the extremum is flattened just past the pivot; a
/// channel from the pivot through the saddle into the older side is then
/// pushed just before the pivot. A pivot at the saddle flattens the whole
/// region, a pivot at the extremum only drains it.
fn cancel_at(
    tf: &TriangulatedField,
    inside: &[bool],
    extremum: usize,
    saddle: usize,
    pivot: usize,
    dir: Sweep,
) -> Option<Vec<f64>> {
    let n = tf.len();
    let key = |v: usize| match dir {
        Sweep::Ascending => tf.rank(v),
        Sweep::Descending => n - 1 - tf.rank(v),
    };
    let rp = key(pivot);
    let mut out = tf.values().to_vec();

    let mut sub = vec![false; n];
    if pivot != extremum {
        sub[extremum] = true;
        let mut queue = VecDeque::from([extremum]);
        while let Some(v) = queue.pop_front() {
            for &u in tf.neighbors(v) {
                if !sub[u] && inside[u] && key(u) < rp {
                    sub[u] = true;
                    queue.push_back(u);
                }
            }
        }
        let mut queued = vec![false; n];
        let mut heap = BinaryHeap::new();
        for &u in tf.neighbors(pivot) {
            if sub[u] {
                queued[u] = true;
                heap.push(Reverse((key(u), u)));
            }
        }
        let mut last = (tf.value(pivot), pivot);
        while let Some(Reverse((_, v))) = heap.pop() {
            let g = dir.next_after(last, v);
            out[v] = g;
            last = (g, v);
            for &u in tf.neighbors(v) {
                if sub[u] && !queued[u] {
                    queued[u] = true;
                    heap.push(Reverse((key(u), u)));
                }
            }
        }
        if queued.iter().zip(&sub).any(|(q, s)| *s && !q) {
            return None;
        }
    }
    if pivot == saddle {
        return Some(out);
    }

    let ks = key(saddle);
    let first = bottleneck_path(tf, pivot, dir, |u| inside[u] || u == saddle, |u| u == saddle)?;
    let second = bottleneck_path(
        tf,
        saddle,
        dir,
        |u| !inside[u] && key(u) < ks,
        |u| key(u) < rp,
    )?;
    let exit = *second.last().unwrap();
    let back = match dir {
        Sweep::Ascending => Sweep::Descending,
        Sweep::Descending => Sweep::Ascending,
    };
    let mut last = (tf.value(pivot), pivot);
    for &v in first[1..].iter().chain(&second[1..second.len() - 1]) {
        if !back.after((out[v], v), last) {
            out[v] = back.next_after(last, v);
        }
        last = (out[v], v);
    }
    if !back.after((out[exit], exit), last) {
        out[exit] = back.next_after(last, exit);
    }
    Some(out)
}

/// Pivots worth trying for a cancellation: the saddle, the extremum, then
/// every other critical vertex of the region in sweep order.
fn pivots(tf: &TriangulatedField, inside: &[bool], extremum: usize, saddle: usize, dir: Sweep) -> Vec<usize> {
    let mut inner: Vec<usize> = (0..tf.len())
        .filter(|&v| inside[v] && v != extremum)
        .filter(|&v| {
            let (lo, hi) = super::critical::link_components(tf, v);
            lo != 1 || hi != 1
        })
        .collect();
    inner.sort_by_key(|&v| tf.rank(v));
    if dir == Sweep::Descending {
        inner.reverse();
    }
    let mut out = vec![saddle, extremum];
    out.extend(inner);
    out
}

/// Cancels one pair `q` of `current`, trying every pivot of its region, and
/// returns the first candidate whose pairs are exactly the other pairs.
fn cancel_pair(
    current: &TriangulatedField,
    current_pairs: &[PersistencePair],
    q: &PersistencePair,
    tol: f64,
    within: &impl Fn(&[f64]) -> bool,
) -> Result<Option<(TriangulatedField, Vec<PersistencePair>)>> {
    let rest: Vec<PersistencePair> = current_pairs.iter().filter(|p| *p != q).copied().collect();
    let expected = pair_values(&rest);
    let (extremum, saddle, dir) = match q.kind {
        PairKind::MinSaddle => (q.birth.vertex, q.death.vertex, Sweep::Ascending),
        _ => (q.death.vertex, q.birth.vertex, Sweep::Descending),
    };
    let inside = region(current, extremum, saddle, dir);
    for pivot in pivots(current, &inside, extremum, saddle, dir) {
        let Some(candidate) = cancel_at(current, &inside, extremum, saddle, pivot, dir) else {
            continue;
        };
        if !within(&candidate) {
            continue;
        }
        let next = current.with_values(candidate)?;
        let next_pairs = persistence_pairs(&next);
        if same_pairs(&pair_values(&next_pairs), &expected, tol) {
            return Ok(Some((next, next_pairs)));
        }
    }
    Ok(None)
}

/// Removes every non-essential persistence pair with persistence `<= epsilon`
/// while keeping the others, staying within `epsilon` of the input in the
/// max norm.
///
/// Global flooding from the surviving extrema is tried first. When that moves
/// a surviving pair, pairs are cancelled one at a time in order of increasing
/// persistence, each around a pivot vertex of its region, and a
/// cancellation is accepted only if every other pair keeps its values.
///
/// Exact preservation of the surviving pairs is not always possible on a
/// domain with boundary: some inputs admit no function within `epsilon` with
/// the filtered diagram, and others admit one only if surviving extrema move
/// to different vertices. When no cancellation sequence is found, the flooded
/// result is returned. Its extrema are exactly the surviving ones, so the
/// pair count is right, but some surviving pair values may have shifted.
pub fn simplify(tf: &TriangulatedField, epsilon: f64) -> Result<TriangulatedField> {
    if !(epsilon >= 0.0) {
        return Err(Error::InvalidParameter(format!("epsilon must be >= 0, got {epsilon}")));
    }
    let pairs = persistence_pairs(tf);
    let kept = filter_pairs(&pairs, epsilon);
    if kept.len() == pairs.len() {
        return Ok(tf.clone());
    }
    let range = kept.iter().find(|p| p.is_essential()).map_or(0.0, |p| p.persistence);
    let tol = 1e-12 * range.max(1.0);
    let target = pair_values(&kept);
    let within = |g: &[f64]| {
        tf.values()
            .iter()
            .zip(g)
            .all(|(a, b)| (a - b).abs() <= epsilon)
    };

    let mut keep_min: Vec<usize> = kept
        .iter()
        .filter(|p| p.kind != PairKind::SaddleMax)
        .map(|p| p.birth.vertex)
        .collect();
    let mut keep_max: Vec<usize> = kept
        .iter()
        .filter(|p| p.kind != PairKind::MinSaddle)
        .map(|p| p.death.vertex)
        .collect();
    keep_min.sort_unstable();
    keep_max.sort_unstable();
    let cap = pairs.len() + 1;
    let flooded = flood_simplify(tf, &keep_min, &keep_max, cap);
    if let Ok(g) = &flooded {
        if within(g.values()) && same_pairs(&pair_values(&persistence_pairs(g)), &target, tol) {
            return flooded;
        }
    }

    let mut current = tf.clone();
    let mut current_pairs = pairs;
    for _ in 0..cap {
        let Some(q) = current_pairs
            .iter()
            .filter(|p| !p.is_essential() && p.persistence <= epsilon)
            .min_by(|a, b| a.persistence.total_cmp(&b.persistence))
            .copied()
        else {
            return Ok(current);
        };
        match cancel_pair(&current, &current_pairs, &q, tol, &within)? {
            Some((next, next_pairs)) => {
                current = next;
                current_pairs = next_pairs;
            }
            None => return flooded,
        }
    }
    if current_pairs
        .iter()
        .any(|p| !p.is_essential() && p.persistence <= epsilon)
    {
        return flooded;
    }
    Ok(current)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::triangulate_grid;
    use crate::transform::ScalarGrid;

    fn field(vals: Vec<f64>, nx: usize) -> TriangulatedField {
        let ny = vals.len() / nx;
        triangulate_grid(&ScalarGrid::new_2d([nx, ny], [0.0, 0.0], [1.0, 1.0], vals).unwrap()).unwrap()
    }

    #[test]
    fn fills_a_shallow_pit() {
        let vals = vec![
            0.0, 1.0, 2.0, 3.0, //
            1.0, 5.0, 5.0, 4.0, //
            2.0, 5.0, 4.8, 5.0, //
            3.0, 5.0, 5.0, 6.0,
        ];
        let tf = field(vals.clone(), 4);
        let before = persistence_pairs(&tf);
        assert!(before.iter().any(|p| p.kind == PairKind::MinSaddle));
        let g = simplify(&tf, 0.5).unwrap();
        let after = persistence_pairs(&g);
        assert_eq!(after.len(), filter_pairs(&before, 0.5).len());
        let dev = vals.iter().zip(g.values()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        assert!(dev <= 0.5, "{dev}");
    }

    #[test]
    fn drains_a_ring_valley() {
        // Filling the basin of the cancelled minimum at the bottom right
        // would raise the saddle that the maximum in the corner pairs with.
        let vals = vec![10.0, 1.0, 8.0, 4.0, 11.0, 1.0, 0.0, 3.0, 0.0];
        let tf = field(vals, 3);
        let pairs = persistence_pairs(&tf);
        let g = simplify(&tf, 4.5).unwrap();
        // The surviving saddle may move by one ulp to keep the sweep order.
        assert!(same_pairs(
            &pair_values(&persistence_pairs(&g)),
            &pair_values(&filter_pairs(&pairs, 4.5)),
            1e-12 * 11.0
        ));
    }

    #[test]
    fn zero_epsilon_is_identity() {
        let vals = vec![0.0, 3.0, 1.0, 2.0, 5.0, 0.5, 4.0, 1.5, 6.0];
        let tf = field(vals.clone(), 3);
        assert_eq!(simplify(&tf, 0.0).unwrap().values(), &vals[..]);
    }

    #[test]
    fn large_epsilon_leaves_one_pair() {
        let vals = vec![0.0, 3.0, 1.0, 2.0, 5.0, 0.5, 4.0, 1.5, 6.0];
        let tf = field(vals, 3);
        let g = simplify(&tf, 100.0).unwrap();
        let pairs = persistence_pairs(&g);
        assert_eq!(pairs.len(), 1);
        assert!(pairs[0].is_essential());
    }
}
