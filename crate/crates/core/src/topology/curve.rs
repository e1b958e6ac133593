use super::persistence::PersistencePair;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint {
    pub threshold: f64,
    /// Pairs with persistence `<= threshold`.
    pub count_leq: usize,
    /// Pairs with persistence `> threshold`.
    pub count_gt: usize,
}

pub fn persistence_curve(pairs: &[PersistencePair], thresholds: &[f64]) -> Vec<CurvePoint> {
    let mut p: Vec<f64> = pairs.iter().map(|q| q.persistence).collect();
    p.sort_by(f64::total_cmp);
    thresholds
        .iter()
        .map(|&t| {
            let leq = p.partition_point(|&x| x <= t);
            CurvePoint {
                threshold: t,
                count_leq: leq,
                count_gt: p.len() - leq,
            }
        })
        .collect()
}

/// Zero followed by every distinct persistence value, ascending: the
/// abscissas where either count changes.
pub fn breakpoint_thresholds(pairs: &[PersistencePair]) -> Vec<f64> {
    let mut t: Vec<f64> = pairs.iter().map(|q| q.persistence).collect();
    t.push(0.0);
    t.sort_by(f64::total_cmp);
    t.dedup();
    t
}

/// `n` evenly spaced thresholds on `[lo, hi]`.
pub fn linear_thresholds(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect(),
    }
}

/// Pairs with persistence `> tau`.
pub fn count_gt(pairs: &[PersistencePair], tau: f64) -> usize {
    pairs.iter().filter(|p| p.persistence > tau).count()
}
