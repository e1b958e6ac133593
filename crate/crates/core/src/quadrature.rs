//! Gauss-Legendre rules on [-1, 1] and a collapsed-coordinate rule on the
//! reference triangle.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

#[derive(Debug, Clone)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussRule {
    /// Integrates `f` over `[a, b]`, summing in node order.
    pub fn integrate(&self, a: f64, b: f64, mut f: impl FnMut(f64) -> f64) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut acc = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc += w * f(mid + half * x);
        }
        acc * half
    }

    /// Nodes and weights mapped to `[a, b]`.
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(x, w)| (mid + half * x, w * half))
    }
}

fn compute_rule(n: usize) -> GaussRule {
    assert!(n >= 1, "Gauss rule needs at least one point");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Tricomi initial guess, refined by Newton on P_n.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    GaussRule { nodes, weights }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Cached `n`-point Gauss-Legendre rule.
pub fn gauss_legendre(n: usize) -> Arc<GaussRule> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<GaussRule>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("quadrature cache poisoned");
    guard
        .entry(n)
        .or_insert_with(|| Arc::new(compute_rule(n)))
        .clone()
}

/// Points `(xi, eta, weight)` on the reference triangle (0,0),(1,0),(0,1)
/// via the Duffy map; exact for polynomials of degree `2n - 2`.
pub fn triangle_rule(n: usize) -> Vec<(f64, f64, f64)> {
    let g = gauss_legendre(n);
    let mut out = Vec::with_capacity(n * n);
    for (a, wa) in g.mapped(0.0, 1.0) {
        for (b, wb) in g.mapped(0.0, 1.0) {
            // (a, b) in the unit square collapses onto the triangle.
            let xi = a * (1.0 - b);
            let eta = b;
            out.push((xi, eta, wa * wb * (1.0 - b)));
        }
    }
    out
}

/// Tensor rule on the unit square.
pub fn square_rule(n: usize) -> Vec<(f64, f64, f64)> {
    let g = gauss_legendre(n);
    let mut out = Vec::with_capacity(n * n);
    for (a, wa) in g.mapped(0.0, 1.0) {
        for (b, wb) in g.mapped(0.0, 1.0) {
            out.push((a, b, wa * wb));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_monomials_exactly() {
        for n in 1..12 {
            let rule = gauss_legendre(n);
            for p in 0..(2 * n) {
                let got = rule.integrate(0.0, 1.0, |x| x.powi(p as i32));
                let want = 1.0 / (p as f64 + 1.0);
                assert!((got - want).abs() < 1e-14, "n={n} p={p}: {got} vs {want}");
            }
        }
    }

    #[test]
    fn triangle_rule_matches_beta_integrals() {
        // int_T xi^a eta^b = a! b! / (a+b+2)!
        let fact = |n: u32| (1..=n).map(f64::from).product::<f64>();
        let rule = triangle_rule(5);
        for a in 0..5u32 {
            for b in 0..(5 - a) {
                let got: f64 = rule
                    .iter()
                    .map(|&(x, y, w)| w * x.powi(a as i32) * y.powi(b as i32))
                    .sum();
                let want = fact(a) * fact(b) / fact(a + b + 2);
                assert!((got - want).abs() < 1e-15);
            }
        }
    }
}
