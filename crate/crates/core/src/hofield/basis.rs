use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use nalgebra::DMatrix;

use super::mesh::{ElementKind, Point2};

/// Nodal Lagrange basis on uniform reference nodes, built by inverting the
/// monomial Vandermonde matrix.
#[derive(Debug)]
pub struct LagrangeBasis {
    pub kind: ElementKind,
    pub degree: usize,
    /// Reference nodes, `j` (the `eta` index) outermost.
    pub nodes: Vec<Point2>,
    /// Monomial exponents `(a, b)` for `xi^a eta^b`.
    pub exponents: Vec<(usize, usize)>,
    /// `inverse[(m, j)]`: coefficient of monomial `m` in basis function `j`.
    inverse: DMatrix<f64>,
}

pub fn node_count(kind: ElementKind, degree: usize) -> usize {
    match kind {
        ElementKind::Triangle => (degree + 1) * (degree + 2) / 2,
        ElementKind::Quadrilateral => (degree + 1) * (degree + 1),
    }
}

impl LagrangeBasis {
    fn build(kind: ElementKind, degree: usize) -> Self {
        let k = degree as f64;
        let mut nodes = Vec::new();
        let mut exponents = Vec::new();
        match kind {
            ElementKind::Triangle => {
                for j in 0..=degree {
                    for i in 0..=(degree - j) {
                        nodes.push([i as f64 / k, j as f64 / k]);
                        exponents.push((i, j));
                    }
                }
            }
            ElementKind::Quadrilateral => {
                for j in 0..=degree {
                    for i in 0..=degree {
                        nodes.push([i as f64 / k, j as f64 / k]);
                        exponents.push((i, j));
                    }
                }
            }
        }
        let n = nodes.len();
        let vandermonde = DMatrix::from_fn(n, n, |r, c| {
            let (a, b) = exponents[c];
            nodes[r][0].powi(a as i32) * nodes[r][1].powi(b as i32)
        });
        let inverse = vandermonde
            .try_inverse()
            .expect("uniform-node Vandermonde matrix is invertible");
        Self {
            kind,
            degree,
            nodes,
            exponents,
            inverse,
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Monomial coefficients of the interpolant with the given nodal values.
    pub fn to_monomial(&self, nodal: &[f64]) -> Vec<f64> {
        let n = self.len();
        (0..n)
            .map(|m| (0..n).map(|j| self.inverse[(m, j)] * nodal[j]).sum())
            .collect()
    }

    /// Values of every basis function at `xi`.
    pub fn eval_basis(&self, xi: Point2) -> Vec<f64> {
        let mono = self.monomials(xi);
        let n = self.len();
        (0..n)
            .map(|j| (0..n).map(|m| self.inverse[(m, j)] * mono[m]).sum())
            .collect()
    }

    fn powers(&self, x: f64) -> Vec<f64> {
        let mut p = Vec::with_capacity(self.degree + 1);
        let mut acc = 1.0;
        for _ in 0..=self.degree {
            p.push(acc);
            acc *= x;
        }
        p
    }

    pub fn monomials(&self, xi: Point2) -> Vec<f64> {
        let px = self.powers(xi[0]);
        let py = self.powers(xi[1]);
        self.exponents.iter().map(|&(a, b)| px[a] * py[b]).collect()
    }

    /// Evaluates a monomial expansion at `xi`.
    pub fn eval_monomial(&self, coeffs: &[f64], xi: Point2) -> f64 {
        let px = self.powers(xi[0]);
        let py = self.powers(xi[1]);
        self.exponents
            .iter()
            .zip(coeffs)
            .map(|(&(a, b), c)| c * px[a] * py[b])
            .sum()
    }

    /// Reference gradient `(d/dxi, d/deta)` of a monomial expansion.
    pub fn grad_monomial(&self, coeffs: &[f64], xi: Point2) -> Point2 {
        let px = self.powers(xi[0]);
        let py = self.powers(xi[1]);
        let mut g = [0.0; 2];
        for (&(a, b), c) in self.exponents.iter().zip(coeffs) {
            if a > 0 {
                g[0] += c * a as f64 * px[a - 1] * py[b];
            }
            if b > 0 {
                g[1] += c * b as f64 * px[a] * py[b - 1];
            }
        }
        g
    }
}

/// Shared basis for `(kind, degree)`, built once.
pub fn basis(kind: ElementKind, degree: usize) -> Arc<LagrangeBasis> {
    static CACHE: OnceLock<Mutex<HashMap<(ElementKind, usize), Arc<LagrangeBasis>>>> =
        OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("basis cache poisoned");
    guard
        .entry((kind, degree))
        .or_insert_with(|| Arc::new(LagrangeBasis::build(kind, degree)))
        .clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn node_counts() {
        for k in 1..=5 {
            assert_eq!(basis(ElementKind::Triangle, k).len(), node_count(ElementKind::Triangle, k));
            assert_eq!(
                basis(ElementKind::Quadrilateral, k).len(),
                node_count(ElementKind::Quadrilateral, k)
            );
        }
    }

    #[test]
    fn basis_is_cardinal_at_nodes() {
        for kind in [ElementKind::Triangle, ElementKind::Quadrilateral] {
            for k in 1..=5 {
                let b = basis(kind, k);
                for (i, node) in b.nodes.iter().enumerate() {
                    let phi = b.eval_basis(*node);
                    for (j, v) in phi.iter().enumerate() {
                        let want = if i == j { 1.0 } else { 0.0 };
                        assert!((v - want).abs() < 1e-9, "{kind:?} k={k} node {i} fn {j}: {v}");
                    }
                }
            }
        }
    }
}
