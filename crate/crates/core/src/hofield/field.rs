use std::sync::Arc;

use super::basis::{basis, node_count, LagrangeBasis};
use super::mesh::{ElementKind, Mesh, Point2};
use crate::error::{Error, Result};

/// Per-element nodal Lagrange expansion of degree `k`. Values from elements
/// sharing an edge are independent and may disagree.
#[derive(Debug, Clone)]
pub struct HighOrderField {
    mesh: Arc<Mesh>,
    degree: usize,
    coeffs: Vec<Vec<f64>>,
    // Monomial form of each element's interpolant, for fast evaluation.
    monomial: Vec<Vec<f64>>,
    tri: Arc<LagrangeBasis>,
    quad: Arc<LagrangeBasis>,
}

pub const MAX_DEGREE: usize = 8;

impl HighOrderField {
    pub fn new(mesh: Arc<Mesh>, degree: usize, coeffs: Vec<Vec<f64>>) -> Result<Self> {
        if degree == 0 || degree > MAX_DEGREE {
            return Err(Error::InvalidParameter(format!(
                "field degree {degree} outside 1..={MAX_DEGREE}"
            )));
        }
        if coeffs.len() != mesh.num_elements() {
            return Err(Error::InvalidParameter(format!(
                "{} coefficient arrays for {} elements",
                coeffs.len(),
                mesh.num_elements()
            )));
        }
        let tri = basis(ElementKind::Triangle, degree);
        let quad = basis(ElementKind::Quadrilateral, degree);
        let mut monomial = Vec::with_capacity(coeffs.len());
        for (e, c) in coeffs.iter().enumerate() {
            let kind = mesh.element(e).kind;
            let want = node_count(kind, degree);
            if c.len() != want {
                return Err(Error::InvalidParameter(format!(
                    "element {e}: {} coefficients, expected {want}",
                    c.len()
                )));
            }
            if c.iter().any(|v| !v.is_finite()) {
                return Err(Error::InvalidParameter(format!(
                    "element {e}: non-finite coefficient"
                )));
            }
            let b = if kind == ElementKind::Triangle { &tri } else { &quad };
            monomial.push(b.to_monomial(c));
        }
        Ok(Self {
            mesh,
            degree,
            coeffs,
            monomial,
            tri,
            quad,
        })
    }

    /// Field whose nodal values sample `f` at each element's Lagrange nodes.
    pub fn interpolate(
        mesh: Arc<Mesh>,
        degree: usize,
        f: impl Fn(f64, f64) -> f64,
    ) -> Result<Self> {
        let coeffs = (0..mesh.num_elements())
            .map(|e| {
                let b = basis(mesh.element(e).kind, degree);
                b.nodes
                    .iter()
                    .map(|&xi| {
                        let p = mesh.to_physical(e, xi);
                        f(p[0], p[1])
                    })
                    .collect()
            })
            .collect();
        Self::new(mesh, degree, coeffs)
    }

    pub fn mesh(&self) -> &Arc<Mesh> {
        &self.mesh
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[Vec<f64>] {
        &self.coeffs
    }

    pub fn basis_for(&self, e: usize) -> &LagrangeBasis {
        match self.mesh.element(e).kind {
            ElementKind::Triangle => &self.tri,
            ElementKind::Quadrilateral => &self.quad,
        }
    }

    /// Element-local value at reference coordinates `xi`.
    pub fn eval_reference(&self, e: usize, xi: Point2) -> f64 {
        self.basis_for(e).eval_monomial(&self.monomial[e], xi)
    }

    /// Element-local value at physical point `p` (no containment check).
    pub fn eval_in(&self, e: usize, p: Point2) -> f64 {
        let xi = self.mesh.to_reference(e, p);
        self.eval_reference(e, xi)
    }

    /// Value at `p`, in element `elem` when given, otherwise in the element
    /// chosen by [`Mesh::locate`].
    pub fn eval(&self, p: Point2, elem: Option<usize>) -> Result<f64> {
        let e = match elem {
            Some(e) => e,
            None => self.mesh.locate(p)?,
        };
        Ok(self.eval_in(e, p))
    }

    /// Gradient of element `e`'s interpolant at physical point `p`.
    pub fn gradient_in(&self, e: usize, p: Point2) -> Point2 {
        let xi = self.mesh.to_reference(e, p);
        let g = self.basis_for(e).grad_monomial(&self.monomial[e], xi);
        let j = self.mesh.jacobian(e, xi);
        let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
        // grad_x = J^{-T} grad_xi
        [
            (j[1][1] * g[0] - j[1][0] * g[1]) / det,
            (-j[0][1] * g[0] + j[0][0] * g[1]) / det,
        ]
    }

    /// Element-wise gradient at `p`; discontinuous across interfaces.
    pub fn eval_elementwise_gradient(&self, p: Point2, elem: Option<usize>) -> Result<Point2> {
        let e = match elem {
            Some(e) => e,
            None => self.mesh.locate(p)?,
        };
        Ok(self.gradient_in(e, p))
    }

    /// Largest absolute disagreement between the two elements adjacent to
    /// each interior edge, probed at edge midpoints.
    pub fn max_interface_jump(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for ((a, b), els) in self.mesh.edges() {
            if els.len() != 2 {
                continue;
            }
            let pa = self.mesh.vertices()[a];
            let pb = self.mesh.vertices()[b];
            let mid = [0.5 * (pa[0] + pb[0]), 0.5 * (pa[1] + pb[1])];
            let jump = (self.eval_in(els[0], mid) - self.eval_in(els[1], mid)).abs();
            worst = worst.max(jump);
        }
        worst
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hofield::mesh::Element;

    fn square_of_triangles() -> Arc<Mesh> {
        let v = vec![[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]];
        Arc::new(
            Mesh::new(v, vec![Element::triangle(0, 1, 2), Element::triangle(0, 2, 3)]).unwrap(),
        )
    }

    #[test]
    fn constant_reproduction() {
        let f = HighOrderField::interpolate(square_of_triangles(), 3, |_, _| 5.0).unwrap();
        assert!((f.eval([0.3, 0.6], None).unwrap() - 5.0).abs() < 1e-13);
        let g = f.eval_elementwise_gradient([0.3, 0.6], None).unwrap();
        assert!(g[0].abs() < 1e-12 && g[1].abs() < 1e-12);
    }

    #[test]
    fn exact_at_nodes() {
        let mesh = square_of_triangles();
        let coeffs = vec![(0..6).map(f64::from).collect(), vec![1.0; 6]];
        let f = HighOrderField::new(mesh.clone(), 2, coeffs).unwrap();
        let b = basis(ElementKind::Triangle, 2);
        for (j, &xi) in b.nodes.iter().enumerate() {
            let p = mesh.to_physical(0, xi);
            assert!((f.eval(p, Some(0)).unwrap() - j as f64).abs() < 1e-12);
        }
    }

    #[test]
    fn linear_gradient_is_exact() {
        let f = HighOrderField::interpolate(square_of_triangles(), 2, |x, y| 3.0 * x + 2.0 * y)
            .unwrap();
        for p in [[0.1, 0.05], [0.7, 0.9], [0.5, 0.5]] {
            let g = f.eval_elementwise_gradient(p, None).unwrap();
            assert!((g[0] - 3.0).abs() < 1e-12 && (g[1] - 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn wrong_coefficient_count_is_rejected() {
        assert!(HighOrderField::new(square_of_triangles(), 2, vec![vec![0.0; 5], vec![0.0; 6]])
            .is_err());
    }
}
