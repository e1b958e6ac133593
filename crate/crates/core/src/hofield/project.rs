use std::sync::Arc;

use nalgebra::{DMatrix, DVector};

use super::analytic::AnalyticField;
use super::basis::basis;
use super::field::HighOrderField;
use super::mesh::{ElementKind, Mesh};
use crate::error::{Error, Result};
use crate::quadrature::{square_rule, triangle_rule};

/// Element-local L2 projection of `analytic` onto degree-`k` nodal
/// polynomials, with `k + 2` Gauss points per direction.
pub fn project(analytic: &AnalyticField, mesh: Arc<Mesh>, k: usize) -> Result<HighOrderField> {
    if k == 0 {
        return Err(Error::InvalidParameter("projection degree must be >= 1".into()));
    }
    let npts = k + 2;
    let tri_rule = triangle_rule(npts);
    let quad_rule = square_rule(npts);
    let mut coeffs = Vec::with_capacity(mesh.num_elements());
    for e in 0..mesh.num_elements() {
        let kind = mesh.element(e).kind;
        let b = basis(kind, k);
        let rule = match kind {
            ElementKind::Triangle => &tri_rule,
            ElementKind::Quadrilateral => &quad_rule,
        };
        let n = b.len();
        let mut mass = DMatrix::<f64>::zeros(n, n);
        let mut rhs = DVector::<f64>::zeros(n);
        for &(xi, eta, w) in rule {
            let j = mesh.jacobian(e, [xi, eta]);
            let det = (j[0][0] * j[1][1] - j[0][1] * j[1][0]).abs();
            let p = mesh.to_physical(e, [xi, eta]);
            let fv = analytic.eval(p[0], p[1]);
            let phi = b.eval_basis([xi, eta]);
            let wd = w * det;
            for r in 0..n {
                rhs[r] += wd * fv * phi[r];
                for c in 0..n {
                    mass[(r, c)] += wd * phi[r] * phi[c];
                }
            }
        }
        let chol = mass
            .cholesky()
            .ok_or(Error::SingularMassMatrix { element: e })?;
        let sol = chol.solve(&rhs);
        coeffs.push(sol.iter().copied().collect());
    }
    HighOrderField::new(mesh, k, coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hofield::mesh::Element;

    #[test]
    fn projection_reproduces_polynomials() {
        let v = vec![[0.0, 0.0], [1.0, 0.1], [1.1, 1.0], [-0.1, 0.9], [0.5, 0.45]];
        let mesh = Arc::new(
            Mesh::new(
                v,
                vec![
                    Element::triangle(0, 1, 4),
                    Element::triangle(1, 2, 4),
                    Element::triangle(2, 3, 4),
                    Element::triangle(3, 0, 4),
                ],
            )
            .unwrap(),
        );
        let g = AnalyticField::new("g", |x, y| x * x + y);
        let f = project(&g, mesh, 2).unwrap();
        for p in [[0.5, 0.45], [0.2, 0.3], [0.9, 0.8]] {
            let got = f.eval(p, None).unwrap();
            assert!((got - (p[0] * p[0] + p[1])).abs() < 1e-10);
        }
    }
}
