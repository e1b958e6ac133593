//! Line-SIAC convolution of a high-order field at a point.

use super::kernel::{direction, SiacKernel};
use crate::error::{Error, Result};
use crate::hofield::{BBox, HighOrderField, Mesh, Point2};
use crate::quadrature::gauss_legendre;

/// Maximum fixed-point sweeps for the adaptive characteristic length.
pub const ADAPTIVE_MAX_ITERATIONS: usize = 10;

/// How the kernel scale is chosen at each point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CharacteristicLength {
    Fixed(f64),
    Adaptive,
}

/// Filter parameters: half-order `k`, B-spline order, angle in degrees and
/// derivative order (0 or 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LsiacParams {
    pub k: usize,
    pub spline_order: usize,
    pub theta_deg: f64,
    pub deriv: u8,
    pub scale: CharacteristicLength,
}

impl LsiacParams {
    /// `2k+1` splines of order `k+1`, adaptive scale.
    pub fn new(k: usize, theta_deg: f64) -> Self {
        Self {
            k,
            spline_order: k + 1,
            theta_deg,
            deriv: 0,
            scale: CharacteristicLength::Adaptive,
        }
    }

    pub fn with_deriv(mut self, deriv: u8) -> Self {
        self.deriv = deriv;
        self
    }

    pub fn with_scale(mut self, scale: CharacteristicLength) -> Self {
        self.scale = scale;
        self
    }

    pub fn with_spline_order(mut self, order: usize) -> Self {
        self.spline_order = order;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.k < 1 {
            return Err(Error::InvalidParameter("filter k must be >= 1".into()));
        }
        if self.deriv > 1 {
            return Err(Error::InvalidParameter(format!(
                "derivative order {} not supported (0 or 1)",
                self.deriv
            )));
        }
        let min = if self.deriv == 1 { 2 } else { 1 };
        if self.spline_order < min {
            return Err(Error::InvalidOrder {
                order: self.spline_order,
                min,
            });
        }
        if let CharacteristicLength::Fixed(h) = self.scale {
            if !(h > 0.0 && h.is_finite()) {
                return Err(Error::InvalidParameter(format!(
                    "characteristic length must be positive, got {h}"
                )));
            }
        }
        Ok(())
    }
}

/// Portion of the filter line inside one element, in kernel parameter `t`.
#[derive(Debug, Clone, Copy)]
struct Piece {
    t0: f64,
    t1: f64,
    element: usize,
}

/// Elements met by `q(t) = p - t·dir`, `t ∈ [-half, half]`, ascending by id.
fn pieces_along(mesh: &Mesh, p: Point2, dir: [f64; 2], half: f64) -> Vec<Piece> {
    let a = [p[0] + half * dir[0], p[1] + half * dir[1]];
    let b = [p[0] - half * dir[0], p[1] - half * dir[1]];
    let pad = 1e-9 * half;
    let bbox = BBox::new(
        [a[0].min(b[0]) - pad, a[1].min(b[1]) - pad],
        [a[0].max(b[0]) + pad, a[1].max(b[1]) + pad],
    );
    mesh.candidate_elements(&bbox)
        .into_iter()
        .filter_map(|e| {
            mesh.clip_segment(e, a, b).map(|(s0, s1)| Piece {
                t0: -half + 2.0 * half * s0,
                t1: -half + 2.0 * half * s1,
                element: e,
            })
        })
        .collect()
}

fn covers(pieces: &[Piece], half: f64) -> bool {
    let mut spans: Vec<(f64, f64)> = pieces.iter().map(|p| (p.t0, p.t1)).collect();
    spans.sort_by(|x, y| x.0.total_cmp(&y.0));
    let tol = 1e-12 * half;
    let mut reach = -half;
    for (t0, t1) in spans {
        if t0 > reach + tol {
            return false;
        }
        reach = reach.max(t1);
    }
    reach >= half - tol
}

fn support_half_width(h: f64, k: usize, order: usize) -> f64 {
    0.5 * h * (2 * k + order) as f64
}

/// Fixed point `H ← (|cos θ| + |sin θ|) · max{longest edge of elements met
/// by the support segment}`, starting from the element containing `p`.
pub fn adaptive_characteristic_length(
    field: &HighOrderField,
    p: Point2,
    theta_deg: f64,
    k: usize,
    spline_order: usize,
) -> Result<f64> {
    let mesh = field.mesh();
    let dir = direction(theta_deg);
    let factor = dir[0].abs() + dir[1].abs();
    let e0 = mesh.locate(p)?;
    let mut h = factor * mesh.element_size(e0);
    for _ in 0..ADAPTIVE_MAX_ITERATIONS {
        let half = support_half_width(h, k, spline_order);
        let pieces = pieces_along(mesh, p, dir, half);
        let next = factor
            * pieces
                .iter()
                .map(|pc| mesh.element_size(pc.element))
                .fold(0.0, f64::max);
        if next <= h {
            break;
        }
        h = next;
    }
    let half = support_half_width(h, k, spline_order);
    if !covers(&pieces_along(mesh, p, dir, half), half) {
        return Err(Error::SupportExitsDomain { x: p[0], y: p[1] });
    }
    Ok(h)
}

/// `u*(p) = ∫ K_H(t) u_h(p - t·dir) dt` (or with `K_H'` when `deriv = 1`,
/// giving the derivative of the filtered field along `dir`). The integral is
/// split at kernel knots and element crossings and each piece integrated by
/// Gauss-Legendre, exact for the piecewise-polynomial integrand.
pub fn lsiac_point(field: &HighOrderField, p: Point2, params: &LsiacParams) -> Result<f64> {
    params.validate()?;
    let h = match params.scale {
        CharacteristicLength::Fixed(h) => h,
        CharacteristicLength::Adaptive => adaptive_characteristic_length(
            field,
            p,
            params.theta_deg,
            params.k,
            params.spline_order,
        )?,
    };
    let kernel = SiacKernel::new(params.k, params.spline_order, h, params.theta_deg)?;
    convolve(field, p, &kernel, params.deriv)
}

/// Convolution with an already-built kernel.
pub fn convolve(field: &HighOrderField, p: Point2, kernel: &SiacKernel, deriv: u8) -> Result<f64> {
    let mesh = field.mesh();
    let dir = kernel.direction();
    let half = kernel.support_half_width();
    let pieces = pieces_along(mesh, p, dir, half);
    if !covers(&pieces, half) {
        return Err(Error::SupportExitsDomain { x: p[0], y: p[1] });
    }

    let mut breaks: Vec<f64> = kernel.knots().collect();
    for pc in &pieces {
        for t in [pc.t0, pc.t1] {
            if t > -half && t < half {
                breaks.push(t);
            }
        }
    }
    breaks.sort_by(f64::total_cmp);
    let tol = 1e-12 * kernel.characteristic_length();
    breaks.dedup_by(|b, a| *b - *a < tol);

    let rule = gauss_legendre(kernel.k().max(field.degree()) + kernel.spline_order());
    let mut acc = 0.0;
    for w in breaks.windows(2) {
        let (a, b) = (w[0], w[1]);
        let mid = 0.5 * (a + b);
        let Some(piece) = pieces.iter().find(|pc| pc.t0 <= mid && mid <= pc.t1) else {
            return Err(Error::SupportExitsDomain { x: p[0], y: p[1] });
        };
        for (t, wt) in rule.mapped(a, b) {
            let q = [p[0] - t * dir[0], p[1] - t * dir[1]];
            acc += wt * kernel.eval(t, deriv) * field.eval_in(piece.element, q);
        }
    }
    Ok(acc)
}
