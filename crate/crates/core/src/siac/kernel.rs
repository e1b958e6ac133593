use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use nalgebra::{DMatrix, DVector};

use super::bspline::{derivative_unchecked, eval_unchecked, MAX_ORDER};
use crate::error::{Error, Result};
use crate::quadrature::gauss_legendre;

/// `∫ Ψ^ℓ(t - γ) t^m dt`, exact by Gauss quadrature on each knot interval.
pub fn bspline_moment(order: usize, gamma: f64, m: usize) -> f64 {
    let rule = gauss_legendre((order + m).div_ceil(2) + 1);
    let lo = gamma - 0.5 * order as f64;
    (0..order)
        .map(|i| {
            let a = lo + i as f64;
            rule.integrate(a, a + 1.0, |t| eval_unchecked(order, t - gamma) * t.powi(m as i32))
        })
        .sum()
}

fn solve_uncached(k: usize, order: usize) -> Result<Vec<f64>> {
    let n = 2 * k + 1;
    let a = DMatrix::from_fn(n, n, |m, j| bspline_moment(order, j as f64 - k as f64, m));
    let mut rhs = DVector::zeros(n);
    rhs[0] = 1.0;
    let sol = a
        .lu()
        .solve(&rhs)
        .ok_or(Error::SingularMomentMatrix { k, order })?;
    if sol.iter().any(|c| !c.is_finite()) {
        return Err(Error::SingularMomentMatrix { k, order });
    }
    // The exact solution is symmetric; remove rounding asymmetry.
    Ok((0..n).map(|j| 0.5 * (sol[j] + sol[n - 1 - j])).collect())
}

/// Coefficients `c_{-k..=k}` for which `K = Σ c_γ Ψ^ℓ(· - γ)` has moments
/// `∫ K t^m = δ_{m0}` for `m = 0..=2k`. Cached per `(k, ℓ)`.
pub fn solve_kernel_coefficients(k: usize, order: usize) -> Result<Arc<Vec<f64>>> {
    if k < 1 {
        return Err(Error::InvalidParameter("kernel half-order k must be >= 1".into()));
    }
    if !(1..=MAX_ORDER).contains(&order) {
        return Err(Error::InvalidOrder { order, min: 1 });
    }
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize), Arc<Vec<f64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(c) = cache.lock().expect("kernel cache poisoned").get(&(k, order)) {
        return Ok(c.clone());
    }
    let coeffs = Arc::new(solve_uncached(k, order)?);
    cache
        .lock()
        .expect("kernel cache poisoned")
        .insert((k, order), coeffs.clone());
    Ok(coeffs)
}

/// Symmetric line kernel `K_H(t) = (1/H) Σ c_γ Ψ^ℓ(t/H - γ)` oriented at
/// `theta` degrees.
#[derive(Debug, Clone)]
pub struct SiacKernel {
    k: usize,
    order: usize,
    coeffs: Arc<Vec<f64>>,
    h: f64,
    theta_deg: f64,
}

impl SiacKernel {
    pub fn new(k: usize, order: usize, h: f64, theta_deg: f64) -> Result<Self> {
        if !(h > 0.0 && h.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "characteristic length must be positive, got {h}"
            )));
        }
        if !theta_deg.is_finite() {
            return Err(Error::InvalidParameter("filter angle must be finite".into()));
        }
        let coeffs = solve_kernel_coefficients(k, order)?;
        Ok(Self {
            k,
            order,
            coeffs,
            h,
            theta_deg,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn spline_order(&self) -> usize {
        self.order
    }

    pub fn num_splines(&self) -> usize {
        2 * self.k + 1
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn characteristic_length(&self) -> f64 {
        self.h
    }

    pub fn theta_deg(&self) -> f64 {
        self.theta_deg
    }

    /// Unit direction of the filter line.
    pub fn direction(&self) -> [f64; 2] {
        direction(self.theta_deg)
    }

    /// Kernel support is `[-w, w]` with `w = H (2k + ℓ) / 2`.
    pub fn support_half_width(&self) -> f64 {
        0.5 * self.h * (2 * self.k + self.order) as f64
    }

    /// Knots of the scaled kernel, ascending.
    pub fn knots(&self) -> impl Iterator<Item = f64> + '_ {
        let start = -(self.k as f64) - 0.5 * self.order as f64;
        (0..=(2 * self.k + self.order)).map(move |i| self.h * (start + i as f64))
    }

    /// `K_H(t)` for `deriv = 0`, `K_H'(t)` for `deriv = 1`.
    pub fn eval(&self, t: f64, deriv: u8) -> f64 {
        let s = t / self.h;
        let k = self.k as f64;
        let mut acc = 0.0;
        for (j, c) in self.coeffs.iter().enumerate() {
            let u = s - (j as f64 - k);
            acc += c * if deriv == 0 {
                eval_unchecked(self.order, u)
            } else {
                derivative_unchecked(self.order, u)
            };
        }
        if deriv == 0 {
            acc / self.h
        } else {
            acc / (self.h * self.h)
        }
    }
}

/// Unit vector at `theta_deg`, exact at multiples of 90 degrees.
pub fn direction(theta_deg: f64) -> [f64; 2] {
    let r = theta_deg.rem_euclid(360.0);
    if r == 0.0 {
        [1.0, 0.0]
    } else if r == 90.0 {
        [0.0, 1.0]
    } else if r == 180.0 {
        [-1.0, 0.0]
    } else if r == 270.0 {
        [0.0, -1.0]
    } else {
        let rad = r.to_radians();
        [rad.cos(), rad.sin()]
    }
}
