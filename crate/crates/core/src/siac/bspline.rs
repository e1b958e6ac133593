//! Centred B-splines `Ψ^ℓ` of order `ℓ` (degree `ℓ - 1`), support
//! `[-ℓ/2, ℓ/2]`.

use crate::error::{Error, Result};

/// Largest order the stack-based recurrence handles.
pub const MAX_ORDER: usize = 32;

#[inline]
fn indicator(t: f64) -> f64 {
    if (-0.5..0.5).contains(&t) {
        1.0
    } else {
        0.0
    }
}

/// `Ψ^ℓ(t)` by the order-raising recurrence
/// `Ψ^{κ+1}(t) = [(t + (κ+1)/2) Ψ^κ(t + 1/2) + ((κ+1)/2 - t) Ψ^κ(t - 1/2)] / κ`,
/// starting from the half-open indicator of `[-1/2, 1/2)`.
pub fn bspline_eval(order: usize, t: f64) -> Result<f64> {
    if !(1..=MAX_ORDER).contains(&order) {
        return Err(Error::InvalidOrder { order, min: 1 });
    }
    Ok(eval_unchecked(order, t))
}

#[inline]
pub(crate) fn eval_unchecked(order: usize, t: f64) -> f64 {
    let half = 0.5 * order as f64;
    if t < -half || t >= half {
        return 0.0;
    }
    // vals[i] holds Ψ^κ at t + (ℓ - κ)/2 - i, i = 0..=ℓ-κ.
    let mut vals = [0.0f64; MAX_ORDER];
    let top = 0.5 * (order as f64 - 1.0);
    for (i, v) in vals.iter_mut().enumerate().take(order) {
        *v = indicator(t + top - i as f64);
    }
    for kappa in 1..order {
        let kf = kappa as f64;
        let c = 0.5 * (kf + 1.0);
        let shift = 0.5 * (order - kappa - 1) as f64;
        for i in 0..(order - kappa) {
            let s = t + shift - i as f64;
            vals[i] = ((s + c) * vals[i] + (c - s) * vals[i + 1]) / kf;
        }
    }
    vals[0]
}

/// `dΨ^ℓ/dt = Ψ^{ℓ-1}(t + 1/2) - Ψ^{ℓ-1}(t - 1/2)`; at knots this is the
/// derivative of the right-continuous piece.
pub fn bspline_derivative(order: usize, t: f64) -> Result<f64> {
    if !(2..=MAX_ORDER).contains(&order) {
        return Err(Error::InvalidOrder { order, min: 2 });
    }
    Ok(derivative_unchecked(order, t))
}

#[inline]
pub(crate) fn derivative_unchecked(order: usize, t: f64) -> f64 {
    eval_unchecked(order - 1, t + 0.5) - eval_unchecked(order - 1, t - 0.5)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn indicator_is_half_open() {
        assert_eq!(bspline_eval(1, 0.25).unwrap(), 1.0);
        assert_eq!(bspline_eval(1, 0.75).unwrap(), 0.0);
        assert_eq!(bspline_eval(1, -0.5).unwrap(), 1.0);
        assert_eq!(bspline_eval(1, 0.5).unwrap(), 0.0);
    }

    #[test]
    fn low_order_values() {
        assert!((bspline_eval(2, 0.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((bspline_eval(2, 0.25).unwrap() - 0.75).abs() < 1e-15);
        assert!((bspline_eval(3, 0.0).unwrap() - 0.75).abs() < 1e-15);
        // Quadratic B-spline: (3/2 - |t|)^2 / 2 on the outer pieces.
        assert!((bspline_eval(3, 1.0).unwrap() - 0.125).abs() < 1e-15);
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(bspline_derivative(2, -0.4).unwrap(), 1.0);
        assert_eq!(bspline_derivative(3, 0.0).unwrap(), 0.0);
        assert!(bspline_derivative(1, 0.0).is_err());
        assert!(bspline_eval(0, 0.0).is_err());
    }

    proptest! {
        #[test]
        fn symmetric_nonnegative_supported(order in 1usize..=8, t in -6.0f64..6.0) {
            let v = bspline_eval(order, t).unwrap();
            prop_assert!(v >= 0.0);
            if t.abs() >= order as f64 / 2.0 {
                prop_assert_eq!(v, 0.0);
            }
            // Symmetry away from knots.
            let frac = (t + order as f64 / 2.0).fract();
            if frac > 1e-9 && frac < 1.0 - 1e-9 {
                prop_assert!((v - bspline_eval(order, -t).unwrap()).abs() < 1e-13);
            }
        }
    }
}
