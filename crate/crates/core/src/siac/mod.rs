//! B-splines, symmetric SIAC kernels and line-SIAC point filtering.

mod bspline;
mod filter;
mod kernel;

pub use bspline::{bspline_derivative, bspline_eval, MAX_ORDER};
pub use filter::{
    adaptive_characteristic_length, convolve, lsiac_point, CharacteristicLength, LsiacParams,
    ADAPTIVE_MAX_ITERATIONS,
};
pub use kernel::{bspline_moment, direction, solve_kernel_coefficients, SiacKernel};
