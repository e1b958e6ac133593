//! Post-processing of discontinuous high-order finite element fields into
//! continuous piecewise-linear data, and level-set topology on the result.
//!
//! The pipeline has three stages:
//!
//! * [`hofield`]: meshes, element-local nodal fields, projection.
//! * [`siac`] and [`transform`]: grid sampling, subdivision with averaging,
//!   line-SIAC filtering, vorticity and normalization.
//! * [`topology`]: critical points, persistence, simplification, contour
//!   trees and segmentation on piecewise-linear fields.

pub mod demo;
pub mod error;
pub mod hofield;
pub mod io;
pub mod quadrature;
pub mod siac;
pub mod topology;
pub mod transform;

pub use error::{Error, Result};
