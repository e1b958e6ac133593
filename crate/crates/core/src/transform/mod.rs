//! Conversions from high-order fields to continuous piecewise-linear data:
//! grid sampling, subdivision with interface averaging, L-SIAC filtering,
//! vorticity and range normalization.

mod grid;
mod lsiac;
mod normalize;
mod sample;
mod subdivide;
mod vorticity;

pub use grid::{PLField, ScalarGrid};
pub use lsiac::{lsiac_grid, lsiac_or_fallback};
pub use normalize::{normalize, Normalize};
pub use sample::{resolve_bbox, sample_grid, AUTO_BBOX_MARGIN};
pub use subdivide::subdivide;
pub use vorticity::{vertex_gradients, vorticity_grid_fd, vorticity_lsiac, vorticity_subdivided};
