//! Unstructured meshes, element-local high-order fields, evaluation and
//! projection.

mod analytic;
mod basis;
mod field;
mod mesh;
mod project;

pub use analytic::{harmonic2d, AnalyticField};
pub use basis::{basis, node_count, LagrangeBasis};
pub use field::{HighOrderField, MAX_DEGREE};
pub use mesh::{BBox, Element, ElementKind, Mesh, Point2, CLOSURE_TOL};
pub use project::project;
