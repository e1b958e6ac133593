//! Piecewise-linear topology of scalar fields on simplicial complexes:
//! critical points, 0-dimensional persistence, simplification, contour
//! trees and the segmentation they induce.

mod complex;
mod contour_tree;
mod critical;
mod curve;
mod persistence;
mod segmentation;
mod simplify;
mod union_find;

pub use complex::{from_pl_field, triangulate_grid, TriangulatedField};
pub use contour_tree::{contour_tree, ContourTree, TreeArc, TreeNode};
pub use critical::{classify_critical_points, classify_vertex, link_components, CriticalPoint, CriticalType};
pub use curve::{breakpoint_thresholds, count_gt, linear_thresholds, persistence_curve, CurvePoint};
pub use persistence::{filter_pairs, persistence_pairs, PairEnd, PairKind, PersistencePair};
pub use segmentation::{segmentation, SegmentInfo, Segmentation};
pub use simplify::simplify;
