//! Text file formats. Floats are written with 17 significant digits, so
//! every writer/reader pair reproduces the in-memory data bit for bit.

mod field;
mod grid;
pub mod json;
mod pl;
mod topo;

pub use field::{read_field_set, write_field_set, FieldSet, BASIS};
pub use grid::{read_grid, read_labels, write_grid, write_labels, GridHeader};
pub use pl::{read_pl_field, read_pl_labels, write_pl_field, write_pl_labels, ScalarInput};
pub use topo::{read_pairs, write_critical_points, write_curve, write_pairs, write_tree};
