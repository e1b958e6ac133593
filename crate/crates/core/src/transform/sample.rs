use rayon::prelude::*;

use super::grid::ScalarGrid;
use crate::error::{Error, Result};
use crate::hofield::{BBox, HighOrderField, Mesh};

/// Relative inset applied to the mesh bounding box when no box is given.
pub const AUTO_BBOX_MARGIN: f64 = 1e-9;

/// Sampling box: the given one, or the mesh box shrunk by
/// [`AUTO_BBOX_MARGIN`].
pub fn resolve_bbox(mesh: &Mesh, bbox: Option<BBox>) -> Result<BBox> {
    let b = bbox.unwrap_or_else(|| mesh.bbox().shrink(AUTO_BBOX_MARGIN));
    if !(b.width() > 0.0 && b.height() > 0.0) {
        return Err(Error::InvalidParameter("bounding box has no area".into()));
    }
    Ok(b)
}

pub(crate) fn grid_geometry(res: [usize; 2], bbox: &BBox) -> Result<([f64; 2], [f64; 2])> {
    if res[0] < 2 || res[1] < 2 {
        return Err(Error::InvalidParameter(format!(
            "grid resolution must be at least 2x2, got {}x{}",
            res[0], res[1]
        )));
    }
    let spacing = [
        bbox.width() / (res[0] - 1) as f64,
        bbox.height() / (res[1] - 1) as f64,
    ];
    Ok((bbox.min, spacing))
}

pub(crate) fn node_positions(res: [usize; 2], origin: [f64; 2], spacing: [f64; 2]) -> Vec<[f64; 2]> {
    (0..res[0] * res[1])
        .map(|idx| {
            let i = idx % res[0];
            let j = idx / res[0];
            [
                origin[0] + i as f64 * spacing[0],
                origin[1] + j as f64 * spacing[1],
            ]
        })
        .collect()
}

/// Samples the element-local interpolant at equispaced grid nodes, using
/// the lowest-index containing element at interfaces.
pub fn sample_grid(field: &HighOrderField, res: [usize; 2], bbox: Option<BBox>) -> Result<ScalarGrid> {
    let bbox = resolve_bbox(field.mesh(), bbox)?;
    let (origin, spacing) = grid_geometry(res, &bbox)?;
    let values = node_positions(res, origin, spacing)
        .par_iter()
        .map(|&p| field.eval(p, None))
        .collect::<Result<Vec<_>>>()?;
    ScalarGrid::new_2d(res, origin, spacing, values)
}
