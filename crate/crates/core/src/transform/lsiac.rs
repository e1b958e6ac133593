use rayon::prelude::*;

use super::grid::ScalarGrid;
use super::sample::{grid_geometry, node_positions, resolve_bbox};
use crate::error::{Error, Result};
use crate::hofield::{BBox, HighOrderField, Point2};
use crate::siac::{direction, lsiac_point, LsiacParams};

/// Filters one point; when the symmetric support leaves the mesh, falls back
/// to the raw value (or raw directional derivative) and reports `true`.
pub fn lsiac_or_fallback(field: &HighOrderField, p: Point2, params: &LsiacParams) -> Result<(f64, bool)> {
    match lsiac_point(field, p, params) {
        Ok(v) => Ok((v, false)),
        Err(Error::SupportExitsDomain { .. }) => {
            let v = if params.deriv == 0 {
                field.eval(p, None)?
            } else {
                let g = field.eval_elementwise_gradient(p, None)?;
                let d = direction(params.theta_deg);
                g[0] * d[0] + g[1] * d[1]
            };
            Ok((v, true))
        }
        Err(e) => Err(e),
    }
}

/// L-SIAC filtered samples on an equispaced grid, with per-node fallback
/// flags.
pub fn lsiac_grid(
    field: &HighOrderField,
    res: [usize; 2],
    bbox: Option<BBox>,
    params: &LsiacParams,
) -> Result<ScalarGrid> {
    params.validate()?;
    let bbox = resolve_bbox(field.mesh(), bbox)?;
    let (origin, spacing) = grid_geometry(res, &bbox)?;
    let out = node_positions(res, origin, spacing)
        .par_iter()
        .map(|&p| lsiac_or_fallback(field, p, params))
        .collect::<Result<Vec<_>>>()?;
    let (values, flags): (Vec<f64>, Vec<bool>) = out.into_iter().unzip();
    ScalarGrid::new_2d(res, origin, spacing, values)?.with_flags(flags)
}
