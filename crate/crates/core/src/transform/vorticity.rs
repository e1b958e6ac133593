use rayon::prelude::*;

use super::grid::{PLField, ScalarGrid};
use super::lsiac::lsiac_or_fallback;
use super::sample::{grid_geometry, node_positions, resolve_bbox};
use crate::error::{Error, Result};
use crate::hofield::{BBox, HighOrderField};
use crate::siac::{CharacteristicLength, LsiacParams};

/// Second-order derivative of samples `f` along one axis: central in the
/// interior, one-sided three-point at the ends.
fn axis_derivative(f: impl Fn(usize) -> f64, n: usize, i: usize, h: f64) -> f64 {
    if i == 0 {
        (-3.0 * f(0) + 4.0 * f(1) - f(2)) / (2.0 * h)
    } else if i == n - 1 {
        (3.0 * f(n - 1) - 4.0 * f(n - 2) + f(n - 3)) / (2.0 * h)
    } else {
        (f(i + 1) - f(i - 1)) / (2.0 * h)
    }
}

/// `ω = v_x - u_y` by finite differences on two 2D grids with identical
/// geometry.
pub fn vorticity_grid_fd(u: &ScalarGrid, v: &ScalarGrid) -> Result<ScalarGrid> {
    if !u.same_geometry(v) {
        return Err(Error::GridMismatch("u and v grids differ in geometry".into()));
    }
    if u.dim() != 2 {
        return Err(Error::GridMismatch("vorticity needs 2D grids".into()));
    }
    let [nx, ny, _] = u.res();
    if nx < 3 || ny < 3 {
        return Err(Error::GridMismatch(format!(
            "finite differences need at least 3x3 nodes, got {nx}x{ny}"
        )));
    }
    let [dx, dy, _] = u.spacing();
    let (uv, vv) = (u.values(), v.values());
    let values = (0..nx * ny)
        .into_par_iter()
        .map(|idx| {
            let (i, j) = (idx % nx, idx / nx);
            let v_x = axis_derivative(|a| vv[j * nx + a], nx, i, dx);
            let u_y = axis_derivative(|b| uv[b * nx + i], ny, j, dy);
            v_x - u_y
        })
        .collect();
    u.with_values(values)
}

/// Constant gradient of the linear interpolant on each triangle, with its
/// area.
fn triangle_gradients(f: &PLField) -> Vec<([f64; 2], f64)> {
    f.triangles
        .iter()
        .map(|t| {
            let [a, b, c] = t.map(|i| f.vertices[i]);
            let [fa, fb, fc] = t.map(|i| f.values[i]);
            let e1 = [b[0] - a[0], b[1] - a[1]];
            let e2 = [c[0] - a[0], c[1] - a[1]];
            let det = e1[0] * e2[1] - e1[1] * e2[0];
            let d1 = fb - fa;
            let d2 = fc - fa;
            let g = [(d1 * e2[1] - d2 * e1[1]) / det, (d2 * e1[0] - d1 * e2[0]) / det];
            (g, 0.5 * det.abs())
        })
        .collect()
}

/// Area-weighted mean of incident triangle gradients at every vertex.
pub fn vertex_gradients(f: &PLField) -> Vec<[f64; 2]> {
    let mut acc = vec![[0.0; 3]; f.vertices.len()];
    for (t, (g, area)) in f.triangles.iter().zip(triangle_gradients(f)) {
        for &v in t {
            acc[v][0] += area * g[0];
            acc[v][1] += area * g[1];
            acc[v][2] += area;
        }
    }
    acc.iter()
        .map(|a| if a[2] > 0.0 { [a[0] / a[2], a[1] / a[2]] } else { [0.0, 0.0] })
        .collect()
}

/// `ω = v_x - u_y` from area-weighted vertex gradients on a shared
/// triangle mesh.
pub fn vorticity_subdivided(u: &PLField, v: &PLField) -> Result<PLField> {
    if !u.same_mesh(v) {
        return Err(Error::MeshMismatch("u and v live on different meshes".into()));
    }
    let gu = vertex_gradients(u);
    let gv = vertex_gradients(v);
    let values = gu.iter().zip(&gv).map(|(a, b)| b[0] - a[1]).collect();
    u.with_values(values)
}

/// `ω = v_x - u_y` with derivative line filters: `θ = 0°` for `v_x`,
/// `θ = 90°` for `u_y`. Nodes where either support leaves the mesh use
/// element-wise gradients and are flagged.
pub fn vorticity_lsiac(
    u: &HighOrderField,
    v: &HighOrderField,
    res: [usize; 2],
    bbox: Option<BBox>,
    k: usize,
    spline_order: usize,
    scale: CharacteristicLength,
) -> Result<ScalarGrid> {
    if !std::sync::Arc::ptr_eq(u.mesh(), v.mesh())
        && (u.mesh().vertices() != v.mesh().vertices()
            || u.mesh().elements() != v.mesh().elements())
    {
        return Err(Error::MeshMismatch("u and v fields use different meshes".into()));
    }
    let along_x = LsiacParams::new(k, 0.0)
        .with_spline_order(spline_order)
        .with_deriv(1)
        .with_scale(scale);
    let along_y = LsiacParams { theta_deg: 90.0, ..along_x };
    along_x.validate()?;
    let bbox = resolve_bbox(u.mesh(), bbox)?;
    let (origin, spacing) = grid_geometry(res, &bbox)?;
    let out = node_positions(res, origin, spacing)
        .par_iter()
        .map(|&p| {
            let (v_x, fx) = lsiac_or_fallback(v, p, &along_x)?;
            let (u_y, fy) = lsiac_or_fallback(u, p, &along_y)?;
            Ok((v_x - u_y, fx || fy))
        })
        .collect::<Result<Vec<_>>>()?;
    let (values, flags): (Vec<f64>, Vec<bool>) = out.into_iter().unzip();
    ScalarGrid::new_2d(res, origin, spacing, values)?.with_flags(flags)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid_of(n: usize, f: impl Fn(f64, f64) -> f64) -> ScalarGrid {
        let h = 1.0 / (n - 1) as f64;
        let vals = (0..n * n)
            .map(|i| f((i % n) as f64 * h, (i / n) as f64 * h))
            .collect();
        ScalarGrid::new_2d([n, n], [0.0, 0.0], [h, h], vals).unwrap()
    }

    #[test]
    fn rigid_rotation_is_exact() {
        let c = 1.7;
        let u = grid_of(11, |_, y| -c * y);
        let v = grid_of(11, |x, _| c * x);
        let w = vorticity_grid_fd(&u, &v).unwrap();
        assert!(w.values().iter().all(|x| (x - 2.0 * c).abs() < 1e-10));
    }

    #[test]
    fn mismatched_grids_are_rejected() {
        let u = grid_of(11, |_, y| y);
        let v = grid_of(12, |x, _| x);
        assert!(matches!(vorticity_grid_fd(&u, &v), Err(Error::GridMismatch(_))));
    }

    #[test]
    fn area_weighted_vertex_gradient() {
        // Two triangles sharing vertex 0 with different gradients.
        let verts = vec![[0.0, 0.0], [2.0, 0.0], [0.0, 1.0], [-1.0, 0.0]];
        let tris = vec![[0, 1, 2], [0, 2, 3]];
        let vals = vec![0.0, 2.0, 0.0, 3.0];
        let f = PLField::new(verts, tris, vals).unwrap();
        // Triangle A: f = x on area 1; triangle B: f = -3x on area 0.5.
        let (g1, a1) = ([1.0, 0.0], 1.0);
        let (g2, a2) = ([-3.0, 0.0], 0.5);
        let want = [
            (a1 * g1[0] + a2 * g2[0]) / (a1 + a2),
            (a1 * g1[1] + a2 * g2[1]) / (a1 + a2),
        ];
        let got = vertex_gradients(&f)[0];
        assert!((got[0] - want[0]).abs() < 1e-14 && (got[1] - want[1]).abs() < 1e-14);
    }
}
