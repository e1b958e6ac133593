//! Seeded test meshes on the unit square: structured grids with optionally
//! jittered interior vertices, split into triangles or kept as quads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hofield::{Element, Mesh};

/// Jitter is capped below this fraction of the cell spacing so every
/// element stays convex and counter-clockwise.
pub const MAX_JITTER: f64 = 0.3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DemoMeshSpec {
    /// Cells along x and y.
    pub nx: usize,
    pub ny: usize,
    /// Interior vertex displacement, as a fraction of the spacing.
    pub jitter: f64,
    pub seed: u64,
    pub quads: bool,
}

impl DemoMeshSpec {
    pub fn triangles(nx: usize, ny: usize, jitter: f64, seed: u64) -> Self {
        Self {
            nx,
            ny,
            jitter,
            seed,
            quads: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.nx == 0 || self.ny == 0 {
            return Err(Error::InvalidSpec(format!("grid {}x{} has no cells", self.nx, self.ny)));
        }
        if !(0.0..MAX_JITTER).contains(&self.jitter) {
            return Err(Error::InvalidSpec(format!(
                "jitter {} must lie in [0, {MAX_JITTER})",
                self.jitter
            )));
        }
        Ok(())
    }
}

/// Builds the mesh. Each vertex moves to a uniform point of the disk of
/// radius `jitter` (in units of the spacing, scaled per axis); boundary
/// vertices keep only the component along their edge, so the domain stays
/// the unit square. A corner of a cell lies at distance spacing/√2 from
/// the diagonal through its neighbours, and two displacements below 0.3
/// cannot close that gap, which keeps every element counter-clockwise and
/// convex. With triangles, each cell is cut along a diagonal drawn from the
/// same stream.
pub fn demo_mesh(spec: &DemoMeshSpec) -> Result<Mesh> {
    spec.validate()?;
    let DemoMeshSpec { nx, ny, jitter, .. } = *spec;
    let (hx, hy) = (1.0 / nx as f64, 1.0 / ny as f64);
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let disk = |rng: &mut ChaCha8Rng| loop {
        let d: [f64; 2] = [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)];
        if d[0] * d[0] + d[1] * d[1] < 1.0 {
            return [d[0] * jitter * hx, d[1] * jitter * hy];
        }
    };
    let mut vertices = Vec::with_capacity((nx + 1) * (ny + 1));
    for j in 0..=ny {
        for i in 0..=nx {
            let mut x = i as f64 * hx;
            let mut y = j as f64 * hy;
            let [dx, dy] = if jitter > 0.0 { disk(&mut rng) } else { [0.0, 0.0] };
            if i > 0 && i < nx {
                x += dx;
            }
            if j > 0 && j < ny {
                y += dy;
            }
            vertices.push([x, y]);
        }
    }
    let id = |i: usize, j: usize| j * (nx + 1) + i;
    let mut elements = Vec::with_capacity(if spec.quads { nx * ny } else { 2 * nx * ny });
    for j in 0..ny {
        for i in 0..nx {
            let (a, b, c, d) = (id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1));
            if spec.quads {
                elements.push(Element::quad(a, b, c, d));
            } else if jitter > 0.0 && rng.gen_bool(0.5) {
                elements.push(Element::triangle(a, b, d));
                elements.push(Element::triangle(b, c, d));
            } else {
                elements.push(Element::triangle(a, b, c));
                elements.push(Element::triangle(a, c, d));
            }
        }
    }
    let mesh = Mesh::new(vertices, elements)?;
    mesh.check_invariants()?;
    Ok(mesh)
}
