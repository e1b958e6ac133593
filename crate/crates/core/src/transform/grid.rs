use crate::error::{Error, Result};

/// Regular 2D or 3D grid of samples, row-major with x fastest. Unused axes
/// of a 2D grid have resolution 1.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarGrid {
    dim: usize,
    res: [usize; 3],
    origin: [f64; 3],
    spacing: [f64; 3],
    values: Vec<f64>,
    flags: Option<Vec<bool>>,
}

impl ScalarGrid {
    pub fn new(
        dim: usize,
        res: [usize; 3],
        origin: [f64; 3],
        spacing: [f64; 3],
        values: Vec<f64>,
    ) -> Result<Self> {
        if dim != 2 && dim != 3 {
            return Err(Error::GridMismatch(format!("unsupported dimension {dim}")));
        }
        let res = if dim == 2 { [res[0], res[1], 1] } else { res };
        let spacing = if dim == 2 {
            [spacing[0], spacing[1], 1.0]
        } else {
            spacing
        };
        let origin = if dim == 2 { [origin[0], origin[1], 0.0] } else { origin };
        if res.contains(&0) {
            return Err(Error::GridMismatch("zero resolution".into()));
        }
        if spacing.iter().any(|&s| !(s > 0.0 && s.is_finite())) {
            return Err(Error::GridMismatch("spacing must be positive".into()));
        }
        if origin.iter().any(|o| !o.is_finite()) {
            return Err(Error::GridMismatch("non-finite origin".into()));
        }
        let n: usize = res.iter().product();
        if values.len() != n {
            return Err(Error::GridMismatch(format!(
                "{} values for {n} grid nodes",
                values.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::GridMismatch("non-finite sample".into()));
        }
        Ok(Self {
            dim,
            res,
            origin,
            spacing,
            values,
            flags: None,
        })
    }

    pub fn new_2d(res: [usize; 2], origin: [f64; 2], spacing: [f64; 2], values: Vec<f64>) -> Result<Self> {
        Self::new(
            2,
            [res[0], res[1], 1],
            [origin[0], origin[1], 0.0],
            [spacing[0], spacing[1], 1.0],
            values,
        )
    }

    pub fn with_flags(mut self, flags: Vec<bool>) -> Result<Self> {
        if flags.len() != self.values.len() {
            return Err(Error::GridMismatch(format!(
                "{} flags for {} nodes",
                flags.len(),
                self.values.len()
            )));
        }
        self.flags = Some(flags);
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn res(&self) -> [usize; 3] {
        self.res
    }

    pub fn origin(&self) -> [f64; 3] {
        self.origin
    }

    pub fn spacing(&self) -> [f64; 3] {
        self.spacing
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn flags(&self) -> Option<&[bool]> {
        self.flags.as_deref()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn index(&self, i: usize, j: usize, k: usize) -> usize {
        i + self.res[0] * (j + self.res[1] * k)
    }

    pub fn coords(&self, idx: usize) -> [usize; 3] {
        let i = idx % self.res[0];
        let j = (idx / self.res[0]) % self.res[1];
        let k = idx / (self.res[0] * self.res[1]);
        [i, j, k]
    }

    pub fn position(&self, idx: usize) -> [f64; 3] {
        let c = self.coords(idx);
        [
            self.origin[0] + c[0] as f64 * self.spacing[0],
            self.origin[1] + c[1] as f64 * self.spacing[1],
            self.origin[2] + c[2] as f64 * self.spacing[2],
        ]
    }

    /// Same geometry and flags, new values.
    pub fn with_values(&self, values: Vec<f64>) -> Result<Self> {
        let mut g = Self::new(self.dim, self.res, self.origin, self.spacing, values)?;
        g.flags = self.flags.clone();
        Ok(g)
    }

    pub fn same_geometry(&self, other: &Self) -> bool {
        self.dim == other.dim
            && self.res == other.res
            && self.origin == other.origin
            && self.spacing == other.spacing
    }
}

/// Continuous piecewise-linear field on a triangle mesh, one value per
/// vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct PLField {
    pub vertices: Vec<[f64; 2]>,
    pub triangles: Vec<[usize; 3]>,
    pub values: Vec<f64>,
}

impl PLField {
    pub fn new(vertices: Vec<[f64; 2]>, triangles: Vec<[usize; 3]>, values: Vec<f64>) -> Result<Self> {
        if values.len() != vertices.len() {
            return Err(Error::MeshMismatch(format!(
                "{} values for {} vertices",
                values.len(),
                vertices.len()
            )));
        }
        if triangles.iter().flatten().any(|&v| v >= vertices.len()) {
            return Err(Error::MeshMismatch("triangle references missing vertex".into()));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::MeshMismatch("non-finite vertex value".into()));
        }
        Ok(Self {
            vertices,
            triangles,
            values,
        })
    }

    pub fn same_mesh(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.triangles == other.triangles
    }

    pub fn with_values(&self, values: Vec<f64>) -> Result<Self> {
        Self::new(self.vertices.clone(), self.triangles.clone(), values)
    }
}
