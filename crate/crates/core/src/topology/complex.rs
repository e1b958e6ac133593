use std::cmp::Ordering;
use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::transform::{PLField, ScalarGrid};

/// Simplicial complex (triangles in 2D, tetrahedra in 3D) carrying one
/// scalar per vertex. Vertices are totally ordered by `(value, index)`.
#[derive(Debug, Clone)]
pub struct TriangulatedField {
    dim: usize,
    positions: Vec<[f64; 3]>,
    values: Vec<f64>,
    cells: Vec<usize>,
    rank: Vec<usize>,
    order: Vec<usize>,
    nbr_offsets: Vec<usize>,
    nbrs: Vec<usize>,
    star_offsets: Vec<usize>,
    stars: Vec<usize>,
}

/// Builds a CSR table from `(row, item)` pairs, sorting and deduplicating
/// each row.
fn csr(n: usize, pairs: impl Iterator<Item = (usize, usize)> + Clone) -> (Vec<usize>, Vec<usize>) {
    let mut counts = vec![0usize; n + 1];
    for (r, _) in pairs.clone() {
        counts[r + 1] += 1;
    }
    for i in 0..n {
        counts[i + 1] += counts[i];
    }
    let mut fill = counts.clone();
    let mut items = vec![0usize; counts[n]];
    for (r, x) in pairs {
        items[fill[r]] = x;
        fill[r] += 1;
    }
    let mut offsets = Vec::with_capacity(n + 1);
    let mut out = Vec::with_capacity(items.len());
    offsets.push(0);
    for r in 0..n {
        let row = &mut items[counts[r]..counts[r + 1]];
        row.sort_unstable();
        let start = out.len();
        for &x in row.iter() {
            if out.len() == start || *out.last().unwrap() != x {
                out.push(x);
            }
        }
        offsets.push(out.len());
    }
    (offsets, out)
}

impl TriangulatedField {
    /// `cells` holds `dim + 1` vertex ids per simplex, flattened.
    pub fn new(dim: usize, positions: Vec<[f64; 3]>, cells: Vec<usize>, values: Vec<f64>) -> Result<Self> {
        if dim != 2 && dim != 3 {
            return Err(Error::InvalidMesh(format!("unsupported dimension {dim}")));
        }
        let n = values.len();
        let m = dim + 1;
        if positions.len() != n {
            return Err(Error::InvalidMesh(format!("{} positions for {n} values", positions.len())));
        }
        if n == 0 || cells.is_empty() || !cells.len().is_multiple_of(m) {
            return Err(Error::InvalidMesh("empty or ragged cell list".into()));
        }
        if cells.iter().any(|&v| v >= n) {
            return Err(Error::InvalidMesh("cell references missing vertex".into()));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidMesh("non-finite vertex value".into()));
        }
        for c in cells.chunks(m) {
            for a in 0..m {
                for b in a + 1..m {
                    if c[a] == c[b] {
                        return Err(Error::InvalidMesh("cell with repeated vertex".into()));
                    }
                }
            }
        }
        let star_pairs = cells.chunks(m).enumerate().flat_map(|(ci, c)| c.iter().map(move |&v| (v, ci)));
        let (star_offsets, stars) = csr(n, star_pairs);
        let nbr_pairs = cells
            .chunks(m)
            .flat_map(|c| c.iter().flat_map(move |&a| c.iter().filter(move |&&b| b != a).map(move |&b| (a, b))));
        let (nbr_offsets, nbrs) = csr(n, nbr_pairs);
        if let Some(v) = (0..n).find(|&v| star_offsets[v] == star_offsets[v + 1]) {
            return Err(Error::InvalidMesh(format!("vertex {v} belongs to no cell")));
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_unstable_by(|&a, &b| values[a].total_cmp(&values[b]).then(a.cmp(&b)));
        let mut rank = vec![0; n];
        for (r, &v) in order.iter().enumerate() {
            rank[v] = r;
        }
        let tf = Self {
            dim,
            positions,
            values,
            cells,
            rank,
            order,
            nbr_offsets,
            nbrs,
            star_offsets,
            stars,
        };
        if !tf.is_connected() {
            return Err(Error::InvalidMesh("complex is not connected".into()));
        }
        Ok(tf)
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.len()];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &u in self.neighbors(v) {
                if !seen[u] {
                    seen[u] = true;
                    count += 1;
                    queue.push_back(u);
                }
            }
        }
        count == self.len()
    }

    /// Same complex, new values (order recomputed).
    pub fn with_values(&self, values: Vec<f64>) -> Result<Self> {
        if values.len() != self.len() {
            return Err(Error::InvalidMesh(format!("{} values for {} vertices", values.len(), self.len())));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidMesh("non-finite vertex value".into()));
        }
        let mut order: Vec<usize> = (0..values.len()).collect();
        order.sort_unstable_by(|&a, &b| values[a].total_cmp(&values[b]).then(a.cmp(&b)));
        let mut rank = vec![0; values.len()];
        for (r, &v) in order.iter().enumerate() {
            rank[v] = r;
        }
        Ok(Self {
            values,
            rank,
            order,
            ..self.clone()
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value(&self, v: usize) -> f64 {
        self.values[v]
    }

    pub fn position(&self, v: usize) -> [f64; 3] {
        self.positions[v]
    }

    pub fn num_cells(&self) -> usize {
        self.cells.len() / (self.dim + 1)
    }

    pub fn cell(&self, c: usize) -> &[usize] {
        let m = self.dim + 1;
        &self.cells[c * m..(c + 1) * m]
    }

    pub fn cells(&self) -> impl Iterator<Item = &[usize]> {
        self.cells.chunks(self.dim + 1)
    }

    /// Position of `v` in the total order.
    pub fn rank(&self, v: usize) -> usize {
        self.rank[v]
    }

    /// Vertices sorted by `(value, index)`.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn compare(&self, a: usize, b: usize) -> Ordering {
        self.rank[a].cmp(&self.rank[b])
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.nbrs[self.nbr_offsets[v]..self.nbr_offsets[v + 1]]
    }

    /// Ids of the cells incident to `v`.
    pub fn star(&self, v: usize) -> &[usize] {
        &self.stars[self.star_offsets[v]..self.star_offsets[v + 1]]
    }

    /// Unique edges `(a, b)` with `a < b`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.len()).flat_map(move |a| self.neighbors(a).iter().filter(move |&&b| b > a).map(move |&b| (a, b)))
    }
}

/// Freudenthal triangulation of a regular grid: in 2D each cell is cut
/// along its `(i, j)`-`(i+1, j+1)` diagonal, in 3D each cube becomes six
/// tetrahedra around the main diagonal.
pub fn triangulate_grid(g: &ScalarGrid) -> Result<TriangulatedField> {
    let [nx, ny, nz] = g.res();
    let dim = g.dim();
    if nx < 2 || ny < 2 || (dim == 3 && nz < 2) {
        return Err(Error::DegenerateGrid(format!(
            "need at least 2 nodes per axis, got {nx}x{ny}{}",
            if dim == 3 { format!("x{nz}") } else { String::new() }
        )));
    }
    let positions = (0..g.len()).map(|i| g.position(i)).collect();
    let mut cells = Vec::new();
    if dim == 2 {
        cells.reserve(6 * (nx - 1) * (ny - 1));
        for j in 0..ny - 1 {
            for i in 0..nx - 1 {
                let a = g.index(i, j, 0);
                let b = g.index(i + 1, j, 0);
                let c = g.index(i + 1, j + 1, 0);
                let d = g.index(i, j + 1, 0);
                cells.extend_from_slice(&[a, b, c, a, c, d]);
            }
        }
    } else {
        const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        cells.reserve(24 * (nx - 1) * (ny - 1) * (nz - 1));
        for k in 0..nz - 1 {
            for j in 0..ny - 1 {
                for i in 0..nx - 1 {
                    for p in PERMS {
                        let mut c = [i, j, k];
                        cells.push(g.index(c[0], c[1], c[2]));
                        for axis in p {
                            c[axis] += 1;
                            cells.push(g.index(c[0], c[1], c[2]));
                        }
                    }
                }
            }
        }
    }
    TriangulatedField::new(dim, positions, cells, g.values().to_vec())
}

/// Complex of a piecewise-linear triangle field.
pub fn from_pl_field(f: &PLField) -> Result<TriangulatedField> {
    let positions = f.vertices.iter().map(|p| [p[0], p[1], 0.0]).collect();
    let cells = f.triangles.iter().flatten().copied().collect();
    TriangulatedField::new(2, positions, cells, f.values.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(nx: usize, ny: usize) -> ScalarGrid {
        ScalarGrid::new_2d([nx, ny], [0.0, 0.0], [1.0, 1.0], (0..nx * ny).map(|i| i as f64).collect()).unwrap()
    }

    #[test]
    fn small_grids() {
        assert_eq!(triangulate_grid(&grid(2, 2)).unwrap().num_cells(), 2);
        let t = triangulate_grid(&grid(3, 3)).unwrap();
        assert_eq!(t.num_cells(), 8);
        let (v, e, f) = (t.len() as i64, t.edges().count() as i64, t.num_cells() as i64);
        assert_eq!(v - e + f, 1);
        assert!(matches!(triangulate_grid(&grid(1, 4)), Err(Error::DegenerateGrid(_))));
    }

    #[test]
    fn kuhn_cube_has_six_tets() {
        let g = ScalarGrid::new(3, [2, 2, 2], [0.0; 3], [1.0; 3], (0..8).map(|i| i as f64).collect()).unwrap();
        let t = triangulate_grid(&g).unwrap();
        assert_eq!(t.num_cells(), 6);
        // Every tetrahedron contains both ends of the main diagonal.
        assert!(t.cells().all(|c| c.contains(&0) && c.contains(&7)));
        // Unit volumes add up to the cube.
        let vol: f64 = t
            .cells()
            .map(|c| {
                let p = c.iter().map(|&v| t.position(v)).collect::<Vec<_>>();
                let d = |i: usize| [p[i][0] - p[0][0], p[i][1] - p[0][1], p[i][2] - p[0][2]];
                let (a, b, cc) = (d(1), d(2), d(3));
                (a[0] * (b[1] * cc[2] - b[2] * cc[1]) - a[1] * (b[0] * cc[2] - b[2] * cc[0])
                    + a[2] * (b[0] * cc[1] - b[1] * cc[0]))
                    .abs()
                    / 6.0
            })
            .sum();
        assert!((vol - 1.0).abs() < 1e-14);
    }

    #[test]
    fn order_breaks_ties_by_index() {
        let g = ScalarGrid::new_2d([2, 2], [0.0, 0.0], [1.0, 1.0], vec![1.0, 0.0, 1.0, 0.0]).unwrap();
        let t = triangulate_grid(&g).unwrap();
        assert_eq!(t.order(), &[1, 3, 0, 2]);
    }
}
