use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Point2 = [f64; 2];

/// Barycentric tolerance for closure tests.
pub const CLOSURE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ElementKind {
    #[serde(rename = "tri")]
    Triangle,
    #[serde(rename = "quad")]
    Quadrilateral,
}

impl ElementKind {
    pub fn vertex_count(self) -> usize {
        match self {
            ElementKind::Triangle => 3,
            ElementKind::Quadrilateral => 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Element {
    pub kind: ElementKind,
    /// Vertex indices, counter-clockwise.
    pub vertices: Vec<usize>,
}

impl Element {
    pub fn triangle(a: usize, b: usize, c: usize) -> Self {
        Self {
            kind: ElementKind::Triangle,
            vertices: vec![a, b, c],
        }
    }

    pub fn quad(a: usize, b: usize, c: usize, d: usize) -> Self {
        Self {
            kind: ElementKind::Quadrilateral,
            vertices: vec![a, b, c, d],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BBox {
    pub min: Point2,
    pub max: Point2,
}

impl BBox {
    pub fn new(min: Point2, max: Point2) -> Self {
        Self { min, max }
    }

    pub fn width(&self) -> f64 {
        self.max[0] - self.min[0]
    }

    pub fn height(&self) -> f64 {
        self.max[1] - self.min[1]
    }

    /// Shrinks the box by `rel` of its extent on every side.
    pub fn shrink(&self, rel: f64) -> Self {
        let dx = rel * self.width();
        let dy = rel * self.height();
        Self {
            min: [self.min[0] + dx, self.min[1] + dy],
            max: [self.max[0] - dx, self.max[1] - dy],
        }
    }

    pub fn contains(&self, p: Point2, tol: f64) -> bool {
        p[0] >= self.min[0] - tol
            && p[0] <= self.max[0] + tol
            && p[1] >= self.min[1] - tol
            && p[1] <= self.max[1] + tol
    }

    fn of_points<'a>(pts: impl IntoIterator<Item = &'a Point2>) -> Self {
        let mut min = [f64::INFINITY; 2];
        let mut max = [f64::NEG_INFINITY; 2];
        for p in pts {
            for d in 0..2 {
                min[d] = min[d].min(p[d]);
                max[d] = max[d].max(p[d]);
            }
        }
        Self { min, max }
    }
}

/// Uniform bucket grid over element bounding boxes. Buckets hold element ids
/// in ascending order so a linear scan yields the lowest containing index.
#[derive(Debug, Clone)]
struct BucketGrid {
    bbox: BBox,
    nx: usize,
    ny: usize,
    buckets: Vec<Vec<usize>>,
}

impl BucketGrid {
    fn build(bbox: BBox, element_boxes: &[BBox]) -> Self {
        let n = element_boxes.len().max(1);
        let side = (n as f64).sqrt().ceil() as usize;
        let nx = side.max(1);
        let ny = side.max(1);
        let mut grid = Self {
            bbox,
            nx,
            ny,
            buckets: vec![Vec::new(); nx * ny],
        };
        let pad = 1e-9 * bbox.width().max(bbox.height());
        for (e, b) in element_boxes.iter().enumerate() {
            let (i0, j0) = grid.cell_of([b.min[0] - pad, b.min[1] - pad]);
            let (i1, j1) = grid.cell_of([b.max[0] + pad, b.max[1] + pad]);
            for j in j0..=j1 {
                for i in i0..=i1 {
                    grid.buckets[j * nx + i].push(e);
                }
            }
        }
        grid
    }

    fn cell_of(&self, p: Point2) -> (usize, usize) {
        let fx = (p[0] - self.bbox.min[0]) / self.bbox.width().max(f64::MIN_POSITIVE);
        let fy = (p[1] - self.bbox.min[1]) / self.bbox.height().max(f64::MIN_POSITIVE);
        let i = ((fx * self.nx as f64).floor().max(0.0) as usize).min(self.nx - 1);
        let j = ((fy * self.ny as f64).floor().max(0.0) as usize).min(self.ny - 1);
        (i, j)
    }

    fn candidates(&self, p: Point2) -> &[usize] {
        let (i, j) = self.cell_of(p);
        &self.buckets[j * self.nx + i]
    }

    /// Ascending, deduplicated element ids whose buckets overlap `b`.
    fn candidates_in(&self, b: &BBox) -> Vec<usize> {
        let (i0, j0) = self.cell_of(b.min);
        let (i1, j1) = self.cell_of(b.max);
        let mut out = Vec::new();
        for j in j0..=j1 {
            for i in i0..=i1 {
                out.extend_from_slice(&self.buckets[j * self.nx + i]);
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// Straight-sided unstructured 2D mesh of triangles and quadrilaterals.
#[derive(Debug, Clone)]
pub struct Mesh {
    vertices: Vec<Point2>,
    elements: Vec<Element>,
    vertex_elements: Vec<Vec<usize>>,
    edge_elements: BTreeMap<(usize, usize), Vec<usize>>,
    element_boxes: Vec<BBox>,
    longest_edges: Vec<f64>,
    bbox: BBox,
    locator: BucketGrid,
}

fn cross(o: Point2, a: Point2, b: Point2) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

fn dist(a: Point2, b: Point2) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

impl Mesh {
    pub fn new(vertices: Vec<Point2>, elements: Vec<Element>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::InvalidMesh("mesh has no elements".into()));
        }
        if vertices.iter().flatten().any(|c| !c.is_finite()) {
            return Err(Error::InvalidMesh("non-finite vertex coordinate".into()));
        }
        let mut vertex_elements = vec![Vec::new(); vertices.len()];
        let mut edge_elements: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        let mut element_boxes = Vec::with_capacity(elements.len());
        let mut longest_edges = Vec::with_capacity(elements.len());
        for (e, el) in elements.iter().enumerate() {
            let nv = el.kind.vertex_count();
            if el.vertices.len() != nv {
                return Err(Error::InvalidMesh(format!(
                    "element {e} has {} vertices, expected {nv}",
                    el.vertices.len()
                )));
            }
            if let Some(&bad) = el.vertices.iter().find(|&&v| v >= vertices.len()) {
                return Err(Error::InvalidMesh(format!(
                    "element {e} references missing vertex {bad}"
                )));
            }
            let pts: Vec<Point2> = el.vertices.iter().map(|&v| vertices[v]).collect();
            // Every corner turn must be strictly left: positive area, convex.
            for i in 0..nv {
                let c = cross(pts[i], pts[(i + 1) % nv], pts[(i + 2) % nv]);
                if c <= 0.0 {
                    return Err(Error::InvalidMesh(format!(
                        "element {e} is degenerate or not counter-clockwise"
                    )));
                }
            }
            let mut longest: f64 = 0.0;
            for i in 0..nv {
                let a = el.vertices[i];
                let b = el.vertices[(i + 1) % nv];
                longest = longest.max(dist(vertices[a], vertices[b]));
                edge_elements.entry((a.min(b), a.max(b))).or_default().push(e);
            }
            for &v in &el.vertices {
                vertex_elements[v].push(e);
            }
            element_boxes.push(BBox::of_points(&pts));
            longest_edges.push(longest);
        }
        if let Some((edge, els)) = edge_elements.iter().find(|(_, els)| els.len() > 2) {
            return Err(Error::InvalidMesh(format!(
                "edge {edge:?} is shared by {} elements",
                els.len()
            )));
        }
        let bbox = BBox::of_points(
            elements
                .iter()
                .flat_map(|el| el.vertices.iter().map(|&v| &vertices[v])),
        );
        let locator = BucketGrid::build(bbox, &element_boxes);
        Ok(Self {
            vertices,
            elements,
            vertex_elements,
            edge_elements,
            element_boxes,
            longest_edges,
            bbox,
            locator,
        })
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn element(&self, e: usize) -> &Element {
        &self.elements[e]
    }

    pub fn num_elements(&self) -> usize {
        self.elements.len()
    }

    pub fn bbox(&self) -> BBox {
        self.bbox
    }

    /// Elements incident to vertex `v`, ascending.
    pub fn vertex_elements(&self, v: usize) -> &[usize] {
        &self.vertex_elements[v]
    }

    /// Elements sharing the undirected edge `(a, b)`, ascending.
    pub fn edge_elements(&self, a: usize, b: usize) -> &[usize] {
        self.edge_elements
            .get(&(a.min(b), a.max(b)))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    /// All undirected edges with their adjacent elements, in key order.
    pub fn edges(&self) -> impl Iterator<Item = ((usize, usize), &[usize])> {
        self.edge_elements.iter().map(|(k, v)| (*k, v.as_slice()))
    }

    /// Longest edge of element `e`.
    pub fn element_size(&self, e: usize) -> f64 {
        self.longest_edges[e]
    }

    pub fn element_bbox(&self, e: usize) -> BBox {
        self.element_boxes[e]
    }

    pub fn corners(&self, e: usize) -> impl Iterator<Item = Point2> + '_ {
        self.elements[e].vertices.iter().map(|&v| self.vertices[v])
    }

    pub fn centroid(&self, e: usize) -> Point2 {
        let n = self.elements[e].vertices.len() as f64;
        let mut c = [0.0; 2];
        for p in self.corners(e) {
            c[0] += p[0];
            c[1] += p[1];
        }
        [c[0] / n, c[1] / n]
    }

    /// Closure test with barycentric tolerance [`CLOSURE_TOL`].
    pub fn contains(&self, e: usize, p: Point2) -> bool {
        let el = &self.elements[e];
        let v = |i: usize| self.vertices[el.vertices[i]];
        match el.kind {
            ElementKind::Triangle => in_triangle(v(0), v(1), v(2), p),
            ElementKind::Quadrilateral => {
                in_triangle(v(0), v(1), v(2), p) || in_triangle(v(0), v(2), v(3), p)
            }
        }
    }

    /// Lowest-index element whose closure contains `p`.
    pub fn locate(&self, p: Point2) -> Result<usize> {
        let outside = Error::PointOutsideMesh { x: p[0], y: p[1] };
        if !p[0].is_finite() || !p[1].is_finite() {
            return Err(outside);
        }
        let tol = 1e-9 * self.bbox.width().max(self.bbox.height());
        if !self.bbox.contains(p, tol) {
            return Err(outside);
        }
        self.locator
            .candidates(p)
            .iter()
            .copied()
            .find(|&e| self.contains(e, p))
            .ok_or(outside)
    }

    /// Every element whose closure contains `p`, ascending.
    pub fn elements_containing(&self, p: Point2) -> Vec<usize> {
        self.locator
            .candidates(p)
            .iter()
            .copied()
            .filter(|&e| self.contains(e, p))
            .collect()
    }

    /// Reference coordinates of physical point `p` in element `e`.
    /// Triangles use the affine map onto (0,0),(1,0),(0,1); quadrilaterals the
    /// bilinear map onto the unit square.
    pub fn to_reference(&self, e: usize, p: Point2) -> Point2 {
        let el = &self.elements[e];
        let v = |i: usize| self.vertices[el.vertices[i]];
        match el.kind {
            ElementKind::Triangle => {
                let (a, b, c) = (v(0), v(1), v(2));
                let j = [[b[0] - a[0], c[0] - a[0]], [b[1] - a[1], c[1] - a[1]]];
                let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
                let dx = p[0] - a[0];
                let dy = p[1] - a[1];
                [
                    (j[1][1] * dx - j[0][1] * dy) / det,
                    (-j[1][0] * dx + j[0][0] * dy) / det,
                ]
            }
            ElementKind::Quadrilateral => {
                let mut xi = [0.5, 0.5];
                for _ in 0..50 {
                    let x = self.to_physical(e, xi);
                    let r = [x[0] - p[0], x[1] - p[1]];
                    let j = self.jacobian(e, xi);
                    let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
                    let d0 = (j[1][1] * r[0] - j[0][1] * r[1]) / det;
                    let d1 = (-j[1][0] * r[0] + j[0][0] * r[1]) / det;
                    xi[0] -= d0;
                    xi[1] -= d1;
                    if d0.abs() + d1.abs() < 1e-15 {
                        break;
                    }
                }
                xi
            }
        }
    }

    pub fn to_physical(&self, e: usize, xi: Point2) -> Point2 {
        let el = &self.elements[e];
        let v = |i: usize| self.vertices[el.vertices[i]];
        match el.kind {
            ElementKind::Triangle => {
                let (a, b, c) = (v(0), v(1), v(2));
                [
                    a[0] + xi[0] * (b[0] - a[0]) + xi[1] * (c[0] - a[0]),
                    a[1] + xi[0] * (b[1] - a[1]) + xi[1] * (c[1] - a[1]),
                ]
            }
            ElementKind::Quadrilateral => {
                let (s, t) = (xi[0], xi[1]);
                let w = [(1.0 - s) * (1.0 - t), s * (1.0 - t), s * t, (1.0 - s) * t];
                let mut x = [0.0; 2];
                for (i, wi) in w.iter().enumerate() {
                    x[0] += wi * v(i)[0];
                    x[1] += wi * v(i)[1];
                }
                x
            }
        }
    }

    /// Jacobian `d(x, y) / d(xi, eta)` as rows `[[x_xi, x_eta], [y_xi, y_eta]]`.
    pub fn jacobian(&self, e: usize, xi: Point2) -> [[f64; 2]; 2] {
        let el = &self.elements[e];
        let v = |i: usize| self.vertices[el.vertices[i]];
        match el.kind {
            ElementKind::Triangle => {
                let (a, b, c) = (v(0), v(1), v(2));
                [[b[0] - a[0], c[0] - a[0]], [b[1] - a[1], c[1] - a[1]]]
            }
            ElementKind::Quadrilateral => {
                let (s, t) = (xi[0], xi[1]);
                let ds = [-(1.0 - t), 1.0 - t, t, -t];
                let dt = [-(1.0 - s), -s, s, 1.0 - s];
                let mut j = [[0.0; 2]; 2];
                for i in 0..4 {
                    let p = v(i);
                    j[0][0] += ds[i] * p[0];
                    j[0][1] += dt[i] * p[0];
                    j[1][0] += ds[i] * p[1];
                    j[1][1] += dt[i] * p[1];
                }
                j
            }
        }
    }

    /// Parameter interval `[s0, s1] ⊂ [0, 1]` of the segment `a + s (b - a)`
    /// lying in the closure of element `e` (Cyrus-Beck clipping).
    pub fn clip_segment(&self, e: usize, a: Point2, b: Point2) -> Option<(f64, f64)> {
        let el = &self.elements[e];
        let n = el.vertices.len();
        let d = [b[0] - a[0], b[1] - a[1]];
        let tol = CLOSURE_TOL * self.longest_edges[e];
        let (mut s0, mut s1) = (0.0_f64, 1.0_f64);
        for i in 0..n {
            let p = self.vertices[el.vertices[i]];
            let q = self.vertices[el.vertices[(i + 1) % n]];
            let edge = [q[0] - p[0], q[1] - p[1]];
            let len = edge[0].hypot(edge[1]);
            // Inward normal of a counter-clockwise edge.
            let normal = [-edge[1] / len, edge[0] / len];
            let num = normal[0] * (a[0] - p[0]) + normal[1] * (a[1] - p[1]) + tol;
            let den = normal[0] * d[0] + normal[1] * d[1];
            if den == 0.0 {
                if num < 0.0 {
                    return None;
                }
            } else {
                let s = -num / den;
                if den > 0.0 {
                    s0 = s0.max(s);
                } else {
                    s1 = s1.min(s);
                }
            }
            if s0 > s1 {
                return None;
            }
        }
        Some((s0, s1))
    }

    /// Ascending ids of elements that may overlap `b`.
    pub fn candidate_elements(&self, b: &BBox) -> Vec<usize> {
        self.locator.candidates_in(b)
    }

    /// Checks the documented invariants: boundary edges have one element,
    /// interior edges two, and the boundary forms closed loops.
    pub fn check_invariants(&self) -> Result<()> {
        let mut boundary_degree = vec![0usize; self.vertices.len()];
        for ((a, b), els) in &self.edge_elements {
            match els.len() {
                1 => {
                    boundary_degree[*a] += 1;
                    boundary_degree[*b] += 1;
                }
                2 => {
                    // Consistent orientation: the two elements traverse the
                    // edge in opposite directions.
                    let dir = |e: usize| {
                        let vs = &self.elements[e].vertices;
                        let i = vs.iter().position(|v| v == a).expect("edge vertex");
                        vs[(i + 1) % vs.len()] == *b
                    };
                    if dir(els[0]) == dir(els[1]) {
                        return Err(Error::InvalidMesh(format!(
                            "edge ({a}, {b}) has inconsistent orientation"
                        )));
                    }
                }
                n => {
                    return Err(Error::InvalidMesh(format!(
                        "edge ({a}, {b}) shared by {n} elements"
                    )))
                }
            }
        }
        if boundary_degree.iter().any(|&d| d != 0 && d != 2) {
            return Err(Error::InvalidMesh("boundary is not manifold".into()));
        }
        Ok(())
    }
}

fn in_triangle(a: Point2, b: Point2, c: Point2, p: Point2) -> bool {
    let area = cross(a, b, c);
    let l0 = cross(p, b, c) / area;
    let l1 = cross(a, p, c) / area;
    let l2 = cross(a, b, p) / area;
    l0 >= -CLOSURE_TOL && l1 >= -CLOSURE_TOL && l2 >= -CLOSURE_TOL
}
