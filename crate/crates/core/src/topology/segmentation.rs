use std::collections::VecDeque;

use super::complex::TriangulatedField;
use super::contour_tree::ContourTree;

/// Per-segment summary. Segment ids coincide with arc ids.
#[derive(Debug, Clone, PartialEq)]
pub struct SegmentInfo {
    pub id: usize,
    pub size: usize,
    /// Whether the arc ends at a leaf of the tree.
    pub leaf: bool,
    /// Leaf extremum of the arc (the upper one if both ends are leaves).
    pub extremum_vertex: Option<usize>,
    pub extremum_value: Option<f64>,
    /// Arc hops to the nearest leaf arc; leaf arcs have depth 0.
    pub depth: usize,
    pub min_value: f64,
    pub max_value: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Segmentation {
    pub labels: Vec<usize>,
    pub segments: Vec<SegmentInfo>,
}

impl Segmentation {
    /// Leaf segments with at least `min_size` vertices.
    pub fn leaf_segments(&self, min_size: usize) -> Vec<usize> {
        self.segments
            .iter()
            .filter(|s| s.leaf && s.size >= min_size)
            .map(|s| s.id)
            .collect()
    }
}

/// Labels each vertex with a contour-tree arc. Regular vertices take the arc
/// they were folded into. With the tree rooted at the global minimum, every
/// other node goes to the arc leading towards the root and the root goes to
/// its only arc, so each arc receives at least one vertex.
///
/// The vertices of one arc need not be edge-connected in the complex. Each
/// segment keeps the component holding its leaf extremum (or else its
/// largest component, lowest vertex first on ties), and the remaining pieces
/// are handed to whichever kept segment a breadth-first search from all kept
/// vertices reaches first.
pub fn segmentation(tree: &ContourTree, tf: &TriangulatedField) -> Segmentation {
    let mut labels = vec![usize::MAX; tf.len()];
    for (a, arc) in tree.arcs.iter().enumerate() {
        for &v in &arc.vertices {
            labels[v] = a;
        }
    }
    if tree.arcs.is_empty() {
        labels.iter_mut().for_each(|l| *l = 0);
        return Segmentation { labels, segments: Vec::new() };
    }
    let root = 0;
    let mut visited = vec![false; tree.nodes.len()];
    visited[root] = true;
    let mut queue = VecDeque::from([root]);
    while let Some(ni) = queue.pop_front() {
        let node = &tree.nodes[ni];
        for &a in node.up.iter().chain(&node.down) {
            let arc = &tree.arcs[a];
            let other = if arc.down == ni { arc.up } else { arc.down };
            if !visited[other] {
                visited[other] = true;
                labels[tree.nodes[other].vertex] = a;
                queue.push_back(other);
            }
        }
    }
    let root_node = &tree.nodes[root];
    labels[root_node.vertex] = *root_node.up.iter().chain(&root_node.down).min().unwrap();
    reattach_strays(tree, tf, &mut labels);

    let depth = arc_depths(tree);
    let mut segments: Vec<SegmentInfo> = (0..tree.arcs.len())
        .map(|a| {
            let arc = &tree.arcs[a];
            let (lo, hi) = (&tree.nodes[arc.down], &tree.nodes[arc.up]);
            let ext = if hi.is_leaf() {
                Some(hi)
            } else if lo.is_leaf() {
                Some(lo)
            } else {
                None
            };
            SegmentInfo {
                id: a,
                size: 0,
                leaf: ext.is_some(),
                extremum_vertex: ext.map(|n| n.vertex),
                extremum_value: ext.map(|n| n.value),
                depth: depth[a],
                min_value: f64::INFINITY,
                max_value: f64::NEG_INFINITY,
            }
        })
        .collect();
    for (v, &l) in labels.iter().enumerate() {
        let s = &mut segments[l];
        s.size += 1;
        s.min_value = s.min_value.min(tf.value(v));
        s.max_value = s.max_value.max(tf.value(v));
    }
    Segmentation { labels, segments }
}

fn reattach_strays(tree: &ContourTree, tf: &TriangulatedField, labels: &mut [usize]) {
    let n = tf.len();
    let mut comp = vec![usize::MAX; n];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = comps.len();
        comp[start] = id;
        let mut members = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &u in tf.neighbors(v) {
                if comp[u] == usize::MAX && labels[u] == labels[start] {
                    comp[u] = id;
                    members.push(u);
                    queue.push_back(u);
                }
            }
        }
        comps.push(members);
    }
    if comps.len() == tree.arcs.len() {
        return;
    }

    // Components are discovered in increasing order of their lowest vertex,
    // so the first largest one wins ties.
    let mut main = vec![usize::MAX; tree.arcs.len()];
    for (id, members) in comps.iter().enumerate() {
        let a = labels[members[0]];
        if main[a] == usize::MAX || members.len() > comps[main[a]].len() {
            main[a] = id;
        }
    }
    for (a, arc) in tree.arcs.iter().enumerate() {
        for ni in [arc.up, arc.down] {
            let node = &tree.nodes[ni];
            if node.is_leaf() && labels[node.vertex] == a {
                main[a] = comp[node.vertex];
            }
        }
    }

    let mut queue = VecDeque::new();
    for v in 0..n {
        if main[labels[v]] == comp[v] {
            queue.push_back(v);
        } else {
            labels[v] = usize::MAX;
        }
    }
    while let Some(v) = queue.pop_front() {
        for &u in tf.neighbors(v) {
            if labels[u] == usize::MAX {
                labels[u] = labels[v];
                queue.push_back(u);
            }
        }
    }
}

fn arc_depths(tree: &ContourTree) -> Vec<usize> {
    let mut depth = vec![usize::MAX; tree.arcs.len()];
    let mut queue = VecDeque::new();
    for a in 0..tree.arcs.len() {
        if tree.arc_is_leaf(a) {
            depth[a] = 0;
            queue.push_back(a);
        }
    }
    while let Some(a) = queue.pop_front() {
        let arc = &tree.arcs[a];
        for &ni in &[arc.down, arc.up] {
            let node = &tree.nodes[ni];
            for &b in node.up.iter().chain(&node.down) {
                if depth[b] == usize::MAX {
                    depth[b] = depth[a] + 1;
                    queue.push_back(b);
                }
            }
        }
    }
    depth
}
