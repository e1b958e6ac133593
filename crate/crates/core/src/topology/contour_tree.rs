use std::collections::VecDeque;

use super::complex::TriangulatedField;
use super::critical::CriticalType;
use super::union_find::DisjointSet;
use crate::error::{Error, Result};

/// A vertex of the reduced tree: an extremum (leaf) or a saddle.
#[derive(Debug, Clone, PartialEq)]
pub struct TreeNode {
    pub vertex: usize,
    pub value: f64,
    pub kind: CriticalType,
    /// Arcs leaving the node upwards and downwards.
    pub up: Vec<usize>,
    pub down: Vec<usize>,
}

impl TreeNode {
    pub fn degree(&self) -> usize {
        self.up.len() + self.down.len()
    }

    pub fn is_leaf(&self) -> bool {
        self.degree() == 1
    }
}

/// Monotone arc between two nodes, with the regular vertices it absorbs
/// listed in ascending order.
#[derive(Debug, Clone, PartialEq)]
pub struct TreeArc {
    pub down: usize,
    pub up: usize,
    pub vertices: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ContourTree {
    /// Sorted by ascending `(value, vertex)`.
    pub nodes: Vec<TreeNode>,
    pub arcs: Vec<TreeArc>,
}

impl ContourTree {
    pub fn leaves(&self) -> impl Iterator<Item = &TreeNode> {
        self.nodes.iter().filter(|n| n.is_leaf())
    }

    pub fn num_leaves(&self) -> usize {
        self.leaves().count()
    }

    pub fn arc_is_leaf(&self, a: usize) -> bool {
        let arc = &self.arcs[a];
        self.nodes[arc.down].is_leaf() || self.nodes[arc.up].is_leaf()
    }
}

/// Augmented merge tree from one sweep: `parent[v]` is the vertex the
/// component headed by `v` flows into, `children[v]` the heads it absorbs.
struct MergeTree {
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
}

fn merge_tree(tf: &TriangulatedField, seq: impl Iterator<Item = usize>) -> MergeTree {
    let n = tf.len();
    let mut ds = DisjointSet::new(n);
    let mut head = vec![usize::MAX; n];
    let mut done = vec![false; n];
    let mut parent = vec![None; n];
    let mut children = vec![Vec::new(); n];
    for v in seq {
        let mut root = v;
        head[v] = v;
        for &u in tf.neighbors(v) {
            if !done[u] {
                continue;
            }
            let r = ds.find(u);
            if r == ds.find(root) {
                continue;
            }
            let h = head[r];
            parent[h] = Some(v);
            children[v].push(h);
            root = ds.union(root, r);
            head[root] = v;
        }
        done[v] = true;
    }
    MergeTree { parent, children }
}

impl MergeTree {
    fn remove_leaf(&mut self, x: usize) {
        if let Some(p) = self.parent[x] {
            self.children[p].retain(|&c| c != x);
        }
        self.parent[x] = None;
    }

    /// Splices out `x`, which has exactly one child.
    fn contract(&mut self, x: usize) {
        let c = self.children[x][0];
        let p = self.parent[x];
        self.parent[c] = p;
        if let Some(p) = p {
            for slot in &mut self.children[p] {
                if *slot == x {
                    *slot = c;
                }
            }
        }
        self.children[x].clear();
        self.parent[x] = None;
    }
}

/// Augmented contour tree as `(lower, upper)` vertex arcs.
fn augmented_arcs(tf: &TriangulatedField) -> Result<Vec<(usize, usize)>> {
    let n = tf.len();
    let order = tf.order();
    let mut join = merge_tree(tf, order.iter().copied());
    let mut split = merge_tree(tf, order.iter().rev().copied());
    let mut arcs = Vec::with_capacity(n.saturating_sub(1));
    let mut queued = vec![false; n];
    let mut queue = VecDeque::new();
    let leafish = |j: &MergeTree, s: &MergeTree, v: usize| j.children[v].len() + s.children[v].len() == 1;
    for &v in order {
        if leafish(&join, &split, v) {
            queued[v] = true;
            queue.push_back(v);
        }
    }
    let mut remaining = n;
    while remaining > 1 {
        let Some(x) = queue.pop_front() else { break };
        let y = if split.children[x].is_empty() && join.children[x].len() == 1 {
            // Upper leaf: its arc descends along the split tree.
            let Some(y) = split.parent[x] else { break };
            arcs.push((y, x));
            split.remove_leaf(x);
            join.contract(x);
            y
        } else if join.children[x].is_empty() && split.children[x].len() == 1 {
            let Some(y) = join.parent[x] else { break };
            arcs.push((x, y));
            join.remove_leaf(x);
            split.contract(x);
            y
        } else {
            continue;
        };
        remaining -= 1;
        if !queued[y] && leafish(&join, &split, y) {
            queued[y] = true;
            queue.push_back(y);
        }
    }
    if remaining != 1 {
        return Err(Error::NotSimplyConnected(format!(
            "join/split merge stalled with {remaining} vertices left"
        )));
    }
    Ok(arcs)
}

/// Contour tree from the join and split trees, with regular vertices
/// folded into arcs.
pub fn contour_tree(tf: &TriangulatedField) -> Result<ContourTree> {
    let n = tf.len();
    let mut up = vec![Vec::new(); n];
    let mut down = vec![Vec::new(); n];
    for (lo, hi) in augmented_arcs(tf)? {
        up[lo].push(hi);
        down[hi].push(lo);
    }
    for list in up.iter_mut().chain(down.iter_mut()) {
        list.sort_unstable_by_key(|&v| tf.rank(v));
    }
    let is_node = |v: usize| !(up[v].len() == 1 && down[v].len() == 1);
    let mut node_of = vec![usize::MAX; n];
    let mut nodes = Vec::new();
    for &v in tf.order() {
        if is_node(v) {
            node_of[v] = nodes.len();
            let kind = if down[v].is_empty() {
                CriticalType::Minimum
            } else if up[v].is_empty() {
                CriticalType::Maximum
            } else if tf.dim() == 2 {
                CriticalType::Saddle
            } else if down[v].len() > 1 {
                CriticalType::OneSaddle
            } else {
                CriticalType::TwoSaddle
            };
            nodes.push(TreeNode {
                vertex: v,
                value: tf.value(v),
                kind,
                up: Vec::new(),
                down: Vec::new(),
            });
        }
    }
    let mut arcs = Vec::with_capacity(nodes.len().saturating_sub(1));
    for ni in 0..nodes.len() {
        let v = nodes[ni].vertex;
        for &start in &up[v] {
            let mut w = start;
            let mut regular = Vec::new();
            while !is_node(w) {
                regular.push(w);
                w = up[w][0];
            }
            let a = arcs.len();
            let top = node_of[w];
            nodes[ni].up.push(a);
            nodes[top].down.push(a);
            arcs.push(TreeArc {
                down: ni,
                up: top,
                vertices: regular,
            });
        }
    }
    Ok(ContourTree { nodes, arcs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::triangulate_grid;
    use crate::transform::ScalarGrid;

    fn tf(nx: usize, vals: Vec<f64>) -> TriangulatedField {
        let ny = vals.len() / nx;
        triangulate_grid(&ScalarGrid::new_2d([nx, ny], [0.0, 0.0], [1.0, 1.0], vals).unwrap()).unwrap()
    }

    #[test]
    fn monotone_is_one_arc() {
        let t = contour_tree(&tf(5, (0..25).map(|i| i as f64).collect())).unwrap();
        assert_eq!(t.nodes.len(), 2);
        assert_eq!(t.arcs.len(), 1);
        assert_eq!(t.arcs[0].vertices.len(), 23);
    }

    #[test]
    fn w_profile_tree() {
        // Profile [0, 2, 1, 3] along x over three rows. With the index
        // tie-break the value-2 ridge peaks at its top end and the value-1
        // valley bottoms out at its bottom end.
        let row = [0.0, 2.0, 1.0, 3.0];
        let t = contour_tree(&tf(4, (0..12).map(|i| row[i % 4]).collect())).unwrap();
        let count = |k| t.nodes.iter().filter(|n| n.kind == k).count();
        assert_eq!(count(CriticalType::Minimum), 2);
        assert_eq!(count(CriticalType::Maximum), 2);
        assert_eq!(count(CriticalType::Saddle), 2);
        assert_eq!(t.arcs.len(), 5);
        assert!(t.nodes.iter().all(|n| n.is_leaf() || n.degree() == 3));
    }
}
