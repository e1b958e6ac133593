use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::json::{self, fmt_f64};
use crate::error::{Error, Result};
use crate::topology::{
    ContourTree, CriticalPoint, CriticalType, CurvePoint, PairEnd, PairKind, PersistencePair, Segmentation,
    TriangulatedField,
};

#[derive(Serialize, Deserialize)]
struct EndRecord {
    vertex: usize,
    value: f64,
    #[serde(rename = "type")]
    kind: CriticalType,
}

#[derive(Serialize, Deserialize)]
struct PairRecord {
    birth: EndRecord,
    death: EndRecord,
    persistence: f64,
    kind: PairKind,
}

impl From<&PairEnd> for EndRecord {
    fn from(e: &PairEnd) -> Self {
        Self {
            vertex: e.vertex,
            value: e.value,
            kind: e.kind,
        }
    }
}

pub fn write_pairs(pairs: &[PersistencePair]) -> String {
    let records: Vec<PairRecord> = pairs
        .iter()
        .map(|p| PairRecord {
            birth: (&p.birth).into(),
            death: (&p.death).into(),
            persistence: p.persistence,
            kind: p.kind,
        })
        .collect();
    json::to_pretty(&records)
}

pub fn read_pairs(text: &str) -> Result<Vec<PersistencePair>> {
    let records: Vec<PairRecord> = json::from_str(text)?;
    let end = |e: EndRecord| PairEnd {
        vertex: e.vertex,
        value: e.value,
        kind: e.kind,
    };
    records
        .into_iter()
        .map(|r| {
            if !(r.persistence >= 0.0) {
                return Err(Error::Parse(format!("negative persistence {}", r.persistence)));
            }
            Ok(PersistencePair {
                birth: end(r.birth),
                death: end(r.death),
                persistence: r.persistence,
                kind: r.kind,
            })
        })
        .collect()
}

pub fn write_curve(points: &[CurvePoint]) -> String {
    let mut out = String::from("threshold,count_leq,count_gt\n");
    for p in points {
        let _ = writeln!(out, "{},{},{}", fmt_f64(p.threshold), p.count_leq, p.count_gt);
    }
    out
}

#[derive(Serialize)]
struct CriticalRecord {
    vertex: usize,
    position: Vec<f64>,
    value: f64,
    #[serde(rename = "type")]
    kind: CriticalType,
    index: usize,
    lower_components: usize,
    upper_components: usize,
}

fn position(tf: &TriangulatedField, v: usize) -> Vec<f64> {
    tf.position(v)[..tf.dim()].to_vec()
}

pub fn write_critical_points(tf: &TriangulatedField, points: &[CriticalPoint]) -> String {
    let records: Vec<CriticalRecord> = points
        .iter()
        .map(|c| CriticalRecord {
            vertex: c.vertex,
            position: position(tf, c.vertex),
            value: c.value,
            kind: c.kind,
            index: c.index,
            lower_components: c.lower_components,
            upper_components: c.upper_components,
        })
        .collect();
    json::to_pretty(&records)
}

#[derive(Serialize)]
struct NodeRecord {
    id: usize,
    vertex: usize,
    position: Vec<f64>,
    value: f64,
    #[serde(rename = "type")]
    kind: CriticalType,
    leaf: bool,
    up: Vec<usize>,
    down: Vec<usize>,
}

#[derive(Serialize)]
struct ArcRecord {
    id: usize,
    down: usize,
    up: usize,
    leaf: bool,
    regular_vertices: usize,
}

#[derive(Serialize)]
struct SegmentRecord {
    id: usize,
    size: usize,
    leaf: bool,
    extremum_vertex: Option<usize>,
    extremum_value: Option<f64>,
    depth: usize,
    min_value: f64,
    max_value: f64,
}

#[derive(Serialize)]
struct TreeFile {
    num_leaves: usize,
    nodes: Vec<NodeRecord>,
    arcs: Vec<ArcRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    segments: Option<Vec<SegmentRecord>>,
}

/// Contour tree as JSON: nodes with positions and leaf flags, arcs with
/// leaf flags, and per-segment metadata when a segmentation is given.
pub fn write_tree(tf: &TriangulatedField, tree: &ContourTree, seg: Option<&Segmentation>) -> String {
    let file = TreeFile {
        num_leaves: tree.num_leaves(),
        nodes: tree
            .nodes
            .iter()
            .enumerate()
            .map(|(id, n)| NodeRecord {
                id,
                vertex: n.vertex,
                position: position(tf, n.vertex),
                value: n.value,
                kind: n.kind,
                leaf: n.is_leaf(),
                up: n.up.clone(),
                down: n.down.clone(),
            })
            .collect(),
        arcs: tree
            .arcs
            .iter()
            .enumerate()
            .map(|(id, a)| ArcRecord {
                id,
                down: a.down,
                up: a.up,
                leaf: tree.arc_is_leaf(id),
                regular_vertices: a.vertices.len(),
            })
            .collect(),
        segments: seg.map(|s| {
            s.segments
                .iter()
                .map(|i| SegmentRecord {
                    id: i.id,
                    size: i.size,
                    leaf: i.leaf,
                    extremum_vertex: i.extremum_vertex,
                    extremum_value: i.extremum_value,
                    depth: i.depth,
                    min_value: i.min_value,
                    max_value: i.max_value,
                })
                .collect()
        }),
    };
    json::to_pretty(&file)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::{
        classify_critical_points, contour_tree, persistence_curve, persistence_pairs, segmentation, triangulate_grid,
    };
    use crate::transform::ScalarGrid;

    fn field() -> TriangulatedField {
        let vals = vec![0.3, 1.7, 0.2, 2.9, 0.05, 3.1, 1.0 / 3.0, 0.9, 2.2, 0.4, 1.1, 0.6];
        triangulate_grid(&ScalarGrid::new_2d([4, 3], [0.0, 0.0], [0.5, 0.5], vals).unwrap()).unwrap()
    }

    #[test]
    fn pairs_round_trip() {
        let pairs = persistence_pairs(&field());
        let text = write_pairs(&pairs);
        assert_eq!(read_pairs(&text).unwrap(), pairs);
        assert!(text.contains("\"kind\": \"essential\""));
        assert!(text.contains("\"type\": \"min\""));
    }

    #[test]
    fn curve_csv_layout() {
        let pairs = persistence_pairs(&field());
        let csv = write_curve(&persistence_curve(&pairs, &[0.0, 10.0]));
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "threshold,count_leq,count_gt");
        assert_eq!(lines[1], format!("0.0000000000000000e0,0,{}", pairs.len()));
        assert_eq!(lines[2], format!("1.0000000000000000e1,{},0", pairs.len()));
    }

    #[test]
    fn tree_and_critical_points_are_valid_json() {
        let tf = field();
        let tree = contour_tree(&tf).unwrap();
        let seg = segmentation(&tree, &tf);
        let v: serde_json::Value = json::from_str(&write_tree(&tf, &tree, Some(&seg))).unwrap();
        assert_eq!(v["nodes"].as_array().unwrap().len(), tree.nodes.len());
        assert_eq!(v["segments"].as_array().unwrap().len(), tree.arcs.len());
        assert_eq!(v["num_leaves"], tree.num_leaves());
        let crit = classify_critical_points(&tf);
        let v: serde_json::Value = json::from_str(&write_critical_points(&tf, &crit)).unwrap();
        assert_eq!(v.as_array().unwrap().len(), crit.len());
        assert_eq!(v[0]["position"].as_array().unwrap().len(), 2);
    }

    #[test]
    fn rejects_malformed_pairs() {
        assert!(read_pairs("[{\"birth\":1}]").is_err());
    }
}
