use serde::{Deserialize, Serialize};

use super::grid::{read_grid, write_grid};
use super::json;
use crate::error::{Error, Result};
use crate::topology::{from_pl_field, triangulate_grid, TriangulatedField};
use crate::transform::{PLField, ScalarGrid};

#[derive(Serialize, Deserialize)]
struct PLFile {
    vertices: Vec<[f64; 2]>,
    triangles: Vec<[usize; 3]>,
    values: Vec<f64>,
}

pub fn write_pl_field(f: &PLField) -> String {
    json::to_compact(&PLFile {
        vertices: f.vertices.clone(),
        triangles: f.triangles.clone(),
        values: f.values.clone(),
    })
}

pub fn read_pl_field(text: &str) -> Result<PLField> {
    let file: PLFile = json::from_str(text)?;
    PLField::new(file.vertices, file.triangles, file.values)
}

#[derive(Serialize, Deserialize)]
struct LabelFile {
    labels: Vec<usize>,
}

/// Per-vertex segment labels for a piecewise-linear mesh.
pub fn write_pl_labels(labels: &[usize]) -> String {
    json::to_compact(&LabelFile { labels: labels.to_vec() })
}

pub fn read_pl_labels(text: &str) -> Result<Vec<usize>> {
    Ok(json::from_str::<LabelFile>(text)?.labels)
}

/// Either kind of continuous scalar data accepted by the topology commands.
#[derive(Debug, Clone, PartialEq)]
pub enum ScalarInput {
    Grid(ScalarGrid),
    Pl(PLField),
}

impl ScalarInput {
    /// Reads a grid file (`SGRID 1` header) or a PL field JSON document,
    /// telling them apart by the first non-blank character.
    pub fn parse(text: &str) -> Result<Self> {
        match text.trim_start().chars().next() {
            Some('{') => Ok(ScalarInput::Pl(read_pl_field(text)?)),
            Some('S') => Ok(ScalarInput::Grid(read_grid(text)?)),
            _ => Err(Error::Parse("expected an SGRID file or a PL field JSON document".into())),
        }
    }

    pub fn write(&self) -> String {
        match self {
            ScalarInput::Grid(g) => write_grid(g),
            ScalarInput::Pl(f) => write_pl_field(f),
        }
    }

    pub fn values(&self) -> &[f64] {
        match self {
            ScalarInput::Grid(g) => g.values(),
            ScalarInput::Pl(f) => &f.values,
        }
    }

    pub fn triangulate(&self) -> Result<TriangulatedField> {
        match self {
            ScalarInput::Grid(g) => triangulate_grid(g),
            ScalarInput::Pl(f) => from_pl_field(f),
        }
    }

    /// Same geometry with new vertex values.
    pub fn with_values(&self, values: Vec<f64>) -> Result<Self> {
        Ok(match self {
            ScalarInput::Grid(g) => ScalarInput::Grid(g.with_values(values)?),
            ScalarInput::Pl(f) => ScalarInput::Pl(f.with_values(values)?),
        })
    }
}
