use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::json;
use crate::error::{Error, Result};
use crate::hofield::{Element, ElementKind, HighOrderField, Mesh};

pub const BASIS: &str = "nodal-lagrange-uniform";

#[derive(Serialize, Deserialize)]
struct ElementRecord {
    #[serde(rename = "type")]
    kind: ElementKind,
    v: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct FieldRecord {
    name: String,
    degree: usize,
    basis: String,
    coeffs: Vec<Vec<f64>>,
}

#[derive(Serialize, Deserialize)]
struct FieldFile {
    version: u32,
    dimension: u32,
    vertices: Vec<[f64; 2]>,
    elements: Vec<ElementRecord>,
    #[serde(default)]
    fields: Vec<FieldRecord>,
}

/// A mesh with zero or more named fields on it.
#[derive(Debug, Clone)]
pub struct FieldSet {
    pub mesh: Arc<Mesh>,
    pub fields: Vec<(String, HighOrderField)>,
}

impl FieldSet {
    pub fn mesh_only(mesh: Arc<Mesh>) -> Self {
        Self { mesh, fields: Vec::new() }
    }

    pub fn get(&self, name: &str) -> Result<&HighOrderField> {
        self.fields
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, f)| f)
            .ok_or_else(|| {
                let names: Vec<&str> = self.fields.iter().map(|(n, _)| n.as_str()).collect();
                Error::InvalidParameter(format!("no field named '{name}' (available: {})", names.join(", ")))
            })
    }
}

pub fn write_field_set(set: &FieldSet) -> String {
    let file = FieldFile {
        version: 1,
        dimension: 2,
        vertices: set.mesh.vertices().to_vec(),
        elements: set
            .mesh
            .elements()
            .iter()
            .map(|e| ElementRecord {
                kind: e.kind,
                v: e.vertices.clone(),
            })
            .collect(),
        fields: set
            .fields
            .iter()
            .map(|(name, f)| FieldRecord {
                name: name.clone(),
                degree: f.degree(),
                basis: BASIS.to_string(),
                coeffs: f.coeffs().to_vec(),
            })
            .collect(),
    };
    json::to_compact(&file)
}

pub fn read_field_set(text: &str) -> Result<FieldSet> {
    let file: FieldFile = json::from_str(text)?;
    if file.version != 1 {
        return Err(Error::Parse(format!("unsupported field file version {}", file.version)));
    }
    if file.dimension != 2 {
        return Err(Error::Parse(format!("unsupported dimension {}", file.dimension)));
    }
    let elements = file
        .elements
        .into_iter()
        .map(|e| match e.kind {
            ElementKind::Triangle => match e.v[..] {
                [a, b, c] => Ok(Element::triangle(a, b, c)),
                _ => Err(Error::Parse(format!("triangle with {} vertices", e.v.len()))),
            },
            ElementKind::Quadrilateral => match e.v[..] {
                [a, b, c, d] => Ok(Element::quad(a, b, c, d)),
                _ => Err(Error::Parse(format!("quadrilateral with {} vertices", e.v.len()))),
            },
        })
        .collect::<Result<Vec<_>>>()?;
    let mesh = Arc::new(Mesh::new(file.vertices, elements)?);
    let mut fields = Vec::with_capacity(file.fields.len());
    for rec in file.fields {
        if rec.basis != BASIS {
            return Err(Error::Parse(format!("unsupported basis '{}'", rec.basis)));
        }
        if fields.iter().any(|(n, _)| *n == rec.name) {
            return Err(Error::Parse(format!("duplicate field name '{}'", rec.name)));
        }
        let f = HighOrderField::new(mesh.clone(), rec.degree, rec.coeffs)?;
        fields.push((rec.name, f));
    }
    Ok(FieldSet { mesh, fields })
}
