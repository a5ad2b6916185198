//! Input file formats: matroids as JSON column matrices over an explicit
//! field, graphs as vertex counts plus edge lists.

use std::fmt;

use serde::Deserialize;

use crate::gf::{FiniteField, GfError};
use crate::matroid::{self, LinearMatroid, MatroidError};

#[derive(Debug)]
pub enum IoError {
    Parse(String),
    Field(GfError),
    Matroid(MatroidError),
    BadEntry(String),
}

impl fmt::Display for IoError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IoError::Parse(why) => write!(f, "cannot parse input: {why}"),
            IoError::Field(e) => write!(f, "field: {e}"),
            IoError::Matroid(e) => write!(f, "matroid: {e}"),
            IoError::BadEntry(why) => write!(f, "bad entry: {why}"),
        }
    }
}

impl std::error::Error for IoError {}

#[derive(Deserialize)]
struct FieldSpec {
    p: u64,
    #[serde(default = "default_degree")]
    s: u32,
}

fn default_degree() -> u32 {
    1
}

/// A matrix entry: a residue for prime fields, a coefficient vector for
/// extension fields.
#[derive(Deserialize)]
#[serde(untagged)]
enum Entry {
    Scalar(i64),
    Coeffs(Vec<i64>),
}

#[derive(Deserialize)]
struct MatroidFile {
    field: FieldSpec,
    columns: Vec<Vec<Entry>>,
}

#[derive(Deserialize)]
struct GraphFile {
    vertices: usize,
    edges: Vec<(usize, usize)>,
}

/// A parsed input: either a represented matroid or a bare graph (whose
/// graphic matroid is field independent, so commands choose the field).
pub enum Input {
    Matroid(LinearMatroid),
    Graph { vertices: usize, edges: Vec<(usize, usize)> },
}

pub fn parse_input(text: &str) -> Result<Input, IoError> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| IoError::Parse(e.to_string()))?;
    if value.get("columns").is_some() {
        let file: MatroidFile =
            serde_json::from_value(value).map_err(|e| IoError::Parse(e.to_string()))?;
        let field = FiniteField::new(file.field.p, file.field.s).map_err(IoError::Field)?;
        let r_ambient = file.columns.first().map_or(0, |c| c.len());
        let columns = file
            .columns
            .iter()
            .map(|col| {
                col.iter()
                    .map(|entry| match entry {
                        Entry::Scalar(v) => Ok(field.from_i64(*v)),
                        Entry::Coeffs(cs) => {
                            let reduced: Vec<u64> = cs
                                .iter()
                                .map(|&c| {
                                    (c as i128).rem_euclid(field.characteristic() as i128) as u64
                                })
                                .collect();
                            field.from_coeffs(&reduced).map_err(IoError::Field)
                        }
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let m = LinearMatroid::from_matrix(&field, columns, r_ambient)
            .map_err(IoError::Matroid)?;
        Ok(Input::Matroid(m))
    } else if value.get("edges").is_some() {
        let file: GraphFile =
            serde_json::from_value(value).map_err(|e| IoError::Parse(e.to_string()))?;
        Ok(Input::Graph { vertices: file.vertices, edges: file.edges })
    } else {
        Err(IoError::Parse(
            "expected a matroid ({field, columns}) or a graph ({vertices, edges})".into(),
        ))
    }
}

/// Render a matroid in the input file format (canonical coefficients).
pub fn matroid_to_json(m: &LinearMatroid) -> serde_json::Value {
    let field = m.field();
    let columns: Vec<Vec<serde_json::Value>> = m
        .columns()
        .iter()
        .map(|col| {
            col.iter()
                .map(|e| {
                    let coeffs = field.coeffs(e);
                    if field.degree() == 1 {
                        serde_json::json!(coeffs[0])
                    } else {
                        serde_json::json!(coeffs)
                    }
                })
                .collect()
        })
        .collect();
    serde_json::json!({
        "field": { "p": field.characteristic(), "s": field.degree() },
        "columns": columns,
    })
}

/// Build the graphic matroid of a parsed graph over the given field.
pub fn graph_to_matroid(
    vertices: usize,
    edges: &[(usize, usize)],
    field: &FiniteField,
) -> Result<LinearMatroid, IoError> {
    matroid::graphic(vertices, edges, field).map_err(IoError::Matroid)
}
