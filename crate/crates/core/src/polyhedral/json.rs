use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Vector;

use super::complex::PolyhedralComplex;
use super::point::RationalPoint;
use super::polyhedron::Polyhedron;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CellJson {
    pub vertices: Vec<usize>,
    #[serde(default)]
    pub rays: Vec<Vec<i64>>,
    #[serde(default)]
    pub lineality: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComplexJson {
    pub ambient_dim: usize,
    pub points: Vec<RationalPoint>,
    pub cells: Vec<CellJson>,
}

pub fn schema_error(path: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Schema { path: path.into(), message: message.into() }
}

/// Maps a serde error to a schema error carrying line and column.
pub fn from_json_str<T: serde::de::DeserializeOwned>(s: &str) -> Result<T> {
    serde_json::from_str(s).map_err(|e| schema_error(format!("line {}, column {}", e.line(), e.column()), e.to_string()))
}

impl ComplexJson {
    /// Cells exactly as written (rays are not normalized).
    pub fn raw_cells(&self) -> Result<Vec<Polyhedron>> {
        let pts: Vec<Vector> = self
            .points
            .iter()
            .enumerate()
            .map(|(i, p)| {
                if p.dim() != self.ambient_dim {
                    return Err(schema_error(format!("points[{i}]"), "wrong number of coordinates"));
                }
                p.to_vector()
                    .ok_or_else(|| schema_error(format!("points[{i}]"), "-inf coordinates need a T^n chart"))
            })
            .collect::<Result<_>>()?;
        self.cells
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let verts = c
                    .vertices
                    .iter()
                    .enumerate()
                    .map(|(j, &v)| {
                        pts.get(v)
                            .cloned()
                            .ok_or_else(|| schema_error(format!("cells[{i}].vertices[{j}]"), "index out of range"))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Polyhedron::from_raw(verts, c.rays.clone(), c.lineality.clone())
                    .map_err(|e| schema_error(format!("cells[{i}]"), e.to_string()))
            })
            .collect()
    }

    /// The complex as listed, with the cover relation inferred.
    pub fn to_complex_as_listed(&self) -> Result<PolyhedralComplex> {
        Ok(PolyhedralComplex::infer(self.ambient_dim, self.raw_cells()?))
    }

    /// The complex generated by the listed cells.
    pub fn to_complex(&self) -> Result<PolyhedralComplex> {
        PolyhedralComplex::from_maximal_cells(self.ambient_dim, self.raw_cells()?)
    }

    pub fn from_complex(c: &PolyhedralComplex) -> Self {
        let mut points: Vec<Vector> = Vec::new();
        let mut cells = Vec::new();
        for cell in c.cells() {
            let vertices = cell
                .vertices()
                .iter()
                .map(|v| match points.iter().position(|p| p == v) {
                    Some(i) => i,
                    None => {
                        points.push(v.clone());
                        points.len() - 1
                    }
                })
                .collect();
            cells.push(CellJson { vertices, rays: cell.rays().to_vec(), lineality: cell.lineality().to_vec() });
        }
        ComplexJson {
            ambient_dim: c.ambient_dim(),
            points: points.iter().map(|p| RationalPoint::finite(p)).collect(),
            cells,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_line() {
        let s = r#"{"ambient_dim": 2, "points": [["0","0"]],
            "cells": [{"vertices":[0],"rays":[[1,0]]},{"vertices":[0],"rays":[[0,1]]},
                      {"vertices":[0],"rays":[[-1,-1]]},{"vertices":[0]}]}"#;
        let j: ComplexJson = from_json_str(s).unwrap();
        let c = j.to_complex_as_listed().unwrap();
        assert!(c.validate().is_valid());
        let back = ComplexJson::from_complex(&c);
        assert_eq!(back.cells.len(), 4);
    }

    #[test]
    fn bad_index_is_positional() {
        let s = r#"{"ambient_dim": 1, "points": [["0"]], "cells": [{"vertices":[3]}]}"#;
        let j: ComplexJson = from_json_str(s).unwrap();
        match j.raw_cells() {
            Err(Error::Schema { path, .. }) => assert_eq!(path, "cells[0].vertices[0]"),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(from_json_str::<ComplexJson>("{"), Err(Error::Schema { .. })));
    }
}
