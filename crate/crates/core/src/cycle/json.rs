use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::polyhedral::json::{schema_error, ComplexJson};
use crate::polyhedral::Polyhedron;
use crate::rational::{serde_rational, Rational};

use super::cartier::{AffinePiece, CartierFunction};
use super::cycle::TropicalCycle;

/// Complex JSON plus `"weights": {"cell_index": int}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CycleJson {
    #[serde(flatten)]
    pub complex: ComplexJson,
    pub weights: BTreeMap<String, i64>,
}

impl CycleJson {
    pub fn to_cycle(&self) -> Result<TropicalCycle> {
        let cells = self.complex.raw_cells()?;
        let mut weighted = Vec::new();
        let mut dim = None;
        for (k, w) in &self.weights {
            let i: usize = k.parse().map_err(|_| schema_error(format!("weights.{k}"), "not a cell index"))?;
            let cell: &Polyhedron = cells.get(i).ok_or_else(|| schema_error(format!("weights.{k}"), "index out of range"))?;
            let d = cell.dim();
            if *dim.get_or_insert(d) != d {
                return Err(schema_error(format!("weights.{k}"), "weighted cells of different dimensions"));
            }
            weighted.push((cell.clone(), *w));
        }
        TropicalCycle::from_weighted_cells(self.complex.ambient_dim, dim.unwrap_or(0), weighted)
    }

    pub fn from_cycle(c: &TropicalCycle) -> Self {
        let complex = ComplexJson::from_complex(c.complex());
        let weights = c.weights().iter().map(|(i, w)| (i.to_string(), *w)).collect();
        Self { complex, weights }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PieceJson {
    pub cell: usize,
    pub linear: Vec<i64>,
    #[serde(with = "serde_rational")]
    pub constant: Rational,
}

/// Pieces refer to cells of an accompanying complex.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CartierJson {
    pub pieces: Vec<PieceJson>,
}

impl CartierJson {
    pub fn to_function(&self, domain: &ComplexJson) -> Result<CartierFunction> {
        let cells = domain.raw_cells()?;
        let pieces = self
            .pieces
            .iter()
            .enumerate()
            .map(|(k, p)| {
                let cell = cells
                    .get(p.cell)
                    .ok_or_else(|| schema_error(format!("pieces[{k}].cell"), "index out of range"))?;
                Ok((cell.clone(), AffinePiece { linear: p.linear.clone(), constant: p.constant.clone() }))
            })
            .collect::<Result<Vec<_>>>()?;
        CartierFunction::new(domain.ambient_dim, pieces)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyhedral::json::from_json_str;

    #[test]
    fn cycle_round_trip() {
        let s = r#"{"ambient_dim": 2, "points": [["0","0"]],
            "cells": [{"vertices":[0],"rays":[[1,0]]},{"vertices":[0],"rays":[[0,1]]},{"vertices":[0],"rays":[[-1,-1]]}],
            "weights": {"0": 1, "1": 1, "2": 1}}"#;
        let j: CycleJson = from_json_str(s).unwrap();
        let c = j.to_cycle().unwrap();
        assert!(c.check_balancing().is_balanced());
        let back = CycleJson::from_cycle(&c);
        assert_eq!(back.weights.len(), 3);
        assert_eq!(back.to_cycle().unwrap().weights().len(), 3);
    }
}
