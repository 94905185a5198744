use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::polyhedral::json::schema_error;

use super::graph::{CurveDivisor, CurvePoint, TropicalCurveGraph};

/// `{"vertices": n, "edges": [[u, v]], "divisor": {"v0": 1, "e2.0": 3}}`.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default)]
    pub divisor: BTreeMap<String, i64>,
}

impl GraphJson {
    pub fn to_graph(&self) -> Result<TropicalCurveGraph> {
        TropicalCurveGraph::new(self.vertices, self.edges.iter().map(|e| (e[0], e[1])).collect())
            .map_err(|e| schema_error("edges", e.to_string()))
    }

    pub fn to_divisor(&self, g: &TropicalCurveGraph) -> Result<CurveDivisor> {
        let mut terms = Vec::new();
        for (k, &c) in &self.divisor {
            let path = format!("divisor[{k:?}]");
            let p: CurvePoint = k.parse().map_err(|e: crate::Error| schema_error(&path, e.to_string()))?;
            g.check_point(&p).map_err(|e| schema_error(&path, e.to_string()))?;
            terms.push((p, c));
        }
        Ok(CurveDivisor::new(terms))
    }

    pub fn from_parts(g: &TropicalCurveGraph, d: &CurveDivisor) -> Self {
        Self {
            vertices: g.vertex_count(),
            edges: g.edges().iter().map(|&(u, v)| [u, v]).collect(),
            divisor: d.iter().map(|(p, c)| (p.to_string(), c)).collect(),
        }
    }
}
