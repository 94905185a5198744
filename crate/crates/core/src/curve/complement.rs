use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use crate::util::UnionFind;

use super::graph::{CurveDivisor, CurvePoint, TropicalCurveGraph};

/// `deg D + χ(C)`.
pub fn rr_number_curve(c: &TropicalCurveGraph, d: &CurveDivisor) -> i64 {
    d.degree() + c.euler_char()
}

fn check_regular(c: &TropicalCurveGraph, points: &[CurvePoint]) -> Result<BTreeSet<CurvePoint>> {
    let set: BTreeSet<CurvePoint> = points.iter().copied().collect();
    if set.len() != points.len() {
        return Err(Error::Degenerate("repeated point".into()));
    }
    for p in &set {
        c.check_point(p)?;
        if let CurvePoint::Vertex(v) = *p {
            if c.valence(v) != 2 {
                return Err(Error::Hypothesis(format!("vertex {v} has valence {}, not 2", c.valence(v))));
            }
        }
    }
    Ok(set)
}

/// Ranks of `H^•` and `H^•_c` of `C ∖ D`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplementRanks {
    pub h0: i64,
    pub h1: i64,
    pub h0_c: i64,
    pub h1_c: i64,
}

impl ComplementRanks {
    pub fn chi(&self) -> i64 {
        self.h0 - self.h1
    }

    pub fn chi_c(&self) -> i64 {
        self.h0_c - self.h1_c
    }
}

/// Cuts the curve open at the points. The complement retracts onto the
/// graph with the cut vertices deleted, plus one open interval for every
/// edge running between two cut points.
pub fn complement_cohomology_ranks(c: &TropicalCurveGraph, points: &[CurvePoint]) -> Result<ComplementRanks> {
    let cut = check_regular(c, points)?;
    let model = c.subdivide(cut.iter())?;
    let g = &model.graph;
    let removed: BTreeSet<usize> = cut.iter().map(|p| model.vertex_of(p)).collect();
    let n = g.vertex_count();
    let mut uf = UnionFind::new(n);
    let mut kept_edges = 0i64;
    let mut open_intervals = 0i64;
    let mut touches = vec![false; n];
    for &(u, v) in g.edges() {
        match (removed.contains(&u), removed.contains(&v)) {
            (false, false) => {
                uf.union(u, v);
                kept_edges += 1;
            }
            (true, true) => open_intervals += 1,
            (true, false) => touches[v] = true,
            (false, true) => touches[u] = true,
        }
    }
    let kept: Vec<usize> = (0..n).filter(|v| !removed.contains(v)).collect();
    let roots: BTreeSet<usize> = kept.iter().map(|&v| uf.find(v)).collect();
    let noncompact: BTreeSet<usize> = kept.iter().filter(|&&v| touches[v]).map(|&v| uf.find(v)).collect();
    let h0 = roots.len() as i64 + open_intervals;
    let h1 = kept_edges - kept.len() as i64 + roots.len() as i64;
    // χ_c is additive: χ_c(C ∖ D) = χ(C) − #D
    let chi_c = c.euler_char() - cut.len() as i64;
    let h0_c = (roots.len() - noncompact.len()) as i64;
    Ok(ComplementRanks { h0, h1, h0_c, h1_c: h0_c - chi_c })
}

/// `χ(C ∖ D)` by both routes; they must agree.
pub fn chi_complement_curve(c: &TropicalCurveGraph, points: &[CurvePoint]) -> Result<i64> {
    let formula = c.euler_char() + check_regular(c, points)?.len() as i64;
    let surgery = complement_cohomology_ranks(c, points)?.chi();
    if formula != surgery {
        return Err(Error::Degenerate(format!("χ(C)+#D = {formula} but surgery gives {surgery}")));
    }
    Ok(formula)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn on_edge(edge: usize, k: usize) -> Vec<CurvePoint> {
        (0..k).map(|slot| CurvePoint::Edge { edge, slot }).collect()
    }

    #[test]
    fn rr_numbers() {
        let circle = TropicalCurveGraph::circle();
        assert_eq!(rr_number_curve(&circle, &CurveDivisor::of_points(&on_edge(0, 2))), 2);
        assert_eq!(rr_number_curve(&circle, &CurveDivisor::default()), 0);
        let theta = TropicalCurveGraph::theta();
        assert_eq!(rr_number_curve(&theta, &theta.canonical_divisor()), 1);
    }

    #[test]
    fn complements() {
        let circle = TropicalCurveGraph::circle();
        assert_eq!(chi_complement_curve(&circle, &on_edge(0, 2)).unwrap(), 2);
        assert_eq!(chi_complement_curve(&TropicalCurveGraph::theta(), &on_edge(1, 1)).unwrap(), 0);
        assert_eq!(chi_complement_curve(&TropicalCurveGraph::theta(), &[]).unwrap(), -1);
        assert!(chi_complement_curve(&TropicalCurveGraph::theta(), &[CurvePoint::Vertex(0)]).is_err());
        let r = complement_cohomology_ranks(&circle, &on_edge(0, 1)).unwrap();
        assert_eq!((r.h0, r.h1, r.h0_c, r.h1_c), (1, 0, 0, 1));
    }

    #[test]
    fn genus_two_with_points_on_one_edge() {
        let theta = TropicalCurveGraph::theta();
        for k in 1..=5 {
            let r = complement_cohomology_ranks(&theta, &on_edge(2, k)).unwrap();
            assert_eq!((r.h0, r.h1), (k as i64, 1));
            assert_eq!(r.h0_c, 0);
            assert_eq!(r.chi_c(), theta.euler_char() - k as i64);
        }
    }

    #[test]
    fn empty_set_gives_the_curve() {
        let r = complement_cohomology_ranks(&TropicalCurveGraph::theta(), &[]).unwrap();
        assert_eq!((r.h0, r.h1, r.h0_c, r.h1_c), (1, 2, 1, 2));
    }
}
