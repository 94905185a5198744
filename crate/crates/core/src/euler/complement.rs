use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::cycle::divisor_intersect;
use crate::error::{Error, Result};
use crate::hypersurface::dual::cartier_from_subdivision;
use crate::hypersurface::ToricHypersurface;

use super::stratification::{ConstructibleFunction, Stratification};

/// The orbit strata of a compact toric instance.
pub fn toric_stratification(t: &ToricHypersurface) -> Result<Stratification> {
    Stratification::new(t.strata().iter().map(|s| s.dim).collect(), t.closure(), true)
}

/// `x ↦ Σ_k 1_{|D^k|}(x)` on the orbit strata.
pub fn local_index_function(t: &ToricHypersurface) -> Result<ConstructibleFunction> {
    ConstructibleFunction::new(toric_stratification(t)?, t.strata().iter().map(|s| s.index as i64).collect())
}

fn where_index(t: &ToricHypersurface, keep: impl Fn(usize) -> bool) -> BTreeSet<usize> {
    (0..t.strata().len()).filter(|&i| keep(t.strata()[i].index)).collect()
}

/// Both sides of the Euler characteristic formula for `X ∖ D`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChiComplement {
    /// `Σ_k χ(|D^k|)`.
    pub path_a: i64,
    /// `Σ_k (k+1) χ_c(|D^k| ∖ |D^{k+1}|)`.
    pub path_b: i64,
    /// Euler integral of the local index.
    pub integral: i64,
    pub agrees: bool,
    pub relatively_uniform: bool,
    pub hypothesis_flags: Vec<String>,
}

pub fn chi_complement(t: &ToricHypersurface) -> Result<ChiComplement> {
    let strata = toric_stratification(t)?;
    let top = t.max_index();
    let mut path_a = 0;
    let mut path_b = 0;
    for k in 0..top {
        path_a += strata.chi(&where_index(t, |i| i > k))?;
        path_b += (k as i64 + 1) * strata.chi_c(&where_index(t, |i| i == k + 1))?;
    }
    let integral = local_index_function(t)?.euler_integral();
    let uniformity = t.uniformity()?;
    let mut hypothesis_flags = Vec::new();
    if let Some((s, why)) = &uniformity.failure {
        hypothesis_flags.push(format!("not relatively uniform at stratum {s}: {why:?}"));
    }
    Ok(ChiComplement {
        path_a,
        path_b,
        integral,
        agrees: path_a == path_b && path_b == integral,
        relatively_uniform: uniformity.holds(),
        hypothesis_flags,
    })
}

/// `χ_c(X ∖ D)`.
pub fn chi_c_complement(t: &ToricHypersurface) -> Result<i64> {
    toric_stratification(t)?.chi_c(&where_index(t, |i| i == 1))
}

/// `χ(|D|)` of the compact divisor.
pub fn chi_divisor(t: &ToricHypersurface) -> Result<i64> {
    toric_stratification(t)?.chi(&where_index(t, |i| i >= 2))
}

/// `χ(S) + χ(C) + χ(|C²|)` for a curve in moderate position on a surface.
pub fn chi_surface_complement(t: &ToricHypersurface) -> Result<i64> {
    if t.polytope().ambient_dim() != 2 {
        return Err(Error::Dimension("surface instances only".into()));
    }
    if !t.moderate_position()? {
        return Err(Error::Hypothesis("curve is not in moderate position".into()));
    }
    let strata = toric_stratification(t)?;
    Ok(strata.chi(&strata.all())? + strata.chi(&where_index(t, |i| i >= 2))? + strata.chi(&where_index(t, |i| i >= 3))?)
}

/// `χ(X ∖ D') − χ(D ∖ (D' ∩ D))` with its ingredients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelativePair {
    pub chi_complement: i64,
    pub chi_divisor: i64,
    /// Points of `|D'·D|`.
    pub meeting_points: i64,
    /// Degree of the 0-cycle `D'·D` from the intersection engine.
    pub meeting_degree: i64,
    pub value: i64,
    pub moderate: bool,
}

/// Divisors are given as compact instances over polytopes with the same
/// normal fan; `None` stands for the empty divisor.
pub fn chi_relative_pair(d: Option<&ToricHypersurface>, d_prime: Option<&ToricHypersurface>) -> Result<RelativePair> {
    let chi_complement = match d_prime {
        Some(t) => chi_complement(t)?.path_a,
        None => 1,
    };
    let Some(d) = d else {
        return Ok(RelativePair {
            chi_complement,
            chi_divisor: 0,
            meeting_points: 0,
            meeting_degree: 0,
            value: chi_complement,
            moderate: true,
        });
    };
    let chi_d = chi_divisor(d)?;
    let Some(dp) = d_prime else {
        return Ok(RelativePair {
            chi_complement,
            chi_divisor: chi_d,
            meeting_points: 0,
            meeting_degree: 0,
            value: chi_complement - chi_d,
            moderate: true,
        });
    };
    if d.polytope().ambient_dim() != 2 || dp.polytope().ambient_dim() != 2 {
        return Err(Error::Dimension("pairs of curves on a surface".into()));
    }
    let normals = |t: &ToricHypersurface| {
        let mut v: Vec<Vec<i64>> = t.polytope().facet_normals().into_iter().map(|(u, _)| u).collect();
        v.sort();
        v
    };
    if normals(d) != normals(dp) {
        return Err(Error::DomainMismatch("the divisors live on different toric surfaces".into()));
    }
    let curve = d.main_orbit().tower.as_ref().and_then(|t| t.layer(1)).cloned();
    let other = dp.main_orbit().tower.as_ref().and_then(|t| t.layer(1)).cloned();
    let (Some(curve), Some(other)) = (curve, other) else {
        return Err(Error::Degenerate("an empty curve".into()));
    };
    let phi = cartier_from_subdivision(dp.main_orbit().subdivision.as_ref().expect("top orbit"))?;
    let meet = divisor_intersect(&phi, &curve)?;
    let points = meet.points();
    let meeting_degree = points.iter().map(|(_, w)| w).sum();
    // transverse in the torus: every meeting point is interior to an edge of both curves
    let interior = |c: &crate::cycle::TropicalCycle, x: &[crate::Rational]| {
        c.weighted_cells().filter(|(p, _)| p.contains(x)).count() == 1
            && c.weighted_cells().any(|(p, _)| p.contains_relint(x))
    };
    let mut moderate = points.iter().all(|(x, w)| *w == 1 && interior(&curve, x) && interior(&other, x));
    // disjoint on the boundary orbits
    for (o, orbit) in d.orbits().iter().enumerate() {
        if orbit.dim == 0 || orbit.dim == 2 {
            continue;
        }
        let key = d.orbit_key(o);
        let Some(o2) = (0..dp.orbits().len()).find(|&j| dp.orbit_key(j) == key) else { continue };
        let here: Vec<_> = d.divisor_strata().filter(|s| s.orbit == o).map(|s| s.point.clone()).collect();
        if dp.divisor_strata().any(|s| s.orbit == o2 && here.contains(&s.point)) {
            moderate = false;
        }
    }
    let meeting_points = points.len() as i64;
    Ok(RelativePair {
        chi_complement,
        chi_divisor: chi_d,
        meeting_points,
        meeting_degree,
        value: chi_complement - (chi_d + meeting_points),
        moderate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypersurface::{smooth_polynomial, TropicalPolynomial};
    use crate::polyhedral::LatticePolytope;
    use crate::rational::q;

    fn instance(d: i64, n: usize, seed: u64) -> ToricHypersurface {
        let (f, _) = smooth_polynomial(&LatticePolytope::simplex(d, n), seed, 20).unwrap();
        ToricHypersurface::new(&f).unwrap()
    }

    #[test]
    fn point_on_a_line() {
        let c = chi_complement(&instance(1, 1, 0)).unwrap();
        assert_eq!((c.path_a, c.path_b, c.integral), (2, 2, 2));
        assert!(c.agrees && c.relatively_uniform);
    }

    #[test]
    fn line_and_conic() {
        let line = instance(1, 2, 0);
        assert_eq!(chi_complement(&line).unwrap().path_a, 3);
        assert_eq!(chi_surface_complement(&line).unwrap(), 3);
        assert_eq!(local_index_function(&line).unwrap().euler_integral(), 3);
        let conic = instance(2, 2, 0);
        assert_eq!(chi_divisor(&conic).unwrap(), 1);
        assert_eq!(chi_surface_complement(&conic).unwrap(), 6);
        assert_eq!(chi_c_complement(&instance(3, 2, 0)).unwrap(), 1);
    }

    #[test]
    fn relative_pairs() {
        let line = instance(1, 2, 4);
        let conic = instance(2, 2, 9);
        let r = chi_relative_pair(Some(&line), Some(&conic)).unwrap();
        assert_eq!(r.meeting_degree, 2);
        if r.moderate {
            assert_eq!(r.value, 3);
        }
        assert_eq!(chi_relative_pair(None, Some(&conic)).unwrap().value, 6);
        assert_eq!(chi_relative_pair(Some(&line), None).unwrap().value, 0);
    }

    #[test]
    fn non_uniform_instances_are_flagged() {
        let f = TropicalPolynomial::new(2, vec![(vec![0, 0], q(0)), (vec![2, 0], q(0)), (vec![0, 2], q(0))]).unwrap();
        let c = chi_complement(&ToricHypersurface::new(&f).unwrap()).unwrap();
        assert!(!c.relatively_uniform);
        assert!(!c.hypothesis_flags.is_empty());
    }
}
