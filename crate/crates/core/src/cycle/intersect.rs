use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::polyhedral::Polyhedron;

use super::cartier::CartierFunction;
use super::cycle::TropicalCycle;

/// Refines `a` so that every maximal cell lies in one linearity region of
/// `phi`. Returns the refined cycle and, per maximal cell index, the index of
/// the region piece.
pub fn refine(phi: &CartierFunction, a: &TropicalCycle) -> Result<(TropicalCycle, HashMap<usize, usize>)> {
    if phi.ambient_dim() != a.ambient_dim() {
        return Err(Error::DomainMismatch("function and cycle live in different spaces".into()));
    }
    let d = a.dim();
    let mut pieces: Vec<(Polyhedron, i64, usize)> = Vec::new();
    for (sigma, w) in a.weighted_cells() {
        if let Some(k) = phi.region_containing(sigma) {
            pieces.push((sigma.clone(), w, k));
            continue;
        }
        let before = pieces.len();
        for k in 0..phi.num_pieces() {
            let (region, _) = phi.piece(k);
            if region.dim() == d && sigma.contains_polyhedron(region) {
                pieces.push((region.clone(), w, k));
                continue;
            }
            if let Some(p) = sigma.intersection(region) {
                if p.dim() == d {
                    pieces.push((p, w, k));
                }
            }
        }
        if pieces.len() == before {
            return Err(Error::DomainMismatch("cycle leaves the function's domain".into()));
        }
    }
    let refined =
        TropicalCycle::from_weighted_cells(a.ambient_dim(), d, pieces.iter().map(|(p, w, _)| (p.clone(), *w)).collect())?;
    let mut region_of = HashMap::new();
    for (p, _, k) in &pieces {
        if let Some(i) = refined.complex().index_of(p) {
            region_of.insert(i, *k);
        }
    }
    Ok((refined, region_of))
}

/// The corner locus `phi · a` with the standard weight rule
/// `ω(τ) = Σ ω_σ φ_σ(v_σ/τ) − φ_τ(Σ ω_σ v_σ/τ)`.
pub fn divisor_intersect(phi: &CartierFunction, a: &TropicalCycle) -> Result<TropicalCycle> {
    let n = a.ambient_dim();
    if a.dim() == 0 {
        return Err(Error::Dimension("cannot intersect a divisor with a 0-cycle".into()));
    }
    if a.is_empty() {
        return Ok(TropicalCycle::empty(n, a.dim() - 1));
    }
    let (r, region_of) = refine(phi, a)?;
    let mut out = Vec::new();
    for t in r.codim_one_cells() {
        let adj = r.adjacent(t);
        let Some(&(s0, _, _)) = adj.first() else { continue };
        let m0 = &phi.piece(region_of[&s0]).1.linear;
        let mut w: i64 = 0;
        for (s, ws, v) in &adj {
            let m = &phi.piece(region_of[s]).1.linear;
            let diff: i64 = m.iter().zip(m0).zip(v).map(|((a, b), c)| (a - b) * c).sum();
            w += ws * diff;
        }
        if w != 0 {
            out.push((r.complex().cell(t).clone(), w));
        }
    }
    TropicalCycle::from_weighted_cells(n, a.dim() - 1, out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycle::cartier::max_of_coordinates;
    use crate::cycle::cycle::ray_fan;
    use crate::rational::q;

    #[test]
    fn plane_gives_line() {
        let phi = max_of_coordinates(2);
        let line = divisor_intersect(&phi, &TropicalCycle::ambient(2)).unwrap();
        assert_eq!(line.dim(), 1);
        assert_eq!(line.weights().len(), 3);
        assert!(line.weights().values().all(|&w| w == 1));
        assert!(line.check_balancing().is_balanced());
        let expected = ray_fan(2, &[(vec![1, 0], 1), (vec![0, 1], 1), (vec![-1, -1], 1)]).unwrap();
        assert_eq!(line.complex().len(), expected.complex().len());
        let pt = divisor_intersect(&phi, &line).unwrap();
        assert_eq!(pt.degree().unwrap(), 1);
    }

    #[test]
    fn affine_gives_nothing() {
        let phi = CartierFunction::affine(vec![2, -1], q(5));
        assert!(divisor_intersect(&phi, &TropicalCycle::ambient(2)).unwrap().is_empty());
    }

    #[test]
    fn convex_kink_on_the_line_has_weight_one() {
        let phi = max_of_coordinates(1);
        let p = divisor_intersect(&phi, &TropicalCycle::ambient(1)).unwrap();
        assert_eq!(p.degree().unwrap(), 1);
    }
}
