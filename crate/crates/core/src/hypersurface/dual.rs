use crate::cycle::{AffinePiece, CartierFunction, TropicalCycle};
use crate::error::Result;
use crate::lattice;
use crate::linalg::Vector;
use crate::polyhedral::{PolyhedralComplex, Polyhedron};

use super::polynomial::TropicalPolynomial;
use super::subdivision::RegularSubdivision;

/// The cell of `R^n` where exactly the terms of `face` attain the maximum,
/// closed up.
pub fn dual_cell(sub: &RegularSubdivision, face: usize) -> Result<Polyhedron> {
    let g = &sub.faces()[face];
    let vertices: Vec<Vector> =
        g.cells.iter().map(|&c| sub.cells()[c].slope.iter().map(|s| -s).collect()).collect();
    let members: Vec<Vector> = g.points.iter().map(|&i| lattice::to_rational(&sub.points()[i])).collect();
    let rays: Vec<Vec<i64>> = sub
        .polytope()
        .facet_normals()
        .into_iter()
        .filter(|(u, m)| members.iter().all(|p| crate::linalg::dot_int(u, p) == crate::rational::q(*m)))
        .map(|(u, _)| u)
        .collect();
    // the vertices and normals listed are extreme by construction
    Ok(Polyhedron::new(vertices, rays, vec![])?.assume_canonical())
}

/// Linearity regions of `f`, one per subdivision vertex.
pub fn regions(sub: &RegularSubdivision) -> Result<Vec<(usize, Polyhedron)>> {
    sub.faces_of_dim(0).into_iter().map(|k| Ok((sub.faces()[k].vertices[0], dual_cell(sub, k)?))).collect()
}

/// The complex of all dual cells; its cells are in bijection with the faces
/// of the subdivision (listed in the same order).
pub fn region_complex(sub: &RegularSubdivision) -> Result<Vec<Polyhedron>> {
    (0..sub.faces().len()).map(|k| dual_cell(sub, k)).collect()
}

/// `f` as a Cartier function on `R^n`.
pub fn cartier_from_polynomial(f: &TropicalPolynomial) -> Result<CartierFunction> {
    let sub = RegularSubdivision::new(f)?;
    cartier_from_subdivision(&sub)
}

pub fn cartier_from_subdivision(sub: &RegularSubdivision) -> Result<CartierFunction> {
    let pieces = regions(sub)?
        .into_iter()
        .map(|(i, p)| (p, AffinePiece { linear: sub.points()[i].clone(), constant: sub.heights()[i].clone() }))
        .collect();
    CartierFunction::new(sub.ambient_dim(), pieces)
}

/// `V(f)`: cells dual to subdivision edges, weighted by lattice length.
pub fn tropical_hypersurface(f: &TropicalPolynomial) -> Result<TropicalCycle> {
    hypersurface_of(&RegularSubdivision::new(f)?)
}

pub fn hypersurface_of(sub: &RegularSubdivision) -> Result<TropicalCycle> {
    let n = sub.ambient_dim();
    let mut cells = Vec::new();
    for k in sub.faces_of_dim(1) {
        let v = &sub.faces()[k].vertices;
        let d: Vec<i64> = sub.points()[v[0]].iter().zip(&sub.points()[v[1]]).map(|(a, b)| b - a).collect();
        cells.push((dual_cell(sub, k)?, lattice::content(&d)));
    }
    TropicalCycle::from_weighted_cells(n, n - 1, cells)
}

/// The polyhedral complex of all dual cells.
pub fn dual_complex(sub: &RegularSubdivision) -> Result<PolyhedralComplex> {
    let n = sub.ambient_dim();
    let top: Vec<Polyhedron> = regions(sub)?.into_iter().map(|(_, p)| p).collect();
    PolyhedralComplex::from_maximal_cells(n, top)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycle::divisor_intersect;
    use crate::rational::q;

    fn poly(n: usize, terms: &[(&[i64], i64)]) -> TropicalPolynomial {
        TropicalPolynomial::new(n, terms.iter().map(|(a, c)| (a.to_vec(), q(*c))).collect()).unwrap()
    }

    fn smooth_quadric() -> TropicalPolynomial {
        let mut terms = Vec::new();
        for i in 0..=2i64 {
            for j in 0..=(2 - i) {
                terms.push((vec![i, j], q(-(i * i + j * j + i * j))));
            }
        }
        TropicalPolynomial::new(2, terms).unwrap()
    }

    #[test]
    fn tropical_line() {
        let f = poly(2, &[(&[0, 0], 0), (&[1, 0], 0), (&[0, 1], 0)]);
        let v = tropical_hypersurface(&f).unwrap();
        assert_eq!(v.weighted_cells().count(), 3);
        assert!(v.weighted_cells().all(|(p, w)| w == 1 && p.rays().len() == 1));
        assert!(v.check_balancing().is_balanced());
        let mut rays: Vec<Vec<i64>> = v.weighted_cells().map(|(p, _)| p.rays()[0].clone()).collect();
        rays.sort();
        assert_eq!(rays, vec![vec![-1, 0], vec![0, -1], vec![1, 1]]);
    }

    #[test]
    fn doubled_edge() {
        let f = poly(1, &[(&[0], 0), (&[2], 0)]);
        let v = tropical_hypersurface(&f).unwrap();
        assert_eq!(v.points(), vec![(vec![q(0)], 2)]);
    }

    #[test]
    fn smooth_quadric_shape() {
        let f = smooth_quadric();
        let v = tropical_hypersurface(&f).unwrap();
        assert!(v.check_balancing().is_balanced());
        let bounded = v.weighted_cells().filter(|(p, _)| p.is_bounded()).count();
        let rays = v.weighted_cells().filter(|(p, _)| !p.is_bounded()).count();
        assert_eq!((v.vertices().len(), bounded, rays), (4, 3, 6));
        assert!(v.weighted_cells().all(|(_, w)| w == 1));
    }

    #[test]
    fn corner_locus_matches_dual() {
        let f = smooth_quadric();
        let phi = cartier_from_polynomial(&f).unwrap();
        let engine = divisor_intersect(&phi, &TropicalCycle::ambient(2)).unwrap();
        let dual = tropical_hypersurface(&f).unwrap();
        let mut a: Vec<_> = engine.weighted_cells().map(|(p, w)| (p.key(), w)).collect();
        let mut b: Vec<_> = dual.weighted_cells().map(|(p, w)| (p.key(), w)).collect();
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }

    #[test]
    fn regions_evaluate_to_their_term() {
        let f = smooth_quadric();
        let sub = RegularSubdivision::new(&f).unwrap();
        for (i, p) in regions(&sub).unwrap() {
            let x = p.relint_point();
            let (a, c) = &f.terms()[i];
            assert_eq!(f.eval(&x), crate::linalg::dot_int(a, &x) + c);
        }
    }
}
