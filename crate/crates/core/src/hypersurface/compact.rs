//! The closure of `V(f)` in the compact tropical toric variety of its Newton
//! polytope, handled orbit by orbit.

use crate::cycle::{moderate_position, power_tower, relatively_uniform, DivisorPowerTower, TropicalCycle, Uniformity};
use crate::error::{Error, Result};
use crate::lattice;
use crate::linalg::{self, Vector};
use crate::polyhedral::LatticePolytope;

use super::dual::{cartier_from_subdivision, dual_cell};
use super::polynomial::TropicalPolynomial;
use super::subdivision::RegularSubdivision;

/// A relatively open cell of one torus orbit.
#[derive(Clone, Debug)]
pub struct Stratum {
    pub orbit: usize,
    pub dim: usize,
    /// `#{k ≥ 0 : s ⊂ |D^k|}`, read off the divisor-power tower.
    pub index: usize,
    /// Dimension of the dual subdivision face, for bookkeeping.
    pub face_dim: usize,
    /// Terms of `f` (indices into its term list) spanning the dual face.
    pub cell: Vec<usize>,
    pub point: Vector,
}

/// One torus orbit `O_F ≅ R^{dim F}` with the restriction of `f` to `F`.
#[derive(Clone, Debug)]
pub struct Orbit {
    pub face: LatticePolytope,
    pub dim: usize,
    /// Indices of the terms of `f` lying on the face.
    pub terms: Vec<usize>,
    /// `f` restricted to the terms on `F`, in lattice coordinates of `F`.
    pub polynomial: TropicalPolynomial,
    pub subdivision: Option<RegularSubdivision>,
    pub tower: Option<DivisorPowerTower>,
}

/// The stratified compact instance `(X_P, closure of V(f))`.
#[derive(Clone, Debug)]
pub struct ToricHypersurface {
    polynomial: TropicalPolynomial,
    polytope: LatticePolytope,
    orbits: Vec<Orbit>,
    strata: Vec<Stratum>,
}

/// Per-instance uniformity outcome: the first failing stratum, if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniformityReport {
    pub checked: usize,
    pub failure: Option<(usize, Uniformity)>,
}

impl UniformityReport {
    pub fn holds(&self) -> bool {
        self.failure.is_none()
    }
}

/// Lattice coordinates on the affine span of `points`: base point and basis.
fn face_chart(points: &[Vec<i64>]) -> (Vec<i64>, Vec<Vec<i64>>) {
    let v0 = points[0].clone();
    let n = v0.len();
    let diffs: Vec<Vector> =
        points.iter().map(|p| lattice::to_rational(&p.iter().zip(&v0).map(|(a, b)| a - b).collect::<Vec<_>>())).collect();
    (v0, lattice::saturated_basis(&diffs, n))
}

fn in_chart(v0: &[i64], basis: &[Vec<i64>], p: &[i64]) -> Vec<i64> {
    let cols: Vec<Vector> = basis.iter().map(|b| lattice::to_rational(b)).collect();
    let d: Vec<i64> = p.iter().zip(v0).map(|(a, b)| a - b).collect();
    let y = linalg::solve_combination(&cols, &lattice::to_rational(&d)).expect("point in the face span");
    y.iter().map(|c| crate::rational::to_i64(c).expect("saturated basis")).collect()
}

impl ToricHypersurface {
    pub fn new(f: &TropicalPolynomial) -> Result<Self> {
        let polytope = f.newton_polytope();
        if polytope.dim() != f.n() {
            return Err(Error::Degenerate("Newton polytope is not full-dimensional".into()));
        }
        let mut orbits = Vec::new();
        let mut strata = Vec::new();
        for face in polytope.faces() {
            let poly = face.polyhedron();
            let idx: Vec<usize> =
                (0..f.terms().len()).filter(|&i| poly.contains(&lattice::to_rational(&f.terms()[i].0))).collect();
            let on_face: Vec<Vec<i64>> = idx.iter().map(|&i| f.terms()[i].0.clone()).collect();
            let (v0, basis) = face_chart(&on_face);
            let dim = basis.len();
            let terms = idx.iter().map(|&i| (in_chart(&v0, &basis, &f.terms()[i].0), f.terms()[i].1.clone())).collect();
            let polynomial = TropicalPolynomial::new(dim, terms)?;
            let o = orbits.len();
            if dim == 0 {
                strata.push(Stratum { orbit: o, dim: 0, index: 1, face_dim: 0, cell: idx.clone(), point: vec![] });
                orbits.push(Orbit { face, dim, terms: idx, polynomial, subdivision: None, tower: None });
                continue;
            }
            let sub = RegularSubdivision::new(&polynomial)?;
            let phi = cartier_from_subdivision(&sub)?;
            let tower = power_tower(&phi, &TropicalCycle::ambient(dim), dim)?;
            for (k, g) in sub.faces().iter().enumerate() {
                let cell = dual_cell(&sub, k)?;
                let point = cell.relint_point();
                let index = tower.local_index(&point)?;
                let cell = g.points.iter().map(|&j| idx[j]).collect();
                strata.push(Stratum { orbit: o, dim: dim - g.dim, index, face_dim: g.dim, cell, point });
            }
            orbits.push(Orbit { face, dim, terms: idx, polynomial, subdivision: Some(sub), tower: Some(tower) });
        }
        Ok(Self { polynomial: f.clone(), polytope, orbits, strata })
    }

    pub fn polynomial(&self) -> &TropicalPolynomial {
        &self.polynomial
    }

    pub fn polytope(&self) -> &LatticePolytope {
        &self.polytope
    }

    pub fn orbits(&self) -> &[Orbit] {
        &self.orbits
    }

    pub fn strata(&self) -> &[Stratum] {
        &self.strata
    }

    /// Closure relation: `closure[i]` lists the strata in the closure of
    /// stratum `i`. The closure of the cell dual to `G` in orbit `F` meets
    /// the orbit of `F' ⊆ F` exactly when `G ⊆ F'`, in the cells dual to the
    /// faces of the subdivision containing `G`.
    pub fn closure(&self) -> Vec<Vec<usize>> {
        let subset = |a: &[usize], b: &[usize]| a.iter().all(|x| b.contains(x));
        self.strata
            .iter()
            .map(|s| {
                let f = &self.orbits[s.orbit].terms;
                (0..self.strata.len())
                    .filter(|&j| {
                        let t = &self.strata[j];
                        subset(&self.orbits[t.orbit].terms, f) && subset(&s.cell, &t.cell)
                    })
                    .collect()
            })
            .collect()
    }

    /// The orbit of the open torus.
    pub fn main_orbit(&self) -> &Orbit {
        self.orbits.iter().find(|o| o.dim == self.polytope.ambient_dim()).expect("the polytope is a face")
    }

    fn signed_count(&self, keep: impl Fn(&Stratum) -> bool) -> i64 {
        self.strata.iter().filter(|s| keep(s)).map(|s| if s.dim % 2 == 0 { 1 } else { -1 }).sum()
    }

    /// `χ(X)` by cell count; 1 on every instance since `X` is a polytope.
    pub fn chi_ambient(&self) -> i64 {
        self.signed_count(|_| true)
    }

    /// `χ(|D^k|)`; these supports are compact, so the cell count is valid.
    pub fn chi_power(&self, k: usize) -> i64 {
        self.signed_count(|s| s.index > k)
    }

    /// `χ_c(|D^k| ∖ |D^{k+1}|)`.
    pub fn chi_c_layer(&self, k: usize) -> i64 {
        self.signed_count(|s| s.index == k + 1)
    }

    pub fn max_index(&self) -> usize {
        self.strata.iter().map(|s| s.index).max().unwrap_or(0)
    }

    /// `Σ_k χ(|D^k|)`.
    pub fn chi_complement_path_a(&self) -> i64 {
        (0..self.max_index()).map(|k| self.chi_power(k)).sum()
    }

    /// `Σ_k (k+1) χ_c(|D^k| ∖ |D^{k+1}|)`.
    pub fn chi_complement_path_b(&self) -> i64 {
        (0..self.max_index()).map(|k| (k as i64 + 1) * self.chi_c_layer(k)).sum()
    }

    /// `χ_c(X ∖ D)`.
    pub fn chi_c_complement(&self) -> i64 {
        self.chi_c_layer(0)
    }

    /// Connected components of `X ∖ D`, labelled by the lattice points that
    /// index them. Requires smooth `f`.
    pub fn complement_components(&self) -> Result<Vec<Vec<i64>>> {
        let sub = self.main_orbit().subdivision.as_ref().expect("top orbit");
        if !sub.is_smooth() {
            return Err(Error::NotSmooth("complement components may merge for non-smooth f".into()));
        }
        Ok(sub.used_points().into_iter().map(|i| sub.points()[i].clone()).collect())
    }

    /// Outer normals of the facets of `P` containing the orbit's face; they
    /// identify the orbit across polytopes with the same normal fan.
    pub fn orbit_key(&self, o: usize) -> Vec<Vec<i64>> {
        let face = &self.orbits[o].face;
        let mut key: Vec<Vec<i64>> = self
            .polytope
            .facet_normals()
            .into_iter()
            .filter(|(u, m)| face.vertices().iter().all(|v| u.iter().zip(v).map(|(a, b)| a * b).sum::<i64>() == *m))
            .map(|(u, _)| u)
            .collect();
        key.sort();
        key
    }

    /// Points of `D` on each orbit, as relative-interior sample points of
    /// the strata of `D` there.
    pub fn divisor_strata(&self) -> impl Iterator<Item = &Stratum> + '_ {
        self.strata.iter().filter(|s| s.index >= 2)
    }

    /// Moderate position of `|D|` in `X`, tested orbit by orbit on local
    /// cones at every stratum of `D`.
    pub fn moderate_position(&self) -> Result<bool> {
        let mut pairs = Vec::new();
        for s in self.divisor_strata() {
            let orbit = &self.orbits[s.orbit];
            let d = orbit.tower.as_ref().and_then(|t| t.layer(1)).expect("stratum lies on D");
            let local = d.complex().local_cone(&s.point)?;
            let ambient = TropicalCycle::ambient(orbit.dim).complex().clone();
            pairs.push((local, ambient));
        }
        Ok(moderate_position(&pairs)?.holds)
    }

    /// Relative uniformity of `|D| ⊂ O_F` at every stratum of `D`, orbit by
    /// orbit.
    pub fn uniformity(&self) -> Result<UniformityReport> {
        let mut checked = 0;
        for (i, s) in self.strata.iter().enumerate() {
            if s.index < 2 {
                continue;
            }
            let orbit = &self.orbits[s.orbit];
            let tower = orbit.tower.as_ref().expect("positive-dimensional orbit");
            let d = tower.layer(1).expect("stratum lies on D");
            let star = d.star(&s.point)?;
            let u = relatively_uniform(&star, &TropicalCycle::ambient(orbit.dim))?;
            checked += 1;
            if !u.is_uniform() {
                return Ok(UniformityReport { checked, failure: Some((i, u)) });
            }
        }
        Ok(UniformityReport { checked, failure: None })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn generic_degree(n: usize, d: i64) -> TropicalPolynomial {
        let pts = LatticePolytope::simplex(d, n).lattice_points();
        let terms = pts
            .into_iter()
            .map(|a| {
                let s: i64 = a.iter().sum();
                let sq: i64 = a.iter().map(|x| x * x).sum::<i64>() + s * s;
                let c = -sq * 7 + a.iter().enumerate().map(|(i, x)| x * (i as i64 + 2)).sum::<i64>();
                (a, q(c))
            })
            .collect();
        TropicalPolynomial::new(n, terms).unwrap()
    }

    #[test]
    fn projective_line_with_two_points() {
        let t = ToricHypersurface::new(&generic_degree(1, 2)).unwrap();
        assert_eq!(t.chi_ambient(), 1);
        assert_eq!(t.chi_complement_path_a(), 3);
        assert_eq!(t.chi_complement_path_b(), 3);
        assert_eq!(t.complement_components().unwrap().len(), 3);
        assert_eq!(t.chi_c_complement(), -1);
    }

    #[test]
    fn line_in_the_plane() {
        let f = TropicalPolynomial::new(2, vec![(vec![0, 0], q(0)), (vec![1, 0], q(0)), (vec![0, 1], q(0))]).unwrap();
        let t = ToricHypersurface::new(&f).unwrap();
        assert_eq!(t.chi_ambient(), 1);
        assert_eq!((t.chi_power(0), t.chi_power(1), t.chi_power(2)), (1, 1, 1));
        assert_eq!(t.chi_complement_path_a(), 3);
        assert_eq!(t.chi_c_complement(), 0);
        assert!(t.uniformity().unwrap().holds());
    }

    #[test]
    fn smooth_cubic_curve() {
        let t = ToricHypersurface::new(&generic_degree(2, 3)).unwrap();
        assert_eq!(t.chi_power(1), 0);
        assert_eq!(t.chi_power(2), 9);
        assert_eq!(t.chi_complement_path_a(), 10);
        assert_eq!(t.chi_complement_path_b(), 10);
        assert_eq!(t.chi_c_complement(), 1);
        assert!(t.uniformity().unwrap().holds());
    }

    #[test]
    fn smooth_strata_index_is_face_dim_plus_one() {
        let t = ToricHypersurface::new(&generic_degree(2, 2)).unwrap();
        assert!(t.strata().iter().all(|s| s.index == s.face_dim + 1));
    }

    #[test]
    fn quadric_surface_in_three_space() {
        let (f, _) = super::super::random::smooth_polynomial(&LatticePolytope::simplex(2, 3), 1, 10).unwrap();
        let t = ToricHypersurface::new(&f).unwrap();
        assert_eq!(t.chi_ambient(), 1);
        assert_eq!(t.chi_complement_path_a(), 10);
        assert_eq!(t.chi_c_complement(), 0);
    }

    #[test]
    fn tangency_is_not_uniform() {
        // max(0, 2x, 2y) meets each boundary orbit in a double point
        let f = TropicalPolynomial::new(2, vec![(vec![0, 0], q(0)), (vec![2, 0], q(0)), (vec![0, 2], q(0))]).unwrap();
        let t = ToricHypersurface::new(&f).unwrap();
        assert!(!t.uniformity().unwrap().holds());
        assert!(t.complement_components().is_err());
    }
}
