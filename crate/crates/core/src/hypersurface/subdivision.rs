use std::collections::{BTreeMap, BTreeSet};

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice;
use crate::linalg::{self, Vector};
use crate::polyhedral::{normalized_volume, LatticePolytope, Polyhedron};
use crate::rational::Rational;

use super::polynomial::TropicalPolynomial;

/// A maximal cell: the points where the affine function
/// `H(a) = ⟨slope, a⟩ + offset` touches the lifted configuration from above.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubdivisionCell {
    pub points: Vec<usize>,
    pub slope: Vector,
    pub offset: Rational,
}

/// A face of the subdivision, as the set of points it contains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubdivisionFace {
    pub points: Vec<usize>,
    /// Indices into the point list of the vertices of the face polytope.
    pub vertices: Vec<usize>,
    pub dim: usize,
    /// Maximal cells containing the face.
    pub cells: Vec<usize>,
}

/// The regular subdivision induced by the upper hull of `(a_i, c_i)`.
#[derive(Clone, Debug)]
pub struct RegularSubdivision {
    points: Vec<Vec<i64>>,
    heights: Vec<Rational>,
    polytope: LatticePolytope,
    cells: Vec<SubdivisionCell>,
    faces: Vec<SubdivisionFace>,
}

fn lifted(a: &[i64]) -> Vector {
    let mut v = lattice::to_rational(a);
    v.push(Rational::from_integer(1.into()));
    v
}

impl RegularSubdivision {
    pub fn new(f: &TropicalPolynomial) -> Result<Self> {
        let points = f.exponents();
        let heights = f.coefficients();
        let n = f.n();
        let polytope = f.newton_polytope();
        if polytope.dim() != n {
            return Err(Error::Degenerate(format!("Newton polytope has dimension {} < {n}", polytope.dim())));
        }
        let rows: Vec<Vector> = points.iter().map(|a| lifted(a)).collect();
        let value = |h: &Vector, i: usize| linalg::dot(h, &rows[i]);
        let touching = |h: &Vector| -> Vec<usize> { (0..points.len()).filter(|&i| value(h, i) == heights[i]).collect() };

        // initial cell: lower a supporting function until it touches a full-dimensional set
        let top = heights.iter().max().expect("nonempty").clone();
        let mut h: Vector = linalg::zero(n);
        h.push(top);
        let mut s = touching(&h);
        loop {
            let srows: Vec<Vector> = s.iter().map(|&i| rows[i].clone()).collect();
            if linalg::rank(&srows) == n + 1 {
                break;
            }
            let ns = linalg::nullspace(&srows, n + 1);
            let mut l = ns
                .into_iter()
                .find(|l| (0..points.len()).any(|q| !value(l, q).is_zero()))
                .expect("points span the space");
            if !(0..points.len()).any(|q| value(&l, q).is_positive()) {
                l = l.iter().map(|x| -x).collect();
            }
            h = lower(&h, &l, &rows, &heights);
            s = touching(&h);
        }

        let mut cells: Vec<SubdivisionCell> = Vec::new();
        let mut seen: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        let mut queue = vec![(s, h)];
        while let Some((s, h)) = queue.pop() {
            if seen.contains_key(&s) {
                continue;
            }
            seen.insert(s.clone(), cells.len());
            let (slope, offset) = (h[..n].to_vec(), h[n].clone());
            cells.push(SubdivisionCell { points: s.clone(), slope, offset });
            let poly = Polyhedron::new(s.iter().map(|&i| lattice::to_rational(&points[i])).collect(), vec![], vec![])?;
            for (a, b) in &poly.hrep().inequalities {
                // ℓ(x) = b − a·x vanishes on the ridge and is positive beyond it
                let mut l: Vector = a.iter().map(|x| -x).collect();
                l.push(b.clone());
                if !(0..points.len()).any(|q| value(&l, q).is_positive()) {
                    continue;
                }
                let h2 = lower(&h, &l, &rows, &heights);
                let s2 = touching(&h2);
                if !seen.contains_key(&s2) {
                    queue.push((s2, h2));
                }
            }
        }

        let faces = compute_faces(&points, &cells)?;
        Ok(Self { points, heights, polytope, cells, faces })
    }

    pub fn points(&self) -> &[Vec<i64>] {
        &self.points
    }

    pub fn heights(&self) -> &[Rational] {
        &self.heights
    }

    pub fn polytope(&self) -> &LatticePolytope {
        &self.polytope
    }

    pub fn cells(&self) -> &[SubdivisionCell] {
        &self.cells
    }

    pub fn faces(&self) -> &[SubdivisionFace] {
        &self.faces
    }

    pub fn ambient_dim(&self) -> usize {
        self.polytope.ambient_dim()
    }

    /// Vertex set of a cell's polytope.
    pub fn cell_vertices(&self, c: usize) -> Vec<Vec<i64>> {
        let cell = &self.cells[c];
        let full: Vec<usize> = cell.points.clone();
        self.faces
            .iter()
            .find(|f| f.points == full)
            .map(|f| f.vertices.iter().map(|&i| self.points[i].clone()).collect())
            .unwrap_or_default()
    }

    /// Every maximal cell is a unimodular simplex.
    pub fn is_smooth(&self) -> bool {
        let n = self.ambient_dim();
        self.cells.iter().all(|c| {
            c.points.len() == n + 1
                && normalized_volume(&c.points.iter().map(|&i| self.points[i].clone()).collect::<Vec<_>>()) == Ok(1)
        })
    }

    /// Points that are vertices of some cell.
    pub fn used_points(&self) -> Vec<usize> {
        let mut used: BTreeSet<usize> = BTreeSet::new();
        for f in &self.faces {
            if f.dim == 0 {
                used.insert(f.vertices[0]);
            }
        }
        used.into_iter().collect()
    }

    pub fn faces_of_dim(&self, k: usize) -> Vec<usize> {
        (0..self.faces.len()).filter(|&i| self.faces[i].dim == k).collect()
    }
}

/// `H − λ* ℓ` with the largest `λ*` keeping `H ≥ h`.
fn lower(h: &Vector, l: &Vector, rows: &[Vector], heights: &[Rational]) -> Vector {
    let mut best: Option<Rational> = None;
    for (r, ht) in rows.iter().zip(heights) {
        let lv = linalg::dot(l, r);
        if lv.is_positive() {
            let lam = (linalg::dot(h, r) - ht) / lv;
            if best.as_ref().is_none_or(|b| lam < *b) {
                best = Some(lam);
            }
        }
    }
    let lam = best.expect("some point lies beyond the ridge");
    linalg::sub(h, &linalg::scale(l, &lam))
}

fn compute_faces(points: &[Vec<i64>], cells: &[SubdivisionCell]) -> Result<Vec<SubdivisionFace>> {
    let mut faces: Vec<SubdivisionFace> = Vec::new();
    let mut index: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for (c, cell) in cells.iter().enumerate() {
        let pts: Vec<Vector> = cell.points.iter().map(|&i| lattice::to_rational(&points[i])).collect();
        let poly = Polyhedron::new(pts.clone(), vec![], vec![])?;
        for face in poly.all_faces() {
            let members: Vec<usize> =
                cell.points.iter().zip(&pts).filter(|(_, p)| face.contains(p)).map(|(&i, _)| i).collect();
            let vertices: Vec<usize> = cell
                .points
                .iter()
                .zip(&pts)
                .filter(|(_, p)| face.vertices().contains(p))
                .map(|(&i, _)| i)
                .collect();
            match index.get(&members) {
                Some(&k) => faces[k].cells.push(c),
                None => {
                    index.insert(members.clone(), faces.len());
                    faces.push(SubdivisionFace { points: members, vertices, dim: face.dim(), cells: vec![c] });
                }
            }
        }
    }
    Ok(faces)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn quadric(heights: impl Fn(i64, i64) -> Rational) -> TropicalPolynomial {
        let mut terms = Vec::new();
        for i in 0..=2i64 {
            for j in 0..=(2 - i) {
                terms.push((vec![i, j], heights(i, j)));
            }
        }
        TropicalPolynomial::new(2, terms).unwrap()
    }

    #[test]
    fn single_triangle() {
        let f = TropicalPolynomial::new(2, vec![(vec![0, 0], q(0)), (vec![1, 0], q(0)), (vec![0, 1], q(0))]).unwrap();
        let s = RegularSubdivision::new(&f).unwrap();
        assert_eq!(s.cells().len(), 1);
        assert!(s.is_smooth());
        assert_eq!(s.faces().len(), 7);
    }

    #[test]
    fn concave_quadric_is_smooth() {
        let f = quadric(|i, j| q(-(i * i + j * j + i * j)));
        let s = RegularSubdivision::new(&f).unwrap();
        assert_eq!(s.cells().len(), 4);
        assert!(s.is_smooth());
        assert_eq!(s.faces_of_dim(1).len(), 9);
        assert_eq!(s.used_points().len(), 6);
    }

    #[test]
    fn sunken_point_breaks_smoothness() {
        let f = quadric(|i, j| if (i, j) == (1, 0) { q(-100) } else { q(-(i * i + j * j + i * j)) });
        let s = RegularSubdivision::new(&f).unwrap();
        assert!(!s.is_smooth());
        assert_eq!(s.used_points().len(), 5);
    }

    #[test]
    fn flat_heights_give_one_cell() {
        let f = quadric(|_, _| q(0));
        let s = RegularSubdivision::new(&f).unwrap();
        assert_eq!(s.cells().len(), 1);
        assert!(!s.is_smooth());
    }

    #[test]
    fn degenerate_newton_polytope() {
        let f = TropicalPolynomial::new(2, vec![(vec![0, 0], q(0)), (vec![2, 0], q(0))]).unwrap();
        assert!(RegularSubdivision::new(&f).is_err());
    }
}
