use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg;
use crate::polyhedral::{PolyhedralComplex, Polyhedron};
use crate::rational::Rational;

/// An integer-affine function `x ↦ ⟨linear, x⟩ + constant`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffinePiece {
    pub linear: Vec<i64>,
    pub constant: Rational,
}

impl AffinePiece {
    pub fn eval(&self, x: &[Rational]) -> Rational {
        linalg::dot_int(&self.linear, x) + &self.constant
    }
}

/// A continuous piecewise integer-affine function, affine on each maximal
/// cell of its domain complex.
#[derive(Clone, Debug)]
pub struct CartierFunction {
    domain: PolyhedralComplex,
    /// `(maximal cell index, piece)`
    pieces: Vec<(usize, AffinePiece)>,
}

impl CartierFunction {
    /// Pieces are given per cell; continuity across shared faces is checked.
    pub fn new(ambient_dim: usize, pieces: Vec<(Polyhedron, AffinePiece)>) -> Result<Self> {
        if pieces.iter().any(|(_, a)| a.linear.len() != ambient_dim) {
            return Err(Error::Dimension("linear part of the wrong length".into()));
        }
        let domain = PolyhedralComplex::from_maximal_cells(ambient_dim, pieces.iter().map(|(p, _)| p.clone()).collect())?;
        let mut indexed = Vec::new();
        for (p, a) in pieces {
            let i = domain.index_of(&p).expect("inserted region");
            if indexed.iter().any(|(j, _)| *j == i) {
                return Err(Error::Degenerate("region listed twice".into()));
            }
            indexed.push((i, a));
        }
        let f = Self { domain, pieces: indexed };
        f.check_continuity()?;
        Ok(f)
    }

    /// A single affine function on all of `R^n`.
    pub fn affine(linear: Vec<i64>, constant: Rational) -> Self {
        let n = linear.len();
        let lin: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        let cell = Polyhedron::cone(n, vec![], lin).expect("R^n");
        Self::new(n, vec![(cell, AffinePiece { linear, constant })]).expect("affine function")
    }

    pub fn ambient_dim(&self) -> usize {
        self.domain.ambient_dim()
    }

    pub fn domain(&self) -> &PolyhedralComplex {
        &self.domain
    }

    pub fn pieces(&self) -> impl Iterator<Item = (&Polyhedron, &AffinePiece)> + '_ {
        self.pieces.iter().map(|(i, a)| (self.domain.cell(*i), a))
    }

    fn check_continuity(&self) -> Result<()> {
        let n = self.domain.len();
        let mut up: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(f, c) in self.domain.face_relation() {
            up[f].push(c);
        }
        let piece_of: std::collections::HashMap<usize, &AffinePiece> = self.pieces.iter().map(|(i, a)| (*i, a)).collect();
        for c in 0..n {
            let cell = self.domain.cell(c);
            let mut seen = vec![false; n];
            let mut stack = vec![c];
            let mut here: Vec<&AffinePiece> = Vec::new();
            while let Some(x) = stack.pop() {
                if std::mem::replace(&mut seen[x], true) {
                    continue;
                }
                if let Some(a) = piece_of.get(&x) {
                    here.push(a);
                }
                stack.extend(up[x].iter().copied());
            }
            for pair in here.windows(2) {
                let (a, b) = (pair[0], pair[1]);
                let agree_pts = cell.vertices().iter().all(|v| a.eval(v) == b.eval(v));
                let agree_dirs = cell.rays().iter().chain(cell.lineality()).all(|r| {
                    a.linear.iter().zip(&b.linear).zip(r).map(|((x, y), z)| (x - y) * z).sum::<i64>() == 0
                });
                if !(agree_pts && agree_dirs) {
                    return Err(Error::Degenerate("affine pieces disagree on a shared face".into()));
                }
            }
        }
        Ok(())
    }

    /// Index into `pieces` of a region containing the polyhedron.
    pub fn region_containing(&self, p: &Polyhedron) -> Option<usize> {
        let x = p.relint_point();
        self.pieces
            .iter()
            .position(|(i, _)| {
                let r = self.domain.cell(*i);
                r.contains(&x) && r.contains_polyhedron(p)
            })
    }

    pub fn piece(&self, k: usize) -> (&Polyhedron, &AffinePiece) {
        let (i, a) = &self.pieces[k];
        (self.domain.cell(*i), a)
    }

    pub fn num_pieces(&self) -> usize {
        self.pieces.len()
    }

    pub fn eval(&self, x: &[Rational]) -> Result<Rational> {
        self.pieces
            .iter()
            .find(|(i, _)| self.domain.cell(*i).contains(x))
            .map(|(_, a)| a.eval(x))
            .ok_or_else(|| Error::DomainMismatch("point outside the function's domain".into()))
    }

    /// Adds a global affine function.
    pub fn shifted(&self, linear: &[i64], constant: &Rational) -> Self {
        let pieces = self
            .pieces
            .iter()
            .map(|(i, a)| {
                (
                    *i,
                    AffinePiece {
                        linear: a.linear.iter().zip(linear).map(|(x, y)| x + y).collect(),
                        constant: &a.constant + constant,
                    },
                )
            })
            .collect();
        Self { domain: self.domain.clone(), pieces }
    }

    /// Does the domain cover the point?
    pub fn defined_at(&self, x: &[Rational]) -> bool {
        self.pieces.iter().any(|(i, _)| self.domain.cell(*i).contains(x))
    }

    pub fn is_globally_affine(&self) -> bool {
        self.pieces.windows(2).all(|w| w[0].1.linear == w[1].1.linear && w[0].1.constant == w[1].1.constant)
    }
}

/// `max(0, x_1, …, x_n)` with its n+1 linearity regions.
pub fn max_of_coordinates(n: usize) -> CartierFunction {
    // region where x_i is the maximum (i = n means the constant 0)
    let mut pieces = Vec::new();
    for i in 0..=n {
        let mut rays: Vec<Vec<i64>> = Vec::new();
        for j in 0..n {
            if j != i {
                let mut r = vec![0; n];
                r[j] = -1;
                rays.push(r);
            }
        }
        if i < n {
            rays.push(vec![1; n]);
        }
        let mut linear = vec![0; n];
        if i < n {
            linear[i] = 1;
        }
        let cell = Polyhedron::cone(n, rays, vec![]).expect("region cone");
        pieces.push((cell, AffinePiece { linear, constant: Rational::zero() }));
    }
    CartierFunction::new(n, pieces).expect("max of coordinates is continuous")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qvec};

    #[test]
    fn max_function_values() {
        let f = max_of_coordinates(2);
        assert_eq!(f.num_pieces(), 3);
        assert_eq!(f.eval(&qvec(&[3, -1])).unwrap(), q(3));
        assert_eq!(f.eval(&qvec(&[-3, -1])).unwrap(), q(0));
        assert_eq!(f.eval(&qvec(&[1, 5])).unwrap(), q(5));
    }

    #[test]
    fn discontinuity_rejected() {
        let left = Polyhedron::cone(1, vec![vec![-1]], vec![]).unwrap();
        let right = Polyhedron::cone(1, vec![vec![1]], vec![]).unwrap();
        let bad = CartierFunction::new(
            1,
            vec![
                (left, AffinePiece { linear: vec![0], constant: q(0) }),
                (right, AffinePiece { linear: vec![1], constant: q(1) }),
            ],
        );
        assert!(bad.is_err());
    }
}
