use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::lattice;
use crate::linalg::{self, Vector};
use crate::polyhedral::{PolyhedralComplex, Polyhedron};
use crate::rational::{q, Rational};

/// A weighted pure-dimensional polyhedral complex.
///
/// `weights` is keyed by indices of maximal cells of `complex`; every
/// maximal cell has dimension `dim` and a nonzero weight.
#[derive(Clone, Debug)]
pub struct TropicalCycle {
    complex: PolyhedralComplex,
    dim: usize,
    weights: BTreeMap<usize, i64>,
}

/// A codimension-one cell where the weighted sum of primitive generators
/// leaves the cell's span.
#[derive(Clone, Debug, PartialEq)]
pub struct BalancingFailure {
    pub cell: usize,
    pub defect: Vector,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct BalancingReport {
    pub failures: Vec<BalancingFailure>,
}

impl BalancingReport {
    pub fn is_balanced(&self) -> bool {
        self.failures.is_empty()
    }
}

impl TropicalCycle {
    pub fn empty(ambient_dim: usize, dim: usize) -> Self {
        Self { complex: PolyhedralComplex::empty(ambient_dim), dim, weights: BTreeMap::new() }
    }

    /// Builds a cycle from weighted cells of dimension `dim`. Repeated cells
    /// have their weights added; zero weights are dropped.
    pub fn from_weighted_cells(ambient_dim: usize, dim: usize, cells: Vec<(Polyhedron, i64)>) -> Result<Self> {
        let mut merged: BTreeMap<crate::polyhedral::CellKey, (Polyhedron, i64)> = BTreeMap::new();
        for (p, w) in cells {
            if p.ambient_dim() != ambient_dim {
                return Err(Error::Dimension("cell outside the ambient space".into()));
            }
            if p.dim() != dim {
                return Err(Error::Dimension(format!("cell of dimension {} in a {dim}-cycle", p.dim())));
            }
            merged.entry(p.key()).and_modify(|e| e.1 += w).or_insert((p, w));
        }
        let kept: Vec<(Polyhedron, i64)> = merged.into_values().filter(|(_, w)| *w != 0).collect();
        let complex =
            PolyhedralComplex::from_maximal_cells(ambient_dim, kept.iter().map(|(p, _)| p.clone()).collect())?;
        let mut weights = BTreeMap::new();
        for (p, w) in &kept {
            let i = complex.index_of(p).expect("inserted cell");
            weights.insert(i, *w);
        }
        if complex.maximal_cells().len() != weights.len() {
            return Err(Error::Dimension("a weighted cell is a face of another weighted cell".into()));
        }
        Ok(Self { complex, dim, weights })
    }

    /// Wraps an existing complex; `weights` must cover its maximal cells.
    pub fn new(complex: PolyhedralComplex, dim: usize, weights: BTreeMap<usize, i64>) -> Result<Self> {
        let cells: Vec<(Polyhedron, i64)> = complex
            .maximal_cells()
            .into_iter()
            .map(|i| {
                let w = weights.get(&i).copied().ok_or_else(|| Error::Dimension(format!("no weight for cell {i}")))?;
                Ok((complex.cell(i).clone(), w))
            })
            .collect::<Result<_>>()?;
        Self::from_weighted_cells(complex.ambient_dim(), dim, cells)
    }

    /// The whole of `R^n` with weight one.
    pub fn ambient(n: usize) -> Self {
        let lin: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        let cell = Polyhedron::cone(n, vec![], lin).expect("R^n");
        Self::from_weighted_cells(n, n, vec![(cell, 1)]).expect("R^n")
    }

    pub fn ambient_dim(&self) -> usize {
        self.complex.ambient_dim()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn complex(&self) -> &PolyhedralComplex {
        &self.complex
    }

    pub fn weights(&self) -> &BTreeMap<usize, i64> {
        &self.weights
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weighted_cells(&self) -> impl Iterator<Item = (&Polyhedron, i64)> + '_ {
        self.weights.iter().map(|(&i, &w)| (self.complex.cell(i), w))
    }

    pub fn maximal_polyhedra(&self) -> Vec<Polyhedron> {
        self.weighted_cells().map(|(p, _)| p.clone()).collect()
    }

    pub fn support_contains(&self, x: &[Rational]) -> bool {
        self.weighted_cells().any(|(p, _)| p.contains(x))
    }

    /// Sum of the point weights of a zero-dimensional cycle.
    pub fn degree(&self) -> Result<i64> {
        if self.dim != 0 {
            return Err(Error::Dimension(format!("degree of a {}-cycle", self.dim)));
        }
        Ok(self.weights.values().sum())
    }

    /// Maximal cells adjacent to codimension-one cell `t`, with the
    /// primitive generator of each modulo `t`.
    pub fn adjacent(&self, t: usize) -> Vec<(usize, i64, Vec<i64>)> {
        self.adjacent_among(t, self.complex.cofacets_of(t))
    }

    fn adjacent_among(&self, t: usize, cofacets: Vec<usize>) -> Vec<(usize, i64, Vec<i64>)> {
        let tau = self.complex.cell(t);
        let tau_dirs = tau.direction_space();
        let x_tau = tau.relint_point();
        cofacets
            .into_iter()
            .filter_map(|s| self.weights.get(&s).map(|&w| (s, w)))
            .map(|(s, w)| {
                let sigma = self.complex.cell(s);
                let toward = linalg::sub(&sigma.relint_point(), &x_tau);
                let v = lattice::primitive_generator_mod(&sigma.direction_space(), &tau_dirs, &toward)
                    .expect("facet has codimension one");
                (s, w, v)
            })
            .collect()
    }

    /// Cells of dimension `dim - 1`.
    pub fn codim_one_cells(&self) -> Vec<usize> {
        if self.dim == 0 {
            return Vec::new();
        }
        self.complex.cells_of_dim(self.dim - 1)
    }

    pub fn check_balancing(&self) -> BalancingReport {
        let n = self.ambient_dim();
        let mut failures = Vec::new();
        let cofacets = self.complex.cofacet_lists();
        for t in self.codim_one_cells() {
            let mut sum = linalg::zero(n);
            for (_, w, v) in self.adjacent_among(t, cofacets[t].clone()) {
                sum = linalg::add(&sum, &lattice::to_rational(&v.iter().map(|x| x * w).collect::<Vec<_>>()));
            }
            let dirs = self.complex.cell(t).direction_space();
            if !linalg::in_span(&dirs, &sum) {
                failures.push(BalancingFailure { cell: t, defect: sum });
            }
        }
        BalancingReport { failures }
    }

    /// The weighted local cone at `x`.
    pub fn star(&self, x: &[Rational]) -> Result<TropicalCycle> {
        let cells: Vec<(Polyhedron, i64)> = self
            .weighted_cells()
            .filter(|(p, _)| p.contains(x))
            .map(|(p, w)| Ok((p.tangent_cone_at(x)?, w)))
            .collect::<Result<_>>()?;
        if cells.is_empty() {
            return Err(Error::NotInSupport("star at a point outside the cycle".into()));
        }
        Self::from_weighted_cells(self.ambient_dim(), self.dim, cells)
    }

    /// Number of cells of the support containing vertex `v`, counted among
    /// the maximal cells (valence for curves).
    pub fn valence(&self, x: &[Rational]) -> usize {
        self.weighted_cells().filter(|(p, _)| p.contains(x)).count()
    }

    /// Zero-dimensional cells of the underlying complex.
    pub fn vertices(&self) -> Vec<Vector> {
        self.complex.cells_of_dim(0).into_iter().map(|i| self.complex.cell(i).vertices()[0].clone()).collect()
    }

    pub fn scaled(&self, c: i64) -> Result<TropicalCycle> {
        let cells = self.weighted_cells().map(|(p, w)| (p.clone(), w * c)).collect();
        Self::from_weighted_cells(self.ambient_dim(), self.dim, cells)
    }

    /// Weighted sum of two cycles of the same dimension; cells must already
    /// be compatible (equal or with disjoint interiors).
    pub fn sum(&self, other: &TropicalCycle) -> Result<TropicalCycle> {
        if self.dim != other.dim || self.ambient_dim() != other.ambient_dim() {
            return Err(Error::Dimension("sum of cycles of different dimensions".into()));
        }
        let mut cells: Vec<(Polyhedron, i64)> = self.weighted_cells().map(|(p, w)| (p.clone(), w)).collect();
        cells.extend(other.weighted_cells().map(|(p, w)| (p.clone(), w)));
        Self::from_weighted_cells(self.ambient_dim(), self.dim, cells)
    }

    /// The point weights of a zero-cycle.
    pub fn points(&self) -> Vec<(Vector, i64)> {
        self.weighted_cells().map(|(p, w)| (p.vertices()[0].clone(), w)).collect()
    }
}

/// Weight-one sum of the given rays at the origin (a one-dimensional fan).
pub fn ray_fan(n: usize, rays: &[(Vec<i64>, i64)]) -> Result<TropicalCycle> {
    let cells = rays
        .iter()
        .map(|(r, w)| Ok((Polyhedron::from_raw(vec![vec![q(0); n]], vec![lattice::primitive(r)], vec![])?, *w)))
        .collect::<Result<_>>()?;
    TropicalCycle::from_weighted_cells(n, 1, cells)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qvec;

    #[test]
    fn balanced_line() {
        let line = ray_fan(2, &[(vec![1, 0], 1), (vec![0, 1], 1), (vec![-1, -1], 1)]).unwrap();
        assert!(line.check_balancing().is_balanced());
        let heavy = ray_fan(2, &[(vec![1, 0], 2), (vec![0, 1], 1), (vec![-1, -1], 1)]).unwrap();
        let report = heavy.check_balancing();
        assert_eq!(report.failures.len(), 1);
        assert_eq!(report.failures[0].defect, qvec(&[1, 0]));
    }

    #[test]
    fn degree_of_points() {
        let c = TropicalCycle::from_weighted_cells(
            2,
            0,
            vec![(Polyhedron::point(qvec(&[0, 0])), 2), (Polyhedron::point(qvec(&[1, 0])), -1)],
        )
        .unwrap();
        assert_eq!(c.degree().unwrap(), 1);
        assert!(TropicalCycle::ambient(2).degree().is_err());
    }

    #[test]
    fn star_of_line() {
        let line = ray_fan(2, &[(vec![1, 0], 1), (vec![0, 1], 1), (vec![-1, -1], 1)]).unwrap();
        let s = line.star(&qvec(&[2, 0])).unwrap();
        assert_eq!(s.weights().len(), 1);
        assert_eq!(line.valence(&qvec(&[0, 0])), 3);
        assert!(line.star(&qvec(&[1, 1])).is_err());
    }

    #[test]
    fn zero_weights_vanish() {
        let a = ray_fan(2, &[(vec![1, 0], 1)]).unwrap();
        let b = a.scaled(-1).unwrap();
        assert!(a.sum(&b).unwrap().is_empty());
    }
}
