use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::polyhedral::PolyhedralComplex;

/// A finite partition into relatively open cells, with the closure relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stratification {
    dims: Vec<usize>,
    /// `closure[i]`: strata contained in the closure of stratum `i`,
    /// including `i` itself.
    closure: Vec<BTreeSet<usize>>,
    compact: bool,
}

impl Stratification {
    /// Checks that every closure is a union of strata of no larger
    /// dimension, closed under taking closures.
    pub fn new(dims: Vec<usize>, closure: Vec<Vec<usize>>, compact: bool) -> Result<Self> {
        if dims.len() != closure.len() {
            return Err(Error::Dimension("one closure set per stratum".into()));
        }
        let closure: Vec<BTreeSet<usize>> = closure.into_iter().map(|c| c.into_iter().collect()).collect();
        for (i, c) in closure.iter().enumerate() {
            if !c.contains(&i) {
                return Err(Error::Degenerate(format!("stratum {i} is missing from its own closure")));
            }
            for &j in c {
                if j >= dims.len() {
                    return Err(Error::OutOfRange(format!("stratum {j} in the closure of {i}")));
                }
                if j != i && dims[j] >= dims[i] {
                    return Err(Error::Degenerate(format!("stratum {j} in the frontier of {i} is not lower-dimensional")));
                }
                if !closure[j].is_subset(c) {
                    return Err(Error::Degenerate(format!("closure of {i} is not closed at {j}")));
                }
            }
        }
        Ok(Self { dims, closure, compact })
    }

    /// Relative interiors of the cells of a complex.
    pub fn from_complex(c: &PolyhedralComplex) -> Result<Self> {
        let n = c.len();
        let mut below: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(f, g) in c.face_relation() {
            below[g].push(f);
        }
        let closure = (0..n)
            .map(|i| {
                let mut seen = BTreeSet::new();
                let mut stack = vec![i];
                while let Some(x) = stack.pop() {
                    if seen.insert(x) {
                        stack.extend(below[x].iter().copied());
                    }
                }
                seen.into_iter().collect()
            })
            .collect();
        let dims = c.cells().iter().map(|p| p.dim()).collect();
        Self::new(dims, closure, c.is_bounded())
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn dim(&self, i: usize) -> usize {
        self.dims[i]
    }

    pub fn is_compact(&self) -> bool {
        self.compact
    }

    fn check(&self, set: &BTreeSet<usize>) -> Result<()> {
        match set.iter().find(|&&i| i >= self.len()) {
            Some(i) => Err(Error::OutOfRange(format!("no stratum {i}"))),
            None => Ok(()),
        }
    }

    pub fn is_closed(&self, set: &BTreeSet<usize>) -> bool {
        set.iter().all(|&i| self.closure[i].is_subset(set))
    }

    /// `closure(A) ∖ A` closed.
    pub fn is_locally_closed(&self, set: &BTreeSet<usize>) -> bool {
        let hull: BTreeSet<usize> = set.iter().flat_map(|&i| self.closure[i].iter().copied()).collect();
        let frontier: BTreeSet<usize> = hull.difference(set).copied().collect();
        self.is_closed(&frontier)
    }

    /// Compactly supported Euler characteristic of a union of strata.
    pub fn chi_c(&self, set: &BTreeSet<usize>) -> Result<i64> {
        self.check(set)?;
        if !self.is_locally_closed(set) {
            return Err(Error::Degenerate("not a locally closed union of strata".into()));
        }
        Ok(set.iter().map(|&i| sign(self.dims[i])).sum())
    }

    /// Euler characteristic of a compact union of strata. Ordinary `χ` is
    /// not additive on open pieces, so anything else is refused.
    pub fn chi(&self, set: &BTreeSet<usize>) -> Result<i64> {
        self.check(set)?;
        if !(self.compact && self.is_closed(set)) {
            return Err(Error::Degenerate("cell counting computes χ only for compact sets".into()));
        }
        self.chi_c(set)
    }

    pub fn all(&self) -> BTreeSet<usize> {
        (0..self.len()).collect()
    }
}

pub(crate) fn sign(d: usize) -> i64 {
    if d.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// An integer-valued function constant on strata.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructibleFunction {
    strata: Stratification,
    values: Vec<i64>,
}

impl ConstructibleFunction {
    pub fn new(strata: Stratification, values: Vec<i64>) -> Result<Self> {
        if values.len() != strata.len() {
            return Err(Error::Dimension("one value per stratum".into()));
        }
        Ok(Self { strata, values })
    }

    /// `1_A` for a locally closed union of strata.
    pub fn indicator(strata: Stratification, set: &BTreeSet<usize>) -> Result<Self> {
        if !strata.is_locally_closed(set) {
            return Err(Error::Degenerate("indicator of a set that is not locally closed".into()));
        }
        let values = (0..strata.len()).map(|i| i64::from(set.contains(&i))).collect();
        Self::new(strata, values)
    }

    pub fn stratification(&self) -> &Stratification {
        &self.strata
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    /// `∫ f dχ = Σ_s f(s) χ_c(s)`.
    pub fn euler_integral(&self) -> i64 {
        self.values.iter().enumerate().map(|(i, v)| v * sign(self.strata.dim(i))).sum()
    }

    pub fn scaled(&self, c: i64) -> Self {
        Self { strata: self.strata.clone(), values: self.values.iter().map(|v| v * c).collect() }
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        if self.strata != other.strata {
            return Err(Error::DomainMismatch("constructible functions on different stratifications".into()));
        }
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect();
        Self::new(self.strata.clone(), values)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyhedral::Polyhedron;
    use crate::rational::qvec;

    fn interval() -> Stratification {
        // 0: left end, 1: right end, 2: open interval
        Stratification::new(vec![0, 0, 1], vec![vec![0], vec![1], vec![0, 1, 2]], true).unwrap()
    }

    fn set(v: &[usize]) -> BTreeSet<usize> {
        v.iter().copied().collect()
    }

    #[test]
    fn cells_and_intervals() {
        let s = interval();
        assert_eq!(s.chi_c(&set(&[2])).unwrap(), -1);
        assert_eq!(s.chi(&s.all()).unwrap(), 1);
        assert_eq!(s.chi_c(&set(&[0, 2])).unwrap(), 0);
        assert!(s.chi(&set(&[0, 2])).is_err());
        assert!(s.chi_c(&set(&[7])).is_err());
    }

    #[test]
    fn locally_closed_check() {
        // a closed triangle with strata v0 v1 v2 e01 e12 e02 T
        let cl = vec![vec![0], vec![1], vec![2], vec![0, 1, 3], vec![1, 2, 4], vec![0, 2, 5], vec![0, 1, 2, 3, 4, 5, 6]];
        let s = Stratification::new(vec![0, 0, 0, 1, 1, 1, 2], cl, true).unwrap();
        assert!(s.is_locally_closed(&set(&[6])));
        // a vertex with the open triangle is not locally closed
        assert!(s.chi_c(&set(&[0, 6])).is_err());
        assert_eq!(s.chi(&s.all()).unwrap(), 1);
    }

    #[test]
    fn circle_integral() {
        // a circle as one vertex and one open arc
        let s = Stratification::new(vec![0, 1], vec![vec![0], vec![0, 1]], true).unwrap();
        let f = ConstructibleFunction::new(s.clone(), vec![2, 2]).unwrap();
        assert_eq!(f.euler_integral(), 0);
        let one = ConstructibleFunction::indicator(s.clone(), &s.all()).unwrap();
        assert_eq!(one.sum(&one).unwrap(), f);
    }

    #[test]
    fn rejects_bad_closures() {
        assert!(Stratification::new(vec![0, 1], vec![vec![0, 1], vec![1]], true).is_err());
        assert!(Stratification::new(vec![1], vec![vec![]], true).is_err());
    }

    #[test]
    fn from_a_complex() {
        let seg = Polyhedron::segment(qvec(&[0]), qvec(&[1])).unwrap();
        let c = PolyhedralComplex::from_maximal_cells(1, vec![seg]).unwrap();
        let s = Stratification::from_complex(&c).unwrap();
        assert!(s.is_compact());
        assert_eq!(s.chi(&s.all()).unwrap(), 1);
    }
}
