use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::error::{Error, Result};

/// Largest supported ground set.
pub const MAX_GROUND: usize = 12;

/// A matroid on `0..n` given by its bases, stored as bitmasks.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matroid {
    n: usize,
    rank: usize,
    bases: BTreeSet<u32>,
}

pub(crate) fn members(mask: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |i| mask >> i & 1 == 1)
}

pub(crate) fn mask_of(items: &[usize]) -> u32 {
    items.iter().fold(0, |m, &i| m | 1 << i)
}

impl Matroid {
    /// Checks sizes and the basis-exchange axiom.
    pub fn new(n: usize, bases: Vec<Vec<usize>>) -> Result<Self> {
        if n > MAX_GROUND {
            return Err(Error::InvalidMatroid(format!("ground sets are capped at {MAX_GROUND} elements")));
        }
        let mut masks = BTreeSet::new();
        for (i, b) in bases.iter().enumerate() {
            if let Some(e) = b.iter().find(|&&e| e >= n) {
                return Err(Error::InvalidMatroid(format!("basis {i} contains {e}, outside 0..{n}")));
            }
            let m = mask_of(b);
            if m.count_ones() as usize != b.len() {
                return Err(Error::InvalidMatroid(format!("basis {i} repeats an element")));
            }
            masks.insert(m);
        }
        Self::from_masks(n, masks)
    }

    fn from_masks(n: usize, bases: BTreeSet<u32>) -> Result<Self> {
        let rank = bases.first().ok_or_else(|| Error::InvalidMatroid("no bases".into()))?.count_ones() as usize;
        if bases.iter().any(|b| b.count_ones() as usize != rank) {
            return Err(Error::InvalidMatroid("bases of different sizes".into()));
        }
        for &a in &bases {
            for &b in &bases {
                for x in members(a & !b) {
                    let ok = members(b & !a).any(|y| bases.contains(&(a & !(1 << x) | 1 << y)));
                    if !ok {
                        return Err(Error::InvalidMatroid(format!("basis exchange fails for {a:#b}, {b:#b} at {x}")));
                    }
                }
            }
        }
        Ok(Self { n, rank, bases })
    }

    /// `U_{r,n}`.
    pub fn uniform(r: usize, n: usize) -> Result<Self> {
        if r > n {
            return Err(Error::InvalidMatroid(format!("U_{{{r},{n}}} needs r ≤ n")));
        }
        Self::new(n, crate::util::combinations(n, r))
    }

    /// The cycle matroid of a graph; elements are the edges.
    pub fn graphic(vertices: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let m = edges.len();
        let forest = |s: &[usize]| {
            let mut uf = crate::util::UnionFind::new(vertices);
            s.iter().all(|&e| {
                let (u, v) = edges[e];
                uf.union(u, v)
            })
        };
        let mut r = 0;
        for k in (0..=m.min(vertices)).rev() {
            if crate::util::combinations(m, k).iter().any(|s| forest(s)) {
                r = k;
                break;
            }
        }
        Self::new(m, crate::util::combinations(m, r).into_iter().filter(|s| forest(s)).collect())
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn bases(&self) -> Vec<Vec<usize>> {
        self.bases.iter().map(|&b| members(b).collect()).collect()
    }

    pub(crate) fn full(&self) -> u32 {
        if self.n == 32 {
            u32::MAX
        } else {
            (1 << self.n) - 1
        }
    }

    pub(crate) fn rank_mask(&self, s: u32) -> usize {
        self.bases.iter().map(|b| (b & s).count_ones() as usize).max().unwrap_or(0)
    }

    pub fn rank_of(&self, s: &[usize]) -> usize {
        self.rank_mask(mask_of(s))
    }

    pub(crate) fn closure_mask(&self, s: u32) -> u32 {
        let r = self.rank_mask(s);
        (0..self.n).filter(|&e| self.rank_mask(s | 1 << e) == r).fold(s, |m, e| m | 1 << e)
    }

    pub fn closure(&self, s: &[usize]) -> Vec<usize> {
        members(self.closure_mask(mask_of(s))).collect()
    }

    pub fn is_loop(&self, e: usize) -> bool {
        self.bases.iter().all(|b| b >> e & 1 == 0)
    }

    pub fn is_coloop(&self, e: usize) -> bool {
        self.bases.iter().all(|b| b >> e & 1 == 1)
    }

    pub fn is_loopless(&self) -> bool {
        (0..self.n).all(|e| !self.is_loop(e))
    }

    /// All flats, as bitmasks sorted by rank and then value.
    pub(crate) fn flat_masks(&self) -> Vec<u32> {
        let bottom = self.closure_mask(0);
        let mut seen = BTreeSet::from([bottom]);
        let mut queue = VecDeque::from([bottom]);
        while let Some(f) = queue.pop_front() {
            for e in 0..self.n {
                if f >> e & 1 == 0 {
                    let g = self.closure_mask(f | 1 << e);
                    if seen.insert(g) {
                        queue.push_back(g);
                    }
                }
            }
        }
        let mut out: Vec<u32> = seen.into_iter().collect();
        out.sort_by_key(|&f| (self.rank_mask(f), f));
        out
    }

    /// The lattice of flats: each flat with its rank.
    pub fn flats(&self) -> Vec<(Vec<usize>, usize)> {
        self.flat_masks().into_iter().map(|f| (members(f).collect(), self.rank_mask(f))).collect()
    }

    /// Covering pairs `(i, j)` of indices into [`Matroid::flats`].
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let f = self.flat_masks();
        let mut out = Vec::new();
        for i in 0..f.len() {
            for j in 0..f.len() {
                if f[i] & !f[j] == 0 && f[i] != f[j] && self.rank_mask(f[j]) == self.rank_mask(f[i]) + 1 {
                    out.push((i, j));
                }
            }
        }
        out
    }

    fn relabel(n: usize, keep: u32, bases: impl Iterator<Item = u32>) -> Result<Self> {
        let idx: Vec<usize> = members(keep).collect();
        let masks = bases
            .map(|b| idx.iter().enumerate().filter(|(_, &e)| b >> e & 1 == 1).fold(0u32, |m, (i, _)| m | 1 << i))
            .collect();
        let _ = n;
        Self::from_masks(idx.len(), masks)
    }

    /// `M ∖ e`.
    pub fn delete(&self, e: usize) -> Result<Self> {
        let keep = self.full() & !(1 << e);
        if self.is_coloop(e) {
            Self::relabel(self.n, keep, self.bases.iter().map(|b| b & !(1 << e)))
        } else {
            Self::relabel(self.n, keep, self.bases.iter().copied().filter(|b| b >> e & 1 == 0))
        }
    }

    /// `M / e`.
    pub fn contract(&self, e: usize) -> Result<Self> {
        if self.is_loop(e) {
            return self.delete(e);
        }
        let keep = self.full() & !(1 << e);
        Self::relabel(self.n, keep, self.bases.iter().copied().filter(|b| b >> e & 1 == 1).map(|b| b & !(1 << e)))
    }

    /// The minor `(M|G)/F` for flats `F ⊆ G`, on the elements of `G ∖ F`.
    pub(crate) fn interval_minor(&self, f: u32, g: u32) -> Result<Self> {
        // restrict to G: bases of M|G are the maximal B ∩ G
        let rg = self.rank_mask(g);
        let restricted: BTreeSet<u32> =
            self.bases.iter().map(|b| b & g).filter(|b| b.count_ones() as usize == rg).collect();
        let rf = self.rank_mask(f);
        // contract F: bases of M|G containing a basis of F, minus F
        let contracted: BTreeSet<u32> =
            restricted.iter().filter(|b| (*b & f).count_ones() as usize == rf).map(|b| b & !f).collect();
        Self::relabel(self.n, g & !f, contracted.into_iter())
    }

    /// `χ_M(t) = Σ_S (−1)^{|S|} t^{r − r(S)}`, coefficients by ascending power.
    pub fn characteristic_polynomial(&self) -> Vec<i64> {
        let mut c = vec![0i64; self.rank + 1];
        for s in 0..=self.full() {
            let sign = if s.count_ones() % 2 == 0 { 1 } else { -1 };
            c[self.rank - self.rank_mask(s)] += sign;
        }
        c
    }

    /// Crapo's `β` by deletion–contraction, memoized on bases.
    pub fn beta_invariant(&self) -> Result<i64> {
        if self.n == 0 {
            return Err(Error::InvalidMatroid("β of the empty matroid".into()));
        }
        Ok(beta_memo(self, &mut HashMap::new()))
    }

    /// `β(M) = (−1)^{r} Σ_S (−1)^{|S|} r(S)`, straight from the definition.
    pub fn beta_by_rank_sum(&self) -> i64 {
        let s: i64 = (0..=self.full())
            .map(|s| if s.count_ones() % 2 == 0 { 1 } else { -1 } * self.rank_mask(s) as i64)
            .sum();
        if self.rank.is_multiple_of(2) {
            s
        } else {
            -s
        }
    }
}

pub(crate) fn beta_memo(m: &Matroid, memo: &mut HashMap<(usize, BTreeSet<u32>), i64>) -> i64 {
    let key = (m.n, m.bases.clone());
    if let Some(&b) = memo.get(&key) {
        return b;
    }
    let value = if m.n == 1 {
        i64::from(m.is_coloop(0))
    } else if m.is_loop(0) || m.is_coloop(0) {
        // a loop, or a coloop split off from at least one more element
        0
    } else {
        beta_memo(&m.delete(0).expect("minor"), memo) + beta_memo(&m.contract(0).expect("minor"), memo)
    };
    memo.insert(key, value);
    value
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::util::binomial;

    #[test]
    fn flats_and_ranks() {
        let u23 = Matroid::uniform(2, 3).unwrap();
        assert_eq!(u23.flats().len(), 5);
        assert_eq!(Matroid::uniform(3, 3).unwrap().flats().len(), 8);
        assert_eq!(Matroid::uniform(2, 4).unwrap().rank_of(&[0, 1, 2]), 2);
        assert_eq!(u23.closure(&[0, 1]), vec![0, 1, 2]);
        assert_eq!(u23.covers().len(), 6);
    }

    #[test]
    fn exchange_axiom() {
        assert!(Matroid::new(4, vec![vec![0, 1], vec![2, 3]]).is_err());
        assert!(Matroid::new(3, vec![vec![0, 1], vec![2]]).is_err());
        assert!(Matroid::new(2, vec![vec![0, 2]]).is_err());
    }

    #[test]
    fn beta_values() {
        assert_eq!(Matroid::uniform(1, 1).unwrap().beta_invariant().unwrap(), 1);
        assert_eq!(Matroid::uniform(2, 3).unwrap().beta_invariant().unwrap(), 1);
        assert_eq!(Matroid::uniform(2, 4).unwrap().beta_invariant().unwrap(), 2);
        assert_eq!(Matroid::uniform(3, 3).unwrap().beta_invariant().unwrap(), 0);
        assert!(Matroid::uniform(0, 0).unwrap().beta_invariant().is_err());
        for n in 1..=7 {
            for r in 1..=n {
                let m = Matroid::uniform(r, n).unwrap();
                if n >= 2 {
                    assert_eq!(m.beta_invariant().unwrap(), binomial(n as i64 - 2, r as i64 - 1), "U_{r},{n}");
                }
                assert_eq!(m.beta_invariant().unwrap(), m.beta_by_rank_sum());
            }
        }
    }

    #[test]
    fn graphic_k4() {
        let k4 = Matroid::graphic(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!((k4.rank(), k4.bases().len()), (3, 16));
        assert_eq!(k4.characteristic_polynomial(), vec![-6, 11, -6, 1]);
        assert_eq!(k4.beta_invariant().unwrap(), 2);
    }

    #[test]
    fn minors() {
        let u24 = Matroid::uniform(2, 4).unwrap();
        assert_eq!(u24.delete(0).unwrap(), Matroid::uniform(2, 3).unwrap());
        assert_eq!(u24.contract(3).unwrap(), Matroid::uniform(1, 3).unwrap());
        let m = u24.interval_minor(1, 0b1111).unwrap();
        assert_eq!(m, Matroid::uniform(1, 3).unwrap());
    }
}
