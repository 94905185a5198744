use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::cycle::TropicalCycle;
use crate::error::{Error, Result};
use crate::linalg;
use crate::polyhedral::Polyhedron;

use super::core::{beta_memo, members, Matroid};

/// A strictly increasing chain of proper nonempty flats.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FlagOfFlats {
    pub chain: Vec<Vec<usize>>,
}

/// Flags stored as bitmask chains.
fn flags(m: &Matroid, len: usize) -> Vec<Vec<u32>> {
    let full = m.full();
    let proper: Vec<u32> = m.flat_masks().into_iter().filter(|&f| f != 0 && f != full).collect();
    let mut out = Vec::new();
    fn extend(proper: &[u32], len: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for &f in proper {
            if cur.last().is_none_or(|&g| g != f && g & !f == 0) {
                cur.push(f);
                extend(proper, len, cur, out);
                cur.pop();
            }
        }
    }
    extend(&proper, len, &mut Vec::new(), &mut out);
    out
}

/// `−e_F` modulo `R·1`, with the last coordinate pinned to zero. The sign
/// matches the max convention: `L_{U_{2,3}}` is the corner locus of
/// `max(0, x, y)`.
pub fn flat_vector(n: usize, flat: &[usize]) -> Vec<i64> {
    let mut w = vec![0i64; n];
    flat.iter().for_each(|&i| w[i] = -1);
    let last = w[n - 1];
    w[..n - 1].iter().map(|x| x - last).collect()
}

fn check_loopless(m: &Matroid) -> Result<()> {
    if !m.is_loopless() {
        return Err(Error::InvalidMatroid("the matroid has loops".into()));
    }
    if m.ground_size() < 2 {
        return Err(Error::Dimension("the quotient by R·1 is zero-dimensional".into()));
    }
    Ok(())
}

fn flag_cone(m: &Matroid, chain: &[u32]) -> Polyhedron {
    let n = m.ground_size();
    let rays: Vec<Vec<i64>> = chain.iter().map(|&f| flat_vector(n, &members(f).collect::<Vec<_>>())).collect();
    // 0/±1 rays of a flag are primitive and independent
    Polyhedron::cone(n - 1, rays, vec![]).expect("cone").assume_canonical()
}

/// The fine subdivision of `L_M`, weight 1 on every maximal flag cone.
pub fn bergman_fan(m: &Matroid) -> Result<TropicalCycle> {
    check_loopless(m)?;
    let cells = flags(m, m.rank() - 1).into_iter().map(|c| (flag_cone(m, &c), 1)).collect();
    TropicalCycle::from_weighted_cells(m.ground_size() - 1, m.rank() - 1, cells)
}

/// Weights of `csm_k` on the `k`-dimensional flag cones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CsmCycle {
    matroid: Matroid,
    k: usize,
    weights: Vec<(Vec<u32>, i64)>,
}

/// `csm_k(L_M)`: on the cone of `∅ = F_0 ⊊ F_1 ⊊ ⋯ ⊊ F_k ⊊ F_{k+1} = E`
/// the weight is `(−1)^{r−1−k} ∏ β(M[F_i, F_{i+1}])`.
pub fn csm_cycle(m: &Matroid, k: usize) -> Result<CsmCycle> {
    check_loopless(m)?;
    if k + 1 > m.rank() {
        return Err(Error::OutOfRange(format!("csm_{k} of a fan of dimension {}", m.rank() - 1)));
    }
    let sign = if (m.rank() - 1 - k).is_multiple_of(2) { 1 } else { -1 };
    let mut memo = HashMap::new();
    let weights = flags(m, k)
        .into_iter()
        .map(|chain| {
            let mut bounds = vec![0u32];
            bounds.extend(&chain);
            bounds.push(m.full());
            let w = bounds.windows(2).try_fold(sign, |acc, pair| {
                let minor = m.interval_minor(pair[0], pair[1])?;
                Ok::<_, Error>(acc * beta_memo(&minor, &mut memo))
            })?;
            Ok((chain, w))
        })
        .collect::<Result<_>>()?;
    Ok(CsmCycle { matroid: m.clone(), k, weights })
}

impl CsmCycle {
    pub fn dim(&self) -> usize {
        self.k
    }

    pub fn flags(&self) -> Vec<(FlagOfFlats, i64)> {
        self.weights
            .iter()
            .map(|(c, w)| (FlagOfFlats { chain: c.iter().map(|&f| members(f).collect()).collect() }, *w))
            .collect()
    }

    /// Sum of the weights (the degree when `k = 0`).
    pub fn total_weight(&self) -> i64 {
        self.weights.iter().map(|(_, w)| w).sum()
    }

    /// Balancing checked on the flag structure: around each flag of length
    /// `k − 1`, the weighted sum of the inserted flat vectors lies in the
    /// span of the flag.
    pub fn is_balanced(&self) -> bool {
        if self.k == 0 {
            return true;
        }
        let n = self.matroid.ground_size();
        let vec_of = |f: u32| linalg::from_int(&flat_vector(n, &members(f).collect::<Vec<_>>()));
        let mut around: HashMap<Vec<u32>, Vec<i64>> = HashMap::new();
        for (chain, w) in &self.weights {
            for drop in 0..chain.len() {
                let mut tau = chain.clone();
                let g = tau.remove(drop);
                let acc = around.entry(tau).or_insert_with(|| vec![0; n - 1]);
                acc.iter_mut().zip(flat_vector(n, &members(g).collect::<Vec<_>>())).for_each(|(a, v)| *a += w * v);
            }
        }
        around.into_iter().all(|(tau, sum)| {
            let span: Vec<_> = tau.iter().map(|&f| vec_of(f)).collect();
            linalg::in_span(&linalg::span_basis(&span), &linalg::from_int(&sum))
        })
    }

    /// As a tropical cycle; zero-weight cones are dropped.
    pub fn to_cycle(&self) -> Result<TropicalCycle> {
        let cells = self.weights.iter().filter(|(_, w)| *w != 0).map(|(c, w)| (flag_cone(&self.matroid, c), *w)).collect();
        TropicalCycle::from_weighted_cells(self.matroid.ground_size() - 1, self.k, cells)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_bergman_fans() {
        let line = bergman_fan(&Matroid::uniform(2, 3).unwrap()).unwrap();
        let mut rays: Vec<Vec<i64>> = line.weighted_cells().map(|(p, _)| p.rays()[0].clone()).collect();
        rays.sort();
        assert_eq!(rays, vec![vec![-1, 0], vec![0, -1], vec![1, 1]]);
        let u24 = bergman_fan(&Matroid::uniform(2, 4).unwrap()).unwrap();
        assert_eq!(u24.weighted_cells().count(), 4);
        assert!(u24.check_balancing().is_balanced());
        let plane = bergman_fan(&Matroid::uniform(3, 3).unwrap()).unwrap();
        assert_eq!(plane.weighted_cells().count(), 6);
        assert!(bergman_fan(&Matroid::new(2, vec![vec![0]]).unwrap()).is_err());
    }

    #[test]
    fn csm_weights() {
        let u23 = Matroid::uniform(2, 3).unwrap();
        assert_eq!(csm_cycle(&u23, 0).unwrap().total_weight(), -1);
        assert!(csm_cycle(&u23, 1).unwrap().flags().iter().all(|(_, w)| *w == 1));
        assert!(csm_cycle(&u23, 2).is_err());
        assert_eq!(csm_cycle(&Matroid::uniform(3, 3).unwrap(), 0).unwrap().total_weight(), 0);
    }

    #[test]
    fn balancing_by_flags_and_by_the_engine() {
        let k4 = Matroid::graphic(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        for m in [Matroid::uniform(3, 4).unwrap(), Matroid::uniform(3, 5).unwrap(), k4] {
            for k in 0..m.rank() {
                let c = csm_cycle(&m, k).unwrap();
                assert!(c.is_balanced());
                let cyc = c.to_cycle().unwrap();
                assert!(cyc.is_empty() || cyc.check_balancing().is_balanced());
            }
        }
    }
}
