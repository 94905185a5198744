use crate::error::{Error, Result};
use crate::rational::Rational;

use super::cartier::CartierFunction;
use super::cycle::TropicalCycle;
use super::intersect::divisor_intersect;

/// The cycles `X, D·X, D²·X, …` of a Cartier divisor on `X`.
#[derive(Clone, Debug)]
pub struct DivisorPowerTower {
    layers: Vec<TropicalCycle>,
}

/// Iterates the corner locus of `phi` until the cycle is empty, a 0-cycle,
/// or `kmax` powers have been taken.
pub fn power_tower(phi: &CartierFunction, x: &TropicalCycle, kmax: usize) -> Result<DivisorPowerTower> {
    let mut layers = vec![x.clone()];
    for _ in 0..kmax {
        let last = layers.last().expect("nonempty");
        if last.is_empty() || last.dim() == 0 {
            break;
        }
        let next = divisor_intersect(phi, last)?;
        layers.push(next);
    }
    Ok(DivisorPowerTower { layers })
}

impl DivisorPowerTower {
    pub fn layers(&self) -> &[TropicalCycle] {
        &self.layers
    }

    /// `D^k · X`; empty beyond the computed range.
    pub fn layer(&self, k: usize) -> Option<&TropicalCycle> {
        self.layers.get(k).filter(|c| !c.is_empty())
    }

    /// Is `x ∈ |D^k|`?
    pub fn in_support(&self, k: usize, x: &[Rational]) -> bool {
        self.layer(k).is_some_and(|c| c.support_contains(x))
    }

    /// `#{k ≥ 0 : x ∈ |D^k|}`.
    pub fn local_index(&self, x: &[Rational]) -> Result<usize> {
        if !self.in_support(0, x) {
            return Err(Error::NotInSupport("local index outside X".into()));
        }
        Ok((0..self.layers.len()).take_while(|&k| self.in_support(k, x)).count())
    }

    /// Largest `k` with `|D^k|` nonempty.
    pub fn top(&self) -> usize {
        (0..self.layers.len()).rev().find(|&k| self.layer(k).is_some()).unwrap_or(0)
    }

    /// Checks `|D^{k+1}| ⊆ |D^k|` for every k.
    pub fn is_nested(&self) -> bool {
        self.layers.windows(2).all(|w| {
            let outer = w[0].maximal_polyhedra();
            w[1].weighted_cells().all(|(p, _)| outer.iter().any(|o| o.contains_polyhedron(p)))
        })
    }
}
