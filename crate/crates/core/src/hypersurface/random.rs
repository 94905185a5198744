//! Seeded generators for smooth polynomials and Delzant polygons.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::polyhedral::LatticePolytope;
use crate::rational::Rational;

use super::polynomial::TropicalPolynomial;
use super::subdivision::RegularSubdivision;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Strictly concave heights on the lattice points of `p`, perturbed by
/// small random rationals so that no four lifted points are coplanar by
/// accident.
pub fn random_heights(p: &LatticePolytope, rng: &mut impl Rng) -> TropicalPolynomial {
    let terms = p
        .lattice_points()
        .into_iter()
        .map(|a| {
            let s: i64 = a.iter().sum();
            let sq: i64 = a.iter().map(|x| x * x).sum::<i64>() + s * s;
            let noise = Rational::new(rng.gen_range(-500..=500).into(), 1000.into());
            (a, Rational::from_integer((-8 * sq).into()) + noise)
        })
        .collect();
    TropicalPolynomial::new(p.ambient_dim(), terms).expect("distinct lattice points")
}

/// A polynomial with Newton polytope `p` and unimodular subdivision; the
/// returned seed reproduces it with `random_heights`.
pub fn smooth_polynomial(p: &LatticePolytope, seed: u64, retries: usize) -> Result<(TropicalPolynomial, u64)> {
    for attempt in 0..=retries {
        let s = seed.wrapping_add(attempt as u64);
        let f = random_heights(p, &mut rng(s));
        if RegularSubdivision::new(&f)?.is_smooth() {
            return Ok((f, s));
        }
    }
    Err(Error::RetriesExhausted(retries))
}

/// Are all vertex cones of the polygon unimodular?
pub fn is_delzant(p: &LatticePolytope) -> bool {
    let v = p.vertices();
    if p.dim() != 2 || v.len() < 3 {
        return false;
    }
    let k = v.len();
    (0..k).all(|i| {
        let (a, b, c) = (&v[(i + k - 1) % k], &v[i], &v[(i + 1) % k]);
        let e1 = crate::lattice::primitive(&[a[0] - b[0], a[1] - b[1]]);
        let e2 = crate::lattice::primitive(&[c[0] - b[0], c[1] - b[1]]);
        (e1[0] * e2[1] - e1[1] * e2[0]).abs() == 1
    })
}

/// Cuts the corner at vertex `i` at lattice distance `t` along both edges.
fn blow_up(p: &LatticePolytope, i: usize, t: i64) -> Option<LatticePolytope> {
    let v = p.vertices();
    let k = v.len();
    let (a, b, c) = (&v[(i + k - 1) % k], &v[i], &v[(i + 1) % k]);
    let step = |to: &Vec<i64>| {
        let d = [to[0] - b[0], to[1] - b[1]];
        let len = crate::lattice::gcd(d[0], d[1]);
        (len > t).then(|| vec![b[0] + t * d[0] / len, b[1] + t * d[1] / len])
    };
    let (x, y) = (step(a)?, step(c)?);
    let mut pts: Vec<Vec<i64>> = v.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, p)| p.clone()).collect();
    pts.push(x);
    pts.push(y);
    LatticePolytope::new(pts).ok()
}

/// A Delzant polygon from a random starting surface (projective plane,
/// product of lines or Hirzebruch) followed by random corner cuts, with
/// every coordinate in `[-bound, bound]`.
pub fn random_delzant_polygon(rng: &mut impl Rng, bound: i64) -> LatticePolytope {
    loop {
        let start = match rng.gen_range(0..3) {
            0 => LatticePolytope::simplex(rng.gen_range(1..=4), 2),
            1 => rect(rng.gen_range(1..=4), rng.gen_range(1..=4)),
            _ => {
                let (a, b, k) = (rng.gen_range(1..=3), rng.gen_range(1..=2), rng.gen_range(1..=2));
                LatticePolytope::new(vec![vec![0, 0], vec![a + k * b, 0], vec![a, b], vec![0, b]]).expect("trapezoid")
            }
        };
        let mut p = start;
        for _ in 0..rng.gen_range(0..=3) {
            let i = rng.gen_range(0..p.vertices().len());
            if let Some(q) = blow_up(&p, i, 1) {
                p = q;
            }
        }
        let (lo, hi) = bbox(&p);
        let shift: Vec<i64> = (0..2)
            .map(|j| {
                let (min, max) = (-bound - lo[j], bound - hi[j]);
                if min > max {
                    0
                } else {
                    rng.gen_range(min..=max)
                }
            })
            .collect();
        let moved = LatticePolytope::new(p.vertices().iter().map(|v| vec![v[0] + shift[0], v[1] + shift[1]]).collect())
            .expect("translate");
        let (lo, hi) = bbox(&moved);
        if lo.iter().chain(&hi).all(|c| c.abs() <= bound) && is_delzant(&moved) {
            return moved;
        }
    }
}

fn rect(a: i64, b: i64) -> LatticePolytope {
    LatticePolytope::new(vec![vec![0, 0], vec![a, 0], vec![a, b], vec![0, b]]).expect("rectangle")
}

fn bbox(p: &LatticePolytope) -> (Vec<i64>, Vec<i64>) {
    let lo = (0..2).map(|j| p.vertices().iter().map(|v| v[j]).min().unwrap()).collect();
    let hi = (0..2).map(|j| p.vertices().iter().map(|v| v[j]).max().unwrap()).collect();
    (lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delzant_polygons_are_delzant() {
        let mut r = rng(11);
        for _ in 0..30 {
            let p = random_delzant_polygon(&mut r, 6);
            assert!(is_delzant(&p));
            assert!(p.vertices().iter().flatten().all(|c| c.abs() <= 6));
        }
        assert!(!is_delzant(&LatticePolytope::new(vec![vec![0, 0], vec![2, 0], vec![0, 1]]).unwrap()));
    }

    #[test]
    fn smooth_polynomials_are_reproducible() {
        let p = LatticePolytope::simplex(3, 3);
        let (f, s) = smooth_polynomial(&p, 5, 8).unwrap();
        assert!(RegularSubdivision::new(&f).unwrap().is_smooth());
        assert_eq!(random_heights(&p, &mut rng(s)), f);
    }
}
