use num_traits::{Signed, Zero};

use crate::linalg;
use crate::polyhedral::Polyhedron;

/// Is `|sigma| ⊆ ∪ cover`? The cover is assumed to be the set of maximal
/// cells of a polyhedral complex.
pub fn cell_covered(sigma: &Polyhedron, cover: &[Polyhedron]) -> bool {
    if cover.iter().any(|b| b.contains_polyhedron(sigma)) {
        return true;
    }
    let d = sigma.dim();
    if d == 0 {
        return false;
    }
    let mut pieces: Vec<Polyhedron> = Vec::new();
    for b in cover {
        if b.dim() == d && sigma.contains_polyhedron(b) {
            pieces.push(b.clone());
            continue;
        }
        if separated(sigma, b, true) || separated(b, sigma, false) {
            continue;
        }
        if let Some(p) = sigma.intersection(b) {
            if p.dim() == d {
                pieces.push(p);
            }
        }
    }
    if pieces.is_empty() {
        return false;
    }
    for (i, p) in pieces.iter().enumerate() {
        let centre = p.relint_point();
        for f in p.facets() {
            let x = f.relint_point();
            if !sigma.contains_relint(&x) {
                continue;
            }
            let outward = linalg::sub(&x, &centre);
            let matched = pieces.iter().enumerate().any(|(j, q)| {
                j != i
                    && q.contains(&x)
                    && q.tangent_cone_at(&x).map(|t| t.contains(&outward)).unwrap_or(false)
            });
            if !matched {
                return false;
            }
        }
    }
    true
}

/// Some defining constraint of `b` shows `a ∩ b` lies in a proper face of
/// `a` or of `b`; either way it is lower-dimensional than the cell being
/// covered. Equations of `b` only help when `b` is the cover cell.
fn separated(a: &Polyhedron, b: &Polyhedron, use_equations: bool) -> bool {
    let h = b.hrep();
    let gens_values = |normal: &[crate::rational::Rational], offset: &crate::rational::Rational| {
        let pts: Vec<_> = a.vertices().iter().map(|v| linalg::dot(normal, v) - offset).collect();
        let dirs: Vec<_> = a.rays().iter().map(|r| linalg::dot_int(r, normal)).collect();
        let lins: Vec<_> = a.lineality().iter().map(|r| linalg::dot_int(r, normal)).collect();
        (pts, dirs, lins)
    };
    for (normal, offset) in h.equations.iter().filter(|_| use_equations) {
        let (pts, dirs, lins) = gens_values(normal, offset);
        if pts.iter().chain(&dirs).chain(&lins).any(|x| !x.is_zero()) {
            return true;
        }
    }
    for (normal, offset) in &h.inequalities {
        let (pts, dirs, lins) = gens_values(normal, offset);
        let nonpos = pts.iter().chain(&dirs).all(|x| !x.is_positive()) && lins.iter().all(|x| x.is_zero());
        let some_neg = pts.iter().chain(&dirs).any(|x| x.is_negative());
        if nonpos && some_neg {
            return true;
        }
    }
    false
}

pub fn support_subset(a: &[Polyhedron], b: &[Polyhedron]) -> bool {
    a.iter().all(|s| cell_covered(s, b))
}

/// Equality of supports of two pure complexes given by maximal cells.
pub fn support_equal(a: &[Polyhedron], b: &[Polyhedron]) -> bool {
    support_subset(a, b) && support_subset(b, a)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cone(rays: Vec<Vec<i64>>) -> Polyhedron {
        Polyhedron::cone(2, rays, vec![]).unwrap()
    }

    #[test]
    fn quadrants_cover_plane() {
        let plane = Polyhedron::cone(2, vec![], vec![vec![1, 0], vec![0, 1]]).unwrap();
        let quads = vec![
            cone(vec![vec![1, 0], vec![0, 1]]),
            cone(vec![vec![-1, 0], vec![0, 1]]),
            cone(vec![vec![-1, 0], vec![0, -1]]),
            cone(vec![vec![1, 0], vec![0, -1]]),
        ];
        assert!(support_equal(std::slice::from_ref(&plane), &quads));
        assert!(!support_equal(&[plane], &quads[..3]));
    }

    #[test]
    fn subdivided_cone() {
        let coarse = vec![cone(vec![vec![1, 0], vec![0, 1]])];
        let fine = vec![cone(vec![vec![1, 0], vec![1, 1]]), cone(vec![vec![1, 1], vec![0, 1]])];
        assert!(support_equal(&coarse, &fine));
        assert!(!support_equal(&coarse, &fine[..1]));
    }
}
