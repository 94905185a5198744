use crate::lattice;
use crate::linalg::{self, Vector};

use super::complex::PolyhedralComplex;

/// Integer basis of the largest linear subspace `L` with `|F| + L = |F|`.
///
/// Starts from the intersection of the spans of the maximal cones and cuts it
/// down by the span of every codimension-one cone across which the support is
/// not locally a linear space.
pub fn lineality_space(fan: &PolyhedralComplex) -> Vec<Vec<i64>> {
    let n = fan.ambient_dim();
    let maximal = fan.maximal_cells();
    let Some(&first) = maximal.first() else {
        return Vec::new();
    };
    let mut w: Vec<Vector> = fan.cell(first).direction_space();
    for &m in &maximal[1..] {
        w = cut(&w, &fan.cell(m).direction_space(), n);
    }
    for t in 0..fan.len() {
        let cofacets = fan.cofacets_of(t);
        if cofacets.is_empty() || cofacets.iter().any(|c| !maximal.contains(c)) {
            continue;
        }
        if !locally_linear(fan, t, &cofacets) {
            w = cut(&w, &fan.cell(t).direction_space(), n);
        }
    }
    lattice::saturated_basis(&w, n)
}

fn cut(a: &[Vector], b: &[Vector], n: usize) -> Vec<Vector> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    linalg::span_intersection(a, b, n)
}

/// All cofacets span one space and lie on both sides of the face.
fn locally_linear(fan: &PolyhedralComplex, t: usize, cofacets: &[usize]) -> bool {
    let n = fan.ambient_dim();
    let span = fan.cell(cofacets[0]).direction_space();
    if cofacets.iter().any(|&c| {
        let s = fan.cell(c).direction_space();
        s.len() != span.len() || !linalg::span_contains(&span, &s)
    }) {
        return false;
    }
    let mut rows = fan.cell(t).direction_space();
    rows.extend(linalg::nullspace(&span, n));
    let normal = linalg::nullspace(&rows, n);
    let Some(a) = normal.first() else {
        return false;
    };
    let (mut pos, mut neg) = (false, false);
    for &c in cofacets {
        let s = linalg::dot(a, &fan.cell(c).relint_point());
        pos |= s > num_traits::Zero::zero();
        neg |= s < num_traits::Zero::zero();
    }
    pos && neg
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyhedral::Polyhedron;

    fn fan(n: usize, cones: &[(Vec<Vec<i64>>, Vec<Vec<i64>>)]) -> PolyhedralComplex {
        let cells = cones
            .iter()
            .map(|(r, l)| Polyhedron::cone(n, r.clone(), l.clone()).unwrap())
            .collect();
        PolyhedralComplex::from_maximal_cells(n, cells).unwrap()
    }

    #[test]
    fn line_fan_has_no_lineality() {
        let f = fan(2, &[(vec![vec![1, 0]], vec![]), (vec![vec![0, 1]], vec![]), (vec![vec![-1, -1]], vec![])]);
        assert!(lineality_space(&f).is_empty());
    }

    #[test]
    fn plane_is_its_own_lineality() {
        let f = fan(2, &[(vec![], vec![vec![1, 0], vec![0, 1]])]);
        assert_eq!(lineality_space(&f).len(), 2);
        let quadrants = fan(
            2,
            &[
                (vec![vec![1, 0], vec![0, 1]], vec![]),
                (vec![vec![-1, 0], vec![0, 1]], vec![]),
                (vec![vec![-1, 0], vec![0, -1]], vec![]),
                (vec![vec![1, 0], vec![0, -1]], vec![]),
            ],
        );
        assert_eq!(lineality_space(&quadrants).len(), 2);
    }

    #[test]
    fn product_with_line() {
        let f = fan(
            3,
            &[
                (vec![vec![1, 0, 0]], vec![vec![0, 0, 1]]),
                (vec![vec![0, 1, 0]], vec![vec![0, 0, 1]]),
                (vec![vec![-1, -1, 0]], vec![vec![0, 0, 1]]),
            ],
        );
        let l = lineality_space(&f);
        assert_eq!(l.len(), 1);
        assert_eq!(lattice::normalized_direction(&l[0]), vec![0, 0, 1]);
    }

    #[test]
    fn opposite_rays_form_a_line() {
        let f = fan(2, &[(vec![vec![1, 1]], vec![]), (vec![vec![-1, -1]], vec![])]);
        assert_eq!(lineality_space(&f).len(), 1);
    }
}
