use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::polyhedral::LatticePolytope;

/// A complete smooth fan in the plane, rays in counter-clockwise order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmoothCompleteFan2D {
    rays: Vec<[i64; 2]>,
    /// `u_{i−1} + u_{i+1} = a_i u_i`, so `D_i² = −a_i`.
    wall: Vec<i64>,
}

fn det(a: [i64; 2], b: [i64; 2]) -> i64 {
    a[0] * b[1] - a[1] * b[0]
}

/// Counter-clockwise angle order starting at the positive x-axis.
fn angle_cmp(a: &[i64; 2], b: &[i64; 2]) -> Ordering {
    let half = |v: &[i64; 2]| v[1] < 0 || (v[1] == 0 && v[0] < 0);
    half(a).cmp(&half(b)).then_with(|| 0.cmp(&det(*a, *b)))
}

impl SmoothCompleteFan2D {
    /// Rays in cyclic order (either orientation).
    pub fn new(rays: Vec<Vec<i64>>) -> Result<Self> {
        let mut r: Vec<[i64; 2]> = rays
            .iter()
            .enumerate()
            .map(|(i, v)| match v.as_slice() {
                [x, y] if crate::lattice::is_primitive(v) => Ok([*x, *y]),
                _ => Err(Error::InvalidFan(format!("ray {i} is not a primitive vector in Z^2"))),
            })
            .collect::<Result<_>>()?;
        let m = r.len();
        if m < 3 {
            return Err(Error::InvalidFan("a complete fan in the plane needs at least three rays".into()));
        }
        if det(r[0], r[1]) < 0 {
            r[1..].reverse();
        }
        let mut sorted = r.clone();
        sorted.sort_by(angle_cmp);
        sorted.dedup();
        let start = sorted.iter().position(|v| *v == r[0]).expect("present");
        sorted.rotate_left(start);
        if sorted != r {
            return Err(Error::InvalidFan("rays are not in cyclic order or repeat".into()));
        }
        for i in 0..m {
            let d = det(r[i], r[(i + 1) % m]);
            if d != 1 {
                return Err(Error::NotSmooth(format!("cone {i} has determinant {d}")));
            }
        }
        let wall = (0..m)
            .map(|i| {
                let (p, u, n) = (r[(i + m - 1) % m], r[i], r[(i + 1) % m]);
                let w = [p[0] + n[0], p[1] + n[1]];
                debug_assert_eq!(det(u, w), 0, "wall relation");
                det(w, n)
            })
            .collect();
        Ok(Self { rays: r, wall })
    }

    /// The normal fan of a Delzant polygon, with the coefficients of its
    /// divisor: `P = {x : ⟨u_ρ, x⟩ ≤ b_ρ}` gives `Σ b_ρ D_ρ`.
    pub fn from_polygon(p: &LatticePolytope) -> Result<(Self, Vec<i64>)> {
        if p.ambient_dim() != 2 || p.dim() != 2 {
            return Err(Error::Dimension("a full-dimensional polygon".into()));
        }
        let mut facets: Vec<([i64; 2], i64)> = p.facet_normals().into_iter().map(|(u, m)| ([u[0], u[1]], m)).collect();
        facets.sort_by(|a, b| angle_cmp(&a.0, &b.0));
        let fan = Self::new(facets.iter().map(|(u, _)| u.to_vec()).collect())?;
        let coeffs = fan.rays.iter().map(|u| facets.iter().find(|(v, _)| v == u).expect("same rays").1).collect();
        Ok((fan, coeffs))
    }

    /// Coefficients of a polygon's divisor on this fan; errors if the
    /// normal fans differ.
    pub fn polygon_class(&self, p: &LatticePolytope) -> Result<Vec<i64>> {
        let (other, coeffs) = Self::from_polygon(p)?;
        if other.rays.len() != self.rays.len() || other.rays.iter().any(|u| !self.rays.contains(u)) {
            return Err(Error::DomainMismatch("polygon has a different normal fan".into()));
        }
        Ok(self.rays.iter().map(|u| coeffs[other.rays.iter().position(|v| v == u).expect("same rays")]).collect())
    }

    pub fn rays(&self) -> &[[i64; 2]] {
        &self.rays
    }

    pub fn len(&self) -> usize {
        self.rays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn wall_numbers(&self) -> &[i64] {
        &self.wall
    }

    /// `D_i · D_j`.
    pub fn intersection(&self, i: usize, j: usize) -> i64 {
        let m = self.len();
        if i == j {
            -self.wall[i]
        } else if (i + 1) % m == j || (j + 1) % m == i {
            1
        } else {
            0
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projective_plane_and_products() {
        let p2 = SmoothCompleteFan2D::new(vec![vec![1, 0], vec![0, 1], vec![-1, -1]]).unwrap();
        assert_eq!(p2.wall_numbers(), &[-1, -1, -1]);
        assert_eq!(p2.intersection(0, 0), 1);
        let p1p1 = SmoothCompleteFan2D::new(vec![vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]]).unwrap();
        assert_eq!((p1p1.intersection(0, 1), p1p1.intersection(0, 0), p1p1.intersection(0, 2)), (1, 0, 0));
        // clockwise input is reoriented
        assert!(SmoothCompleteFan2D::new(vec![vec![1, 0], vec![0, -1], vec![-1, 0], vec![0, 1]]).is_ok());
    }

    #[test]
    fn hirzebruch() {
        let f2 = SmoothCompleteFan2D::new(vec![vec![1, 0], vec![0, 1], vec![-1, 2], vec![0, -1]]).unwrap();
        assert_eq!(f2.wall_numbers(), &[0, 2, 0, -2]);
    }

    #[test]
    fn rejects_singular_and_incomplete() {
        assert!(matches!(
            SmoothCompleteFan2D::new(vec![vec![2, 0], vec![0, 1], vec![-1, -1]]),
            Err(Error::InvalidFan(_))
        ));
        assert!(matches!(
            SmoothCompleteFan2D::new(vec![vec![2, 1], vec![-1, 1], vec![-1, -2]]),
            Err(Error::NotSmooth(_))
        ));
        assert!(SmoothCompleteFan2D::new(vec![vec![1, 0], vec![0, 1]]).is_err());
    }

    #[test]
    fn polygons() {
        let (fan, b) = SmoothCompleteFan2D::from_polygon(&LatticePolytope::simplex(2, 2)).unwrap();
        assert_eq!(fan.len(), 3);
        let d2: i64 = (0..3).flat_map(|i| (0..3).map(move |j| (i, j))).map(|(i, j)| b[i] * b[j] * fan.intersection(i, j)).sum();
        assert_eq!(d2, 4);
        assert!(SmoothCompleteFan2D::from_polygon(&LatticePolytope::new(vec![vec![0, 0], vec![2, 0], vec![0, 1]]).unwrap()).is_err());
    }
}
