use std::collections::BTreeSet;

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice;
use crate::linalg;
use crate::rational::{q, to_i64};

use super::polyhedron::Polyhedron;

/// A lattice polytope given by its vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticePolytope {
    vertices: Vec<Vec<i64>>,
}

impl LatticePolytope {
    /// Convex hull of `points`; only the vertices are kept.
    pub fn new(points: Vec<Vec<i64>>) -> Result<Self> {
        let Some(first) = points.first() else {
            return Err(Error::Degenerate("empty point set".into()));
        };
        let n = first.len();
        if n == 0 || points.iter().any(|p| p.len() != n) {
            return Err(Error::Dimension("points of differing or zero length".into()));
        }
        let set: BTreeSet<Vec<i64>> = points.into_iter().collect();
        let pts: Vec<Vec<i64>> = set.into_iter().collect();
        let vertices = match n {
            1 => {
                let lo = pts.first().unwrap().clone();
                let hi = pts.last().unwrap().clone();
                if lo == hi {
                    vec![lo]
                } else {
                    vec![lo, hi]
                }
            }
            2 => hull_2d(&pts),
            _ => {
                let p = Polyhedron::new(pts.iter().map(|v| lattice::to_rational(v)).collect(), vec![], vec![])?;
                let mut v: Vec<Vec<i64>> = p
                    .canonical()
                    .vertices()
                    .iter()
                    .map(|v| v.iter().map(|x| to_i64(x).expect("lattice vertex")).collect())
                    .collect();
                v.sort();
                v
            }
        };
        Ok(Self { vertices })
    }

    /// `d·Δ_n = conv(0, d e_1, …, d e_n)`.
    pub fn simplex(d: i64, n: usize) -> Self {
        let mut vs = vec![vec![0; n]];
        for i in 0..n {
            let mut v = vec![0; n];
            v[i] = d;
            vs.push(v);
        }
        Self::new(vs).expect("simplex")
    }

    pub fn vertices(&self) -> &[Vec<i64>] {
        &self.vertices
    }

    pub fn ambient_dim(&self) -> usize {
        self.vertices[0].len()
    }

    pub fn polyhedron(&self) -> Polyhedron {
        Polyhedron::new(self.vertices.iter().map(|v| lattice::to_rational(v)).collect(), vec![], vec![])
            .expect("polytope")
    }

    pub fn dim(&self) -> usize {
        self.polyhedron().dim()
    }

    pub fn dilate(&self, d: i64) -> Self {
        Self::new(self.vertices.iter().map(|v| v.iter().map(|x| x * d).collect()).collect()).expect("dilation")
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.polyhedron().contains(&lattice::to_rational(x))
    }

    /// All lattice points, by a bounding-box scan.
    pub fn lattice_points(&self) -> Vec<Vec<i64>> {
        let p = self.polyhedron();
        self.scan(|x| p.contains(&lattice::to_rational(x)))
    }

    /// Lattice points in the relative interior.
    pub fn interior_lattice_points(&self) -> Vec<Vec<i64>> {
        let p = self.polyhedron();
        self.scan(|x| p.contains_relint(&lattice::to_rational(x)))
    }

    fn scan(&self, keep: impl Fn(&[i64]) -> bool) -> Vec<Vec<i64>> {
        let n = self.ambient_dim();
        let lo: Vec<i64> = (0..n).map(|i| self.vertices.iter().map(|v| v[i]).min().unwrap()).collect();
        let hi: Vec<i64> = (0..n).map(|i| self.vertices.iter().map(|v| v[i]).max().unwrap()).collect();
        let mut out = Vec::new();
        let mut x = lo.clone();
        loop {
            if keep(&x) {
                out.push(x.clone());
            }
            let mut i = 0;
            loop {
                if i == n {
                    return out;
                }
                if x[i] < hi[i] {
                    x[i] += 1;
                    break;
                }
                x[i] = lo[i];
                i += 1;
            }
        }
    }

    /// Twice the area of a lattice polygon (shoelace formula).
    pub fn twice_area(&self) -> Result<i64> {
        if self.ambient_dim() != 2 {
            return Err(Error::Dimension("twice_area needs a polygon".into()));
        }
        let v = &self.vertices;
        let k = v.len();
        let mut s = 0;
        for i in 0..k {
            let (a, b) = (&v[i], &v[(i + 1) % k]);
            s += a[0] * b[1] - a[1] * b[0];
        }
        Ok(s.abs())
    }

    /// Number of lattice points on the boundary of a polygon.
    pub fn boundary_count(&self) -> Result<i64> {
        if self.ambient_dim() != 2 {
            return Err(Error::Dimension("boundary_count needs a polygon".into()));
        }
        let v = &self.vertices;
        let k = v.len();
        if k == 1 {
            return Ok(1);
        }
        if k == 2 {
            return Ok(lattice::gcd(v[1][0] - v[0][0], v[1][1] - v[0][1]) + 1);
        }
        Ok((0..k)
            .map(|i| {
                let (a, b) = (&v[i], &v[(i + 1) % k]);
                lattice::gcd(b[0] - a[0], b[1] - a[1])
            })
            .sum())
    }

    /// Nonempty faces of every dimension, the polytope included.
    pub fn faces(&self) -> Vec<LatticePolytope> {
        self.polyhedron()
            .all_faces()
            .into_iter()
            .map(|f| LatticePolytope {
                vertices: {
                    let mut v: Vec<Vec<i64>> = f
                        .vertices()
                        .iter()
                        .map(|x| x.iter().map(|c| to_i64(c).expect("lattice face")).collect())
                        .collect();
                    v.sort();
                    v
                },
            })
            .collect()
    }

    /// Facets as `(outer primitive normal u, value max⟨u, x⟩)`.
    pub fn facet_normals(&self) -> Vec<(Vec<i64>, i64)> {
        let p = self.polyhedron();
        p.hrep()
            .inequalities
            .iter()
            .map(|(a, b)| {
                let u: Vec<i64> = a.iter().map(|x| -to_i64(x).expect("integral normal")).collect();
                (u, -to_i64(b).expect("integral offset"))
            })
            .collect()
    }
}

/// Counter-clockwise vertices of the convex hull of sorted, distinct points.
fn hull_2d(pts: &[Vec<i64>]) -> Vec<Vec<i64>> {
    if pts.len() <= 2 {
        return pts.to_vec();
    }
    let cross = |o: &Vec<i64>, a: &Vec<i64>, b: &Vec<i64>| {
        (a[0] - o[0]) as i128 * (b[1] - o[1]) as i128 - (a[1] - o[1]) as i128 * (b[0] - o[0]) as i128
    };
    let mut lower: Vec<Vec<i64>> = Vec::new();
    for p in pts {
        while lower.len() >= 2 && cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Vec<i64>> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// `|det(v_1 - v_0, …, v_n - v_0)|` for a full-dimensional lattice simplex.
pub fn normalized_volume(simplex: &[Vec<i64>]) -> Result<i64> {
    let Some(v0) = simplex.first() else {
        return Err(Error::Degenerate("empty simplex".into()));
    };
    let n = v0.len();
    if simplex.len() != n + 1 {
        return Err(Error::Degenerate(format!("{} points do not form a simplex in R^{n}", simplex.len())));
    }
    let rows: Vec<linalg::Vector> =
        simplex[1..].iter().map(|v| v.iter().zip(v0).map(|(a, b)| q(a - b)).collect()).collect();
    let d = linalg::det(&rows).abs();
    if d == q(0) {
        return Err(Error::Degenerate("simplex is not full-dimensional".into()));
    }
    Ok(to_i64(&d).expect("integral determinant"))
}
