use std::collections::{BTreeSet, HashSet};
use std::sync::OnceLock;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice;
use crate::linalg::{self, Vector};
use crate::rational::{primitive_integer_vector, q, Rational};
use crate::util::combinations;

/// Canonical sorted V-representation, usable as a map key.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellKey(pub Vec<Vector>, pub Vec<Vec<i64>>, pub Vec<Vec<i64>>);

/// `a · x = b` rows and `a · x ≥ b` rows.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct HRep {
    pub equations: Vec<(Vector, Rational)>,
    pub inequalities: Vec<(Vector, Rational)>,
}

/// A rational polyhedron `conv(vertices) + cone(rays) + span(lineality)`.
///
/// Rays and lineality generators are integer lattice directions; the
/// H-representation is derived on demand and cached.
#[derive(Clone, Debug)]
pub struct Polyhedron {
    vertices: Vec<Vector>,
    rays: Vec<Vec<i64>>,
    lineality: Vec<Vec<i64>>,
    hrep: OnceLock<HRep>,
    /// Generators are known to be irredundant and normalized.
    canonical: bool,
}

impl PartialEq for Polyhedron {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.rays == other.rays && self.lineality == other.lineality
    }
}

impl Polyhedron {
    /// Builds a polyhedron, normalizing rays to primitive vectors and
    /// lineality generators to sign-normalized primitive vectors.
    pub fn new(vertices: Vec<Vector>, rays: Vec<Vec<i64>>, lineality: Vec<Vec<i64>>) -> Result<Self> {
        let mut p = Self::from_raw(vertices, rays, lineality)?;
        let mut seen = BTreeSet::new();
        p.rays = p
            .rays
            .iter()
            .map(|r| lattice::primitive(r))
            .filter(|r| seen.insert(r.clone()))
            .collect();
        let mut seen = BTreeSet::new();
        p.lineality = p
            .lineality
            .iter()
            .map(|r| lattice::normalized_direction(r))
            .filter(|r| seen.insert(r.clone()))
            .collect();
        let mut seen = BTreeSet::new();
        p.vertices.retain(|v| seen.insert(v.clone()));
        Ok(p)
    }

    /// Keeps the generators exactly as given (used for validation input).
    pub fn from_raw(vertices: Vec<Vector>, rays: Vec<Vec<i64>>, lineality: Vec<Vec<i64>>) -> Result<Self> {
        let Some(first) = vertices.first() else {
            return Err(Error::Degenerate("polyhedron without vertices".into()));
        };
        let n = first.len();
        if n == 0 {
            return Err(Error::Dimension("ambient dimension must be at least 1".into()));
        }
        if vertices.iter().any(|v| v.len() != n)
            || rays.iter().chain(&lineality).any(|r| r.len() != n)
        {
            return Err(Error::Dimension("generators of differing lengths".into()));
        }
        if rays.iter().chain(&lineality).any(|r| r.iter().all(|x| *x == 0)) {
            return Err(Error::Degenerate("zero ray or lineality generator".into()));
        }
        Ok(Self { vertices, rays, lineality, hrep: OnceLock::new(), canonical: false })
    }

    pub fn point(x: Vector) -> Self {
        Self::new(vec![x], vec![], vec![]).expect("a point is a polyhedron")
    }

    /// Cone with apex at the origin.
    pub fn cone(n: usize, rays: Vec<Vec<i64>>, lineality: Vec<Vec<i64>>) -> Result<Self> {
        Self::new(vec![linalg::zero(n)], rays, lineality)
    }

    pub fn segment(a: Vector, b: Vector) -> Result<Self> {
        Self::new(vec![a, b], vec![], vec![])
    }

    pub fn ambient_dim(&self) -> usize {
        self.vertices[0].len()
    }

    pub fn vertices(&self) -> &[Vector] {
        &self.vertices
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    pub fn lineality(&self) -> &[Vec<i64>] {
        &self.lineality
    }

    pub fn is_bounded(&self) -> bool {
        self.rays.is_empty() && self.lineality.is_empty()
    }

    /// Generators of the direction space of the affine hull.
    pub fn direction_generators(&self) -> Vec<Vector> {
        let v0 = &self.vertices[0];
        let mut gens: Vec<Vector> = self.vertices[1..].iter().map(|v| linalg::sub(v, v0)).collect();
        gens.extend(self.rays.iter().map(|r| lattice::to_rational(r)));
        gens.extend(self.lineality.iter().map(|r| lattice::to_rational(r)));
        gens
    }

    pub fn direction_space(&self) -> Vec<Vector> {
        linalg::span_basis(&self.direction_generators())
    }

    pub fn dim(&self) -> usize {
        linalg::rank(&self.direction_generators())
    }

    pub fn lineality_dim(&self) -> usize {
        let l: Vec<Vector> = self.lineality.iter().map(|r| lattice::to_rational(r)).collect();
        linalg::rank(&l)
    }

    /// A point in the relative interior: vertex barycenter plus the ray sum.
    pub fn relint_point(&self) -> Vector {
        let n = self.ambient_dim();
        let k = q(self.vertices.len() as i64);
        let mut p = linalg::zero(n);
        for v in &self.vertices {
            p = linalg::add(&p, v);
        }
        p = p.iter().map(|x| x / &k).collect();
        for r in &self.rays {
            p = linalg::add(&p, &lattice::to_rational(r));
        }
        p
    }

    /// Marks the generators as irredundant; the caller vouches for it.
    pub(crate) fn assume_canonical(mut self) -> Self {
        self.canonical = true;
        self
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical
    }

    pub fn hrep(&self) -> &HRep {
        self.hrep.get_or_init(|| self.compute_hrep())
    }

    fn compute_hrep(&self) -> HRep {
        let n = self.ambient_dim();
        let v0 = self.vertices[0].clone();
        let dirs = self.direction_space();
        let d = dirs.len();
        let perp = linalg::nullspace(&dirs, n);
        let equations: Vec<(Vector, Rational)> = perp
            .iter()
            .map(|a| {
                let a = normalize_normal(a);
                let b = linalg::dot(&a, &v0);
                (a, b)
            })
            .collect();
        let lin: Vec<Vector> = self.lineality.iter().map(|r| lattice::to_rational(r)).collect();
        let l = linalg::rank(&lin);
        let mut inequalities: Vec<(Vector, Rational)> = Vec::new();
        if d > l {
            let need = d - 1 - l;
            let rays_int: Vec<Vec<i64>> = self.rays.clone();
            let mut tested: HashSet<(Vec<i64>, usize)> = HashSet::new();
            for (ui, u) in self.vertices.iter().enumerate() {
                // positive rescaling keeps signs, so test in integers
                let mut gens: Vec<Vec<i64>> = self
                    .vertices
                    .iter()
                    .filter(|v| *v != u)
                    .filter_map(|v| primitive_integer_vector(&linalg::sub(v, u)))
                    .collect();
                gens.extend(rays_int.iter().cloned());
                for subset in combinations(gens.len(), need) {
                    let mut rows: Vec<Vector> = perp.clone();
                    rows.extend(subset.iter().map(|&i| lattice::to_rational(&gens[i])));
                    rows.extend(lin.iter().cloned());
                    let ns = linalg::nullspace(&rows, n);
                    if ns.len() != 1 {
                        continue;
                    }
                    let Some(mut a) = primitive_integer_vector(&ns[0]) else { continue };
                    if a.iter().find(|x| **x != 0).is_some_and(|x| *x < 0) {
                        a.iter_mut().for_each(|x| *x = -*x);
                    }
                    if !tested.insert((a.clone(), ui)) {
                        continue;
                    }
                    let mut pos = false;
                    let mut neg = false;
                    for g in &gens {
                        let s: i128 = a.iter().zip(g).map(|(x, y)| *x as i128 * *y as i128).sum();
                        if s > 0 {
                            pos = true;
                        } else if s < 0 {
                            neg = true;
                        }
                    }
                    if pos && neg {
                        continue;
                    }
                    if neg {
                        a.iter_mut().for_each(|x| *x = -*x);
                    }
                    let a = lattice::to_rational(&a);
                    let b = linalg::dot(&a, u);
                    if !inequalities.iter().any(|(a2, b2)| *a2 == a && *b2 == b) {
                        inequalities.push((a, b));
                    }
                }
            }
        }
        HRep { equations, inequalities }
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        let h = self.hrep();
        h.equations.iter().all(|(a, b)| linalg::dot(a, x) == *b)
            && h.inequalities.iter().all(|(a, b)| linalg::dot(a, x) >= *b)
    }

    /// Is `x` in the relative interior?
    pub fn contains_relint(&self, x: &[Rational]) -> bool {
        let h = self.hrep();
        h.equations.iter().all(|(a, b)| linalg::dot(a, x) == *b)
            && h.inequalities.iter().all(|(a, b)| linalg::dot(a, x) > *b)
    }

    fn contains_direction(&self, r: &[Rational]) -> bool {
        let h = self.hrep();
        h.equations.iter().all(|(a, _)| linalg::dot(a, r).is_zero())
            && h.inequalities.iter().all(|(a, _)| !linalg::dot(a, r).is_negative())
    }

    fn contains_line(&self, r: &[Rational]) -> bool {
        let h = self.hrep();
        h.equations.iter().chain(&h.inequalities).all(|(a, _)| linalg::dot(a, r).is_zero())
    }

    pub fn contains_polyhedron(&self, other: &Polyhedron) -> bool {
        other.vertices.iter().all(|v| self.contains(v))
            && other.rays.iter().all(|r| self.contains_direction(&lattice::to_rational(r)))
            && other.lineality.iter().all(|r| self.contains_line(&lattice::to_rational(r)))
    }

    /// Equality as point sets.
    pub fn same_set(&self, other: &Polyhedron) -> bool {
        self.ambient_dim() == other.ambient_dim() && self.contains_polyhedron(other) && other.contains_polyhedron(self)
    }

    /// The face cut out by the supporting inequality `a · x ≥ b`.
    pub fn face_of(&self, a: &[Rational], b: &Rational) -> Option<Polyhedron> {
        let verts: Vec<Vector> = self.vertices.iter().filter(|v| linalg::dot(a, v) == *b).cloned().collect();
        if verts.is_empty() {
            return None;
        }
        let rays: Vec<Vec<i64>> =
            self.rays.iter().filter(|r| linalg::dot_int(r, a).is_zero()).cloned().collect();
        let mut f = Polyhedron::new(verts, rays, self.lineality.clone()).ok()?;
        f.canonical = self.canonical;
        Some(f)
    }

    pub fn facets(&self) -> Vec<Polyhedron> {
        // affinely independent generators: drop one at a time, keeping a vertex
        let (nv, nr) = (self.vertices.len(), self.rays.len());
        if self.canonical && self.lineality.is_empty() && nv + nr == self.dim() + 1 && self.dim() > 0 {
            let mut out = Vec::with_capacity(nv + nr);
            if nv > 1 {
                for i in 0..nv {
                    let mut v = self.vertices.clone();
                    v.remove(i);
                    out.push(Self::from_raw(v, self.rays.clone(), vec![]).expect("face").assume_canonical());
                }
            }
            for i in 0..nr {
                let mut r = self.rays.clone();
                r.remove(i);
                out.push(Self::from_raw(self.vertices.clone(), r, vec![]).expect("face").assume_canonical());
            }
            return out;
        }
        self.hrep()
            .inequalities
            .iter()
            .filter_map(|(a, b)| self.face_of(a, b))
            .collect()
    }

    /// Nonempty faces of every dimension, including the polyhedron itself.
    pub fn all_faces(&self) -> Vec<Polyhedron> {
        let mut out: Vec<Polyhedron> = vec![self.clone()];
        let mut frontier = vec![self.clone()];
        while let Some(p) = frontier.pop() {
            for f in p.facets() {
                if !out.iter().any(|g| g.same_set(&f)) {
                    out.push(f.clone());
                    frontier.push(f);
                }
            }
        }
        out
    }

    /// Is `other` a face of `self` (possibly equal)?
    pub fn has_face(&self, other: &Polyhedron) -> bool {
        if self.same_set(other) {
            return true;
        }
        if !self.contains_polyhedron(other) {
            return false;
        }
        // the smallest face containing `other` is cut out by all inequalities
        // tight on `other`; `other` is a face iff it equals that face
        let h = self.hrep();
        let x = other.relint_point();
        let tight: Vec<&(Vector, Rational)> =
            h.inequalities.iter().filter(|(a, b)| linalg::dot(a, &x) == *b).collect();
        let verts: Vec<Vector> = self
            .vertices
            .iter()
            .filter(|v| tight.iter().all(|(a, b)| linalg::dot(a, v) == *b))
            .cloned()
            .collect();
        let rays: Vec<Vec<i64>> = self
            .rays
            .iter()
            .filter(|r| tight.iter().all(|(a, _)| linalg::dot_int(r, a).is_zero()))
            .cloned()
            .collect();
        match Polyhedron::new(verts, rays, self.lineality.clone()) {
            Ok(face) => face.same_set(other),
            Err(_) => false,
        }
    }

    /// Order-independent identity of the underlying set.
    pub fn key(&self) -> CellKey {
        if self.canonical {
            let (mut v, mut r, mut l) = (self.vertices.clone(), self.rays.clone(), self.lineality.clone());
            v.sort();
            r.sort();
            l.sort();
            return CellKey(v, r, l);
        }
        let c = self.canonical();
        let mut v = c.vertices;
        v.sort();
        let mut r = c.rays;
        r.sort();
        let mut l = c.lineality;
        l.sort();
        CellKey(v, r, l)
    }

    /// Irredundant V-representation of the same set.
    pub fn canonical(&self) -> Polyhedron {
        if self.canonical {
            return self.clone();
        }
        let h = self.hrep();
        from_hrep(self.ambient_dim(), &h.equations, &h.inequalities).expect("nonempty polyhedron")
    }

    pub fn intersection(&self, other: &Polyhedron) -> Option<Polyhedron> {
        let (h1, h2) = (self.hrep(), other.hrep());
        let mut eqs = h1.equations.clone();
        eqs.extend(h2.equations.iter().cloned());
        let mut ineqs = h1.inequalities.clone();
        ineqs.extend(h2.inequalities.iter().cloned());
        from_hrep(self.ambient_dim(), &eqs, &ineqs)
    }

    /// Translate by `-x` and take the tangent cone at `x` (which must lie in
    /// the polyhedron).
    pub fn tangent_cone_at(&self, x: &[Rational]) -> Result<Polyhedron> {
        if !self.contains(x) {
            return Err(Error::NotInSupport("tangent cone at an outside point".into()));
        }
        let n = self.ambient_dim();
        let mut rays: Vec<Vec<i64>> = self
            .vertices
            .iter()
            .filter_map(|v| primitive_integer_vector(&linalg::sub(v, x)))
            .collect();
        rays.extend(self.rays.iter().cloned());
        Ok(Polyhedron::cone(n, rays, self.lineality.clone())?.canonical())
    }

    pub fn translate(&self, by: &[Rational]) -> Polyhedron {
        let verts = self.vertices.iter().map(|v| linalg::add(v, by)).collect();
        Polyhedron::new(verts, self.rays.clone(), self.lineality.clone()).expect("translation")
    }
}

/// Positive rescaling of a normal to a primitive integer vector.
fn normalize_normal(a: &[Rational]) -> Vector {
    match primitive_integer_vector(a) {
        Some(v) => lattice::to_rational(&v),
        None => a.to_vec(),
    }
}

/// Vertex/ray enumeration for `{x : E x = e, A x ≥ b}`; `None` if empty.
pub fn from_hrep(n: usize, eqs: &[(Vector, Rational)], ineqs: &[(Vector, Rational)]) -> Option<Polyhedron> {
    let normals: Vec<Vector> = eqs.iter().chain(ineqs).map(|(a, _)| a.clone()).collect();
    let lin_basis = linalg::nullspace(&normals, n);
    let lineality: Vec<Vec<i64>> = lin_basis.iter().filter_map(|v| primitive_integer_vector(v)).collect();
    let mut all_eqs: Vec<(Vector, Rational)> = eqs.to_vec();
    for l in &lin_basis {
        all_eqs.push((l.clone(), Rational::zero()));
    }
    let eq_rows: Vec<Vector> = all_eqs.iter().map(|(a, _)| a.clone()).collect();
    let r_eq = linalg::rank(&eq_rows);
    let feasible = |x: &[Rational]| {
        all_eqs.iter().all(|(a, b)| linalg::dot(a, x) == *b) && ineqs.iter().all(|(a, b)| linalg::dot(a, x) >= *b)
    };
    let mut vertices: Vec<Vector> = Vec::new();
    if r_eq > n {
        return None;
    }
    let need = n - r_eq;
    for subset in combinations(ineqs.len(), need) {
        let mut rows: Vec<(Vector, Rational)> = all_eqs.clone();
        rows.extend(subset.iter().map(|&i| ineqs[i].clone()));
        let Some(x) = solve_unique(&rows, n) else { continue };
        if feasible(&x) && !vertices.contains(&x) {
            vertices.push(x);
        }
    }
    if vertices.is_empty() {
        return None;
    }
    let mut rays: Vec<Vec<i64>> = Vec::new();
    if need >= 1 {
        for subset in combinations(ineqs.len(), need - 1) {
            let mut rows: Vec<Vector> = eq_rows.clone();
            rows.extend(subset.iter().map(|&i| ineqs[i].0.clone()));
            let ns = linalg::nullspace(&rows, n);
            if ns.len() != 1 {
                continue;
            }
            for sgn in [Rational::one(), -Rational::one()] {
                let r = linalg::scale(&ns[0], &sgn);
                let ok = eqs.iter().all(|(a, _)| linalg::dot(a, &r).is_zero())
                    && ineqs.iter().all(|(a, _)| !linalg::dot(a, &r).is_negative());
                if ok {
                    if let Some(ri) = primitive_integer_vector(&r) {
                        if !rays.contains(&ri) {
                            rays.push(ri);
                        }
                    }
                }
            }
        }
    }
    let mut p = Polyhedron::new(vertices, rays, lineality).ok()?;
    p.canonical = true;
    Some(p)
}

fn solve_unique(rows: &[(Vector, Rational)], n: usize) -> Option<Vector> {
    let aug: Vec<Vector> = rows
        .iter()
        .map(|(a, b)| {
            let mut r = a.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let (m, pivots) = linalg::rref(&aug);
    if pivots.len() != n || pivots.contains(&n) {
        return None;
    }
    let mut x = linalg::zero(n);
    for (row, &p) in m.iter().zip(&pivots) {
        x[p] = row[n].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{qf, qvec};

    fn square() -> Polyhedron {
        Polyhedron::new(vec![qvec(&[0, 0]), qvec(&[1, 0]), qvec(&[0, 1]), qvec(&[1, 1])], vec![], vec![]).unwrap()
    }

    #[test]
    fn square_hrep() {
        let s = square();
        assert_eq!(s.dim(), 2);
        assert_eq!(s.hrep().inequalities.len(), 4);
        assert!(s.contains(&[qf(1, 2), qf(1, 2)]));
        assert!(!s.contains(&[qf(3, 2), qf(1, 2)]));
        assert_eq!(s.facets().len(), 4);
        assert_eq!(s.all_faces().len(), 9);
    }

    #[test]
    fn cone_with_lineality() {
        let c = Polyhedron::cone(2, vec![vec![0, 1]], vec![vec![1, 0]]).unwrap();
        assert_eq!(c.dim(), 2);
        assert!(c.contains(&qvec(&[-5, 3])));
        assert!(!c.contains(&qvec(&[-5, -3])));
        assert_eq!(c.facets().len(), 1);
    }

    #[test]
    fn intersection_of_segments_is_midpoint() {
        let a = Polyhedron::segment(qvec(&[-1, 0]), qvec(&[1, 0])).unwrap();
        let b = Polyhedron::segment(qvec(&[0, -1]), qvec(&[0, 1])).unwrap();
        let i = a.intersection(&b).unwrap();
        assert_eq!(i.dim(), 0);
        assert_eq!(i.vertices()[0], qvec(&[0, 0]));
        assert!(!a.has_face(&i));
    }

    #[test]
    fn canonical_removes_redundancy() {
        let p = Polyhedron::new(
            vec![qvec(&[0, 0]), qvec(&[2, 0]), qvec(&[0, 2]), qvec(&[1, 0])],
            vec![],
            vec![],
        )
        .unwrap();
        assert_eq!(p.canonical().vertices().len(), 3);
        let c = Polyhedron::cone(2, vec![vec![1, 0], vec![-1, 0], vec![0, 1]], vec![]).unwrap();
        let cc = c.canonical();
        assert_eq!(cc.lineality().len(), 1);
        assert_eq!(cc.rays().len(), 1);
    }

    #[test]
    fn faces_detected() {
        let s = square();
        let edge = Polyhedron::segment(qvec(&[0, 0]), qvec(&[1, 0])).unwrap();
        assert!(s.has_face(&edge));
        let half = Polyhedron::segment(qvec(&[0, 0]), vec![qf(1, 2), q(0)]).unwrap();
        assert!(!s.has_face(&half));
    }
}
