use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::lattice;
use crate::linalg::Vector;
use crate::rational::{format_rational, Rational};

use super::polyhedron::{CellKey, Polyhedron};

/// A finite polyhedral complex with an explicit cover relation.
///
/// `face_relation` holds `(face, cofacet)` index pairs of cells whose
/// dimensions differ by one; the full face poset is its transitive closure.
#[derive(Clone, Debug)]
pub struct PolyhedralComplex {
    ambient_dim: usize,
    cells: Vec<Polyhedron>,
    face_relation: Vec<(usize, usize)>,
    index: HashMap<CellKey, usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComplexIssue {
    NonPrimitiveRay { cell: usize, ray: Vec<i64> },
    MissingFace { cell: usize, face: String },
    NonFaceIntersection { first: usize, second: usize },
    BadFaceRelation { face: usize, cofacet: usize },
    DuplicateCell { first: usize, second: usize },
}

impl fmt::Display for ComplexIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComplexIssue::NonPrimitiveRay { cell, ray } => write!(f, "non-primitive ray {ray:?} in cell {cell}"),
            ComplexIssue::MissingFace { cell, face } => write!(f, "missing face {face} of cell {cell}"),
            ComplexIssue::NonFaceIntersection { first, second } => {
                write!(f, "non-face intersection of cells {first} and {second}")
            }
            ComplexIssue::BadFaceRelation { face, cofacet } => {
                write!(f, "cell {face} is not a facet of cell {cofacet}")
            }
            ComplexIssue::DuplicateCell { first, second } => write!(f, "cells {first} and {second} coincide"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub issues: Vec<ComplexIssue>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.issues.is_empty()
    }

    pub fn has_non_face_intersection(&self) -> bool {
        self.issues.iter().any(|i| matches!(i, ComplexIssue::NonFaceIntersection { .. }))
    }
}

impl PolyhedralComplex {
    pub fn empty(ambient_dim: usize) -> Self {
        Self { ambient_dim, cells: Vec::new(), face_relation: Vec::new(), index: HashMap::new() }
    }

    /// The complex generated by `cells` and all their faces.
    pub fn from_maximal_cells(ambient_dim: usize, cells: Vec<Polyhedron>) -> Result<Self> {
        let mut c = Self::empty(ambient_dim);
        for cell in cells {
            if cell.ambient_dim() != ambient_dim {
                return Err(Error::Dimension(format!(
                    "cell in R^{} inside a complex in R^{ambient_dim}",
                    cell.ambient_dim()
                )));
            }
            c.insert_with_faces(cell);
        }
        Ok(c)
    }

    /// Inserts `cell` and its faces, returning the index of `cell`.
    pub fn insert_with_faces(&mut self, cell: Polyhedron) -> usize {
        let cell = cell.canonical();
        let key = cell.key();
        if let Some(&i) = self.index.get(&key) {
            return i;
        }
        let i = self.cells.len();
        self.cells.push(cell.clone());
        self.index.insert(key, i);
        for facet in cell.facets() {
            let j = self.insert_with_faces(facet);
            self.face_relation.push((j, i));
        }
        i
    }

    /// Takes cells and a relation as given, without closing under faces.
    /// Intended for validating external input.
    pub fn from_parts(ambient_dim: usize, cells: Vec<Polyhedron>, face_relation: Vec<(usize, usize)>) -> Self {
        let mut index = HashMap::new();
        for (i, c) in cells.iter().enumerate() {
            index.entry(c.key()).or_insert(i);
        }
        Self { ambient_dim, cells, face_relation, index }
    }

    /// Takes cells as given and derives the cover relation geometrically.
    pub fn infer(ambient_dim: usize, cells: Vec<Polyhedron>) -> Self {
        let mut rel = Vec::new();
        for (i, a) in cells.iter().enumerate() {
            for (j, b) in cells.iter().enumerate() {
                if i != j && a.dim() + 1 == b.dim() && b.has_face(a) {
                    rel.push((i, j));
                }
            }
        }
        Self::from_parts(ambient_dim, cells, rel)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn cells(&self) -> &[Polyhedron] {
        &self.cells
    }

    pub fn cell(&self, i: usize) -> &Polyhedron {
        &self.cells[i]
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn face_relation(&self) -> &[(usize, usize)] {
        &self.face_relation
    }

    pub fn index_of(&self, p: &Polyhedron) -> Option<usize> {
        self.index.get(&p.key()).copied()
    }

    pub fn facets_of(&self, i: usize) -> Vec<usize> {
        self.face_relation.iter().filter(|(_, c)| *c == i).map(|(f, _)| *f).collect()
    }

    /// Cofacets of every cell at once.
    pub fn cofacet_lists(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.cells.len()];
        for &(f, c) in &self.face_relation {
            out[f].push(c);
        }
        out
    }

    pub fn cofacets_of(&self, i: usize) -> Vec<usize> {
        self.face_relation.iter().filter(|(f, _)| *f == i).map(|(_, c)| *c).collect()
    }

    /// Dimension of the largest cell; `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.cells.iter().map(|c| c.dim()).max()
    }

    pub fn cells_of_dim(&self, k: usize) -> Vec<usize> {
        (0..self.cells.len()).filter(|&i| self.cells[i].dim() == k).collect()
    }

    /// Cells that are not a proper face of another cell.
    pub fn maximal_cells(&self) -> Vec<usize> {
        let mut has_cofacet = vec![false; self.cells.len()];
        for &(f, _) in &self.face_relation {
            has_cofacet[f] = true;
        }
        (0..self.cells.len()).filter(|&i| !has_cofacet[i]).collect()
    }

    pub fn support_contains(&self, x: &[Rational]) -> bool {
        self.cells.iter().any(|c| c.contains(x))
    }

    pub fn cells_containing(&self, x: &[Rational]) -> Vec<usize> {
        (0..self.cells.len()).filter(|&i| self.cells[i].contains(x)).collect()
    }

    /// The unique cell whose relative interior contains `x`.
    pub fn carrier(&self, x: &[Rational]) -> Option<usize> {
        (0..self.cells.len()).find(|&i| self.cells[i].contains_relint(x))
    }

    /// All cells are cones with apex at the origin.
    pub fn is_fan(&self) -> bool {
        self.cells.iter().all(|c| c.vertices().len() == 1 && c.vertices()[0].iter().all(|x| *x == Rational::from_integer(0.into())))
    }

    pub fn is_bounded(&self) -> bool {
        self.cells.iter().all(|c| c.is_bounded())
    }

    /// Star of `x`, recentred at the origin: the tangent cones at `x` of the
    /// cells containing it.
    pub fn local_cone(&self, x: &[Rational]) -> Result<PolyhedralComplex> {
        if x.len() != self.ambient_dim {
            return Err(Error::Dimension("point and complex dimensions differ".into()));
        }
        let cones: Vec<Polyhedron> = self
            .cells_containing(x)
            .into_iter()
            .map(|i| self.cells[i].tangent_cone_at(x))
            .collect::<Result<_>>()?;
        if cones.is_empty() {
            return Err(Error::NotInSupport(format!("{:?}", x.iter().map(format_rational).collect::<Vec<_>>())));
        }
        PolyhedralComplex::from_maximal_cells(self.ambient_dim, cones)
    }

    /// Checks the complex axioms and returns every violation found.
    pub fn validate(&self) -> ValidationReport {
        let mut issues = Vec::new();
        for (i, c) in self.cells.iter().enumerate() {
            for r in c.rays().iter().chain(c.lineality()) {
                if !lattice::is_primitive(r) {
                    issues.push(ComplexIssue::NonPrimitiveRay { cell: i, ray: r.clone() });
                }
            }
            for f in c.facets() {
                if !self.cells.iter().any(|d| d.same_set(&f)) {
                    issues.push(ComplexIssue::MissingFace { cell: i, face: describe(&f) });
                }
            }
        }
        for i in 0..self.cells.len() {
            for j in i + 1..self.cells.len() {
                let (a, b) = (&self.cells[i], &self.cells[j]);
                if a.same_set(b) {
                    issues.push(ComplexIssue::DuplicateCell { first: i, second: j });
                    continue;
                }
                if let Some(m) = a.intersection(b) {
                    if !(a.has_face(&m) && b.has_face(&m)) {
                        issues.push(ComplexIssue::NonFaceIntersection { first: i, second: j });
                    }
                }
            }
        }
        for &(f, c) in &self.face_relation {
            let ok = f < self.cells.len()
                && c < self.cells.len()
                && self.cells[f].dim() + 1 == self.cells[c].dim()
                && self.cells[c].has_face(&self.cells[f]);
            if !ok {
                issues.push(ComplexIssue::BadFaceRelation { face: f, cofacet: c });
            }
        }
        ValidationReport { issues }
    }

    /// Relative-interior points of all cells, one per cell.
    pub fn sample_points(&self) -> Vec<Vector> {
        self.cells.iter().map(|c| c.relint_point()).collect()
    }
}

fn describe(p: &Polyhedron) -> String {
    let verts: Vec<String> = p
        .vertices()
        .iter()
        .map(|v| format!("({})", v.iter().map(format_rational).collect::<Vec<_>>().join(",")))
        .collect();
    format!("conv{{{}}} + rays{:?}", verts.join(","), p.rays())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qvec;

    fn tropical_line() -> PolyhedralComplex {
        let rays = [vec![1, 0], vec![0, 1], vec![-1, -1]];
        let cells = rays.iter().map(|r| Polyhedron::cone(2, vec![r.clone()], vec![]).unwrap()).collect();
        PolyhedralComplex::from_maximal_cells(2, cells).unwrap()
    }

    #[test]
    fn point_is_valid() {
        let c = PolyhedralComplex::from_maximal_cells(2, vec![Polyhedron::point(qvec(&[0, 0]))]).unwrap();
        assert!(c.validate().is_valid());
        let lc = c.local_cone(&qvec(&[0, 0])).unwrap();
        assert_eq!(lc.len(), 1);
        assert_eq!(lc.cell(0).dim(), 0);
    }

    #[test]
    fn crossing_segments_are_invalid() {
        let a = Polyhedron::segment(qvec(&[-1, 0]), qvec(&[1, 0])).unwrap();
        let b = Polyhedron::segment(qvec(&[0, -1]), qvec(&[0, 1])).unwrap();
        let c = PolyhedralComplex::from_maximal_cells(2, vec![a, b]).unwrap();
        let report = c.validate();
        assert!(report.has_non_face_intersection());
    }

    #[test]
    fn line_is_valid_with_local_cones() {
        let line = tropical_line();
        assert_eq!(line.len(), 4);
        assert!(line.validate().is_valid());
        let at_origin = line.local_cone(&qvec(&[0, 0])).unwrap();
        assert_eq!(at_origin.cells_of_dim(1).len(), 3);
        let on_ray = line.local_cone(&qvec(&[3, 0])).unwrap();
        assert_eq!(on_ray.len(), 1);
        assert_eq!(on_ray.cell(0).lineality_dim(), 1);
        assert!(line.local_cone(&qvec(&[1, 1])).is_err());
    }

    #[test]
    fn non_primitive_ray_reported() {
        let o = Polyhedron::point(qvec(&[0, 0]));
        let r = Polyhedron::from_raw(vec![qvec(&[0, 0])], vec![vec![2, 0]], vec![]).unwrap();
        let c = PolyhedralComplex::from_parts(2, vec![o, r], vec![(0, 1)]);
        assert!(c
            .validate()
            .issues
            .iter()
            .any(|i| matches!(i, ComplexIssue::NonPrimitiveRay { .. })));
    }
}
