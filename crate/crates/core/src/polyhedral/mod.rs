//! Exact rational polyhedra, complexes, fans and lattice polytopes.

pub mod complex;
pub mod fan;
pub mod json;
pub mod point;
pub mod polyhedron;
pub mod polytope;

pub use complex::{ComplexIssue, PolyhedralComplex, ValidationReport};
pub use fan::lineality_space;
pub use point::{sedentarity, RationalPoint};
pub use polyhedron::{from_hrep, CellKey, HRep, Polyhedron};
pub use polytope::{normalized_volume, LatticePolytope};
