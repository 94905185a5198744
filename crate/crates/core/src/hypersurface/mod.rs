//! Tropical polynomials, regular subdivisions, dual hypersurfaces and their
//! compactifications in toric varieties.

pub mod compact;
pub mod dual;
pub mod polynomial;
pub mod random;
pub mod subdivision;

pub use compact::{Orbit, Stratum, ToricHypersurface, UniformityReport};
pub use dual::{cartier_from_polynomial, dual_cell, region_complex, regions, tropical_hypersurface};
pub use polynomial::{PolynomialJson, TropicalPolynomial};
pub use random::{is_delzant, random_delzant_polygon, smooth_polynomial};
pub use subdivision::{RegularSubdivision, SubdivisionCell, SubdivisionFace};
