//! Cohomology rings of smooth complete toric instances and Riemann–Roch.

mod fan;
pub mod json;
mod ring;
mod todd;

pub use fan::SmoothCompleteFan2D;
pub use ring::{CohomologyClass, RrDifference, ToricSpace};
pub use todd::{
    bernoulli, characteristic_series, elementary_symmetric, one_variable_expansion, product_expansion, todd_polynomials,
    todd_table, ChernPolynomial, MSequenceTable, TODD_CAP,
};
