//! Constructible functions, Euler characteristics with and without compact
//! support, and the complement formulas for divisors.

pub mod complement;
pub mod stratification;

pub use complement::{
    chi_c_complement, chi_complement, chi_divisor, chi_relative_pair, chi_surface_complement, local_index_function,
    toric_stratification, ChiComplement, RelativePair,
};
pub use stratification::{ConstructibleFunction, Stratification};
