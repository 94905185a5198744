pub mod curve;
pub mod cycle;
pub mod error;
pub mod euler;
pub mod hypersurface;
pub mod lattice;
pub mod linalg;
pub mod matroid;
pub mod polyhedral;
pub mod rational;
pub mod toric;
pub mod util;
pub mod verify;

pub use error::{Error, Result};
pub use rational::{ExtRational, Rational};
