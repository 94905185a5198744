//! Matroids, Bergman fans and CSM cycles.

mod core;
mod fan;
pub mod json;

pub use self::core::{Matroid, MAX_GROUND};
pub use fan::{bergman_fan, csm_cycle, flat_vector, CsmCycle, FlagOfFlats};
