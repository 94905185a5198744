//! Tropical cycles, Cartier functions and their intersection products.

pub mod cartier;
#[allow(clippy::module_inception)]
pub mod cycle;
pub mod intersect;
pub mod json;
pub mod position;
pub mod support;
pub mod tower;

pub use cartier::{max_of_coordinates, AffinePiece, CartierFunction};
pub use cycle::{ray_fan, BalancingReport, TropicalCycle};
pub use intersect::{divisor_intersect, refine};
pub use position::{moderate_position, relatively_uniform, self_intersection_support, ModerateOutcome, Uniformity};
pub use support::{support_equal, support_subset};
pub use tower::{power_tower, DivisorPowerTower};
