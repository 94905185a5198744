//! Compact tropical curves as multigraphs.

mod complement;
mod graph;
pub mod json;
mod rank;

pub use complement::{chi_complement_curve, complement_cohomology_ranks, rr_number_curve, ComplementRanks};
pub use graph::{random_curve, random_regular_points, CurveDivisor, CurvePoint, Subdivided, TropicalCurveGraph};
pub use rank::{baker_norine_rank, brute_force_rank, is_equivalent_to_effective, q_reduce, rank_on_graph};
