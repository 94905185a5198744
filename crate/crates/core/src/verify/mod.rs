//! End-to-end checks that bind the modules together, one command per
//! family of identities. Every check records both computation paths.

pub mod commands;
pub mod report;

pub use commands::{
    cmd_bertini, cmd_csm, cmd_curve, cmd_euler, cmd_hypersurface, cmd_surface, cmd_tpn, Options, PairJson, PolygonJson,
};
pub use report::{Check, Exact, Hypothesis, VerificationReport};
