//! Runs the code listings of the guide in `book/` as doc-tests, one
//! module per chapter so a failure points at its chapter.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/cycles.md")]
pub mod cycles {}

#[doc = include_str!("../../../book/src/euler.md")]
pub mod euler {}

#[doc = include_str!("../../../book/src/riemann-roch.md")]
pub mod riemann_roch {}

#[doc = include_str!("../../../book/src/curves.md")]
pub mod curves {}

#[doc = include_str!("../../../book/src/matroids.md")]
pub mod matroids {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
