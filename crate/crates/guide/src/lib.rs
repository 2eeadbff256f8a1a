//! Compiles the code listings of the book as doc-tests.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/ensembles.md")]
pub mod ensembles {}
#[doc = include_str!("../../../book/src/synchronous-step.md")]
pub mod synchronous_step {}
#[doc = include_str!("../../../book/src/analysis.md")]
pub mod analysis {}
#[doc = include_str!("../../../book/src/airplane.md")]
pub mod airplane {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
