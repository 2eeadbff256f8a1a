//! Hierarchical multirate synchronous ensembles.
//!
//! A [`Component`] is either a leaf typed machine or an ensemble of
//! components wired together. Fast members run `rate` internal transitions
//! per step of their ensemble, and [`Adaptor`]s reshape the data crossing a
//! rate boundary.

mod adaptor;
mod component;
mod connection;
mod env;
mod error;
mod exec;
mod state;
mod validate;

#[cfg(test)]
mod tests;

pub use adaptor::{Adaptor, AdaptorTable};
pub use component::{
    Behavior, Body, Component, ComponentDecl, Direction, Ensemble, Machine, PortDecl, StepContext,
    Wiring,
};
pub use connection::{Connection, Endpoint};
pub use env::{EnvChoice, EnvSpec};
pub use error::{ExecError, ModelError};
pub use exec::{
    apply_adaptors, clear_outputs, delta, env_output, execute, k_delta, sync_step, transfer_inputs,
    transfer_results,
};
pub use state::SystemState;
pub use validate::{validate, ValidationReport, Violation};
