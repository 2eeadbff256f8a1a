//! Simulation, bounded reachability search and time-bounded LTL model
//! checking over the synchronous step relation.

mod explore;
pub mod ltl;
mod props;
mod search;
mod simulate;


use thiserror::Error;

use crate::ensemble::{sync_step, EnvSpec, ExecError, SystemState};

pub use explore::{explore, ExploreOptions, StateGraph, DEFAULT_BUDGET};
pub use ltl::{check_graph, check_ltl, parse_formula, Formula, Lasso, ParseError, Verdict};
pub use props::{Predicate, PropRegistry};
pub use search::{search, SearchResult, Solution};
pub use simulate::{simulate, Policy, Trace, TraceStep};

/// An initial state together with the environment alternatives available
/// at every step.
#[derive(Debug, Clone)]
pub struct System {
    pub init: SystemState,
    pub env: EnvSpec,
}

impl System {
    pub fn new(init: SystemState, env: EnvSpec) -> Self {
        Self { init, env }
    }

    /// Period of the top component, i.e. the model time of one step.
    pub fn period_ms(&self) -> u64 {
        self.init.root.period_ms()
    }

    /// Number of whole steps that fit in `bound_ms`.
    pub fn steps_within(&self, bound_ms: u64) -> u64 {
        bound_ms / self.period_ms().max(1)
    }

    /// One successor per environment choice, in declaration order.
    pub fn successors(&self, s: &SystemState) -> Result<Vec<SystemState>, AnalysisError> {
        self.env.choices().iter().map(|c| self.step(s, c)).collect()
    }

    fn step(
        &self,
        s: &SystemState,
        choice: &crate::ensemble::EnvChoice,
    ) -> Result<SystemState, AnalysisError> {
        sync_step(s, choice).map_err(|source| AnalysisError::Exec {
            elapsed_ms: s.elapsed_ms,
            source,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalysisError {
    #[error("execution failed in the step starting at {elapsed_ms} ms: {source}")]
    Exec {
        elapsed_ms: u64,
        #[source]
        source: ExecError,
    },
    #[error("state budget of {budget} exceeded after {explored} states")]
    Budget { explored: usize, budget: usize },
    #[error("unknown proposition `{0}`")]
    UnknownProp(String),
    #[error("environment choice {index} does not exist ({available} available)")]
    InvalidChoice { index: usize, available: usize },
    #[error(transparent)]
    Parse(#[from] ParseError),
}
