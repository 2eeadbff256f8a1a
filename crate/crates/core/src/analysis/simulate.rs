use super::{AnalysisError, System};
use crate::ensemble::SystemState;

/// How [`simulate`] picks an environment choice at each step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Policy {
    /// The same choice every step.
    Fixed(usize),
    /// The listed choices in order, then `then` forever.
    Script { choices: Vec<usize>, then: usize },
}

impl Policy {
    /// Always the first choice, which is the only one of a closed model.
    pub fn deterministic() -> Self {
        Policy::Fixed(0)
    }

    pub fn script(choices: Vec<usize>) -> Self {
        Policy::Script { choices, then: 0 }
    }

    pub fn choice_at(&self, step: usize) -> usize {
        match self {
            Policy::Fixed(c) => *c,
            Policy::Script { choices, then } => choices.get(step).copied().unwrap_or(*then),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    /// Index into the system's environment choices.
    pub choice: usize,
    pub state: SystemState,
}

/// One behavior: the initial state and the steps taken from it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    pub initial: SystemState,
    pub steps: Vec<TraceStep>,
}

impl Trace {
    /// Number of steps, not counting the initial state.
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn last_state(&self) -> &SystemState {
        self.steps.last().map_or(&self.initial, |s| &s.state)
    }

    /// The initial state followed by every reached state.
    pub fn states(&self) -> impl Iterator<Item = &SystemState> {
        std::iter::once(&self.initial).chain(self.steps.iter().map(|s| &s.state))
    }

    pub fn elapsed_ms(&self) -> u64 {
        self.last_state().elapsed_ms
    }
}

/// Runs `⌊bound / period⌋` steps from the initial state.
pub fn simulate(system: &System, policy: &Policy, bound_ms: u64) -> Result<Trace, AnalysisError> {
    let n = system.steps_within(bound_ms) as usize;
    let choices = system.env.choices();
    let mut steps: Vec<TraceStep> = Vec::with_capacity(n);
    for k in 0..n {
        let choice = policy.choice_at(k);
        let c = choices.get(choice).ok_or(AnalysisError::InvalidChoice {
            index: choice,
            available: choices.len(),
        })?;
        let prev = steps.last().map_or(&system.init, |s| &s.state);
        let state = system.step(prev, c)?;
        steps.push(TraceStep { choice, state });
    }
    Ok(Trace {
        initial: system.init.clone(),
        steps,
    })
}
