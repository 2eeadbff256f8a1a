use super::explore::bfs;
use super::{AnalysisError, ExploreOptions, PropRegistry, System};
use crate::ensemble::SystemState;

/// A state satisfying the search predicate and a shortest path to it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    /// Breadth-first index of the state.
    pub index: usize,
    /// States from the initial state to the solution, inclusive.
    pub path: Vec<SystemState>,
    /// Environment choice taken at each step of `path`.
    pub choices: Vec<usize>,
}

impl Solution {
    pub fn state(&self) -> &SystemState {
        self.path
            .last()
            .expect("path contains at least the initial state")
    }

    /// Number of steps from the initial state.
    pub fn depth(&self) -> usize {
        self.choices.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub solutions: Vec<Solution>,
    /// Distinct states visited.
    pub explored: usize,
}

/// Breadth-first search for up to `max` states within `bound_ms` that
/// satisfy the registered proposition `pred`.
pub fn search(
    system: &System,
    props: &PropRegistry,
    pred: &str,
    max: usize,
    bound_ms: u64,
    opts: &ExploreOptions,
) -> Result<SearchResult, AnalysisError> {
    let f = props
        .get(pred)
        .ok_or_else(|| AnalysisError::UnknownProp(pred.to_string()))?
        .clone();
    if max == 0 {
        return Ok(SearchResult {
            solutions: Vec::new(),
            explored: 0,
        });
    }
    let mut hits = Vec::new();
    let mut visit = |i: usize, s: &SystemState| {
        if f(s) {
            hits.push(i);
        }
        hits.len() >= max
    };
    let g = bfs(system, bound_ms, opts, Some(&mut visit))?;
    let solutions = hits
        .into_iter()
        .map(|i| {
            let (nodes, choices) = g.path_to(i);
            Solution {
                index: i,
                path: nodes.into_iter().map(|n| g.state(n).clone()).collect(),
                choices,
            }
        })
        .collect();
    Ok(SearchResult {
        solutions,
        explored: g.len(),
    })
}
