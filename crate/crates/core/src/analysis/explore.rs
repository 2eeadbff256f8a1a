use indexmap::IndexSet;
use rayon::prelude::*;

use super::{AnalysisError, System};
use crate::ensemble::SystemState;

pub const DEFAULT_BUDGET: usize = 5_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExploreOptions {
    /// Round every real to this many decimals before deduplication.
    pub quantize: Option<u32>,
    /// Largest number of distinct states before giving up.
    pub budget: usize,
}

impl Default for ExploreOptions {
    fn default() -> Self {
        Self {
            quantize: None,
            budget: DEFAULT_BUDGET,
        }
    }
}

/// The reachable part of the step relation up to a time bound.
///
/// Node 0 is the initial state and nodes are numbered in breadth-first
/// order. Edge `k` of a node leads to its successor under environment
/// choice `k`. Frontier nodes are those whose next step would pass the
/// bound; they have no stored edges and are treated as stuttering forever.
#[derive(Debug, Clone)]
pub struct StateGraph {
    states: IndexSet<SystemState>,
    depth: Vec<u32>,
    parent: Vec<Option<(u32, u32)>>,
    edges: Vec<Vec<u32>>,
    frontier: Vec<bool>,
    layers: Vec<usize>,
    complete: bool,
}

impl StateGraph {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn state(&self, i: usize) -> &SystemState {
        &self.states[i]
    }

    pub fn states(&self) -> impl Iterator<Item = &SystemState> {
        self.states.iter()
    }

    pub fn index_of(&self, s: &SystemState) -> Option<usize> {
        self.states.get_index_of(s)
    }

    /// Breadth-first layer of node `i`, i.e. its number of steps from the
    /// initial state.
    pub fn depth(&self, i: usize) -> usize {
        self.depth[i] as usize
    }

    pub fn is_frontier(&self, i: usize) -> bool {
        self.frontier[i]
    }

    /// Successors of `i` by choice index (empty for frontier nodes).
    pub fn edges(&self, i: usize) -> &[u32] {
        &self.edges[i]
    }

    /// Successors in the Kripke structure: the edges, or a self-loop on a
    /// frontier node.
    pub fn kripke_successors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        let own = if self.frontier[i] { Some(i) } else { None };
        self.edges[i].iter().map(|&t| t as usize).chain(own)
    }

    /// First choice leading from `from` to `to`; `None` for the stutter
    /// loop of a frontier node or if there is no such edge.
    pub fn edge_choice(&self, from: usize, to: usize) -> Option<usize> {
        self.edges[from].iter().position(|&t| t as usize == to)
    }

    /// Number of distinct states discovered in each layer.
    pub fn layer_sizes(&self) -> &[usize] {
        &self.layers
    }

    /// False if exploration stopped before reaching the bound.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// A shortest path from the initial state to `i`, as the node sequence
    /// and the choice taken at each step.
    pub fn path_to(&self, i: usize) -> (Vec<usize>, Vec<usize>) {
        let mut nodes = vec![i];
        let mut choices = Vec::new();
        let mut cur = i;
        while let Some((p, c)) = self.parent[cur] {
            nodes.push(p as usize);
            choices.push(c as usize);
            cur = p as usize;
        }
        nodes.reverse();
        choices.reverse();
        (nodes, choices)
    }
}

/// Visits each newly discovered node; returning `true` stops exploration.
pub(crate) type Visitor<'a> = &'a mut dyn FnMut(usize, &SystemState) -> bool;

/// All states reachable within `bound_ms`, deduplicated by structural
/// equality (after optional quantization).
pub fn explore(
    system: &System,
    bound_ms: u64,
    opts: &ExploreOptions,
) -> Result<StateGraph, AnalysisError> {
    bfs(system, bound_ms, opts, None)
}

pub(crate) fn bfs(
    system: &System,
    bound_ms: u64,
    opts: &ExploreOptions,
    mut visit: Option<Visitor<'_>>,
) -> Result<StateGraph, AnalysisError> {
    let prepare = |s: SystemState| match opts.quantize {
        Some(d) => s.quantized(d),
        None => s,
    };
    let max_depth = system.steps_within(bound_ms) as u32;
    let mut g = StateGraph {
        states: IndexSet::new(),
        depth: Vec::new(),
        parent: Vec::new(),
        edges: Vec::new(),
        frontier: Vec::new(),
        layers: Vec::new(),
        complete: false,
    };
    let init = prepare(system.init.clone());
    g.states.insert(init);
    g.depth.push(0);
    g.parent.push(None);
    g.edges.push(Vec::new());
    g.frontier.push(max_depth == 0);
    g.layers.push(1);
    if let Some(v) = visit.as_mut() {
        if v(0, &g.states[0]) {
            return Ok(g);
        }
    }

    let mut layer = 0..1usize;
    for d in 0..max_depth {
        let succs: Vec<Vec<SystemState>> = layer
            .clone()
            .into_par_iter()
            .map(|i| {
                system
                    .successors(&g.states[i])
                    .map(|v| v.into_iter().map(prepare).collect())
            })
            .collect::<Result<_, _>>()?;
        let start = g.states.len();
        for (i, out) in layer.clone().zip(succs) {
            let mut targets = Vec::with_capacity(out.len());
            for (c, s) in out.into_iter().enumerate() {
                let (t, fresh) = g.states.insert_full(s);
                targets.push(t as u32);
                if !fresh {
                    continue;
                }
                if g.states.len() > opts.budget {
                    return Err(AnalysisError::Budget {
                        explored: g.states.len(),
                        budget: opts.budget,
                    });
                }
                g.depth.push(d + 1);
                g.parent.push(Some((i as u32, c as u32)));
                g.edges.push(Vec::new());
                g.frontier.push(d + 1 == max_depth);
                if let Some(v) = visit.as_mut() {
                    if v(t, &g.states[t]) {
                        g.edges[i] = targets;
                        return Ok(g);
                    }
                }
            }
            g.edges[i] = targets;
        }
        g.layers.push(g.states.len() - start);
        layer = start..g.states.len();
    }
    g.complete = true;
    Ok(g)
}
