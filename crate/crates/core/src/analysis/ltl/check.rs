use std::collections::VecDeque;

use indexmap::IndexSet;
use rayon::prelude::*;

use super::buchi::{build, Arena, Automaton};
use super::formula::Formula;
use crate::analysis::{explore, AnalysisError, ExploreOptions, PropRegistry, StateGraph, System};

/// A behavior violating a formula: the prefix is followed by the cycle
/// repeated forever. Both hold node indices of the state graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lasso {
    pub prefix: Vec<usize>,
    pub cycle: Vec<usize>,
}

impl Lasso {
    /// The same infinite path with the shortest cycle and prefix.
    pub fn normalized(mut prefix: Vec<usize>, mut cycle: Vec<usize>) -> Self {
        let n = cycle.len();
        if let Some(p) =
            (1..=n).find(|&p| n.is_multiple_of(p) && (p..n).all(|i| cycle[i] == cycle[i - p]))
        {
            cycle.truncate(p);
        }
        while !cycle.is_empty() && prefix.last() == cycle.last() {
            prefix.pop();
            cycle.rotate_right(1);
        }
        Lasso { prefix, cycle }
    }

    /// Prefix, cycle and the return to the cycle's first node.
    pub fn unrolled(&self) -> Vec<usize> {
        let mut v = self.prefix.clone();
        v.extend(&self.cycle);
        v.extend(self.cycle.first());
        v
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Counterexample(Lasso),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn counterexample(&self) -> Option<&Lasso> {
        match self {
            Verdict::Holds => None,
            Verdict::Counterexample(l) => Some(l),
        }
    }
}

/// Explores the system up to `bound_ms` and checks `f` on every path, with
/// paths cut at the bound extended by stuttering on their last state.
pub fn check_ltl(
    system: &System,
    f: &Formula,
    props: &PropRegistry,
    bound_ms: u64,
    opts: &ExploreOptions,
) -> Result<(Verdict, StateGraph), AnalysisError> {
    resolve(f, props)?;
    let g = explore(system, bound_ms, opts)?;
    let v = check_graph(&g, f, props)?;
    Ok((v, g))
}

fn resolve(f: &Formula, props: &PropRegistry) -> Result<(), AnalysisError> {
    match f.props().into_iter().find(|p| !props.contains(p)) {
        Some(p) => Err(AnalysisError::UnknownProp(p.to_string())),
        None => Ok(()),
    }
}

/// Checks `f` on an already explored graph.
pub fn check_graph(
    g: &StateGraph,
    f: &Formula,
    props: &PropRegistry,
) -> Result<Verdict, AnalysisError> {
    resolve(f, props)?;
    let mut arena = Arena::default();
    let root = arena.nnf(f, true);
    let aut = build(&arena, root);

    let preds: Vec<_> = arena
        .props
        .iter()
        .map(|p| props.get(p).expect("resolved").clone())
        .collect();
    let labels: Vec<Vec<bool>> = (0..g.len())
        .into_par_iter()
        .map(|i| preds.iter().map(|p| p(g.state(i))).collect())
        .collect();
    let fits = |k: usize, q: usize| {
        aut.states[q]
            .literals
            .iter()
            .all(|&(p, b)| labels[k][p as usize] == b)
    };

    let product = Product::build(g, &aut, &fits);
    Ok(match product.accepting_cycle(&aut) {
        None => Verdict::Holds,
        Some((prefix, cycle)) => {
            let k = |v: Vec<usize>| v.into_iter().map(|n| product.nodes[n].0 as usize).collect();
            Verdict::Counterexample(Lasso::normalized(k(prefix), k(cycle)))
        }
    })
}

struct Product {
    /// (graph node, automaton state)
    nodes: IndexSet<(u32, u32)>,
    succ: Vec<Vec<u32>>,
    parent: Vec<Option<u32>>,
}

impl Product {
    fn build(g: &StateGraph, aut: &Automaton, fits: &dyn Fn(usize, usize) -> bool) -> Self {
        let mut p = Product {
            nodes: IndexSet::new(),
            succ: Vec::new(),
            parent: Vec::new(),
        };
        for &q in &aut.initial {
            if fits(0, q) && p.nodes.insert((0, q as u32)) {
                p.succ.push(Vec::new());
                p.parent.push(None);
            }
        }
        let mut at = 0;
        while at < p.nodes.len() {
            let (k, q) = p.nodes[at];
            let mut out = Vec::new();
            for k2 in g.kripke_successors(k as usize) {
                for &q2 in &aut.succ[q as usize] {
                    if !fits(k2, q2) {
                        continue;
                    }
                    let (id, fresh) = p.nodes.insert_full((k2 as u32, q2 as u32));
                    if fresh {
                        p.succ.push(Vec::new());
                        p.parent.push(Some(at as u32));
                    }
                    if !out.contains(&(id as u32)) {
                        out.push(id as u32);
                    }
                }
            }
            p.succ[at] = out;
            at += 1;
        }
        p
    }

    /// Strongly connected components (iterative Tarjan), each listed with
    /// its members.
    fn sccs(&self) -> Vec<Vec<usize>> {
        let n = self.nodes.len();
        let mut index = vec![u32::MAX; n];
        let mut low = vec![0u32; n];
        let mut on_stack = vec![false; n];
        let mut stack = Vec::new();
        let mut out = Vec::new();
        let mut counter = 0u32;
        let mut call: Vec<(usize, usize)> = Vec::new();
        for s in 0..n {
            if index[s] != u32::MAX {
                continue;
            }
            call.push((s, 0));
            index[s] = counter;
            low[s] = counter;
            counter += 1;
            stack.push(s);
            on_stack[s] = true;
            while let Some(&mut (v, ref mut ei)) = call.last_mut() {
                if let Some(&w) = self.succ[v].get(*ei) {
                    *ei += 1;
                    let w = w as usize;
                    if index[w] == u32::MAX {
                        index[w] = counter;
                        low[w] = counter;
                        counter += 1;
                        stack.push(w);
                        on_stack[w] = true;
                        call.push((w, 0));
                    } else if on_stack[w] {
                        low[v] = low[v].min(index[w]);
                    }
                    continue;
                }
                call.pop();
                if let Some(&(u, _)) = call.last() {
                    low[u] = low[u].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack");
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    out.push(comp);
                }
            }
        }
        out
    }

    /// A reachable cycle meeting every acceptance set, as the product path
    /// leading to it and the cycle itself.
    fn accepting_cycle(&self, aut: &Automaton) -> Option<(Vec<usize>, Vec<usize>)> {
        let mut best: Option<Vec<usize>> = None;
        for comp in self.sccs() {
            let nontrivial = comp.len() > 1 || self.succ[comp[0]].contains(&(comp[0] as u32));
            if !nontrivial {
                continue;
            }
            let meets_all = aut
                .accepting
                .iter()
                .all(|set| comp.iter().any(|&n| set[self.nodes[n].1 as usize]));
            if !meets_all {
                continue;
            }
            let entry = *comp.iter().min().expect("nonempty");
            if best.as_ref().is_none_or(|b| entry < b[0]) {
                let mut c = comp;
                c.sort_unstable();
                c.retain(|&x| x != entry);
                c.insert(0, entry);
                best = Some(c);
            }
        }
        let comp = best?;
        let entry = comp[0];
        let mut in_comp = vec![false; self.nodes.len()];
        for &n in &comp {
            in_comp[n] = true;
        }

        let mut prefix = Vec::new();
        let mut cur = self.parent[entry];
        while let Some(p) = cur {
            prefix.push(p as usize);
            cur = self.parent[p as usize];
        }
        prefix.reverse();

        let mut cycle = vec![entry];
        let mut at = entry;
        for set in &aut.accepting {
            if set[self.nodes[at].1 as usize] {
                continue;
            }
            let seg = self.path_within(at, &in_comp, |n| set[self.nodes[n].1 as usize]);
            at = *seg.last().expect("segment");
            cycle.extend(seg);
        }
        let back = self.path_within(at, &in_comp, |n| n == entry);
        cycle.extend(&back[..back.len() - 1]);
        Some((prefix, cycle))
    }

    /// Shortest path of at least one step from `from` to a node satisfying
    /// `goal`, staying inside the component; excludes `from`.
    fn path_within(
        &self,
        from: usize,
        in_comp: &[bool],
        goal: impl Fn(usize) -> bool,
    ) -> Vec<usize> {
        let mut prev = vec![usize::MAX; self.nodes.len()];
        let mut queue = VecDeque::new();
        for &w in &self.succ[from] {
            let w = w as usize;
            if in_comp[w] && prev[w] == usize::MAX {
                prev[w] = from;
                queue.push_back(w);
            }
        }
        while let Some(v) = queue.pop_front() {
            if goal(v) {
                let mut path = vec![v];
                let mut c = v;
                while prev[c] != from {
                    c = prev[c];
                    path.push(c);
                }
                path.reverse();
                return path;
            }
            for &w in &self.succ[v] {
                let w = w as usize;
                if in_comp[w] && prev[w] == usize::MAX {
                    prev[w] = v;
                    queue.push_back(w);
                }
            }
        }
        unreachable!("strongly connected component without the required path")
    }
}
