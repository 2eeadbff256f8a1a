//! Negation normal form and the tableau construction of a generalized
//! Büchi automaton (Gerth, Peled, Vardi and Wolper).

use std::collections::BTreeSet;

use indexmap::IndexSet;

use super::formula::Formula;

pub(crate) type Id = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) enum Node {
    True,
    False,
    /// Proposition index and polarity.
    Lit(u32, bool),
    And(Id, Id),
    Or(Id, Id),
    Next(Id),
    Until(Id, Id),
    Release(Id, Id),
}

/// Hash-consed NNF subformulas and the propositions they mention.
#[derive(Debug, Default)]
pub(crate) struct Arena {
    pub nodes: IndexSet<Node>,
    pub props: IndexSet<String>,
}

impl Arena {
    fn mk(&mut self, n: Node) -> Id {
        self.nodes.insert_full(n).0 as Id
    }

    pub fn node(&self, id: Id) -> Node {
        self.nodes[id as usize]
    }

    /// NNF of `f`, or of `¬f` when `neg` holds.
    pub fn nnf(&mut self, f: &Formula, neg: bool) -> Id {
        use Formula as F;
        match (f, neg) {
            (F::True, false) | (F::False, true) => self.mk(Node::True),
            (F::True, true) | (F::False, false) => self.mk(Node::False),
            (F::Prop(p), _) => {
                let i = self.props.insert_full(p.clone()).0 as u32;
                self.mk(Node::Lit(i, !neg))
            }
            (F::Not(a), _) => self.nnf(a, !neg),
            (F::And(a, b), false) | (F::Or(a, b), true) => {
                let (a, b) = (self.nnf(a, neg), self.nnf(b, neg));
                self.mk(Node::And(a, b))
            }
            (F::Or(a, b), false) | (F::And(a, b), true) => {
                let (a, b) = (self.nnf(a, neg), self.nnf(b, neg));
                self.mk(Node::Or(a, b))
            }
            (F::Implies(a, b), false) => {
                let (a, b) = (self.nnf(a, true), self.nnf(b, false));
                self.mk(Node::Or(a, b))
            }
            (F::Implies(a, b), true) => {
                let (a, b) = (self.nnf(a, false), self.nnf(b, true));
                self.mk(Node::And(a, b))
            }
            (F::Next(a), _) => {
                let a = self.nnf(a, neg);
                self.mk(Node::Next(a))
            }
            (F::Until(a, b), false) => {
                let (a, b) = (self.nnf(a, false), self.nnf(b, false));
                self.mk(Node::Until(a, b))
            }
            (F::Until(a, b), true) => {
                let (a, b) = (self.nnf(a, true), self.nnf(b, true));
                self.mk(Node::Release(a, b))
            }
            (F::Eventually(a), false) | (F::Always(a), true) => {
                let t = self.mk(Node::True);
                let a = self.nnf(a, neg);
                self.mk(Node::Until(t, a))
            }
            (F::Always(a), false) | (F::Eventually(a), true) => {
                let ff = self.mk(Node::False);
                let a = self.nnf(a, neg);
                self.mk(Node::Release(ff, a))
            }
        }
    }
}

/// One automaton state: the literals that must hold in the current
/// position and the predecessors it can be entered from.
#[derive(Debug, Clone)]
pub(crate) struct State {
    /// Predecessor states; `None` marks an initial state.
    pub incoming: BTreeSet<Option<usize>>,
    pub old: BTreeSet<Id>,
    pub next: BTreeSet<Id>,
    pub literals: Vec<(u32, bool)>,
}

#[derive(Debug)]
pub(crate) struct Automaton {
    pub states: Vec<State>,
    pub initial: Vec<usize>,
    /// `succ[q]` lists the states that can follow `q`.
    pub succ: Vec<Vec<usize>>,
    /// One membership vector per acceptance set.
    pub accepting: Vec<Vec<bool>>,
}

struct Pending {
    incoming: BTreeSet<Option<usize>>,
    new: BTreeSet<Id>,
    old: BTreeSet<Id>,
    next: BTreeSet<Id>,
}

/// Builds the automaton accepting exactly the runs that satisfy `root`.
pub(crate) fn build(arena: &Arena, root: Id) -> Automaton {
    let mut states: Vec<State> = Vec::new();
    let mut work = vec![Pending {
        incoming: BTreeSet::from([None]),
        new: BTreeSet::from([root]),
        old: BTreeSet::new(),
        next: BTreeSet::new(),
    }];
    while let Some(mut n) = work.pop() {
        let Some(eta) = n.new.pop_first() else {
            if let Some(s) = states
                .iter_mut()
                .find(|s| s.old == n.old && s.next == n.next)
            {
                s.incoming.extend(n.incoming);
                continue;
            }
            let id = states.len();
            let literals = n
                .old
                .iter()
                .filter_map(|&f| match arena.node(f) {
                    Node::Lit(p, b) => Some((p, b)),
                    _ => None,
                })
                .collect();
            work.push(Pending {
                incoming: BTreeSet::from([Some(id)]),
                new: n.next.clone(),
                old: BTreeSet::new(),
                next: BTreeSet::new(),
            });
            states.push(State {
                incoming: n.incoming,
                old: n.old,
                next: n.next,
                literals,
            });
            continue;
        };
        if n.old.contains(&eta) {
            work.push(n);
            continue;
        }
        match arena.node(eta) {
            Node::False => {}
            Node::True => {
                n.old.insert(eta);
                work.push(n);
            }
            Node::Lit(p, b) => {
                let contra = arena.nodes.get_index_of(&Node::Lit(p, !b));
                if contra.is_some_and(|c| n.old.contains(&(c as Id))) {
                    continue;
                }
                n.old.insert(eta);
                work.push(n);
            }
            Node::And(a, b) => {
                for x in [a, b] {
                    if !n.old.contains(&x) {
                        n.new.insert(x);
                    }
                }
                n.old.insert(eta);
                work.push(n);
            }
            Node::Next(a) => {
                n.old.insert(eta);
                n.next.insert(a);
                work.push(n);
            }
            Node::Or(a, b) => split(n, eta, &[a], &[], &[b], &mut work),
            Node::Until(a, b) => split(n, eta, &[a], &[eta], &[b], &mut work),
            Node::Release(a, b) => split(n, eta, &[b], &[eta], &[a, b], &mut work),
        }
    }

    let mut succ = vec![Vec::new(); states.len()];
    let mut initial = Vec::new();
    for (q, s) in states.iter().enumerate() {
        for inc in &s.incoming {
            match inc {
                None => initial.push(q),
                Some(p) => succ[*p].push(q),
            }
        }
    }
    let mut accepting = Vec::new();
    for (u, node) in arena.nodes.iter().enumerate() {
        if let Node::Until(_, b) = node {
            let u = u as Id;
            if !states.iter().any(|s| s.old.contains(&u)) {
                continue;
            }
            accepting.push(
                states
                    .iter()
                    .map(|s| !s.old.contains(&u) || s.old.contains(b))
                    .collect(),
            );
        }
    }
    Automaton {
        states,
        initial,
        succ,
        accepting,
    }
}

fn split(n: Pending, eta: Id, new1: &[Id], next1: &[Id], new2: &[Id], work: &mut Vec<Pending>) {
    let mut old = n.old;
    old.insert(eta);
    let mk = |add_new: &[Id], add_next: &[Id]| {
        let mut new = n.new.clone();
        new.extend(add_new.iter().filter(|x| !old.contains(x)));
        let mut next = n.next.clone();
        next.extend(add_next);
        Pending {
            incoming: n.incoming.clone(),
            new,
            old: old.clone(),
            next,
        }
    };
    let first = mk(new1, next1);
    let second = mk(new2, &[]);
    work.push(second);
    work.push(first);
}
