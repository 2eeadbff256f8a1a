use std::any::Any;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use super::adaptor::AdaptorTable;
use super::connection::Connection;
use super::error::ExecError;
use crate::value::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    In,
    Out,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PortDecl {
    pub id: String,
    pub direction: Direction,
}

impl PortDecl {
    pub fn input(id: impl Into<String>) -> Self {
        Self {
            id: id.into(),
            direction: Direction::In,
        }
    }

    pub fn output(id: impl Into<String>) -> Self {
        Self {
            id: id.into(),
            direction: Direction::Out,
        }
    }
}

/// What a leaf machine sees while taking one internal transition.
#[derive(Debug, Clone, Copy)]
pub struct StepContext<'a> {
    pub component: &'a str,
    pub period_ms: u64,
}

/// A deterministic typed machine.
///
/// `delta` receives one value per input port (declaration order) and returns
/// one value per output port (declaration order). Implementations must be
/// pure functions of `self` and the inputs.
pub trait Behavior: Clone + Eq + Hash + fmt::Debug + Send + Sync + 'static {
    fn delta(&mut self, inputs: &[Value], ctx: &StepContext<'_>) -> Result<Vec<Value>, ExecError>;

    /// Copy with numeric fields rounded; used for approximate deduplication.
    fn quantized(&self, _decimals: u32) -> Self {
        self.clone()
    }
}

/// Object-safe view of a [`Behavior`], so that heterogeneous machines can
/// live in one tree.
pub trait Machine: fmt::Debug + Send + Sync {
    fn delta(&mut self, inputs: &[Value], ctx: &StepContext<'_>) -> Result<Vec<Value>, ExecError>;
    fn box_clone(&self) -> Box<dyn Machine>;
    fn box_quantized(&self, decimals: u32) -> Box<dyn Machine>;
    fn state_eq(&self, other: &dyn Machine) -> bool;
    fn state_hash(&self, state: &mut dyn Hasher);
    fn as_any(&self) -> &dyn Any;
}

impl<B: Behavior> Machine for B {
    fn delta(&mut self, inputs: &[Value], ctx: &StepContext<'_>) -> Result<Vec<Value>, ExecError> {
        Behavior::delta(self, inputs, ctx)
    }

    fn box_clone(&self) -> Box<dyn Machine> {
        Box::new(self.clone())
    }

    fn box_quantized(&self, decimals: u32) -> Box<dyn Machine> {
        Box::new(self.quantized(decimals))
    }

    fn state_eq(&self, other: &dyn Machine) -> bool {
        other.as_any().downcast_ref::<B>() == Some(self)
    }

    fn state_hash(&self, mut state: &mut dyn Hasher) {
        std::any::TypeId::of::<B>().hash(&mut state);
        self.hash(&mut state);
    }

    fn as_any(&self) -> &dyn Any {
        self
    }
}

/// Static part of a component: identity, timing and port signature.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentDecl {
    pub id: String,
    /// Deceleration factor relative to the enclosing ensemble.
    pub rate: u32,
    pub period_ms: u64,
    pub ports: Vec<PortDecl>,
}

/// Static part of an ensemble: connections and input adaptors.
#[derive(Debug, Clone, Default)]
pub struct Wiring {
    pub connections: Vec<Connection>,
    pub adaptors: AdaptorTable,
}

pub struct Ensemble {
    pub machines: Vec<Component>,
    pub wiring: Arc<Wiring>,
}

impl Ensemble {
    pub fn member(&self, id: &str) -> Option<&Component> {
        self.machines.iter().find(|m| m.id() == id)
    }

    pub fn member_mut(&mut self, id: &str) -> Option<&mut Component> {
        self.machines.iter_mut().find(|m| m.id() == id)
    }

    /// Mutable wiring; copies it first if it is shared with other states.
    pub fn wiring_mut(&mut self) -> &mut Wiring {
        Arc::make_mut(&mut self.wiring)
    }
}

pub enum Body {
    Leaf(Box<dyn Machine>),
    Ensemble(Ensemble),
}

/// A typed machine instance or a hierarchical ensemble (which is itself a
/// typed machine), together with the current content of its ports.
pub struct Component {
    decl: Arc<ComponentDecl>,
    contents: Vec<Vec<Value>>,
    body: Body,
}

impl Component {
    pub fn leaf(
        id: impl Into<String>,
        rate: u32,
        period_ms: u64,
        ports: Vec<PortDecl>,
        machine: impl Behavior,
    ) -> Self {
        Self::new(
            id.into(),
            rate,
            period_ms,
            ports,
            Body::Leaf(Box::new(machine)),
        )
    }

    pub fn ensemble(
        id: impl Into<String>,
        rate: u32,
        period_ms: u64,
        ports: Vec<PortDecl>,
        machines: Vec<Component>,
        wiring: Wiring,
    ) -> Self {
        Self::new(
            id.into(),
            rate,
            period_ms,
            ports,
            Body::Ensemble(Ensemble {
                machines,
                wiring: Arc::new(wiring),
            }),
        )
    }

    fn new(id: String, rate: u32, period_ms: u64, ports: Vec<PortDecl>, body: Body) -> Self {
        let contents = vec![Vec::new(); ports.len()];
        Self {
            decl: Arc::new(ComponentDecl {
                id,
                rate,
                period_ms,
                ports,
            }),
            contents,
            body,
        }
    }

    pub fn id(&self) -> &str {
        &self.decl.id
    }

    pub fn rate(&self) -> u32 {
        self.decl.rate
    }

    pub fn period_ms(&self) -> u64 {
        self.decl.period_ms
    }

    pub fn decl(&self) -> &ComponentDecl {
        &self.decl
    }

    /// Same component with a different rate and period.
    pub fn with_timing(mut self, rate: u32, period_ms: u64) -> Self {
        self.set_timing(rate, period_ms);
        self
    }

    pub fn set_timing(&mut self, rate: u32, period_ms: u64) {
        let decl = Arc::make_mut(&mut self.decl);
        decl.rate = rate;
        decl.period_ms = period_ms;
    }

    pub fn ports(&self) -> impl Iterator<Item = (&PortDecl, &[Value])> {
        self.decl
            .ports
            .iter()
            .zip(self.contents.iter().map(Vec::as_slice))
    }

    pub fn port_index(&self, id: &str) -> Option<usize> {
        self.decl.ports.iter().position(|p| p.id == id)
    }

    /// Content of a port, the `P ?= C` lookup.
    pub fn port_content(&self, id: &str) -> Option<&[Value]> {
        self.port_index(id).map(|i| self.contents[i].as_slice())
    }

    pub(crate) fn content_mut(&mut self, index: usize) -> &mut Vec<Value> {
        &mut self.contents[index]
    }

    pub fn set_port_content(&mut self, id: &str, values: Vec<Value>) -> bool {
        match self.port_index(id) {
            Some(i) => {
                self.contents[i] = values;
                true
            }
            None => false,
        }
    }

    pub fn body(&self) -> &Body {
        &self.body
    }

    pub(crate) fn parts_mut(&mut self) -> (&ComponentDecl, &mut [Vec<Value>], &mut Body) {
        (&self.decl, &mut self.contents, &mut self.body)
    }

    pub fn as_ensemble(&self) -> Option<&Ensemble> {
        match &self.body {
            Body::Ensemble(e) => Some(e),
            Body::Leaf(_) => None,
        }
    }

    pub fn as_ensemble_mut(&mut self) -> Option<&mut Ensemble> {
        match &mut self.body {
            Body::Ensemble(e) => Some(e),
            Body::Leaf(_) => None,
        }
    }

    /// The leaf machine downcast to its concrete behavior type.
    pub fn machine<B: Behavior>(&self) -> Option<&B> {
        match &self.body {
            Body::Leaf(m) => m.as_any().downcast_ref::<B>(),
            Body::Ensemble(_) => None,
        }
    }

    /// Finds a component by a dotted path of ids below this one, e.g.
    /// `"csystem.main"`. The empty path is `self`.
    pub fn find(&self, path: &str) -> Option<&Component> {
        if path.is_empty() {
            return Some(self);
        }
        let mut cur = self;
        for id in path.split('.') {
            cur = cur.as_ensemble()?.member(id)?;
        }
        Some(cur)
    }

    pub fn find_mut(&mut self, path: &str) -> Option<&mut Component> {
        if path.is_empty() {
            return Some(self);
        }
        let mut cur = self;
        for id in path.split('.') {
            cur = cur.as_ensemble_mut()?.member_mut(id)?;
        }
        Some(cur)
    }

    /// Visits this component and all descendants, parents first.
    pub fn walk<'a>(&'a self, f: &mut impl FnMut(&'a Component)) {
        f(self);
        if let Body::Ensemble(e) = &self.body {
            for m in &e.machines {
                m.walk(f);
            }
        }
    }

    /// Copy with every real rounded to `decimals` places.
    pub fn quantized(&self, decimals: u32) -> Component {
        let q = |v: &Value| v.map_reals(|x| crate::value::quantize(x, decimals));
        Component {
            decl: Arc::clone(&self.decl),
            contents: self
                .contents
                .iter()
                .map(|c| c.iter().map(q).collect())
                .collect(),
            body: match &self.body {
                Body::Leaf(m) => Body::Leaf(m.box_quantized(decimals)),
                Body::Ensemble(e) => Body::Ensemble(Ensemble {
                    machines: e.machines.iter().map(|m| m.quantized(decimals)).collect(),
                    wiring: Arc::clone(&e.wiring),
                }),
            },
        }
    }
}

impl Clone for Component {
    fn clone(&self) -> Self {
        Self {
            decl: Arc::clone(&self.decl),
            contents: self.contents.clone(),
            body: match &self.body {
                Body::Leaf(m) => Body::Leaf(m.box_clone()),
                Body::Ensemble(e) => Body::Ensemble(Ensemble {
                    machines: e.machines.clone(),
                    wiring: Arc::clone(&e.wiring),
                }),
            },
        }
    }
}

impl PartialEq for Component {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.decl, &other.decl) || self.decl == other.decl)
            && self.contents == other.contents
            && match (&self.body, &other.body) {
                (Body::Leaf(a), Body::Leaf(b)) => a.state_eq(b.as_ref()),
                (Body::Ensemble(a), Body::Ensemble(b)) => {
                    (Arc::ptr_eq(&a.wiring, &b.wiring)
                        || a.wiring.connections == b.wiring.connections)
                        && a.machines == b.machines
                }
                _ => false,
            }
    }
}

impl Eq for Component {}

impl Hash for Component {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.decl.id.hash(state);
        self.contents.hash(state);
        match &self.body {
            Body::Leaf(m) => m.state_hash(state),
            Body::Ensemble(e) => e.machines.hash(state),
        }
    }
}

impl fmt::Debug for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = f.debug_struct("Component");
        s.field("id", &self.decl.id)
            .field("rate", &self.decl.rate)
            .field("period_ms", &self.decl.period_ms);
        for (p, c) in self.ports() {
            s.field(&p.id, &c);
        }
        match &self.body {
            Body::Leaf(m) => s.field("state", m),
            Body::Ensemble(e) => s.field("machines", &e.machines),
        };
        s.finish()
    }
}
