use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::value::Value;

type AdaptorFn = dyn Fn(&[Value]) -> Vec<Value> + Send + Sync;

/// Reshapes the data arriving at one input port into what the machine
/// consumes during one synchronous step.
#[derive(Clone)]
pub enum Adaptor {
    /// Passes the list through.
    Identity,
    /// Keeps only the last value: `LI D ↦ D`.
    Last,
    /// Pads to length `n`: `D ↦ D ⊥…⊥`. When several values arrive the last
    /// one is kept.
    PadBot(usize),
    Custom {
        name: String,
        /// Output length when it is fixed, used by validation.
        output_len: Option<usize>,
        f: Arc<AdaptorFn>,
    },
}

impl Adaptor {
    pub fn custom(
        name: impl Into<String>,
        output_len: Option<usize>,
        f: impl Fn(&[Value]) -> Vec<Value> + Send + Sync + 'static,
    ) -> Self {
        Adaptor::Custom {
            name: name.into(),
            output_len,
            f: Arc::new(f),
        }
    }

    /// Length of the image, when it does not depend on the input.
    pub fn output_len(&self) -> Option<usize> {
        match self {
            Adaptor::Identity => None,
            Adaptor::Last => Some(1),
            Adaptor::PadBot(n) => Some(*n),
            Adaptor::Custom { output_len, .. } => *output_len,
        }
    }

    /// Applies the adaptor to a non-empty list.
    pub fn apply(&self, input: &[Value]) -> Vec<Value> {
        debug_assert!(!input.is_empty());
        match self {
            Adaptor::Identity => input.to_vec(),
            Adaptor::Last => input.last().copied().into_iter().collect(),
            Adaptor::PadBot(n) => {
                let mut out = Vec::with_capacity(*n);
                out.extend(input.last().copied());
                out.resize((*n).max(1), Value::Bot);
                out
            }
            Adaptor::Custom { f, .. } => f(input),
        }
    }
}

impl fmt::Debug for Adaptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Adaptor::Identity => write!(f, "Identity"),
            Adaptor::Last => write!(f, "Last"),
            Adaptor::PadBot(n) => write!(f, "PadBot({n})"),
            Adaptor::Custom { name, .. } => write!(f, "Custom({name})"),
        }
    }
}

/// Adaptors of an ensemble keyed by `(member, input port)`.
#[derive(Debug, Clone, Default)]
pub struct AdaptorTable {
    entries: BTreeMap<(String, String), Adaptor>,
}

impl AdaptorTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, component: &str, port: &str, adaptor: Adaptor) -> Self {
        self.insert(component, port, adaptor);
        self
    }

    pub fn insert(&mut self, component: &str, port: &str, adaptor: Adaptor) {
        self.entries
            .insert((component.to_string(), port.to_string()), adaptor);
    }

    pub fn get(&self, component: &str, port: &str) -> Option<&Adaptor> {
        self.entries.get(&(component.to_string(), port.to_string()))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(String, String), &Adaptor)> {
        self.entries.iter()
    }
}
