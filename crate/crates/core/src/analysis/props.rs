use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::AnalysisError;
use crate::ensemble::SystemState;

pub type Predicate = Arc<dyn Fn(&SystemState) -> bool + Send + Sync>;

/// Named state propositions.
#[derive(Clone, Default)]
pub struct PropRegistry {
    props: BTreeMap<String, Predicate>,
}

impl PropRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(
        &mut self,
        name: impl Into<String>,
        f: impl Fn(&SystemState) -> bool + Send + Sync + 'static,
    ) {
        self.props.insert(name.into(), Arc::new(f));
    }

    pub fn with(
        mut self,
        name: impl Into<String>,
        f: impl Fn(&SystemState) -> bool + Send + Sync + 'static,
    ) -> Self {
        self.insert(name, f);
        self
    }

    pub fn get(&self, name: &str) -> Option<&Predicate> {
        self.props.get(name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.props.contains_key(name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.props.keys().map(String::as_str)
    }

    pub fn eval(&self, name: &str, s: &SystemState) -> Result<bool, AnalysisError> {
        self.get(name)
            .map(|f| f(s))
            .ok_or_else(|| AnalysisError::UnknownProp(name.to_string()))
    }
}

impl fmt::Debug for PropRegistry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.props.keys()).finish()
    }
}
