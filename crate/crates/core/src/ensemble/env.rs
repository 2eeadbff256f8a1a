use std::collections::BTreeMap;
use std::fmt;

use super::error::ModelError;
use crate::value::Value;

/// One assignment of values to top-level environment input ports.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct EnvChoice(BTreeMap<String, Vec<Value>>);

impl EnvChoice {
    /// The choice that injects nothing.
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn single(port: impl Into<String>, values: Vec<Value>) -> Self {
        Self::default().with(port, values)
    }

    pub fn with(mut self, port: impl Into<String>, values: Vec<Value>) -> Self {
        self.0.insert(port.into(), values);
        self
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, port: &str) -> Option<&[Value]> {
        self.0.get(port).map(Vec::as_slice)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Vec<Value>)> {
        self.0.iter()
    }
}

impl fmt::Display for EnvChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "empty");
        }
        let mut first = true;
        for (port, values) in &self.0 {
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            write!(f, "{port} =")?;
            for v in values {
                write!(f, " {v}")?;
            }
        }
        Ok(())
    }
}

/// The declared environment alternatives, one per `possibleEnvOutput` rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnvSpec {
    choices: Vec<EnvChoice>,
}

impl EnvSpec {
    /// A closed, deterministic environment: the single empty choice.
    pub fn deterministic() -> Self {
        Self {
            choices: vec![EnvChoice::empty()],
        }
    }

    /// Alternatives in declaration order, duplicates merged.
    pub fn new(rules: impl IntoIterator<Item = EnvChoice>) -> Result<Self, ModelError> {
        let mut choices: Vec<EnvChoice> = Vec::new();
        for c in rules {
            if !choices.contains(&c) {
                choices.push(c);
            }
        }
        if choices.is_empty() {
            return Err(ModelError::NoEnvChoices);
        }
        Ok(Self { choices })
    }

    pub fn choices(&self) -> &[EnvChoice] {
        &self.choices
    }

    pub fn len(&self) -> usize {
        self.choices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.choices.is_empty()
    }
}
