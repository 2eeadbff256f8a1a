use std::fmt;
use std::str::FromStr;

use super::error::ModelError;

/// A port of a member machine, written `component.port`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Endpoint {
    pub component: String,
    pub port: String,
}

impl Endpoint {
    pub fn new(component: impl Into<String>, port: impl Into<String>) -> Self {
        Self {
            component: component.into(),
            port: port.into(),
        }
    }
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.component, self.port)
    }
}

/// One wire of an ensemble's wiring diagram.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Connection {
    /// Member output to member input. Values cross it at the next step.
    Internal { from: Endpoint, to: Endpoint },
    /// Ensemble input port to a member input.
    FromEnv { env_port: String, to: Endpoint },
    /// Member output to an ensemble output port.
    ToEnv { from: Endpoint, env_port: String },
}

impl Connection {
    pub fn internal(from: Endpoint, to: Endpoint) -> Self {
        Connection::Internal { from, to }
    }

    pub fn from_env(env_port: impl Into<String>, to: Endpoint) -> Self {
        Connection::FromEnv {
            env_port: env_port.into(),
            to,
        }
    }

    pub fn to_env(from: Endpoint, env_port: impl Into<String>) -> Self {
        Connection::ToEnv {
            from,
            env_port: env_port.into(),
        }
    }

    /// The member input this connection feeds, if any.
    pub fn destination(&self) -> Option<&Endpoint> {
        match self {
            Connection::Internal { to, .. } | Connection::FromEnv { to, .. } => Some(to),
            Connection::ToEnv { .. } => None,
        }
    }
}

impl fmt::Display for Connection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Connection::Internal { from, to } => write!(f, "{from} --> {to}"),
            Connection::FromEnv { env_port, to } => write!(f, "{env_port} --> {to}"),
            Connection::ToEnv { from, env_port } => write!(f, "{from} --> {env_port}"),
        }
    }
}

/// Parses `a.p --> b.q`, `p --> b.q` or `a.p --> q` (`->` is accepted too).
impl FromStr for Connection {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ModelError::BadConnection(s.to_string());
        let (lhs, rhs) = s
            .split_once("-->")
            .or_else(|| s.split_once("->"))
            .ok_or_else(bad)?;
        let side = |t: &str| -> Result<(Option<String>, String), ModelError> {
            let t = t.trim();
            let ok = |x: &str| !x.is_empty() && x.chars().all(|c| c.is_alphanumeric() || c == '_');
            match t.split_once('.') {
                Some((c, p)) if ok(c) && ok(p) => Ok((Some(c.to_string()), p.to_string())),
                None if ok(t) => Ok((None, t.to_string())),
                _ => Err(bad()),
            }
        };
        match (side(lhs)?, side(rhs)?) {
            ((Some(c1), p1), (Some(c2), p2)) => Ok(Connection::internal(
                Endpoint::new(c1, p1),
                Endpoint::new(c2, p2),
            )),
            ((None, p1), (Some(c2), p2)) => Ok(Connection::from_env(p1, Endpoint::new(c2, p2))),
            ((Some(c1), p1), (None, p2)) => Ok(Connection::to_env(Endpoint::new(c1, p1), p2)),
            _ => Err(bad()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_all_three_forms() {
        let c: Connection = "left.output --> main.inLW".parse().unwrap();
        assert_eq!(
            c,
            Connection::internal(
                Endpoint::new("left", "output"),
                Endpoint::new("main", "inLW")
            )
        );
        let c: Connection = "input -> pilot.input".parse().unwrap();
        assert_eq!(
            c,
            Connection::from_env("input", Endpoint::new("pilot", "input"))
        );
        let c: Connection = "csystem.output --> output".parse().unwrap();
        assert_eq!(c.to_string(), "csystem.output --> output");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!("a --> b".parse::<Connection>().is_err());
        assert!("a.b c.d".parse::<Connection>().is_err());
        assert!("a. --> c.d".parse::<Connection>().is_err());
    }
}
