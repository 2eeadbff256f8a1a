use std::collections::{BTreeMap, HashSet};
use std::fmt;

use super::component::{Component, Direction};
use super::connection::{Connection, Endpoint};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NonPositiveTiming {
        component: String,
    },
    DuplicatePort {
        component: String,
        port: String,
    },
    DuplicateMachine {
        ensemble: String,
        machine: String,
    },
    DanglingEndpoint {
        ensemble: String,
        endpoint: String,
    },
    WrongDirection {
        ensemble: String,
        endpoint: String,
    },
    SourceCount {
        ensemble: String,
        input: Endpoint,
        sources: usize,
    },
    FastToFast {
        ensemble: String,
        from: Endpoint,
        to: Endpoint,
    },
    RatePeriod {
        ensemble: String,
        machine: String,
        rate: u32,
        period_ms: u64,
        expected_ms: u64,
    },
    FractionalPeriod {
        ensemble: String,
        machine: String,
        rate: u32,
        ensemble_period_ms: u64,
    },
    MissingAdaptor {
        ensemble: String,
        input: Endpoint,
    },
    AdaptorShape {
        ensemble: String,
        input: Endpoint,
        produces: usize,
        rate: u32,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Violation::*;
        match self {
            NonPositiveTiming { component } => {
                write!(f, "{component}: rate and period must be positive")
            }
            DuplicatePort { component, port } => {
                write!(f, "{component}: duplicate port `{port}`")
            }
            DuplicateMachine { ensemble, machine } => {
                write!(f, "{ensemble}: duplicate machine `{machine}`")
            }
            DanglingEndpoint { ensemble, endpoint } => {
                write!(f, "{ensemble}: connection endpoint `{endpoint}` does not exist")
            }
            WrongDirection { ensemble, endpoint } => {
                write!(f, "{ensemble}: connection endpoint `{endpoint}` has the wrong direction")
            }
            SourceCount {
                ensemble,
                input,
                sources,
            } => write!(f, "{ensemble}: input `{input}` has {sources} sources, expected 1"),
            FastToFast { ensemble, from, to } => {
                write!(f, "{ensemble}: `{from} --> {to}` connects two fast machines")
            }
            RatePeriod {
                ensemble,
                machine,
                rate,
                period_ms,
                expected_ms,
            } => write!(
                f,
                "{ensemble}: `{machine}` has rate {rate} and period {period_ms} ms, expected period {expected_ms} ms"
            ),
            FractionalPeriod {
                ensemble,
                machine,
                rate,
                ensemble_period_ms,
            } => write!(
                f,
                "{ensemble}: period {ensemble_period_ms} ms is not divisible by rate {rate} of `{machine}`"
            ),
            MissingAdaptor { ensemble, input } => {
                write!(f, "{ensemble}: input `{input}` has no adaptor")
            }
            AdaptorShape {
                ensemble,
                input,
                produces,
                rate,
            } => write!(
                f,
                "{ensemble}: adaptor of `{input}` yields {produces} value(s) for a rate-{rate} machine"
            ),
        }
    }
}

/// Result of [`validate`]; empty means the model is well formed.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return writeln!(f, "model is valid");
        }
        for v in &self.violations {
            writeln!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Checks the structural rules of a (possibly hierarchical) ensemble.
pub fn validate(model: &Component) -> ValidationReport {
    let mut out = Vec::new();
    check(model, &mut out);
    ValidationReport { violations: out }
}

fn check(c: &Component, out: &mut Vec<Violation>) {
    if c.rate() == 0 || c.period_ms() == 0 {
        out.push(Violation::NonPositiveTiming {
            component: c.id().to_string(),
        });
    }
    let mut seen = HashSet::new();
    for (p, _) in c.ports() {
        if !seen.insert(p.id.as_str()) {
            out.push(Violation::DuplicatePort {
                component: c.id().to_string(),
                port: p.id.clone(),
            });
        }
    }
    let Some(ens) = c.as_ensemble() else {
        return;
    };
    let name = c.id().to_string();

    let mut ids = HashSet::new();
    for m in &ens.machines {
        if !ids.insert(m.id()) {
            out.push(Violation::DuplicateMachine {
                ensemble: name.clone(),
                machine: m.id().to_string(),
            });
        }
    }

    let own_port = |id: &str, dir: Direction| -> Result<(), bool> {
        match c.ports().find(|(p, _)| p.id == id) {
            None => Err(false),
            Some((p, _)) if p.direction != dir => Err(true),
            _ => Ok(()),
        }
    };
    let member_port = |ep: &Endpoint, dir: Direction| -> Result<&Component, bool> {
        let m = ens.member(&ep.component).ok_or(false)?;
        match m.ports().find(|(p, _)| p.id == ep.port) {
            None => Err(false),
            Some((p, _)) if p.direction != dir => Err(true),
            _ => Ok(m),
        }
    };
    let mut report = |res: Result<(), bool>, endpoint: String| match res {
        Err(false) => out.push(Violation::DanglingEndpoint {
            ensemble: name.clone(),
            endpoint,
        }),
        Err(true) => out.push(Violation::WrongDirection {
            ensemble: name.clone(),
            endpoint,
        }),
        Ok(()) => {}
    };

    let mut fast_pairs = Vec::new();
    for conn in &ens.wiring.connections {
        match conn {
            Connection::Internal { from, to } => {
                let a = member_port(from, Direction::Out);
                let b = member_port(to, Direction::In);
                if let (Ok(a), Ok(b)) = (&a, &b) {
                    if a.rate() > 1 && b.rate() > 1 {
                        fast_pairs.push((from.clone(), to.clone()));
                    }
                }
                report(a.map(|_| ()), from.to_string());
                report(b.map(|_| ()), to.to_string());
            }
            Connection::FromEnv { env_port, to } => {
                report(own_port(env_port, Direction::In), env_port.clone());
                report(member_port(to, Direction::In).map(|_| ()), to.to_string());
            }
            Connection::ToEnv { from, env_port } => {
                report(
                    member_port(from, Direction::Out).map(|_| ()),
                    from.to_string(),
                );
                report(own_port(env_port, Direction::Out), env_port.clone());
            }
        }
    }
    for (from, to) in fast_pairs {
        out.push(Violation::FastToFast {
            ensemble: name.clone(),
            from,
            to,
        });
    }

    let mut sources: BTreeMap<Endpoint, usize> = BTreeMap::new();
    for m in &ens.machines {
        for (p, _) in m.ports() {
            if p.direction == Direction::In {
                sources.insert(Endpoint::new(m.id(), p.id.clone()), 0);
            }
        }
    }
    for conn in &ens.wiring.connections {
        if let Some(dst) = conn.destination() {
            if let Some(n) = sources.get_mut(dst) {
                *n += 1;
            }
        }
    }
    for (input, n) in &sources {
        if *n != 1 {
            out.push(Violation::SourceCount {
                ensemble: name.clone(),
                input: input.clone(),
                sources: *n,
            });
        }
        if *n == 0 {
            continue;
        }
        let rate = ens.member(&input.component).map_or(1, Component::rate);
        match ens.wiring.adaptors.get(&input.component, &input.port) {
            None => out.push(Violation::MissingAdaptor {
                ensemble: name.clone(),
                input: input.clone(),
            }),
            Some(a) => {
                if let Some(len) = a.output_len() {
                    if len != rate as usize {
                        out.push(Violation::AdaptorShape {
                            ensemble: name.clone(),
                            input: input.clone(),
                            produces: len,
                            rate,
                        });
                    }
                }
            }
        }
    }

    let period = c.period_ms();
    for m in &ens.machines {
        if m.rate() == 0 || period == 0 {
            continue;
        }
        let rate = u64::from(m.rate());
        if !period.is_multiple_of(rate) {
            out.push(Violation::FractionalPeriod {
                ensemble: name.clone(),
                machine: m.id().to_string(),
                rate: m.rate(),
                ensemble_period_ms: period,
            });
        } else if m.period_ms() * rate != period {
            out.push(Violation::RatePeriod {
                ensemble: name.clone(),
                machine: m.id().to_string(),
                rate: m.rate(),
                period_ms: m.period_ms(),
                expected_ms: period / rate,
            });
        }
    }

    for m in &ens.machines {
        check(m, out);
    }
}
