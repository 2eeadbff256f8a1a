//! Executable semantics of one synchronous step.
//!
//! A step of the top component is
//! `delta(env_output(choice, clear_outputs(c)))`, and `delta` of an ensemble
//! is `transfer_results ∘ execute ∘ transfer_inputs`. The functions here
//! update a component in place; [`sync_step`] is the pure wrapper.

use std::collections::BTreeMap;

use super::adaptor::AdaptorTable;
use super::component::{Body, Component, Direction, Ensemble, StepContext};
use super::connection::{Connection, Endpoint};
use super::env::EnvChoice;
use super::error::{ExecError, ModelError};
use super::state::SystemState;
use crate::value::Value;

/// Empties every output port of the tree, except member outputs that feed a
/// machine-to-machine wire: those hold the values the destination will read
/// at the next step.
pub fn clear_outputs(c: &mut Component) {
    clear_tree(c, &[]);
}

fn clear_tree(c: &mut Component, pending: &[&str]) {
    let (decl, contents, body) = c.parts_mut();
    for (p, content) in decl.ports.iter().zip(contents.iter_mut()) {
        if p.direction == Direction::Out && !pending.contains(&p.id.as_str()) {
            content.clear();
        }
    }
    if let Body::Ensemble(e) = body {
        let wiring = std::sync::Arc::clone(&e.wiring);
        for m in &mut e.machines {
            let keep: Vec<&str> = wiring
                .connections
                .iter()
                .filter_map(|conn| match conn {
                    Connection::Internal { from, .. } if from.component == m.id() => {
                        Some(from.port.as_str())
                    }
                    _ => None,
                })
                .collect();
            clear_tree(m, &keep);
        }
    }
}

/// Replaces the content of each input port named in `choice`.
pub fn env_output(choice: &EnvChoice, c: &mut Component) -> Result<(), ModelError> {
    for (port, values) in choice.iter() {
        match c.port_index(port) {
            Some(i) if c.decl().ports[i].direction == Direction::In => {
                *c.content_mut(i) = values.clone();
            }
            _ => {
                return Err(ModelError::UnknownInputPort {
                    component: c.id().to_string(),
                    port: port.clone(),
                })
            }
        }
    }
    Ok(())
}

fn port_mut<'a>(
    machines: &'a mut [Component],
    ep: &Endpoint,
) -> Result<&'a mut Vec<Value>, ExecError> {
    let m = machines
        .iter_mut()
        .find(|m| m.id() == ep.component)
        .ok_or_else(|| ExecError::Unresolved(ep.to_string()))?;
    let i = m
        .port_index(&ep.port)
        .ok_or_else(|| ExecError::Unresolved(ep.to_string()))?;
    Ok(m.content_mut(i))
}

/// Moves data into member input ports.
///
/// An ensemble input port gives up its head value, since the ensemble
/// consumes one value per port per transition. A member output feeding a
/// machine-to-machine wire is drained completely: these are the values it
/// produced during the previous step. An empty source delivers a single `⊥`.
///
/// Does nothing on a leaf.
pub fn transfer_inputs(e: &mut Component) -> Result<(), ExecError> {
    let (decl, contents, body) = e.parts_mut();
    let Body::Ensemble(ens) = body else {
        return Ok(());
    };
    let wiring = std::sync::Arc::clone(&ens.wiring);

    let mut heads: BTreeMap<&str, Value> = BTreeMap::new();
    let mut deliveries: Vec<(&Endpoint, Vec<Value>)> = Vec::new();
    for conn in &wiring.connections {
        match conn {
            Connection::FromEnv { env_port, to } => {
                let v = match heads.get(env_port.as_str()) {
                    Some(v) => *v,
                    None => {
                        let i = decl
                            .ports
                            .iter()
                            .position(|p| &p.id == env_port)
                            .ok_or_else(|| ExecError::Unresolved(env_port.clone()))?;
                        let content = &mut contents[i];
                        let v = if content.is_empty() {
                            Value::Bot
                        } else {
                            content.remove(0)
                        };
                        heads.insert(env_port, v);
                        v
                    }
                };
                deliveries.push((to, vec![v]));
            }
            Connection::Internal { from, to } => {
                let src = port_mut(&mut ens.machines, from)?;
                let vals = if src.is_empty() {
                    vec![Value::Bot]
                } else {
                    src.clone()
                };
                deliveries.push((to, vals));
            }
            Connection::ToEnv { .. } => {}
        }
    }
    for conn in &wiring.connections {
        if let Connection::Internal { from, .. } = conn {
            port_mut(&mut ens.machines, from)?.clear();
        }
    }
    for (to, vals) in deliveries {
        port_mut(&mut ens.machines, to)?.extend(vals);
    }
    Ok(())
}

/// Replaces each non-empty input port content of `c` with its adaptor image.
pub fn apply_adaptors(c: &mut Component, table: &AdaptorTable) -> Result<(), ExecError> {
    let (decl, contents, _) = c.parts_mut();
    for (p, content) in decl.ports.iter().zip(contents.iter_mut()) {
        if p.direction != Direction::In || content.is_empty() {
            continue;
        }
        let adaptor = table
            .get(&decl.id, &p.id)
            .ok_or_else(|| ExecError::MissingAdaptor {
                component: decl.id.clone(),
                port: p.id.clone(),
            })?;
        *content = adaptor.apply(content);
    }
    Ok(())
}

/// Applies `delta` as many times as the component's rate.
pub fn k_delta(c: &mut Component) -> Result<(), ExecError> {
    let rate = c.rate() as usize;
    for (p, content) in c.ports() {
        if p.direction == Direction::In && content.len() < rate {
            return Err(ExecError::InputUnderflow {
                component: c.id().to_string(),
                port: p.id.clone(),
                available: content.len(),
                required: rate,
            });
        }
    }
    for _ in 0..rate {
        delta(c)?;
    }
    Ok(())
}

/// Adapts the inputs of every member and runs it `rate` times.
pub fn execute(e: &mut Component) -> Result<(), ExecError> {
    let Some(ens) = e.as_ensemble_mut() else {
        return Ok(());
    };
    let Ensemble { machines, wiring } = ens;
    for m in machines.iter_mut() {
        apply_adaptors(m, &wiring.adaptors)?;
        let rate = m.rate() as usize;
        for (p, content) in m.ports() {
            if p.direction == Direction::In && !content.is_empty() && content.len() != rate {
                return Err(ExecError::RateShape {
                    component: m.id().to_string(),
                    port: p.id.clone(),
                    produced: content.len(),
                    rate: m.rate(),
                });
            }
        }
        k_delta(m)?;
    }
    Ok(())
}

/// Moves member outputs wired to the ensemble's own output ports.
pub fn transfer_results(e: &mut Component) -> Result<(), ExecError> {
    let (decl, contents, body) = e.parts_mut();
    let Body::Ensemble(ens) = body else {
        return Ok(());
    };
    let wiring = std::sync::Arc::clone(&ens.wiring);
    for conn in &wiring.connections {
        if let Connection::ToEnv { from, env_port } = conn {
            // A port that also feeds a sibling keeps its values for the next step.
            let feeds_sibling = wiring
                .connections
                .iter()
                .any(|c| matches!(c, Connection::Internal { from: f, .. } if f == from));
            let src = port_mut(&mut ens.machines, from)?;
            let vals = if feeds_sibling {
                src.clone()
            } else {
                std::mem::take(src)
            };
            let i = decl
                .ports
                .iter()
                .position(|p| &p.id == env_port)
                .ok_or_else(|| ExecError::Unresolved(env_port.clone()))?;
            contents[i].extend(vals);
        }
    }
    Ok(())
}

/// One transition of a component: a leaf pops one value from every input
/// port and appends one value to every output port; an ensemble performs
/// `transfer_results(execute(transfer_inputs(e)))`.
pub fn delta(c: &mut Component) -> Result<(), ExecError> {
    if c.as_ensemble().is_some() {
        transfer_inputs(c)?;
        execute(c)?;
        return transfer_results(c);
    }
    let (decl, contents, body) = c.parts_mut();
    let Body::Leaf(machine) = body else {
        unreachable!()
    };
    let mut inputs = Vec::new();
    for (p, content) in decl.ports.iter().zip(contents.iter_mut()) {
        if p.direction == Direction::In {
            if content.is_empty() {
                return Err(ExecError::InputUnderflow {
                    component: decl.id.clone(),
                    port: p.id.clone(),
                    available: 0,
                    required: 1,
                });
            }
            inputs.push(content.remove(0));
        }
    }
    let ctx = StepContext {
        component: &decl.id,
        period_ms: decl.period_ms,
    };
    let outputs = machine.delta(&inputs, &ctx)?;
    let out_ports = decl
        .ports
        .iter()
        .filter(|p| p.direction == Direction::Out)
        .count();
    if outputs.len() != out_ports {
        return Err(ExecError::OutputArity {
            component: decl.id.clone(),
            produced: outputs.len(),
            declared: out_ports,
        });
    }
    if !outputs.iter().all(Value::is_finite) {
        return Err(ExecError::NonFinite {
            component: decl.id.clone(),
        });
    }
    let mut outputs = outputs.into_iter();
    for (p, content) in decl.ports.iter().zip(contents.iter_mut()) {
        if p.direction == Direction::Out {
            content.extend(outputs.next());
        }
    }
    Ok(())
}

/// One synchronous step of the whole system under one environment choice.
/// Elapsed time advances by the top component's period.
pub fn sync_step(s: &SystemState, choice: &EnvChoice) -> Result<SystemState, ExecError> {
    let mut root = s.root.clone();
    clear_outputs(&mut root);
    env_output(choice, &mut root)?;
    delta(&mut root)?;
    Ok(SystemState {
        elapsed_ms: s.elapsed_ms + root.period_ms(),
        root,
    })
}
