//! Wiring of the airplane turning control system.

use std::sync::Arc;

use thiserror::Error;

use super::machines::{MainController, PilotConsole, SubController};
use super::params::{AirplaneParams, LawVersion};
use crate::analysis::System;
use crate::ensemble::{
    validate, Adaptor, AdaptorTable, Component, Connection, Endpoint, EnvChoice, EnvSpec,
    ModelError, PortDecl, SystemState, ValidationReport, Wiring,
};
use crate::value::{StatusRecord, Value};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BuildError {
    #[error("invalid parameters: {}", .0.join("; "))]
    Params(Vec<String>),
    #[error("invalid model:\n{0}")]
    Invalid(ValidationReport),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// The pilot's sequence of goal-direction increments, one per 600 ms round.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Scenario(pub Vec<Value>);

impl Scenario {
    pub fn new(increments: impl IntoIterator<Item = f64>) -> Self {
        Self(increments.into_iter().map(Value::Num).collect())
    }

    /// Turn right by 10° per round, six times.
    pub fn gradual() -> Self {
        Self::new([10.0; 6])
    }

    /// Turn right by 60° at once.
    pub fn immediate() -> Self {
        Self::new([60.0])
    }

    /// Turn left by 30°, then right by 90°.
    pub fn sudden_reversal() -> Self {
        Self::new([-30.0, 90.0])
    }

    /// `n` zero increments; with environment rules these are the rounds in
    /// which the outer environment can steer the pilot.
    pub fn zeros(n: usize) -> Self {
        Self::new(std::iter::repeat_n(0.0, n))
    }
}

fn ep(c: &str, p: &str) -> Endpoint {
    Endpoint::new(c, p)
}

/// The control system ensemble: a main controller and the left wing, right
/// wing and rudder subcontrollers.
pub fn build_csystem(p: &Arc<AirplaneParams>, version: LawVersion) -> Component {
    let sub = |id: &str, rate: u32, period: u64| {
        Component::leaf(
            id,
            rate,
            period,
            vec![PortDecl::input("input"), PortDecl::output("output")],
            SubController::new(p.sub_diff_angle),
        )
    };
    let main = Component::leaf(
        "main",
        1,
        60,
        vec![
            PortDecl::input("input"),
            PortDecl::input("inLW"),
            PortDecl::input("inRW"),
            PortDecl::input("inTW"),
            PortDecl::output("output"),
            PortDecl::output("outLW"),
            PortDecl::output("outRW"),
            PortDecl::output("outTW"),
        ],
        MainController::new(Arc::clone(p), version),
    );
    let mut connections = vec![
        Connection::from_env("input", ep("main", "input")),
        Connection::to_env(ep("main", "output"), "output"),
    ];
    for (out, sub_id, inp) in [
        ("outLW", "left", "inLW"),
        ("outRW", "right", "inRW"),
        ("outTW", "rudder", "inTW"),
    ] {
        connections.push(Connection::internal(ep("main", out), ep(sub_id, "input")));
        connections.push(Connection::internal(ep(sub_id, "output"), ep("main", inp)));
    }
    let adaptors = AdaptorTable::new()
        .with("main", "input", Adaptor::Last)
        .with("main", "inLW", Adaptor::Last)
        .with("main", "inRW", Adaptor::Last)
        .with("main", "inTW", Adaptor::Last)
        .with("left", "input", Adaptor::PadBot(4))
        .with("right", "input", Adaptor::PadBot(4))
        .with("rudder", "input", Adaptor::PadBot(3));
    Component::ensemble(
        "csystem",
        10,
        60,
        vec![PortDecl::input("input"), PortDecl::output("output")],
        vec![
            main,
            sub("left", 4, 15),
            sub("right", 4, 15),
            sub("rudder", 3, 20),
        ],
        Wiring {
            connections,
            adaptors,
        },
    )
}

/// The top ensemble: pilot console and control system, with one environment
/// input that offsets the pilot's commands and one output carrying the
/// status records of the last round.
///
/// The result is not validated; see [`build_system`].
pub fn build_airplane(p: &AirplaneParams, scenario: &Scenario, version: LawVersion) -> Component {
    let p = Arc::new(p.clone());
    let pilot = Component::leaf(
        "pilot",
        1,
        600,
        vec![PortDecl::input("input"), PortDecl::output("output")],
        PilotConsole {
            scenario: scenario.0.clone(),
        },
    );
    Component::ensemble(
        "airplane",
        1,
        600,
        vec![PortDecl::input("input"), PortDecl::output("output")],
        vec![pilot, build_csystem(&p, version)],
        Wiring {
            connections: vec![
                Connection::from_env("input", ep("pilot", "input")),
                Connection::internal(ep("pilot", "output"), ep("csystem", "input")),
                Connection::to_env(ep("csystem", "output"), "output"),
            ],
            adaptors: AdaptorTable::new()
                .with("pilot", "input", Adaptor::Last)
                .with("csystem", "input", Adaptor::PadBot(10)),
        },
    )
}

/// Environment alternatives `input = d(x)` for each rule, or the single
/// empty choice.
pub fn env_spec(rules: Option<&[f64]>) -> Result<EnvSpec, ModelError> {
    match rules {
        None => Ok(EnvSpec::deterministic()),
        Some(rs) => EnvSpec::new(
            rs.iter()
                .map(|x| EnvChoice::single("input", vec![Value::Num(*x)])),
        ),
    }
}

/// Checks a (possibly modified) airplane model and pairs it with its
/// environment.
pub fn system_from(
    p: &AirplaneParams,
    root: Component,
    rules: Option<&[f64]>,
) -> Result<System, BuildError> {
    let problems = p.check();
    if !problems.is_empty() {
        return Err(BuildError::Params(problems));
    }
    let report = validate(&root);
    if !report.is_valid() {
        return Err(BuildError::Invalid(report));
    }
    Ok(System {
        init: SystemState::new(root),
        env: env_spec(rules)?,
    })
}

/// Builds and validates the airplane model with its initial state and
/// environment.
pub fn build_system(
    p: &AirplaneParams,
    scenario: &Scenario,
    version: LawVersion,
    env_rules: Option<&[f64]>,
) -> Result<System, BuildError> {
    system_from(p, build_airplane(p, scenario, version), env_rules)
}

/// Status records on the top output port, oldest first.
pub fn status_records(s: &SystemState) -> Vec<StatusRecord> {
    s.root
        .port_content("output")
        .unwrap_or(&[])
        .iter()
        .filter_map(|v| v.as_status().copied())
        .collect()
}
