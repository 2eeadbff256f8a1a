use proptest::prelude::*;

use super::*;
use crate::value::{StatusRecord, Value};

/// Controller: `s' = s + env + fb` (⊥ reads as 0), emits `s'` on `log` and `set`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Ctrl {
    s: i64,
}

impl Behavior for Ctrl {
    fn delta(&mut self, inputs: &[Value], _: &StepContext<'_>) -> Result<Vec<Value>, ExecError> {
        let read = |v: &Value| v.as_num().unwrap_or(0.0) as i64;
        self.s += read(&inputs[0]) + read(&inputs[1]);
        let out = Value::Num(self.s as f64);
        Ok(vec![out, out])
    }
}

/// Fast counter: `a' = (x if input is x else a) + 1`, emits `a'`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Fast {
    a: i64,
}

impl Behavior for Fast {
    fn delta(&mut self, inputs: &[Value], _: &StepContext<'_>) -> Result<Vec<Value>, ExecError> {
        if let Some(x) = inputs[0].as_num() {
            self.a = x as i64;
        }
        self.a += 1;
        Ok(vec![Value::Num(self.a as f64)])
    }
}

fn toy() -> Component {
    let ctrl = Component::leaf(
        "ctrl",
        1,
        30,
        vec![
            PortDecl::input("env"),
            PortDecl::input("fb"),
            PortDecl::output("log"),
            PortDecl::output("set"),
        ],
        Ctrl { s: 0 },
    );
    let fast = Component::leaf(
        "fast",
        3,
        10,
        vec![PortDecl::input("set"), PortDecl::output("out")],
        Fast { a: 0 },
    );
    let conns = [
        "cmd --> ctrl.env",
        "ctrl.set --> fast.set",
        "fast.out --> ctrl.fb",
        "ctrl.log --> log",
    ];
    Component::ensemble(
        "toy",
        1,
        30,
        vec![PortDecl::input("cmd"), PortDecl::output("log")],
        vec![ctrl, fast],
        Wiring {
            connections: conns.iter().map(|c| c.parse().unwrap()).collect(),
            adaptors: AdaptorTable::new()
                .with("ctrl", "env", Adaptor::Last)
                .with("ctrl", "fb", Adaptor::Last)
                .with("fast", "set", Adaptor::PadBot(3)),
        },
    )
}

fn nums(xs: &[f64]) -> Vec<Value> {
    xs.iter().copied().map(Value::Num).collect()
}

fn cmd(x: f64) -> EnvChoice {
    EnvChoice::single("cmd", vec![Value::Num(x)])
}

#[test]
fn toy_is_valid() {
    assert!(validate(&toy()).is_valid(), "{}", validate(&toy()));
}

#[test]
fn toy_golden_table() {
    // step: (top log, fast.out pending, ctrl.s)
    let expected = [
        (1.0, [1.0, 2.0, 3.0]),
        (6.0, [2.0, 3.0, 4.0]),
        (13.0, [7.0, 8.0, 9.0]),
        (26.0, [14.0, 15.0, 16.0]),
        (47.0, [27.0, 28.0, 29.0]),
    ];
    let mut s = SystemState::new(toy());
    for (k, (log, fast_out)) in expected.iter().enumerate() {
        s = sync_step(&s, &cmd(k as f64 + 1.0)).unwrap();
        assert_eq!(s.elapsed_ms, 30 * (k as u64 + 1));
        assert_eq!(s.root.port_content("log").unwrap(), nums(&[*log]));
        assert_eq!(
            s.root.find("fast").unwrap().port_content("out").unwrap(),
            nums(fast_out)
        );
        assert_eq!(
            s.root.find("ctrl").unwrap().machine::<Ctrl>().unwrap().s,
            *log as i64
        );
    }
}

#[test]
fn clear_outputs_empties_outputs() {
    let mut c = Component::leaf(
        "m",
        1,
        10,
        vec![PortDecl::input("i"), PortDecl::output("o")],
        Fast { a: 0 },
    );
    c.set_port_content("o", nums(&[3.0]));
    c.set_port_content("i", nums(&[1.0]));
    clear_outputs(&mut c);
    assert!(c.port_content("o").unwrap().is_empty());
    assert_eq!(c.port_content("i").unwrap(), nums(&[1.0]));
    let before = c.clone();
    clear_outputs(&mut c);
    assert_eq!(c, before);
}

#[test]
fn clear_outputs_recurses_but_keeps_pending_feedback() {
    let mut c = toy();
    let status = Value::Status(StatusRecord::new(1.0, 2.0, 3.0, 4.0));
    c.find_mut("ctrl")
        .unwrap()
        .set_port_content("log", vec![status]);
    c.find_mut("ctrl")
        .unwrap()
        .set_port_content("set", nums(&[5.0]));
    c.set_port_content("log", vec![status]);
    clear_outputs(&mut c);
    assert!(c
        .find("ctrl")
        .unwrap()
        .port_content("log")
        .unwrap()
        .is_empty());
    assert!(c.port_content("log").unwrap().is_empty());
    assert_eq!(
        c.find("ctrl").unwrap().port_content("set").unwrap(),
        nums(&[5.0])
    );
}

#[test]
fn env_output_cases() {
    let mut c = toy();
    env_output(&cmd(60.0), &mut c).unwrap();
    assert_eq!(c.port_content("cmd").unwrap(), nums(&[60.0]));

    let before = c.clone();
    env_output(&EnvChoice::empty(), &mut c).unwrap();
    assert_eq!(c, before);

    let err = env_output(&EnvChoice::single("foo", vec![]), &mut c).unwrap_err();
    assert!(matches!(err, ModelError::UnknownInputPort { .. }));
    // an output port is not a valid injection target either
    assert!(env_output(&EnvChoice::single("log", vec![]), &mut c).is_err());
}

#[test]
fn transfer_inputs_moves_env_head_and_feedback() {
    let mut c = toy();
    c.set_port_content("cmd", nums(&[60.0]));
    c.find_mut("fast")
        .unwrap()
        .set_port_content("out", nums(&[5.0, 6.0, 7.0]));
    transfer_inputs(&mut c).unwrap();
    assert!(c.port_content("cmd").unwrap().is_empty());
    let ctrl = c.find("ctrl").unwrap();
    assert_eq!(ctrl.port_content("env").unwrap(), nums(&[60.0]));
    assert_eq!(ctrl.port_content("fb").unwrap(), nums(&[5.0, 6.0, 7.0]));
    assert!(c
        .find("fast")
        .unwrap()
        .port_content("out")
        .unwrap()
        .is_empty());
    // nothing pending on ctrl.set: the fast machine reads ⊥
    assert_eq!(
        c.find("fast").unwrap().port_content("set").unwrap(),
        &[Value::Bot]
    );
}

#[test]
fn transfer_inputs_without_connections_is_identity() {
    let mut c = Component::ensemble(
        "e",
        1,
        10,
        vec![PortDecl::input("i")],
        vec![],
        Wiring::default(),
    );
    c.set_port_content("i", nums(&[1.0]));
    let before = c.clone();
    transfer_inputs(&mut c).unwrap();
    assert_eq!(c, before);
}

#[test]
fn feedback_is_read_one_step_late() {
    let mut s = SystemState::new(toy());
    s = sync_step(&s, &cmd(1.0)).unwrap();
    // ctrl emitted 1 on `set` during step 1, the fast machine has not seen it
    assert_eq!(
        s.root.find("ctrl").unwrap().port_content("set").unwrap(),
        nums(&[1.0])
    );
    assert_eq!(s.root.find("fast").unwrap().machine::<Fast>().unwrap().a, 3);
    s = sync_step(&s, &cmd(0.0)).unwrap();
    // step 2 consumed it: 1 + 1, then two more increments
    assert_eq!(s.root.find("fast").unwrap().machine::<Fast>().unwrap().a, 4);
}

#[test]
fn port_feeding_sibling_and_ensemble_output_serves_both() {
    let mut root = toy();
    root.as_ensemble_mut()
        .unwrap()
        .wiring_mut()
        .connections
        .push("ctrl.set --> log".parse().unwrap());
    let mut s = SystemState::new(root);
    s = sync_step(&s, &cmd(1.0)).unwrap();
    assert_eq!(s.root.port_content("log").unwrap(), nums(&[1.0, 1.0]));
    s = sync_step(&s, &cmd(0.0)).unwrap();
    // the fast machine still received the 1 emitted on `set`
    assert_eq!(s.root.find("fast").unwrap().machine::<Fast>().unwrap().a, 4);
}

#[test]
fn outputs_do_not_leak_into_the_next_step() {
    let s1 = sync_step(&SystemState::new(toy()), &cmd(1.0)).unwrap();
    let s2 = sync_step(&s1, &cmd(1.0)).unwrap();
    assert_eq!(s1.root.port_content("log").unwrap().len(), 1);
    assert_eq!(s2.root.port_content("log").unwrap().len(), 1);
    assert_ne!(s1.root.port_content("log"), s2.root.port_content("log"));
}

#[test]
fn k_delta_rate_one_is_delta() {
    let mut a = Component::leaf(
        "m",
        1,
        10,
        vec![PortDecl::input("i"), PortDecl::output("o")],
        Fast { a: 0 },
    );
    a.set_port_content("i", nums(&[4.0]));
    let mut b = a.clone();
    k_delta(&mut a).unwrap();
    delta(&mut b).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.port_content("o").unwrap(), nums(&[5.0]));
}

#[test]
fn k_delta_underflow() {
    let mut c = Component::leaf(
        "m",
        3,
        10,
        vec![PortDecl::input("i"), PortDecl::output("o")],
        Fast { a: 0 },
    );
    c.set_port_content("i", nums(&[1.0, 2.0]));
    match k_delta(&mut c) {
        Err(ExecError::InputUnderflow {
            component,
            port,
            available: 2,
            required: 3,
        }) => assert_eq!((component.as_str(), port.as_str()), ("m", "i")),
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn closed_machine_steps_with_empty_choice() {
    let c = Component::leaf("m", 1, 25, vec![PortDecl::output("o")], Counter(0));
    let s = sync_step(&SystemState::new(c.clone()), &EnvChoice::empty()).unwrap();
    let mut d = c;
    delta(&mut d).unwrap();
    assert_eq!(s.root, d);
    assert_eq!(s.elapsed_ms, 25);
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Counter(i64);

impl Behavior for Counter {
    fn delta(&mut self, _: &[Value], _: &StepContext<'_>) -> Result<Vec<Value>, ExecError> {
        self.0 += 1;
        Ok(vec![Value::Num(self.0 as f64)])
    }
}

#[test]
fn missing_adaptor_is_reported_at_run_time() {
    let mut c = toy();
    if let Some(e) = c.as_ensemble_mut() {
        let mut w = (*e.wiring).clone();
        w.adaptors = AdaptorTable::new().with("ctrl", "env", Adaptor::Last).with(
            "ctrl",
            "fb",
            Adaptor::Last,
        );
        e.wiring = std::sync::Arc::new(w);
    }
    let err = sync_step(&SystemState::new(c), &cmd(1.0)).unwrap_err();
    assert!(matches!(err, ExecError::MissingAdaptor { .. }), "{err}");
}

#[test]
fn validate_single_leaf() {
    let c = Component::leaf("m", 1, 10, vec![PortDecl::output("o")], Counter(0));
    assert!(validate(&c).is_valid());
}

#[test]
fn validate_rate_period_rule() {
    let a = Component::leaf("a", 4, 15, vec![PortDecl::output("o")], Counter(0));
    let b = Component::leaf("b", 3, 21, vec![PortDecl::output("o")], Counter(0));
    let e = Component::ensemble("e", 1, 60, vec![], vec![a, b], Wiring::default());
    assert_eq!(
        validate(&e).violations,
        vec![Violation::RatePeriod {
            ensemble: "e".into(),
            machine: "b".into(),
            rate: 3,
            period_ms: 21,
            expected_ms: 20,
        }]
    );
}

#[test]
fn validate_flags_each_fault_class() {
    let base = toy();
    let rewire = |conns: &[&str], adaptors: AdaptorTable| {
        let mut c = base.clone();
        let e = c.as_ensemble_mut().unwrap();
        e.wiring = std::sync::Arc::new(Wiring {
            connections: conns.iter().map(|s| s.parse().unwrap()).collect(),
            adaptors,
        });
        c
    };
    let adaptors = || {
        AdaptorTable::new()
            .with("ctrl", "env", Adaptor::Last)
            .with("ctrl", "fb", Adaptor::Last)
            .with("fast", "set", Adaptor::PadBot(3))
    };
    let full = [
        "cmd --> ctrl.env",
        "ctrl.set --> fast.set",
        "fast.out --> ctrl.fb",
        "ctrl.log --> log",
    ];
    let kinds = |c: &Component| -> Vec<std::mem::Discriminant<Violation>> {
        validate(c)
            .violations
            .iter()
            .map(std::mem::discriminant)
            .collect()
    };
    let has = |c: &Component, probe: fn(&Violation) -> bool| {
        let r = validate(c);
        assert!(r.violations.iter().any(probe), "{r}");
    };

    // dangling endpoint
    let mut conns = full.to_vec();
    conns.push("ghost.out --> ctrl.fb");
    has(&rewire(&conns, adaptors()), |v| {
        matches!(v, Violation::DanglingEndpoint { .. })
    });
    // two sources for one input
    let mut conns = full.to_vec();
    conns.push("cmd --> ctrl.fb");
    has(&rewire(&conns, adaptors()), |v| {
        matches!(v, Violation::SourceCount { sources: 2, .. })
    });
    // unwired input
    has(&rewire(&[full[0], full[2], full[3]], adaptors()), |v| {
        matches!(v, Violation::SourceCount { sources: 0, .. })
    });
    // wrong direction
    let mut conns = full.to_vec();
    conns[1] = "ctrl.env --> fast.set";
    has(&rewire(&conns, adaptors()), |v| {
        matches!(v, Violation::WrongDirection { .. })
    });
    // missing adaptor and adaptor shape
    has(
        &rewire(
            &full,
            AdaptorTable::new().with("ctrl", "env", Adaptor::Last),
        ),
        |v| matches!(v, Violation::MissingAdaptor { .. }),
    );
    has(
        &rewire(&full, adaptors().with("fast", "set", Adaptor::PadBot(4))),
        |v| {
            matches!(
                v,
                Violation::AdaptorShape {
                    produces: 4,
                    rate: 3,
                    ..
                }
            )
        },
    );
    // fast to fast
    let mut c = base.clone();
    {
        let e = c.as_ensemble_mut().unwrap();
        let fast2 = Component::leaf(
            "fast2",
            3,
            10,
            vec![PortDecl::input("set"), PortDecl::output("out")],
            Fast { a: 0 },
        );
        e.machines.push(fast2);
        let mut w = (*e.wiring).clone();
        w.connections
            .push("fast.out --> fast2.set".parse().unwrap());
        w.adaptors.insert("fast2", "set", Adaptor::Identity);
        e.wiring = std::sync::Arc::new(w);
    }
    has(&c, |v| matches!(v, Violation::FastToFast { .. }));
    // duplicate machine, duplicate port
    let mut c = base.clone();
    let dup = c.find("fast").unwrap().clone();
    c.as_ensemble_mut().unwrap().machines.push(dup);
    has(&c, |v| matches!(v, Violation::DuplicateMachine { .. }));
    let c = Component::leaf(
        "m",
        1,
        10,
        vec![PortDecl::output("o"), PortDecl::output("o")],
        Counter(0),
    );
    has(&c, |v| matches!(v, Violation::DuplicatePort { .. }));
    // fractional period and zero timing
    let c = base.clone().with_timing(1, 31);
    assert!(
        kinds(&c).contains(&std::mem::discriminant(&Violation::FractionalPeriod {
            ensemble: String::new(),
            machine: String::new(),
            rate: 0,
            ensemble_period_ms: 0,
        }))
    );
    has(&base.clone().with_timing(0, 30), |v| {
        matches!(v, Violation::NonPositiveTiming { .. })
    });
}

proptest! {
    #[test]
    fn step_is_deterministic(xs in prop::collection::vec(-5i32..5, 1..6)) {
        let run = || {
            let mut s = SystemState::new(toy());
            for x in &xs {
                s = sync_step(&s, &cmd(*x as f64)).unwrap();
            }
            s
        };
        prop_assert_eq!(run(), run());
    }

    #[test]
    fn transfer_conserves_values(
        pending in prop::collection::vec(-100i32..100, 0..6),
        env in -100i32..100,
    ) {
        let mut c = toy();
        c.set_port_content("cmd", nums(&[env as f64]));
        let vals: Vec<Value> = pending.iter().map(|x| Value::Num(*x as f64)).collect();
        c.find_mut("fast").unwrap().set_port_content("out", vals.clone());
        transfer_inputs(&mut c).unwrap();
        let fb = c.find("ctrl").unwrap().port_content("fb").unwrap().to_vec();
        if vals.is_empty() {
            prop_assert_eq!(fb, vec![Value::Bot]);
        } else {
            prop_assert_eq!(fb, vals);
        }
        prop_assert_eq!(c.find("ctrl").unwrap().port_content("env").unwrap(), &nums(&[env as f64])[..]);
    }

    #[test]
    fn adaptors_give_rate_shaped_inputs(x in -100i32..100) {
        let mut c = toy();
        c.find_mut("fast").unwrap().set_port_content("set", nums(&[x as f64]));
        let table = AdaptorTable::new().with("fast", "set", Adaptor::PadBot(3));
        let fast = c.find_mut("fast").unwrap();
        apply_adaptors(fast, &table).unwrap();
        prop_assert_eq!(fast.port_content("set").unwrap().len(), 3);
        k_delta(fast).unwrap();
        prop_assert_eq!(fast.port_content("out").unwrap().len(), 3);
    }
}
