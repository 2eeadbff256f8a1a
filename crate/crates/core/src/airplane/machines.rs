//! The three kinds of leaf machines of the airplane model.

use std::hash::{Hash, Hasher};
use std::sync::Arc;

use super::control::{goal_roll_angle, horiz_wing_angle, move_angle, tail_wing_angle};
use super::params::{AirplaneParams, LawVersion};
use super::physics::{d_beta, d_phi, d_psi, norm_angle, DynamicsError};
use crate::ensemble::{Behavior, ExecError, StepContext};
use crate::value::{quantize, real_key, StatusRecord, Value};

/// Wing or rudder subcontroller: moves its surface towards the goal angle by
/// at most `diff` degrees per step.
#[derive(Debug, Clone, Copy)]
pub struct SubController {
    pub curr: f64,
    pub goal: f64,
    pub diff: f64,
}

impl SubController {
    pub fn new(diff: f64) -> Self {
        Self {
            curr: 0.0,
            goal: 0.0,
            diff,
        }
    }
}

impl PartialEq for SubController {
    fn eq(&self, o: &Self) -> bool {
        real_key(self.curr) == real_key(o.curr)
            && real_key(self.goal) == real_key(o.goal)
            && real_key(self.diff) == real_key(o.diff)
    }
}

impl Eq for SubController {}

impl Hash for SubController {
    fn hash<H: Hasher>(&self, state: &mut H) {
        [
            real_key(self.curr),
            real_key(self.goal),
            real_key(self.diff),
        ]
        .hash(state);
    }
}

/// The surface moves with the old goal; a numeric input replaces the goal
/// for the next step, `⊥` keeps it.
pub fn sub_delta(s: &SubController, input: Value) -> (SubController, Value) {
    let curr = norm_angle(move_angle(s.curr, s.goal, s.diff));
    let goal = match input {
        Value::Num(x) => norm_angle(x),
        _ => s.goal,
    };
    (
        SubController {
            curr,
            goal,
            diff: s.diff,
        },
        Value::Num(curr),
    )
}

impl Behavior for SubController {
    fn delta(&mut self, inputs: &[Value], _ctx: &StepContext<'_>) -> Result<Vec<Value>, ExecError> {
        let (next, out) = sub_delta(self, inputs[0]);
        *self = next;
        Ok(vec![out])
    }

    fn quantized(&self, d: u32) -> Self {
        Self {
            curr: quantize(self.curr, d),
            goal: quantize(self.goal, d),
            diff: self.diff,
        }
    }
}

/// Main controller: integrates the flight dynamics and computes new surface
/// commands.
#[derive(Debug, Clone)]
pub struct MainController {
    pub yaw: f64,
    pub roll: f64,
    pub dir: f64,
    pub goal: f64,
    pub velocity: f64,
    pub version: LawVersion,
    pub params: Arc<AirplaneParams>,
}

impl MainController {
    pub fn new(params: Arc<AirplaneParams>, version: LawVersion) -> Self {
        Self {
            yaw: 0.0,
            roll: 0.0,
            dir: 0.0,
            goal: 0.0,
            velocity: params.velocity,
            version,
            params,
        }
    }

    pub fn status(&self) -> StatusRecord {
        StatusRecord::new(self.dir, self.roll, self.yaw, self.goal)
    }

    fn keys(&self) -> [u64; 5] {
        [
            real_key(self.yaw),
            real_key(self.roll),
            real_key(self.dir),
            real_key(self.goal),
            real_key(self.velocity),
        ]
    }
}

impl PartialEq for MainController {
    fn eq(&self, o: &Self) -> bool {
        self.keys() == o.keys()
            && self.version == o.version
            && (Arc::ptr_eq(&self.params, &o.params) || self.params == o.params)
    }
}

impl Eq for MainController {}

impl Hash for MainController {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.keys().hash(state);
        self.version.hash(state);
    }
}

/// Values the main controller emits in one step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MainOutputs {
    pub status: StatusRecord,
    pub left: f64,
    pub right: f64,
    pub rudder: f64,
}

/// One step of the main controller.
///
/// `left`, `right` and `rudder` are the current surface angles reported by
/// the subcontrollers; `⊥` (nothing reported yet) reads as 0.
pub fn main_delta(
    m: &MainController,
    pilot_in: Value,
    left: Value,
    right: Value,
    rudder: Value,
    period_ms: u64,
) -> Result<(MainController, MainOutputs), DynamicsError> {
    let p = &*m.params;
    let la = left.as_num().unwrap_or(0.0);
    let ra = right.as_num().unwrap_or(0.0);
    let ta = rudder.as_num().unwrap_or(0.0);
    let t = period_ms as f64;
    let scale = p.units_mode.attitude_scale();

    let yaw = norm_angle(m.yaw + d_beta(la, ra, ta, p) * scale * t);
    let roll = norm_angle(m.roll + d_phi(la, ra, p) * scale * t);
    let dir = norm_angle(m.dir + d_psi(m.roll, m.velocity, p)? * t);
    let goal = match pilot_in {
        Value::Num(x) => norm_angle(m.goal + x),
        _ => m.goal,
    };
    let ra_cmd = horiz_wing_angle(m.version, roll, goal_roll_angle(m.version, roll, dir, goal));
    let ta_cmd = tail_wing_angle(m.version, yaw);
    let next = MainController {
        yaw,
        roll,
        dir,
        goal,
        ..m.clone()
    };
    let out = MainOutputs {
        status: next.status(),
        left: -ra_cmd,
        right: ra_cmd,
        rudder: ta_cmd,
    };
    Ok((next, out))
}

impl Behavior for MainController {
    fn delta(&mut self, inputs: &[Value], ctx: &StepContext<'_>) -> Result<Vec<Value>, ExecError> {
        let (next, out) = main_delta(
            self,
            inputs[0],
            inputs[1],
            inputs[2],
            inputs[3],
            ctx.period_ms,
        )
        .map_err(|e| ExecError::Machine {
            component: ctx.component.to_string(),
            message: e.to_string(),
        })?;
        *self = next;
        Ok(vec![
            out.status.into(),
            out.left.into(),
            out.right.into(),
            out.rudder.into(),
        ])
    }

    fn quantized(&self, d: u32) -> Self {
        Self {
            yaw: quantize(self.yaw, d),
            roll: quantize(self.roll, d),
            dir: quantize(self.dir, d),
            goal: quantize(self.goal, d),
            ..self.clone()
        }
    }
}

/// The pilot: sends the remaining scenario increments one per step, each
/// offset by the outer environment's input.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct PilotConsole {
    pub scenario: Vec<Value>,
}

pub fn pilot_delta(s: &PilotConsole, outer_in: Value) -> (PilotConsole, Value) {
    let Some((head, rest)) = s.scenario.split_first() else {
        return (s.clone(), Value::Bot);
    };
    let out = match head {
        Value::Num(f) => Value::Num(norm_angle(f + outer_in.as_num().unwrap_or(0.0))),
        _ => outer_in
            .as_num()
            .map_or(Value::Bot, |x| Value::Num(norm_angle(x))),
    };
    (
        PilotConsole {
            scenario: rest.to_vec(),
        },
        out,
    )
}

impl Behavior for PilotConsole {
    fn delta(&mut self, inputs: &[Value], _ctx: &StepContext<'_>) -> Result<Vec<Value>, ExecError> {
        let (next, out) = pilot_delta(self, inputs[0]);
        *self = next;
        Ok(vec![out])
    }
}
