//! Data flowing through ports.

use std::fmt;
use std::hash::{Hash, Hasher};

/// Bit pattern used for equality and hashing of reals.
///
/// Both zeros map to the same key so that `-0.0` produced by normalization
/// does not split otherwise identical states.
#[inline]
pub fn real_key(x: f64) -> u64 {
    if x == 0.0 {
        0
    } else {
        x.to_bits()
    }
}

/// Rounds `x` to `decimals` decimal places.
pub fn quantize(x: f64, decimals: u32) -> f64 {
    let scale = 10f64.powi(decimals as i32);
    (x * scale).round() / scale
}

/// The status record the airplane's main controller reports once per round.
#[derive(Debug, Clone, Copy, Default)]
pub struct StatusRecord {
    pub dir: f64,
    pub roll: f64,
    pub yaw: f64,
    pub goal: f64,
}

impl StatusRecord {
    pub fn new(dir: f64, roll: f64, yaw: f64, goal: f64) -> Self {
        Self {
            dir,
            roll,
            yaw,
            goal,
        }
    }

    fn keys(&self) -> [u64; 4] {
        [
            real_key(self.dir),
            real_key(self.roll),
            real_key(self.yaw),
            real_key(self.goal),
        ]
    }
}

impl PartialEq for StatusRecord {
    fn eq(&self, other: &Self) -> bool {
        self.keys() == other.keys()
    }
}

impl Eq for StatusRecord {}

impl Hash for StatusRecord {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.keys().hash(state);
    }
}

/// A datum on a port: the don't-care value `⊥`, an angle, or a status record.
#[derive(Debug, Clone, Copy)]
pub enum Value {
    Bot,
    Num(f64),
    Status(StatusRecord),
}

impl Value {
    pub fn is_bot(&self) -> bool {
        matches!(self, Value::Bot)
    }

    pub fn as_num(&self) -> Option<f64> {
        match self {
            Value::Num(x) => Some(*x),
            _ => None,
        }
    }

    pub fn as_status(&self) -> Option<&StatusRecord> {
        match self {
            Value::Status(s) => Some(s),
            _ => None,
        }
    }

    /// False if any numeric field is NaN or infinite.
    pub fn is_finite(&self) -> bool {
        match self {
            Value::Bot => true,
            Value::Num(x) => x.is_finite(),
            Value::Status(s) => {
                s.dir.is_finite() && s.roll.is_finite() && s.yaw.is_finite() && s.goal.is_finite()
            }
        }
    }

    /// Applies `f` to every numeric field.
    pub fn map_reals(&self, mut f: impl FnMut(f64) -> f64) -> Value {
        match *self {
            Value::Bot => Value::Bot,
            Value::Num(x) => Value::Num(f(x)),
            Value::Status(s) => Value::Status(StatusRecord {
                dir: f(s.dir),
                roll: f(s.roll),
                yaw: f(s.yaw),
                goal: f(s.goal),
            }),
        }
    }
}

impl PartialEq for Value {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Value::Bot, Value::Bot) => true,
            (Value::Num(a), Value::Num(b)) => real_key(*a) == real_key(*b),
            (Value::Status(a), Value::Status(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Value {}

impl Hash for Value {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            Value::Bot => 0u8.hash(state),
            Value::Num(x) => {
                1u8.hash(state);
                real_key(*x).hash(state);
            }
            Value::Status(s) => {
                2u8.hash(state);
                s.hash(state);
            }
        }
    }
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Num(x)
    }
}

impl From<StatusRecord> for Value {
    fn from(s: StatusRecord) -> Self {
        Value::Status(s)
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Bot => write!(f, "bot"),
            Value::Num(x) => write!(f, "d({x})"),
            Value::Status(s) => write!(
                f,
                "dir: {} roll: {} yaw: {} goal: {}",
                s.dir, s.roll, s.yaw, s.goal
            ),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn zero_signs_are_merged() {
        assert_eq!(Value::Num(0.0), Value::Num(-0.0));
        let set: HashSet<Value> = [Value::Num(0.0), Value::Num(-0.0)].into_iter().collect();
        assert_eq!(set.len(), 1);
    }

    #[test]
    fn equality_is_exact() {
        assert_ne!(Value::Num(0.1 + 0.2), Value::Num(0.3));
        assert_ne!(Value::Num(1.0), Value::Bot);
        assert_eq!(
            Value::Status(StatusRecord::new(1.0, 2.0, 3.0, 4.0)),
            Value::Status(StatusRecord::new(1.0, 2.0, 3.0, 4.0))
        );
    }

    #[test]
    fn finiteness() {
        assert!(Value::Bot.is_finite());
        assert!(!Value::Num(f64::NAN).is_finite());
        assert!(!Value::Status(StatusRecord::new(0.0, f64::INFINITY, 0.0, 0.0)).is_finite());
    }

    #[test]
    fn quantize_rounds_to_decimals() {
        assert_eq!(quantize(1.23456, 2), 1.23);
        assert_eq!(quantize(-0.005, 1), -0.0);
    }
}
