//! State propositions of the airplane model.

use super::model::status_records;
use super::physics::norm_angle;
use crate::analysis::PropRegistry;
use crate::value::StatusRecord;

/// Every record has `|yaw| < 1`; true on no records.
pub fn safe_yaw_all(records: &[StatusRecord]) -> bool {
    records.iter().all(|r| r.yaw.abs() < 1.0)
}

/// Every record has `|yaw| < 0.5` and `|roll| < 0.5`; true on no records.
pub fn stable_all(records: &[StatusRecord]) -> bool {
    records
        .iter()
        .all(|r| r.yaw.abs() < 0.5 && r.roll.abs() < 0.5)
}

/// The last record is within 0.5° of the goal direction; false on no
/// records.
pub fn reach(records: &[StatusRecord]) -> bool {
    records
        .last()
        .is_some_and(|r| norm_angle(r.goal - r.dir).abs() < 0.5)
}

/// `safeYaw`, `stable` and `reach`, plus their negations `unsafe-yaw`,
/// `unstable` and `unreached`, and `reached` as an alias of `reach`.
pub fn propositions() -> PropRegistry {
    PropRegistry::new()
        .with("safeYaw", |s| safe_yaw_all(&status_records(s)))
        .with("stable", |s| stable_all(&status_records(s)))
        .with("reach", |s| reach(&status_records(s)))
        .with("unsafe-yaw", |s| !safe_yaw_all(&status_records(s)))
        .with("unstable", |s| !stable_all(&status_records(s)))
        .with("reached", |s| reach(&status_records(s)))
        .with("unreached", |s| !reach(&status_records(s)))
}
