//! Control functions of the main controller and the subcontroller slew.

use super::params::LawVersion;
use super::physics::norm_angle;

fn sign(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// Moves `cur` towards `goal` by at most `max_diff`.
pub fn move_angle(cur: f64, goal: f64, max_diff: f64) -> f64 {
    if (goal - cur).abs() > max_diff {
        cur + max_diff * sign(goal - cur)
    } else {
        goal
    }
}

/// Desired roll angle for turning from `curr_dir` to `goal_dir`.
pub fn goal_roll_angle(version: LawVersion, curr_roll: f64, curr_dir: f64, goal_dir: f64) -> f64 {
    let fd = norm_angle(goal_dir - curr_dir);
    match version {
        LawVersion::V1 => sign(fd) * (fd.abs() * 0.3).min(20.0),
        LawVersion::V2 => {
            let target = fd * 0.32;
            if (target - curr_roll).abs() > 1.5 {
                curr_roll + sign(target - curr_roll) * 1.5
            } else {
                target
            }
        }
    }
}

/// Aileron angle for the right wing; the left wing gets the negation.
pub fn horiz_wing_angle(version: LawVersion, curr_roll: f64, goal_roll: f64) -> f64 {
    let fr = norm_angle(goal_roll - curr_roll);
    if version == LawVersion::V2 && fr.abs() <= 1.0 {
        sign(fr) * fr * fr * 0.3
    } else {
        sign(fr) * (fr.abs() * 0.3).min(45.0)
    }
}

/// Rudder angle that steers the yaw back to zero.
pub fn tail_wing_angle(version: LawVersion, curr_yaw: f64) -> f64 {
    let fy = norm_angle(-curr_yaw);
    if version == LawVersion::V2 && fy.abs() <= 1.0 {
        sign(fy) * fy * fy * 0.8
    } else {
        sign(fy) * (fy.abs() * 0.8).min(30.0)
    }
}
