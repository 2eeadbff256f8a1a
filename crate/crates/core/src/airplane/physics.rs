//! Roll, yaw and heading dynamics of a coordinated turn.

use thiserror::Error;

use super::params::{AirplaneParams, UnitsMode};

#[derive(Debug, Clone, PartialEq, Error)]
#[error("roll angle {roll}° is at or beyond the tangent singularity")]
pub struct DynamicsError {
    pub roll: f64,
}

/// Representative of `x` modulo 360 in `(-180, 180]`.
pub fn norm_angle(x: f64) -> f64 {
    let r = x % 360.0;
    if r <= -180.0 {
        r + 360.0
    } else if r > 180.0 {
        r - 360.0
    } else {
        r
    }
}

/// Lift of a surface deflected by `angle` degrees.
pub fn lift(lift_const: f64, angle: f64) -> f64 {
    lift_const * angle
}

/// Turn rate for bank angle `roll` (degrees) at speed `velocity`:
/// `(g / v) * tan(roll)`. In SI mode the result is converted to degrees per
/// millisecond.
pub fn d_psi(roll: f64, velocity: f64, p: &AirplaneParams) -> Result<f64, DynamicsError> {
    if roll.abs() >= 90.0 {
        return Err(DynamicsError { roll });
    }
    let rate = p.gravity / velocity * roll.to_radians().tan();
    Ok(match p.units_mode {
        UnitsMode::Si => rate.to_degrees() / 1000.0,
        UnitsMode::Literal | UnitsMode::RadianAttitude => rate,
    })
}

/// Roll rate from the aileron angles.
pub fn d_phi(left_aileron: f64, right_aileron: f64, p: &AirplaneParams) -> f64 {
    (lift(p.horz_lift_const, right_aileron) - lift(p.horz_lift_const, left_aileron))
        / (p.weight * p.wing_size)
}

/// Yaw rate from the aileron angles (adverse yaw through differential drag)
/// and the rudder angle.
pub fn d_beta(left_aileron: f64, right_aileron: f64, rudder: f64, p: &AirplaneParams) -> f64 {
    p.drag_ratio * d_phi(left_aileron, right_aileron, p)
        + lift(p.virt_lift_const, rudder) / (p.weight * p.plane_size)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn literal() -> AirplaneParams {
        AirplaneParams {
            units_mode: UnitsMode::Literal,
            ..AirplaneParams::default()
        }
    }

    #[test]
    fn norm_angle_examples() {
        assert_eq!(norm_angle(190.0), -170.0);
        assert_eq!(norm_angle(0.0), 0.0);
        assert_eq!(norm_angle(-180.0), 180.0);
        assert_eq!(norm_angle(180.0), 180.0);
        assert_eq!(norm_angle(540.0), 180.0);
        assert_eq!(norm_angle(-190.0), 170.0);
    }

    #[test]
    fn lift_examples() {
        assert_eq!(lift(0.4, 45.0), 18.0);
        assert_eq!(lift(0.6, 0.0), 0.0);
        assert_eq!(lift(0.6, 30.0), 18.0);
    }

    #[test]
    fn d_psi_examples() {
        let p = literal();
        assert_eq!(d_psi(0.0, 50.0, &p).unwrap(), 0.0);
        let expected = 9.80555 / 50.0 * 1.0;
        assert!((d_psi(45.0, 50.0, &p).unwrap() - expected).abs() < 1e-12);
        assert!((d_psi(45.0, 50.0, &p).unwrap() - 0.196111).abs() < 1e-6);
        assert_eq!(d_psi(90.0, 50.0, &p), Err(DynamicsError { roll: 90.0 }));
        assert!(d_psi(-95.0, 50.0, &p).is_err());
    }

    #[test]
    fn d_psi_si_is_degrees_per_ms() {
        let p = AirplaneParams {
            units_mode: UnitsMode::Si,
            ..AirplaneParams::default()
        };
        let rad_per_s = 9.80555 / 50.0;
        let got = d_psi(45.0, 50.0, &p).unwrap();
        assert!((got - rad_per_s * 180.0 / std::f64::consts::PI / 1000.0).abs() < 1e-12);
    }

    #[test]
    fn d_phi_examples() {
        let p = literal();
        assert!((d_phi(-45.0, 45.0, &p) - 0.018).abs() < 1e-15);
        assert!((d_phi(0.0, 10.0, &p) - 0.002).abs() < 1e-15);
        assert_eq!(d_phi(7.5, 7.5, &p), 0.0);
    }

    #[test]
    fn d_beta_examples() {
        let p = literal();
        assert_eq!(d_beta(0.0, 0.0, 0.0, &p), 0.0);
        assert!((d_beta(-45.0, 45.0, 0.0, &p) - 0.0009).abs() < 1e-15);
        assert!((d_beta(0.0, 0.0, 30.0, &p) - 0.0045).abs() < 1e-15);
    }

    proptest! {
        #[test]
        fn norm_angle_laws(x in -1.0e4f64..1.0e4) {
            let y = norm_angle(x);
            prop_assert!(y > -180.0 && y <= 180.0);
            prop_assert_eq!(norm_angle(y), y);
            let k = ((x - y) / 360.0).round();
            prop_assert!((x - y - 360.0 * k).abs() < 1e-9);
            prop_assert!((norm_angle(x + 360.0) - y).abs() < 1e-9 || (norm_angle(x + 360.0) - y).abs() > 359.0);
        }

        #[test]
        fn d_phi_antisymmetric(a in -45.0f64..45.0, b in -45.0f64..45.0) {
            let p = literal();
            prop_assert!((d_phi(a, b, &p) + d_phi(b, a, &p)).abs() < 1e-15);
        }
    }
}
