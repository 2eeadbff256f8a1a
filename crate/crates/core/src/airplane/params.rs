use std::fmt;
use std::str::FromStr;

/// Which set of control functions the main controller uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum LawVersion {
    /// The original, linear control functions.
    V1,
    /// The redesign: quadratic response near zero and slew-limited goal roll.
    #[default]
    V2,
}

impl FromStr for LawVersion {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "v1" | "1" => Ok(LawVersion::V1),
            "v2" | "2" => Ok(LawVersion::V2),
            other => Err(format!("unknown law version `{other}` (expected v1 or v2)")),
        }
    }
}

impl fmt::Display for LawVersion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LawVersion::V1 => "v1",
            LawVersion::V2 => "v2",
        })
    }
}

/// How the raw rates of the flight equations are turned into per-round
/// angle increments (all angles in the model are degrees, `T` is the main
/// controller period in milliseconds).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum UnitsMode {
    /// Every rate is multiplied by `T` and read as degrees.
    Literal,
    /// Roll and yaw rates are read as radians per millisecond, scaled by `T`
    /// and converted to degrees; the heading rate is taken literally.
    #[default]
    RadianAttitude,
    /// Rates are radians per second, integrated over `T / 1000` seconds and
    /// converted to degrees.
    Si,
}

impl UnitsMode {
    /// Factor applied to the roll and yaw rates before multiplying by `T`.
    pub fn attitude_scale(self) -> f64 {
        match self {
            UnitsMode::Literal => 1.0,
            UnitsMode::RadianAttitude => 180.0 / std::f64::consts::PI,
            UnitsMode::Si => 180.0 / std::f64::consts::PI / 1000.0,
        }
    }
}

impl FromStr for UnitsMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "literal" => Ok(UnitsMode::Literal),
            "radian_attitude" | "radian-attitude" => Ok(UnitsMode::RadianAttitude),
            "si" => Ok(UnitsMode::Si),
            other => Err(format!(
                "unknown units mode `{other}` (expected literal, radian_attitude or si)"
            )),
        }
    }
}

impl fmt::Display for UnitsMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            UnitsMode::Literal => "literal",
            UnitsMode::RadianAttitude => "radian_attitude",
            UnitsMode::Si => "si",
        })
    }
}

/// Physical constants of a small general aviation aircraft.
#[derive(Debug, Clone, PartialEq)]
pub struct AirplaneParams {
    /// Length of the aircraft, m.
    pub plane_size: f64,
    pub weight: f64,
    /// Length of one wing, m.
    pub wing_size: f64,
    pub virt_lift_const: f64,
    pub horz_lift_const: f64,
    pub drag_ratio: f64,
    /// m/s
    pub velocity: f64,
    /// m/s²
    pub gravity: f64,
    /// Largest surface movement of a subcontroller per fast round, degrees.
    pub sub_diff_angle: f64,
    pub units_mode: UnitsMode,
}

impl Default for AirplaneParams {
    fn default() -> Self {
        Self {
            plane_size: 4.0,
            weight: 1000.0,
            wing_size: 2.0,
            virt_lift_const: 0.6,
            horz_lift_const: 0.4,
            drag_ratio: 0.05,
            velocity: 50.0,
            gravity: 9.80555,
            sub_diff_angle: 5.0,
            units_mode: UnitsMode::default(),
        }
    }
}

impl AirplaneParams {
    /// Problems with the parameter values, empty if they are usable.
    pub fn check(&self) -> Vec<String> {
        let mut out = Vec::new();
        let positive = [
            ("plane_size", self.plane_size),
            ("weight", self.weight),
            ("wing_size", self.wing_size),
            ("virt_lift_const", self.virt_lift_const),
            ("horz_lift_const", self.horz_lift_const),
            ("drag_ratio", self.drag_ratio),
            ("velocity", self.velocity),
            ("gravity", self.gravity),
        ];
        for (name, v) in positive {
            if !(v.is_finite() && v > 0.0) {
                out.push(format!("{name} must be positive, got {v}"));
            }
        }
        if !(0.1..=45.0).contains(&self.sub_diff_angle) {
            out.push(format!(
                "sub_diff_angle must lie in [0.1, 45], got {}",
                self.sub_diff_angle
            ));
        }
        out
    }
}
