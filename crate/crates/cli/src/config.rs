//! The flat `key = value` configuration file.

use std::fs;
use std::path::Path;

use mrpals::airplane::{AirplaneParams, LawVersion, UnitsMode};
use mrpals::ensemble::{Component, Connection};

use crate::error::CliError;

/// Parsed configuration: physical parameters, analysis settings and edits
/// applied to the built model.
#[derive(Debug, Clone, Default)]
pub struct Config {
    pub params: AirplaneParams,
    pub law_version: Option<LawVersion>,
    pub quantization_decimals: Option<u32>,
    /// `(component id, rate, period)` overrides.
    pub timing: Vec<(String, Option<u32>, Option<u64>)>,
    /// Extra connections, added to the ensemble containing their source.
    pub connections: Vec<Connection>,
}

fn bad(path: &Path, line: usize, msg: impl std::fmt::Display) -> CliError {
    CliError::Usage(format!("{}:{line}: {msg}", path.display()))
}

impl Config {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text, path)
    }

    pub fn parse(text: &str, path: &Path) -> Result<Self, CliError> {
        let mut cfg = Config::default();
        for (i, raw) in text.lines().enumerate() {
            let n = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(bad(path, n, "expected `key = value`"));
            };
            let (key, value) = (key.trim(), value.trim());
            let real = || -> Result<f64, CliError> {
                value
                    .parse::<f64>()
                    .ok()
                    .filter(|x| x.is_finite())
                    .ok_or_else(|| {
                        bad(
                            path,
                            n,
                            format!("`{key}` expects a number, found `{value}`"),
                        )
                    })
            };
            let p = &mut cfg.params;
            match key {
                "plane_size" => p.plane_size = real()?,
                "weight" => p.weight = real()?,
                "wing_size" => p.wing_size = real()?,
                "virt_lift_const" => p.virt_lift_const = real()?,
                "horz_lift_const" => p.horz_lift_const = real()?,
                "drag_ratio" => p.drag_ratio = real()?,
                "velocity" => p.velocity = real()?,
                "gravity" => p.gravity = real()?,
                "sub_diff_angle" => p.sub_diff_angle = real()?,
                "units_mode" => {
                    p.units_mode = value.parse::<UnitsMode>().map_err(|e| bad(path, n, e))?
                }
                "law_version" => {
                    cfg.law_version = Some(value.parse().map_err(|e| bad(path, n, e))?)
                }
                "quantization_decimals" => {
                    cfg.quantization_decimals = Some(
                        value
                            .parse()
                            .map_err(|_| bad(path, n, "expected a count"))?,
                    )
                }
                "connect" => cfg
                    .connections
                    .push(value.parse().map_err(|e| bad(path, n, e))?),
                _ => {
                    let timing = key
                        .strip_suffix("_period")
                        .map(|c| (c, true))
                        .or_else(|| key.strip_suffix("_rate").map(|c| (c, false)));
                    let Some((component, is_period)) = timing else {
                        return Err(bad(path, n, format!("unknown key `{key}`")));
                    };
                    let v: u64 = value
                        .parse()
                        .map_err(|_| bad(path, n, format!("`{key}` expects a whole number")))?;
                    let slot = match cfg.timing.iter_mut().find(|t| t.0 == component) {
                        Some(t) => t,
                        None => {
                            cfg.timing.push((component.to_string(), None, None));
                            cfg.timing.last_mut().expect("just pushed")
                        }
                    };
                    if is_period {
                        slot.2 = Some(v);
                    } else {
                        slot.1 =
                            Some(u32::try_from(v).map_err(|_| bad(path, n, "rate too large"))?);
                    }
                }
            }
        }
        Ok(cfg)
    }

    /// Applies timing overrides and extra connections to a built model.
    pub fn apply(&self, root: &mut Component) -> Result<(), CliError> {
        for (id, rate, period) in &self.timing {
            let c = find_by_id(root, id)
                .ok_or_else(|| CliError::Usage(format!("config: no component named `{id}`")))?;
            let r = rate.unwrap_or(c.rate());
            let p = period.unwrap_or(c.period_ms());
            c.set_timing(r, p);
        }
        for conn in &self.connections {
            let owner = match conn {
                Connection::Internal { from, .. } | Connection::ToEnv { from, .. } => {
                    &from.component
                }
                Connection::FromEnv { to, .. } => &to.component,
            };
            let ens = find_parent_of(root, owner).ok_or_else(|| {
                CliError::Usage(format!("config: no ensemble contains `{owner}`"))
            })?;
            ens.as_ensemble_mut()
                .expect("parent is an ensemble")
                .wiring_mut()
                .connections
                .push(conn.clone());
        }
        Ok(())
    }
}

fn find_by_id<'a>(c: &'a mut Component, id: &str) -> Option<&'a mut Component> {
    if c.id() == id {
        return Some(c);
    }
    let ens = c.as_ensemble_mut()?;
    ens.machines.iter_mut().find_map(|m| find_by_id(m, id))
}

fn find_parent_of<'a>(c: &'a mut Component, id: &str) -> Option<&'a mut Component> {
    let has = c.as_ensemble().is_some_and(|e| e.member(id).is_some());
    if has {
        return Some(c);
    }
    let ens = c.as_ensemble_mut()?;
    ens.machines.iter_mut().find_map(|m| find_parent_of(m, id))
}

#[cfg(test)]
mod tests {
    use super::*;
    use mrpals::airplane::{build_airplane, Scenario};
    use mrpals::ensemble::{validate, Violation};

    fn parse(text: &str) -> Result<Config, CliError> {
        Config::parse(text, Path::new("c.conf"))
    }

    #[test]
    fn keys_and_comments() {
        let c = parse("# defaults\nvelocity = 60 # faster\nunits_mode = literal\nlaw_version = v1\n\nsub_diff_angle=2.5\n").unwrap();
        assert_eq!(c.params.velocity, 60.0);
        assert_eq!(c.params.units_mode, UnitsMode::Literal);
        assert_eq!(c.params.sub_diff_angle, 2.5);
        assert_eq!(c.law_version, Some(LawVersion::V1));
    }

    #[test]
    fn errors_name_the_line() {
        let e = parse("velocity = 50\nspeed = 3\n").unwrap_err().to_string();
        assert!(e.contains("c.conf:2") && e.contains("speed"), "{e}");
        assert!(parse("velocity = fast").is_err());
        assert!(parse("just words").is_err());
    }

    #[test]
    fn timing_override_breaks_validation() {
        let c = parse("rudder_period = 21").unwrap();
        let mut root = build_airplane(&c.params, &Scenario::default(), LawVersion::V2);
        c.apply(&mut root).unwrap();
        let r = validate(&root);
        assert!(r
            .violations
            .iter()
            .any(|v| matches!(v, Violation::RatePeriod { machine, .. } if machine == "rudder")));
    }

    #[test]
    fn fast_to_fast_connection() {
        let c = parse("connect = left.output -> right.input").unwrap();
        let mut root = build_airplane(&c.params, &Scenario::default(), LawVersion::V2);
        c.apply(&mut root).unwrap();
        let r = validate(&root);
        assert!(r
            .violations
            .iter()
            .any(|v| matches!(v, Violation::FastToFast { .. })));
    }
}
