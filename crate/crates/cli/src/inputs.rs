//! Scenario, environment rule and choice files.

use std::fs;
use std::path::Path;

use mrpals::Value;

use crate::error::CliError;

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

/// Lines with comments and surrounding blanks removed, numbered from 1.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn number(s: &str, line: usize, path: &Path) -> Result<f64, CliError> {
    match s.parse::<f64>() {
        Ok(x) if x.is_finite() => Ok(x),
        _ => Err(CliError::Usage(format!(
            "{}:{line}: expected a decimal number, found `{s}`",
            path.display()
        ))),
    }
}

/// One goal increment (degrees) or `bot` per line.
pub fn parse_scenario_text(text: &str, path: &Path) -> Result<Vec<Value>, CliError> {
    lines(text)
        .map(|(n, l)| {
            if l == "bot" {
                Ok(Value::Bot)
            } else {
                number(l, n, path).map(Value::Num)
            }
        })
        .collect()
}

pub fn parse_scenario(path: &Path) -> Result<Vec<Value>, CliError> {
    parse_scenario_text(&read(path)?, path)
}

/// One outer environment input (degrees) per line.
pub fn parse_env_rules(path: &Path) -> Result<Vec<f64>, CliError> {
    let text = read(path)?;
    let rules = lines(&text)
        .map(|(n, l)| number(l, n, path))
        .collect::<Result<Vec<_>, _>>()?;
    if rules.is_empty() {
        return Err(CliError::Usage(format!(
            "{}: no environment rules",
            path.display()
        )));
    }
    Ok(rules)
}

/// One environment input per step: a decimal or `none` for no input.
pub fn parse_choices(path: &Path) -> Result<Vec<Option<f64>>, CliError> {
    let text = read(path)?;
    lines(&text)
        .map(|(n, l)| {
            if l == "none" {
                Ok(None)
            } else {
                number(l, n, path).map(Some)
            }
        })
        .collect()
}
