use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use mrpals::airplane::{
    self, build_airplane, status_records, system_from, write_csv, LawVersion, Scenario,
};
use mrpals::analysis::{
    check_ltl, parse_formula, search, simulate, ExploreOptions, Policy, System, DEFAULT_BUDGET,
};
use mrpals::ensemble::{validate, EnvChoice, EnvSpec, SystemState};
use mrpals::Value;

use crate::config::Config;
use crate::error::CliError;
use crate::inputs::{parse_choices, parse_env_rules, parse_scenario};
use crate::{Command, Common};

pub const STABILITY_FORMULA: &str = "[] (~ stable -> (safeYaw U (reach /\\ stable)))";

pub fn dispatch(cmd: Command) -> Result<u8, CliError> {
    match cmd {
        Command::Simulate { common, choices } => cmd_simulate(&common, choices.as_deref()),
        Command::Search { common, pred, max } => cmd_search(&common, &pred, max),
        Command::Check { common, formula } => cmd_check(&common, &formula),
        Command::Validate { common } => cmd_validate(&common),
    }
}

struct Setup {
    system: System,
    opts: ExploreOptions,
}

fn load_config(c: &Common) -> Result<Config, CliError> {
    match &c.config {
        Some(p) => Config::load(p),
        None => Ok(Config::default()),
    }
}

fn model(c: &Common, cfg: &Config) -> Result<mrpals::ensemble::Component, CliError> {
    let version = c.laws.or(cfg.law_version).unwrap_or(LawVersion::V2);
    let scenario = match &c.scenario {
        Some(p) => Scenario(parse_scenario(p)?),
        None => Scenario::default(),
    };
    let mut root = build_airplane(&cfg.params, &scenario, version);
    cfg.apply(&mut root)?;
    Ok(root)
}

fn setup(c: &Common) -> Result<Setup, CliError> {
    let cfg = load_config(c)?;
    let rules = c.env_rules.as_deref().map(parse_env_rules).transpose()?;
    let root = model(c, &cfg)?;
    let system = system_from(&cfg.params, root, rules.as_deref())?;
    let budget = c.budget.unwrap_or(DEFAULT_BUDGET);
    if budget == 0 {
        return Err(CliError::Usage("--budget must be positive".into()));
    }
    Ok(Setup {
        system,
        opts: ExploreOptions {
            quantize: c.quantize.or(cfg.quantization_decimals),
            budget,
        },
    })
}

fn bound(c: &Common, default: u64, system: &System) -> u64 {
    let b = c.bound.unwrap_or(default);
    let period = system.period_ms();
    if !b.is_multiple_of(period) {
        eprintln!(
            "warning: bound {b} ms is not a multiple of the {period} ms period; using {} ms",
            b / period * period
        );
    }
    b
}

fn create(path: &Path) -> Result<BufWriter<File>, CliError> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))
}

fn write_states<'a>(
    out: Option<&Path>,
    states: impl IntoIterator<Item = &'a SystemState>,
) -> Result<(), CliError> {
    match out {
        Some(p) => {
            let mut w = create(p)?;
            write_csv(&mut w, states)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            write_csv(&mut w, states)?;
            w.flush()?;
        }
    }
    Ok(())
}

/// The outer input injected by an environment choice, as written in a
/// choices file.
fn choice_label(c: &EnvChoice) -> String {
    match c
        .get("input")
        .and_then(|v| v.first())
        .and_then(Value::as_num)
    {
        Some(x) => x.to_string(),
        None => "none".to_string(),
    }
}

fn write_choices(path: &Path, labels: &[String]) -> Result<(), CliError> {
    let mut w = create(path)?;
    for l in labels {
        writeln!(w, "{l}")?;
    }
    w.flush()?;
    Ok(())
}

fn choices_path(out: &Path) -> std::path::PathBuf {
    out.with_extension("choices")
}

fn cmd_simulate(c: &Common, choices: Option<&Path>) -> Result<u8, CliError> {
    let mut s = setup(c)?;
    let policy = match choices {
        None => Policy::deterministic(),
        Some(p) => {
            let script = parse_choices(p)?;
            let mut distinct: Vec<EnvChoice> = vec![EnvChoice::empty()];
            let mut idx = Vec::new();
            for x in script {
                let choice = match x {
                    None => EnvChoice::empty(),
                    Some(v) => EnvChoice::single("input", vec![Value::Num(v)]),
                };
                let i = match distinct.iter().position(|d| *d == choice) {
                    Some(i) => i,
                    None => {
                        distinct.push(choice);
                        distinct.len() - 1
                    }
                };
                idx.push(i);
            }
            s.system.env = EnvSpec::new(distinct).expect("nonempty");
            Policy::script(idx)
        }
    };
    let b = bound(c, 6000, &s.system);
    let trace = simulate(&s.system, &policy, b)?;
    write_states(c.out.as_deref(), trace.states())?;
    if let Some(p) = &c.out {
        println!(
            "wrote {} steps ({} ms) to {}",
            trace.len(),
            trace.elapsed_ms(),
            p.display()
        );
    }
    Ok(0)
}

fn describe(s: &SystemState) -> String {
    match status_records(s).last() {
        Some(r) => format!(
            "t = {} ms, last status dir {} roll {} yaw {} goal {}",
            s.elapsed_ms, r.dir, r.roll, r.yaw, r.goal
        ),
        None => format!("t = {} ms, no status yet", s.elapsed_ms),
    }
}

fn cmd_search(c: &Common, pred: &str, max: usize) -> Result<u8, CliError> {
    if max == 0 {
        return Err(CliError::Usage("--max must be at least 1".into()));
    }
    let s = setup(c)?;
    let props = airplane::propositions();
    if !props.contains(pred) {
        let known: Vec<&str> = props.names().collect();
        return Err(CliError::Usage(format!(
            "unknown predicate `{pred}` (known: {})",
            known.join(", ")
        )));
    }
    let b = bound(c, 27000, &s.system);
    let r = search(&s.system, &props, pred, max, b, &s.opts)?;
    println!("states explored: {}", r.explored);
    if r.solutions.is_empty() {
        println!("No solution.");
        return Ok(0);
    }
    let choices = s.system.env.choices();
    for (k, sol) in r.solutions.iter().enumerate() {
        println!(
            "Solution {} (state {}, {} steps)",
            k + 1,
            sol.index,
            sol.depth()
        );
        let labels: Vec<String> = sol
            .choices
            .iter()
            .map(|&i| choice_label(&choices[i]))
            .collect();
        println!("  inputs: [{}]", labels.join(", "));
        println!("  {}", describe(sol.state()));
    }
    if let Some(p) = &c.out {
        let first = &r.solutions[0];
        write_states(Some(p), &first.path)?;
        let labels: Vec<String> = first
            .choices
            .iter()
            .map(|&i| choice_label(&choices[i]))
            .collect();
        write_choices(&choices_path(p), &labels)?;
    }
    Ok(1)
}

fn cmd_check(c: &Common, formula: &str) -> Result<u8, CliError> {
    let f = parse_formula(formula).map_err(|e| CliError::Usage(format!("formula: {e}")))?;
    let s = setup(c)?;
    let props = airplane::propositions();
    let b = bound(c, 7200, &s.system);
    let (verdict, g) = check_ltl(&s.system, &f, &props, b, &s.opts)?;
    println!("formula: {f}");
    println!("states explored: {}", g.len());
    let Some(lasso) = verdict.counterexample() else {
        println!("Result: holds");
        return Ok(0);
    };
    println!("Result: violated");
    let path: Vec<usize> = lasso.prefix.iter().chain(&lasso.cycle).copied().collect();
    let choices = s.system.env.choices();
    let labels: Vec<String> = path
        .windows(2)
        .filter_map(|w| g.edge_choice(w[0], w[1]))
        .map(|i| choice_label(&choices[i]))
        .collect();
    println!(
        "counterexample: prefix of {} state(s), cycle of {} state(s)",
        lasso.prefix.len(),
        lasso.cycle.len()
    );
    println!("  inputs: [{}]", labels.join(", "));
    for &n in &path {
        println!("  {}", describe(g.state(n)));
    }
    if let Some(p) = &c.out {
        write_states(Some(p), path.iter().map(|&n| g.state(n)))?;
        write_choices(&choices_path(p), &labels)?;
    }
    Ok(1)
}

fn cmd_validate(c: &Common) -> Result<u8, CliError> {
    let cfg = load_config(c)?;
    let root = model(c, &cfg)?;
    let problems = cfg.params.check();
    let report = validate(&root);
    for p in &problems {
        println!("parameters: {p}");
    }
    print!("{report}");
    Ok(if report.is_valid() && problems.is_empty() {
        0
    } else {
        3
    })
}
