//! Batch runner for the improvelearn scenarios.
//!
//! `run` resolves a [`RunConfig`], executes the scenario and writes
//! `results.csv`, `summary.json` and `manifest.json` into the output
//! directory. Exit codes: 0 when every registered expectation holds, 2 when
//! one fails, 1 on any error.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod runners;

use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use improvelearn::graph::{parse_edge_list, parse_labeling, teach_risk_averse_student, GraphInstance};
use improvelearn::stats::format_g;
use improvelearn::theory::{catalogue, catalogue_json, lookup};
use improvelearn::Error;
use serde_json::{json, Value};

pub use config::{RunArgs, RunConfig};
pub use runners::{run_scenario, Outcome};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_EXPECTATION: i32 = 2;

/// One registered expectation compared with the run.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct Check {
    pub metric: String,
    pub op: String,
    pub expected: Value,
    pub actual: f64,
    /// `None` for informational entries.
    pub pass: Option<bool>,
}

pub fn check_expectations(scenario: &str, outcome: &Outcome) -> Result<Vec<Check>> {
    let entry = lookup(scenario)?;
    entry
        .expectations
        .iter()
        .map(|e| {
            let actual = *outcome
                .metrics
                .get(&e.metric)
                .with_context(|| format!("scenario {scenario} did not report `{}`", e.metric))?;
            let op = serde_json::to_value(e.op)?.as_str().unwrap_or_default().to_string();
            Ok(Check { metric: e.metric.clone(), op, expected: e.value.clone(), actual, pass: e.check(actual)? })
        })
        .collect()
}

pub fn summary_json(cfg: &RunConfig, outcome: &Outcome, checks: &[Check]) -> Value {
    let estimates: serde_json::Map<String, Value> = outcome
        .estimates
        .iter()
        .map(|(k, e)| {
            let (lo, hi) = e.ci95();
            (k.clone(), json!({ "mean": e.mean, "stderr": e.stderr, "n": e.n, "ci95": [lo, hi] }))
        })
        .collect();
    json!({
        "scenario": cfg.scenario,
        "pass": checks.iter().all(|c| c.pass != Some(false)),
        "expectations": checks,
        "metrics": outcome.metrics,
        "estimates": estimates,
    })
}

pub fn manifest_json(cfg: &RunConfig) -> Result<Value> {
    let entry = lookup(&cfg.scenario)?;
    Ok(json!({
        "tool": env!("CARGO_PKG_NAME"),
        "version": env!("CARGO_PKG_VERSION"),
        "scenario": cfg.scenario,
        "parameters": cfg.params,
        "seed": cfg.seed,
        "jobs": cfg.jobs,
        "out": cfg.out,
        "columns": entry.columns,
    }))
}

fn write_json(path: &Path, v: &Value) -> Result<()> {
    let mut text = serde_json::to_string_pretty(v)?;
    text.push('\n');
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

/// Runs a scenario and writes its three output files. Returns whether every
/// expectation held.
pub fn run_and_write(cfg: &RunConfig) -> Result<(Outcome, Vec<Check>)> {
    let outcome = run_scenario(cfg)?;
    let checks = check_expectations(&cfg.scenario, &outcome)?;
    fs::create_dir_all(&cfg.out).with_context(|| format!("creating {}", cfg.out.display()))?;
    fs::write(cfg.out.join("results.csv"), &outcome.csv).context("writing results.csv")?;
    write_json(&cfg.out.join("summary.json"), &summary_json(cfg, &outcome, checks.as_slice()))?;
    write_json(&cfg.out.join("manifest.json"), &manifest_json(cfg)?)?;
    Ok((outcome, checks))
}

/// Prints a one-line diagnostic and returns the error exit code.
pub fn report_error(e: &anyhow::Error) -> i32 {
    let text = format!("{e:#}").replace('\n', " ");
    eprintln!("error: {text}");
    EXIT_ERROR
}

pub fn cmd_run(scenario: &str, tokens: &[String]) -> i32 {
    let result = RunArgs::parse(tokens)
        .and_then(|args| RunConfig::resolve(scenario, &args))
        .and_then(|cfg| run_and_write(&cfg).map(|r| (cfg, r)));
    match result {
        Err(e) => report_error(&e),
        Ok((cfg, (_, checks))) => {
            for c in &checks {
                let verdict = match c.pass {
                    Some(true) => "pass",
                    Some(false) => "FAIL",
                    None => "info",
                };
                println!("{verdict:4}  {} = {} ({} {})", c.metric, format_g(c.actual), c.op, c.expected);
            }
            println!("wrote {}", cfg.out.display());
            if checks.iter().any(|c| c.pass == Some(false)) {
                EXIT_EXPECTATION
            } else {
                EXIT_OK
            }
        }
    }
}

pub fn cmd_list(as_json: bool) -> i32 {
    if as_json {
        print!("{}", catalogue_json());
        return EXIT_OK;
    }
    for e in catalogue() {
        println!("{}  [{}]", e.id, e.kind);
        println!("    {}", e.claim);
        let defaults: Vec<String> = e.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect();
        if !defaults.is_empty() {
            println!("    defaults: {}", defaults.join(" "));
        }
    }
    EXIT_OK
}

/// Teaching set of a graph instance read from files, one line of ids and
/// one line with the verification result.
pub fn teach_files(graph: &Path, labeling: &Path) -> Result<std::result::Result<Vec<usize>, String>> {
    let g = parse_edge_list(&fs::read_to_string(graph).with_context(|| format!("reading {}", graph.display()))?)
        .with_context(|| format!("parsing {}", graph.display()))?;
    let text = fs::read_to_string(labeling).with_context(|| format!("reading {}", labeling.display()))?;
    let labels = parse_labeling(&text, Some(g.n())).with_context(|| format!("parsing {}", labeling.display()))?;
    let inst = GraphInstance::new(std::sync::Arc::new(g), labels)?;
    match teach_risk_averse_student(&inst) {
        Ok((set, _)) => Ok(Ok(set)),
        Err(Error::InvariantViolation(msg)) => Ok(Err(msg)),
        Err(e) => Err(e.into()),
    }
}

pub fn cmd_teach(graph: &Path, labeling: &Path) -> i32 {
    match teach_files(graph, labeling) {
        Err(e) => report_error(&e),
        Ok(Ok(set)) => {
            let ids: Vec<String> = set.iter().map(usize::to_string).collect();
            println!("{}", ids.join(" "));
            println!("verified: improvement loss 0");
            EXIT_OK
        }
        Ok(Err(msg)) => {
            println!("verification failed: {msg}");
            EXIT_EXPECTATION
        }
    }
}
