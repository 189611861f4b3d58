//! Run configuration. Values come from the registry defaults, then an
//! optional JSON file, then `--key value` flags; later sources win.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use improvelearn::theory::{lookup, ScenarioEntry};
use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub scenario: String,
    /// Fully resolved scenario parameters.
    pub params: BTreeMap<String, Value>,
    pub seed: u64,
    pub jobs: usize,
    pub out: PathBuf,
}

/// Flags of `run` before resolution.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunArgs {
    pub config: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub jobs: Option<usize>,
    pub seed: Option<u64>,
    pub overrides: Vec<(String, String)>,
}

impl RunArgs {
    /// Parses `--key value` and `--key=value` tokens.
    pub fn parse<S: AsRef<str>>(tokens: &[S]) -> Result<Self> {
        let mut args = RunArgs::default();
        let mut it = tokens.iter().map(AsRef::as_ref);
        while let Some(tok) = it.next() {
            let Some(flag) = tok.strip_prefix("--") else {
                bail!("unexpected argument `{tok}`; parameters are given as --key value");
            };
            let (key, value) = match flag.split_once('=') {
                Some((k, v)) => (k.to_string(), v.to_string()),
                None => {
                    let v = it.next().ok_or_else(|| anyhow!("flag --{flag} needs a value"))?;
                    (flag.to_string(), v.to_string())
                }
            };
            match key.as_str() {
                "config" => args.config = Some(value.into()),
                "out" => args.out = Some(value.into()),
                "jobs" => args.jobs = Some(value.parse().with_context(|| format!("--jobs `{value}`"))?),
                "seed" => args.seed = Some(value.parse().with_context(|| format!("--seed `{value}`"))?),
                _ => args.overrides.push((key.replace('-', "_"), value)),
            }
        }
        Ok(args)
    }
}

fn default_jobs() -> usize {
    std::thread::available_parallelism().map_or(1, usize::from)
}

/// Checks that `v` has the same JSON kind as the default `d`.
fn coerce(key: &str, d: &Value, v: Value) -> Result<Value> {
    let ok = match d {
        Value::Number(n) if n.is_u64() => v.as_u64().is_some(),
        Value::Number(_) => v.as_f64().is_some_and(f64::is_finite),
        Value::String(_) => v.is_string(),
        Value::Bool(_) => v.is_boolean(),
        _ => false,
    };
    if !ok {
        bail!("parameter `{key}` expects a value like {d}, got {v}");
    }
    // Keep reals as reals so that manifests print them uniformly.
    Ok(match (d, &v) {
        (Value::Number(n), Value::Number(x)) if !n.is_u64() => Value::from(x.as_f64().unwrap_or(f64::NAN)),
        _ => v,
    })
}

fn parse_flag(key: &str, d: &Value, text: &str) -> Result<Value> {
    let v = match d {
        Value::String(_) => Value::String(text.to_string()),
        Value::Number(n) if n.is_u64() => Value::from(
            text.parse::<u64>()
                .map_err(|_| anyhow!("parameter `{key}` expects a non-negative integer, got `{text}`"))?,
        ),
        Value::Number(_) => {
            Value::from(text.parse::<f64>().map_err(|_| anyhow!("parameter `{key}` expects a number, got `{text}`"))?)
        }
        Value::Bool(_) => Value::Bool(
            text.parse::<bool>().map_err(|_| anyhow!("parameter `{key}` expects true or false, got `{text}`"))?,
        ),
        _ => bail!("parameter `{key}` cannot be overridden"),
    };
    coerce(key, d, v)
}

fn read_config_file(path: &Path) -> Result<BTreeMap<String, Value>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let v: Value = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    match v {
        Value::Object(map) => Ok(map.into_iter().collect()),
        _ => bail!("{} must hold a JSON object", path.display()),
    }
}

impl RunConfig {
    pub fn resolve(scenario: &str, args: &RunArgs) -> Result<Self> {
        let entry: ScenarioEntry = lookup(scenario)?;
        let mut params = entry.parameters.clone();
        // Seed for scenarios whose registry entry has no `seed` key.
        let mut file_seed = 0;
        let mut jobs = default_jobs();
        let mut out = PathBuf::from("out").join(scenario);

        let unknown = |key: &str| anyhow!("unknown parameter `{key}` for scenario {scenario}");
        if let Some(path) = &args.config {
            for (key, v) in read_config_file(path)? {
                match key.as_str() {
                    "seed" if !params.contains_key("seed") => {
                        file_seed = v.as_u64().ok_or_else(|| anyhow!("`seed` must be a non-negative integer"))?;
                    }
                    "jobs" => jobs = v.as_u64().ok_or_else(|| anyhow!("`jobs` must be a positive integer"))? as usize,
                    "out" => out = v.as_str().ok_or_else(|| anyhow!("`out` must be a path"))?.into(),
                    _ => {
                        let d = entry.parameters.get(&key).ok_or_else(|| unknown(&key))?;
                        let v = coerce(&key, d, v)?;
                        params.insert(key, v);
                    }
                }
            }
        }
        for (key, text) in &args.overrides {
            let d = entry.parameters.get(key).ok_or_else(|| unknown(key))?;
            params.insert(key.clone(), parse_flag(key, d, text)?);
        }
        let seed = args.seed.or_else(|| params.get("seed").and_then(Value::as_u64)).unwrap_or(file_seed);
        if params.contains_key("seed") {
            params.insert("seed".into(), Value::from(seed));
        }
        if let Some(j) = args.jobs {
            jobs = j;
        }
        if jobs == 0 {
            bail!("--jobs must be at least 1");
        }
        if let Some(o) = &args.out {
            out = o.clone();
        }
        Ok(RunConfig { scenario: scenario.to_string(), params, seed, jobs, out })
    }

    fn raw(&self, key: &str) -> Result<&Value> {
        self.params.get(key).ok_or_else(|| anyhow!("scenario {} has no parameter `{key}`", self.scenario))
    }

    pub fn f64(&self, key: &str) -> Result<f64> {
        self.raw(key)?.as_f64().ok_or_else(|| anyhow!("parameter `{key}` is not a number"))
    }

    pub fn usize(&self, key: &str) -> Result<usize> {
        let v = self.raw(key)?.as_u64().ok_or_else(|| anyhow!("parameter `{key}` is not an integer"))?;
        usize::try_from(v).map_err(|_| anyhow!("parameter `{key}` is too large"))
    }

    pub fn str(&self, key: &str) -> Result<&str> {
        self.raw(key)?.as_str().ok_or_else(|| anyhow!("parameter `{key}` is not a string"))
    }

    /// Comma-separated list parameter.
    pub fn list<T: std::str::FromStr>(&self, key: &str) -> Result<Vec<T>> {
        let text = self.str(key)?;
        let items = text
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<T>().map_err(|_| anyhow!("parameter `{key}`: cannot parse `{s}`")))
            .collect::<Result<Vec<T>>>()?;
        if items.is_empty() {
            bail!("parameter `{key}` is empty");
        }
        Ok(items)
    }

    /// Integer parameter where 0 selects `derived`.
    pub fn usize_or(&self, key: &str, derived: usize) -> Result<usize> {
        Ok(match self.usize(key)? {
            0 => derived,
            v => v,
        })
    }
}
