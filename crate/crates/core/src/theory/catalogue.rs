//! Scenario registry, kept as versioned data so that thresholds can be
//! inspected without reading code.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

const REGISTRY: &str = include_str!("catalogue.json");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExpectationOp {
    Ge,
    Le,
    Eq,
    In,
    /// Reported, never failed.
    Info,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Expectation {
    pub metric: String,
    pub op: ExpectationOp,
    pub value: Value,
}

impl Expectation {
    /// `None` for informational entries.
    pub fn check(&self, actual: f64) -> Result<Option<bool>> {
        let num = |v: &Value| {
            v.as_f64().ok_or_else(|| Error::Argument(format!("expectation on `{}` needs a number", self.metric)))
        };
        Ok(match self.op {
            ExpectationOp::Ge => Some(actual >= num(&self.value)?),
            ExpectationOp::Le => Some(actual <= num(&self.value)?),
            ExpectationOp::Eq => Some(actual == num(&self.value)?),
            ExpectationOp::In => {
                let pair =
                    self.value.as_array().filter(|a| a.len() == 2).ok_or_else(|| {
                        Error::Argument(format!("range expectation on `{}` needs [lo, hi]", self.metric))
                    })?;
                Some(actual >= num(&pair[0])? && actual <= num(&pair[1])?)
            }
            ExpectationOp::Info => None,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioEntry {
    pub id: String,
    pub kind: String,
    pub claim: String,
    pub description: String,
    /// Defaults; every key a run accepts appears here.
    pub parameters: BTreeMap<String, Value>,
    pub expectations: Vec<Expectation>,
    /// Header of the scenario's results table.
    pub columns: Vec<String>,
}

pub fn catalogue() -> Vec<ScenarioEntry> {
    serde_json::from_str(REGISTRY).expect("embedded registry is valid JSON")
}

pub fn lookup(id: &str) -> Result<ScenarioEntry> {
    catalogue().into_iter().find(|e| e.id == id).ok_or_else(|| Error::UnknownScenario(id.to_string()))
}

/// Machine-readable export of the registry.
pub fn catalogue_json() -> String {
    let mut s = serde_json::to_string_pretty(&catalogue()).expect("registry serialises");
    s.push('\n');
    s
}
