use serde::Serialize;

use crate::config::ExperimentConfig;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub threshold: f64,
    /// `"<"`, `"<="`, `">"`, `">="` or `"=="`: how `value` is compared to `threshold`.
    pub relation: &'static str,
    pub pass: bool,
}

impl Check {
    pub fn below(name: &str, value: f64, threshold: f64) -> Self {
        Self::new(name, value, threshold, "<", value < threshold)
    }

    pub fn at_most(name: &str, value: f64, threshold: f64) -> Self {
        Self::new(name, value, threshold, "<=", value <= threshold)
    }

    pub fn above(name: &str, value: f64, threshold: f64) -> Self {
        Self::new(name, value, threshold, ">", value > threshold)
    }

    pub fn at_least(name: &str, value: f64, threshold: f64) -> Self {
        Self::new(name, value, threshold, ">=", value >= threshold)
    }

    pub fn equals(name: &str, value: f64, threshold: f64) -> Self {
        Self::new(name, value, threshold, "==", value == threshold)
    }

    fn new(name: &str, value: f64, threshold: f64, relation: &'static str, pass: bool) -> Self {
        Self {
            name: name.to_string(),
            value,
            threshold,
            relation,
            pass,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub config: ExperimentConfig,
    pub checks: Vec<Check>,
    pub pass: bool,
    /// Set when the experiment aborted; `checks` then holds what ran before.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub wall_clock_seconds: f64,
    pub artifacts: Vec<String>,
}

impl RunReport {
    pub fn failed_checks(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyAllReport {
    pub seed: u64,
    pub runs: Vec<RunReport>,
    pub pass: bool,
    pub wall_clock_seconds: f64,
}
