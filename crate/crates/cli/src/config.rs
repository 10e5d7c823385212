use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Experiment {
    TraceIdentity,
    Wigner,
    Gwd,
    CumulantScan,
    ClBound,
    Eof,
    HfSeparability,
    G2Separability,
}

impl Experiment {
    /// Fixed order used by `verify-all`.
    pub const ALL: [Experiment; 8] = [
        Experiment::TraceIdentity,
        Experiment::Wigner,
        Experiment::Gwd,
        Experiment::CumulantScan,
        Experiment::ClBound,
        Experiment::Eof,
        Experiment::HfSeparability,
        Experiment::G2Separability,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Experiment::TraceIdentity => "trace-identity",
            Experiment::Wigner => "wigner",
            Experiment::Gwd => "gwd",
            Experiment::CumulantScan => "cumulant-scan",
            Experiment::ClBound => "cl-bound",
            Experiment::Eof => "eof",
            Experiment::HfSeparability => "hf-separability",
            Experiment::G2Separability => "g2-separability",
        }
    }

    pub fn summary(self) -> &'static str {
        match self {
            Experiment::TraceIdentity => {
                "phase-space overlap vs direct trace for random mixed-state pairs"
            }
            Experiment::Wigner => "Gaussian Wigner positivity and Fock-1 negativity",
            Experiment::Gwd => "GWD stationarity and negativity of a two-level superposition",
            Experiment::CumulantScan => {
                "negativity of densities from truncated cumulant expansions"
            }
            Experiment::ClBound => {
                "pure-state entanglement lower bound ln 2 and its equality cases"
            }
            Experiment::Eof => "entanglement-of-formation optimizer on known values",
            Experiment::HfSeparability => {
                "separability of Hartree-Fock pair matrices and G2 slices"
            }
            Experiment::G2Separability => {
                "separable-form G2, an entangled slice and witness soundness"
            }
        }
    }

    pub fn params(self) -> Vec<ParamSpec> {
        let p = |name, default, help| ParamSpec {
            name,
            default,
            help,
        };
        match self {
            Experiment::TraceIdentity => vec![
                p("n", json!(64), "grid points (power of two)"),
                p("pairs", json!(50), "random mixed-state pairs"),
                p(
                    "half_width",
                    json!(6.0),
                    "grid is [-half_width, half_width)",
                ),
            ],
            Experiment::Wigner => vec![
                p("n", json!(256), "grid points (power of two)"),
                p(
                    "half_width",
                    json!(16.0),
                    "grid is [-half_width, half_width)",
                ),
                p("gaussians", json!(20), "random Gaussian states"),
                p(
                    "tolerance",
                    json!(1e-9),
                    "values below -tolerance count as negative",
                ),
            ],
            Experiment::Gwd => vec![
                p("nx", json!(64), "space grid points (power of two)"),
                p(
                    "nt",
                    json!(64),
                    "time grid points over one period (power of two)",
                ),
                p(
                    "half_width",
                    json!(7.0),
                    "space grid is [-half_width, half_width)",
                ),
            ],
            Experiment::CumulantScan => vec![
                p("kappa1", json!(0.0), "mean of the scan base"),
                p("kappa2", json!(1.0), "variance of the scan base"),
                p(
                    "kappa3_max",
                    json!(1.0),
                    "scan covers kappa3 in [-max, max]",
                ),
                p("steps", json!(10), "scan points per side"),
                p("gaussians", json!(20), "random degree-2 vectors"),
            ],
            Experiment::ClBound => vec![
                p(
                    "d",
                    json!([4, 6, 8]),
                    "one-particle dimension, or a list cycled over samples",
                ),
                p("samples", json!(500), "random pure states"),
            ],
            Experiment::Eof => vec![
                p("d", json!(4), "one-particle dimension"),
                p("restarts", json!(16), "optimizer restarts"),
                p(
                    "seeds",
                    json!(5),
                    "consecutive seeds for the stability check",
                ),
            ],
            Experiment::HfSeparability => vec![
                p("d", json!(6), "one-particle dimension"),
                p("times", json!(4), "equal-time slices of the Green function"),
            ],
            Experiment::G2Separability => vec![
                p("d", json!(4), "one-particle dimension"),
                p("times", json!(4), "equal-time slices of the Green function"),
                p(
                    "mixtures",
                    json!(1000),
                    "random Slater mixtures for the witness check",
                ),
            ],
        }
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn valid_names() -> String {
    Experiment::ALL
        .iter()
        .map(|e| e.name())
        .collect::<Vec<_>>()
        .join(", ")
}

impl FromStr for Experiment {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Experiment::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| {
                CliError::Usage(format!(
                    "unknown experiment {s:?}; valid experiments: {}",
                    valid_names()
                ))
            })
    }
}

#[derive(Debug, Clone)]
pub struct ParamSpec {
    pub name: &'static str,
    pub default: Value,
    pub help: &'static str,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub params: BTreeMap<String, Value>,
    #[serde(default = "default_output_dir")]
    pub output_dir: PathBuf,
}

fn default_output_dir() -> PathBuf {
    PathBuf::from("out")
}

impl ExperimentConfig {
    pub fn new(experiment: Experiment, seed: u64, output_dir: PathBuf) -> Self {
        Self {
            experiment,
            seed,
            params: BTreeMap::new(),
            output_dir,
        }
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Usage(format!("config: {e}")))
    }

    /// `key=value`; the value is read as JSON and falls back to a plain string.
    pub fn set_param(&mut self, assignment: &str) -> Result<(), CliError> {
        let (k, v) = assignment.split_once('=').ok_or_else(|| {
            CliError::Usage(format!("--param expects key=value, got {assignment:?}"))
        })?;
        let value = serde_json::from_str(v).unwrap_or_else(|_| Value::String(v.to_string()));
        self.params.insert(k.trim().to_string(), value);
        Ok(())
    }

    /// Defaults merged with the given params after type checks.
    pub fn resolved(&self) -> Result<Self, CliError> {
        let specs = self.experiment.params();
        for key in self.params.keys() {
            if !specs.iter().any(|s| s.name == key) {
                let known: Vec<_> = specs.iter().map(|s| s.name).collect();
                return Err(CliError::Usage(format!(
                    "unknown parameter {key:?} for {}; known: {}",
                    self.experiment,
                    known.join(", ")
                )));
            }
        }
        let mut params = BTreeMap::new();
        for spec in specs {
            let v = self
                .params
                .get(spec.name)
                .cloned()
                .unwrap_or(spec.default.clone());
            check_type(self.experiment, &spec, &v)?;
            params.insert(spec.name.to_string(), v);
        }
        Ok(Self {
            params,
            ..self.clone()
        })
    }

    pub fn params(&self) -> Params<'_> {
        Params {
            experiment: self.experiment,
            map: &self.params,
        }
    }
}

fn check_type(e: Experiment, spec: &ParamSpec, v: &Value) -> Result<(), CliError> {
    let ok = match &spec.default {
        Value::Number(n) if n.is_u64() => v.is_u64(),
        Value::Number(_) => v.is_number(),
        // integer lists also take a single integer
        Value::Array(_) => {
            v.is_u64()
                || v.as_array()
                    .is_some_and(|a| !a.is_empty() && a.iter().all(Value::is_u64))
        }
        _ => true,
    };
    if ok {
        Ok(())
    } else {
        Err(CliError::Usage(format!(
            "parameter {} of {e} has the wrong type: {v} (default {})",
            spec.name, spec.default
        )))
    }
}

/// Typed view of resolved params.
pub struct Params<'a> {
    experiment: Experiment,
    map: &'a BTreeMap<String, Value>,
}

impl Params<'_> {
    fn get(&self, key: &str) -> &Value {
        self.map
            .get(key)
            .unwrap_or_else(|| panic!("{key} missing from resolved {} params", self.experiment))
    }

    pub fn usize(&self, key: &str) -> usize {
        self.get(key).as_u64().expect("checked integer") as usize
    }

    pub fn f64(&self, key: &str) -> f64 {
        self.get(key).as_f64().expect("checked number")
    }

    pub fn usize_list(&self, key: &str) -> Vec<usize> {
        match self.get(key) {
            Value::Array(a) => a
                .iter()
                .map(|v| v.as_u64().expect("checked") as usize)
                .collect(),
            v => vec![v.as_u64().expect("checked") as usize],
        }
    }
}
