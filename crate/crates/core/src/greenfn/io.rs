//! JSON form of lesser Green functions, following the fermion state format with a
//! `times` array and one entry list per time:
//! `{"d": 4, "basis": "orbital", "kind": "one-particle", "times": [...], "energies": [...], "slices": [[[i, j, re, im], ...], ...]}`.
//! Two-particle slices use `"basis": "antisym-lex"` and pair indices. The separable-form
//! component list is not serialized.

use serde::{Deserialize, Serialize};

use super::one_particle::OneParticleGLesser;
use super::two_particle::TwoParticleGLesser;
use crate::error::{Error, Result};
use crate::fermion::io::{matrix_entries, matrix_from_entries, BASIS};
use crate::fermion::pair_dim;

pub const ORBITAL_BASIS: &str = "orbital";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GreenKind {
    OneParticle,
    TwoParticle,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GreenJson {
    pub d: usize,
    pub basis: String,
    pub kind: GreenKind,
    pub times: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub energies: Option<Vec<f64>>,
    pub slices: Vec<Vec<(usize, usize, f64, f64)>>,
}

#[derive(Debug, Clone)]
pub enum GreenFunction {
    One(OneParticleGLesser),
    Two(TwoParticleGLesser),
}

impl From<&OneParticleGLesser> for GreenJson {
    fn from(g: &OneParticleGLesser) -> Self {
        Self {
            d: g.d(),
            basis: ORBITAL_BASIS.into(),
            kind: GreenKind::OneParticle,
            times: g.times().to_vec(),
            energies: Some(g.energies().to_vec()),
            slices: g.slices().iter().map(matrix_entries).collect(),
        }
    }
}

impl From<&TwoParticleGLesser> for GreenJson {
    fn from(g: &TwoParticleGLesser) -> Self {
        Self {
            d: g.d(),
            basis: BASIS.into(),
            kind: GreenKind::TwoParticle,
            times: g.times().to_vec(),
            energies: None,
            slices: g.slices().iter().map(matrix_entries).collect(),
        }
    }
}

impl GreenJson {
    pub fn into_green(self) -> Result<GreenFunction> {
        if self.slices.len() != self.times.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} times for {} slices",
                self.times.len(),
                self.slices.len()
            )));
        }
        let expect_basis = match self.kind {
            GreenKind::OneParticle => ORBITAL_BASIS,
            GreenKind::TwoParticle => BASIS,
        };
        if self.basis != expect_basis {
            return Err(Error::InvalidInput(format!(
                "basis {:?} does not match kind, expected {expect_basis:?}",
                self.basis
            )));
        }
        match self.kind {
            GreenKind::OneParticle => {
                let energies = self.energies.ok_or_else(|| {
                    Error::InvalidInput("one-particle function needs energies".into())
                })?;
                if energies.len() != self.d {
                    return Err(Error::DimensionMismatch(format!(
                        "{} energies for d = {}",
                        energies.len(),
                        self.d
                    )));
                }
                let first = self
                    .slices
                    .first()
                    .ok_or_else(|| Error::InvalidInput("no slices".into()))?;
                let s0 = matrix_from_entries(self.d, first)?;
                // undo the evolution of the first slice to recover gamma at t = 0
                let t0 = self.times[0];
                let gamma = crate::numerics::ComplexMatrix::from_fn(self.d, self.d, |i, j| {
                    s0[(i, j)]
                        * num_complex::Complex64::from_polar(1.0, (energies[i] - energies[j]) * t0)
                });
                let g = OneParticleGLesser::new(energies, gamma.hermitian_part(), self.times)?;
                for (k, entries) in self.slices.iter().enumerate() {
                    let s = matrix_from_entries(self.d, entries)?;
                    let dev = s.max_abs_diff(&g.slices()[k]);
                    if dev > 1e-9 {
                        return Err(Error::InvalidInput(format!(
                            "slice {k} departs from free evolution by {dev:e}"
                        )));
                    }
                }
                Ok(GreenFunction::One(g))
            }
            GreenKind::TwoParticle => {
                let n = pair_dim(self.d);
                let slices = self
                    .slices
                    .iter()
                    .map(|e| matrix_from_entries(n, e))
                    .collect::<Result<Vec<_>>>()?;
                Ok(GreenFunction::Two(TwoParticleGLesser::from_slices(
                    self.d, self.times, slices,
                )?))
            }
        }
    }
}

pub fn green_to_json(g: &GreenFunction) -> String {
    let j = match g {
        GreenFunction::One(g) => GreenJson::from(g),
        GreenFunction::Two(g) => GreenJson::from(g),
    };
    serde_json::to_string_pretty(&j).expect("plain data")
}

pub fn green_from_json(text: &str) -> Result<GreenFunction> {
    let j: GreenJson =
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("green json: {e}")))?;
    j.into_green()
}
