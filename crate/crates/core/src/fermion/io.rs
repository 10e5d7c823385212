//! JSON form of two-fermion states:
//! `{"d": 4, "basis": "antisym-lex", "kind": "pure", "entries": [[i, j, re, im], ...]}`.
//! Pure entries are normalized pair amplitudes `c_ij` (`i < j`); mixed entries are
//! pair-space matrix elements `[p, q, re, im]` with pairs indexed lexicographically.
//! Absent entries are zero.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::state::{pair_dim, pair_index, pairs, TwoFermionMixedState, TwoFermionPureState};
use crate::error::{Error, Result};
use crate::numerics::{ComplexMatrix, StateKind};

pub const BASIS: &str = "antisym-lex";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateJson {
    pub d: usize,
    pub basis: String,
    pub kind: StateKind,
    pub entries: Vec<(usize, usize, f64, f64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum FermionState {
    Pure(TwoFermionPureState),
    Mixed(TwoFermionMixedState),
}

impl FermionState {
    pub fn to_mixed(&self) -> TwoFermionMixedState {
        match self {
            FermionState::Pure(p) => TwoFermionMixedState::from_pure(p),
            FermionState::Mixed(m) => m.clone(),
        }
    }
}

impl From<&TwoFermionPureState> for StateJson {
    fn from(psi: &TwoFermionPureState) -> Self {
        let entries = pairs(psi.d())
            .into_iter()
            .zip(psi.pair_amplitudes())
            .filter(|(_, c)| *c != Complex64::new(0.0, 0.0))
            .map(|((i, j), c)| (i, j, c.re, c.im))
            .collect();
        Self {
            d: psi.d(),
            basis: BASIS.into(),
            kind: StateKind::Pure,
            entries,
        }
    }
}

impl From<&TwoFermionMixedState> for StateJson {
    fn from(rho: &TwoFermionMixedState) -> Self {
        Self {
            d: rho.d(),
            basis: BASIS.into(),
            kind: StateKind::Mixed,
            entries: matrix_entries(rho.matrix()),
        }
    }
}

pub(crate) fn matrix_entries(m: &ComplexMatrix) -> Vec<(usize, usize, f64, f64)> {
    let mut out = vec![];
    for p in 0..m.rows() {
        for q in 0..m.cols() {
            let z = m[(p, q)];
            if z != Complex64::new(0.0, 0.0) {
                out.push((p, q, z.re, z.im));
            }
        }
    }
    out
}

pub(crate) fn matrix_from_entries(
    n: usize,
    entries: &[(usize, usize, f64, f64)],
) -> Result<ComplexMatrix> {
    let mut m = ComplexMatrix::zeros(n, n);
    for &(p, q, re, im) in entries {
        if p >= n || q >= n {
            return Err(Error::IndexOutOfRange {
                index: p.max(q),
                len: n,
            });
        }
        m[(p, q)] = Complex64::new(re, im);
    }
    Ok(m)
}

impl StateJson {
    pub fn into_state(self) -> Result<FermionState> {
        if self.basis != BASIS {
            return Err(Error::InvalidInput(format!(
                "unsupported basis {:?}, expected {BASIS:?}",
                self.basis
            )));
        }
        if self.d < 2 {
            return Err(Error::InvalidInput(format!("d = {} is below 2", self.d)));
        }
        let d = self.d;
        match self.kind {
            StateKind::Pure => {
                let mut c = vec![Complex64::new(0.0, 0.0); pair_dim(d)];
                for &(i, j, re, im) in &self.entries {
                    if !(i < j && j < d) {
                        return Err(Error::InvalidInput(format!(
                            "pair ({i}, {j}) invalid for d = {d}"
                        )));
                    }
                    c[pair_index(d, i, j)] = Complex64::new(re, im);
                }
                Ok(FermionState::Pure(
                    TwoFermionPureState::from_pair_amplitudes(d, &c)?,
                ))
            }
            StateKind::Mixed => {
                let m = matrix_from_entries(pair_dim(d), &self.entries)?;
                Ok(FermionState::Mixed(TwoFermionMixedState::new(d, m)?))
            }
        }
    }
}

pub fn state_to_json(state: &FermionState) -> String {
    let j = match state {
        FermionState::Pure(p) => StateJson::from(p),
        FermionState::Mixed(m) => StateJson::from(m),
    };
    serde_json::to_string_pretty(&j).expect("plain data")
}

pub fn state_from_json(text: &str) -> Result<FermionState> {
    let j: StateJson =
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("state json: {e}")))?;
    j.into_state()
}
