//! `W = c I - |psi><psi|` with `c = 2|z_1|^2`.
//!
//! For a Slater determinant `S = u ^ v` (orthonormal `u`, `v`) the overlap is
//! `<S|psi> = sqrt(2) u^dagger A conj(v)`, so `c` is the claimed maximum of
//! `|<S|psi>|^2`. The claim is checked at construction by alternating ascent from
//! random starts: for fixed `u` the best `v` is `conj(A^dagger u)` normalized, and
//! for fixed `v` the best `u` is `A conj(v)` normalized.

use num_complex::Complex64;

use super::slater::slater_decompose;
use super::state::{normalize, TwoFermionMixedState, TwoFermionPureState};
use crate::error::{Error, Result};
use crate::numerics::matrix::inner;
use crate::numerics::random::random_unit_vector;
use crate::numerics::{ComplexMatrix, Seed};

/// Randomized search may not beat `c` by more than this.
pub const VALIDATION_SLACK: f64 = 1e-6;
const DEFAULT_TRIALS: usize = 64;
const ASCENT_STEPS: usize = 200;

#[derive(Debug, Clone)]
pub struct Witness {
    pub d: usize,
    pub w: ComplexMatrix,
    pub slater_bound: f64,
    /// Best Slater overlap found by the randomized search.
    pub searched_max: f64,
    psi: TwoFermionPureState,
}

impl Witness {
    /// `Tr(W sigma)`
    pub fn expectation(&self, sigma: &TwoFermionMixedState) -> f64 {
        self.slater_bound - sigma.fidelity_with(&self.psi)
    }

    pub fn target(&self) -> &TwoFermionPureState {
        &self.psi
    }
}

/// `|<u ^ v | psi>|^2` for orthonormal `u`, `v`.
pub fn slater_overlap(a: &ComplexMatrix, u: &[Complex64], v: &[Complex64]) -> f64 {
    let vbar: Vec<Complex64> = v.iter().map(|z| z.conj()).collect();
    2.0 * inner(u, &a.mul_vec(&vbar)).norm_sqr()
}

/// Largest Slater overlap found by alternating ascent from `trials` random starts.
pub fn search_max_slater_overlap(psi: &TwoFermionPureState, seed: Seed, trials: usize) -> f64 {
    let a = psi.amplitudes();
    let adj = a.adjoint();
    let d = psi.d();
    let mut rng = seed.rng();
    let mut best = 0.0f64;
    for _ in 0..trials {
        let mut u = random_unit_vector(&mut rng, d);
        let mut v = vec![Complex64::new(0.0, 0.0); d];
        let mut last = -1.0;
        for _ in 0..ASCENT_STEPS {
            v = adj.mul_vec(&u).iter().map(|z| z.conj()).collect();
            if normalize(&mut v) == 0.0 {
                break;
            }
            let vbar: Vec<Complex64> = v.iter().map(|z| z.conj()).collect();
            u = a.mul_vec(&vbar);
            if normalize(&mut u) == 0.0 {
                break;
            }
            let val = slater_overlap(a, &u, &v);
            if (val - last).abs() < 1e-15 {
                break;
            }
            last = val;
        }
        // remove any numerical overlap before scoring
        let c = inner(&u, &v);
        v.iter_mut().zip(&u).for_each(|(x, y)| *x -= c * y);
        if normalize(&mut v) > 0.0 {
            best = best.max(slater_overlap(a, &u, &v));
        }
    }
    best
}

pub fn slater_witness(psi: &TwoFermionPureState) -> Result<Witness> {
    slater_witness_with(psi, Seed(0), DEFAULT_TRIALS)
}

pub fn slater_witness_with(
    psi: &TwoFermionPureState,
    seed: Seed,
    trials: usize,
) -> Result<Witness> {
    let dec = slater_decompose(psi)?;
    if dec.slater_rank < 2 {
        return Err(Error::SlaterRankOne);
    }
    let c = dec.max_slater_weight();
    let searched_max = search_max_slater_overlap(psi, seed, trials);
    if searched_max > c + VALIDATION_SLACK {
        return Err(Error::InvalidInput(format!(
            "randomized search found Slater overlap {searched_max} above the bound {c}"
        )));
    }
    let n = psi.pair_amplitudes().len();
    let w = ComplexMatrix::identity(n)
        .scale_real(c)
        .sub(&psi.projector());
    Ok(Witness {
        d: psi.d(),
        w,
        slater_bound: c,
        searched_max,
        psi: psi.clone(),
    })
}
