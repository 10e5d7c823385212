use std::f64::consts::LN_2;

use serde::{Deserialize, Serialize};

use super::eof::{entanglement_of_formation, EofOptions, EofResult};
use super::slater::slater_decompose;
use super::state::TwoFermionMixedState;
use crate::error::Result;

/// Default slack above `ln 2` for a separable verdict.
pub const DEFAULT_SEPARABILITY_TOL: f64 = 5e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Separable,
    Entangled,
    Inconclusive,
}

#[derive(Debug, Clone)]
pub struct SeparabilityResult {
    pub verdict: Verdict,
    /// The optimized ensemble; for a separable verdict it is the certificate.
    pub eof: EofResult,
    /// `max_k (1 - 2 |z_1(psi_k)|^2)`, zero when every member is a Slater determinant.
    pub worst_member_defect: f64,
}

/// `1 - 2|z_1|^2`: the weight of a pure state outside its best Slater determinant.
pub fn slater_defect(psi: &super::state::TwoFermionPureState) -> Result<f64> {
    Ok((1.0 - slater_decompose(psi)?.max_slater_weight()).max(0.0))
}

pub fn is_fermionic_separable(
    rho: &TwoFermionMixedState,
    tol: f64,
    opts: &EofOptions,
) -> Result<SeparabilityResult> {
    let eof = entanglement_of_formation(rho, opts)?;
    let mut worst = 0.0f64;
    for s in &eof.decomposition.states {
        worst = worst.max(slater_defect(s)?);
    }
    let verdict = if eof.value <= LN_2 + tol && worst <= tol {
        Verdict::Separable
    } else if eof.value > LN_2 + tol && eof.converged {
        Verdict::Entangled
    } else {
        Verdict::Inconclusive
    };
    Ok(SeparabilityResult {
        verdict,
        eof,
        worst_member_defect: worst,
    })
}

#[cfg(test)]
mod tests {
    use num_complex::Complex64;

    use super::*;
    use crate::fermion::state::{random_slater_mixture, TwoFermionPureState};
    use crate::numerics::Seed;

    #[test]
    fn random_slater_mixtures_are_separable() {
        for s in 0..5 {
            let mut rng = Seed(100 + s).rng();
            let rho = random_slater_mixture(&mut rng, 6, 3);
            let r = is_fermionic_separable(&rho, DEFAULT_SEPARABILITY_TOL, &EofOptions::default())
                .unwrap();
            assert_eq!(
                r.verdict,
                Verdict::Separable,
                "seed {s}: value {} defect {}",
                r.eof.value,
                r.worst_member_defect
            );
            assert!(r.eof.decomposition.residual(&rho) < 1e-6);
        }
    }

    #[test]
    fn two_block_pure_state_is_entangled() {
        let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let z = Complex64::new(0.0, 0.0);
        let psi = TwoFermionPureState::from_pair_amplitudes(4, &[h, z, z, z, z, h]).unwrap();
        let r = is_fermionic_separable(
            &TwoFermionMixedState::from_pure(&psi),
            DEFAULT_SEPARABILITY_TOL,
            &EofOptions::default(),
        )
        .unwrap();
        assert_eq!(r.verdict, Verdict::Entangled);
    }

    #[test]
    fn maximally_mixed_verdict_is_seed_stable() {
        let rho = TwoFermionMixedState::maximally_mixed(4).unwrap();
        let verdicts: Vec<Verdict> = (0..5)
            .map(|s| {
                let opts = EofOptions {
                    seed: Seed(s),
                    ..Default::default()
                };
                is_fermionic_separable(&rho, DEFAULT_SEPARABILITY_TOL, &opts)
                    .unwrap()
                    .verdict
            })
            .collect();
        assert!(
            verdicts.iter().all(|v| *v == Verdict::Separable),
            "{verdicts:?}"
        );
    }
}
