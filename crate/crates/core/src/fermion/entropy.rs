use super::state::TwoFermionPureState;
use crate::error::Result;
use crate::numerics::{hermitian_eig, ComplexMatrix};

/// `rho_1 = A A^dagger`, trace one.
pub fn one_particle_rdm(psi: &TwoFermionPureState) -> ComplexMatrix {
    let a = psi.amplitudes();
    a.matmul(&a.adjoint()).hermitian_part()
}

/// `-sum lambda ln lambda` with `0 ln 0 = 0`; eigenvalues below zero from round-off are dropped.
pub fn von_neumann_entropy(rho: &ComplexMatrix) -> Result<f64> {
    Ok(entropy_of_spectrum(&hermitian_eig(rho)?.values))
}

pub fn entropy_of_spectrum(values: &[f64]) -> f64 {
    values
        .iter()
        .filter(|&&l| l > 0.0)
        .map(|&l| -l * l.ln())
        .sum()
}

/// Entanglement entropy of a pure two-fermion state, in nats. At least `ln 2`, with
/// equality exactly for Slater determinants.
pub fn pure_state_entanglement(psi: &TwoFermionPureState) -> Result<f64> {
    von_neumann_entropy(&one_particle_rdm(psi))
}

#[cfg(test)]
mod tests {
    use std::f64::consts::LN_2;

    use num_complex::Complex64;

    use super::*;
    use crate::fermion::state::random_pure_state;
    use crate::numerics::Seed;

    #[test]
    fn slater_and_two_block_entropies() {
        let s = TwoFermionPureState::basis_slater(4, 0, 1).unwrap();
        let ev = hermitian_eig(&one_particle_rdm(&s)).unwrap().values;
        let want = [0.0, 0.0, 0.5, 0.5];
        ev.iter()
            .zip(want)
            .for_each(|(a, b)| assert!((a - b).abs() < 1e-12));
        assert!((pure_state_entanglement(&s).unwrap() - LN_2).abs() < 1e-9);

        let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let z = Complex64::new(0.0, 0.0);
        let psi = TwoFermionPureState::from_pair_amplitudes(4, &[h, z, z, z, z, h]).unwrap();
        let ev = hermitian_eig(&one_particle_rdm(&psi)).unwrap().values;
        ev.iter().for_each(|a| assert!((a - 0.25).abs() < 1e-12));
        assert!((pure_state_entanglement(&psi).unwrap() - 2.0 * LN_2).abs() < 1e-9);
    }

    #[test]
    fn rdm_trace_and_cl_bound() {
        for s in 0..100 {
            let psi = random_pure_state(Seed(s), 4);
            let rho = one_particle_rdm(&psi);
            assert!((rho.trace().re - 1.0).abs() < 1e-10);
            assert!(pure_state_entanglement(&psi).unwrap() >= LN_2 - 1e-9);
        }
    }
}
