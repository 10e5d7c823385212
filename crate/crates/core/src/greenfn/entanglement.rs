use std::f64::consts::LN_2;

use num_complex::Complex64;
use serde::Serialize;

use super::two_particle::{G2Component, TwoParticleGLesser};
use crate::error::{Error, Result};
use crate::fermion::separability::slater_defect;
use crate::fermion::{
    is_fermionic_separable, pure_state_entanglement, slater_rank, slater_witness, EofOptions,
    TwoFermionMixedState, TwoFermionPureState, Verdict,
};
use crate::numerics::eig::min_eigenvalue;
use crate::numerics::matrix::inner;
use crate::numerics::{hermitian_eig, ComplexMatrix};

const PSD_TOL: f64 = 1e-9;
/// A retained certificate must reproduce the normalized slice to this accuracy.
pub const CERTIFICATE_TOL: f64 = 1e-8;
const MEMBER_WEIGHT_FLOOR: f64 = 1e-14;

#[derive(Debug, Clone, Serialize)]
pub struct G2Report {
    pub time_index: usize,
    pub verdict: Verdict,
    /// Entanglement of formation estimate of the normalized slice, nats.
    pub eof: f64,
    pub certificate_used: bool,
    pub certificate_residual: Option<f64>,
    pub converged: bool,
    pub worst_member_defect: f64,
    pub min_eigenvalue: f64,
    /// `Tr(W rho)` for the witness built from the dominant eigenvector, when entangled.
    pub witness_value: Option<f64>,
}

/// Slater ensemble of `sum_k v_k X_k ^ Y_k`: with `X = sum x_a |a><a|` and
/// `Y = sum y_b |b><b|`, each term is `sum x_a y_b |a ^ b><a ^ b|` and
/// `|| a ^ b ||^2 = 1 - |<a|b>|^2`.
pub fn certificate_ensemble(
    components: &[G2Component],
    a: usize,
) -> Result<Vec<(f64, TwoFermionPureState)>> {
    let mut members = vec![];
    for c in components {
        let ex = hermitian_eig(c.g1.slice(a)?)?;
        let ey = hermitian_eig(c.g2.slice(a)?)?;
        for (ia, &x) in ex.values.iter().enumerate() {
            if x <= MEMBER_WEIGHT_FLOOR {
                continue;
            }
            let u = ex.vector(ia);
            for (ib, &y) in ey.values.iter().enumerate() {
                if y <= MEMBER_WEIGHT_FLOOR {
                    continue;
                }
                let mut v = ey.vector(ib);
                let ov = inner(&u, &v);
                let weight = c.weight * x * y * (1.0 - ov.norm_sqr());
                if weight <= MEMBER_WEIGHT_FLOOR {
                    continue;
                }
                v.iter_mut().zip(&u).for_each(|(z, w)| *z -= ov * w);
                members.push((weight, TwoFermionPureState::slater(&u, &v)?));
            }
        }
    }
    if members.is_empty() {
        return Err(Error::InvalidInput("certificate has no members".into()));
    }
    Ok(members)
}

fn check_certificate(
    components: &[G2Component],
    a: usize,
    rho: &TwoFermionMixedState,
) -> Result<(f64, f64, f64)> {
    let members = certificate_ensemble(components, a)?;
    let total: f64 = members.iter().map(|m| m.0).sum();
    let n = rho.matrix().rows();
    let mut sum = ComplexMatrix::zeros(n, n);
    let mut eof = 0.0;
    let mut worst = 0.0f64;
    for (w, psi) in &members {
        sum.add_scaled(Complex64::new(w / total, 0.0), &psi.projector());
        eof += w / total * pure_state_entanglement(psi)?;
        worst = worst.max(slater_defect(psi)?);
    }
    Ok((sum.max_abs_diff(rho.matrix()), eof, worst))
}

/// Separability verdict of the normalized slice `a`.
///
/// A retained component list is tried first as a certificate; otherwise (or if it
/// fails to reproduce the slice) the entanglement-of-formation optimizer decides.
pub fn g2_entanglement_test(
    g2: &TwoParticleGLesser,
    a: usize,
    tol: f64,
    opts: &EofOptions,
) -> Result<G2Report> {
    let s = g2.normalized_slice(a)?;
    let min_eig = min_eigenvalue(&s)?;
    if min_eig < -PSD_TOL {
        return Err(Error::NotPositive {
            min_eigenvalue: min_eig,
        });
    }
    let rho = TwoFermionMixedState::new(g2.d(), s)?;

    let mut certificate_residual = None;
    if let Some(components) = g2.components() {
        let (residual, eof, worst) = check_certificate(components, a, &rho)?;
        certificate_residual = Some(residual);
        if residual <= CERTIFICATE_TOL && eof <= LN_2 + tol && worst <= tol {
            return Ok(G2Report {
                time_index: a,
                verdict: Verdict::Separable,
                eof,
                certificate_used: true,
                certificate_residual,
                converged: true,
                worst_member_defect: worst,
                min_eigenvalue: min_eig,
                witness_value: None,
            });
        }
    }

    let r = is_fermionic_separable(&rho, tol, opts)?;
    let witness_value = if r.verdict == Verdict::Entangled {
        dominant_witness_value(&rho)?
    } else {
        None
    };
    Ok(G2Report {
        time_index: a,
        verdict: r.verdict,
        eof: r.eof.value,
        certificate_used: false,
        certificate_residual,
        converged: r.eof.converged,
        worst_member_defect: r.worst_member_defect,
        min_eigenvalue: min_eig,
        witness_value,
    })
}

fn dominant_witness_value(rho: &TwoFermionMixedState) -> Result<Option<f64>> {
    let e = hermitian_eig(rho.matrix())?;
    let top = e.vector(e.values.len() - 1);
    let psi = TwoFermionPureState::from_pair_amplitudes(rho.d(), &top)?;
    if slater_rank(&psi)? < 2 {
        return Ok(None);
    }
    Ok(Some(slater_witness(&psi)?.expectation(rho)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fermion::DEFAULT_SEPARABILITY_TOL;
    use crate::greenfn::one_particle::{uniform_times, OneParticleGLesser};
    use crate::greenfn::two_particle::{hf_g2, separable_g2_construct};
    use crate::numerics::random::{random_isometry, random_state};
    use crate::numerics::{Seed, StateKind};

    fn energies(d: usize) -> Vec<f64> {
        (0..d).map(|k| 0.3 + 0.7 * k as f64).collect()
    }

    fn two_block_slice() -> ComplexMatrix {
        let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let z = Complex64::new(0.0, 0.0);
        let psi = TwoFermionPureState::from_pair_amplitudes(4, &[h, z, z, z, z, h]).unwrap();
        psi.projector().scale_real(2.0)
    }

    #[test]
    fn hf_is_separable_at_every_time() {
        for n in [2usize, 3] {
            let mut rng = Seed(40 + n as u64).rng();
            let q = random_isometry(&mut rng, 6, n);
            let g = OneParticleGLesser::slater(energies(6), &q, uniform_times(4.0, 3)).unwrap();
            let g2 = hf_g2(&g).unwrap();
            for a in 0..3 {
                let r =
                    g2_entanglement_test(&g2, a, DEFAULT_SEPARABILITY_TOL, &EofOptions::default())
                        .unwrap();
                assert_eq!(r.verdict, Verdict::Separable, "n = {n}, a = {a}: {r:?}");
                assert!(!r.certificate_used);
            }
        }
    }

    #[test]
    fn construct_is_accepted_by_certificate() {
        let d = 5;
        let mut rng = Seed(9).rng();
        let comps = (0..3)
            .map(|k| {
                let g1 = random_state(Seed(100 + k as u64), d, StateKind::Mixed);
                let q = random_isometry(&mut rng, d, 2);
                G2Component {
                    weight: [0.25, 0.25, 0.5][k],
                    g1: OneParticleGLesser::new(energies(d), g1, uniform_times(3.0, 4)).unwrap(),
                    g2: OneParticleGLesser::slater(energies(d), &q, uniform_times(3.0, 4)).unwrap(),
                }
            })
            .collect();
        let g2 = separable_g2_construct(comps).unwrap();
        for a in 0..4 {
            let r = g2_entanglement_test(&g2, a, DEFAULT_SEPARABILITY_TOL, &EofOptions::default())
                .unwrap();
            assert_eq!(r.verdict, Verdict::Separable);
            assert!(r.certificate_used);
            assert!(r.certificate_residual.unwrap() < 1e-10);
            assert!((r.eof - LN_2).abs() < 1e-10);
        }
    }

    #[test]
    fn two_block_slice_is_entangled() {
        let g2 = TwoParticleGLesser::from_slices(4, vec![0.0], vec![two_block_slice()]).unwrap();
        let r =
            g2_entanglement_test(&g2, 0, DEFAULT_SEPARABILITY_TOL, &EofOptions::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Entangled);
        assert!((r.eof - 2.0 * LN_2).abs() < 1e-2, "eof {}", r.eof);
        assert!((r.witness_value.unwrap() + 0.5).abs() < 1e-9);
    }

    #[test]
    fn verdict_is_time_covariant() {
        let g2 = TwoParticleGLesser::free_evolution(
            &energies(4),
            &two_block_slice(),
            uniform_times(6.0, 4),
        )
        .unwrap();
        for a in 0..4 {
            let r = g2_entanglement_test(&g2, a, DEFAULT_SEPARABILITY_TOL, &EofOptions::default())
                .unwrap();
            assert_eq!(r.verdict, Verdict::Entangled);
        }
    }

    #[test]
    fn rejects_non_positive_slice() {
        let mut s = two_block_slice();
        s[(1, 1)] = Complex64::new(-0.5, 0.0);
        let g2 = TwoParticleGLesser::from_slices(4, vec![0.0], vec![s]).unwrap();
        assert!(matches!(
            g2_entanglement_test(&g2, 0, DEFAULT_SEPARABILITY_TOL, &EofOptions::default()),
            Err(Error::NotPositive { .. })
        ));
        assert!(matches!(
            g2_entanglement_test(&g2, 1, DEFAULT_SEPARABILITY_TOL, &EofOptions::default()),
            Err(Error::IndexOutOfRange { .. })
        ));
    }
}
