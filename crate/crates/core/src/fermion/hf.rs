use num_complex::Complex64;

use super::state::{pair_dim, pairs, TwoFermionMixedState};
use crate::error::{Error, Result};
use crate::numerics::ComplexMatrix;

const IDEMPOTENCY_TOL: f64 = 1e-8;
const TRACE_TOL: f64 = 1e-8;

/// Antisymmetrized product of one-particle operators on the pair space,
/// `K(X, Y)[(ij),(kl)] = X_ik Y_jl + Y_ik X_jl - X_il Y_jk - Y_il X_jk`.
/// For `X = |u><u|`, `Y = |v><v|` with orthonormal `u`, `v` this is the Slater
/// projector `|u ^ v><u ^ v|`; `K(P, P) / 2` is the Hartree-Fock pair matrix.
pub fn wedge(x: &ComplexMatrix, y: &ComplexMatrix) -> ComplexMatrix {
    let d = x.rows();
    let ps = pairs(d);
    let n = ps.len();
    ComplexMatrix::from_fn(n, n, |p, q| {
        let (i, j) = ps[p];
        let (k, l) = ps[q];
        x[(i, k)] * y[(j, l)] + y[(i, k)] * x[(j, l)]
            - x[(i, l)] * y[(j, k)]
            - y[(i, l)] * x[(j, k)]
    })
}

/// `Gamma[(ij),(kl)] = P_ik P_jl - P_il P_jk`, trace `N(N-1)/2` for a rank-`N` projector.
pub fn hf_pair_matrix(p: &ComplexMatrix) -> ComplexMatrix {
    let d = p.rows();
    let ps = pairs(d);
    let n = ps.len();
    ComplexMatrix::from_fn(n, n, |a, b| {
        let (i, j) = ps[a];
        let (k, l) = ps[b];
        p[(i, k)] * p[(j, l)] - p[(i, l)] * p[(j, k)]
    })
}

/// Checks that `p` (trace `n`) is a rank-`n` projector.
pub fn check_determinantal(p: &ComplexMatrix, n: usize) -> Result<()> {
    let residual = p.matmul(p).max_abs_diff(p);
    if residual > IDEMPOTENCY_TOL {
        return Err(Error::NotDeterminantal { rank: n, residual });
    }
    Ok(())
}

/// Two-particle density matrix of the `N`-fermion determinant with one-particle
/// matrix `rho1`, trace one on the pair space. `rho1` may be given with trace `N`
/// (the projector) or trace one (`P / N`); either way it must be a rank-`N` projector
/// up to that scale.
pub fn hf_two_rdm(rho1: &ComplexMatrix, n: usize) -> Result<TwoFermionMixedState> {
    let d = rho1.rows();
    if !rho1.is_square() || d < 2 {
        return Err(Error::DimensionMismatch(
            "rho1 must be square with d >= 2".into(),
        ));
    }
    if n < 2 || n > d {
        return Err(Error::InvalidInput(format!(
            "particle number {n} must lie in [2, {d}]"
        )));
    }
    rho1.check_hermitian(1e-10)?;
    let tr = rho1.trace().re;
    let p = if (tr - n as f64).abs() <= TRACE_TOL {
        rho1.clone()
    } else if (tr - 1.0).abs() <= TRACE_TOL {
        rho1.scale_real(n as f64)
    } else {
        return Err(Error::Normalization {
            expected: n as f64,
            found: tr,
        });
    };
    check_determinantal(&p, n)?;
    let gamma = hf_pair_matrix(&p);
    let t = gamma.trace().re;
    debug_assert_eq!(gamma.rows(), pair_dim(d));
    TwoFermionMixedState::new(
        d,
        gamma.scale(Complex64::new(1.0 / t, 0.0)).hermitian_part(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fermion::separability::{is_fermionic_separable, Verdict, DEFAULT_SEPARABILITY_TOL};
    use crate::fermion::state::TwoFermionPureState;
    use crate::fermion::EofOptions;
    use crate::numerics::random::random_isometry;
    use crate::numerics::Seed;

    fn projector(q: &ComplexMatrix) -> ComplexMatrix {
        q.matmul(&q.adjoint())
    }

    #[test]
    fn two_particles_give_pure_slater() {
        let p = ComplexMatrix::diagonal(&[1.0, 1.0, 0.0, 0.0]);
        let g = hf_two_rdm(&p, 2).unwrap();
        let s = TwoFermionPureState::basis_slater(4, 0, 1).unwrap();
        assert!(g.matrix().max_abs_diff(&s.projector()) < 1e-14);
    }

    /// Explicit expansion: the determinant of orbitals `q_1..q_3` has pair matrix
    /// `(1/3) sum_{a<b} |q_a ^ q_b><q_a ^ q_b|`.
    #[test]
    fn three_particles_match_pair_mixture() {
        let mut rng = Seed(12).rng();
        let q = random_isometry(&mut rng, 6, 3);
        let g = hf_two_rdm(&projector(&q), 3).unwrap();
        let mut members = vec![];
        for a in 0..3 {
            for b in a + 1..3 {
                members.push((
                    1.0,
                    TwoFermionPureState::slater(&q.col(a), &q.col(b)).unwrap(),
                ));
            }
        }
        let oracle = TwoFermionMixedState::from_ensemble(&members).unwrap();
        assert!(g.matrix().max_abs_diff(oracle.matrix()) < 1e-10);
        // trace-one input gives the same matrix
        let g1 = hf_two_rdm(&projector(&q).scale_real(1.0 / 3.0), 3).unwrap();
        assert!(g1.matrix().max_abs_diff(g.matrix()) < 1e-12);
    }

    #[test]
    fn wedge_of_rank_one_projectors_is_slater() {
        let mut rng = Seed(2).rng();
        let q = random_isometry(&mut rng, 5, 2);
        let (u, v) = (q.col(0), q.col(1));
        let k = wedge(&ComplexMatrix::outer(&u, &u), &ComplexMatrix::outer(&v, &v));
        let s = TwoFermionPureState::slater(&u, &v).unwrap();
        assert!(k.max_abs_diff(&s.projector()) < 1e-14);
        let p = projector(&q);
        assert!(
            wedge(&p, &p)
                .scale_real(0.5)
                .max_abs_diff(&hf_pair_matrix(&p))
                < 1e-14
        );
    }

    #[test]
    fn rejects_non_projectors() {
        let p = ComplexMatrix::diagonal(&[0.9, 0.6, 0.5, 0.0]);
        assert!(matches!(
            hf_two_rdm(&p, 2),
            Err(Error::NotDeterminantal { .. })
        ));
        assert!(hf_two_rdm(&ComplexMatrix::diagonal(&[1.0, 1.0, 1.0, 0.0]), 2).is_err());
    }

    #[test]
    fn hf_states_are_separable() {
        for (n, s) in [(2usize, 1u64), (3, 2), (3, 3)] {
            let mut rng = Seed(s).rng();
            let q = random_isometry(&mut rng, 6, n);
            let g = hf_two_rdm(&projector(&q), n).unwrap();
            let r = is_fermionic_separable(&g, DEFAULT_SEPARABILITY_TOL, &EofOptions::default())
                .unwrap();
            assert_eq!(r.verdict, Verdict::Separable);
        }
    }
}
