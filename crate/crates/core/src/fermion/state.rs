use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::eig::min_eigenvalue;
use crate::numerics::matrix::norm;
use crate::numerics::random::{random_isometry, random_unit_vector};
use crate::numerics::{ComplexMatrix, Seed};

const ANTISYM_TOL: f64 = 1e-12;
const PURE_NORM_TOL: f64 = 1e-10;
const MIXED_HERMITIAN_TOL: f64 = 1e-10;
const MIXED_PSD_TOL: f64 = 1e-9;
const MIXED_TRACE_TOL: f64 = 1e-10;

/// Dimension of the antisymmetric pair space `d(d-1)/2`.
pub fn pair_dim(d: usize) -> usize {
    d * d.saturating_sub(1) / 2
}

/// Lexicographic index of the pair `(i, j)`, `i < j`.
pub fn pair_index(d: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < d);
    i * d - i * (i + 1) / 2 + (j - i - 1)
}

/// All pairs `(i, j)`, `i < j`, in lexicographic order.
pub fn pairs(d: usize) -> Vec<(usize, usize)> {
    (0..d)
        .flat_map(|i| (i + 1..d).map(move |j| (i, j)))
        .collect()
}

/// Two-fermion pure state `sum_ij A_ij e_i (x) e_j` with `A = -A^T`, `sum |A_ij|^2 = 1`.
/// In the normalized pair basis `e_i ^ e_j` its amplitudes are `c_ij = sqrt(2) A_ij`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoFermionPureState {
    a: ComplexMatrix,
}

impl TwoFermionPureState {
    pub fn new(a: ComplexMatrix) -> Result<Self> {
        if !a.is_square() || a.rows() < 2 {
            return Err(Error::DimensionMismatch(format!(
                "amplitude matrix must be square with d >= 2, got {}x{}",
                a.rows(),
                a.cols()
            )));
        }
        let d = a.rows();
        let mut dev = 0.0f64;
        for i in 0..d {
            for j in i..d {
                dev = dev.max((a[(i, j)] + a[(j, i)]).norm());
            }
        }
        if dev > ANTISYM_TOL {
            return Err(Error::NotAntisymmetric { max_deviation: dev });
        }
        let n2 = a.frobenius_norm().powi(2);
        if (n2 - 1.0).abs() > PURE_NORM_TOL {
            return Err(Error::Normalization {
                expected: 1.0,
                found: n2,
            });
        }
        Ok(Self { a })
    }

    /// Antisymmetric part of `a`, rescaled to unit norm.
    pub fn normalized(a: &ComplexMatrix) -> Result<Self> {
        let anti = a.sub(&a.transpose()).scale_real(0.5);
        let n = anti.frobenius_norm();
        if !(n > 1e-300) {
            return Err(Error::Normalization {
                expected: 1.0,
                found: 0.0,
            });
        }
        Self::new(anti.scale_real(1.0 / n))
    }

    pub fn from_pair_amplitudes(d: usize, c: &[Complex64]) -> Result<Self> {
        if c.len() != pair_dim(d) {
            return Err(Error::DimensionMismatch(format!(
                "{} pair amplitudes for d = {d}, expected {}",
                c.len(),
                pair_dim(d)
            )));
        }
        Self::new(antisymmetric_from_pairs(d, c))
    }

    /// Normalized Slater determinant `u ^ v` of two linearly independent orbitals.
    pub fn slater(u: &[Complex64], v: &[Complex64]) -> Result<Self> {
        if u.len() != v.len() {
            return Err(Error::DimensionMismatch("orbitals differ in length".into()));
        }
        let d = u.len();
        Self::normalized(&ComplexMatrix::from_fn(d, d, |i, j| {
            u[i] * v[j] - v[i] * u[j]
        }))
    }

    /// `e_i ^ e_j`
    pub fn basis_slater(d: usize, i: usize, j: usize) -> Result<Self> {
        if i >= d || j >= d || i == j {
            return Err(Error::InvalidInput(format!(
                "orbitals ({i}, {j}) invalid for d = {d}"
            )));
        }
        let e = |k: usize| -> Vec<Complex64> {
            (0..d)
                .map(|m| Complex64::new(if m == k { 1.0 } else { 0.0 }, 0.0))
                .collect()
        };
        Self::slater(&e(i), &e(j))
    }

    pub fn d(&self) -> usize {
        self.a.rows()
    }

    pub fn amplitudes(&self) -> &ComplexMatrix {
        &self.a
    }

    /// `c_ij = sqrt(2) A_ij`, `i < j`.
    pub fn pair_amplitudes(&self) -> Vec<Complex64> {
        let s = std::f64::consts::SQRT_2;
        pairs(self.d())
            .into_iter()
            .map(|(i, j)| self.a[(i, j)] * s)
            .collect()
    }

    /// `A -> U A U^T` for a one-particle unitary `U`.
    pub fn transformed(&self, u: &ComplexMatrix) -> Result<Self> {
        Self::new(u.matmul(&self.a).matmul(&u.transpose()))
    }

    pub fn projector(&self) -> ComplexMatrix {
        let c = self.pair_amplitudes();
        ComplexMatrix::outer(&c, &c)
    }
}

/// `A_ij = c_p / sqrt(2) = -A_ji` for pair `p = (i, j)`.
pub fn antisymmetric_from_pairs(d: usize, c: &[Complex64]) -> ComplexMatrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut a = ComplexMatrix::zeros(d, d);
    for (p, (i, j)) in pairs(d).into_iter().enumerate() {
        a[(i, j)] = c[p] * s;
        a[(j, i)] = -c[p] * s;
    }
    a
}

/// Density matrix on the antisymmetric pair space, basis `e_i ^ e_j` (lexicographic).
#[derive(Debug, Clone, PartialEq)]
pub struct TwoFermionMixedState {
    d: usize,
    rho: ComplexMatrix,
}

impl TwoFermionMixedState {
    pub fn new(d: usize, rho: ComplexMatrix) -> Result<Self> {
        let n = pair_dim(d);
        if d < 2 || rho.rows() != n || rho.cols() != n {
            return Err(Error::DimensionMismatch(format!(
                "pair-space matrix is {}x{}, d = {d} needs {n}x{n}",
                rho.rows(),
                rho.cols()
            )));
        }
        rho.check_hermitian(MIXED_HERMITIAN_TOL)?;
        let tr = rho.trace().re;
        if (tr - 1.0).abs() > MIXED_TRACE_TOL {
            return Err(Error::Normalization {
                expected: 1.0,
                found: tr,
            });
        }
        let min = min_eigenvalue(&rho)?;
        if min < -MIXED_PSD_TOL {
            return Err(Error::NotPositive {
                min_eigenvalue: min,
            });
        }
        Ok(Self { d, rho })
    }

    pub fn from_pure(psi: &TwoFermionPureState) -> Self {
        Self {
            d: psi.d(),
            rho: psi.projector(),
        }
    }

    /// `sum_k p_k |psi_k><psi_k|`; weights are renormalized.
    pub fn from_ensemble(members: &[(f64, TwoFermionPureState)]) -> Result<Self> {
        let Some((_, first)) = members.first() else {
            return Err(Error::InvalidInput("empty ensemble".into()));
        };
        let d = first.d();
        let total: f64 = members.iter().map(|(p, _)| p).sum();
        if members.iter().any(|(p, s)| !(*p >= 0.0) || s.d() != d) || !(total > 0.0) {
            return Err(Error::InvalidInput(
                "ensemble weights must be nonnegative and members share d".into(),
            ));
        }
        let n = pair_dim(d);
        let mut rho = ComplexMatrix::zeros(n, n);
        for (p, s) in members {
            rho.add_scaled(Complex64::new(p / total, 0.0), &s.projector());
        }
        Self::new(d, rho.hermitian_part())
    }

    pub fn maximally_mixed(d: usize) -> Result<Self> {
        let n = pair_dim(d);
        Self::new(d, ComplexMatrix::identity(n).scale_real(1.0 / n as f64))
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.rho
    }

    /// `<psi| rho |psi>`
    pub fn fidelity_with(&self, psi: &TwoFermionPureState) -> f64 {
        let c = psi.pair_amplitudes();
        crate::numerics::matrix::inner(&c, &self.rho.mul_vec(&c)).re
    }
}

/// Haar-random pure state on the pair space.
pub fn random_pure_state(seed: Seed, d: usize) -> TwoFermionPureState {
    let mut rng = seed.rng();
    random_pure_state_with(&mut rng, d)
}

pub fn random_pure_state_with<R: rand::Rng + ?Sized>(rng: &mut R, d: usize) -> TwoFermionPureState {
    let c = random_unit_vector(rng, pair_dim(d));
    TwoFermionPureState::from_pair_amplitudes(d, &c).expect("unit pair vector")
}

/// Slater determinant of two Haar-random orthonormal orbitals.
pub fn random_slater<R: rand::Rng + ?Sized>(rng: &mut R, d: usize) -> TwoFermionPureState {
    let q = random_isometry(rng, d, 2);
    TwoFermionPureState::slater(&q.col(0), &q.col(1)).expect("orthonormal orbitals")
}

/// Convex mixture of `count` random Slater projectors with random weights.
pub fn random_slater_mixture<R: rand::Rng + ?Sized>(
    rng: &mut R,
    d: usize,
    count: usize,
) -> TwoFermionMixedState {
    let members: Vec<(f64, TwoFermionPureState)> = (0..count)
        .map(|_| (rng.random_range(0.05..1.0), random_slater(rng, d)))
        .collect();
    TwoFermionMixedState::from_ensemble(&members).expect("valid mixture")
}

pub(crate) fn normalize(v: &mut [Complex64]) -> f64 {
    let n = norm(v);
    if n > 0.0 {
        v.iter_mut().for_each(|z| *z /= n);
    }
    n
}
