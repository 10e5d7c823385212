use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::eig::hermitian_eig;
use crate::numerics::ComplexMatrix;

const PSD_TOL: f64 = 1e-9;
const TRACE_TOL: f64 = 1e-8;

/// `-iG^<(i t_a; j t_b)` in an orbital basis with free evolution under
/// `h = diag(energies)`: `g(t_a, t_b) = e^{-i h t_a} gamma e^{i h t_b}`, where `gamma`
/// is the equal-time one-particle matrix at `t = 0` (trace `N`).
#[derive(Debug, Clone)]
pub struct OneParticleGLesser {
    energies: Vec<f64>,
    times: Vec<f64>,
    gamma: ComplexMatrix,
    slices: Vec<ComplexMatrix>,
    n_particles: usize,
}

impl OneParticleGLesser {
    pub fn new(energies: Vec<f64>, gamma: ComplexMatrix, times: Vec<f64>) -> Result<Self> {
        let d = energies.len();
        if d < 2 || gamma.rows() != d || gamma.cols() != d {
            return Err(Error::DimensionMismatch(format!(
                "{} energies for a {}x{} one-particle matrix",
                d,
                gamma.rows(),
                gamma.cols()
            )));
        }
        if times.is_empty() || times.iter().any(|t| !t.is_finite()) {
            return Err(Error::InvalidInput(
                "time grid must be non-empty and finite".into(),
            ));
        }
        gamma.check_hermitian(1e-9)?;
        let eig = hermitian_eig(&gamma)?;
        let lo = eig.values[0];
        let hi = eig.values[d - 1];
        if lo < -PSD_TOL {
            return Err(Error::NotPositive { min_eigenvalue: lo });
        }
        if hi > 1.0 + PSD_TOL {
            return Err(Error::InvalidInput(format!("occupation {hi} exceeds one")));
        }
        let tr = gamma.trace().re;
        let n = tr.round();
        if (tr - n).abs() > TRACE_TOL || n < 1.0 {
            return Err(Error::Normalization {
                expected: n.max(1.0),
                found: tr,
            });
        }
        let slices = times
            .iter()
            .map(|&t| evolve(&energies, &gamma, t, t))
            .collect();
        Ok(Self {
            energies,
            times,
            gamma,
            slices,
            n_particles: n as usize,
        })
    }

    /// Determinant of the orthonormal columns of `orbitals` (`d x N`).
    pub fn slater(energies: Vec<f64>, orbitals: &ComplexMatrix, times: Vec<f64>) -> Result<Self> {
        let gamma = orbitals.matmul(&orbitals.adjoint()).hermitian_part();
        Self::new(energies, gamma, times)
    }

    pub fn d(&self) -> usize {
        self.energies.len()
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    pub fn gamma(&self) -> &ComplexMatrix {
        &self.gamma
    }

    pub fn n_particles(&self) -> usize {
        self.n_particles
    }

    pub fn slices(&self) -> &[ComplexMatrix] {
        &self.slices
    }

    pub fn slice(&self, a: usize) -> Result<&ComplexMatrix> {
        self.slices.get(a).ok_or(Error::IndexOutOfRange {
            index: a,
            len: self.slices.len(),
        })
    }

    /// `g(t_a, t_b)`
    pub fn two_time(&self, a: usize, b: usize) -> Result<ComplexMatrix> {
        let n = self.times.len();
        if a >= n || b >= n {
            return Err(Error::IndexOutOfRange {
                index: a.max(b),
                len: n,
            });
        }
        Ok(evolve(
            &self.energies,
            &self.gamma,
            self.times[a],
            self.times[b],
        ))
    }
}

fn evolve(energies: &[f64], gamma: &ComplexMatrix, ta: f64, tb: f64) -> ComplexMatrix {
    let d = energies.len();
    ComplexMatrix::from_fn(d, d, |i, j| {
        gamma[(i, j)] * Complex64::from_polar(1.0, -(energies[i] * ta - energies[j] * tb))
    })
}

/// Equal-time slice at `t_a`, trace `N`. Divide by `N` for a trace-one density matrix.
pub fn equal_time_density(g: &OneParticleGLesser, a: usize) -> Result<ComplexMatrix> {
    g.slice(a).cloned()
}

/// Evenly spaced times `k * t_max / n`, `k = 0..n`.
pub fn uniform_times(t_max: f64, n: usize) -> Vec<f64> {
    (0..n).map(|k| k as f64 * t_max / n as f64).collect()
}
