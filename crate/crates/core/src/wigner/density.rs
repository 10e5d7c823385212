use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::{ComplexMatrix, Grid1D};

const HERMITIAN_TOL: f64 = 1e-10;
const TRACE_TOL: f64 = 1e-8;
const PSD_TOL: f64 = 1e-9;

/// One-particle density matrix sampled on a grid, `rho[(i, j)] ~ rho(x_i, x_j)`,
/// normalized so that `sum_i rho_ii dx = 1`.
#[derive(Debug, Clone)]
pub struct DensityMatrix1P {
    grid: Grid1D,
    rho: ComplexMatrix,
}

impl DensityMatrix1P {
    pub fn new(grid: Grid1D, rho: ComplexMatrix) -> Result<Self> {
        let n = grid.len();
        if rho.rows() != n || rho.cols() != n {
            return Err(Error::DimensionMismatch(format!(
                "density matrix is {}x{}, grid has {n} points",
                rho.rows(),
                rho.cols()
            )));
        }
        rho.check_hermitian(HERMITIAN_TOL)?;
        let dx = grid.dx();
        let tr = rho.trace().re * dx;
        if (tr - 1.0).abs() > TRACE_TOL {
            return Err(Error::Normalization {
                expected: 1.0,
                found: tr,
            });
        }
        // rho*dx + tol*I must admit a Cholesky factor
        if !rho.scale_real(dx).is_positive_with_shift(PSD_TOL) {
            let min = crate::numerics::eig::min_eigenvalue(&rho.scale_real(dx)).unwrap_or(f64::NAN);
            return Err(Error::NotPositive {
                min_eigenvalue: min,
            });
        }
        Ok(Self { grid, rho })
    }

    /// Trace-one matrix `m` (e.g. from `random_state`) rescaled to grid normalization.
    pub fn from_trace_one(grid: Grid1D, m: &ComplexMatrix) -> Result<Self> {
        Self::new(grid, m.scale_real(1.0 / grid.dx()))
    }

    /// `|psi><psi|` for a grid-normalized wavefunction.
    pub fn from_wavefunction(grid: Grid1D, psi: &[Complex64]) -> Result<Self> {
        Self::new(grid, ComplexMatrix::outer(psi, psi))
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.rho
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.rho[(i, j)]
    }

    /// `sum_i rho_ii dx`
    pub fn trace(&self) -> f64 {
        self.rho.trace().re * self.grid.dx()
    }

    /// Diagonal `rho(x_i, x_i)`.
    pub fn density(&self) -> Vec<f64> {
        (0..self.grid.len()).map(|i| self.rho[(i, i)].re).collect()
    }

    /// `Tr(rho^2)` in continuum normalization.
    pub fn purity(&self) -> f64 {
        let dx = self.grid.dx();
        let n = self.grid.len();
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                s += (self.rho[(i, j)] * self.rho[(j, i)]).re;
            }
        }
        s * dx * dx
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{random_state, Seed, StateKind};

    #[test]
    fn accepts_scaled_random_mixed_state() {
        let g = Grid1D::symmetric(4.0, 16).unwrap();
        let m = random_state(Seed(1), 16, StateKind::Mixed);
        let rho = DensityMatrix1P::from_trace_one(g, &m).unwrap();
        assert!((rho.trace() - 1.0).abs() < 1e-12);
        assert!(rho.purity() < 1.0);
    }

    #[test]
    fn rejects_invalid_matrices() {
        let g = Grid1D::symmetric(4.0, 8).unwrap();
        let dx = g.dx();
        let mut m = ComplexMatrix::identity(8).scale_real(1.0 / (8.0 * dx));
        m[(0, 1)] = Complex64::new(0.0, 0.1);
        assert!(matches!(
            DensityMatrix1P::new(g, m),
            Err(Error::NotHermitian { .. })
        ));

        let m = ComplexMatrix::identity(8).scale_real(1.0 / dx);
        assert!(matches!(
            DensityMatrix1P::new(g, m),
            Err(Error::Normalization { .. })
        ));

        let mut d = vec![1.0 / (7.0 * dx); 8];
        d[7] = -1e-3 / dx;
        let s: f64 = d.iter().sum::<f64>() * dx;
        let d: Vec<f64> = d.iter().map(|x| x / s).collect();
        assert!(matches!(
            DensityMatrix1P::new(g, ComplexMatrix::diagonal(&d)),
            Err(Error::NotPositive { .. })
        ));

        assert!(DensityMatrix1P::new(g, ComplexMatrix::identity(4)).is_err());
    }
}
