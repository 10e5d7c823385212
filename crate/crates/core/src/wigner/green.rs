use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::{ComplexMatrix, Grid1D};

const HERMITIAN_TOL: f64 = 1e-10;
const DIAGONAL_TOL: f64 = 1e-10;

/// `-iG^<(x_i t_a; x_j t_b)` on a space-time grid. The combined index is
/// `alpha = i * n_t + a`, and `g` is stored as a dense row-major `N x N` array, `N = n_x n_t`.
#[derive(Debug, Clone)]
pub struct LesserGreenFunction {
    grid: Grid1D,
    times: Grid1D,
    g: Vec<Complex64>,
}

impl LesserGreenFunction {
    pub fn new(grid: Grid1D, times: Grid1D, g: Vec<Complex64>) -> Result<Self> {
        let big = grid.len() * times.len();
        if g.len() != big * big {
            return Err(Error::DimensionMismatch(format!(
                "green function has {} entries, grid needs {}",
                g.len(),
                big * big
            )));
        }
        let mut dev = 0.0f64;
        for al in 0..big {
            for be in al..big {
                dev = dev.max((g[al * big + be] - g[be * big + al].conj()).norm());
            }
        }
        if dev > HERMITIAN_TOL {
            return Err(Error::NotHermitian { max_deviation: dev });
        }
        for al in 0..big {
            let d = g[al * big + al];
            if d.im.abs() > DIAGONAL_TOL || d.re < -DIAGONAL_TOL {
                return Err(Error::InvalidInput(format!(
                    "equal-time diagonal entry {al} is {d}, expected real and nonnegative"
                )));
            }
        }
        Ok(Self { grid, times, g })
    }

    pub fn zeros(grid: Grid1D, times: Grid1D) -> Self {
        let big = grid.len() * times.len();
        Self {
            grid,
            times,
            g: vec![Complex64::new(0.0, 0.0); big * big],
        }
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    pub fn times(&self) -> &Grid1D {
        &self.times
    }

    pub fn combined_len(&self) -> usize {
        self.grid.len() * self.times.len()
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.g
    }

    #[inline]
    pub fn get(&self, i: usize, a: usize, j: usize, b: usize) -> Complex64 {
        let nt = self.times.len();
        self.g[(i * nt + a) * self.combined_len() + j * nt + b]
    }

    /// Spatial `n_x x n_x` block at equal times `t_a`.
    pub fn equal_time_slice(&self, a: usize) -> ComplexMatrix {
        let nx = self.grid.len();
        ComplexMatrix::from_fn(nx, nx, |i, j| self.get(i, a, j, a))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_hermitian_and_bad_diagonal() {
        let g = Grid1D::symmetric(4.0, 8).unwrap();
        let t = Grid1D::new(0.0, 1.0, 8).unwrap();
        let big = 64;
        let mut data = vec![Complex64::new(0.0, 0.0); big * big];
        data[1] = Complex64::new(0.0, 1.0);
        assert!(matches!(
            LesserGreenFunction::new(g, t, data.clone()),
            Err(Error::NotHermitian { .. })
        ));
        data[1] = Complex64::new(0.0, 0.0);
        data[0] = Complex64::new(-1.0, 0.0);
        assert!(LesserGreenFunction::new(g, t, data).is_err());
        assert!(LesserGreenFunction::new(g, t, vec![]).is_err());
    }
}
