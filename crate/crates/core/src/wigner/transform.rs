//! Discrete Wigner transform with the symmetric integer-offset rule.
//!
//! `W[j][k] = (dx/pi) sum_m exp(-2i p_k m dx) rho[j+m][j-m]` with
//! `p_k = pi k / (n dx)`, `k` in `[-n/2, n/2)`. Summing over `k` collapses the
//! phase to `n delta_{m,0}`, so `sum_k W dp = rho_jj` and `sum W dx dp = Tr rho`.
//!
//! Integer sites only see index pairs `(a, b)` with `a + b` even. The pairs with
//! `a + b` odd live on the midpoint sublattice `R = x_j + dx/2`,
//! `W_mid[j][k] = (dx/pi) sum_m exp(-i p_k (2m+1) dx) rho[j+1+m][j-m]`,
//! which is carried alongside so the trace identity can be evaluated exactly.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::density::DensityMatrix1P;
use crate::error::Result;
use crate::numerics::fft::{bin_of, centered_index, fft_in_place, Direction};
use crate::numerics::Grid1D;

#[derive(Debug, Clone)]
pub struct WignerFunction {
    grid: Grid1D,
    p_values: Vec<f64>,
    /// `n x n`, row `j` is position `x_j`, column `k` is `p_values[k]`
    w: Vec<f64>,
    /// `(n-1) x n` on the midpoints `x_j + dx/2`
    w_mid: Vec<f64>,
    imag_residue: f64,
}

/// Offset range of the relative index for site `j` of parity class `parity`
/// (pairs `(j + parity + m, j - m)`), clipped to the grid.
pub(crate) fn offset_range(n: usize, j: usize, parity: usize) -> std::ops::RangeInclusive<isize> {
    let (n, j, p) = (n as isize, j as isize, parity as isize);
    let lo = (-j - p).max(j + 1 - n);
    let hi = (n - 1 - j - p).min(j);
    lo..=hi
}

/// Momentum-space row for site `j`: `sum_m exp(-2 pi i u (m + parity/2) / n) f(m)` in
/// centered order `u = -n/2 .. n/2-1`.
pub(crate) fn transform_site(
    n: usize,
    j: usize,
    parity: usize,
    get: impl Fn(usize, usize) -> Complex64,
    buf: &mut [Complex64],
) -> Result<Vec<Complex64>> {
    buf.iter_mut().for_each(|z| *z = Complex64::new(0.0, 0.0));
    for m in offset_range(n, j, parity) {
        let a = (j as isize + parity as isize + m) as usize;
        let b = (j as isize - m) as usize;
        buf[bin_of(m, n)] = get(a, b);
    }
    fft_in_place(buf, Direction::Forward)?;
    Ok((0..n)
        .map(|pos| {
            let u = centered_index(pos, n);
            let v = buf[bin_of(u, n)];
            if parity == 0 {
                v
            } else {
                v * Complex64::from_polar(1.0, -PI * u as f64 / n as f64)
            }
        })
        .collect())
}

pub fn wigner_transform(rho: &DensityMatrix1P) -> Result<WignerFunction> {
    let grid = *rho.grid();
    let n = grid.len();
    let dx = grid.dx();
    let c = dx / PI;
    let m = rho.matrix();
    let mut buf = vec![Complex64::new(0.0, 0.0); n];
    let mut imag_residue = 0.0f64;
    let mut w = Vec::with_capacity(n * n);
    for j in 0..n {
        for z in transform_site(n, j, 0, |a, b| m[(a, b)], &mut buf)? {
            imag_residue = imag_residue.max((c * z.im).abs());
            w.push(c * z.re);
        }
    }
    let mut w_mid = Vec::with_capacity((n - 1) * n);
    for j in 0..n - 1 {
        for z in transform_site(n, j, 1, |a, b| m[(a, b)], &mut buf)? {
            imag_residue = imag_residue.max((c * z.im).abs());
            w_mid.push(c * z.re);
        }
    }
    let p_values = momentum_values(&grid);
    Ok(WignerFunction {
        grid,
        p_values,
        w,
        w_mid,
        imag_residue,
    })
}

/// `p_k = pi k / (n dx)` for `k = -n/2 .. n/2-1`.
pub fn momentum_values(grid: &Grid1D) -> Vec<f64> {
    let n = grid.len();
    let dp = PI / (n as f64 * grid.dx());
    (0..n)
        .map(|pos| centered_index(pos, n) as f64 * dp)
        .collect()
}

impl WignerFunction {
    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    pub fn p_values(&self) -> &[f64] {
        &self.p_values
    }

    pub fn dp(&self) -> f64 {
        PI / (self.grid.len() as f64 * self.grid.dx())
    }

    pub fn values(&self) -> &[f64] {
        &self.w
    }

    pub fn midpoint_values(&self) -> &[f64] {
        &self.w_mid
    }

    pub fn get(&self, j: usize, k: usize) -> f64 {
        self.w[j * self.grid.len() + k]
    }

    /// Largest `|Im W|` seen before the imaginary part was dropped.
    pub fn imag_residue(&self) -> f64 {
        self.imag_residue
    }

    /// `sum w dx dp`
    pub fn normalization(&self) -> f64 {
        self.w.iter().sum::<f64>() * self.grid.dx() * self.dp()
    }

    /// `sum_k W(x_j, p_k) dp`
    pub fn marginal(&self, j: usize) -> f64 {
        let n = self.grid.len();
        self.w[j * n..(j + 1) * n].iter().sum::<f64>() * self.dp()
    }

    /// Index of the momentum closest to `p`.
    pub fn nearest_p(&self, p: f64) -> usize {
        nearest(&self.p_values, p)
    }
}

pub(crate) fn nearest(values: &[f64], x: f64) -> usize {
    values
        .iter()
        .enumerate()
        .min_by(|a, b| (a.1 - x).abs().total_cmp(&(b.1 - x).abs()))
        .map(|(i, _)| i)
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wigner::states::{oscillator_state_factory, StateSpec};

    /// Direct O(n^3) evaluation of the defining sum, no FFT.
    fn brute_force(rho: &DensityMatrix1P, j: usize, p: f64) -> Complex64 {
        let n = rho.grid().len() as isize;
        let dx = rho.grid().dx();
        let mut s = Complex64::new(0.0, 0.0);
        for m in -n..n {
            let (a, b) = (j as isize + m, j as isize - m);
            if a < 0 || b < 0 || a >= n || b >= n {
                continue;
            }
            s += Complex64::from_polar(1.0, -2.0 * p * m as f64 * dx)
                * rho.get(a as usize, b as usize);
        }
        s * dx / PI
    }

    #[test]
    fn fft_matches_direct_sum() {
        let grid = Grid1D::symmetric(7.0, 32).unwrap();
        let spec = StateSpec::Superposition(vec![
            (Complex64::new(0.6, 0.0), StateSpec::Fock(1)),
            (Complex64::new(0.0, 0.8), StateSpec::Fock(3)),
        ]);
        let rho = oscillator_state_factory(grid, &spec).unwrap();
        let w = wigner_transform(&rho).unwrap();
        for &j in &[3usize, 10, 16, 25] {
            for k in 0..32 {
                let d = brute_force(&rho, j, w.p_values()[k]);
                assert!((d.re - w.get(j, k)).abs() < 1e-12);
                assert!(d.im.abs() < 1e-12);
            }
        }
    }

    #[test]
    fn fock1_matches_closed_form() {
        let grid = Grid1D::symmetric(8.0, 256).unwrap();
        let rho = oscillator_state_factory(grid, &StateSpec::Fock(1)).unwrap();
        let w = wigner_transform(&rho).unwrap();
        let closed = |x: f64, p: f64| {
            let r2 = x * x + p * p;
            (2.0 * r2 - 1.0) * (-r2).exp() / PI
        };
        let xs = grid.points();
        let mut err = 0.0f64;
        for j in 0..256 {
            for k in 0..256 {
                err = err.max((w.get(j, k) - closed(xs[j], w.p_values()[k])).abs());
            }
        }
        assert!(err < 1e-8, "max error {err}");
        let origin = w.get(128, w.nearest_p(0.0));
        assert!((origin + 1.0 / PI).abs() < 1e-10);
    }

    #[test]
    fn normalization_and_marginals() {
        let grid = Grid1D::symmetric(8.0, 128).unwrap();
        let spec = StateSpec::Mixture(vec![
            (
                0.5,
                StateSpec::Gaussian {
                    center: -3.0,
                    width: 1.0,
                },
            ),
            (
                0.5,
                StateSpec::Gaussian {
                    center: 3.0,
                    width: 1.0,
                },
            ),
        ]);
        let rho = oscillator_state_factory(grid, &spec).unwrap();
        let w = wigner_transform(&rho).unwrap();
        assert!((w.normalization() - 1.0).abs() < 1e-6);
        let d = rho.density();
        for j in 0..128 {
            assert!((w.marginal(j) - d[j]).abs() < 1e-10);
        }
        assert!(w.imag_residue() < 1e-12);
    }

    #[test]
    fn offset_ranges_cover_every_pair_once() {
        let n = 16;
        let mut seen = vec![0u8; n * n];
        for parity in 0..2 {
            for j in 0..n {
                for m in offset_range(n, j, parity) {
                    let a = (j as isize + parity as isize + m) as usize;
                    let b = (j as isize - m) as usize;
                    seen[a * n + b] += 1;
                }
            }
        }
        assert!(seen.iter().all(|&c| c == 1));
    }

    #[test]
    fn midpoint_rows_are_real_for_random_states() {
        let grid = Grid1D::symmetric(5.0, 32).unwrap();
        let m = crate::numerics::random_state(
            crate::numerics::Seed(3),
            32,
            crate::numerics::StateKind::Mixed,
        );
        let rho = DensityMatrix1P::from_trace_one(grid, &m).unwrap();
        let w = wigner_transform(&rho).unwrap();
        assert!(w.imag_residue() < 1e-10);
        assert_eq!(w.midpoint_values().len(), 31 * 32);
    }
}
