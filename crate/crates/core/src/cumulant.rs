//! Densities reconstructed from truncated cumulant expansions,
//! `phi(t) = exp(sum_j kappa_j (it)^j / j!)`, `p(x) = (1/2 pi) int phi(t) exp(-itx) dt`.
//!
//! Beyond degree two `p` cannot stay nonnegative (Marcinkiewicz); here that is made
//! visible on a grid. Only vectors whose `|phi|` decays are accepted, since a
//! divergent `|phi|` has no quadrature to show anything with.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::fft::{fft_in_place, Direction};
use crate::numerics::Grid1D;

/// `|phi(+-t_extent)|` must fall below this.
pub const TAIL_TOL: f64 = 1e-12;
/// The adaptive window keeps every grid `t` where `|phi|` is at least this.
pub const ADAPTIVE_CUTOFF: f64 = 1e-13;
pub const DEFAULT_POINTS: usize = 1024;
pub const DEFAULT_HALF_WIDTH_SIGMAS: f64 = 12.0;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CumulantVector {
    kappa: Vec<f64>,
}

impl CumulantVector {
    /// `kappa[0]` is `kappa_1`.
    ///
    /// Integrability of `|phi|` is decided by the highest nonzero even cumulant
    /// `kappa_j`: `Re (it)^j = (-1)^(j/2) t^j`, so it needs `(-1)^(j/2) kappa_j < 0`
    /// (negative `kappa_4`, positive `kappa_6`, ...). Odd orders only add phase.
    pub fn new(kappa: Vec<f64>) -> Result<Self> {
        if kappa.is_empty() {
            return Err(Error::InvalidInput(
                "cumulant vector needs at least kappa_1".into(),
            ));
        }
        if let Some((i, v)) = kappa.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::NonIntegrable {
                index: i + 1,
                value: *v,
                reason: "coefficient is not finite".into(),
            });
        }
        if kappa.len() >= 2 && !(kappa[1] > 0.0) {
            return Err(Error::NonIntegrable {
                index: 2,
                value: kappa[1],
                reason:
                    "the variance must be positive; a divergent |phi| is covered by the theorem \
                         but cannot be demonstrated by quadrature"
                        .into(),
            });
        }
        let top_even = (2..=kappa.len())
            .rev()
            .find(|&j| j % 2 == 0 && kappa[j - 1] != 0.0);
        if let Some(j) = top_even {
            let sign = if (j / 2) % 2 == 0 { 1.0 } else { -1.0 };
            if sign * kappa[j - 1] >= 0.0 {
                return Err(Error::NonIntegrable {
                    index: j,
                    value: kappa[j - 1],
                    reason: format!(
                        "the highest even term grows like exp(+c|t|^{j}), so |phi| diverges; the theorem \
                         covers this case but it cannot be demonstrated by quadrature"
                    ),
                });
            }
        }
        Ok(Self { kappa })
    }

    pub fn gaussian(mean: f64, variance: f64) -> Result<Self> {
        Self::new(vec![mean, variance])
    }

    pub fn kappa(&self) -> &[f64] {
        &self.kappa
    }

    pub fn degree(&self) -> usize {
        self.kappa
            .iter()
            .rposition(|&v| v != 0.0)
            .map_or(0, |i| i + 1)
    }

    pub fn mean(&self) -> f64 {
        self.kappa[0]
    }

    pub fn variance(&self) -> Option<f64> {
        self.kappa.get(1).copied()
    }

    /// `max_{j>2} |kappa_j| / kappa_2^(j/2)`, zero for a Gaussian.
    pub fn relative_strength(&self) -> f64 {
        let Some(k2) = self.variance() else {
            return 0.0;
        };
        self.kappa
            .iter()
            .enumerate()
            .skip(2)
            .map(|(i, v)| v.abs() / k2.powf((i + 1) as f64 / 2.0))
            .fold(0.0, f64::max)
    }

    /// Same vector with `kappa_3` set (padding with zeros as needed).
    pub fn with_kappa3(&self, k3: f64) -> Result<Self> {
        let mut k = self.kappa.clone();
        if k.len() < 3 {
            k.resize(3, 0.0);
        }
        k[2] = k3;
        Self::new(k)
    }
}

fn exponent(kappa: &[f64], t: f64) -> Complex64 {
    let mut re = 0.0;
    let mut im = 0.0;
    let mut term = 1.0; // t^j / j!
    for (i, k) in kappa.iter().enumerate() {
        let j = i + 1;
        term *= t / j as f64;
        let v = k * term;
        match j % 4 {
            0 => re += v,
            1 => im += v,
            2 => re -= v,
            _ => im -= v,
        }
    }
    Complex64::new(re, im)
}

pub fn characteristic_function(kappa: &CumulantVector, t: &[f64]) -> Vec<Complex64> {
    t.iter().map(|&t| exponent(&kappa.kappa, t).exp()).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct TruncatedDensity {
    pub x_grid: Grid1D,
    pub p: Vec<f64>,
    pub negative_mass: f64,
    pub total_mass: f64,
    pub min_value: f64,
    pub imag_residue: f64,
    pub t_extent: f64,
}

/// `x in kappa_1 +- 12 sqrt(kappa_2)` with 1024 points.
pub fn default_grid(kappa: &CumulantVector) -> Result<Grid1D> {
    let sigma = kappa.variance().map(f64::sqrt).unwrap_or(1.0);
    let h = DEFAULT_HALF_WIDTH_SIGMAS * sigma;
    Grid1D::new(kappa.mean() - h, kappa.mean() + h, DEFAULT_POINTS)
}

/// Twice the range with four times the points: both `dx` and the dual `dt` halve.
pub fn doubled_grid(grid: &Grid1D) -> Result<Grid1D> {
    let c = 0.5 * (grid.x_min() + grid.x_max());
    let h = grid.x_max() - grid.x_min();
    Grid1D::new(c - h, c + h, 4 * grid.len())
}

/// The `t` grid dual to `grid`: `t_j = (j - n/2) dt`, `dt = 2 pi / (n dx)`.
pub fn dual_times(grid: &Grid1D) -> Vec<f64> {
    let n = grid.len();
    let dt = 2.0 * PI / (n as f64 * grid.dx());
    (0..n).map(|j| (j as f64 - (n / 2) as f64) * dt).collect()
}

pub fn truncated_density(
    kappa: &CumulantVector,
    grid: &Grid1D,
    t_extent: f64,
) -> Result<TruncatedDensity> {
    let n = grid.len();
    let ts = dual_times(grid);
    let t_max = ts[n - 1];
    if !(t_extent > 0.0) || t_extent > t_max + 1e-12 * t_max {
        return Err(Error::InvalidGrid(format!(
            "t_extent {t_extent} outside (0, {t_max}] allowed by dx = {}",
            grid.dx()
        )));
    }
    for t in [-t_extent, t_extent] {
        let m = exponent(&kappa.kappa, t).exp().norm();
        if !(m < TAIL_TOL) {
            return Err(Error::TailTooLarge { t, magnitude: m });
        }
    }
    let dt = ts[1] - ts[0];
    let x0 = grid.x_min();
    let mut a: Vec<Complex64> = ts
        .iter()
        .map(|&t| {
            if t.abs() <= t_extent {
                (exponent(&kappa.kappa, t) - Complex64::new(0.0, t * x0)).exp()
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
        .collect();
    fft_in_place(&mut a, Direction::Forward)?;
    let dx = grid.dx();
    let mut imag_residue = 0.0f64;
    let p: Vec<f64> = a
        .iter()
        .enumerate()
        .map(|(k, z)| {
            let s = if k % 2 == 0 { 1.0 } else { -1.0 } * dt / (2.0 * PI);
            imag_residue = imag_residue.max((s * z.im).abs());
            s * z.re
        })
        .collect();
    let negative_mass = p.iter().map(|&v| (-v).max(0.0)).sum::<f64>() * dx;
    let total_mass = p.iter().sum::<f64>() * dx;
    let min_value = p.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(TruncatedDensity {
        x_grid: *grid,
        p,
        negative_mass,
        total_mass,
        min_value,
        imag_residue,
        t_extent,
    })
}

/// Smallest window containing every dual-grid `t` with `|phi(t)| >= 1e-13`, widened by one step.
pub fn adaptive_t_extent(kappa: &CumulantVector, grid: &Grid1D) -> f64 {
    let ts = dual_times(grid);
    let n = ts.len();
    let dt = ts[1] - ts[0];
    let last = (n / 2..n)
        .rev()
        .find(|&j| {
            let t = ts[j];
            exponent(&kappa.kappa, t).exp().norm() >= ADAPTIVE_CUTOFF
                || exponent(&kappa.kappa, -t).exp().norm() >= ADAPTIVE_CUTOFF
        })
        .unwrap_or(n / 2);
    (ts[last] + dt).min(ts[n - 1])
}

pub fn truncated_density_auto(kappa: &CumulantVector, grid: &Grid1D) -> Result<TruncatedDensity> {
    truncated_density(kappa, grid, adaptive_t_extent(kappa, grid))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScanRow {
    pub kappa3: f64,
    pub min_p: f64,
    pub negative_mass: f64,
}

/// One density per `kappa_3` on top of `base` (degree at most two), sorted by `kappa_3`.
pub fn marcinkiewicz_scan(
    kappa3_values: &[f64],
    base: &CumulantVector,
    grid: &Grid1D,
) -> Result<Vec<ScanRow>> {
    if base.degree() > 2 || base.variance().is_none() {
        return Err(Error::InvalidInput(
            "scan base must be (kappa_1, kappa_2)".into(),
        ));
    }
    let mut values = kappa3_values.to_vec();
    values.sort_by(f64::total_cmp);
    values
        .into_iter()
        .map(|k3| {
            let kappa = base.with_kappa3(k3)?;
            let d = truncated_density_auto(&kappa, grid)?;
            Ok(ScanRow {
                kappa3: k3,
                min_p: d.min_value,
                negative_mass: d.negative_mass,
            })
        })
        .collect()
}

/// `-1.0, -0.9, ..., 1.0`
pub fn default_scan_values() -> Vec<f64> {
    (-10..=10).map(|i| i as f64 / 10.0).collect()
}
