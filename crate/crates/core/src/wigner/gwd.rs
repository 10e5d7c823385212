//! Generalized Wigner distribution of a lesser Green function,
//!
//! `g(k, W, R, T) = 4 dx dt sum_{m,l} exp(i(W 2l dt - k 2m dx)) f[(j+m, a+l), (j-m, a-l)]`
//!
//! with `f = -iG^<` (Hermitian, so the output is real), `k_u = pi u / (n_x dx)` and
//! `W_v = pi v / (n_t dt)`. The spatial axis is a forward FFT over `m`, the time axis
//! an unnormalized `exp(+...)` FFT over `l`. With these conventions
//! `sum_{k,W} g dk dW / (2 pi)^2 = f[(j,a),(j,a)]`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::green::LesserGreenFunction;
use super::transform::{nearest, offset_range};
use crate::error::{Error, Result};
use crate::numerics::fft::{
    bin_of, centered_index, fft_in_place, fft_unnormalized_positive, Direction,
};
use crate::numerics::Grid1D;

/// Treatment of time offsets that leave the time window.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TimeBoundary {
    /// Time indices wrap modulo `n_t`; exact for dynamics periodic in the window.
    Periodic,
    /// Out-of-window offsets contribute zero.
    Truncate,
}

#[derive(Debug, Clone)]
pub struct Gwd {
    grid: Grid1D,
    times: Grid1D,
    boundary: TimeBoundary,
    k_values: Vec<f64>,
    omega_values: Vec<f64>,
    /// flat `[k][omega][R][T]`
    data: Vec<f64>,
    imag_residue: f64,
}

pub fn frequency_values(grid: &Grid1D) -> Vec<f64> {
    let n = grid.len();
    let d = PI / (n as f64 * grid.dx());
    (0..n)
        .map(|pos| centered_index(pos, n) as f64 * d)
        .collect()
}

/// Unscaled transform for one center site `(j, a)` and parity class `(px, pt)`:
/// pairs `(j+px+m, a+pt+l)`, `(j-m, a-l)`. Output is `[u_pos][v_pos]` in centered order.
pub(crate) fn transform_site(
    g: &LesserGreenFunction,
    j: usize,
    a: usize,
    (px, pt): (usize, usize),
    boundary: TimeBoundary,
    buf: &mut [Complex64],
    col: &mut [Complex64],
) -> Result<Vec<Complex64>> {
    let nx = g.grid().len();
    let nt = g.times().len();
    buf.iter_mut().for_each(|z| *z = Complex64::new(0.0, 0.0));
    let time_offsets: Vec<(isize, usize, usize)> = match boundary {
        TimeBoundary::Periodic => {
            debug_assert_eq!(pt, 0);
            let half = (nt / 2) as isize;
            (-half..half)
                .map(|l| {
                    let t1 = (a as isize + l).rem_euclid(nt as isize) as usize;
                    let t2 = (a as isize - l).rem_euclid(nt as isize) as usize;
                    (l, t1, t2)
                })
                .collect()
        }
        TimeBoundary::Truncate => offset_range(nt, a, pt)
            .map(|l| {
                let t1 = (a as isize + pt as isize + l) as usize;
                let t2 = (a as isize - l) as usize;
                (l, t1, t2)
            })
            .collect(),
    };
    for m in offset_range(nx, j, px) {
        let x1 = (j as isize + px as isize + m) as usize;
        let x2 = (j as isize - m) as usize;
        let row = bin_of(m, nx) * nt;
        for &(l, t1, t2) in &time_offsets {
            buf[row + bin_of(l, nt)] = g.get(x1, t1, x2, t2);
        }
    }
    for r in 0..nx {
        fft_unnormalized_positive(&mut buf[r * nt..(r + 1) * nt])?;
    }
    for c in 0..nt {
        for r in 0..nx {
            col[r] = buf[r * nt + c];
        }
        fft_in_place(col, Direction::Forward)?;
        for r in 0..nx {
            buf[r * nt + c] = col[r];
        }
    }
    let mut out = Vec::with_capacity(nx * nt);
    for upos in 0..nx {
        let u = centered_index(upos, nx);
        let sx = if px == 1 {
            Complex64::from_polar(1.0, -PI * u as f64 / nx as f64)
        } else {
            Complex64::new(1.0, 0.0)
        };
        let row = bin_of(u, nx) * nt;
        for vpos in 0..nt {
            let v = centered_index(vpos, nt);
            let st = if pt == 1 {
                Complex64::from_polar(1.0, PI * v as f64 / nt as f64)
            } else {
                Complex64::new(1.0, 0.0)
            };
            out.push(buf[row + bin_of(v, nt)] * sx * st);
        }
    }
    Ok(out)
}

/// GWD with periodic time boundary.
pub fn gwd_transform(g: &LesserGreenFunction) -> Result<Gwd> {
    gwd_transform_with(g, TimeBoundary::Periodic)
}

pub fn gwd_transform_with(g: &LesserGreenFunction, boundary: TimeBoundary) -> Result<Gwd> {
    let grid = *g.grid();
    let times = *g.times();
    let (nx, nt) = (grid.len(), times.len());
    if !nx.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(nx));
    }
    if !nt.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(nt));
    }
    let scale = 4.0 * grid.dx() * times.dx();
    let mut data = vec![0.0; nx * nt * nx * nt];
    let mut imag_residue = 0.0f64;
    let mut buf = vec![Complex64::new(0.0, 0.0); nx * nt];
    let mut col = vec![Complex64::new(0.0, 0.0); nx];
    for j in 0..nx {
        for a in 0..nt {
            let site = transform_site(g, j, a, (0, 0), boundary, &mut buf, &mut col)?;
            for (idx, z) in site.iter().enumerate() {
                let (upos, vpos) = (idx / nt, idx % nt);
                imag_residue = imag_residue.max((scale * z.im).abs());
                data[((upos * nt + vpos) * nx + j) * nt + a] = scale * z.re;
            }
        }
    }
    Ok(Gwd {
        grid,
        times,
        boundary,
        k_values: frequency_values(&grid),
        omega_values: frequency_values(&times),
        data,
        imag_residue,
    })
}

impl Gwd {
    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    pub fn times(&self) -> &Grid1D {
        &self.times
    }

    pub fn boundary(&self) -> TimeBoundary {
        self.boundary
    }

    pub fn k_values(&self) -> &[f64] {
        &self.k_values
    }

    pub fn omega_values(&self) -> &[f64] {
        &self.omega_values
    }

    pub fn dk(&self) -> f64 {
        PI / (self.grid.len() as f64 * self.grid.dx())
    }

    pub fn domega(&self) -> f64 {
        PI / (self.times.len() as f64 * self.times.dx())
    }

    pub fn values(&self) -> &[f64] {
        &self.data
    }

    /// `(n_k, n_omega, n_R, n_T)`
    pub fn dims(&self) -> (usize, usize, usize, usize) {
        let (nx, nt) = (self.grid.len(), self.times.len());
        (nx, nt, nx, nt)
    }

    pub fn flat_index(&self, k: usize, w: usize, r: usize, t: usize) -> usize {
        let (nx, nt) = (self.grid.len(), self.times.len());
        ((k * nt + w) * nx + r) * nt + t
    }

    pub fn unflatten(&self, idx: usize) -> (usize, usize, usize, usize) {
        let (nx, nt) = (self.grid.len(), self.times.len());
        let t = idx % nt;
        let r = (idx / nt) % nx;
        let w = (idx / (nt * nx)) % nt;
        let k = idx / (nt * nx * nt);
        (k, w, r, t)
    }

    pub fn get(&self, k: usize, w: usize, r: usize, t: usize) -> f64 {
        self.data[self.flat_index(k, w, r, t)]
    }

    pub fn imag_residue(&self) -> f64 {
        self.imag_residue
    }

    pub fn nearest_omega(&self, omega: f64) -> usize {
        nearest(&self.omega_values, omega)
    }

    pub fn nearest_k(&self, k: f64) -> usize {
        nearest(&self.k_values, k)
    }

    /// `max_{k, W, R} (max_T g - min_T g)`
    pub fn t_variation(&self) -> f64 {
        let nt = self.times.len();
        self.data
            .chunks(nt)
            .map(|c| {
                let (lo, hi) = c
                    .iter()
                    .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
                        (lo.min(v), hi.max(v))
                    });
                hi - lo
            })
            .fold(0.0, f64::max)
    }

    /// `P(W) = sum_{k,R} g dk dR / (2 pi)` at time index `t`.
    pub fn omega_marginal(&self, t: usize) -> Vec<f64> {
        let (nx, nt) = (self.grid.len(), self.times.len());
        let w = self.dk() * self.grid.dx() / (2.0 * PI);
        (0..nt)
            .map(|om| {
                let mut s = 0.0;
                for k in 0..nx {
                    for r in 0..nx {
                        s += self.get(k, om, r, t);
                    }
                }
                s * w
            })
            .collect()
    }

    /// `dk dW dR dT / (2 pi)^2`
    pub fn cell_measure(&self) -> f64 {
        self.dk() * self.domega() * self.grid.dx() * self.times.dx() / (4.0 * PI * PI)
    }
}
