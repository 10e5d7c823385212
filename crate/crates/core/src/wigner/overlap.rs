//! Discrete trace identity `Tr(AB) = c * int W_A W_B`.
//!
//! Both sides are finite sums over the same index pairs. For one-particle density
//! matrices the direct side is `dx^2 sum_{ab} A_ab B_ba`, while summing
//! `W_A W_B dx dp` over one parity sublattice gives `(dx^2/pi) sum A_ab B_ba`
//! restricted to the pairs that sublattice carries (the `k` sum produces
//! `n delta`, and `(dx/pi)^2 n dx dp = dx^2/pi`). The two sublattices together
//! carry every pair once, hence
//!
//! `Tr(AB) = pi * sum_{j,k} (W_A W_B + Wmid_A Wmid_B) dx dp`,
//!
//! which is the continuum `2 pi` spread over two interleaved sublattices.
//!
//! For space-time Green functions the same bookkeeping over four parity classes
//! (space x time), with measure `dR dT dk dW / (2 pi)^2`, gives a factor `1/4`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::density::DensityMatrix1P;
use super::green::LesserGreenFunction;
use super::gwd::{transform_site, TimeBoundary};
use super::transform::wigner_transform;
use crate::error::{Error, Result};

/// Denominator floor in the relative discrepancy.
pub const DISCREPANCY_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OverlapTrace {
    pub lhs: f64,
    pub rhs: f64,
    pub discrepancy: f64,
}

impl OverlapTrace {
    fn new(lhs: f64, rhs: f64) -> Self {
        Self {
            lhs,
            rhs,
            discrepancy: (lhs - rhs).abs() / lhs.abs().max(DISCREPANCY_FLOOR),
        }
    }
}

pub trait TraceOverlap {
    fn overlap_trace(&self, other: &Self) -> Result<OverlapTrace>;
}

pub fn overlap_trace<T: TraceOverlap>(a: &T, b: &T) -> Result<OverlapTrace> {
    a.overlap_trace(b)
}

impl TraceOverlap for DensityMatrix1P {
    fn overlap_trace(&self, other: &Self) -> Result<OverlapTrace> {
        if self.grid() != other.grid() {
            return Err(Error::InvalidGrid(
                "operands live on different grids".into(),
            ));
        }
        let n = self.grid().len();
        let dx = self.grid().dx();
        let (a, b) = (self.matrix(), other.matrix());
        let mut direct = 0.0;
        for i in 0..n {
            for j in 0..n {
                direct += (a[(i, j)] * b[(j, i)]).re;
            }
        }
        let lhs = direct * dx * dx;

        let (wa, wb) = (wigner_transform(self)?, wigner_transform(other)?);
        let dot = |x: &[f64], y: &[f64]| x.iter().zip(y).map(|(p, q)| p * q).sum::<f64>();
        let s = dot(wa.values(), wb.values()) + dot(wa.midpoint_values(), wb.midpoint_values());
        let rhs = PI * s * dx * wa.dp();
        Ok(OverlapTrace::new(lhs, rhs))
    }
}

impl TraceOverlap for LesserGreenFunction {
    fn overlap_trace(&self, other: &Self) -> Result<OverlapTrace> {
        if self.grid() != other.grid() || self.times() != other.times() {
            return Err(Error::InvalidGrid(
                "operands live on different grids".into(),
            ));
        }
        let (nx, nt) = (self.grid().len(), self.times().len());
        let (dx, dt) = (self.grid().dx(), self.times().dx());
        let big = nx * nt;
        let (ga, gb) = (self.as_slice(), other.as_slice());
        let mut direct = 0.0;
        for al in 0..big {
            for be in 0..big {
                direct += (ga[al * big + be] * gb[be * big + al]).re;
            }
        }
        let lhs = direct * (dx * dt).powi(2);

        let scale = 4.0 * dx * dt;
        let measure = dx * dt * (PI / (nx as f64 * dx)) * (PI / (nt as f64 * dt)) / (4.0 * PI * PI);
        let mut buf = vec![Complex64::new(0.0, 0.0); big];
        let mut col = vec![Complex64::new(0.0, 0.0); nx];
        let mut s = 0.0;
        for class in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            for j in 0..nx {
                for a in 0..nt {
                    let fa = transform_site(
                        self,
                        j,
                        a,
                        class,
                        TimeBoundary::Truncate,
                        &mut buf,
                        &mut col,
                    )?;
                    let fb = transform_site(
                        other,
                        j,
                        a,
                        class,
                        TimeBoundary::Truncate,
                        &mut buf,
                        &mut col,
                    )?;
                    s += fa.iter().zip(&fb).map(|(x, y)| x.re * y.re).sum::<f64>();
                }
            }
        }
        let rhs = 0.25 * s * scale * scale * measure;
        Ok(OverlapTrace::new(lhs, rhs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{random_state, Grid1D, Seed, StateKind};
    use crate::wigner::states::{
        oscillator_period_times, oscillator_state_factory, toy_g_lesser, StateSpec,
    };

    #[test]
    fn pure_gaussian_purity() {
        let grid = Grid1D::symmetric(8.0, 128).unwrap();
        let rho = oscillator_state_factory(
            grid,
            &StateSpec::Gaussian {
                center: 0.5,
                width: 1.3,
            },
        )
        .unwrap();
        let o = overlap_trace(&rho, &rho).unwrap();
        assert!((o.lhs - 1.0).abs() < 1e-6);
        assert!(o.discrepancy < 1e-6);
    }

    #[test]
    fn orthogonal_states_force_negative_wigner() {
        let grid = Grid1D::symmetric(8.0, 128).unwrap();
        let a = oscillator_state_factory(grid, &StateSpec::Fock(0)).unwrap();
        let b = oscillator_state_factory(grid, &StateSpec::Fock(1)).unwrap();
        let o = overlap_trace(&a, &b).unwrap();
        assert!(o.lhs.abs() < 1e-8);
        assert!(o.rhs.abs() < 1e-8);
        assert!(overlap_trace(&a, &a).unwrap().rhs > 0.1);
        assert!(overlap_trace(&b, &b).unwrap().rhs > 0.1);
    }

    #[test]
    fn random_mixed_pairs_match_direct_trace() {
        let grid = Grid1D::symmetric(6.0, 64).unwrap();
        for k in 0..5u64 {
            let a = DensityMatrix1P::from_trace_one(
                grid,
                &random_state(Seed(2 * k), 64, StateKind::Mixed),
            )
            .unwrap();
            let b = DensityMatrix1P::from_trace_one(
                grid,
                &random_state(Seed(2 * k + 1), 64, StateKind::Mixed),
            )
            .unwrap();
            let o = overlap_trace(&a, &b).unwrap();
            assert!(o.discrepancy < 1e-10, "pair {k}: {o:?}");
        }
    }

    #[test]
    fn grid_mismatch_rejected() {
        let a = oscillator_state_factory(Grid1D::symmetric(8.0, 64).unwrap(), &StateSpec::Fock(0))
            .unwrap();
        let b = oscillator_state_factory(Grid1D::symmetric(8.0, 128).unwrap(), &StateSpec::Fock(0))
            .unwrap();
        assert!(matches!(overlap_trace(&a, &b), Err(Error::InvalidGrid(_))));
    }

    #[test]
    fn green_function_identity() {
        let x = Grid1D::symmetric(6.0, 8).unwrap();
        let t = oscillator_period_times(8).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let a = toy_g_lesser(
            x,
            t,
            &[(0, Complex64::new(s, 0.0)), (1, Complex64::new(0.0, s))],
        )
        .unwrap();
        let b = toy_g_lesser(x, t, &[(2, Complex64::new(1.0, 0.0))]).unwrap();
        for (p, q) in [(&a, &a), (&a, &b), (&b, &b)] {
            let o = overlap_trace(p, q).unwrap();
            assert!(
                (o.lhs - o.rhs).abs() < 1e-10 * o.lhs.abs().max(1.0),
                "{o:?}"
            );
        }
    }
}
