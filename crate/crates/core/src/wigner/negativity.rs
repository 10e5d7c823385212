use serde::Serialize;

use super::gwd::Gwd;
use super::transform::WignerFunction;

/// A real array on a uniform phase-space grid.
pub trait PhaseSpace {
    fn values(&self) -> &[f64];
    /// Quadrature weight of one grid cell.
    fn cell_measure(&self) -> f64;
    /// Physical coordinates of the flat index.
    fn coords(&self, index: usize) -> Vec<f64>;
}

impl PhaseSpace for WignerFunction {
    fn values(&self) -> &[f64] {
        WignerFunction::values(self)
    }

    fn cell_measure(&self) -> f64 {
        self.grid().dx() * self.dp()
    }

    /// `[x, p]`
    fn coords(&self, index: usize) -> Vec<f64> {
        let n = self.grid().len();
        vec![self.grid().point(index / n), self.p_values()[index % n]]
    }
}

impl PhaseSpace for Gwd {
    fn values(&self) -> &[f64] {
        Gwd::values(self)
    }

    fn cell_measure(&self) -> f64 {
        Gwd::cell_measure(self)
    }

    /// `[k, omega, R, T]`
    fn coords(&self, index: usize) -> Vec<f64> {
        let (k, w, r, t) = self.unflatten(index);
        vec![
            self.k_values()[k],
            self.omega_values()[w],
            self.grid().point(r),
            self.times().point(t),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NegativityReport {
    pub min_value: f64,
    pub argmin: Vec<f64>,
    /// Fraction of grid points below `-tolerance`.
    pub negative_fraction: f64,
    /// Quadrature-weighted integral of the negative part, over points below `-tolerance`.
    pub negative_mass: f64,
}

pub fn negativity_report<P: PhaseSpace + ?Sized>(w: &P, tolerance: f64) -> NegativityReport {
    let values = w.values();
    let mut imin = 0;
    let mut below = 0usize;
    let mut mass = 0.0;
    for (i, &v) in values.iter().enumerate() {
        if v < values[imin] {
            imin = i;
        }
        if v < -tolerance {
            below += 1;
            mass -= v;
        }
    }
    NegativityReport {
        min_value: values.get(imin).copied().unwrap_or(0.0),
        argmin: if values.is_empty() {
            vec![]
        } else {
            w.coords(imin)
        },
        negative_fraction: if values.is_empty() {
            0.0
        } else {
            below as f64 / values.len() as f64
        },
        negative_mass: mass * w.cell_measure(),
    }
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;
    use crate::numerics::Grid1D;
    use crate::wigner::states::{oscillator_state_factory, StateSpec};
    use crate::wigner::transform::wigner_transform;

    struct Plain(Vec<f64>);

    impl PhaseSpace for Plain {
        fn values(&self) -> &[f64] {
            &self.0
        }
        fn cell_measure(&self) -> f64 {
            0.5
        }
        fn coords(&self, index: usize) -> Vec<f64> {
            vec![index as f64]
        }
    }

    #[test]
    fn zeros_have_no_negativity() {
        let r = negativity_report(&Plain(vec![0.0; 16]), 1e-9);
        assert_eq!(r.min_value, 0.0);
        assert_eq!(r.negative_mass, 0.0);
        assert_eq!(r.negative_fraction, 0.0);
    }

    #[test]
    fn counts_only_below_tolerance() {
        let r = negativity_report(&Plain(vec![1.0, -1e-12, -2.0, 3.0]), 1e-9);
        assert_eq!(r.min_value, -2.0);
        assert_eq!(r.argmin, vec![2.0]);
        assert_eq!(r.negative_fraction, 0.25);
        assert_eq!(r.negative_mass, 1.0);
    }

    #[test]
    fn gaussian_vs_fock1() {
        let grid = Grid1D::symmetric(8.0, 128).unwrap();
        let g = wigner_transform(&oscillator_state_factory(grid, &StateSpec::Fock(0)).unwrap())
            .unwrap();
        let r = negativity_report(&g, 1e-9);
        assert_eq!(r.negative_mass, 0.0);
        assert_eq!(r.negative_fraction, 0.0);

        let f = wigner_transform(&oscillator_state_factory(grid, &StateSpec::Fock(1)).unwrap())
            .unwrap();
        let r = negativity_report(&f, 1e-9);
        assert!((r.min_value + 1.0 / PI).abs() < 0.02 / PI);
        assert!(r.negative_mass > 0.0);
        assert!(r.argmin[0].abs() < 1e-12 && r.argmin[1].abs() < 1e-12);
    }
}
