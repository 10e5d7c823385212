//! Harmonic-oscillator test states (`hbar = m = omega = 1`, `E_n = n + 1/2`).

use std::f64::consts::PI;

use num_complex::Complex64;

use super::density::DensityMatrix1P;
use super::green::LesserGreenFunction;
use crate::error::{Error, Result};
use crate::numerics::{ComplexMatrix, Grid1D};

/// States must fall below this probability density at both grid edges.
pub const EDGE_DENSITY_TOL: f64 = 1e-10;

/// Normalized Hermite function `phi_n(x)` from the three-term recurrence
/// `phi_{k+1} = sqrt(2/(k+1)) x phi_k - sqrt(k/(k+1)) phi_{k-1}`.
pub fn hermite_function(n: usize, x: f64) -> f64 {
    let mut prev = 0.0;
    let mut cur = PI.powf(-0.25) * (-0.5 * x * x).exp();
    for k in 0..n {
        let kf = k as f64;
        let next = (2.0 / (kf + 1.0)).sqrt() * x * cur - (kf / (kf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
    }
    cur
}

pub fn oscillator_energy(n: usize) -> f64 {
    n as f64 + 0.5
}

/// Description of a test state for [`oscillator_state_factory`].
#[derive(Debug, Clone, PartialEq)]
pub enum StateSpec {
    /// Oscillator eigenstate `phi_n`.
    Fock(usize),
    /// Real Gaussian `(pi w^2)^(-1/4) exp(-(x-c)^2 / (2 w^2))`.
    Gaussian { center: f64, width: f64 },
    /// Coherent sum of pure components with complex amplitudes.
    Superposition(Vec<(Complex64, StateSpec)>),
    /// Incoherent mixture with nonnegative weights (normalized internally).
    Mixture(Vec<(f64, StateSpec)>),
}

fn pure_amplitudes(grid: &Grid1D, spec: &StateSpec) -> Result<Vec<Complex64>> {
    let xs = grid.points();
    match spec {
        StateSpec::Fock(n) => Ok(xs
            .iter()
            .map(|&x| Complex64::new(hermite_function(*n, x), 0.0))
            .collect()),
        StateSpec::Gaussian { center, width } => {
            if !(*width > 0.0) || !center.is_finite() {
                return Err(Error::InvalidInput(format!(
                    "gaussian needs finite center and width > 0, got ({center}, {width})"
                )));
            }
            let norm = (PI * width * width).powf(-0.25);
            Ok(xs
                .iter()
                .map(|&x| {
                    let u = (x - center) / width;
                    Complex64::new(norm * (-0.5 * u * u).exp(), 0.0)
                })
                .collect())
        }
        StateSpec::Superposition(parts) => {
            if parts.is_empty() {
                return Err(Error::InvalidInput("empty superposition".into()));
            }
            let mut psi = vec![Complex64::new(0.0, 0.0); grid.len()];
            for (amp, part) in parts {
                let v = pure_amplitudes(grid, part)?;
                psi.iter_mut().zip(&v).for_each(|(a, b)| *a += amp * b);
            }
            Ok(psi)
        }
        StateSpec::Mixture(_) => Err(Error::InvalidInput(
            "a mixture cannot appear inside a superposition".into(),
        )),
    }
}

/// Grid-normalized wavefunction of a pure spec, with the edge-decay check applied.
pub fn wavefunction(grid: &Grid1D, spec: &StateSpec) -> Result<Vec<Complex64>> {
    let mut psi = pure_amplitudes(grid, spec)?;
    let norm2: f64 = psi.iter().map(|z| z.norm_sqr()).sum::<f64>() * grid.dx();
    if !(norm2.is_finite() && norm2 > 1e-300) {
        return Err(Error::Normalization {
            expected: 1.0,
            found: norm2,
        });
    }
    let s = 1.0 / norm2.sqrt();
    psi.iter_mut().for_each(|z| *z *= s);
    for &i in &[0, grid.len() - 1] {
        let d = psi[i].norm_sqr();
        if d >= EDGE_DENSITY_TOL {
            return Err(Error::EdgeDecay {
                x: grid.point(i),
                edge_density: d,
            });
        }
    }
    Ok(psi)
}

/// Builds a validated density matrix for `spec` on `grid`.
pub fn oscillator_state_factory(grid: Grid1D, spec: &StateSpec) -> Result<DensityMatrix1P> {
    match spec {
        StateSpec::Mixture(parts) => {
            if parts.is_empty() {
                return Err(Error::InvalidInput("empty mixture".into()));
            }
            if let Some((w, _)) = parts.iter().find(|(w, _)| !(*w >= 0.0) || !w.is_finite()) {
                return Err(Error::InvalidInput(format!(
                    "mixture weight {w} is negative"
                )));
            }
            let total: f64 = parts.iter().map(|(w, _)| w).sum();
            if !(total > 0.0) {
                return Err(Error::Normalization {
                    expected: 1.0,
                    found: total,
                });
            }
            let n = grid.len();
            let mut rho = ComplexMatrix::zeros(n, n);
            for (w, part) in parts {
                if *w == 0.0 {
                    continue;
                }
                let component = oscillator_state_factory(grid, part)?;
                rho.add_scaled(Complex64::new(w / total, 0.0), component.matrix());
            }
            DensityMatrix1P::new(grid, rho.hermitian_part())
        }
        pure => {
            let psi = wavefunction(&grid, pure)?;
            DensityMatrix1P::from_wavefunction(grid, &psi)
        }
    }
}

/// `-iG^<(x_i t_a; x_j t_b)` for one particle in `sum_m c_m phi_m` evolving under
/// the oscillator Hamiltonian. Amplitudes must be normalized.
pub fn toy_g_lesser(
    grid: Grid1D,
    times: Grid1D,
    occupation: &[(usize, Complex64)],
) -> Result<LesserGreenFunction> {
    if occupation.is_empty() {
        return Err(Error::InvalidInput("empty occupation list".into()));
    }
    let norm2: f64 = occupation.iter().map(|(_, c)| c.norm_sqr()).sum();
    if (norm2 - 1.0).abs() > 1e-10 {
        return Err(Error::Normalization {
            expected: 1.0,
            found: norm2,
        });
    }
    let (nx, nt) = (grid.len(), times.len());
    let xs = grid.points();
    let ts = times.points();
    let orbitals: Vec<Vec<f64>> = occupation
        .iter()
        .map(|(m, _)| xs.iter().map(|&x| hermite_function(*m, x)).collect())
        .collect();
    // psi(x_i, t_a), combined index i * nt + a
    let mut psi = vec![Complex64::new(0.0, 0.0); nx * nt];
    for (k, (m, c)) in occupation.iter().enumerate() {
        let e = oscillator_energy(*m);
        for (a, &t) in ts.iter().enumerate() {
            let phase = c * Complex64::from_polar(1.0, -e * t);
            for i in 0..nx {
                psi[i * nt + a] += phase * orbitals[k][i];
            }
        }
    }
    let big = nx * nt;
    let mut g = Vec::with_capacity(big * big);
    for alpha in 0..big {
        let pa = psi[alpha];
        g.extend(psi.iter().map(|pb| pa * pb.conj()));
    }
    LesserGreenFunction::new(grid, times, g)
}

/// Time grid spanning one full period `4 pi` of the oscillator phases `exp(-i E_n t)`.
pub fn oscillator_period_times(n_t: usize) -> Result<Grid1D> {
    Grid1D::new(0.0, 4.0 * PI, n_t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::quadrature::gauss_hermite;

    fn factorial(n: usize) -> f64 {
        (1..=n).map(|k| k as f64).product()
    }

    /// Physicists' Hermite polynomial by its explicit sum, independent of the recurrence.
    fn hermite_poly_explicit(n: usize, x: f64) -> f64 {
        (0..=n / 2)
            .map(|m| {
                let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                sign * factorial(n) / (factorial(m) * factorial(n - 2 * m))
                    * (2.0 * x).powi((n - 2 * m) as i32)
            })
            .sum()
    }

    #[test]
    fn recurrence_matches_explicit_hermite() {
        for n in 0..8 {
            let c = 1.0 / (2f64.powi(n as i32) * factorial(n) * PI.sqrt()).sqrt();
            for &x in &[-2.5, -0.3, 0.0, 1.1, 3.7] {
                let want = c * hermite_poly_explicit(n, x) * (-0.5 * x * x).exp();
                assert!((hermite_function(n, x) - want).abs() < 1e-12, "n={n} x={x}");
            }
        }
    }

    #[test]
    fn fock5_norm_on_grid_matches_quadrature() {
        // Gauss-Hermite oracle: int phi_5^2 dx = sum w_i c^2 H_5(x_i)^2, exact for 12 nodes
        let (x, w) = gauss_hermite(12);
        let c2 = 1.0 / (32.0 * factorial(5) * PI.sqrt());
        let oracle: f64 = x
            .iter()
            .zip(&w)
            .map(|(x, w)| w * c2 * hermite_poly_explicit(5, *x).powi(2))
            .sum();
        assert!((oracle - 1.0).abs() < 1e-12);
        let grid = Grid1D::symmetric(10.0, 256).unwrap();
        let norm: f64 = grid
            .points()
            .iter()
            .map(|&x| hermite_function(5, x).powi(2))
            .sum::<f64>()
            * grid.dx();
        assert!((norm - oracle).abs() < 1e-6);
    }

    #[test]
    fn fock_states_orthonormal_on_grid() {
        let grid = Grid1D::symmetric(8.0, 128).unwrap();
        let xs = grid.points();
        let rho0 = oscillator_state_factory(grid, &StateSpec::Fock(0)).unwrap();
        assert!((rho0.trace() - 1.0).abs() < 1e-10);
        for m in 0..6 {
            for n in 0..6 {
                let s: f64 = xs
                    .iter()
                    .map(|&x| hermite_function(m, x) * hermite_function(n, x))
                    .sum::<f64>()
                    * grid.dx();
                let want = if m == n { 1.0 } else { 0.0 };
                assert!((s - want).abs() < 1e-8, "({m},{n}) overlap {s}");
            }
        }
    }

    #[test]
    fn factory_rejections() {
        let grid = Grid1D::symmetric(3.0, 64).unwrap();
        assert!(matches!(
            oscillator_state_factory(grid, &StateSpec::Fock(4)),
            Err(Error::EdgeDecay { .. })
        ));
        let grid = Grid1D::symmetric(8.0, 64).unwrap();
        let bad_weights =
            StateSpec::Mixture(vec![(-0.5, StateSpec::Fock(0)), (1.5, StateSpec::Fock(1))]);
        assert!(oscillator_state_factory(grid, &bad_weights).is_err());
        let cancel = StateSpec::Superposition(vec![
            (Complex64::new(1.0, 0.0), StateSpec::Fock(0)),
            (Complex64::new(-1.0, 0.0), StateSpec::Fock(0)),
        ]);
        assert!(matches!(
            oscillator_state_factory(grid, &cancel),
            Err(Error::Normalization { .. })
        ));
        let zero_width = StateSpec::Gaussian {
            center: 0.0,
            width: 0.0,
        };
        assert!(oscillator_state_factory(grid, &zero_width).is_err());
    }

    #[test]
    fn toy_green_function_traces_and_stationarity() {
        let grid = Grid1D::symmetric(8.0, 32).unwrap();
        let times = oscillator_period_times(16).unwrap();
        let g = toy_g_lesser(grid, times, &[(0, Complex64::new(1.0, 0.0))]).unwrap();
        let rho0 = oscillator_state_factory(grid, &StateSpec::Fock(0)).unwrap();
        for a in 0..16 {
            let slice = g.equal_time_slice(a);
            assert!(slice.max_abs_diff(rho0.matrix()) < 1e-10);
        }
    }

    #[test]
    fn superposition_density_oscillates_with_period_pi() {
        let grid = Grid1D::symmetric(8.0, 32).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        // period pi = 16 steps of dt = 4 pi / 64
        let times = oscillator_period_times(64).unwrap();
        let occ = [(0, Complex64::new(s, 0.0)), (2, Complex64::new(s, 0.0))];
        let g = toy_g_lesser(grid, times, &occ).unwrap();
        let dx = grid.dx();
        for a in 0..64 {
            let tr: f64 = (0..32).map(|i| g.get(i, a, i, a).re).sum::<f64>() * dx;
            assert!((tr - 1.0).abs() < 1e-8);
            let b = (a + 16) % 64;
            for i in 0..32 {
                assert!((g.get(i, a, i, a) - g.get(i, b, i, b)).norm() < 1e-12);
            }
        }
        // and it genuinely moves within a period: analytic cross term 2 c0 c2 phi0 phi2 cos(2t)
        let x0 = 0usize;
        let _ = x0;
        let xs = grid.points();
        let i = 16; // x = 0
        let want = |t: f64| {
            let p0 = hermite_function(0, xs[i]);
            let p2 = hermite_function(2, xs[i]);
            0.5 * (p0 * p0 + p2 * p2) + p0 * p2 * (2.0 * t).cos()
        };
        for a in [0, 4, 8, 12] {
            assert!((g.get(i, a, i, a).re - want(times.point(a))).abs() < 1e-12);
        }
    }
}
