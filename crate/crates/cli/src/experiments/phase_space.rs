use std::f64::consts::{FRAC_1_SQRT_2, PI};

use fermiwig::numerics::{random_state, Grid1D, StateKind};
use fermiwig::wigner::{
    gwd_transform, negativity_report, oscillator_period_times, oscillator_state_factory,
    overlap_trace, toy_g_lesser, wigner_transform, DensityMatrix1P, StateSpec,
};
use num_complex::Complex64;
use rand::Rng;

use super::{require, sub_seed, usage, ExperimentOutput};
use crate::config::ExperimentConfig;
use crate::error::CliError;
use crate::output::Table;
use crate::report::Check;

pub fn trace_identity(cfg: &ExperimentConfig) -> Result<ExperimentOutput, CliError> {
    let p = cfg.params();
    let n = p.usize("n");
    let pairs = p.usize("pairs");
    let grid = usage("grid", Grid1D::symmetric(p.f64("half_width"), n))?;
    require(pairs > 0, || "pairs must be positive".into())?;

    let mut table = Table::new(
        "pairs",
        &["pair", "direct_trace", "phase_space", "discrepancy"],
    );
    let mut worst = 0.0f64;
    for k in 0..pairs as u64 {
        let a = DensityMatrix1P::from_trace_one(
            grid,
            &random_state(sub_seed(cfg.seed, 2 * k), n, StateKind::Mixed),
        )?;
        let b = DensityMatrix1P::from_trace_one(
            grid,
            &random_state(sub_seed(cfg.seed, 2 * k + 1), n, StateKind::Mixed),
        )?;
        let o = overlap_trace(&a, &b)?;
        worst = worst.max(o.discrepancy);
        table.push(vec![
            (k as usize).into(),
            o.lhs.into(),
            o.rhs.into(),
            o.discrepancy.into(),
        ]);
    }
    Ok(ExperimentOutput {
        checks: vec![Check::below("max_relative_discrepancy", worst, 1e-8)],
        tables: vec![table],
    })
}

pub fn wigner(cfg: &ExperimentConfig) -> Result<ExperimentOutput, CliError> {
    let p = cfg.params();
    let grid = usage("grid", Grid1D::symmetric(p.f64("half_width"), p.usize("n")))?;
    let count = p.usize("gaussians");
    let tol = p.f64("tolerance");
    require(tol >= 0.0, || "tolerance must be nonnegative".into())?;

    let mut rng = fermiwig::numerics::Seed(cfg.seed).rng();
    let mut gaussians = Table::new(
        "gaussians",
        &[
            "index",
            "center",
            "width",
            "min_value",
            "negative_mass",
            "max_marginal_error",
        ],
    );
    let mut worst_mass = 0.0f64;
    let mut worst_marginal = 0.0f64;
    let mut worst_imag = 0.0f64;
    for i in 0..count {
        let center = rng.random_range(-2.0..2.0);
        let width = rng.random_range(0.5..1.8);
        let rho = oscillator_state_factory(grid, &StateSpec::Gaussian { center, width })?;
        let w = wigner_transform(&rho)?;
        let r = negativity_report(&w, tol);
        let marginal = marginal_error(&w, &rho);
        worst_mass = worst_mass.max(r.negative_mass);
        worst_marginal = worst_marginal.max(marginal);
        worst_imag = worst_imag.max(w.imag_residue());
        gaussians.push(vec![
            i.into(),
            center.into(),
            width.into(),
            r.min_value.into(),
            r.negative_mass.into(),
            marginal.into(),
        ]);
    }

    let mut fock = Table::new(
        "fock",
        &["n", "min_value", "negative_mass", "max_marginal_error"],
    );
    let mut fock1_min = 0.0;
    let mut weakest_fock_mass = f64::INFINITY;
    let mut fock1 = Table::new("fock1_wigner", &["x", "p", "w"]);
    for n in 1..=4 {
        let rho = oscillator_state_factory(grid, &StateSpec::Fock(n))?;
        let w = wigner_transform(&rho)?;
        let r = negativity_report(&w, tol);
        let marginal = marginal_error(&w, &rho);
        worst_marginal = worst_marginal.max(marginal);
        worst_imag = worst_imag.max(w.imag_residue());
        weakest_fock_mass = weakest_fock_mass.min(r.negative_mass);
        fock.push(vec![
            n.into(),
            r.min_value.into(),
            r.negative_mass.into(),
            marginal.into(),
        ]);
        if n == 1 {
            fock1_min = r.min_value;
            let xs = grid.points();
            for (j, &x) in xs.iter().enumerate() {
                for (k, &pk) in w.p_values().iter().enumerate() {
                    fock1.push(vec![x.into(), pk.into(), w.get(j, k).into()]);
                }
            }
        }
    }

    Ok(ExperimentOutput {
        checks: vec![
            Check::equals("gaussian_max_negative_mass", worst_mass, 0.0),
            Check::below(
                "fock1_min_relative_error",
                (fock1_min * PI + 1.0).abs(),
                0.02,
            ),
            Check::above("fock_min_negative_mass", weakest_fock_mass, 0.0),
            Check::below("max_marginal_error", worst_marginal, 1e-6),
            Check::below("max_imag_residue", worst_imag, 1e-9),
        ],
        tables: vec![gaussians, fock, fock1],
    })
}

fn marginal_error(w: &fermiwig::wigner::WignerFunction, rho: &DensityMatrix1P) -> f64 {
    rho.density()
        .iter()
        .enumerate()
        .map(|(j, d)| (w.marginal(j) - d).abs())
        .fold(0.0, f64::max)
}

pub fn gwd(cfg: &ExperimentConfig) -> Result<ExperimentOutput, CliError> {
    let p = cfg.params();
    let x = usage(
        "space grid",
        Grid1D::symmetric(p.f64("half_width"), p.usize("nx")),
    )?;
    let t = usage("time grid", oscillator_period_times(p.usize("nt")))?;

    let mut variation = Table::new(
        "stationary",
        &["orbital", "t_variation", "imag_residue", "min_value"],
    );
    let mut worst_variation = 0.0f64;
    let mut worst_imag = 0.0f64;
    for m in [0usize, 1] {
        let g = toy_g_lesser(x, t, &[(m, Complex64::new(1.0, 0.0))])?;
        let w = gwd_transform(&g)?;
        drop(g);
        let r = negativity_report(&w, 0.0);
        worst_variation = worst_variation.max(w.t_variation());
        worst_imag = worst_imag.max(w.imag_residue());
        variation.push(vec![
            m.into(),
            w.t_variation().into(),
            w.imag_residue().into(),
            r.min_value.into(),
        ]);
    }

    let s = Complex64::new(FRAC_1_SQRT_2, 0.0);
    let g = toy_g_lesser(x, t, &[(0, s), (2, s)])?;
    let w = gwd_transform(&g)?;
    drop(g);
    worst_imag = worst_imag.max(w.imag_residue());
    let (imin, vmin) = w
        .values()
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, v)| (i, *v))
        .expect("non-empty");
    let (k0, w0, r0, t0) = w.unflatten(imin);
    let (nk, nw, _, nt) = w.dims();

    let mut slice = Table::new("superposition_slice", &["k", "omega", "value"]);
    for k in 0..nk {
        for om in 0..nw {
            slice.push(vec![
                w.k_values()[k].into(),
                w.omega_values()[om].into(),
                w.get(k, om, r0, t0).into(),
            ]);
        }
    }
    let mut series = Table::new("superposition_t_series", &["t", "value"]);
    for tt in 0..nt {
        series.push(vec![
            w.times().point(tt).into(),
            w.get(k0, w0, r0, tt).into(),
        ]);
    }
    let mut summary = Table::new("superposition_min", &["k", "omega", "r", "t", "min_value"]);
    summary.push(vec![
        w.k_values()[k0].into(),
        w.omega_values()[w0].into(),
        w.grid().point(r0).into(),
        w.times().point(t0).into(),
        vmin.into(),
    ]);

    Ok(ExperimentOutput {
        checks: vec![
            Check::below("stationary_max_t_variation", worst_variation, 1e-8),
            Check::below("superposition_min_value", vmin, -1e-4),
            Check::below("max_imag_residue", worst_imag, 1e-9),
        ],
        tables: vec![variation, summary, slice, series],
    })
}
