use fermiwig::cumulant::{
    default_grid, doubled_grid, marcinkiewicz_scan, truncated_density_auto, CumulantVector,
    TruncatedDensity,
};
use fermiwig::numerics::Seed;
use rand::Rng;

use super::{require, usage, ExperimentOutput};
use crate::config::ExperimentConfig;
use crate::error::CliError;
use crate::output::Table;
use crate::report::Check;

/// Relative strength at and above which a non-Gaussian vector must show negativity.
const STRENGTH_FLOOR: f64 = 0.1;
const NEGATIVITY_THRESHOLD: f64 = 1e-6;

pub fn scan(cfg: &ExperimentConfig) -> Result<ExperimentOutput, CliError> {
    let p = cfg.params();
    let base = usage(
        "scan base",
        CumulantVector::gaussian(p.f64("kappa1"), p.f64("kappa2")),
    )?;
    let kmax = p.f64("kappa3_max");
    let steps = p.usize("steps");
    require(kmax > 0.0 && kmax.is_finite(), || {
        "kappa3_max must be positive".into()
    })?;
    require(steps > 0, || "steps must be positive".into())?;
    let k2 = p.f64("kappa2");
    let values: Vec<f64> = (-(steps as i64)..=steps as i64)
        .map(|i| i as f64 * kmax / steps as f64)
        .collect();
    let grid = default_grid(&base)?;
    let fine = doubled_grid(&grid)?;

    let rows = marcinkiewicz_scan(&values, &base, &grid)?;
    let refined = marcinkiewicz_scan(&values, &base, &fine)?;
    let mut worst_mass_error = 0.0f64;
    let mut min_strong_mass = f64::INFINITY;
    let mut scan_table = Table::new(
        "scan",
        &[
            "kappa3",
            "relative_strength",
            "min_p",
            "negative_mass",
            "negative_mass_doubled",
            "total_mass",
        ],
    );
    for (r, f) in rows.iter().zip(&refined) {
        let kappa = base.with_kappa3(r.kappa3)?;
        let d = truncated_density_auto(&kappa, &grid)?;
        worst_mass_error = worst_mass_error.max((d.total_mass - 1.0).abs());
        let strength = kappa.relative_strength();
        if r.kappa3 != 0.0 && strength >= STRENGTH_FLOOR {
            min_strong_mass = min_strong_mass.min(r.negative_mass);
        }
        scan_table.push(vec![
            r.kappa3.into(),
            strength.into(),
            r.min_p.into(),
            r.negative_mass.into(),
            f.negative_mass.into(),
            d.total_mass.into(),
        ]);
    }

    let n = rows.len();
    let asymmetry = (0..n / 2)
        .map(|i| (rows[i].negative_mass - rows[n - 1 - i].negative_mass).abs())
        .fold(0.0, f64::max);
    // reference rows: negativity well above round-off
    let drift = rows
        .iter()
        .zip(&refined)
        .filter(|(c, _)| c.negative_mass > NEGATIVITY_THRESHOLD)
        .map(|(c, f)| (c.negative_mass - f.negative_mass).abs() / c.negative_mass)
        .fold(0.0, f64::max);

    let mut quartic = Table::new(
        "quartic",
        &[
            "kappa3",
            "kappa4",
            "relative_strength",
            "negative_mass",
            "total_mass",
        ],
    );
    for (s3, s4) in [
        (0.0, -0.1),
        (0.0, -0.5),
        (0.0, -1.0),
        (0.1, -0.1),
        (0.5, -0.1),
        (1.0, -0.5),
    ] {
        let kappa =
            CumulantVector::new(vec![p.f64("kappa1"), k2, s3 * k2.powf(1.5), s4 * k2 * k2])?;
        let d = truncated_density_auto(&kappa, &default_grid(&kappa)?)?;
        worst_mass_error = worst_mass_error.max((d.total_mass - 1.0).abs());
        min_strong_mass = min_strong_mass.min(d.negative_mass);
        quartic.push(vec![
            kappa.kappa()[2].into(),
            kappa.kappa()[3].into(),
            kappa.relative_strength().into(),
            d.negative_mass.into(),
            d.total_mass.into(),
        ]);
    }

    let mut rng = Seed(cfg.seed).rng();
    let mut gaussian = Table::new(
        "gaussians",
        &["kappa1", "kappa2", "negative_mass", "total_mass"],
    );
    let mut worst_gaussian = 0.0f64;
    for _ in 0..p.usize("gaussians") {
        let kappa =
            CumulantVector::gaussian(rng.random_range(-3.0..3.0), rng.random_range(0.2..4.0))?;
        let d = truncated_density_auto(&kappa, &default_grid(&kappa)?)?;
        worst_gaussian = worst_gaussian.max(d.negative_mass);
        worst_mass_error = worst_mass_error.max((d.total_mass - 1.0).abs());
        gaussian.push(vec![
            kappa.mean().into(),
            kappa.kappa()[1].into(),
            d.negative_mass.into(),
            d.total_mass.into(),
        ]);
    }

    let mut densities = Table::new("densities", &["kappa3", "x", "p"]);
    for k3 in [0.0, 0.5 * kmax, kmax] {
        let d: TruncatedDensity = truncated_density_auto(&base.with_kappa3(k3)?, &grid)?;
        for (x, v) in d.x_grid.points().into_iter().zip(&d.p) {
            densities.push(vec![k3.into(), x.into(), (*v).into()]);
        }
    }

    Ok(ExperimentOutput {
        checks: vec![
            Check::below("degree2_max_negative_mass", worst_gaussian, 1e-10),
            Check::above(
                "strong_min_negative_mass",
                min_strong_mass,
                NEGATIVITY_THRESHOLD,
            ),
            Check::below("scan_asymmetry", asymmetry, 1e-8),
            Check::below("grid_doubling_max_relative_change", drift, 0.01),
            Check::below("max_total_mass_error", worst_mass_error, 1e-6),
        ],
        tables: vec![scan_table, quartic, gaussian, densities],
    })
}
