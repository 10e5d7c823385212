use std::f64::consts::LN_2;

use fermiwig::fermion::state::{random_pure_state, random_slater, random_slater_mixture};
use fermiwig::fermion::{
    entanglement_of_formation, hf_two_rdm, is_fermionic_separable, pair_dim, pair_index,
    pure_state_entanglement, slater_decompose, slater_witness, EofOptions, TwoFermionMixedState,
    TwoFermionPureState, Verdict, DEFAULT_SEPARABILITY_TOL,
};
use fermiwig::greenfn::{
    equal_time_density, g2_entanglement_test, hf_g2, separable_g2_construct, uniform_times,
    G2Component, OneParticleGLesser, TwoParticleGLesser,
};
use fermiwig::numerics::random::{random_isometry, random_unitary};
use fermiwig::numerics::{random_state, Seed, StateKind};
use num_complex::Complex64;
use rand::Rng;

use super::{require, sub_seed, ExperimentOutput};
use crate::config::ExperimentConfig;
use crate::error::CliError;
use crate::output::{Cell, Table};
use crate::report::Check;

const EQUALITY_TOL: f64 = 1e-9;
/// Time window for the Green-function experiments; energies are `k + 1/2`.
const T_MAX: f64 = 2.0 * std::f64::consts::PI;

fn verdict_cell(v: Verdict) -> Cell {
    match v {
        Verdict::Separable => "separable".into(),
        Verdict::Entangled => "entangled".into(),
        Verdict::Inconclusive => "inconclusive".into(),
    }
}

fn energies(d: usize) -> Vec<f64> {
    (0..d).map(|k| k as f64 + 0.5).collect()
}

/// `(e_0 ^ e_1 + e_2 ^ e_3) / sqrt(2)` in dimension `d`.
fn two_block(d: usize) -> Result<TwoFermionPureState, CliError> {
    let mut c = vec![Complex64::new(0.0, 0.0); pair_dim(d)];
    for (i, j) in [(0, 1), (2, 3)] {
        c[pair_index(d, i, j)] = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    }
    Ok(TwoFermionPureState::from_pair_amplitudes(d, &c)?)
}

pub fn cl_bound(cfg: &ExperimentConfig) -> Result<ExperimentOutput, CliError> {
    let p = cfg.params();
    let dims = p.usize_list("d");
    let samples = p.usize("samples");
    require(dims.iter().all(|&d| (2..=64).contains(&d)), || {
        format!("d must lie in [2, 64], got {dims:?}")
    })?;
    require(samples > 0, || "samples must be positive".into())?;

    let mut table = Table::new(
        "entropies",
        &[
            "index",
            "kind",
            "d",
            "entropy",
            "slater_rank",
            "max_slater_weight",
        ],
    );
    let mut min_entropy = f64::INFINITY;
    let mut slater_gap = 0.0f64;
    let mut mismatches = 0usize;
    let mut rng = Seed(cfg.seed).substream(u64::MAX);
    for i in 0..samples {
        let d = dims[i % dims.len()];
        let random = random_pure_state(sub_seed(cfg.seed, i as u64), d);
        let slater = random_slater(&mut rng, d);
        for (kind, psi) in [("random", random), ("slater", slater)] {
            let s = pure_state_entanglement(&psi)?;
            let dec = slater_decompose(&psi)?;
            if kind == "random" {
                min_entropy = min_entropy.min(s);
            } else {
                slater_gap = slater_gap.max((s - LN_2).abs());
            }
            if ((s - LN_2).abs() < EQUALITY_TOL) != (dec.slater_rank == 1) {
                mismatches += 1;
            }
            table.push(vec![
                i.into(),
                kind.into(),
                d.into(),
                s.into(),
                dec.slater_rank.into(),
                dec.max_slater_weight().into(),
            ]);
        }
    }
    Ok(ExperimentOutput {
        checks: vec![
            Check::at_least("min_entropy", min_entropy, LN_2 - EQUALITY_TOL),
            Check::below("slater_max_deviation_from_ln2", slater_gap, EQUALITY_TOL),
            Check::equals("equality_mismatches", mismatches as f64, 0.0),
        ],
        tables: vec![table],
    })
}

pub fn eof(cfg: &ExperimentConfig) -> Result<ExperimentOutput, CliError> {
    let p = cfg.params();
    let d = p.usize("d");
    let restarts = p.usize("restarts");
    let seeds = p.usize("seeds");
    require((4..=8).contains(&d), || {
        format!("d must lie in [4, 8], got {d}")
    })?;
    require(restarts > 0 && seeds > 0, || {
        "restarts and seeds must be positive".into()
    })?;
    let opts = |s: u64| EofOptions {
        restarts,
        seed: Seed(s),
        ..Default::default()
    };

    let mut table = Table::new(
        "eof",
        &[
            "case",
            "seed",
            "eof",
            "reference",
            "verdict",
            "converged",
            "best_restart",
        ],
    );

    let mut pure_error = 0.0f64;
    for k in 0..3u64 {
        let psi = random_pure_state(sub_seed(cfg.seed, k), d);
        let exact = pure_state_entanglement(&psi)?;
        let r = entanglement_of_formation(&TwoFermionMixedState::from_pure(&psi), &opts(cfg.seed))?;
        pure_error = pure_error.max((r.value - exact).abs());
        table.push(vec![
            format!("pure-{k}").into(),
            (cfg.seed as usize).into(),
            r.value.into(),
            exact.into(),
            "".into(),
            (r.converged as usize).into(),
            r.best_restart.into(),
        ]);
    }

    let u = random_unitary(&mut Seed(cfg.seed).substream(7), d);
    let basis = |i, j| TwoFermionPureState::basis_slater(d, i, j);
    let rotated =
        |i, j| -> Result<TwoFermionPureState, CliError> { Ok(basis(i, j)?.transformed(&u)?) };
    let mixtures = vec![
        (
            "orthogonal-2",
            TwoFermionMixedState::from_ensemble(&[(0.5, basis(0, 1)?), (0.5, basis(2, 3)?)])?,
        ),
        (
            "orthogonal-3",
            TwoFermionMixedState::from_ensemble(&[
                (0.5, basis(0, 1)?),
                (0.3, basis(2, 3)?),
                (0.2, basis(0, 2)?),
            ])?,
        ),
        (
            "orthogonal-rotated",
            TwoFermionMixedState::from_ensemble(&[(0.6, rotated(0, 1)?), (0.4, rotated(2, 3)?)])?,
        ),
    ];
    let mut mixture_max = 0.0f64;
    for (name, rho) in &mixtures {
        let r = entanglement_of_formation(rho, &opts(cfg.seed))?;
        mixture_max = mixture_max.max(r.value);
        table.push(vec![
            (*name).into(),
            (cfg.seed as usize).into(),
            r.value.into(),
            LN_2.into(),
            "".into(),
            (r.converged as usize).into(),
            r.best_restart.into(),
        ]);
    }

    let psi = two_block(d)?;
    let noisy = {
        let m = TwoFermionMixedState::from_pure(&psi)
            .matrix()
            .scale_real(0.9);
        let mm = TwoFermionMixedState::maximally_mixed(d)?;
        TwoFermionMixedState::new(d, m.add(&mm.matrix().scale_real(0.1)))?
    };
    let cases = vec![
        ("two-block", TwoFermionMixedState::from_pure(&psi)),
        ("two-block-noisy", noisy),
        ("orthogonal-2", mixtures[0].1.clone()),
    ];
    let mut unstable = 0usize;
    for (name, rho) in &cases {
        let mut verdicts = vec![];
        for s in 0..seeds as u64 {
            let seed = cfg.seed.wrapping_add(s);
            let r = is_fermionic_separable(rho, DEFAULT_SEPARABILITY_TOL, &opts(seed))?;
            verdicts.push(r.verdict);
            table.push(vec![
                format!("stability-{name}").into(),
                (seed as usize).into(),
                r.eof.value.into(),
                f64::NAN.into(),
                verdict_cell(r.verdict),
                (r.eof.converged as usize).into(),
                r.eof.best_restart.into(),
            ]);
        }
        if verdicts.iter().any(|v| *v != verdicts[0]) {
            unstable += 1;
        }
    }

    Ok(ExperimentOutput {
        checks: vec![
            Check::below("pure_max_error", pure_error, 1e-6),
            Check::at_most("orthogonal_mixture_max_eof", mixture_max, LN_2 + 5e-3),
            Check::equals("unstable_verdicts", unstable as f64, 0.0),
        ],
        tables: vec![table],
    })
}

pub fn hf_separability(cfg: &ExperimentConfig) -> Result<ExperimentOutput, CliError> {
    let p = cfg.params();
    let d = p.usize("d");
    let nt = p.usize("times");
    require((4..=10).contains(&d), || {
        format!("d must lie in [4, 10], got {d}")
    })?;
    require(nt > 0, || "times must be positive".into())?;
    let opts = EofOptions {
        seed: Seed(cfg.seed),
        ..Default::default()
    };

    let mut table = Table::new(
        "hf",
        &[
            "n",
            "source",
            "time_index",
            "verdict",
            "eof",
            "worst_member_defect",
            "certificate_residual",
        ],
    );
    let mut not_separable = 0usize;
    let mut worst_defect = 0.0f64;
    let mut worst_residual = 0.0f64;
    let mut projector_dev = 0.0f64;
    let mut round_trip = 0.0f64;
    let mut trace_error = 0.0f64;
    for n in [2usize, 3] {
        let q = random_isometry(&mut Seed(cfg.seed).substream(n as u64), d, n);
        let proj = q.matmul(&q.adjoint());
        let rho = hf_two_rdm(&proj, n)?;
        if n == 2 {
            let s = TwoFermionPureState::slater(&q.col(0), &q.col(1))?;
            projector_dev = rho.matrix().max_abs_diff(&s.projector());
        }
        let r = is_fermionic_separable(&rho, DEFAULT_SEPARABILITY_TOL, &opts)?;
        let residual = r.eof.decomposition.residual(&rho);
        not_separable += (r.verdict != Verdict::Separable) as usize;
        worst_defect = worst_defect.max(r.worst_member_defect);
        worst_residual = worst_residual.max(residual);
        table.push(vec![
            n.into(),
            "hf_two_rdm".into(),
            0usize.into(),
            verdict_cell(r.verdict),
            r.eof.value.into(),
            r.worst_member_defect.into(),
            residual.into(),
        ]);

        let g = OneParticleGLesser::slater(energies(d), &q, uniform_times(T_MAX, nt))?;
        let g2 = hf_g2(&g)?;
        for a in 0..nt {
            let rho1 = equal_time_density(&g, a)?;
            trace_error = trace_error.max((rho1.trace().re - n as f64).abs());
            trace_error = trace_error.max((g2.ordered_trace(a)? - (n * (n - 1)) as f64).abs());
            let oracle = hf_two_rdm(&rho1.scale_real(1.0 / n as f64), n)?;
            round_trip = round_trip.max(g2.normalized_slice(a)?.max_abs_diff(oracle.matrix()));
            let t = g2_entanglement_test(&g2, a, DEFAULT_SEPARABILITY_TOL, &opts)?;
            not_separable += (t.verdict != Verdict::Separable) as usize;
            worst_defect = worst_defect.max(t.worst_member_defect);
            table.push(vec![
                n.into(),
                "hf_g2".into(),
                a.into(),
                verdict_cell(t.verdict),
                t.eof.into(),
                t.worst_member_defect.into(),
                f64::NAN.into(),
            ]);
        }
    }
    Ok(ExperimentOutput {
        checks: vec![
            Check::equals("non_separable_verdicts", not_separable as f64, 0.0),
            Check::at_most(
                "max_certificate_slater_defect",
                worst_defect,
                DEFAULT_SEPARABILITY_TOL,
            ),
            Check::below("max_certificate_residual", worst_residual, 1e-6),
            Check::below("n2_slater_projector_deviation", projector_dev, 1e-10),
            Check::below("hf_g2_round_trip_error", round_trip, 1e-10),
            Check::below("trace_bookkeeping_error", trace_error, 1e-8),
        ],
        tables: vec![table],
    })
}

pub fn g2_separability(cfg: &ExperimentConfig) -> Result<ExperimentOutput, CliError> {
    let p = cfg.params();
    let d = p.usize("d");
    let nt = p.usize("times");
    let mixtures = p.usize("mixtures");
    require((4..=8).contains(&d), || {
        format!("d must lie in [4, 8], got {d}")
    })?;
    require(nt > 0 && mixtures > 0, || {
        "times and mixtures must be positive".into()
    })?;
    let opts = EofOptions {
        seed: Seed(cfg.seed),
        ..Default::default()
    };
    let times = uniform_times(T_MAX, nt);

    let mut table = Table::new(
        "g2",
        &[
            "case",
            "time_index",
            "verdict",
            "eof",
            "certificate_used",
            "witness_value",
        ],
    );
    let push = |table: &mut Table, case: &str, a: usize, r: &fermiwig::greenfn::G2Report| {
        table.push(vec![
            case.into(),
            a.into(),
            verdict_cell(r.verdict),
            r.eof.into(),
            (r.certificate_used as usize).into(),
            r.witness_value.unwrap_or(f64::NAN).into(),
        ]);
    };

    let mut rng = Seed(cfg.seed).substream(1);
    let mut components = vec![];
    for (k, w) in [0.2, 0.3, 0.5].into_iter().enumerate() {
        let gamma = random_state(sub_seed(cfg.seed, 100 + k as u64), d, StateKind::Mixed);
        let q = random_isometry(&mut rng, d, 1 + k % 2);
        components.push(G2Component {
            weight: w,
            g1: OneParticleGLesser::new(energies(d), gamma, times.clone())?,
            g2: OneParticleGLesser::slater(energies(d), &q, times.clone())?,
        });
    }
    let built = separable_g2_construct(components)?;
    let mut construct_failures = 0usize;
    let mut construct_residual = 0.0f64;
    for a in 0..nt {
        let r = g2_entanglement_test(&built, a, DEFAULT_SEPARABILITY_TOL, &opts)?;
        construct_failures += (r.verdict != Verdict::Separable || !r.certificate_used) as usize;
        construct_residual =
            construct_residual.max(r.certificate_residual.unwrap_or(f64::INFINITY));
        push(&mut table, "separable-form", a, &r);
    }

    let psi = two_block(d)?;
    let slice = psi.projector().scale_real(2.0);
    let entangled = TwoParticleGLesser::free_evolution(&energies(d), &slice, times.clone())?;
    let mut eof_error = 0.0f64;
    let mut not_entangled = 0usize;
    let mut witness_max = f64::NEG_INFINITY;
    for a in 0..nt {
        let r = g2_entanglement_test(&entangled, a, DEFAULT_SEPARABILITY_TOL, &opts)?;
        not_entangled += (r.verdict != Verdict::Entangled) as usize;
        eof_error = eof_error.max((r.eof - 2.0 * LN_2).abs());
        witness_max = witness_max.max(r.witness_value.unwrap_or(f64::INFINITY));
        push(&mut table, "two-block", a, &r);
    }

    let w = slater_witness(&psi)?;
    let target = w.expectation(&TwoFermionMixedState::from_pure(&psi));
    let mut witness = Table::new("witness", &["index", "members", "expectation"]);
    let mut rng = Seed(cfg.seed).substream(2);
    let mut min_sep = f64::INFINITY;
    for i in 0..mixtures {
        let count = rng.random_range(1..=4);
        let sigma = random_slater_mixture(&mut rng, d, count);
        let e = w.expectation(&sigma);
        min_sep = min_sep.min(e);
        witness.push(vec![i.into(), count.into(), e.into()]);
    }

    Ok(ExperimentOutput {
        checks: vec![
            Check::equals("separable_form_failures", construct_failures as f64, 0.0),
            Check::below(
                "separable_form_certificate_residual",
                construct_residual,
                1e-8,
            ),
            Check::equals("two_block_not_entangled", not_entangled as f64, 0.0),
            Check::below("two_block_eof_error", eof_error, 1e-2),
            Check::at_most("two_block_slice_witness_value", witness_max, -0.4),
            Check::at_most("witness_on_target", target, -0.4),
            Check::at_least("witness_min_on_slater_mixtures", min_sep, -1e-6),
        ],
        tables: vec![table, witness],
    })
}
