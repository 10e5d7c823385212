//! Entanglement of formation by optimization over ensembles.
//!
//! With `rho = sum_r lambda_r |e_r><e_r|` let `B_r = sqrt(lambda_r) A(e_r)`. Every
//! `M x r` isometry `U` gives an ensemble `A~_k = sum_r U_kr B_r` with
//! `sum_k |A~_k><A~_k| = rho`, weights `p_k = |A~_k|^2` and reduced states
//! `sigma_k / p_k`, `sigma_k = A~_k A~_k^dagger`. The objective
//!
//! `F(U) = sum_k -Tr sigma_k ln(sigma_k / p_k)`
//!
//! has Euclidean gradient `G_kr = 2 Tr(B_r^dagger L_k A~_k)` with
//! `L_k = -ln(sigma_k / p_k)` on the support of `sigma_k`. Descent runs on the
//! Stiefel manifold: the gradient is projected to the tangent space, steps are
//! retracted with a QR factor, and the step length is halved until Armijo holds.

use num_complex::Complex64;
use serde::Serialize;

use super::entropy::entropy_of_spectrum;
use super::state::{antisymmetric_from_pairs, TwoFermionMixedState, TwoFermionPureState};
use crate::error::{Error, Result};
use crate::numerics::random::{orthonormalize_columns, random_isometry};
use crate::numerics::{hermitian_eig, ComplexMatrix, Seed};

/// Eigenvalues of `rho` above this define its rank.
pub const RANK_TOL: f64 = 1e-12;
/// Ensemble members lighter than this are dropped from the reported decomposition.
pub const PRUNE_TOL: f64 = 1e-10;
const ARMIJO: f64 = 1e-4;
const MIN_STEP: f64 = 1e-12;
const GRAD_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EofOptions {
    /// Defaults to `rank^2`.
    pub ensemble_size: Option<usize>,
    pub restarts: usize,
    pub max_iters: usize,
    pub tol: f64,
    pub seed: Seed,
}

impl Default for EofOptions {
    fn default() -> Self {
        Self {
            ensemble_size: None,
            restarts: 16,
            max_iters: 2000,
            tol: 1e-8,
            seed: Seed(0),
        }
    }
}

#[derive(Debug, Clone)]
pub struct EnsembleDecomposition {
    pub probabilities: Vec<f64>,
    pub states: Vec<TwoFermionPureState>,
}

impl EnsembleDecomposition {
    pub fn density_matrix(&self) -> ComplexMatrix {
        let n = self.states[0].pair_amplitudes().len();
        let mut rho = ComplexMatrix::zeros(n, n);
        for (p, s) in self.probabilities.iter().zip(&self.states) {
            rho.add_scaled(Complex64::new(*p, 0.0), &s.projector());
        }
        rho
    }

    /// Entrywise distance between the ensemble average and `rho`.
    pub fn residual(&self, rho: &TwoFermionMixedState) -> f64 {
        self.density_matrix().max_abs_diff(rho.matrix())
    }
}

#[derive(Debug, Clone)]
pub struct EofResult {
    /// Upper bound on `E_f`.
    pub value: f64,
    pub decomposition: EnsembleDecomposition,
    pub converged: bool,
    pub iterations: usize,
    pub best_restart: usize,
    pub restart_values: Vec<f64>,
}

pub(crate) struct EofProblem {
    d: usize,
    b: Vec<ComplexMatrix>,
}

struct MemberEval {
    value: f64,
    /// `L A~`
    la: Option<ComplexMatrix>,
}

impl EofProblem {
    pub(crate) fn new(rho: &TwoFermionMixedState) -> Result<Self> {
        let d = rho.d();
        let eig = hermitian_eig(rho.matrix())?;
        let b = (0..eig.values.len())
            .rev()
            .filter(|&r| eig.values[r] > RANK_TOL)
            .map(|r| antisymmetric_from_pairs(d, &eig.vector(r)).scale_real(eig.values[r].sqrt()))
            .collect();
        Ok(Self { d, b })
    }

    pub(crate) fn rank(&self) -> usize {
        self.b.len()
    }

    fn members(&self, u: &ComplexMatrix) -> Vec<ComplexMatrix> {
        (0..u.rows())
            .map(|k| {
                let mut a = ComplexMatrix::zeros(self.d, self.d);
                for (r, br) in self.b.iter().enumerate() {
                    a.add_scaled(u[(k, r)], br);
                }
                a
            })
            .collect()
    }

    fn member(&self, a: &ComplexMatrix, want_grad: bool) -> MemberEval {
        let p = a.frobenius_norm().powi(2);
        if p < 1e-300 {
            return MemberEval {
                value: 0.0,
                la: None,
            };
        }
        let sigma = a.matmul(&a.adjoint()).hermitian_part();
        let eig = hermitian_eig(&sigma).expect("hermitian by construction");
        let normalized: Vec<f64> = eig.values.iter().map(|l| l / p).collect();
        let value = p * entropy_of_spectrum(&normalized);
        let la = want_grad.then(|| {
            let logs: Vec<f64> = normalized
                .iter()
                .map(|&l| if l > 1e-15 { -l.ln() } else { 0.0 })
                .collect();
            let mut lmat = ComplexMatrix::zeros(self.d, self.d);
            for (i, &w) in logs.iter().enumerate() {
                if w != 0.0 {
                    let v = eig.vector(i);
                    lmat.add_scaled(Complex64::new(w, 0.0), &ComplexMatrix::outer(&v, &v));
                }
            }
            lmat.matmul(a)
        });
        MemberEval { value, la }
    }

    pub(crate) fn objective(&self, u: &ComplexMatrix) -> f64 {
        self.members(u)
            .iter()
            .map(|a| self.member(a, false).value)
            .sum()
    }

    pub(crate) fn objective_and_gradient(&self, u: &ComplexMatrix) -> (f64, ComplexMatrix) {
        let members = self.members(u);
        let mut g = ComplexMatrix::zeros(u.rows(), u.cols());
        let mut f = 0.0;
        for (k, a) in members.iter().enumerate() {
            let e = self.member(a, true);
            f += e.value;
            if let Some(la) = e.la {
                for (r, br) in self.b.iter().enumerate() {
                    let t: Complex64 = br
                        .as_slice()
                        .iter()
                        .zip(la.as_slice())
                        .map(|(x, y)| x.conj() * y)
                        .sum();
                    g[(k, r)] = t * 2.0;
                }
            }
        }
        (f, g)
    }

    fn decomposition(&self, u: &ComplexMatrix) -> EnsembleDecomposition {
        let kept: Vec<(f64, ComplexMatrix)> = self
            .members(u)
            .into_iter()
            .map(|a| (a.frobenius_norm().powi(2), a))
            .filter(|(p, _)| *p >= PRUNE_TOL)
            .collect();
        let total: f64 = kept.iter().map(|(p, _)| p).sum();
        let (probabilities, states) = kept
            .into_iter()
            .map(|(p, a)| {
                let s = TwoFermionPureState::normalized(&a).expect("nonzero member");
                (p / total, s)
            })
            .unzip();
        EnsembleDecomposition {
            probabilities,
            states,
        }
    }
}

fn real_inner(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    a.as_slice()
        .iter()
        .zip(b.as_slice())
        .map(|(x, y)| (x.conj() * y).re)
        .sum()
}

struct RunResult {
    value: f64,
    u: ComplexMatrix,
    converged: bool,
    iterations: usize,
}

fn descend(problem: &EofProblem, mut u: ComplexMatrix, opts: &EofOptions) -> RunResult {
    let mut step = 0.5;
    let (mut f, mut g) = problem.objective_and_gradient(&u);
    for it in 0..opts.max_iters {
        let sym = {
            let x = u.adjoint().matmul(&g);
            x.add(&x.adjoint()).scale_real(0.5)
        };
        let xi = g.sub(&u.matmul(&sym));
        let g2 = real_inner(&xi, &xi);
        if g2.sqrt() < GRAD_TOL {
            return RunResult {
                value: f,
                u,
                converged: true,
                iterations: it,
            };
        }
        let mut accepted = None;
        while step >= MIN_STEP {
            let cand = orthonormalize_columns(&u.sub(&xi.scale_real(step)));
            let fc = problem.objective(&cand);
            if fc <= f - ARMIJO * step * g2 {
                accepted = Some((cand, fc));
                break;
            }
            step *= 0.5;
        }
        let Some((cand, fc)) = accepted else {
            // no descent left at working precision
            return RunResult {
                value: f,
                u,
                converged: true,
                iterations: it,
            };
        };
        let drop = f - fc;
        u = cand;
        (f, g) = problem.objective_and_gradient(&u);
        if drop < opts.tol {
            return RunResult {
                value: f,
                u,
                converged: true,
                iterations: it + 1,
            };
        }
        step = (step * 2.0).min(4.0);
    }
    RunResult {
        value: f,
        u,
        converged: false,
        iterations: opts.max_iters,
    }
}

pub fn entanglement_of_formation(
    rho: &TwoFermionMixedState,
    opts: &EofOptions,
) -> Result<EofResult> {
    let problem = EofProblem::new(rho)?;
    let rank = problem.rank();
    let m = opts.ensemble_size.unwrap_or(rank * rank);
    if m < rank {
        return Err(Error::EnsembleTooSmall { size: m, rank });
    }
    if opts.restarts == 0 {
        return Err(Error::InvalidInput(
            "at least one restart is required".into(),
        ));
    }
    let mut best: Option<(usize, RunResult)> = None;
    let mut restart_values = Vec::with_capacity(opts.restarts);
    for k in 0..opts.restarts {
        let u0 = if k == 0 {
            ComplexMatrix::from_fn(m, rank, |i, j| {
                Complex64::new(if i == j { 1.0 } else { 0.0 }, 0.0)
            })
        } else {
            random_isometry(&mut opts.seed.substream(k as u64), m, rank)
        };
        let run = descend(&problem, u0, opts);
        restart_values.push(run.value);
        if best.as_ref().is_none_or(|(_, b)| run.value < b.value) {
            best = Some((k, run));
        }
    }
    let (best_restart, run) = best.expect("restarts >= 1");
    Ok(EofResult {
        value: run.value,
        decomposition: problem.decomposition(&run.u),
        converged: run.converged,
        iterations: run.iterations,
        best_restart,
        restart_values,
    })
}
