use num_complex::Complex64;

use super::one_particle::OneParticleGLesser;
use crate::error::{Error, Result};
use crate::fermion::hf::{check_determinantal, hf_pair_matrix};
use crate::fermion::{pairs, wedge};
use crate::numerics::ComplexMatrix;

const HERMITIAN_TOL: f64 = 1e-9;
const WEIGHT_SUM_TOL: f64 = 1e-12;

/// One term `v_k G1^k ^ G2^k` of the separable form.
#[derive(Debug, Clone)]
pub struct G2Component {
    pub weight: f64,
    pub g1: OneParticleGLesser,
    pub g2: OneParticleGLesser,
}

/// Equal-time two-particle lesser function on the pair space `(i<j)`.
///
/// Slices hold `G2[(ij),(kl)]` for ordered pairs only; [`ordered_trace`] sums over
/// both orderings, so a Hartree-Fock slice has `ordered_trace = N(N-1)`.
///
/// [`ordered_trace`]: TwoParticleGLesser::ordered_trace
#[derive(Debug, Clone)]
pub struct TwoParticleGLesser {
    d: usize,
    times: Vec<f64>,
    slices: Vec<ComplexMatrix>,
    components: Option<Vec<G2Component>>,
}

impl TwoParticleGLesser {
    pub fn from_slices(d: usize, times: Vec<f64>, slices: Vec<ComplexMatrix>) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidInput(format!("d = {d} is below 2")));
        }
        if times.len() != slices.len() || times.is_empty() {
            return Err(Error::DimensionMismatch(format!(
                "{} times for {} slices",
                times.len(),
                slices.len()
            )));
        }
        let n = pairs(d).len();
        for s in &slices {
            if s.rows() != n || s.cols() != n {
                return Err(Error::DimensionMismatch(format!(
                    "slice is {}x{}, pair space has dimension {n}",
                    s.rows(),
                    s.cols()
                )));
            }
            s.check_hermitian(HERMITIAN_TOL)?;
        }
        Ok(Self {
            d,
            times,
            slices,
            components: None,
        })
    }

    /// Pair-space slices of `slice0` carried to each time by `h = diag(energies)`:
    /// the pair `(ij)` picks up `e^{-i(E_i + E_j) t}`.
    pub fn free_evolution(
        energies: &[f64],
        slice0: &ComplexMatrix,
        times: Vec<f64>,
    ) -> Result<Self> {
        let d = energies.len();
        let ps = pairs(d);
        let slices = times
            .iter()
            .map(|&t| {
                ComplexMatrix::from_fn(ps.len(), ps.len(), |p, q| {
                    let (i, j) = ps[p];
                    let (k, l) = ps[q];
                    let phase = -(energies[i] + energies[j] - energies[k] - energies[l]) * t;
                    slice0[(p, q)] * Complex64::from_polar(1.0, phase)
                })
            })
            .collect();
        Self::from_slices(d, times, slices)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn slices(&self) -> &[ComplexMatrix] {
        &self.slices
    }

    pub fn slice(&self, a: usize) -> Result<&ComplexMatrix> {
        self.slices.get(a).ok_or(Error::IndexOutOfRange {
            index: a,
            len: self.slices.len(),
        })
    }

    /// Retained separable-form components, if the function was built from them.
    pub fn components(&self) -> Option<&[G2Component]> {
        self.components.as_deref()
    }

    /// Trace over ordered pairs: twice the pair-space trace.
    pub fn ordered_trace(&self, a: usize) -> Result<f64> {
        Ok(2.0 * self.slice(a)?.trace().re)
    }

    /// Slice `a` scaled to unit pair-space trace.
    pub fn normalized_slice(&self, a: usize) -> Result<ComplexMatrix> {
        let s = self.slice(a)?;
        let tr = s.trace().re;
        if !(tr > 0.0) {
            return Err(Error::Normalization {
                expected: 1.0,
                found: tr,
            });
        }
        Ok(s.scale_real(1.0 / tr).hermitian_part())
    }
}

/// Antisymmetrized product of `g` with itself at every equal time,
/// `G2[(ij),(kl)] = g_ik g_jl - g_il g_jk`.
pub fn hf_g2(g: &OneParticleGLesser) -> Result<TwoParticleGLesser> {
    let n = g.n_particles();
    if n < 2 {
        return Err(Error::InvalidInput(format!(
            "{n} particle cannot form a pair"
        )));
    }
    let mut slices = Vec::with_capacity(g.slices().len());
    for s in g.slices() {
        check_determinantal(s, n)?;
        slices.push(hf_pair_matrix(s));
    }
    TwoParticleGLesser::from_slices(g.d(), g.times().to_vec(), slices)
}

/// `sum_k v_k G1^k ^ G2^k` per time, with `^` the antisymmetrized product of the
/// fermion module. The components are kept as a separability certificate.
pub fn separable_g2_construct(components: Vec<G2Component>) -> Result<TwoParticleGLesser> {
    let first = components
        .first()
        .ok_or_else(|| Error::InvalidInput("no components".into()))?;
    let d = first.g1.d();
    let times = first.g1.times().to_vec();
    let total: f64 = components.iter().map(|c| c.weight).sum();
    if (total - 1.0).abs() > WEIGHT_SUM_TOL {
        return Err(Error::Normalization {
            expected: 1.0,
            found: total,
        });
    }
    for c in &components {
        if !(c.weight > 0.0) {
            return Err(Error::InvalidInput(format!(
                "weight {} is not positive",
                c.weight
            )));
        }
        for g in [&c.g1, &c.g2] {
            if g.d() != d || g.times() != times.as_slice() {
                return Err(Error::DimensionMismatch(
                    "components must share d and times".into(),
                ));
            }
        }
    }
    let np = pairs(d).len();
    let slices = (0..times.len())
        .map(|a| {
            let mut acc = ComplexMatrix::zeros(np, np);
            for c in &components {
                acc.add_scaled(
                    Complex64::new(c.weight, 0.0),
                    &wedge(&c.g1.slices()[a], &c.g2.slices()[a]),
                );
            }
            acc
        })
        .collect();
    let mut out = TwoParticleGLesser::from_slices(d, times, slices)?;
    out.components = Some(components);
    Ok(out)
}
