//! Canonical (Youla) form `A = sum_i z_i (u_i v_i^T - v_i u_i^T)`.
//!
//! The eigenspaces of `A A^dagger` carry the pairs: if `u` lies in the eigenspace
//! of `|z|^2` then so does `A conj(u)`, and `v = -A conj(u) / |A conj(u)|` is
//! orthogonal to `u` because `u^dagger A conj(u) = 0` for antisymmetric `A`.
//! That choice makes `z = u^dagger A conj(v) = |A conj(u)|` real and positive.
//!
//! Clusters of (numerically) equal eigenvalues are handled by restricting `A` to
//! the cluster and decomposing the restriction again; once a restriction is a
//! single cluster the pairs are read off directly, seeding each `u` from the
//! basis vector with the largest remaining weight (lowest index on ties).

use num_complex::Complex64;

use super::state::{normalize, TwoFermionPureState};
use crate::error::Result;
use crate::numerics::eig::{fix_phase, hermitian_eig};
use crate::numerics::matrix::inner;
use crate::numerics::ComplexMatrix;

/// Coefficients with `|z|` above this count towards the Slater rank.
pub const RANK_TOL: f64 = 1e-10;
/// Restrictions with Frobenius norm below this are treated as zero.
const ZERO_BLOCK: f64 = 1e-14;
/// Relative eigenvalue gap (to the largest eigenvalue) separating clusters.
const CLUSTER_TOL: f64 = 1e-8;

#[derive(Debug, Clone)]
pub struct SlaterPair {
    pub z: Complex64,
    pub u: Vec<Complex64>,
    pub v: Vec<Complex64>,
}

#[derive(Debug, Clone)]
pub struct SlaterDecomposition {
    /// Descending `|z|`.
    pub pairs: Vec<SlaterPair>,
    pub slater_rank: usize,
    d: usize,
}

impl SlaterDecomposition {
    pub fn coefficients(&self) -> Vec<Complex64> {
        self.pairs.iter().map(|p| p.z).collect()
    }

    /// `2 |z_1|^2`, the largest overlap of the state with a Slater determinant.
    pub fn max_slater_weight(&self) -> f64 {
        self.pairs.first().map_or(0.0, |p| 2.0 * p.z.norm_sqr())
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        let d = self.d;
        let mut a = ComplexMatrix::zeros(d, d);
        for p in &self.pairs {
            for i in 0..d {
                for j in 0..d {
                    a[(i, j)] += p.z * (p.u[i] * p.v[j] - p.v[i] * p.u[j]);
                }
            }
        }
        a
    }

    /// Largest `|<x, y>| - delta_xy` over all mode vectors.
    pub fn orthonormality_defect(&self) -> f64 {
        let vecs: Vec<&Vec<Complex64>> = self.pairs.iter().flat_map(|p| [&p.u, &p.v]).collect();
        let mut worst = 0.0f64;
        for (a, x) in vecs.iter().enumerate() {
            for (b, y) in vecs.iter().enumerate() {
                let want = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((inner(x, y) - want).norm());
            }
        }
        worst
    }
}

pub fn slater_decompose(psi: &TwoFermionPureState) -> Result<SlaterDecomposition> {
    let a = psi.amplitudes();
    let d = a.rows();
    let mut pairs = decompose_block(a)?;
    pairs.sort_by(|p, q| q.z.norm().total_cmp(&p.z.norm()));
    let slater_rank = pairs.iter().filter(|p| p.z.norm() > RANK_TOL).count();
    Ok(SlaterDecomposition {
        pairs,
        slater_rank,
        d,
    })
}

pub fn slater_rank(psi: &TwoFermionPureState) -> Result<usize> {
    Ok(slater_decompose(psi)?.slater_rank)
}

fn decompose_block(a: &ComplexMatrix) -> Result<Vec<SlaterPair>> {
    let k = a.rows();
    if k < 2 || a.frobenius_norm() < ZERO_BLOCK {
        return Ok(vec![]);
    }
    let eig = hermitian_eig(&a.matmul(&a.adjoint()).hermitian_part())?;
    // descending
    let order: Vec<usize> = (0..k).rev().collect();
    let top = eig.values[order[0]].max(0.0);
    let mut clusters: Vec<Vec<usize>> = vec![];
    for &idx in &order {
        match clusters.last_mut() {
            Some(c) if eig.values[*c.last().unwrap()] - eig.values[idx] <= CLUSTER_TOL * top => {
                c.push(idx)
            }
            _ => clusters.push(vec![idx]),
        }
    }
    if clusters.len() == 1 {
        return Ok(pair_single_cluster(a));
    }
    let mut out = vec![];
    for c in clusters {
        if c.len() < 2 {
            continue;
        }
        let q = ComplexMatrix::from_fn(k, c.len(), |i, j| eig.vectors[(i, c[j])]);
        // A restricted to the cluster: A_Q = Q B Q^T with B = Q^dagger A conj(Q)
        let b = q.adjoint().matmul(a).matmul(&q.conj());
        let b = b.sub(&b.transpose()).scale_real(0.5);
        for p in decompose_block(&b)? {
            out.push(SlaterPair {
                z: p.z,
                u: q.mul_vec(&p.u),
                v: q.mul_vec(&p.v),
            });
        }
    }
    Ok(out)
}

fn pair_single_cluster(a: &ComplexMatrix) -> Vec<SlaterPair> {
    let k = a.rows();
    let mut proj = ComplexMatrix::identity(k);
    let mut chosen: Vec<Vec<Complex64>> = vec![];
    let mut out = vec![];
    loop {
        let (best, weight) =
            (0..k)
                .map(|i| (i, proj[(i, i)].re))
                .fold((0, f64::NEG_INFINITY), |acc, (i, w)| {
                    if w > acc.1 + 1e-12 {
                        (i, w)
                    } else {
                        acc
                    }
                });
        if weight < 0.5 {
            break;
        }
        let mut u = proj.col(best);
        normalize(&mut u);
        fix_phase(&mut u);
        let ubar: Vec<Complex64> = u.iter().map(|z| z.conj()).collect();
        let w = a.mul_vec(&ubar);
        let mut v: Vec<Complex64> = w.iter().map(|z| -z).collect();
        let wn = normalize(&mut v);
        if wn < ZERO_BLOCK {
            proj = proj.sub(&ComplexMatrix::outer(&u, &u));
            chosen.push(u);
            continue;
        }
        for x in chosen.iter().chain(std::iter::once(&u)) {
            let c = inner(x, &v);
            v.iter_mut().zip(x).for_each(|(vi, xi)| *vi -= c * xi);
        }
        normalize(&mut v);
        let vbar: Vec<Complex64> = v.iter().map(|z| z.conj()).collect();
        let z = inner(&u, &a.mul_vec(&vbar));
        proj = proj
            .sub(&ComplexMatrix::outer(&u, &u))
            .sub(&ComplexMatrix::outer(&v, &v));
        chosen.push(u.clone());
        chosen.push(v.clone());
        out.push(SlaterPair { z, u, v });
    }
    out
}
