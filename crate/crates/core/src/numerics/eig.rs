//! Hermitian eigendecomposition by cyclic Jacobi rotations.
//!
//! A Hermitian `H = S + iK` is embedded as the real symmetric
//! `[[S, -K], [K, S]]`, whose spectrum is that of `H` with every eigenvalue
//! doubled. Each real eigenvector `[a; b]` maps to the complex eigenvector
//! `a + ib`; the two copies of a pair differ only by a phase, so a pivoted
//! complex Gram-Schmidt pass over all `2n` candidates recovers an orthonormal
//! eigenbasis, degenerate eigenspaces included.

use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

const HERMITIAN_TOL: f64 = 1e-10;
const MAX_SWEEPS: usize = 100;

/// Eigenvalues in ascending order and the matching eigenvectors as columns.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    pub fn vector(&self, k: usize) -> Vec<Complex64> {
        self.vectors.col(k)
    }

    /// Rebuilds `V diag(f(lambda)) V^dagger`.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.values.len();
        let fl: Vec<f64> = self.values.iter().map(|&l| f(l)).collect();
        ComplexMatrix::from_fn(n, n, |i, j| {
            (0..n)
                .map(|k| self.vectors[(i, k)] * fl[k] * self.vectors[(j, k)].conj())
                .sum()
        })
    }
}

/// Eigendecomposition of a real symmetric matrix (row-major, `n x n`).
/// Returns unsorted eigenvalues and eigenvectors as columns of a row-major matrix.
pub fn symmetric_jacobi(n: usize, mut a: Vec<f64>) -> (Vec<f64>, Vec<f64>) {
    debug_assert_eq!(a.len(), n * n);
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    for sweep in 0..MAX_SWEEPS {
        let mut off = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off += a[p * n + q] * a[p * n + q];
            }
        }
        if off == 0.0 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let g = 100.0 * apq.abs();
                // below round-off of both diagonal entries: drop it
                if sweep > 3 && app.abs() + g == app.abs() && aqq.abs() + g == aqq.abs() {
                    a[p * n + q] = 0.0;
                    a[q * n + p] = 0.0;
                    continue;
                }
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    let values = (0..n).map(|i| a[i * n + i]).collect();
    (values, v)
}

/// Eigendecomposition of a Hermitian matrix, eigenvalues ascending.
pub fn hermitian_eig(m: &ComplexMatrix) -> Result<HermitianEigen> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "eigendecomposition needs a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    m.check_hermitian(HERMITIAN_TOL)?;
    let n = m.rows();
    let h = m.hermitian_part();
    let nn = 2 * n;
    let mut real = vec![0.0; nn * nn];
    for i in 0..n {
        for j in 0..n {
            let z = h[(i, j)];
            real[i * nn + j] = z.re;
            real[(i + n) * nn + (j + n)] = z.re;
            real[i * nn + (j + n)] = -z.im;
            real[(i + n) * nn + j] = z.im;
        }
    }
    let (_, rv) = symmetric_jacobi(nn, real);

    // candidates a + ib from each real eigenvector
    let mut cands: Vec<Vec<Complex64>> = (0..nn)
        .map(|c| {
            (0..n)
                .map(|i| Complex64::new(rv[i * nn + c], rv[(i + n) * nn + c]))
                .collect()
        })
        .collect();
    let mut res2: Vec<f64> = cands
        .iter()
        .map(|v| v.iter().map(|z| z.norm_sqr()).sum())
        .collect();
    let mut used = vec![false; nn];
    let mut basis: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    while basis.len() < n {
        let mut best = usize::MAX;
        let mut best_r = -1.0;
        for (c, &r) in res2.iter().enumerate() {
            if !used[c] && r > best_r + 1e-12 {
                best = c;
                best_r = r;
            }
        }
        used[best] = true;
        let mut q = cands[best].clone();
        // second Gram-Schmidt pass against the accepted basis
        for b in &basis {
            let proj: Complex64 = b.iter().zip(&q).map(|(x, y)| x.conj() * y).sum();
            q.iter_mut().zip(b).for_each(|(y, x)| *y -= proj * x);
        }
        let nq = q.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        q.iter_mut().for_each(|z| *z /= nq);
        for (c, cand) in cands.iter_mut().enumerate() {
            if used[c] {
                continue;
            }
            let proj: Complex64 = q.iter().zip(cand.iter()).map(|(x, y)| x.conj() * y).sum();
            cand.iter_mut().zip(&q).for_each(|(y, x)| *y -= proj * x);
            res2[c] = cand.iter().map(|z| z.norm_sqr()).sum();
        }
        basis.push(q);
    }

    let mut pairs: Vec<(f64, Vec<Complex64>)> = basis
        .into_iter()
        .map(|mut v| {
            let hv = h.mul_vec(&v);
            let lambda = v
                .iter()
                .zip(&hv)
                .map(|(a, b)| (a.conj() * b).re)
                .sum::<f64>();
            fix_phase(&mut v);
            (lambda, v)
        })
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut vectors = ComplexMatrix::zeros(n, n);
    let mut values = Vec::with_capacity(n);
    for (k, (l, v)) in pairs.into_iter().enumerate() {
        values.push(l);
        vectors.set_col(k, &v);
    }
    Ok(HermitianEigen { values, vectors })
}

/// Rotates `v` so that its largest-modulus entry (first on ties) is real positive.
pub fn fix_phase(v: &mut [Complex64]) {
    let mut best = 0;
    let mut best_abs = -1.0;
    for (i, z) in v.iter().enumerate() {
        if z.norm() > best_abs + 1e-12 {
            best = i;
            best_abs = z.norm();
        }
    }
    if best_abs > 0.0 {
        let phase = v[best].conj() / best_abs;
        v.iter_mut().for_each(|z| *z *= phase);
    }
}

/// Smallest eigenvalue of a Hermitian matrix.
pub fn min_eigenvalue(m: &ComplexMatrix) -> Result<f64> {
    Ok(hermitian_eig(m)?.values[0])
}
