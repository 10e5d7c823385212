//! Seeded randomness.
//!
//! Every random draw in the crate comes from ChaCha8 (`rand_chacha::ChaCha8Rng`)
//! keyed with `seed_from_u64(seed)`. Independent substreams of one seed are
//! obtained with ChaCha's 64-bit stream selector (`set_stream`), so restart `k`
//! of an optimizer or pair `k` of a sweep never shares a keystream with another.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use super::matrix::ComplexMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Seed(pub u64);

impl Seed {
    pub fn rng(self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.0)
    }

    /// Keystream `stream` of this seed.
    pub fn substream(self, stream: u64) -> ChaCha8Rng {
        let mut rng = self.rng();
        rng.set_stream(stream);
        rng
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StateKind {
    Pure,
    Mixed,
}

pub fn complex_normal<R: rand::Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn complex_normal_vec<R: rand::Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<Complex64> {
    (0..n).map(|_| complex_normal(rng)).collect()
}

/// Haar-random unit vector in `C^n`.
pub fn random_unit_vector<R: rand::Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<Complex64> {
    let mut v = complex_normal_vec(rng, n);
    let norm = super::matrix::norm(&v);
    v.iter_mut().for_each(|z| *z /= norm);
    v
}

/// Pure state (a `dim x 1` column) or a Ginibre-induced mixed state
/// `G G^dagger / Tr(G G^dagger)`.
pub fn random_state(seed: Seed, dim: usize, kind: StateKind) -> ComplexMatrix {
    let mut rng = seed.rng();
    match kind {
        StateKind::Pure => ComplexMatrix::column(&random_unit_vector(&mut rng, dim)),
        StateKind::Mixed => {
            let g = ComplexMatrix::from_vec(dim, dim, complex_normal_vec(&mut rng, dim * dim))
                .expect("dim >= 1");
            let rho = g.matmul(&g.adjoint());
            let tr = rho.trace().re;
            rho.scale_real(1.0 / tr).hermitian_part()
        }
    }
}

/// GUE-like Hermitian matrix.
pub fn random_hermitian(seed: Seed, dim: usize) -> ComplexMatrix {
    let mut rng = seed.rng();
    let g = ComplexMatrix::from_vec(dim, dim, complex_normal_vec(&mut rng, dim * dim))
        .expect("dim >= 1");
    g.add(&g.adjoint()).scale_real(0.5)
}

/// Haar-random unitary via Gram-Schmidt on a Ginibre matrix.
pub fn random_unitary<R: rand::Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexMatrix {
    random_isometry(rng, dim, dim)
}

/// `rows x cols` matrix with orthonormal columns (`rows >= cols`).
pub fn random_isometry<R: rand::Rng + ?Sized>(
    rng: &mut R,
    rows: usize,
    cols: usize,
) -> ComplexMatrix {
    let g = ComplexMatrix::from_vec(rows, cols, complex_normal_vec(rng, rows * cols))
        .expect("non-empty");
    orthonormalize_columns(&g)
}

/// Modified Gram-Schmidt on the columns, the QR `Q` factor with positive `R` diagonal.
pub fn orthonormalize_columns(m: &ComplexMatrix) -> ComplexMatrix {
    let (rows, cols) = (m.rows(), m.cols());
    let mut q = m.clone();
    for j in 0..cols {
        let mut v = q.col(j);
        for _ in 0..2 {
            for k in 0..j {
                let u = q.col(k);
                let proj = super::matrix::inner(&u, &v);
                v.iter_mut().zip(&u).for_each(|(x, y)| *x -= proj * y);
            }
        }
        let nv = super::matrix::norm(&v);
        v.iter_mut().for_each(|z| *z /= nv);
        q.set_col(j, &v);
    }
    debug_assert_eq!(q.rows(), rows);
    q
}
