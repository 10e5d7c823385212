//! Numerical kernels shared by the physics modules: uniform grids, dense complex
//! matrices, radix-2 FFT, Jacobi Hermitian eigensolver, seeded randomness and
//! Gauss-Hermite quadrature.

pub mod eig;
pub mod fft;
pub mod grid;
pub mod matrix;
pub mod quadrature;
pub mod random;

pub use eig::{hermitian_eig, HermitianEigen};
pub use fft::{fft_1d, Direction};
pub use grid::Grid1D;
pub use matrix::ComplexMatrix;
pub use random::{random_state, Seed, StateKind};
