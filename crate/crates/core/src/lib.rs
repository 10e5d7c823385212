#![allow(clippy::neg_cmp_op_on_partial_ord)] // `!(x > 0.0)` also rejects NaN

pub mod cumulant;
pub mod error;
pub mod fermion;
pub mod greenfn;
pub mod numerics;
pub mod wigner;

pub use error::{Error, Result};
