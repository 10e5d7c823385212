//! Iterative radix-2 FFT.
//!
//! Forward transform is unnormalized, `X_k = sum_j x_j exp(-2 pi i jk/n)`;
//! the inverse carries the `1/n` factor.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

/// Transforms `data` and returns the result.
pub fn fft_1d(data: &[Complex64], direction: Direction) -> Result<Vec<Complex64>> {
    let mut out = data.to_vec();
    fft_in_place(&mut out, direction)?;
    Ok(out)
}

pub fn fft_in_place(data: &mut [Complex64], direction: Direction) -> Result<()> {
    transform(data, direction)?;
    if direction == Direction::Inverse {
        let s = 1.0 / data.len() as f64;
        data.iter_mut().for_each(|z| *z *= s);
    }
    Ok(())
}

/// Unnormalized transform with kernel `exp(+2 pi i jk/n)` (inverse direction without `1/n`).
pub fn fft_unnormalized_positive(data: &mut [Complex64]) -> Result<()> {
    transform(data, Direction::Inverse)
}

fn transform(data: &mut [Complex64], direction: Direction) -> Result<()> {
    let n = data.len();
    if n == 0 || !n.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(n));
    }
    if n == 1 {
        return Ok(());
    }
    let bits = n.trailing_zeros();
    for i in 0..n {
        let j = i.reverse_bits() >> (usize::BITS - bits);
        if j > i {
            data.swap(i, j);
        }
    }
    let sign = match direction {
        Direction::Forward => -1.0,
        Direction::Inverse => 1.0,
    };
    let mut len = 2;
    while len <= n {
        let half = len / 2;
        let step = sign * 2.0 * PI / len as f64;
        // twiddles computed directly rather than by recurrence to keep round-off flat
        let twiddles: Vec<Complex64> = (0..half)
            .map(|k| Complex64::from_polar(1.0, step * k as f64))
            .collect();
        for start in (0..n).step_by(len) {
            for k in 0..half {
                let a = data[start + k];
                let b = data[start + k + half] * twiddles[k];
                data[start + k] = a + b;
                data[start + k + half] = a - b;
            }
        }
        len <<= 1;
    }
    Ok(())
}

/// Maps a signed frequency index in `[-n/2, n/2)` to its FFT bin.
pub fn bin_of(signed: isize, n: usize) -> usize {
    signed.rem_euclid(n as isize) as usize
}

/// Signed frequency index of the `pos`-th entry of a centered (fft-shifted) axis.
pub fn centered_index(pos: usize, n: usize) -> isize {
    pos as isize - (n / 2) as isize
}
