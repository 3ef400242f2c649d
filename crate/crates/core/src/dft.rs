//! Direct (O(N²)) discrete Fourier transform for arbitrary lengths.
//!
//! Filter lengths here are odd and small (tens to low hundreds of taps), so a
//! twiddle table indexed by `(k·n) mod N` is both fast enough and more
//! accurate than a mixed-radix FFT.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

fn twiddles(n: usize, sign: f64) -> Vec<Complex64> {
    (0..n)
        .map(|k| {
            let theta = sign * 2.0 * PI * k as f64 / n as f64;
            Complex64::new(libm::cos(theta), libm::sin(theta))
        })
        .collect()
}

fn transform(input: &[Complex64], sign: f64) -> Vec<Complex64> {
    let n = input.len();
    let tw = twiddles(n, sign);
    (0..n)
        .map(|k| {
            input
                .iter()
                .enumerate()
                .map(|(j, x)| x * tw[(k * j) % n])
                .sum()
        })
        .collect()
}

/// `X[k] = Σ x[n] e^{-i2πkn/N}`.
pub fn dft(input: &[Complex64]) -> Vec<Complex64> {
    transform(input, -1.0)
}

/// `x[n] = (1/N) Σ X[k] e^{+i2πkn/N}`.
pub fn idft(input: &[Complex64]) -> Vec<Complex64> {
    let scale = 1.0 / input.len().max(1) as f64;
    transform(input, 1.0)
        .into_iter()
        .map(|x| x * scale)
        .collect()
}

/// Forward DFT of a real sequence.
pub fn dft_real(input: &[f64]) -> Vec<Complex64> {
    let c: Vec<Complex64> = input.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    dft(&c)
}
