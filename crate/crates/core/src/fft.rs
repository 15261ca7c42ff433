//! Thin FFT layer: normalized transforms and spectral utilities on
//! power-of-two sample grids.
//!
//! Conventions: samples x_j = f(2\pi j/N); coefficients c_n with
//! f(t) = sum_n c_n e^{int}, n running over -N/2..N/2-1 (index n mod N).

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};

pub fn is_power_of_two(n: usize) -> bool {
    n != 0 && n & (n - 1) == 0
}

pub fn require_power_of_two(n: usize, min: usize) -> Result<()> {
    if !is_power_of_two(n) || n < min {
        return Err(Error::InvalidInput(format!(
            "sample count must be a power of two >= {min}, got {n}"
        )));
    }
    Ok(())
}

/// Forward transform with 1/N normalization: returns c with
/// c[k] = (1/N) sum_j x_j e^{-2\pi i jk/N}.
pub fn coefficients(samples: &[Complex64]) -> Vec<Complex64> {
    let n = samples.len();
    let mut buf = samples.to_vec();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let scale = 1.0 / n as f64;
    for c in &mut buf {
        *c *= scale;
    }
    buf
}

/// Inverse of [`coefficients`]: samples from spectrum.
pub fn samples(coeffs: &[Complex64]) -> Vec<Complex64> {
    let n = coeffs.len();
    let mut buf = coeffs.to_vec();
    FftPlanner::new().plan_fft_inverse(n).process(&mut buf);
    buf
}

/// Signed frequency of FFT bin `k` for length `n` (bin n/2 counts as -n/2).
pub fn frequency(k: usize, n: usize) -> i64 {
    if k < n / 2 || n == 1 {
        k as i64
    } else {
        k as i64 - n as i64
    }
}

/// Spectral differentiation d/dt on the sample grid. The Nyquist bin is
/// zeroed (its sign is ambiguous for odd derivatives).
pub fn differentiate(samples_in: &[Complex64]) -> Vec<Complex64> {
    let n = samples_in.len();
    let mut c = coefficients(samples_in);
    for (k, ck) in c.iter_mut().enumerate() {
        if k == n / 2 {
            *ck = Complex64::new(0.0, 0.0);
        } else {
            *ck *= Complex64::new(0.0, frequency(k, n) as f64);
        }
    }
    samples(&c)
}

/// Resample onto the grid shifted by `shift` radians: returns f(t_j + shift).
pub fn shifted_samples(samples_in: &[Complex64], shift: f64) -> Vec<Complex64> {
    let n = samples_in.len();
    let mut c = coefficients(samples_in);
    for (k, ck) in c.iter_mut().enumerate() {
        let freq = frequency(k, n) as f64;
        *ck *= Complex64::from_polar(1.0, freq * shift);
    }
    samples(&c)
}

/// Evaluate the trigonometric interpolant sum_n c_n e^{int} at angle `t`.
pub fn eval_trig(coeffs: &[Complex64], t: f64) -> Complex64 {
    let n = coeffs.len();
    let mut acc = Complex64::new(0.0, 0.0);
    for (k, &ck) in coeffs.iter().enumerate() {
        let freq = frequency(k, n) as f64;
        acc += ck * Complex64::from_polar(1.0, freq * t);
    }
    acc
}
