//! Circle Hilbert transform (conjugate function).
//!
//! Two routes: the principal-value integral
//!   H(chi)(tau) = -(1/pi) Int_0^pi [chi(tau+t) - chi(tau-t)] / (2 tan(t/2)) dt
//! by a midpoint rule whose nodes sit at odd multiples of the grid step
//! (offset half a step from the singularity), and the frequency multiplier
//! c_n -> -i sgn(n) c_n. Sign convention fixed by the PV formula:
//! H(cos) = sin.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::fft;
use crate::modulus::{self, ModulusOfContinuity};
use crate::quad;

/// Uniform samples of a 2pi-periodic function.
#[derive(Debug, Clone)]
pub struct CircleFunction {
    samples: Vec<Complex64>,
}

impl CircleFunction {
    pub fn new(samples: Vec<Complex64>) -> Result<Self> {
        fft::require_power_of_two(samples.len(), 2)?;
        Ok(Self { samples })
    }

    pub fn from_fn<F: Fn(f64) -> Complex64>(n: usize, f: F) -> Result<Self> {
        fft::require_power_of_two(n, 2)?;
        let samples = (0..n)
            .map(|j| f(2.0 * PI * j as f64 / n as f64))
            .collect();
        Ok(Self { samples })
    }

    pub fn n(&self) -> usize {
        self.samples.len()
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn mean(&self) -> Complex64 {
        self.samples.iter().sum::<Complex64>() / self.n() as f64
    }

    pub fn max_abs(&self) -> f64 {
        self.samples.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn max_deviation(&self, other: &CircleFunction) -> f64 {
        self.samples
            .iter()
            .zip(&other.samples)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// PV-quadrature Hilbert transform with a truncation-error estimate.
#[derive(Debug, Clone)]
pub struct PvTransform {
    pub values: CircleFunction,
    /// Composite-midpoint error estimate from second differences of the
    /// integrand (conservative; the rule is exact on resolved trig data).
    pub error_estimate: f64,
}

/// Principal-value route, Eq.-(1.4)-style quadrature.
pub fn hilbert_pv(f: &CircleFunction) -> Result<PvTransform> {
    let n = f.n();
    if n < 128 {
        return Err(Error::InvalidInput(format!(
            "PV transform needs N >= 128, got {n}"
        )));
    }
    let h = 2.0 * PI / n as f64;
    let x = &f.samples;

    // weights for nodes t = m h, m odd, panel width 2h
    let m_count = n / 4;
    let weights: Vec<f64> = (0..m_count)
        .map(|i| {
            let m = (2 * i + 1) as f64;
            (2.0 * h) / (2.0 * (m * h / 2.0).tan()) / PI
        })
        .collect();

    let mut out = Vec::with_capacity(n);
    let mut err: f64 = 0.0;
    let mut integrand = vec![Complex64::new(0.0, 0.0); m_count];
    for j in 0..n {
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, w) in weights.iter().enumerate() {
            let m = 2 * i + 1;
            let diff = x[(j + m) % n] - x[(j + n - m % n) % n];
            integrand[i] = diff * *w;
            acc += integrand[i];
        }
        out.push(-acc);
        // second differences over the odd-node sequence (spacing 2h)
        let mut e = 0.0;
        for i in 1..m_count.saturating_sub(1) {
            e += (integrand[i + 1] - 2.0 * integrand[i] + integrand[i - 1]).norm();
        }
        err = err.max(e / 12.0);
    }
    Ok(PvTransform {
        values: CircleFunction { samples: out },
        error_estimate: err,
    })
}

/// Multiplier route: c_n -> -i sgn(n) c_n; the n = 0 and Nyquist bins are
/// zeroed, so the conjugate function vanishes at the disk center.
pub fn hilbert_spectral(f: &CircleFunction) -> Result<CircleFunction> {
    let n = f.n();
    let mut c = fft::coefficients(&f.samples);
    for (k, ck) in c.iter_mut().enumerate() {
        if k == 0 || k == n / 2 {
            *ck = Complex64::new(0.0, 0.0);
        } else {
            let s = if fft::frequency(k, n) > 0 { 1.0 } else { -1.0 };
            *ck *= Complex64::new(0.0, -s);
        }
    }
    Ok(CircleFunction {
        samples: fft::samples(&c),
    })
}

/// Max deviation between P[H(chi)] and the harmonic conjugate of P[chi]
/// over the interior grid r in {0.3, 0.6, 0.9} x 64 angles. The conjugate
/// is normalized to vanish at the origin; H(chi) is taken by the PV route,
/// so the check closes the loop between the two routes and the extension.
pub fn conjugate_identity_check(f: &CircleFunction) -> Result<f64> {
    let n = f.n();
    let tilde = hilbert_pv(f)?.values;
    let c = fft::coefficients(&f.samples);
    let c_tilde = fft::coefficients(&tilde.samples);

    let mut worst: f64 = 0.0;
    for &r in &[0.3, 0.6, 0.9] {
        for k in 0..64 {
            let z = Complex64::from_polar(r, 2.0 * PI * k as f64 / 64.0);
            let lhs = extend(&c_tilde, n, z);
            let rhs = conjugate_of_extension(&c, n, z);
            worst = worst.max((lhs - rhs).norm());
        }
    }
    Ok(worst)
}

/// P[chi](z) from the FFT coefficients of chi.
fn extend(c: &[Complex64], n: usize, z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for (k, &ck) in c.iter().enumerate() {
        if k == n / 2 {
            continue;
        }
        let freq = fft::frequency(k, n);
        let zp = if freq >= 0 {
            z.powu(freq as u32)
        } else {
            z.conj().powu((-freq) as u32)
        };
        acc += ck * zp;
    }
    acc
}

/// Harmonic conjugate of P[chi], vanishing at 0:
/// -i (sum_{n>=1} c_n z^n) + i conj(sum_{n>=1} conj(c_{-n}) z^n).
fn conjugate_of_extension(c: &[Complex64], n: usize, z: Complex64) -> Complex64 {
    let mut pos = Complex64::new(0.0, 0.0);
    let mut neg = Complex64::new(0.0, 0.0);
    for (k, &ck) in c.iter().enumerate() {
        if k == n / 2 {
            continue;
        }
        let freq = fft::frequency(k, n);
        if freq > 0 {
            pos += ck * z.powu(freq as u32);
        } else if freq < 0 {
            neg += ck.conj() * z.powu((-freq) as u32);
        }
    }
    Complex64::new(0.0, -1.0) * pos + (Complex64::new(0.0, -1.0) * neg).conj()
}

/// Fitted constants of the Privalov-type smoothness transfer
/// |H(chi)(x+h) - H(chi)(x)| <= A Int_0^{2h} w/t dt + B h Int_h^{2pi} w/t^2 dt + C w(h).
#[derive(Debug, Clone, Copy)]
pub struct PrivalovReport {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub pass: bool,
    /// Largest left-hand side seen on the dyadic h grid.
    pub lhs_max: f64,
}

/// Fit the smallest equal triple (A, B, C) = (c, c, c) making the bound
/// hold over a dyadic h grid; the modulus precondition on `derivative` is
/// verified first.
pub fn privalov_report(
    derivative: &CircleFunction,
    omega: &ModulusOfContinuity,
) -> Result<PrivalovReport> {
    let n = derivative.n();
    // precondition: the sampled modulus must sit below omega
    let scales = modulus::dyadic_scales(2.0 * PI, (n.trailing_zeros() as usize).min(11));
    let emp = modulus::modulus_of_continuity(&derivative.samples, 2.0 * PI, &scales)?;
    for &t in &scales {
        if emp.eval(t) > omega.eval(t) * (1.0 + 1e-9) + 1e-12 {
            return Err(Error::Precondition(format!(
                "sampled modulus {} exceeds omega {} at t = {t}",
                emp.eval(t),
                omega.eval(t)
            )));
        }
    }

    let transformed = hilbert_pv(derivative)?.values;
    let levels = (n.trailing_zeros() as usize - 1).min(10);
    let mut ratio_max: f64 = 0.0;
    let mut lhs_max: f64 = 0.0;
    for j in 1..=levels {
        let lag = n >> (j + 1); // h = pi 2^{-j} in samples
        if lag == 0 {
            break;
        }
        let h = PI * (0.5f64).powi(j as i32 - 1) / 2.0;
        let mut lhs: f64 = 0.0;
        for x in 0..n {
            lhs = lhs.max((transformed.samples[(x + lag) % n] - transformed.samples[x]).norm());
        }
        lhs_max = lhs_max.max(lhs);
        let t1 = omega.dini_integral(2.0 * h)?.value;
        let t2 = integral_omega_over_t2(omega, h);
        let denom = t1 + h * t2 + omega.eval(h);
        if denom > 0.0 {
            ratio_max = ratio_max.max(lhs / denom);
        } else if lhs > 0.0 {
            ratio_max = f64::INFINITY;
        }
    }
    Ok(PrivalovReport {
        a: ratio_max,
        b: ratio_max,
        c: ratio_max,
        pass: ratio_max.is_finite(),
        lhs_max,
    })
}

/// Int_h^{2pi} omega(t)/t^2 dt over octave panels.
fn integral_omega_over_t2(omega: &ModulusOfContinuity, h: f64) -> f64 {
    let mut acc = 0.0;
    let mut lo = h;
    while lo < 2.0 * PI {
        let hi = (2.0 * lo).min(2.0 * PI);
        acc += quad::gauss8_panels(&|t| omega.eval(t) / (t * t), lo, hi, 4);
        lo = hi;
    }
    acc
}
