//! Boundary correspondences Psi(t) = F(e^{it}) from the circle onto a
//! Jordan curve, with the induced arclength parameter psi (Psi = g o psi).

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::curve::{CurveSpec, JordanCurve};
use crate::error::{Error, Result};
use crate::fft;
use crate::quad;
use crate::spline::PeriodicSpline;

/// Boundary map input specification (JSON external interface).
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum BoundaryMapSpec {
    /// Trigonometric polynomial sum of c e^{int}; coeffs are [n, re, im].
    Trig { coeffs: Vec<[f64; 3]> },
    Samples { values: Vec<[f64; 2]> },
    Composed {
        curve: CurveSpec,
        correspondence: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        psi: Option<Vec<f64>>,
    },
}

#[derive(Debug)]
pub struct BoundaryMap {
    values: Vec<Complex64>,
    derivative: Vec<Complex64>,
    coeffs: Vec<Complex64>,
    deriv_coeffs: Vec<Complex64>,
    target: JordanCurve,
    psi: Vec<f64>,
    psi_spline: PeriodicSpline,
    half_values: OnceLock<Vec<Complex64>>,
    half_psi: OnceLock<Vec<f64>>,
}

impl BoundaryMap {
    pub fn from_spec(spec: &BoundaryMapSpec, n: usize, curve_m: usize) -> Result<Self> {
        match spec {
            BoundaryMapSpec::Trig { coeffs } => {
                let cs: Vec<(i64, Complex64)> = coeffs
                    .iter()
                    .map(|c| (c[0].round() as i64, Complex64::new(c[1], c[2])))
                    .collect();
                Self::from_trig(&cs, n, curve_m)
            }
            BoundaryMapSpec::Samples { values } => {
                let vs: Vec<Complex64> =
                    values.iter().map(|v| Complex64::new(v[0], v[1])).collect();
                Self::from_samples(vs, curve_m)
            }
            BoundaryMapSpec::Composed {
                curve,
                correspondence,
                psi,
            } => {
                let target = JordanCurve::from_spec(curve, curve_m)?;
                match correspondence.as_str() {
                    "identity" => Self::from_composed_identity(target, n),
                    "sampled" => {
                        let table = psi.as_ref().ok_or_else(|| {
                            Error::InvalidInput(
                                "sampled correspondence needs a psi array".into(),
                            )
                        })?;
                        Self::from_composed_sampled(target, table)
                    }
                    other => Err(Error::InvalidInput(format!(
                        "unknown correspondence kind '{other}'"
                    ))),
                }
            }
        }
    }

    /// Boundary map from an explicit trigonometric polynomial.
    pub fn from_trig(coeffs: &[(i64, Complex64)], n: usize, curve_m: usize) -> Result<Self> {
        fft::require_power_of_two(n, 64)?;
        let max_freq = coeffs.iter().map(|(k, _)| k.unsigned_abs()).max().unwrap_or(0) as usize;
        if max_freq >= n / 2 {
            return Err(Error::InvalidInput(format!(
                "resolution {n} too small for frequency {max_freq}"
            )));
        }
        let h = 2.0 * PI / n as f64;
        let values: Vec<Complex64> = (0..n)
            .map(|j| {
                let t = h * j as f64;
                coeffs
                    .iter()
                    .map(|&(k, c)| c * Complex64::from_polar(1.0, k as f64 * t))
                    .sum()
            })
            .collect();
        let derivative: Vec<Complex64> = (0..n)
            .map(|j| {
                let t = h * j as f64;
                coeffs
                    .iter()
                    .map(|&(k, c)| {
                        c * Complex64::new(0.0, k as f64) * Complex64::from_polar(1.0, k as f64 * t)
                    })
                    .sum()
            })
            .collect();
        Self::assemble(values, derivative, None, curve_m)
    }

    /// Boundary map from uniform samples (spectral differentiation).
    pub fn from_samples(values: Vec<Complex64>, curve_m: usize) -> Result<Self> {
        fft::require_power_of_two(values.len(), 64)?;
        let derivative = fft::differentiate(&values);
        Self::assemble(values, derivative, None, curve_m)
    }

    /// Constant-speed traversal of an existing curve: Psi(t) = g(l t / 2pi).
    pub fn from_composed_identity(target: JordanCurve, n: usize) -> Result<Self> {
        fft::require_power_of_two(n, 64)?;
        let l = target.length();
        let scale = l / (2.0 * PI);
        let values: Vec<Complex64> = (0..n)
            .map(|j| target.point(l * j as f64 / n as f64))
            .collect();
        let derivative: Vec<Complex64> = (0..n)
            .map(|j| target.tangent(l * j as f64 / n as f64) * scale)
            .collect();
        let psi: Vec<f64> = (0..n).map(|j| l * j as f64 / n as f64).collect();
        Self::assemble(values, derivative, Some((target, psi)), 0)
    }

    /// Traversal of an existing curve along a sampled correspondence table.
    pub fn from_composed_sampled(target: JordanCurve, psi: &[f64]) -> Result<Self> {
        let n = psi.len();
        fft::require_power_of_two(n, 64)?;
        let l = target.length();
        for w in psi.windows(2) {
            if w[1] < w[0] {
                return Err(Error::Precondition(
                    "correspondence table must be nondecreasing".into(),
                ));
            }
        }
        if psi[0] < 0.0 || psi[n - 1] > l {
            return Err(Error::InvalidInput("psi values must lie in [0, l]".into()));
        }
        let values: Vec<Complex64> = psi.iter().map(|&s| target.point(s)).collect();
        let derivative = fft::differentiate(&values);
        Self::assemble(values, derivative, Some((target, psi.to_vec())), 0)
    }

    fn assemble(
        values: Vec<Complex64>,
        derivative: Vec<Complex64>,
        curve_and_psi: Option<(JordanCurve, Vec<f64>)>,
        curve_m: usize,
    ) -> Result<Self> {
        let n = values.len();
        let coeffs = fft::coefficients(&values);
        let deriv_coeffs = fft::coefficients(&derivative);

        // orientation: signed area of the trace must be positive
        let h = 2.0 * PI / n as f64;
        let area = values
            .iter()
            .zip(&derivative)
            .map(|(v, d)| (v.conj() * d).im)
            .sum::<f64>()
            * h
            * 0.5;
        if area <= 0.0 {
            return Err(Error::Precondition(
                "boundary map must be orientation preserving (positive enclosed area)".into(),
            ));
        }

        let (target, psi) = match curve_and_psi {
            Some(pair) => pair,
            None => {
                // target curve from the trace, arclength from |Psi'|
                let sig = significant_coeffs(&coeffs, n);
                let sig_d: Vec<(i64, Complex64)> = sig
                    .iter()
                    .map(|&(k, c)| (k, c * Complex64::new(0.0, k as f64)))
                    .collect();
                let gamma = {
                    let sig = sig.clone();
                    move |t: f64| eval_freq_sum(&sig, t)
                };
                let dgamma = {
                    let sig_d = sig_d.clone();
                    move |t: f64| eval_freq_sum(&sig_d, t)
                };
                let target = JordanCurve::from_parametric(gamma, dgamma, curve_m)?;
                let speed = move |t: f64| eval_freq_sum(&sig_d, t).norm();
                let cum = quad::cumulative_gauss8(&speed, 0.0, 2.0 * PI, n);
                let l_trace = cum[n];
                if (l_trace - target.length()).abs() > 1e-4 * target.length() {
                    return Err(Error::Precondition(format!(
                        "trace arclength {l_trace} disagrees with curve length {}",
                        target.length()
                    )));
                }
                // rescale the tiny quadrature drift so psi(2pi) = l exactly
                let scale = target.length() / l_trace;
                let psi: Vec<f64> = (0..n).map(|j| cum[j] * scale).collect();
                (target, psi)
            }
        };

        // values must sit on the target within projection tolerance
        let tol = 1e-3 * target.length();
        for j in (0..n).step_by((n / 32).max(1)) {
            if target.distance_to(values[j]) > tol {
                return Err(Error::Precondition(format!(
                    "boundary value {j} is off the target curve"
                )));
            }
        }

        // periodic part of psi for off-grid evaluation
        let l = target.length();
        let periodic: Vec<Complex64> = psi
            .iter()
            .enumerate()
            .map(|(j, &s)| Complex64::new(s - l * j as f64 / n as f64, 0.0))
            .collect();
        let psi_spline = PeriodicSpline::new(fft_smooth_real(&periodic), 2.0 * PI);

        Ok(Self {
            values,
            derivative,
            coeffs,
            deriv_coeffs,
            target,
            psi,
            psi_spline,
            half_values: OnceLock::new(),
            half_psi: OnceLock::new(),
        })
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn derivative(&self) -> &[Complex64] {
        &self.derivative
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn target(&self) -> &JordanCurve {
        &self.target
    }

    pub fn psi(&self) -> &[f64] {
        &self.psi
    }

    /// Psi at an arbitrary angle (trigonometric interpolant).
    pub fn eval(&self, t: f64) -> Complex64 {
        fft::eval_trig(&self.coeffs, t)
    }

    /// Psi' at an arbitrary angle.
    pub fn eval_derivative(&self, t: f64) -> Complex64 {
        fft::eval_trig(&self.deriv_coeffs, t)
    }

    /// psi at an arbitrary angle; satisfies psi(t + 2pi) = psi(t) + l.
    pub fn psi_at(&self, t: f64) -> f64 {
        let l = self.target.length();
        self.psi_spline.eval(t).re + l * t / (2.0 * PI)
    }

    /// Invert the correspondence: the angle t in [0, 2pi) with psi(t) = s.
    pub fn psi_inverse(&self, s: f64) -> Result<f64> {
        let l = self.target.length();
        if !(0.0..=l).contains(&s) {
            return Err(Error::InvalidInput(format!("arclength {s} outside [0, {l}]")));
        }
        let n = self.n();
        // bracket on the sample table (psi is nondecreasing)
        let mut lo = match self.psi.binary_search_by(|v| v.partial_cmp(&s).unwrap()) {
            Ok(i) => return Ok(2.0 * PI * i as f64 / n as f64),
            Err(i) => i.saturating_sub(1),
        };
        if lo >= n - 1 {
            lo = n - 1;
        }
        let h = 2.0 * PI / n as f64;
        let (mut a, mut b) = (h * lo as f64, h * (lo as f64 + 1.0));
        for _ in 0..60 {
            let mid = 0.5 * (a + b);
            if self.psi_at(mid) < s {
                a = mid;
            } else {
                b = mid;
            }
        }
        Ok(0.5 * (a + b))
    }

    /// Psi sampled on the half-shifted grid t = (j + 1/2) h.
    pub fn half_grid_values(&self) -> &[Complex64] {
        self.half_values.get_or_init(|| {
            let h = 2.0 * PI / self.n() as f64;
            fft::shifted_samples(&self.values, h / 2.0)
        })
    }

    /// psi sampled on the half-shifted grid.
    pub fn half_grid_psi(&self) -> &[f64] {
        self.half_psi.get_or_init(|| {
            let n = self.n();
            let h = 2.0 * PI / n as f64;
            (0..n).map(|j| self.psi_at(h * (j as f64 + 0.5))).collect()
        })
    }

    /// Max |Psi'| over the sample grid (the Lipschitz scale of F).
    pub fn max_derivative(&self) -> f64 {
        self.derivative.iter().map(|d| d.norm()).fold(0.0, f64::max)
    }

    /// Relative spectral energy in the top octave of frequencies.
    pub fn tail_energy(&self) -> f64 {
        let n = self.n();
        let total: f64 = self.coeffs.iter().map(|c| c.norm_sqr()).sum();
        if total == 0.0 {
            return 0.0;
        }
        let tail: f64 = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(k, _)| fft::frequency(*k, n).unsigned_abs() as usize > n / 4)
            .map(|(_, c)| c.norm_sqr())
            .sum();
        tail / total
    }
}

fn eval_freq_sum(terms: &[(i64, Complex64)], t: f64) -> Complex64 {
    terms
        .iter()
        .map(|&(k, c)| c * Complex64::from_polar(1.0, k as f64 * t))
        .sum()
}

fn significant_coeffs(coeffs: &[Complex64], n: usize) -> Vec<(i64, Complex64)> {
    let max = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let floor = 1e-13 * max;
    coeffs
        .iter()
        .enumerate()
        .filter(|(k, c)| c.norm() > floor && *k != n / 2)
        .map(|(k, c)| (fft::frequency(k, n), *c))
        .collect()
}

/// Drop rounding-level spectral bins of a real periodic table (keeps the
/// psi spline from chasing noise).
fn fft_smooth_real(values: &[Complex64]) -> Vec<Complex64> {
    let mut c = fft::coefficients(values);
    let max = c.iter().map(|x| x.norm()).fold(0.0, f64::max);
    for x in &mut c {
        if x.norm() < 1e-14 * max {
            *x = Complex64::new(0.0, 0.0);
        }
    }
    fft::samples(&c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn affine(a: f64, n: usize) -> BoundaryMap {
        BoundaryMap::from_trig(
            &[(1, Complex64::new(1.0, 0.0)), (-1, Complex64::new(a, 0.0))],
            n,
            512,
        )
        .unwrap()
    }

    #[test]
    fn identity_circle_map() {
        let m = BoundaryMap::from_trig(&[(1, Complex64::new(1.0, 0.0))], 128, 256).unwrap();
        assert!((m.target().length() - 2.0 * PI).abs() < 1e-9);
        for (j, &s) in m.psi().iter().enumerate() {
            let t = 2.0 * PI * j as f64 / 128.0;
            assert!((s - t).abs() < 1e-9, "psi should be identity");
        }
        assert!((m.psi_at(1.234) - 1.234).abs() < 1e-9);
        assert!((m.eval(0.7) - Complex64::from_polar(1.0, 0.7)).norm() < 1e-12);
        assert!((m.psi_inverse(3.0).unwrap() - 3.0).abs() < 1e-9);
    }

    #[test]
    fn affine_map_correspondence() {
        let m = affine(0.5, 256);
        // image is the ellipse with semiaxes 1.5 and 0.5
        assert!((m.target().enclosed_area() - PI * 1.5 * 0.5).abs() < 1e-6);
        // |Psi'(t)| = psi'(t): check against finite differences of psi
        let h = 2.0 * PI / 256.0;
        for j in [0usize, 40, 127, 200] {
            let t = h * j as f64;
            let fd = (m.psi_at(t + 1e-5) - m.psi_at(t - 1e-5)) / 2e-5;
            assert!(
                (fd - m.derivative()[j].norm()).abs() < 1e-4,
                "chain rule at j={j}"
            );
        }
        // psi(2pi) - psi(0) = l
        assert!((m.psi_at(2.0 * PI) - m.psi_at(0.0) - m.target().length()).abs() < 1e-8);
    }

    #[test]
    fn orientation_reversal_rejected() {
        let r = BoundaryMap::from_trig(&[(-1, Complex64::new(1.0, 0.0))], 64, 128);
        assert!(matches!(r, Err(Error::Precondition(_))));
    }

    #[test]
    fn non_power_of_two_rejected() {
        let vs = vec![Complex64::new(1.0, 0.0); 100];
        assert!(BoundaryMap::from_samples(vs, 128).is_err());
    }

    #[test]
    fn composed_identity_matches_curve() {
        let curve = JordanCurve::from_spec(&CurveSpec::Ellipse { a: 2.0, b: 1.0 }, 512).unwrap();
        let l = curve.length();
        let m = BoundaryMap::from_composed_identity(curve, 128).unwrap();
        for (j, &s) in m.psi().iter().enumerate() {
            assert!((s - l * j as f64 / 128.0).abs() < 1e-12);
        }
        // constant speed
        for d in m.derivative() {
            assert!((d.norm() - l / (2.0 * PI)).abs() < 1e-6);
        }
    }

    #[test]
    fn half_grid_shift_is_spectral() {
        let m = affine(0.25, 128);
        let h = 2.0 * PI / 128.0;
        let half = m.half_grid_values();
        for j in [0usize, 17, 90] {
            let t = h * (j as f64 + 0.5);
            let direct = Complex64::from_polar(1.0, t) + 0.25 * Complex64::from_polar(1.0, -t);
            assert!((half[j] - direct).norm() < 1e-12);
        }
    }
}
