//! Harmonic extensions f = P[F] of boundary correspondences, held as the
//! spectra of the analytic pair f = g + conj(h).
//!
//! The coefficient representation is primary; direct Poisson quadrature is
//! kept as an independent evaluator for cross-checks.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::boundary::BoundaryMap;
use crate::error::{Error, Result};
use crate::fft;

#[derive(Debug)]
pub struct HarmonicMap {
    /// a_n, n = 0 .. N/2-1, of g(z) = sum a_n z^n.
    analytic: Vec<Complex64>,
    /// b_n, n = 1 .. N/2-1 (index k holds b_{k+1}), of h(z) = sum b_n z^n.
    coanalytic: Vec<Complex64>,
    boundary: BoundaryMap,
    tail_energy: f64,
}

/// Radial and tangential derivatives at z = r e^{it}.
#[derive(Debug, Clone, Copy)]
pub struct RadialTangential {
    pub radial: Complex64,
    pub tangential: Complex64,
    /// Set when r = 0: the radial derivative is the directional limit for
    /// the supplied angle.
    pub at_origin: bool,
}

/// Direct Poisson-integral evaluation with its quadrature error bound.
#[derive(Debug, Clone, Copy)]
pub struct PoissonEvaluation {
    pub value: Complex64,
    pub error_bound: f64,
    /// True when the point is too close to the boundary for the requested
    /// tolerance at this resolution.
    pub warning: bool,
}

/// Split the boundary spectrum into the analytic pair (the harmonic
/// extension). The ambiguous Nyquist bin is excluded and reported as tail
/// energy.
pub fn analyze(boundary: BoundaryMap) -> Result<HarmonicMap> {
    let n = boundary.n();
    fft::require_power_of_two(n, 64)?;
    let c = boundary.coefficients();
    let analytic: Vec<Complex64> = (0..n / 2).map(|k| c[k]).collect();
    let coanalytic: Vec<Complex64> = (1..n / 2).map(|k| c[n - k].conj()).collect();
    let tail_energy = boundary.tail_energy();
    Ok(HarmonicMap {
        analytic,
        coanalytic,
        boundary,
        tail_energy,
    })
}

impl HarmonicMap {
    pub fn boundary(&self) -> &BoundaryMap {
        &self.boundary
    }

    pub fn analytic_coefficients(&self) -> &[Complex64] {
        &self.analytic
    }

    /// Coefficient b_n for n >= 1.
    pub fn coanalytic_coefficient(&self, n: usize) -> Complex64 {
        if n >= 1 && n - 1 < self.coanalytic.len() {
            self.coanalytic[n - 1]
        } else {
            Complex64::new(0.0, 0.0)
        }
    }

    pub fn coanalytic_coefficients(&self) -> &[Complex64] {
        &self.coanalytic
    }

    /// Relative spectral energy in the unresolved top octave plus the
    /// dropped Nyquist bin.
    pub fn tail_energy(&self) -> f64 {
        self.tail_energy
    }

    fn check_in_disk(z: Complex64) -> Result<()> {
        if z.norm() > 1.0 + 1e-12 {
            return Err(Error::Domain(format!("|z| = {} exceeds 1", z.norm())));
        }
        Ok(())
    }

    /// f(z) = g(z) + conj(h(z)). On |z| = 1 this is the boundary
    /// trigonometric sum.
    pub fn evaluate(&self, z: Complex64) -> Result<Complex64> {
        Self::check_in_disk(z)?;
        Ok(horner(&self.analytic, z) + horner_from_1(&self.coanalytic, z).conj())
    }

    /// Wirtinger derivatives (f_z, f_zbar) = (g'(z), conj(h'(z))).
    pub fn wirtinger(&self, z: Complex64) -> Result<(Complex64, Complex64)> {
        Self::check_in_disk(z)?;
        let gp = horner_derivative(&self.analytic, z);
        let hp = horner_derivative_from_1(&self.coanalytic, z);
        Ok((gp, hp.conj()))
    }

    /// g'(z) and h'(z) without conjugation.
    pub fn analytic_derivatives(&self, z: Complex64) -> Result<(Complex64, Complex64)> {
        Self::check_in_disk(z)?;
        Ok((
            horner_derivative(&self.analytic, z),
            horner_derivative_from_1(&self.coanalytic, z),
        ))
    }

    /// Radial and tangential derivatives at z = r e^{it}:
    /// d_r f = e^{it} g' + conj(e^{it} h'), d_t f = i(z g' - conj(z h')).
    /// r d_r f is the harmonic conjugate of d_t f.
    pub fn radial_tangential(&self, r: f64, t: f64) -> Result<RadialTangential> {
        if !(0.0..=1.0 + 1e-12).contains(&r) {
            return Err(Error::Domain(format!("radius {r} outside [0, 1]")));
        }
        let z = Complex64::from_polar(r, t);
        let (gp, hp) = self.analytic_derivatives(z)?;
        let eit = Complex64::from_polar(1.0, t);
        let radial = eit * gp + (eit * hp).conj();
        let tangential = Complex64::new(0.0, 1.0) * (z * gp - (z * hp).conj());
        Ok(RadialTangential {
            radial,
            tangential,
            at_origin: r == 0.0,
        })
    }

    /// Parseval defect: |sum of squared coefficient moduli - mean squared
    /// boundary values|.
    pub fn parseval_defect(&self) -> f64 {
        let coeff_energy: f64 = self.analytic.iter().map(|c| c.norm_sqr()).sum::<f64>()
            + self.coanalytic.iter().map(|c| c.norm_sqr()).sum::<f64>();
        let mean_sq: f64 = self
            .boundary
            .values()
            .iter()
            .map(|v| v.norm_sqr())
            .sum::<f64>()
            / self.boundary.n() as f64;
        // the dropped Nyquist bin is part of the discrete energy
        let nyq = self.boundary.coefficients()[self.boundary.n() / 2].norm_sqr();
        (coeff_energy + nyq - mean_sq).abs()
    }
}

/// Trapezoid quadrature of the Poisson integral against the sampled
/// boundary data; independent of the spectral evaluator.
pub fn poisson_quadrature(
    boundary: &BoundaryMap,
    z: Complex64,
    requested_tol: f64,
) -> Result<PoissonEvaluation> {
    let r = z.norm();
    if r > 1.0 - 1e-12 {
        return Err(Error::Domain(format!(
            "Poisson quadrature needs |z| < 1, got {r}"
        )));
    }
    let n = boundary.n();
    let phi = z.arg();
    let h = 2.0 * PI / n as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for (j, v) in boundary.values().iter().enumerate() {
        let x = h * j as f64;
        let p = (1.0 - r * r) / (2.0 * PI * (1.0 - 2.0 * r * (x - phi).cos() + r * r));
        acc += p * v;
    }
    let value = acc * h;

    // aliasing bound: 2 S r^{N-d} / (1 - r^N), S = sum |Psi_hat|,
    // d = highest significant frequency
    let coeffs = boundary.coefficients();
    let s: f64 = coeffs.iter().map(|c| c.norm()).sum();
    let max_c = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let d = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| c.norm() > 1e-13 * max_c)
        .map(|(k, _)| fft::frequency(k, n).unsigned_abs() as usize)
        .max()
        .unwrap_or(0);
    let error_bound = if d >= n {
        f64::INFINITY
    } else {
        2.0 * s * r.powi((n - d) as i32) / (1.0 - r.powi(n as i32)).max(1e-300)
    };
    let margin = 10.0 / n as f64;
    let warning = error_bound > requested_tol || r > 1.0 - margin;
    Ok(PoissonEvaluation {
        value,
        error_bound,
        warning,
    })
}

fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        acc = acc * z + c;
    }
    acc
}

/// sum_{n>=1} coeffs[n-1] z^n.
fn horner_from_1(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    horner(coeffs, z) * z
}

fn horner_derivative(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for (n, &c) in coeffs.iter().enumerate().skip(1).rev() {
        acc = acc * z + c * n as f64;
    }
    acc
}

/// d/dz of sum_{n>=1} coeffs[n-1] z^n.
fn horner_derivative_from_1(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for (k, &c) in coeffs.iter().enumerate().rev() {
        acc = acc * z + c * (k + 1) as f64;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trig_map(coeffs: &[(i64, Complex64)], n: usize) -> HarmonicMap {
        analyze(BoundaryMap::from_trig(coeffs, n, 256).unwrap()).unwrap()
    }

    #[test]
    fn identity_split() {
        let m = trig_map(&[(1, Complex64::new(1.0, 0.0))], 128);
        assert!((m.analytic[1] - Complex64::new(1.0, 0.0)).norm() < 1e-13);
        let others: f64 = m
            .analytic
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != 1)
            .map(|(_, c)| c.norm())
            .sum::<f64>()
            + m.coanalytic.iter().map(|c| c.norm()).sum::<f64>();
        assert!(others < 1e-12);
    }

    #[test]
    fn affine_and_quadratic_split() {
        let m = trig_map(
            &[(1, Complex64::new(1.0, 0.0)), (-1, Complex64::new(0.5, 0.0))],
            128,
        );
        assert!((m.coanalytic_coefficient(1) - Complex64::new(0.5, 0.0)).norm() < 1e-13);
        let m = trig_map(
            &[(1, Complex64::new(1.0, 0.0)), (-2, Complex64::new(0.25, 0.0))],
            128,
        );
        assert!((m.coanalytic_coefficient(2) - Complex64::new(0.25, 0.0)).norm() < 1e-13);
        assert!(m.coanalytic_coefficient(1).norm() < 1e-13);
    }

    #[test]
    fn evaluate_monomial_and_affine() {
        // P[e^{3it}](0.5) = 0.5^3 on top of the identity part
        let m = trig_map(
            &[(1, Complex64::new(1.0, 0.0)), (3, Complex64::new(0.1, 0.0))],
            128,
        );
        let z = Complex64::new(0.5, 0.0);
        let v = m.evaluate(z).unwrap();
        assert!((v - (z + 0.1 * z.powu(3))).norm() < 1e-13);

        let m = trig_map(
            &[(1, Complex64::new(1.0, 0.0)), (-1, Complex64::new(0.5, 0.0))],
            128,
        );
        let z = Complex64::new(0.3, 0.4);
        assert!((m.evaluate(z).unwrap() - (z + 0.5 * z.conj())).norm() < 1e-13);
        let (fz, fzb) = m.wirtinger(z).unwrap();
        assert!((fz - Complex64::new(1.0, 0.0)).norm() < 1e-13);
        assert!((fzb - Complex64::new(0.5, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn domain_error_outside_disk() {
        let m = trig_map(&[(1, Complex64::new(1.0, 0.0))], 64);
        assert!(matches!(
            m.evaluate(Complex64::new(1.2, 0.0)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn radial_tangential_identity_and_mixed() {
        // f(z) = z at z = 0.5 (t = 0): d_r = 1, d_t = 0.5 i
        let m = trig_map(&[(1, Complex64::new(1.0, 0.0))], 64);
        let rt = m.radial_tangential(0.5, 0.0).unwrap();
        assert!((rt.radial - Complex64::new(1.0, 0.0)).norm() < 1e-13);
        assert!((rt.tangential - Complex64::new(0.0, 0.5)).norm() < 1e-13);

        let m = trig_map(
            &[(1, Complex64::new(1.0, 0.0)), (-1, Complex64::new(0.5, 0.0))],
            64,
        );
        let rt = m.radial_tangential(0.5, 0.0).unwrap();
        // d_r (z + 0.5 conj z) at t=0: 1 + 0.5 = 1.5
        assert!((rt.radial - Complex64::new(1.5, 0.0)).norm() < 1e-13);
        // d_t: i(z - conj(0.5 z)) = i(0.5 - 0.25) = 0.25 i
        assert!((rt.tangential - Complex64::new(0.0, 0.25)).norm() < 1e-13);
        let rt0 = m.radial_tangential(0.0, 0.3).unwrap();
        assert!(rt0.at_origin);
    }

    #[test]
    fn poisson_mean_value() {
        let curve =
            crate::curve::JordanCurve::from_spec(&crate::curve::CurveSpec::Circle { r: 1.0 }, 128)
                .unwrap();
        let b = BoundaryMap::from_composed_identity(curve, 256).unwrap();
        // mean value at the origin equals c_0 = 0 for the identity map
        let p = poisson_quadrature(&b, Complex64::new(0.0, 0.0), 1e-10).unwrap();
        assert!(p.value.norm() < 1e-12);
        assert!(!p.warning);
    }

    #[test]
    fn poisson_matches_spectral_evaluator() {
        let m = trig_map(
            &[(1, Complex64::new(1.0, 0.0)), (-1, Complex64::new(0.5, 0.0))],
            1024,
        );
        let z = Complex64::new(0.5, 0.0);
        let p = poisson_quadrature(m.boundary(), z, 1e-8).unwrap();
        let s = m.evaluate(z).unwrap();
        assert!((p.value - s).norm() < 1e-8, "dev {}", (p.value - s).norm());
        assert!(p.error_bound < 1e-8);
    }

    #[test]
    fn poisson_warning_near_boundary() {
        let m = trig_map(&[(1, Complex64::new(1.0, 0.0))], 64);
        let p = poisson_quadrature(m.boundary(), Complex64::new(0.95, 0.0), 1e-12).unwrap();
        assert!(p.warning);
        assert!(p.error_bound.is_finite());
    }

    #[test]
    fn boundary_values_reproduced_at_radius_one() {
        let m = trig_map(
            &[
                (1, Complex64::new(1.0, 0.0)),
                (-2, Complex64::new(0.2, 0.1)),
                (4, Complex64::new(0.05, 0.0)),
            ],
            256,
        );
        for (j, v) in m.boundary().values().iter().enumerate() {
            let t = 2.0 * PI * j as f64 / 256.0;
            let got = m.evaluate(Complex64::from_polar(1.0, t)).unwrap();
            assert!((got - v).norm() < 1e-12, "boundary sample {j}");
        }
    }

    #[test]
    fn parseval_holds() {
        let m = trig_map(
            &[
                (1, Complex64::new(1.0, 0.0)),
                (-3, Complex64::new(0.1, 0.2)),
                (5, Complex64::new(0.05, -0.1)),
            ],
            256,
        );
        assert!(m.parseval_defect() < 1e-12);
    }
}
