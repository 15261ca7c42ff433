//! Boundary kernels and the boundary Jacobian.
//!
//! K(s,t) = Re[conj(g(t) - g(s)) i g'(s)] on arclength pairs, its pullback
//! K_F(t,tau) = Re[conj(Psi(t) - Psi(tau)) i Psi'(tau)], the Dini kernel
//! bounds, the singular-integral formula for the radial limit of the
//! Jacobian, and its integral upper bound.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::boundary::BoundaryMap;
use crate::curve::{arc_distance_periodic, JordanCurve};
use crate::error::{Error, Result};
use crate::fft;
use crate::modulus::ModulusOfContinuity;

/// K(s,t) = Re[conj(g(t) - g(s)) i g'(s)], periodic in both arguments.
pub fn kernel_k(curve: &JordanCurve, s: f64, t: f64) -> f64 {
    let gs = curve.point(s);
    let gt = curve.point(t);
    let tangent = curve.tangent(s);
    ((gt - gs).conj() * Complex64::new(0.0, 1.0) * tangent).re
}

/// K_F(t,tau) = Re[conj(Psi(t) - Psi(tau)) i Psi'(tau)].
pub fn kernel_kf(boundary: &BoundaryMap, t: f64, tau: f64) -> f64 {
    let pt = boundary.eval(t);
    let ptau = boundary.eval(tau);
    let dtau = boundary.eval_derivative(tau);
    ((pt - ptau).conj() * Complex64::new(0.0, 1.0) * dtau).re
}

/// Pointwise verification of the kernel bounds over sampled pairs.
#[derive(Debug, Clone)]
pub struct KernelBoundReport {
    pub pairs_checked: usize,
    /// max over pairs of |K| - Int_0^{d} omega (negative when the bound
    /// holds strictly).
    pub worst_excess: f64,
    pub worst_pair: (usize, usize),
    /// pairs violating the bound by more than the allowed slack
    pub violations: usize,
    pub slack: f64,
    /// Same data for the pullback bound |K_F| <= |psi'| Int omega, when a
    /// boundary correspondence was supplied.
    pub kf_worst_excess: Option<f64>,
    pub kf_violations: Option<usize>,
}

impl KernelBoundReport {
    pub fn pass(&self) -> bool {
        self.violations == 0 && self.kf_violations.unwrap_or(0) == 0
    }
}

/// Check |K(s,t)| <= Int_0^{d_gamma(s,t)} omega over all sampled pairs of
/// the curve, and the pullback form over boundary sample pairs when a
/// correspondence is present. Violations beyond `slack` are counted, not
/// raised.
pub fn kernel_bound_check(
    curve: &JordanCurve,
    omega: &ModulusOfContinuity,
    boundary: Option<&BoundaryMap>,
    slack: f64,
) -> Result<KernelBoundReport> {
    let m = curve.sample_count();
    let l = curve.length();
    let step = l / m as f64;
    let samples = curve.samples();
    let tangents = curve.tangents();

    // cumulative omega at the discrete arc distances (<= l/2)
    let cum: Vec<f64> = (0..=m / 2)
        .map(|k| omega.cumulative(k as f64 * step))
        .collect();

    let mut worst = f64::NEG_INFINITY;
    let mut worst_pair = (0, 0);
    let mut violations = 0usize;
    for i in 0..m {
        let gi = samples[i];
        let ti = tangents[i] * Complex64::new(0.0, 1.0);
        for (j, gj) in samples.iter().enumerate() {
            if i == j {
                continue;
            }
            let k_val = ((gj - gi).conj() * ti).re.abs();
            let lag = j.abs_diff(i);
            let lag = lag.min(m - lag);
            let excess = k_val - cum[lag];
            if excess > worst {
                worst = excess;
                worst_pair = (i, j);
            }
            if excess > slack {
                violations += 1;
            }
        }
    }

    let (kf_worst, kf_viol) = match boundary {
        None => (None, None),
        Some(b) => {
            let n = b.n();
            let vals = b.values();
            let ders = b.derivative();
            let psi = b.psi();
            let lb = b.target().length();
            let mut w = f64::NEG_INFINITY;
            let mut v = 0usize;
            for i in 0..n {
                let di = ders[i] * Complex64::new(0.0, 1.0);
                let speed = ders[i].norm();
                for j in 0..n {
                    if i == j {
                        continue;
                    }
                    let kf = ((vals[j] - vals[i]).conj() * di).re.abs();
                    let d = arc_distance_periodic(lb, psi[i], psi[j]);
                    let excess = kf - speed * omega.cumulative(d);
                    w = w.max(excess);
                    if excess > slack {
                        v += 1;
                    }
                }
            }
            (Some(w), Some(v))
        }
    };

    Ok(KernelBoundReport {
        pairs_checked: m * (m - 1),
        worst_excess: worst,
        worst_pair,
        violations,
        slack,
        kf_worst_excess: kf_worst,
        kf_violations: kf_viol,
    })
}

/// Boundary Jacobian value with its near-diagonal remainder certificate.
#[derive(Debug, Clone, Copy)]
pub struct JacobianValue {
    pub value: f64,
    /// Bound on the singular-window contribution, from the kernel estimate
    /// Int_0^{max|Psi'| |x|} omega.
    pub remainder_bound: f64,
}

/// Radial-limit Jacobian J_f(e^{i tau}) by the singular-integral formula,
/// quadrature on a grid offset half a step from the singularity.
pub fn boundary_jacobian(boundary: &BoundaryMap, tau: f64) -> Result<JacobianValue> {
    let lip = boundary.max_derivative();
    if !lip.is_finite() || lip <= 0.0 {
        return Err(Error::Precondition(
            "boundary data must be Lipschitz with nonvanishing scale".into(),
        ));
    }
    let n = boundary.n();
    let h = 2.0 * PI / n as f64;

    // decompose tau onto the grid; grid tau reuses the cached half shift
    let idx = (tau / h).round() as i64;
    let frac = tau - idx as f64 * h;
    let idx = idx.rem_euclid(n as i64) as usize;
    let shifted_owned;
    let shifted: &[Complex64] = if frac.abs() < 1e-13 {
        boundary.half_grid_values()
    } else {
        shifted_owned = fft::shifted_samples(boundary.values(), frac + h / 2.0);
        &shifted_owned
    };

    let ptau = boundary.eval(tau);
    let dtau = boundary.eval_derivative(tau) * Complex64::new(0.0, 1.0);
    let mut acc = 0.0;
    for j in 0..n {
        let x = (j as f64 + 0.5) * h; // t - tau
        let val = shifted[(idx + j) % n];
        let kf = ((val - ptau).conj() * dtau).re;
        acc += kf / (2.0 * (x / 2.0).sin().powi(2));
    }
    let value = acc * h / (2.0 * PI);

    // near-diagonal certificate over |x| <= h
    let omega = boundary.target().tangent_modulus(12).unwrap_or_else(|_| {
        ModulusOfContinuity::power(2.0, 1.0, boundary.target().length()).unwrap()
    });
    let speed = boundary.eval_derivative(tau).norm();
    let remainder = 0.5 * PI * speed * lip * omega.dini_integral(lip * h).map(|d| d.value).unwrap_or(f64::INFINITY);

    Ok(JacobianValue {
        value,
        remainder_bound: remainder,
    })
}

/// Integral upper bound for the boundary Jacobian:
/// (pi/4) |Psi'(phi)| Int_{-pi}^{pi} x^{-2} Int_0^{rho(x,phi)} omega, with
/// rho the arc distance along the target. The inner integral uses the
/// cumulative omega table, the arc metric comes from the correspondence.
pub fn jacobian_upper_bound(
    boundary: &BoundaryMap,
    omega: &ModulusOfContinuity,
    phi: f64,
) -> Result<f64> {
    let lip = boundary.max_derivative();
    if !lip.is_finite() || lip <= 0.0 {
        return Err(Error::Precondition(
            "boundary data must be Lipschitz with nonvanishing scale".into(),
        ));
    }
    let n = boundary.n();
    let h = 2.0 * PI / n as f64;
    let l = boundary.target().length();
    let psi_phi = boundary.psi_at(phi);
    let speed = boundary.eval_derivative(phi).norm();

    let mut acc = 0.0;
    for j in 0..n {
        let mut x = (j as f64 + 0.5) * h;
        if x > PI {
            x -= 2.0 * PI; // wrap into (-pi, pi]
        }
        let u = boundary.psi_at(phi + x);
        let mut d = (u - psi_phi).abs() % l;
        d = d.min(l - d);
        acc += omega.cumulative(d) / (x * x);
    }
    Ok(PI / 4.0 * speed * acc * h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::CurveSpec;

    fn circle_identity(n: usize, m: usize) -> BoundaryMap {
        let c = JordanCurve::from_spec(&CurveSpec::Circle { r: 1.0 }, m).unwrap();
        BoundaryMap::from_composed_identity(c, n).unwrap()
    }

    fn affine(a: f64, n: usize) -> BoundaryMap {
        BoundaryMap::from_trig(
            &[(1, Complex64::new(1.0, 0.0)), (-1, Complex64::new(a, 0.0))],
            n,
            1024,
        )
        .unwrap()
    }

    #[test]
    fn kernel_on_circle_is_one_minus_cos() {
        let c = JordanCurve::from_spec(&CurveSpec::Circle { r: 1.0 }, 512).unwrap();
        for &(s, t) in &[(0.0f64, 1.0f64), (2.0, 0.3), (4.0, 4.0), (0.5, 6.0)] {
            let exact = 1.0 - (t - s).cos();
            assert!(
                (kernel_k(&c, s, t) - exact).abs() < 1e-8,
                "K({s},{t}) = {} want {exact}",
                kernel_k(&c, s, t)
            );
        }
        // diagonal vanishes
        assert!(kernel_k(&c, 1.234, 1.234).abs() < 1e-14);
    }

    #[test]
    fn kernel_matches_high_resolution_route() {
        let coarse = JordanCurve::from_spec(&CurveSpec::Ellipse { a: 2.0, b: 1.0 }, 512).unwrap();
        let fine = JordanCurve::from_spec(&CurveSpec::Ellipse { a: 2.0, b: 1.0 }, 2048).unwrap();
        for &(s, t) in &[(0.5, 3.0), (1.0, 7.5), (9.0, 2.0)] {
            assert!(
                (kernel_k(&coarse, s, t) - kernel_k(&fine, s, t)).abs() < 1e-6,
                "s={s} t={t}"
            );
        }
    }

    #[test]
    fn kf_identity_circle_and_diagonal() {
        let b = circle_identity(256, 512);
        for &(t, tau) in &[(1.0f64, 0.2f64), (4.0, 2.0)] {
            let exact = 1.0 - (t - tau).cos();
            assert!((kernel_kf(&b, t, tau) - exact).abs() < 1e-8);
        }
        assert!(kernel_kf(&b, 0.7, 0.7).abs() < 1e-12);
    }

    #[test]
    fn kf_cross_route_consistency() {
        // K_F(t,tau) = psi'(tau) K(psi(t), psi(tau)) for the affine map
        let b = affine(0.5, 512);
        let curve = b.target();
        for &(t, tau) in &[(0.3, 1.7), (2.0, 5.1), (4.4, 0.9)] {
            let lhs = kernel_kf(&b, t, tau);
            let rhs = b.eval_derivative(tau).norm() * kernel_k(curve, b.psi_at(tau), b.psi_at(t));
            assert!((lhs - rhs).abs() < 1e-6, "t={t} tau={tau}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn kernel_bound_circle_closed_form() {
        let c = JordanCurve::from_spec(&CurveSpec::Circle { r: 1.0 }, 256).unwrap();
        let omega = ModulusOfContinuity::circle(1.0);
        let rep = kernel_bound_check(&c, &omega, None, 1e-3).unwrap();
        assert!(rep.pass(), "worst excess {}", rep.worst_excess);
        // half-angle identity: 2 sin^2(d/2) <= 8 sin^2(d/4) strictly off-diagonal
        assert!(rep.worst_excess <= 0.0);
    }

    #[test]
    fn kernel_bound_ellipse_empirical() {
        let c = JordanCurve::from_spec(&CurveSpec::Ellipse { a: 2.0, b: 1.0 }, 512).unwrap();
        let omega = c.tangent_modulus(10).unwrap();
        let rep = kernel_bound_check(&c, &omega, None, 1e-3).unwrap();
        assert!(rep.pass(), "worst excess {}", rep.worst_excess);
    }

    #[test]
    fn boundary_jacobian_identity_is_one() {
        let b = circle_identity(512, 512);
        for k in 0..16 {
            let tau = 2.0 * PI * k as f64 / 16.0;
            let j = boundary_jacobian(&b, tau).unwrap();
            assert!((j.value - 1.0).abs() < 1e-9, "J({tau}) = {}", j.value);
        }
    }

    #[test]
    fn boundary_jacobian_affine() {
        let b = affine(0.5, 2048);
        for k in 0..8 {
            let tau = 2.0 * PI * k as f64 / 8.0 + 0.1;
            let j = boundary_jacobian(&b, tau).unwrap();
            assert!((j.value - 0.75).abs() < 1e-3, "J({tau}) = {}", j.value);
        }
    }

    #[test]
    fn boundary_jacobian_quadratic_matches_wirtinger() {
        let b = BoundaryMap::from_trig(
            &[(1, Complex64::new(1.0, 0.0)), (-2, Complex64::new(0.25, 0.0))],
            2048,
            1024,
        )
        .unwrap();
        // |g'|^2 - |h'|^2 at z = 1: 1 - 0.25
        let j = boundary_jacobian(&b, 0.0).unwrap();
        assert!((j.value - 0.75).abs() < 1e-3, "J(0) = {}", j.value);
    }

    #[test]
    fn refinement_within_remainder() {
        let b1 = affine(0.5, 1024);
        let b2 = affine(0.5, 2048);
        let tau = 0.9;
        let j1 = boundary_jacobian(&b1, tau).unwrap();
        let j2 = boundary_jacobian(&b2, tau).unwrap();
        assert!((j1.value - j2.value).abs() <= j1.remainder_bound + 1e-12);
    }

    #[test]
    fn upper_bound_identity_circle() {
        // frozen oracle: (pi/4) Int 8 sin^2(x/4)/x^2 dx = 2.3063763572929578
        let b = circle_identity(1024, 512);
        let omega = ModulusOfContinuity::circle(1.0);
        let ub = jacobian_upper_bound(&b, &omega, 0.7).unwrap();
        assert!((ub - 2.3063763572929578).abs() < 1e-3, "ub = {ub}");
        let j = boundary_jacobian(&b, 0.7).unwrap();
        assert!(j.value <= ub);
    }

    #[test]
    fn upper_bound_zero_modulus() {
        let b = circle_identity(256, 256);
        let omega = ModulusOfContinuity::power(1e-300, 1.0, 2.0 * PI).unwrap();
        let ub = jacobian_upper_bound(&b, &omega, 0.0).unwrap();
        assert!(ub < 1e-290, "degenerate omega must force a vanishing bound");
    }

    #[test]
    fn upper_bound_dominates_affine() {
        let b = affine(0.5, 1024);
        let omega = b.target().tangent_modulus(10).unwrap();
        for k in 0..8 {
            let phi = 2.0 * PI * k as f64 / 8.0;
            let ub = jacobian_upper_bound(&b, &omega, phi).unwrap();
            let j = boundary_jacobian(&b, phi).unwrap();
            assert!(j.value <= ub, "phi={phi}: J={} > bound={ub}", j.value);
        }
    }
}
