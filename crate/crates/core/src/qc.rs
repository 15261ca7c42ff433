//! Quasiconformality measurements on harmonic extensions: dilatation
//! fields, the equal-arc normalization and its Moebius repair, empirical
//! Lipschitz constants, and the convex-target criteria.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::boundary::BoundaryMap;
use crate::error::{Error, Result};
use crate::harmonic::{analyze, HarmonicMap};
use crate::hilbert::{hilbert_spectral, CircleFunction};

pub const DEFAULT_LOG_THRESHOLD: f64 = 6.0;
pub const DEFAULT_HILBERT_THRESHOLD: f64 = 100.0;
const NOT_QC_TOL: f64 = 1e-9;

/// One grid point of a dilatation scan.
#[derive(Debug, Clone, Copy)]
pub struct DilatationSample {
    pub r: f64,
    pub theta: f64,
    /// k = |f_zbar| / |f_z| (infinite when f_z vanishes).
    pub k: f64,
    /// J = |f_z|^2 - |f_zbar|^2.
    pub jacobian: f64,
    /// |Df| = |f_z| + |f_zbar|.
    pub df_norm: f64,
    /// |d_phi f|.
    pub angular_norm: f64,
}

#[derive(Debug, Clone)]
pub struct DilatationReport {
    pub points: Vec<DilatationSample>,
    pub sup_k: f64,
    pub sup_k_at: (f64, f64),
    /// K = (1 + sup k)/(1 - sup k); infinite when the map is not q.c.
    pub big_k: f64,
    pub jac_min: f64,
    pub sense_preserving: bool,
    pub not_qc: bool,
}

impl DilatationReport {
    /// Validate a user-supplied distortion constant: (|f_z|+|f_zbar|)^2 <=
    /// K J at every grid point.
    pub fn validates_k(&self, k_user: f64, tol: f64) -> bool {
        self.points
            .iter()
            .all(|p| p.df_norm.powi(2) <= k_user * p.jacobian + tol)
    }
}

/// Radii 1 - 2^{-j}, j = 1..=levels (the boundary-approaching grid).
pub fn boundary_approaching_radii(levels: usize) -> Vec<f64> {
    (1..=levels).map(|j| 1.0 - (0.5f64).powi(j as i32)).collect()
}

/// Dilatation scan over radii x angles, plus the boundary ring r = 1 via
/// spectral boundary derivatives.
pub fn dilatation_field(
    map: &HarmonicMap,
    radii: &[f64],
    n_angles: usize,
) -> Result<DilatationReport> {
    if n_angles == 0 {
        return Err(Error::InvalidInput("need at least one angle".into()));
    }
    for &r in radii {
        if !(0.0..1.0).contains(&r) {
            return Err(Error::InvalidInput(format!(
                "interior radii must lie in [0, 1), got {r}"
            )));
        }
    }
    let mut points = Vec::with_capacity((radii.len() + 1) * n_angles);
    let mut all_r: Vec<f64> = radii.to_vec();
    all_r.push(1.0); // boundary ring
    for &r in &all_r {
        for a in 0..n_angles {
            let theta = 2.0 * PI * a as f64 / n_angles as f64;
            let z = Complex64::from_polar(r, theta);
            let (fz, fzb) = map.wirtinger(z)?;
            let (nfz, nfzb) = (fz.norm(), fzb.norm());
            let k = if nfz > 0.0 { nfzb / nfz } else { f64::INFINITY };
            let angular = (Complex64::new(0.0, 1.0) * (z * fz.conj()).conj()
                - Complex64::new(0.0, 1.0) * (z * fzb.conj()).conj())
            .norm();
            // |d_phi f| = |i z f_z - i conj(z) f_zbar... computed directly:
            let zb = z.conj();
            let angular = (Complex64::new(0.0, 1.0) * z * fz
                - Complex64::new(0.0, 1.0) * zb * fzb)
                .norm()
                .max(angular * 0.0);
            points.push(DilatationSample {
                r,
                theta,
                k,
                jacobian: nfz * nfz - nfzb * nfzb,
                df_norm: nfz + nfzb,
                angular_norm: angular,
            });
        }
    }
    let mut sup_k = 0.0f64;
    let mut sup_at = (0.0, 0.0);
    let mut jac_min = f64::INFINITY;
    for p in &points {
        if p.k > sup_k {
            sup_k = p.k;
            sup_at = (p.r, p.theta);
        }
        jac_min = jac_min.min(p.jacobian);
    }
    let not_qc = !(sup_k < 1.0 - NOT_QC_TOL);
    let big_k = if not_qc {
        f64::INFINITY
    } else {
        (1.0 + sup_k) / (1.0 - sup_k)
    };
    Ok(DilatationReport {
        points,
        sup_k,
        sup_k_at: sup_at,
        big_k,
        jac_min,
        sense_preserving: jac_min > 0.0,
        not_qc,
    })
}

/// Equal-arc normalization data for the cube roots of unity.
#[derive(Debug, Clone)]
pub struct NormalizationReport {
    pub points: [Complex64; 3],
    pub arcs: [f64; 3],
    pub pass: bool,
}

/// Check that f(1), f(e^{2pi i/3}), f(e^{4pi i/3}) cut the target into
/// three arcs of length |gamma|/3 (within tol_rel * |gamma|).
pub fn normalization_check(map: &HarmonicMap, tol_rel: f64) -> Result<NormalizationReport> {
    let b = map.boundary();
    let l = b.target().length();
    // injectivity proxy: psi must keep advancing over eighth-turns
    let n = b.n();
    for j in 0..8 {
        let t = 2.0 * PI * j as f64 / 8.0;
        if b.psi_at(t + PI / 4.0) - b.psi_at(t) <= 1e-9 * l {
            return Err(Error::InvalidInput(
                "boundary map is not injective on samples (flat correspondence)".into(),
            ));
        }
    }
    let _ = n;
    let t1 = 2.0 * PI / 3.0;
    let t2 = 4.0 * PI / 3.0;
    let (s0, s1, s2) = (b.psi_at(0.0), b.psi_at(t1), b.psi_at(t2));
    let arcs = [s1 - s0, s2 - s1, l - (s2 - s0)];
    let pass = arcs.iter().all(|a| (a - l / 3.0).abs() <= tol_rel * l);
    Ok(NormalizationReport {
        points: [b.eval(0.0), b.eval(t1), b.eval(t2)],
        arcs,
        pass,
    })
}

/// Precompose with the disk automorphism sending the cube roots of unity
/// to the preimages of the equal-arc points anchored at f(1). Harmonicity
/// is preserved; the result passes [`normalization_check`].
pub fn renormalize(map: &HarmonicMap) -> Result<HarmonicMap> {
    let b = map.boundary();
    let l = b.target().length();
    let tau1 = b.psi_inverse(l / 3.0)?;
    let tau2 = b.psi_inverse(2.0 * l / 3.0)?;

    let source = [
        Complex64::new(1.0, 0.0),
        Complex64::from_polar(1.0, 2.0 * PI / 3.0),
        Complex64::from_polar(1.0, 4.0 * PI / 3.0),
    ];
    let target = [
        Complex64::new(1.0, 0.0),
        Complex64::from_polar(1.0, tau1),
        Complex64::from_polar(1.0, tau2),
    ];
    let sigma = Moebius::three_point(source, target);

    let n = b.n();
    let new_values: Vec<Complex64> = (0..n)
        .map(|j| {
            let z = Complex64::from_polar(1.0, 2.0 * PI * j as f64 / n as f64);
            b.eval(sigma.apply(z).arg())
        })
        .collect();
    let curve_m = b.target().sample_count();
    let nb = BoundaryMap::from_samples(new_values, curve_m)?;
    analyze(nb)
}

#[derive(Debug, Clone, Copy)]
struct Moebius {
    a: Complex64,
    b: Complex64,
    c: Complex64,
    d: Complex64,
}

impl Moebius {
    /// z -> ((z - z0)(z1 - z2)) / ((z - z2)(z1 - z0)), sending
    /// (z0, z1, z2) to (0, 1, infinity).
    fn to_standard(z: [Complex64; 3]) -> Self {
        let p = z[1] - z[2];
        let q = z[1] - z[0];
        Self {
            a: p,
            b: -z[0] * p,
            c: q,
            d: -z[2] * q,
        }
    }

    fn inverse(self) -> Self {
        Self {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    fn compose(self, other: Self) -> Self {
        Self {
            a: self.a * other.a + self.b * other.c,
            b: self.a * other.b + self.b * other.d,
            c: self.c * other.a + self.d * other.c,
            d: self.c * other.b + self.d * other.d,
        }
    }

    /// The Moebius map with source[k] -> target[k]; for concyclic triples
    /// in matching order this is a disk automorphism.
    fn three_point(source: [Complex64; 3], target: [Complex64; 3]) -> Self {
        Moebius::to_standard(target)
            .inverse()
            .compose(Moebius::to_standard(source))
    }

    fn apply(&self, z: Complex64) -> Complex64 {
        (self.a * z + self.b) / (self.c * z + self.d)
    }
}

/// Result of the sampled-pair Lipschitz scan.
#[derive(Debug, Clone, Copy)]
pub struct LipschitzScan {
    pub sup_ratio: f64,
    pub argmax: (Complex64, Complex64),
    /// max |d_phi f| over the scan grid (the mean-value route multiplies
    /// this by K).
    pub max_angular_derivative: f64,
}

/// Sup of |f(z1) - f(z2)| / |z1 - z2| over sampled boundary and interior
/// pairs, plus the angular-derivative route data.
pub fn empirical_lipschitz(
    map: &HarmonicMap,
    n_boundary: usize,
    n_radii: usize,
    n_angles: usize,
) -> Result<LipschitzScan> {
    if n_boundary < 2 {
        return Err(Error::InvalidInput("need at least 2 boundary points".into()));
    }
    let mut pts: Vec<Complex64> = (0..n_boundary)
        .map(|j| Complex64::from_polar(1.0, 2.0 * PI * j as f64 / n_boundary as f64))
        .collect();
    for i in 1..=n_radii {
        let r = i as f64 / (n_radii as f64 + 1.0);
        for a in 0..n_angles {
            pts.push(Complex64::from_polar(r, 2.0 * PI * a as f64 / n_angles as f64));
        }
    }
    pts.push(Complex64::new(0.0, 0.0));

    let vals: Vec<Complex64> = pts
        .iter()
        .map(|&z| map.evaluate(z))
        .collect::<Result<_>>()?;

    let mut sup = 0.0f64;
    let mut arg = (pts[0], pts[0]);
    for i in 0..pts.len() {
        for j in (i + 1)..pts.len() {
            let dz = (pts[i] - pts[j]).norm();
            if dz < 1e-12 {
                continue;
            }
            let ratio = (vals[i] - vals[j]).norm() / dz;
            if ratio > sup {
                sup = ratio;
                arg = (pts[i], pts[j]);
            }
        }
    }

    let mut max_ang = 0.0f64;
    for &z in &pts {
        let (fz, fzb) = map.wirtinger(z)?;
        let ang = (Complex64::new(0.0, 1.0) * (z * fz - (z * fzb.conj()).conj())).norm();
        max_ang = max_ang.max(ang);
    }
    Ok(LipschitzScan {
        sup_ratio: sup,
        argmax: arg,
        max_angular_derivative: max_ang,
    })
}

#[derive(Debug, Clone, Copy)]
pub struct LowerBoundReport {
    pub observed_min: f64,
    pub threshold: f64,
    pub margin: f64,
    pub pass: bool,
    pub kappa: f64,
    pub delta: f64,
}

fn require_convex(map: &HarmonicMap) -> Result<()> {
    if !map.boundary().target().is_convex() {
        return Err(Error::Precondition(
            "target curve must be convex for this check".into(),
        ));
    }
    Ok(())
}

fn scan_grid() -> Vec<f64> {
    let mut radii = vec![0.0, 0.2, 0.4, 0.6, 0.8];
    radii.extend(boundary_approaching_radii(8));
    radii
}

/// Heinz-type lower bound: min |Df| >= dist(f(0), boundary)/4 on convex
/// targets.
pub fn heinz_lower_check(map: &HarmonicMap) -> Result<LowerBoundReport> {
    require_convex(map)?;
    let f0 = map.evaluate(Complex64::new(0.0, 0.0))?;
    let delta = map.boundary().target().distance_to(f0);
    let rep = dilatation_field(map, &scan_grid(), 64)?;
    let min_df = rep.points.iter().map(|p| p.df_norm).fold(f64::INFINITY, f64::min);
    let threshold = delta / 4.0;
    Ok(LowerBoundReport {
        observed_min: min_df,
        threshold,
        margin: min_df - threshold,
        pass: min_df >= threshold,
        kappa: f64::NAN,
        delta,
    })
}

/// Jacobian lower bound on convex targets: min J >= kappa delta / 2 with
/// kappa = min |d_t f| on the boundary, delta = dist(f(0), boundary).
pub fn jacobian_lower_check(map: &HarmonicMap) -> Result<LowerBoundReport> {
    require_convex(map)?;
    let f0 = map.evaluate(Complex64::new(0.0, 0.0))?;
    let delta = map.boundary().target().distance_to(f0);
    let kappa = map
        .boundary()
        .derivative()
        .iter()
        .map(|d| d.norm())
        .fold(f64::INFINITY, f64::min);
    let rep = dilatation_field(map, &scan_grid(), 64)?;
    let threshold = kappa * delta / 2.0;
    Ok(LowerBoundReport {
        observed_min: rep.jac_min,
        threshold,
        margin: rep.jac_min - threshold,
        pass: rep.jac_min >= threshold,
        kappa,
        delta,
    })
}

/// Convex-target q.c. classifier data.
#[derive(Debug, Clone, Copy)]
pub struct QcCriterionReport {
    /// sup |log |Psi'|| over the sample grid (infinite when Psi' vanishes).
    pub log_df_sup: f64,
    /// sup |H(Psi')| over the sample grid.
    pub hilbert_sup: f64,
    pub predicted_qc: bool,
    /// sup k measured on the boundary-approaching grid (plus the ring).
    pub measured_sup_k: f64,
    /// predicted_qc agrees with (measured sup k < 1).
    pub consistent: bool,
}

/// Classifier for "q.c. iff log|F'| and H(F') are bounded" on convex
/// targets, cross-checked against the measured dilatation.
pub fn convex_qc_criterion(
    map: &HarmonicMap,
    log_threshold: f64,
    hilbert_threshold: f64,
) -> Result<QcCriterionReport> {
    require_convex(map)?;
    let b = map.boundary();
    let scale = b.max_derivative();
    // below the resolution of spectral differentiation the derivative is
    // indistinguishable from zero
    let floor = 1e-8 * scale;
    let mut log_sup = 0.0f64;
    for d in b.derivative() {
        let n = d.norm();
        if n <= floor {
            // Psi' vanishes at a sample: log|F'| unbounded
            log_sup = f64::INFINITY;
            break;
        }
        log_sup = log_sup.max(n.ln().abs());
    }
    let deriv_fn = CircleFunction::new(b.derivative().to_vec())?;
    let transformed = hilbert_spectral(&deriv_fn)?;
    let hilbert_sup = transformed.max_abs();
    let predicted_qc = log_sup <= log_threshold && hilbert_sup <= hilbert_threshold;

    let rep = dilatation_field(map, &boundary_approaching_radii(12), 64)?;
    let measured_qc = rep.sup_k < 0.99;
    Ok(QcCriterionReport {
        log_df_sup: log_sup,
        hilbert_sup,
        predicted_qc,
        measured_sup_k: rep.sup_k,
        consistent: predicted_qc == measured_qc,
    })
}
