//! Jordan curves in natural (arc-length) parametrization.
//!
//! A curve is held as M uniform-arclength samples g(s_i) with unit tangents
//! g'(s_i), plus periodic splines for off-node evaluation. Regularity data
//! (chord-arc constant, tangent modulus of continuity, enclosed area) feed
//! the kernel estimates and the Lipschitz bound pipeline.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::modulus::{self, ModulusOfContinuity};
use crate::quad;
use crate::spline::PeriodicSpline;

/// Curve input specification (JSON external interface).
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum CurveSpec {
    Circle { r: f64 },
    Ellipse { a: f64, b: f64 },
    /// Trigonometric curve sum_j c_j e^{i(j - floor(L/2)) theta} over a
    /// centered spectrum of length L; coeffs are [re, im] pairs.
    Fourier { coeffs: Vec<[f64; 2]> },
    Samples { points: Vec<[f64; 2]> },
}

#[derive(Debug)]
pub struct JordanCurve {
    samples: Vec<Complex64>,
    tangents: Vec<Complex64>,
    length: f64,
    enclosed_area: f64,
    pos_spline: PeriodicSpline,
    tan_spline: PeriodicSpline,
    chord_arc: OnceLock<Result<f64>>,
}

impl Clone for JordanCurve {
    fn clone(&self) -> Self {
        Self {
            samples: self.samples.clone(),
            tangents: self.tangents.clone(),
            length: self.length,
            enclosed_area: self.enclosed_area,
            pos_spline: self.pos_spline.clone(),
            tan_spline: self.tan_spline.clone(),
            chord_arc: OnceLock::new(),
        }
    }
}

/// Uniform-arclength reparametrization of a curve spec; the spec's entry
/// point for building a [`JordanCurve`].
pub fn arc_length_reparametrize(spec: &CurveSpec, m: usize) -> Result<JordanCurve> {
    JordanCurve::from_spec(spec, m)
}

impl JordanCurve {
    pub fn from_spec(spec: &CurveSpec, m: usize) -> Result<Self> {
        match spec {
            CurveSpec::Circle { r } => {
                let r = *r;
                if !(r > 0.0) {
                    return Err(Error::InvalidCurve("circle radius must be positive".into()));
                }
                Self::from_parametric(
                    move |t| Complex64::from_polar(r, t),
                    move |t| Complex64::from_polar(r, t + PI / 2.0),
                    m,
                )
            }
            CurveSpec::Ellipse { a, b } => {
                let (a, b) = (*a, *b);
                if !(a > 0.0) || !(b > 0.0) {
                    return Err(Error::InvalidCurve("ellipse axes must be positive".into()));
                }
                Self::from_parametric(
                    move |t| Complex64::new(a * t.cos(), b * t.sin()),
                    move |t| Complex64::new(-a * t.sin(), b * t.cos()),
                    m,
                )
            }
            CurveSpec::Fourier { coeffs } => {
                if coeffs.is_empty() {
                    return Err(Error::InvalidCurve("empty fourier coefficient list".into()));
                }
                let cs: Vec<Complex64> =
                    coeffs.iter().map(|c| Complex64::new(c[0], c[1])).collect();
                let off = cs.len() / 2;
                let gamma = {
                    let cs = cs.clone();
                    move |t: f64| {
                        cs.iter()
                            .enumerate()
                            .map(|(j, c)| c * Complex64::from_polar(1.0, (j as f64 - off as f64) * t))
                            .sum::<Complex64>()
                    }
                };
                let dgamma = move |t: f64| {
                    cs.iter()
                        .enumerate()
                        .map(|(j, c)| {
                            let k = j as f64 - off as f64;
                            c * Complex64::new(0.0, k) * Complex64::from_polar(1.0, k * t)
                        })
                        .sum::<Complex64>()
                };
                Self::from_parametric(gamma, dgamma, m)
            }
            CurveSpec::Samples { points } => {
                let pts: Vec<Complex64> =
                    points.iter().map(|p| Complex64::new(p[0], p[1])).collect();
                Self::from_points(&pts, m)
            }
        }
    }

    /// Build from a smooth closed parametrization gamma(t), t in [0, 2pi).
    pub fn from_parametric<G, D>(gamma: G, dgamma: D, m: usize) -> Result<Self>
    where
        G: Fn(f64) -> Complex64,
        D: Fn(f64) -> Complex64,
    {
        if m < 16 {
            return Err(Error::InvalidInput(format!("need M >= 16 samples, got {m}")));
        }
        let panels = (8 * m).max(4096);
        let speed = |t: f64| dgamma(t).norm();
        let cum = quad::cumulative_gauss8(&speed, 0.0, 2.0 * PI, panels);
        let length = cum[panels];
        if !(length > 0.0) || !length.is_finite() {
            return Err(Error::InvalidCurve("curve has nonpositive length".into()));
        }
        let grid: Vec<f64> = (0..=panels).map(|i| 2.0 * PI * i as f64 / panels as f64).collect();

        let speed_floor = 1e-9 * length / (2.0 * PI);
        let mut samples = Vec::with_capacity(m);
        let mut tangents = Vec::with_capacity(m);
        for i in 0..m {
            let target = length * i as f64 / m as f64;
            // bracket by table lookup, then Newton on s(theta) - target;
            // isolated zero-speed points fall back to the table value
            let mut theta = quad::interp_linear(&cum, &grid, target);
            for _ in 0..3 {
                let sp = speed(theta);
                if sp <= speed_floor {
                    break;
                }
                let k = ((theta / (2.0 * PI)) * panels as f64).floor().clamp(0.0, panels as f64 - 1.0)
                    as usize;
                let s_here = cum[k] + quad::gauss8(&speed, grid[k], theta);
                theta -= (s_here - target) / sp;
            }
            let mut d = dgamma(theta);
            if d.norm() <= speed_floor {
                // unit tangent by one-sided limit at a stationary parameter
                d = dgamma(theta + 1e-6);
            }
            let sp = d.norm();
            if sp <= 0.0 {
                return Err(Error::InvalidCurve("parametrization has vanishing speed".into()));
            }
            samples.push(gamma(theta));
            tangents.push(d / sp);
        }

        // enclosed area (1/2) Int Im(conj(gamma) gamma') dt, trapezoid on the
        // dense grid (spectrally accurate for smooth closed curves)
        let n_area = panels;
        let area = (0..n_area)
            .map(|i| {
                let t = 2.0 * PI * i as f64 / n_area as f64;
                (gamma(t).conj() * dgamma(t)).im
            })
            .sum::<f64>()
            * (2.0 * PI / n_area as f64)
            * 0.5;

        Self::assemble(samples, tangents, length, area)
    }

    /// Build from an ordered closed polyline (exact polygon arclength; the
    /// cumulative chord table is piecewise linear and inverted exactly).
    pub fn from_points(points: &[Complex64], m: usize) -> Result<Self> {
        if m < 16 {
            return Err(Error::InvalidInput(format!("need M >= 16 samples, got {m}")));
        }
        let mut pts: Vec<Complex64> = points.to_vec();
        if pts.len() >= 2 && (pts[0] - pts[pts.len() - 1]).norm() < 1e-14 {
            pts.pop();
        }
        let distinct = {
            let mut d = 0usize;
            for (i, p) in pts.iter().enumerate() {
                if pts[..i].iter().all(|q| (p - q).norm() > 1e-14) {
                    d += 1;
                }
            }
            d
        };
        if distinct < 3 {
            return Err(Error::InvalidInput(
                "need at least 3 distinct points for a closed curve".into(),
            ));
        }
        let n = pts.len();
        if polyline_self_intersects(&pts) {
            return Err(Error::InvalidCurve("input polyline self-intersects".into()));
        }

        let mut cum = Vec::with_capacity(n + 1);
        cum.push(0.0);
        for i in 0..n {
            let edge = (pts[(i + 1) % n] - pts[i]).norm();
            if edge < 1e-14 {
                return Err(Error::InvalidCurve("repeated consecutive points".into()));
            }
            cum.push(cum[i] + edge);
        }
        let length = cum[n];

        let mut samples = Vec::with_capacity(m);
        let mut tangents = Vec::with_capacity(m);
        let mut edge = 0usize;
        for i in 0..m {
            let s = length * i as f64 / m as f64;
            while edge + 1 < n && cum[edge + 1] <= s {
                edge += 1;
            }
            let dir = (pts[(edge + 1) % n] - pts[edge]) / (cum[edge + 1] - cum[edge]);
            samples.push(pts[edge] + dir * (s - cum[edge]));
            tangents.push(dir / dir.norm());
        }

        let area = 0.5
            * (0..n)
                .map(|i| {
                    let (p, q) = (pts[i], pts[(i + 1) % n]);
                    p.re * q.im - q.re * p.im
                })
                .sum::<f64>();

        Self::assemble(samples, tangents, length, area)
    }

    fn assemble(
        mut samples: Vec<Complex64>,
        mut tangents: Vec<Complex64>,
        length: f64,
        mut area: f64,
    ) -> Result<Self> {
        let m = samples.len();
        if area < 0.0 {
            // reparametrize to positive orientation: g_new(s) = g_old(l - s)
            samples = (0..m).map(|i| samples[(m - i) % m]).collect();
            tangents = (0..m).map(|i| -tangents[(m - i) % m]).collect();
            area = -area;
        }
        if !(area > 0.0) {
            return Err(Error::InvalidCurve("enclosed area is not positive".into()));
        }
        if polyline_self_intersects(&samples) {
            return Err(Error::InvalidCurve("curve samples self-intersect".into()));
        }
        let pos_spline = PeriodicSpline::new(samples.clone(), length);
        let tan_spline = PeriodicSpline::new(tangents.clone(), length);
        Ok(Self {
            samples,
            tangents,
            length,
            enclosed_area: area,
            pos_spline,
            tan_spline,
            chord_arc: OnceLock::new(),
        })
    }

    pub fn sample_count(&self) -> usize {
        self.samples.len()
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn tangents(&self) -> &[Complex64] {
        &self.tangents
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn enclosed_area(&self) -> f64 {
        self.enclosed_area
    }

    /// g(s) by periodic spline interpolation.
    pub fn point(&self, s: f64) -> Complex64 {
        self.pos_spline.eval(s)
    }

    /// Unit tangent g'(s) by periodic spline interpolation.
    pub fn tangent(&self, s: f64) -> Complex64 {
        let t = self.tan_spline.eval(s);
        let n = t.norm();
        if n > 0.0 {
            t / n
        } else {
            t
        }
    }

    /// Shorter arc distance between arclength positions.
    pub fn arc_distance(&self, s1: f64, s2: f64) -> Result<f64> {
        if !(0.0..=self.length).contains(&s1) || !(0.0..=self.length).contains(&s2) {
            return Err(Error::InvalidInput(format!(
                "arclength out of range [0, {}]: {s1}, {s2}",
                self.length
            )));
        }
        Ok(arc_distance_periodic(self.length, s1, s2))
    }

    /// Chord-arc constant: max over sampled pairs of d_gamma / chord.
    /// The pair scan is data-parallel under HQMAP_THREADS with a
    /// fixed-order exact max reduction.
    pub fn chord_arc_constant(&self) -> Result<f64> {
        #[derive(Clone)]
        struct Scan {
            best: f64,
            degenerate: Option<(usize, usize, f64)>,
        }
        self.chord_arc
            .get_or_init(|| {
                let m = self.samples.len();
                if m < 16 {
                    return Err(Error::InvalidInput("need >= 16 samples for chord-arc".into()));
                }
                let floor = 1e-9 * self.length;
                let step = self.length / m as f64;
                let scan = crate::parallel::indexed_fold(
                    m,
                    Scan {
                        best: 1.0,
                        degenerate: None,
                    },
                    |i, mut acc| {
                        for j in (i + 1)..m {
                            let chord = (self.samples[j] - self.samples[i]).norm();
                            if chord < floor {
                                if acc.degenerate.is_none() {
                                    acc.degenerate = Some((i, j, chord));
                                }
                                continue;
                            }
                            let ds = (j - i) as f64 * step;
                            let d = ds.min(self.length - ds);
                            acc.best = acc.best.max(d / chord);
                        }
                        acc
                    },
                    |a, b| Scan {
                        best: a.best.max(b.best),
                        degenerate: a.degenerate.or(b.degenerate),
                    },
                );
                if let Some((i, j, chord)) = scan.degenerate {
                    return Err(Error::DegenerateCurve(format!(
                        "samples {i} and {j} nearly coincide (chord {chord:.3e})"
                    )));
                }
                Ok(scan.best)
            })
            .as_ref()
            .map(|v| *v)
            .map_err(clone_err)
    }

    /// Empirical modulus of continuity of g' over dyadic scales.
    pub fn tangent_modulus(&self, levels: usize) -> Result<ModulusOfContinuity> {
        let grid = modulus::dyadic_scales(self.length, levels);
        modulus::modulus_of_continuity(&self.tangents, self.length, &grid)
    }

    /// Convexity witness: cross products of consecutive edges keep one sign
    /// (within rounding slack relative to the largest cross product).
    pub fn is_convex(&self) -> bool {
        let m = self.samples.len();
        let cross = |i: usize| {
            let a = self.samples[(i + 1) % m] - self.samples[i];
            let b = self.samples[(i + 2) % m] - self.samples[(i + 1) % m];
            a.re * b.im - a.im * b.re
        };
        let mut max_abs = 0.0f64;
        for i in 0..m {
            max_abs = max_abs.max(cross(i).abs());
        }
        let tol = 1e-9 * max_abs;
        (0..m).all(|i| cross(i) >= -tol)
    }

    /// Distance from a point to the sampled curve (segment distance).
    pub fn distance_to(&self, z: Complex64) -> f64 {
        let m = self.samples.len();
        let mut best = f64::INFINITY;
        for i in 0..m {
            let a = self.samples[i];
            let b = self.samples[(i + 1) % m];
            let ab = b - a;
            let len2 = ab.norm_sqr();
            let t = if len2 > 0.0 {
                (((z - a).conj() * ab).re / len2).clamp(0.0, 1.0)
            } else {
                0.0
            };
            best = best.min((z - (a + ab * t)).norm());
        }
        best
    }
}

fn clone_err(e: &Error) -> Error {
    match e {
        Error::InvalidInput(s) => Error::InvalidInput(s.clone()),
        Error::InvalidCurve(s) => Error::InvalidCurve(s.clone()),
        Error::DegenerateCurve(s) => Error::DegenerateCurve(s.clone()),
        Error::Domain(s) => Error::Domain(s.clone()),
        Error::Precondition(s) => Error::Precondition(s.clone()),
        Error::Range(s) => Error::Range(s.clone()),
        Error::CertificateUnavailable(s) => Error::CertificateUnavailable(s.clone()),
    }
}

pub(crate) fn arc_distance_periodic(length: f64, s1: f64, s2: f64) -> f64 {
    let d = (s1 - s2).abs();
    d.min(length - d)
}

/// Proper-crossing test for non-adjacent segments of a closed polyline.
fn polyline_self_intersects(pts: &[Complex64]) -> bool {
    let n = pts.len();
    if n < 4 {
        return false;
    }
    let seg = |i: usize| (pts[i], pts[(i + 1) % n]);
    for i in 0..n {
        for j in (i + 2)..n {
            if i == 0 && j == n - 1 {
                continue; // adjacent through the wrap
            }
            let (a, b) = seg(i);
            let (c, d) = seg(j);
            if segments_cross(a, b, c, d) {
                return true;
            }
        }
    }
    false
}

fn segments_cross(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> bool {
    let orient = |p: Complex64, q: Complex64, r: Complex64| {
        (q.re - p.re) * (r.im - p.im) - (q.im - p.im) * (r.re - p.re)
    };
    let (o1, o2) = (orient(a, b, c), orient(a, b, d));
    let (o3, o4) = (orient(c, d, a), orient(c, d, b));
    o1 * o2 < 0.0 && o3 * o4 < 0.0
}
