//! Built-in curve and boundary-map specs used by the CLI and the test
//! suites: circle, ellipse, the affine and quadratic harmonic polynomial
//! maps, a boundary map with vanishing derivative (not q.c.), and a smooth
//! nonconvex star curve.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::boundary::{BoundaryMap, BoundaryMapSpec};
use crate::curve::CurveSpec;
use crate::error::{Error, Result};
use crate::harmonic::{analyze, HarmonicMap};

pub const DEFAULT_N: usize = 1024;
pub const DEFAULT_CURVE_M: usize = 1024;

/// Names and one-line descriptions of the built-in specs.
pub fn preset_names() -> Vec<(&'static str, &'static str)> {
    vec![
        ("circle", "unit circle (or circle:r=<r>)"),
        ("ellipse:a=2,b=1", "ellipse with semiaxes a, b"),
        ("star", "smooth five-petal star curve (nonconvex)"),
        ("identity", "identity boundary map e^{it}"),
        ("affine:a=0.5", "z + a conj(z): K = (1+a)/(1-a)"),
        ("quadratic:b=0.25", "z + b conj(z^2): sup k = 2b on the boundary"),
        ("nonqc", "e^{i(t - sin t)}: derivative vanishes, not q.c."),
    ]
}

fn parse_params(s: &str) -> Vec<(String, f64)> {
    s.split(',')
        .filter_map(|kv| {
            let mut it = kv.splitn(2, '=');
            let k = it.next()?.trim().to_string();
            let v = it.next()?.trim().parse().ok()?;
            Some((k, v))
        })
        .collect()
}

fn param(params: &[(String, f64)], key: &str) -> Option<f64> {
    params.iter().find(|(k, _)| k == key).map(|(_, v)| *v)
}

/// Expand a curve preset name ("circle", "circle:r=2", "ellipse:a=2,b=1",
/// "star") into a curve spec.
pub fn curve_preset(name: &str) -> Result<CurveSpec> {
    let (head, rest) = match name.split_once(':') {
        Some((h, r)) => (h, r),
        None => (name, ""),
    };
    let params = parse_params(rest);
    match head {
        "circle" => Ok(CurveSpec::Circle {
            r: param(&params, "r").unwrap_or(1.0),
        }),
        "ellipse" => Ok(CurveSpec::Ellipse {
            a: param(&params, "a").unwrap_or(2.0),
            b: param(&params, "b").unwrap_or(1.0),
        }),
        "star" => Ok(star_curve_spec()),
        other => Err(Error::InvalidInput(format!("unknown curve preset '{other}'"))),
    }
}

/// gamma(theta) = e^{i theta} (1 + 0.16 cos 5 theta): smooth, simple,
/// nonconvex. Centered spectrum, frequencies -6..6.
pub fn star_curve_spec() -> CurveSpec {
    let mut coeffs = vec![[0.0, 0.0]; 13];
    coeffs[7] = [1.0, 0.0]; // frequency 1
    coeffs[2] = [0.08, 0.0]; // frequency -4
    coeffs[12] = [0.08, 0.0]; // frequency 6
    CurveSpec::Fourier { coeffs }
}

/// Expand a map preset name into a boundary-map spec at resolution `n`.
pub fn map_preset(name: &str, n: usize) -> Result<BoundaryMapSpec> {
    let (head, rest) = match name.split_once(':') {
        Some((h, r)) => (h, r),
        None => (name, ""),
    };
    let params = parse_params(rest);
    match head {
        "identity" => Ok(BoundaryMapSpec::Trig {
            coeffs: vec![[1.0, 1.0, 0.0]],
        }),
        "affine" => {
            let a = param(&params, "a").unwrap_or(0.5);
            Ok(BoundaryMapSpec::Trig {
                coeffs: vec![[1.0, 1.0, 0.0], [-1.0, a, 0.0]],
            })
        }
        "quadratic" => {
            let b = param(&params, "b").unwrap_or(0.25);
            Ok(BoundaryMapSpec::Trig {
                coeffs: vec![[1.0, 1.0, 0.0], [-2.0, b, 0.0]],
            })
        }
        "nonqc" => Ok(BoundaryMapSpec::Composed {
            curve: CurveSpec::Circle { r: 1.0 },
            correspondence: "sampled".into(),
            psi: Some(
                (0..n)
                    .map(|j| {
                        let t = 2.0 * PI * j as f64 / n as f64;
                        t - t.sin()
                    })
                    .collect(),
            ),
        }),
        "star" => Ok(BoundaryMapSpec::Composed {
            curve: star_curve_spec(),
            correspondence: "identity".into(),
            psi: None,
        }),
        other => Err(Error::InvalidInput(format!("unknown map preset '{other}'"))),
    }
}

pub fn identity_map(n: usize) -> Result<HarmonicMap> {
    analyze(BoundaryMap::from_trig(
        &[(1, Complex64::new(1.0, 0.0))],
        n,
        DEFAULT_CURVE_M.min(n),
    )?)
}

/// z + a conj(z); target is the ellipse with semiaxes 1+a, 1-a.
pub fn affine_map(a: f64, n: usize) -> Result<HarmonicMap> {
    analyze(BoundaryMap::from_trig(
        &[(1, Complex64::new(1.0, 0.0)), (-1, Complex64::new(a, 0.0))],
        n,
        DEFAULT_CURVE_M.min(n * 2),
    )?)
}

/// z + b conj(z^2); convex target for b <= 1/4.
pub fn quadratic_map(b: f64, n: usize) -> Result<HarmonicMap> {
    analyze(BoundaryMap::from_trig(
        &[(1, Complex64::new(1.0, 0.0)), (-2, Complex64::new(b, 0.0))],
        n,
        DEFAULT_CURVE_M.min(n * 2),
    )?)
}

/// Boundary correspondence psi(t) = t - sin t on the unit circle: the
/// derivative vanishes at t = 0, so the extension is not q.c.
pub fn nonqc_map(n: usize) -> Result<HarmonicMap> {
    let spec = map_preset("nonqc", n)?;
    analyze(BoundaryMap::from_spec(&spec, n, DEFAULT_CURVE_M.min(n))?)
}

/// Constant-speed map onto the star curve.
pub fn star_map(n: usize) -> Result<HarmonicMap> {
    let spec = map_preset("star", n)?;
    analyze(BoundaryMap::from_spec(&spec, n, DEFAULT_CURVE_M.min(n))?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn list_contains_circle_and_affine_expansion() {
        let names = preset_names();
        assert!(names.iter().any(|(n, _)| *n == "circle"));
        match map_preset("affine:a=0.5", 256).unwrap() {
            BoundaryMapSpec::Trig { coeffs } => {
                assert_eq!(coeffs, vec![[1.0, 1.0, 0.0], [-1.0, 0.5, 0.0]]);
            }
            other => panic!("unexpected expansion {other:?}"),
        }
    }

    #[test]
    fn nonqc_expands_to_sampled_correspondence() {
        match map_preset("nonqc", 128).unwrap() {
            BoundaryMapSpec::Composed { psi: Some(psi), .. } => {
                assert_eq!(psi.len(), 128);
                assert!((psi[1] - (2.0 * PI / 128.0 - (2.0 * PI / 128.0).sin())).abs() < 1e-15);
            }
            other => panic!("unexpected expansion {other:?}"),
        }
    }

    #[test]
    fn star_is_a_valid_nonconvex_curve() {
        let c = crate::curve::JordanCurve::from_spec(&star_curve_spec(), 512).unwrap();
        assert!(!c.is_convex());
        assert!(c.enclosed_area() > 0.0);
    }

    #[test]
    fn quadratic_target_is_convex() {
        let m = quadratic_map(0.25, 256).unwrap();
        assert!(m.boundary().target().is_convex());
    }
}
