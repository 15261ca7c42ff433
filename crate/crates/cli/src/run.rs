//! Subcommand orchestration: build the objects, run the analyses, render
//! the report and decide the exit status (0 = checks pass, 1 = a property
//! check failed, 2 = input/config error).

// NaN-robust validation guards use negated comparisons on purpose.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use anyhow::{anyhow, Result};
use std::f64::consts::PI;

use hqmap::boundary::BoundaryMap;
use hqmap::bounds::{self, LogValue};
use hqmap::curve::JordanCurve;
use hqmap::harmonic::{analyze, HarmonicMap};
use hqmap::hilbert::{conjugate_identity_check, hilbert_pv, hilbert_spectral, CircleFunction};
use hqmap::kernels::{boundary_jacobian, jacobian_upper_bound};
use hqmap::presets;
use hqmap::qc;

use crate::config::{self, Format};
use crate::report::*;

pub struct Rendered {
    pub text: String,
    pub exit: i32,
}

fn build_map(arg: &str, n: usize, curve_m: usize) -> Result<HarmonicMap> {
    let spec = config::load_map_spec(arg, n)?;
    let boundary = BoundaryMap::from_spec(&spec, n, curve_m).map_err(|e| anyhow!("{e}"))?;
    analyze(boundary).map_err(|e| anyhow!("{e}"))
}

pub fn analyze_cmd(
    map_arg: &str,
    n: usize,
    curve_m: usize,
    grid_radii: usize,
    grid_angles: usize,
    k_assert: Option<f64>,
    seed: u64,
    tol: f64,
    format: Format,
) -> Result<Rendered> {
    config::validate_resolution("--n", n)?;
    config::validate_resolution("--curve-m", curve_m)?;
    config::validate_tolerance("--tol", tol)?;
    if grid_radii == 0 || grid_radii > 32 || grid_angles == 0 || grid_angles > 4096 {
        return Err(anyhow!("grid sizes out of range"));
    }

    let map = build_map(map_arg, n, curve_m)?;
    let radii = qc::boundary_approaching_radii(grid_radii);
    let dil = qc::dilatation_field(&map, &radii, grid_angles).map_err(|e| anyhow!("{e}"))?;
    let scan = qc::empirical_lipschitz(&map, 256, 4, grid_angles.min(64)).map_err(|e| anyhow!("{e}"))?;
    let norm = qc::normalization_check(&map, 1e-6).map_err(|e| anyhow!("{e}"))?;

    let convex = map.boundary().target().is_convex();
    let mut failed: Vec<String> = Vec::new();

    let heinz = if convex {
        let h = qc::heinz_lower_check(&map).map_err(|e| anyhow!("{e}"))?;
        if !h.pass {
            failed.push("heinz_lower".into());
        }
        Some(HeinzJson {
            pass: h.pass,
            margin: h.margin,
        })
    } else {
        None
    };
    let jac_lower = if convex {
        let j = qc::jacobian_lower_check(&map).map_err(|e| anyhow!("{e}"))?;
        if !j.pass {
            failed.push("jacobian_lower".into());
        }
        Some(JacobianLowerJson {
            pass: j.pass,
            margin: j.margin,
            kappa: j.kappa,
            delta: j.delta,
        })
    } else {
        None
    };
    let criterion = if convex {
        let c = qc::convex_qc_criterion(&map, qc::DEFAULT_LOG_THRESHOLD, qc::DEFAULT_HILBERT_THRESHOLD)
            .map_err(|e| anyhow!("{e}"))?;
        if !c.consistent {
            failed.push("criterion_consistency".into());
        }
        Some(CriterionJson {
            log_df_sup: c.log_df_sup,
            hilbert_sup: c.hilbert_sup,
            predicted_qc: c.predicted_qc,
            measured_sup_k: c.measured_sup_k,
            consistent: c.consistent,
        })
    } else {
        None
    };
    let k_assertion = k_assert.map(|k| {
        let pass = dil.validates_k(k, tol);
        if !pass {
            failed.push("k_assertion".into());
        }
        KAssertionJson { requested: k, pass }
    });

    let grid = dil
        .points
        .iter()
        .map(|p| GridPoint {
            r: p.r,
            theta: p.theta,
            k: p.k,
            jacobian: p.jacobian,
            df_norm: p.df_norm,
            angular_norm: p.angular_norm,
        })
        .collect();

    let exit = if failed.is_empty() { 0 } else { 1 };
    let rep = AnalyzeReport {
        map: map_arg.to_string(),
        n,
        seed,
        k_sup: dil.sup_k,
        big_k: dil.big_k,
        j_min: dil.jac_min,
        lipschitz_sup: scan.sup_ratio,
        max_angular_derivative: scan.max_angular_derivative,
        sense_preserving: dil.sense_preserving,
        not_qc: dil.not_qc,
        tail_energy: map.tail_energy(),
        normalization: NormalizationJson {
            pass: norm.pass,
            arcs: norm.arcs,
        },
        heinz,
        jacobian_lower: jac_lower,
        criterion,
        k_assertion,
        failed_checks: failed,
        grid,
    };
    let text = match format {
        Format::Json => to_json(&rep),
        Format::Csv => analyze_csv(&rep),
    };
    Ok(Rendered { text, exit })
}

pub fn certify_cmd(
    map_arg: Option<&str>,
    curve_arg: Option<&str>,
    k_flag: Option<f64>,
    n: usize,
    curve_m: usize,
    format: Format,
) -> Result<Rendered> {
    config::validate_resolution("--n", n)?;
    config::validate_resolution("--curve-m", curve_m)?;

    let (k, curve, measured, empirical): (f64, JordanCurve, Option<f64>, Option<f64>) =
        match (map_arg, curve_arg) {
            (Some(arg), None) => {
                let map = build_map(arg, n, curve_m)?;
                let dil = qc::dilatation_field(&map, &qc::boundary_approaching_radii(12), 64)
                    .map_err(|e| anyhow!("{e}"))?;
                if dil.not_qc {
                    let rep = CertifyFailure {
                        available: false,
                        reason: format!(
                            "map is not quasiconformal (sup k = {:.6}); no certificate",
                            dil.sup_k
                        ),
                    };
                    return Ok(Rendered {
                        text: to_json(&rep),
                        exit: 1,
                    });
                }
                let scan = qc::empirical_lipschitz(&map, 256, 4, 32).map_err(|e| anyhow!("{e}"))?;
                (
                    dil.big_k.max(1.0),
                    map.boundary().target().clone(),
                    Some(dil.big_k),
                    Some(scan.sup_ratio),
                )
            }
            (None, Some(arg)) => {
                let k = k_flag.ok_or_else(|| anyhow!("--curve mode needs --K"))?;
                if k < 1.0 {
                    return Err(anyhow!("--K must be >= 1"));
                }
                let spec = config::load_curve_spec(arg)?;
                (
                    k,
                    JordanCurve::from_spec(&spec, curve_m).map_err(|e| anyhow!("{e}"))?,
                    None,
                    None,
                )
            }
            _ => return Err(anyhow!("certify needs exactly one of --map or --curve")),
        };

    let omega = curve.tangent_modulus(12).map_err(|e| anyhow!("{e}"))?;
    let cert = match bounds::lipschitz_certificate(k, &curve, &omega) {
        Ok(c) => c,
        Err(hqmap::Error::CertificateUnavailable(reason)) => {
            let rep = CertifyFailure {
                available: false,
                reason,
            };
            return Ok(Rendered {
                text: to_json(&rep),
                exit: 1,
            });
        }
        Err(e) => return Err(anyhow!("{e}")),
    };

    let rep = CertifyReport {
        k: cert.k,
        b_gamma: cert.b_gamma,
        alpha: cert.alpha,
        lambda: cert.lambda,
        b_end: cert.b_end,
        q_value: cert.q_scale.value(),
        upsilon: cert.upsilon,
        c1: cert.c1,
        l_bound: cert.l_bound.value(),
        audit: CertificateAudit {
            x_k_count: cert.breakpoint_count,
            quadrature_errors: QuadratureErrors {
                upsilon_error: cert.upsilon_error,
                dini_levels: cert.dini_levels,
            },
            q_exponent: cert.q,
            log10_q: cert.q_scale.log10(),
            log10_l_bound: cert.l_bound.log10(),
            measured_k: measured,
            empirical_lipschitz: empirical,
        },
    };
    let text = match format {
        Format::Json => to_json(&rep),
        Format::Csv => certify_csv(&rep),
    };
    Ok(Rendered { text, exit: 0 })
}

pub fn hilbert_cmd(map_arg: &str, n: usize, tol: f64, format: Format) -> Result<Rendered> {
    config::validate_resolution("--n", n)?;
    config::validate_tolerance("--tol", tol)?;
    let map = build_map(map_arg, n, 512.min(n))?;
    let f = CircleFunction::new(map.boundary().derivative().to_vec()).map_err(|e| anyhow!("{e}"))?;

    let pv = hilbert_pv(&f).map_err(|e| anyhow!("{e}"))?;
    let sp = hilbert_spectral(&f).map_err(|e| anyhow!("{e}"))?;
    let pv_vs_spectral = pv.values.max_deviation(&sp);
    let mean_abs = pv.values.mean().norm();

    let hh = hilbert_spectral(&sp).map_err(|e| anyhow!("{e}"))?;
    let mean = f.mean();
    let involution = hh
        .samples()
        .iter()
        .zip(f.samples())
        .map(|(v, x)| (v + (x - mean)).norm())
        .fold(0.0f64, f64::max);
    let conj = conjugate_identity_check(&f).map_err(|e| anyhow!("{e}"))?;

    let mut failed = Vec::new();
    if pv_vs_spectral > tol {
        failed.push("pv_vs_spectral".to_string());
    }
    if involution > 1e-6 {
        failed.push("involution".to_string());
    }
    if conj > 1e-8 {
        failed.push("conjugate_identity".to_string());
    }
    if mean_abs > 1e-9 * (1.0 + f.max_abs()) {
        failed.push("mean_zero".to_string());
    }
    let pass = failed.is_empty();

    let rep = HilbertReport {
        map: map_arg.to_string(),
        n,
        pv_error_estimate: pv.error_estimate,
        pv_vs_spectral_max: pv_vs_spectral,
        involution_max: involution,
        conjugate_identity_max: conj,
        output_mean_abs: mean_abs,
        pass,
        failed_checks: failed,
    };
    let text = match format {
        Format::Json => to_json(&rep),
        Format::Csv => {
            let mut out = String::from("t,pv_re,pv_im,spectral_re,spectral_im\n");
            for (j, (a, b)) in pv.values.samples().iter().zip(sp.samples()).enumerate() {
                let t = 2.0 * PI * j as f64 / n as f64;
                out.push_str(&format!("{t},{},{},{},{}\n", a.re, a.im, b.re, b.im));
            }
            out
        }
    };
    Ok(Rendered {
        text,
        exit: if pass { 0 } else { 1 },
    })
}

pub fn jacobian_cmd(map_arg: &str, n: usize, taus: usize, format: Format) -> Result<Rendered> {
    config::validate_resolution("--n", n)?;
    if taus == 0 || taus > 4096 {
        return Err(anyhow!("--taus out of range"));
    }
    let map = build_map(map_arg, n, 1024.min(n))?;
    let b = map.boundary();
    let omega = b.target().tangent_modulus(11).map_err(|e| anyhow!("{e}"))?;
    let floor = 1e-8 * b.max_derivative();

    let mut rows = Vec::with_capacity(taus);
    let mut skipped = 0usize;
    let mut pass = true;
    for i in 0..taus {
        let tau = 2.0 * PI * i as f64 / taus as f64;
        if b.eval_derivative(tau).norm() <= floor {
            skipped += 1; // radial limit only exists a.e.; this is the exception
            continue;
        }
        let j = boundary_jacobian(b, tau).map_err(|e| anyhow!("{e}"))?;
        let ub = jacobian_upper_bound(b, &omega, tau).map_err(|e| anyhow!("{e}"))?;
        let within = j.value <= ub + 1e-9;
        pass &= within;
        rows.push(JacobianRow {
            tau,
            value: j.value,
            remainder_bound: j.remainder_bound,
            upper_bound: ub,
            ratio: if ub > 0.0 { j.value / ub } else { f64::NAN },
            within_bound: within,
        });
    }
    let rep = JacobianReport {
        map: map_arg.to_string(),
        n,
        taus,
        skipped_degenerate: skipped,
        pass,
        rows,
    };
    let text = match format {
        Format::Json => to_json(&rep),
        Format::Csv => jacobian_csv(&rep),
    };
    Ok(Rendered {
        text,
        exit: if rep.pass { 0 } else { 1 },
    })
}

#[allow(clippy::too_many_arguments)]
pub fn eremenko_cmd(
    profile: Option<&str>,
    b_end: f64,
    q: f64,
    big_q: f64,
    trials: Option<usize>,
    seed: u64,
    depth: usize,
    format: Format,
) -> Result<Rendered> {
    if !(8..=100_000).contains(&depth) {
        return Err(anyhow!("--depth out of range"));
    }
    match (profile, trials) {
        (Some(spec), None) => {
            if !(b_end > 0.0) || !(q > 0.0) || !(big_q > 0.0) {
                return Err(anyhow!("--B, --q and --Q must be positive"));
            }
            let a = config::parse_profile(spec)?;
            let m = bounds::eremenko_majorant(
                &a,
                b_end,
                q,
                LogValue::from_value(big_q).map_err(|e| anyhow!("{e}"))?,
                depth,
            )
            .map_err(|e| anyhow!("{e}"))?;
            let integral = m.majorant_integral(&a);
            let ratio = integral / m.mass;
            let convexity = m.convexity_defect(200);
            let roundtrip = m.inverse_roundtrip_defect(100);
            let pass = ratio <= 4.0 && convexity <= 1e-9 && roundtrip <= 1e-10;
            let rep = EremenkoSingleReport {
                profile: spec.to_string(),
                b_end,
                q,
                big_q,
                mass: m.mass,
                integral,
                ratio,
                ratio_bound: 4.0,
                convexity_defect: convexity,
                roundtrip_defect: roundtrip,
                breakpoints: m.depth() + 1,
                pass,
            };
            let text = match format {
                Format::Json => to_json(&rep),
                Format::Csv => {
                    let mut out = String::from("k,ln_x_k\n");
                    for k in 0..=m.depth() {
                        out.push_str(&format!("{k},{}\n", m.breakpoint_ln(k).unwrap()));
                    }
                    out
                }
            };
            Ok(Rendered {
                text,
                exit: if pass { 0 } else { 1 },
            })
        }
        (None, Some(count)) => {
            if count == 0 || count > 10_000 {
                return Err(anyhow!("--trials out of range"));
            }
            let trials = bounds::majorant_trials(seed, count, depth.min(64))
                .map_err(|e| anyhow!("{e}"))?;
            let (worst_ratio, worst_convexity, worst_roundtrip) = (
                trials.worst_ratio,
                trials.worst_convexity_defect,
                trials.worst_roundtrip_defect,
            );
            let unit = hqmap::bounds::AFunction::constant(1.0);
            let um = bounds::eremenko_majorant(
                &unit,
                1.0,
                3.0,
                LogValue::from_value(2.0).unwrap(),
                64,
            )
            .map_err(|e| anyhow!("{e}"))?;
            let unit_ratio = um.majorant_integral(&unit) / um.mass;
            let pass = worst_ratio <= 4.0
                && worst_convexity <= 1e-9
                && worst_roundtrip <= 1e-10
                && (unit_ratio - 1.5).abs() <= 1e-9;
            let rep = EremenkoTrialsReport {
                trials: count,
                seed,
                worst_ratio,
                ratio_bound: 4.0,
                worst_convexity_defect: worst_convexity,
                worst_roundtrip_defect: worst_roundtrip,
                unit_profile_ratio: unit_ratio,
                pass,
            };
            let text = match format {
                Format::Json => to_json(&rep),
                Format::Csv => format!(
                    "field,value\ntrials,{}\nseed,{}\nworst_ratio,{}\nworst_convexity_defect,{}\nworst_roundtrip_defect,{}\nunit_profile_ratio,{}\npass,{}\n",
                    rep.trials, rep.seed, rep.worst_ratio, rep.worst_convexity_defect,
                    rep.worst_roundtrip_defect, rep.unit_profile_ratio, rep.pass
                ),
            };
            Ok(Rendered {
                text,
                exit: if pass { 0 } else { 1 },
            })
        }
        _ => Err(anyhow!("eremenko needs exactly one of --A <profile> or --trials <n>")),
    }
}

pub fn presets_cmd(format: Format) -> Rendered {
    let rep = PresetsReport {
        presets: presets::preset_names()
            .into_iter()
            .map(|(name, description)| PresetEntry {
                name: name.to_string(),
                description: description.to_string(),
            })
            .collect(),
    };
    let text = match format {
        Format::Json => to_json(&rep),
        Format::Csv => presets_csv(&rep),
    };
    Rendered { text, exit: 0 }
}

