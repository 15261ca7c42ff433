//! Run configuration and input-spec loading.

// NaN-robust validation guards use negated comparisons on purpose.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use anyhow::{anyhow, bail, Context, Result};
use hqmap::boundary::BoundaryMapSpec;
use hqmap::curve::CurveSpec;
use hqmap::presets;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Resolutions must be powers of two within [64, 16384].
pub fn validate_resolution(name: &str, n: usize) -> Result<()> {
    if !(64..=16384).contains(&n) || n & (n - 1) != 0 {
        bail!("{name} must be a power of two in [64, 16384], got {n}");
    }
    Ok(())
}

pub fn validate_tolerance(name: &str, tol: f64) -> Result<()> {
    if !(tol > 0.0) || !tol.is_finite() {
        bail!("{name} must be positive and finite, got {tol}");
    }
    Ok(())
}

/// A spec argument is a preset name, inline JSON, or a path to a JSON file.
pub fn load_map_spec(arg: &str, n: usize) -> Result<BoundaryMapSpec> {
    if let Ok(spec) = presets::map_preset(arg, n) {
        return Ok(spec);
    }
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg)
            .with_context(|| format!("'{arg}' is neither a preset nor a readable spec file"))?
    };
    serde_json::from_str(&text).with_context(|| format!("malformed boundary-map spec in '{arg}'"))
}

pub fn load_curve_spec(arg: &str) -> Result<CurveSpec> {
    if let Ok(spec) = presets::curve_preset(arg) {
        return Ok(spec);
    }
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg)
            .with_context(|| format!("'{arg}' is neither a preset nor a readable spec file"))?
    };
    serde_json::from_str(&text).with_context(|| format!("malformed curve spec in '{arg}'"))
}

/// Parse an integrable-profile spec: "const:<c>", "power:<c>:<a>", or a
/// '+'-joined mixture of those.
pub fn parse_profile(arg: &str) -> Result<hqmap::bounds::AFunction> {
    use hqmap::bounds::{AFunction, PowerTerm};
    let mut terms = Vec::new();
    for part in arg.split('+') {
        let fields: Vec<&str> = part.trim().split(':').collect();
        match fields.as_slice() {
            ["const", c] => terms.push(PowerTerm {
                coeff: c.parse().with_context(|| format!("bad constant '{c}'"))?,
                exponent: 0.0,
            }),
            ["power", c, a] => terms.push(PowerTerm {
                coeff: c.parse().with_context(|| format!("bad coefficient '{c}'"))?,
                exponent: a.parse().with_context(|| format!("bad exponent '{a}'"))?,
            }),
            _ => return Err(anyhow!("unknown profile term '{part}' (use const:<c> or power:<c>:<a>)")),
        }
    }
    Ok(AFunction::PowerMix(terms))
}
