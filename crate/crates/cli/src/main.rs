#![allow(clippy::too_many_arguments)] // clap subcommand plumbing

//! Command-line front end: parses curve/map specs, runs the analyses and
//! certificate pipeline, and writes machine-readable reports.
//!
//! Exit status: 0 = all checks pass, 1 = a property check failed (the
//! report says which), 2 = input/config error.

mod config;
mod report;
mod run;

use clap::{Parser, Subcommand};
use config::Format;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "hqmap",
    version,
    about = "Harmonic and quasiconformal mapping analysis on the unit disk"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dilatation field, Lipschitz scan, normalization and convex-target checks
    Analyze {
        /// Boundary map: preset name, inline JSON, or spec file path
        #[arg(long)]
        map: String,
        /// Boundary resolution (power of two in [64, 16384])
        #[arg(long, default_value_t = 1024)]
        n: usize,
        /// Target-curve resolution (power of two in [64, 16384])
        #[arg(long = "curve-m", default_value_t = 1024)]
        curve_m: usize,
        /// Number of boundary-approaching radii 1 - 2^{-j}
        #[arg(long = "grid-radii", default_value_t = 8)]
        grid_radii: usize,
        #[arg(long = "grid-angles", default_value_t = 64)]
        grid_angles: usize,
        /// Validate a user-supplied distortion constant
        #[arg(long = "K")]
        k_assert: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Assemble the certified Lipschitz constant for (K, curve) or a map
    Certify {
        #[arg(long, conflicts_with = "curve")]
        map: Option<String>,
        #[arg(long)]
        curve: Option<String>,
        /// Distortion constant (required with --curve)
        #[arg(long = "K")]
        k: Option<f64>,
        #[arg(long, default_value_t = 1024)]
        n: usize,
        #[arg(long = "curve-m", default_value_t = 1024)]
        curve_m: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Hilbert transform consistency report for a boundary derivative
    Hilbert {
        #[arg(long)]
        map: String,
        #[arg(long, default_value_t = 4096)]
        n: usize,
        #[arg(long, default_value_t = 1e-3)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Boundary Jacobian against its integral upper bound
    Jacobian {
        #[arg(long)]
        map: String,
        #[arg(long, default_value_t = 2048)]
        n: usize,
        #[arg(long, default_value_t = 64)]
        taus: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Convex majorant construction and its certificate checks
    Eremenko {
        /// Profile spec like "const:1" or "power:1:-0.5+const:2"
        #[arg(long = "A")]
        profile: Option<String>,
        #[arg(long = "B", default_value_t = 1.0)]
        b_end: f64,
        #[arg(long, default_value_t = 3.0)]
        q: f64,
        #[arg(long = "Q", default_value_t = 2.0)]
        big_q: f64,
        /// Run the seeded randomized suite instead of a single profile
        #[arg(long, conflicts_with = "profile")]
        trials: Option<usize>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 64)]
        depth: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// List the built-in curve and map specs
    Presets {
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

fn main() {
    let cli = Cli::parse();
    let (result, out) = match cli.command {
        Command::Analyze {
            map,
            n,
            curve_m,
            grid_radii,
            grid_angles,
            k_assert,
            seed,
            tol,
            out,
            format,
        } => (
            run::analyze_cmd(
                &map,
                n,
                curve_m,
                grid_radii,
                grid_angles,
                k_assert,
                seed,
                tol,
                format,
            ),
            out,
        ),
        Command::Certify {
            map,
            curve,
            k,
            n,
            curve_m,
            out,
            format,
        } => (
            run::certify_cmd(map.as_deref(), curve.as_deref(), k, n, curve_m, format),
            out,
        ),
        Command::Hilbert {
            map,
            n,
            tol,
            out,
            format,
        } => (run::hilbert_cmd(&map, n, tol, format), out),
        Command::Jacobian {
            map,
            n,
            taus,
            out,
            format,
        } => (run::jacobian_cmd(&map, n, taus, format), out),
        Command::Eremenko {
            profile,
            b_end,
            q,
            big_q,
            trials,
            seed,
            depth,
            out,
            format,
        } => (
            run::eremenko_cmd(
                profile.as_deref(),
                b_end,
                q,
                big_q,
                trials,
                seed,
                depth,
                format,
            ),
            out,
        ),
        Command::Presets { out, format } => (Ok(run::presets_cmd(format)), out),
    };

    match result {
        Ok(rendered) => {
            if let Some(path) = out {
                if let Err(e) = std::fs::write(&path, &rendered.text) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    std::process::exit(2);
                }
                eprintln!("wrote {}", path.display());
            } else {
                print!("{}", rendered.text);
            }
            std::process::exit(rendered.exit);
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
    }
}
