//! `bergman`: classification and numerical witnesses for affine composition
//! operators on weighted Bergman spaces of the right half-plane.
//!
//! Exit codes: 0 success, 1 a checked bound or criterion failed, 2 invalid input.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::CommonArgs;

#[derive(Parser)]
#[command(name = "bergman", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Debug, Clone, Default)]
struct VectorArgs {
    /// Kernel vector JSON file ({"alpha", "terms": [{"w_re","w_im","c_re","c_im"}]})
    #[arg(long)]
    vector: Option<PathBuf>,
    /// Use the kernel k_w at this point instead of k_1
    #[arg(long, allow_hyphen_values = true)]
    point: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Full classification with the result behind each property
    Classify {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Spectrum descriptor and SVG plot
    Spectrum {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Orbit norms ‖C_φⁿ f‖ by both evaluation routes
    Orbit {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        vector: VectorArgs,
    },
    /// Norm identity/inequality on random vectors, and the lower estimate for a < 1
    Estimates {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        vector: VectorArgs,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// Shadow a pseudo-orbit (a > 1, or a < 1 with Re b = 0)
    Shadow {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        vector: VectorArgs,
        /// Use the sum-of-iterates pseudo-orbit instead of random perturbations
        #[arg(long)]
        iterate_sum: bool,
    },
    /// Drift witness against shadowing at an interior fixed point
    Witness {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Absolute Cesàro averages of an orbit
    Cesaro {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        vector: VectorArgs,
        /// Report the first n with average above threshold·‖f‖
        #[arg(long, default_value_t = 10.0)]
        threshold: f64,
    },
    /// Bergman area-integral norm of LF against the closed-form μ_α norm
    LaplaceCheck {
        #[command(flatten)]
        common: CommonArgs,
        /// Profile JSON file; defaults to t^(α+1) e^(−t)
        #[arg(long)]
        profile: Option<PathBuf>,
    },
    /// Run every acceptance criterion
    Suite {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        quick: bool,
    },
    /// Classification CSV over a grid of parameters (the built-in panel by default)
    Sweep {
        #[command(flatten)]
        common: CommonArgs,
        /// Comma-separated multipliers
        #[arg(long)]
        a_list: Option<String>,
        /// Comma-separated translations RE+IMi
        #[arg(long, allow_hyphen_values = true)]
        b_list: Option<String>,
        /// Comma-separated weights
        #[arg(long, allow_hyphen_values = true)]
        alpha_list: Option<String>,
    },
}

fn run(command: Command) -> commands::CmdResult {
    match command {
        Command::Classify { common } => commands::classify_cmd(&common.resolve()?),
        Command::Spectrum { common } => commands::spectrum_cmd(&common.resolve()?),
        Command::Orbit { common, vector } => {
            let cfg = common.resolve()?;
            let f = commands::test_vector(&cfg, vector.vector.as_deref(), vector.point.as_deref())?;
            commands::orbit_cmd(&cfg, &f)
        }
        Command::Estimates { common, vector, samples } => {
            let cfg = common.resolve()?;
            let f = commands::test_vector(&cfg, vector.vector.as_deref(), vector.point.as_deref())?;
            commands::estimates_cmd(&cfg, &f, samples)
        }
        Command::Shadow { common, vector, iterate_sum } => {
            let cfg = common.resolve()?;
            let f = commands::test_vector(&cfg, vector.vector.as_deref(), vector.point.as_deref())?;
            commands::shadow_cmd(&cfg, &f, iterate_sum)
        }
        Command::Witness { common } => commands::witness_cmd(&common.resolve()?),
        Command::Cesaro { common, vector, threshold } => {
            let cfg = common.resolve()?;
            let f = commands::test_vector(&cfg, vector.vector.as_deref(), vector.point.as_deref())?;
            commands::cesaro_cmd(&cfg, &f, threshold)
        }
        Command::LaplaceCheck { common, profile } => commands::laplace_cmd(&common.resolve()?, profile.as_deref()),
        Command::Suite { common, quick } => commands::suite_cmd(&common.resolve()?, quick),
        Command::Sweep { common, a_list, b_list, alpha_list } => {
            commands::sweep_cmd(&common.resolve()?, a_list.as_deref(), b_list.as_deref(), alpha_list.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
