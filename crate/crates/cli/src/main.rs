//! `oscibif` — bifurcation curves for −(b‖u′‖₂² + 1)u″ = λ(u^p + u sin²u).
//!
//! Two subcommands:
//!   sweep   tabulate exact and/or asymptotic curves over an amplitude grid
//!   verify  run the self-check battery (shooting closure, identity checks)
//!
//! Exit codes: 0 success, 1 verification failure, 2 configuration error,
//! 3 numerical non-convergence.

mod report;
mod sweep;
mod verify;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use oscibif_core::{Error, ProblemParams, Truncation};

#[derive(Parser)]
#[command(name = "oscibif", version, about = "Bifurcation curves of a 1-D Kirchhoff problem with an oscillating nonlinearity")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Scale {
    Log,
    Linear,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum Mode {
    Exact,
    Asym,
    Both,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum Format {
    Csv,
    Json,
    Text,
}

/// Flags shared by both subcommands.
#[derive(Parser)]
struct CommonArgs {
    /// Superlinear exponent p (> 1).
    #[arg(long, value_name = "P")]
    p: f64,

    /// Kirchhoff coefficient b (≥ 0).
    #[arg(long, default_value_t = 0.0, value_name = "B")]
    b: f64,

    /// Smallest amplitude of the grid.
    #[arg(long, value_name = "A")]
    alpha_min: f64,

    /// Largest amplitude of the grid.
    #[arg(long, value_name = "A")]
    alpha_max: f64,

    /// Number of grid points (≥ 2).
    #[arg(long, default_value_t = 50)]
    points: usize,

    /// Grid spacing.
    #[arg(long, value_enum, default_value_t = Scale::Log)]
    scale: Scale,

    /// Write output here instead of stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<std::path::PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate the bifurcation curves over an amplitude grid.
    Sweep {
        #[command(flatten)]
        common: CommonArgs,

        /// Which columns to fill.
        #[arg(long, value_enum, default_value_t = Mode::Both)]
        mode: Mode,

        /// Bracket truncation: "full" or a positive term count.
        #[arg(long, default_value = "full")]
        truncation: String,

        /// Output format.
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Run the verification battery and report pass/fail.
    Verify {
        #[command(flatten)]
        common: CommonArgs,

        /// Shooting integrator tolerance; residual budgets scale with it.
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,

        /// Output format (text or json).
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

fn config_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn exit_for(err: &Error) -> ExitCode {
    match err {
        Error::Domain(_) => ExitCode::from(2),
        _ => ExitCode::from(3),
    }
}

fn parse_truncation(raw: &str) -> Result<Truncation, String> {
    if raw.eq_ignore_ascii_case("full") {
        return Ok(Truncation::Full);
    }
    match raw.parse::<usize>() {
        Ok(n) if n >= 1 => Ok(Truncation::Terms(n)),
        _ => Err(format!("truncation must be \"full\" or a positive integer, got \"{raw}\"")),
    }
}

/// Honor OSCIBIF_THREADS as an upper bound on worker threads.
fn init_threads() {
    if let Ok(raw) = std::env::var("OSCIBIF_THREADS") {
        if let Ok(n) = raw.trim().parse::<usize>() {
            if n >= 1 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
        }
    }
}

fn build_grid(common: &CommonArgs) -> Result<Vec<f64>, String> {
    if !(common.alpha_min > 0.0) || !common.alpha_min.is_finite() {
        return Err(format!("alpha-min must be positive, got {}", common.alpha_min));
    }
    if !(common.alpha_max > common.alpha_min) || !common.alpha_max.is_finite() {
        return Err(format!(
            "alpha-max must exceed alpha-min, got [{}, {}]",
            common.alpha_min, common.alpha_max
        ));
    }
    if common.points < 2 {
        return Err(format!("points must be at least 2, got {}", common.points));
    }
    match common.scale {
        Scale::Log => oscibif_core::timemap::log_grid(common.alpha_min, common.alpha_max, common.points)
            .map_err(|e| e.to_string()),
        Scale::Linear => {
            let n = common.points;
            let step = (common.alpha_max - common.alpha_min) / (n - 1) as f64;
            let mut g: Vec<f64> = (0..n).map(|i| common.alpha_min + step * i as f64).collect();
            g[0] = common.alpha_min;
            g[n - 1] = common.alpha_max;
            Ok(g)
        }
    }
}

fn write_output(out: &Option<std::path::PathBuf>, body: &str) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, body),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(body.as_bytes())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    init_threads();
    match cli.command {
        Command::Sweep { common, mode, truncation, format } => {
            if format == Format::Text {
                return config_error("sweep supports only csv or json output");
            }
            let truncation = match parse_truncation(&truncation) {
                Ok(t) => t,
                Err(msg) => return config_error(&msg),
            };
            let params = match ProblemParams::new(common.p, common.b) {
                Ok(p) => p,
                Err(e) => return config_error(&e.to_string()),
            };
            let grid = match build_grid(&common) {
                Ok(g) => g,
                Err(msg) => return config_error(&msg),
            };
            let outcome = sweep::run(&params, &grid, mode, truncation);
            let body = match format {
                Format::Csv => sweep::to_csv(&params, &outcome.rows),
                Format::Json => sweep::to_json(&params, &common, mode, &outcome.rows),
                Format::Text => unreachable!(),
            };
            if let Err(e) = write_output(&common.out, &body) {
                eprintln!("error: cannot write output: {e}");
                return ExitCode::from(2);
            }
            if let Some(err) = outcome.fatal {
                eprintln!("error: {err}");
                return exit_for(&err);
            }
            if outcome.nonconverged {
                eprintln!("warning: some grid points did not converge (flagged in output)");
                return ExitCode::from(3);
            }
            ExitCode::SUCCESS
        }
        Command::Verify { common, tol, format } => {
            if format == Format::Csv {
                return config_error("verify supports only text or json output");
            }
            if !(tol > 0.0 && tol < 1.0) {
                return config_error(&format!("tol must lie in (0, 1), got {tol}"));
            }
            let params = match ProblemParams::new(common.p, common.b) {
                Ok(p) => p,
                Err(e) => return config_error(&e.to_string()),
            };
            let grid = match build_grid(&common) {
                Ok(g) => g,
                Err(msg) => return config_error(&msg),
            };
            let report = match verify::run(&params, &grid, tol) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("error: {e}");
                    return exit_for(&e);
                }
            };
            let body = match format {
                Format::Json => report.to_json(&params, &common, tol),
                _ => report.to_text(),
            };
            if let Err(e) = write_output(&common.out, &body) {
                eprintln!("error: cannot write output: {e}");
                return ExitCode::from(2);
            }
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
    }
}
