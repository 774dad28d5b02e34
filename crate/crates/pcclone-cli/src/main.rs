use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use pcclone_cli::{
    check_line, cmd_bb84, cmd_bound, cmd_clone, cmd_estimate, cmd_figure, cmd_optimize, run_suite,
    Convention, OutputFormat, Suite,
};

#[derive(Parser)]
#[command(
    name = "pcclone",
    version,
    about = "Optimal cloning, estimation, and verification for equatorial qubits"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct FormatArg {
    /// Output format (falls back to the PCCLONE_FORMAT environment
    /// variable, then to csv).
    #[arg(long, value_enum, env = "PCCLONE_FORMAT", default_value = "csv")]
    format: OutputFormat,
}

#[derive(Subcommand)]
enum Command {
    /// Fidelity bound table for cloning n equatorial inputs into m outputs.
    Bound {
        /// Number of input copies (1..=64).
        #[arg(long)]
        n: u32,
        /// Largest finite output count; a measure-and-prepare limit row
        /// is always appended.
        #[arg(long = "m-max")]
        m_max: u32,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Single-input bound curves against the output count, with their
    /// limiting values, ready for plotting.
    Figure {
        /// Largest finite output count (≥ 2).
        #[arg(long = "m-max")]
        m_max: u32,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Clone one equatorial qubit with the optimal symmetric cloner.
    Clone {
        /// Equatorial phase of the input state, in radians.
        #[arg(long)]
        phi: f64,
        /// Which great circle the phase parametrizes.
        #[arg(long, value_enum, default_value = "xy")]
        convention: Convention,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Run a named self-check suite and report per-check residuals.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Replace every default tolerance with this value.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Disturbance and mutual-information figures for cloning attacks on
    /// the four phase-basis protocol states.
    Bb84 {
        #[command(flatten)]
        format: FormatArg,
    },
    /// Discretized covariant phase estimation on n copies.
    Estimate {
        /// Number of input copies (1..=16).
        #[arg(long)]
        n: u32,
        /// Number of measurement nodes (default 4n+8; at least 2n+3).
        #[arg(long)]
        nodes: Option<u32>,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Re-derive the optimal cloner amplitudes numerically.
    Optimize {
        #[command(flatten)]
        format: FormatArg,
    },
}

/// Exit code 2 signals invalid arguments, matching the code clap itself
/// uses for parse failures.
fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn emit(result: pcclone_core::Result<String>) -> ExitCode {
    match result {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run_verify(suite: Suite, tol: Option<f64>) -> ExitCode {
    if let Some(t) = tol {
        if !(t.is_finite() && t > 0.0) {
            return usage_error("--tol must be a positive finite number");
        }
    }
    let checks = match run_suite(suite, tol) {
        Ok(checks) => checks,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    for c in &checks {
        println!("{}", check_line(c));
    }
    let failed: Vec<&str> = checks.iter().filter(|c| !c.pass()).map(|c| c.name).collect();
    if failed.is_empty() {
        println!("{} checks passed", checks.len());
        ExitCode::SUCCESS
    } else {
        println!("{} of {} checks failed: {}", failed.len(), checks.len(), failed.join(" "));
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Bound { n, m_max, format } => {
            if n < 1 || n > m_max || m_max > 64 {
                return usage_error(&format!(
                    "need 1 ≤ n ≤ m-max ≤ 64, got n={n}, m-max={m_max}"
                ));
            }
            emit(cmd_bound(n, m_max, format.format))
        }
        Command::Figure { m_max, format } => {
            if !(2..=64).contains(&m_max) {
                return usage_error(&format!("need 2 ≤ m-max ≤ 64, got m-max={m_max}"));
            }
            emit(cmd_figure(m_max, format.format))
        }
        Command::Clone {
            phi,
            convention,
            format,
        } => {
            if !phi.is_finite() {
                return usage_error("--phi must be finite");
            }
            emit(cmd_clone(phi, convention, format.format))
        }
        Command::Verify { suite, tol } => run_verify(suite, tol),
        Command::Bb84 { format } => emit(cmd_bb84(format.format)),
        Command::Estimate { n, nodes, format } => {
            if !(1..=16).contains(&n) {
                return usage_error(&format!("need 1 ≤ n ≤ 16, got n={n}"));
            }
            let nodes = nodes.unwrap_or_else(|| pcclone_core::estimation::default_nodes(n));
            if nodes < 2 * n + 3 {
                return usage_error(&format!(
                    "need at least 2n+3 = {} nodes for an exact discretization, got {nodes}",
                    2 * n + 3
                ));
            }
            emit(cmd_estimate(n, nodes, format.format))
        }
        Command::Optimize { format } => emit(cmd_optimize(format.format)),
    }
}
