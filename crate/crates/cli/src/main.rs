use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use gex_cli::report::max_threads_from_env;
use gex_cli::{emit_report, run, write_output, CliError, Command, Format, GenusSpec, RunConfig};

/// Builds the triangulations T_g and checks their geometric claims.
#[derive(Parser, Debug)]
#[command(name = "gex", version)]
struct Args {
    #[arg(value_enum)]
    command: Command,
    /// Genus: `7`, `2,5,9`, `2..10`, or a mix.
    #[arg(long)]
    g: Option<GenusSpec>,
    /// Absolute tolerance of the volume cubature, per tetrahedron.
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    /// Coefficient bound for the slope audit.
    #[arg(long, default_value_t = 100)]
    bound: i64,
    /// Scale of the tilt computation.
    #[arg(long, default_value_t = 1.0)]
    k: f64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Extend volume checks to g = 500.
    #[arg(long)]
    deep: bool,
}

fn execute(args: Args) -> Result<bool, CliError> {
    let mut cfg = RunConfig::new(args.command);
    if let Some(spec) = args.g {
        cfg.genera = spec.0;
    }
    cfg.quadrature_tol = args.tol;
    cfg.coeff_bound = args.bound;
    cfg.k = args.k;
    cfg.format = args.format;
    cfg.output = args.output;
    cfg.deep = args.deep;
    let report = run(&cfg, max_threads_from_env()?)?;
    let bytes = emit_report(&report, cfg.format)?;
    write_output(&bytes, cfg.output.as_deref())?;
    Ok(report.passed())
}

fn main() -> ExitCode {
    match execute(Args::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e @ CliError::Usage(_)) => {
            eprintln!("gex: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("gex: {e}");
            ExitCode::from(3)
        }
    }
}
