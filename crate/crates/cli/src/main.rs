//! `geoment` command-line front end.

mod commands;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "geoment", version, about = "Geometric entanglement of multipartite bound entangled states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a named state and write it as JSON.
    State {
        /// e.g. `smolin`, `ghz:4`, `dur:5:0.2`, `psiy:5:0.4:+:u:2`, `sigma-dur:5:0.2`.
        spec: String,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Geometric measure of a pure state, or its convex roof for a mixed one.
    Gme {
        input: PathBuf,
        /// Required for density-matrix inputs.
        #[arg(long)]
        mixed: bool,
        #[arg(long, default_value = "sin2")]
        measure: String,
        /// Outer restarts for mixed inputs, multistart count for pure ones.
        #[arg(long)]
        restarts: Option<usize>,
        #[arg(long)]
        ensemble_size: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Convergence threshold of the product-state search.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Negativity across a bipartition `a,b,...:c,d,...`.
    Negativity {
        input: PathBuf,
        #[arg(long)]
        partition: String,
    },
    /// Tabulate a state family over a parameter grid as CSV.
    Sweep {
        #[arg(long, default_value = "dur")]
        family: String,
        #[arg(long = "N")]
        n: usize,
        /// `from:to:steps`, endpoints included.
        #[arg(long)]
        x: String,
        /// Comma list from `cert`, `opt`; `opt` adds the optimizer column.
        #[arg(long, default_value = "cert")]
        measures: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Relative entropy `S(ρ‖σ)` in bits.
    Relent {
        rho: PathBuf,
        sigma_path: Option<PathBuf>,
        /// `conjectured` pairs a recognized state with its candidate.
        #[arg(long, conflicts_with = "sigma_path")]
        sigma: Option<String>,
    },
    /// Bell-threshold consistency table, or depolarized coefficients of a state.
    Distill {
        #[arg(long = "N-range", conflicts_with = "input")]
        n_range: Option<String>,
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Slack extremes of the overlap inequalities over seeded sweeps, as JSON.
    Ineq {
        /// Inequality name, or `all`.
        #[arg(long, default_value = "all")]
        which: String,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run every headline check and report one row per claim.
    Verify {
        #[arg(long, value_enum, default_value_t = TolProfile::Default)]
        tol_profile: TolProfile,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Write the JSON report here; `-` prints it after the table.
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TolProfile {
    Default,
    Strict,
}

fn run(cli: Cli) -> commands::CliResult<ExitCode> {
    match cli.command {
        Command::State { spec, out } => commands::state(&spec, &out)?,
        Command::Gme { input, mixed, measure, restarts, ensemble_size, seed, tol } => {
            let opts = commands::GmeArgs { mixed, measure: measure.parse()?, restarts, ensemble_size, seed, tol };
            println!("{}", commands::gme(&input, &opts)?);
        }
        Command::Negativity { input, partition } => {
            println!("{}", commands::term(commands::negativity(&input, &partition)?));
        }
        Command::Sweep { family, n, x, measures, seed, out } => {
            let csv = commands::sweep(&family, n, &x, &measures, seed)?;
            commands::emit(out.as_deref(), &csv)?;
        }
        Command::Relent { rho, sigma_path, sigma } => {
            let v = commands::relent(&rho, sigma_path.as_deref(), sigma.as_deref())?;
            println!("{}", if v.is_infinite() { "inf".to_string() } else { commands::term(v) });
        }
        Command::Distill { n_range, input, out } => {
            let text = match (n_range, input) {
                (Some(r), None) => commands::distill_table(&r)?,
                (None, Some(p)) => commands::distill_state(&p)?,
                _ => return Err(commands::usage("give exactly one of --N-range or --in")),
            };
            commands::emit(out.as_deref(), &text)?;
        }
        Command::Ineq { which, samples, seed } => println!("{}", commands::ineq(&which, samples, seed)?),
        Command::Verify { tol_profile, seed, json } => {
            let report = verify::run(tol_profile, seed);
            print!("{}", report.table());
            if let Some(path) = json {
                let text = serde_json::to_string_pretty(&report).map_err(geoment::Error::from)?;
                if path.as_os_str() == "-" {
                    println!("{text}");
                } else {
                    std::fs::write(&path, text).map_err(geoment::Error::from)?;
                }
            }
            return Ok(if report.all_pass() { ExitCode::SUCCESS } else { ExitCode::from(1) });
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
