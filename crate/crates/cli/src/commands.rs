//! Subcommand bodies. Each returns text for stdout or a file so that the
//! verification suite can reuse them.

use std::fmt;
use std::path::Path;

use geoment::bounds::{sweep as ineq_sweep, Inequality, SweepSummary};
use geoment::distill::{consistency_report, depolarize, nondistillable_all_partitions};
use geoment::geometric::{lambda_max, GmeOptions, PureMeasure};
use geoment::io::{read_state, write_state, DecompositionFile};
use geoment::linalg::max_abs_diff;
use geoment::roof::{average_entanglement, certificate_dur, optimize_roof, RoofOptions};
use geoment::spectral::{negativity as pt_negativity, relative_entropy};
use geoment::state::PartySplit;
use geoment::zoo::{dur, recognize, sigma_conjectured, SigmaTarget, StateName, ZooState};
use geoment::DensityMatrix;
use serde::Serialize;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Lib(geoment::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => f.write_str(m),
            CliError::Lib(e) => write!(f, "{e}"),
        }
    }
}

impl From<geoment::Error> for CliError {
    fn from(e: geoment::Error) -> Self {
        CliError::Lib(e)
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

pub fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Terminal formatting: 12 digits after the point.
pub fn term(v: f64) -> String {
    format!("{v:.12}")
}

/// File formatting: 17 significant digits.
pub fn file(v: f64) -> String {
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    format!("{v:.16e}")
}

pub fn emit(out: Option<&Path>, text: &str) -> CliResult<()> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Lib(e.into())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn state(spec: &str, out: &Path) -> CliResult<()> {
    let name: StateName = spec.parse()?;
    write_state(out, &name.build()?)?;
    Ok(())
}

pub struct GmeArgs {
    pub mixed: bool,
    pub measure: PureMeasure,
    pub restarts: Option<usize>,
    pub ensemble_size: Option<usize>,
    pub seed: u64,
    pub tol: Option<f64>,
}

#[derive(Serialize)]
struct GmeOptionsEcho {
    measure: &'static str,
    restarts: usize,
    ensemble_size: Option<usize>,
    seed: u64,
    tol: f64,
}

#[derive(Serialize)]
pub struct GmeReport {
    pub value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    /// Stationarity residual for pure inputs, reconstruction error for mixed ones.
    pub residual: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub start_value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub restart_values: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    decomposition: Option<DecompositionFile>,
    options: GmeOptionsEcho,
}

pub fn gme_state(state: &ZooState, args: &GmeArgs) -> CliResult<GmeReport> {
    let mut inner = GmeOptions::default().with_seed(args.seed);
    if let Some(t) = args.tol {
        inner.tol = t;
    }
    match state {
        ZooState::Density(_) if !args.mixed => Err(usage("density-matrix input needs --mixed")),
        ZooState::Pure(psi) if !args.mixed => {
            if let Some(r) = args.restarts {
                inner = inner.with_restarts(r);
            }
            let r = lambda_max(psi, &inner)?;
            Ok(GmeReport {
                value: args.measure.from_lambda(r.lambda_max),
                lambda: Some(r.lambda_max),
                residual: r.residual,
                start_value: None,
                restart_values: None,
                decomposition: None,
                options: GmeOptionsEcho {
                    measure: args.measure.name(),
                    restarts: inner.restarts,
                    ensemble_size: None,
                    seed: args.seed,
                    tol: inner.tol,
                },
            })
        }
        _ => {
            let rho = state.to_density();
            let mut opts = RoofOptions::default().with_seed(args.seed);
            opts.inner.tol = inner.tol;
            if let Some(r) = args.restarts {
                opts = opts.with_restarts(r);
            }
            if let Some(m) = args.ensemble_size {
                opts = opts.with_ensemble_size(m);
            }
            let r = optimize_roof(&rho, args.measure, &opts)?;
            Ok(GmeReport {
                value: r.value,
                lambda: None,
                residual: max_abs_diff(r.best.reconstruct().matrix(), rho.matrix()),
                start_value: Some(r.start_value),
                restart_values: Some(r.restart_values.clone()),
                decomposition: Some(DecompositionFile::from_decomposition(&r.best)),
                options: GmeOptionsEcho {
                    measure: args.measure.name(),
                    restarts: opts.outer_restarts,
                    ensemble_size: args.ensemble_size,
                    seed: args.seed,
                    tol: opts.inner.tol,
                },
            })
        }
    }
}

pub fn gme(input: &Path, args: &GmeArgs) -> CliResult<String> {
    let report = gme_state(&read_state(input)?, args)?;
    Ok(serde_json::to_string_pretty(&report).map_err(geoment::Error::from)?)
}

pub fn negativity_of(state: &ZooState, partition: &str) -> CliResult<f64> {
    let split = PartySplit::parse(partition, state.n_parties())?;
    Ok(pt_negativity(&state.to_density(), &split)?)
}

pub fn negativity(input: &Path, partition: &str) -> CliResult<f64> {
    negativity_of(&read_state(input)?, partition)
}

/// Parses `from:to:steps` into `steps` evenly spaced points, endpoints included.
pub fn parse_grid(spec: &str) -> CliResult<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    let [a, b, s] = parts[..] else {
        return Err(usage(format!("`{spec}`: expected from:to:steps")));
    };
    let num = |t: &str| t.parse::<f64>().map_err(|_| usage(format!("`{t}` is not a number")));
    let (a, b) = (num(a)?, num(b)?);
    let steps: usize = s.parse().map_err(|_| usage(format!("`{s}` is not a step count")))?;
    match steps {
        0 => Err(usage("steps must be at least 1")),
        1 => Ok(vec![a]),
        _ => Ok((0..steps).map(|i| a + (b - a) * i as f64 / (steps - 1) as f64).collect()),
    }
}

#[derive(Clone, Debug)]
pub struct SweepRow {
    pub x: f64,
    pub neg_1_rest: f64,
    pub neg_12_rest: f64,
    pub e_sin2_cert: f64,
    pub e_log2_cert: f64,
    pub e_sin2_opt: Option<f64>,
    pub relent_upper: f64,
}

pub fn sweep_rows(n: usize, xs: &[f64], optimize: bool, seed: u64) -> CliResult<Vec<SweepRow>> {
    let o = GmeOptions::default().with_seed(seed);
    xs.iter()
        .map(|&x| {
            let rho = dur(n, x)?;
            let cert = certificate_dur(n, x)?;
            let sigma = sigma_conjectured(SigmaTarget::Dur { n, x })?;
            let e_sin2_opt = if optimize {
                Some(optimize_roof(&rho, PureMeasure::Sin2, &RoofOptions::default().with_seed(seed))?.value)
            } else {
                None
            };
            Ok(SweepRow {
                x,
                neg_1_rest: pt_negativity(&rho, &PartySplit::first_vs_rest(n)?)?,
                neg_12_rest: pt_negativity(&rho, &PartySplit::first_two_vs_rest(n)?)?,
                e_sin2_cert: average_entanglement(&cert, PureMeasure::Sin2, &o)?,
                e_log2_cert: average_entanglement(&cert, PureMeasure::Log2, &o)?,
                e_sin2_opt,
                relent_upper: relative_entropy(&rho, &sigma)?,
            })
        })
        .collect()
}

pub fn sweep(family: &str, n: usize, grid: &str, measures: &str, seed: u64) -> CliResult<String> {
    if family != "dur" {
        return Err(usage(format!("unknown family `{family}`; only `dur` is supported")));
    }
    let mut optimize = false;
    for m in measures.split(',').map(str::trim) {
        match m {
            "cert" => {}
            "opt" => optimize = true,
            other => return Err(usage(format!("unknown measure set `{other}`; expected cert or opt"))),
        }
    }
    let rows = sweep_rows(n, &parse_grid(grid)?, optimize, seed)?;
    let mut out = String::from("x,neg_1_rest,neg_12_rest,e_sin2_cert,e_log2_cert");
    if optimize {
        out.push_str(",e_sin2_opt");
    }
    out.push_str(",relent_upper\n");
    for r in rows {
        let mut cols = vec![file(r.x), file(r.neg_1_rest), file(r.neg_12_rest), file(r.e_sin2_cert), file(r.e_log2_cert)];
        if let Some(v) = r.e_sin2_opt {
            cols.push(file(v));
        }
        cols.push(file(r.relent_upper));
        out.push_str(&cols.join(","));
        out.push('\n');
    }
    Ok(out)
}

/// Conjectured closest separable state for a recognized Smolin or Dür state.
pub fn conjectured_sigma_for(rho: &DensityMatrix) -> CliResult<DensityMatrix> {
    let target = recognize(rho)
        .and_then(|name| name.conjectured_sigma())
        .ok_or_else(|| usage("no conjectured separable state for this input (not a Smolin or Dür state)"))?;
    Ok(sigma_conjectured(target)?)
}

pub fn relent(rho: &Path, sigma_path: Option<&Path>, sigma: Option<&str>) -> CliResult<f64> {
    let rho = read_state(rho)?.to_density();
    let sigma = match (sigma_path, sigma) {
        (Some(p), None) => read_state(p)?.to_density(),
        (None, Some("conjectured")) => conjectured_sigma_for(&rho)?,
        (None, Some(other)) => return Err(usage(format!("unknown --sigma `{other}`; expected conjectured"))),
        _ => return Err(usage("give a sigma file or --sigma conjectured")),
    };
    Ok(relative_entropy(&rho, &sigma)?)
}

pub fn parse_range(spec: &str) -> CliResult<std::ops::RangeInclusive<usize>> {
    let (a, b) = spec.split_once(':').ok_or_else(|| usage(format!("`{spec}`: expected a:b")))?;
    let num = |t: &str| t.parse::<usize>().map_err(|_| usage(format!("`{t}` is not a party count")));
    let (a, b) = (num(a)?, num(b)?);
    if a > b {
        return Err(usage(format!("empty range {a}:{b}")));
    }
    Ok(a..=b)
}

pub fn distill_table(range: &str) -> CliResult<String> {
    let mut out = String::from("N,kind,threshold,bound,exceeds\n");
    for r in consistency_report(parse_range(range)?)? {
        out.push_str(&format!("{},{},{},{},{}\n", r.n, r.kind, file(r.threshold), file(r.bound), r.exceeds));
    }
    Ok(out)
}

#[derive(Serialize)]
pub struct DistillReport {
    pub n_parties: usize,
    pub lambda0_plus: f64,
    pub lambda0_minus: f64,
    /// `λ_j` for `j = 1..2^{N−1}−1`.
    pub lambdas: Vec<f64>,
    pub delta: f64,
    pub nondistillable: bool,
    pub violating_j: Option<usize>,
}

pub fn distill_report(rho: &DensityMatrix) -> CliResult<DistillReport> {
    let c = depolarize(rho)?;
    let verdict = nondistillable_all_partitions(&c);
    Ok(DistillReport {
        n_parties: c.n_parties,
        lambda0_plus: c.lambda0_plus,
        lambda0_minus: c.lambda0_minus,
        delta: c.delta(),
        lambdas: c.lambdas,
        nondistillable: verdict.holds,
        violating_j: verdict.violating_j,
    })
}

pub fn distill_state(input: &Path) -> CliResult<String> {
    let report = distill_report(&read_state(input)?.to_density())?;
    let mut text = serde_json::to_string_pretty(&report).map_err(geoment::Error::from)?;
    text.push('\n');
    Ok(text)
}

pub fn ineq_summaries(which: &str, samples: usize, seed: u64) -> CliResult<Vec<SweepSummary>> {
    let kinds: Vec<Inequality> = if which == "all" { Inequality::ALL.to_vec() } else { vec![which.parse()?] };
    Ok(kinds.into_iter().map(|k| ineq_sweep(k, samples, seed)).collect::<geoment::Result<_>>()?)
}

pub fn ineq(which: &str, samples: usize, seed: u64) -> CliResult<String> {
    let s = ineq_summaries(which, samples, seed)?;
    Ok(serde_json::to_string_pretty(&s).map_err(geoment::Error::from)?)
}
