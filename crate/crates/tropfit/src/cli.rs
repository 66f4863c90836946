//! Command-line surface: generation, fitting, sweeps, diagnostics,
//! prediction, and network export. All experiment artifacts are CSV/JSON.
//!
//! Exit codes: `0` success, `2` bad input (flags, files, shapes), `1`
//! internal failure.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::dataset::{read_csv, read_points_csv, write_csv, Dataset};
use crate::error::Error;
use crate::generate::{
    gen_g6, gen_h10, gen_peaks, gen_sine, gen_tropical_rational, TropicalGenConfig,
};
use crate::persist::{read_model, write_trace_csv, ModelFile};
use crate::poly::ExponentSet;
use crate::ratfit::{alternating_fit, certificate, default_certificate_tol, FitConfig};
use crate::relu::rational_to_relu;

#[derive(Debug, Parser)]
#[command(
    name = "tropfit",
    version,
    about = "Fit tropical rational functions to data and export them as ReLU networks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fit a tropical rational function to a dataset
    Fit(FitArgs),
    /// Fit once per degree over a range and tabulate final errors
    SweepDegree(SweepDegreeArgs),
    /// Fit once per input scale c over a grid and tabulate final errors
    SweepScale(SweepScaleArgs),
    /// Generate a synthetic dataset
    Gen(GenArgs),
    /// Evaluate a fitted model on data
    Predict(PredictArgs),
    /// Report the nondifferentiability certificate for a model on data
    Diagnose(DiagnoseArgs),
    /// Convert a fitted model to an equivalent ReLU network JSON
    ToRelu(ToReluArgs),
}

#[derive(Debug, Args)]
pub struct FitArgs {
    /// Training data CSV with header x1,...,xn,y
    #[arg(long)]
    pub data: PathBuf,
    /// Comma-separated degree bounds, one per input coordinate
    #[arg(long)]
    pub degree: String,
    /// Maximum number of alternating iterations
    #[arg(long, default_value_t = 1000)]
    pub max_iters: usize,
    /// Stop once the update norm drops to this value
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    /// Input scaling parameter c: the fit is over f(c x)
    #[arg(long, default_value_t = 1.0)]
    pub scale: f64,
    /// Output model JSON path
    #[arg(long)]
    pub model: PathBuf,
    /// Optional output trace CSV path
    #[arg(long)]
    pub trace: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepDegreeArgs {
    #[arg(long)]
    pub data: PathBuf,
    /// Inclusive degree range, e.g. 1..20 (or a single degree)
    #[arg(long)]
    pub degrees: String,
    /// Output CSV with rows degree,e_final,iters
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, default_value_t = 1000)]
    pub max_iters: usize,
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    #[arg(long, default_value_t = 1.0)]
    pub scale: f64,
}

#[derive(Debug, Args)]
pub struct SweepScaleArgs {
    #[arg(long)]
    pub data: PathBuf,
    /// Scale grid LO:HI:COUNT, e.g. 1:3:21
    #[arg(long)]
    pub scales: String,
    /// Comma-separated degree bounds, one per input coordinate
    #[arg(long)]
    pub degree: String,
    /// Output CSV with rows c,e_final
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, default_value_t = 1000)]
    pub max_iters: usize,
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    Sine,
    Peaks,
    G6,
    H10,
    Tropical,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub kind: GenKind,
    /// Output dataset CSV path
    #[arg(long)]
    pub out: PathBuf,
    /// Number of sample points (sine, g6, h10, tropical)
    #[arg(long)]
    pub points: Option<usize>,
    /// RNG seed (sine, g6, h10, tropical)
    #[arg(long)]
    pub seed: Option<u64>,
    /// Gaussian noise level for sine targets
    #[arg(long)]
    pub noise_sigma: Option<f64>,
    /// Left end of the sine sampling interval
    #[arg(long)]
    pub x_min: Option<f64>,
    /// Right end of the sine sampling interval
    #[arg(long)]
    pub x_max: Option<f64>,
    /// Grid side for the peaks surface (points = side^2)
    #[arg(long)]
    pub grid_side: Option<usize>,
    /// Input dimension for the tropical generator
    #[arg(long)]
    pub dim: Option<usize>,
    /// Degree of the tropical ground truth (uniform over coordinates)
    #[arg(long)]
    pub degree: Option<u32>,
    /// Lower coefficient bound for the tropical ground truth
    #[arg(long)]
    pub coeff_min: Option<f64>,
    /// Upper coefficient bound for the tropical ground truth
    #[arg(long)]
    pub coeff_max: Option<f64>,
    /// Lower sampling-box bound for the tropical generator
    #[arg(long)]
    pub box_min: Option<f64>,
    /// Upper sampling-box bound for the tropical generator
    #[arg(long)]
    pub box_max: Option<f64>,
    /// Where to write the tropical ground-truth model JSON
    #[arg(long)]
    pub model_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PredictArgs {
    /// Input CSV with header x1,...,xn (a trailing y column is used for
    /// error reporting when present)
    #[arg(long)]
    pub data: PathBuf,
    #[arg(long)]
    pub model: PathBuf,
    /// Output CSV with a single yhat column
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct DiagnoseArgs {
    #[arg(long)]
    pub data: PathBuf,
    #[arg(long)]
    pub model: PathBuf,
    /// Tie/attainment tolerance; default 1e-9 * (1 + max|y|)
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Debug, Args)]
pub struct ToReluArgs {
    #[arg(long)]
    pub model: PathBuf,
    /// Output network JSON path
    #[arg(long)]
    pub out: PathBuf,
}

/// A CLI failure carrying its process exit code.
#[derive(Debug)]
pub struct CliError {
    pub message: String,
    pub exit_code: i32,
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let exit_code = match &e {
            // These indicate broken internal invariants when reached from
            // validated CLI inputs.
            Error::DegenerateColumn(_) | Error::DegenerateRow(_) | Error::NoFiniteCoefficient => 1,
            _ => 2,
        };
        CliError {
            message: e.to_string(),
            exit_code,
        }
    }
}

fn usage(message: impl Into<String>) -> CliError {
    CliError {
        message: message.into(),
        exit_code: 2,
    }
}

type CliResult = Result<(), CliError>;

/// Parses an argument vector into a [`Cli`]; usage errors map to exit
/// code 2 like the binary itself.
pub fn parse_args<I, T>(args: I) -> Result<Cli, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    Cli::try_parse_from(args).map_err(|e| usage(e.to_string()))
}

pub fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Fit(args) => run_fit(args),
        Command::SweepDegree(args) => run_sweep_degree(args),
        Command::SweepScale(args) => run_sweep_scale(args),
        Command::Gen(args) => run_gen(args),
        Command::Predict(args) => run_predict(args),
        Command::Diagnose(args) => run_diagnose(args),
        Command::ToRelu(args) => run_to_relu(args),
    }
}

fn parse_degree_list(text: &str) -> Result<Vec<u32>, CliError> {
    text.split(',')
        .map(|part| {
            part.trim()
                .parse::<u32>()
                .map_err(|_| usage(format!("invalid degree {part:?} in --degree {text:?}")))
        })
        .collect()
}

fn parse_degree_range(text: &str) -> Result<(u32, u32), CliError> {
    let (lo, hi) = match text.split_once("..") {
        Some((lo, hi)) => (lo, hi),
        None => (text, text),
    };
    let lo: u32 = lo
        .trim()
        .parse()
        .map_err(|_| usage(format!("invalid degree range {text:?}")))?;
    let hi: u32 = hi
        .trim()
        .parse()
        .map_err(|_| usage(format!("invalid degree range {text:?}")))?;
    if lo > hi {
        return Err(usage(format!("empty degree range {text:?}")));
    }
    Ok((lo, hi))
}

fn parse_scale_grid(text: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = text.split(':').collect();
    let [lo, hi, count] = parts.as_slice() else {
        return Err(usage(format!("expected LO:HI:COUNT, got {text:?}")));
    };
    let lo: f64 = lo
        .parse()
        .map_err(|_| usage(format!("invalid scale grid {text:?}")))?;
    let hi: f64 = hi
        .parse()
        .map_err(|_| usage(format!("invalid scale grid {text:?}")))?;
    let count: usize = count
        .parse()
        .map_err(|_| usage(format!("invalid scale grid {text:?}")))?;
    if count == 0 {
        return Err(usage("scale grid COUNT must be >= 1"));
    }
    if !(lo.is_finite() && hi.is_finite() && lo > 0.0 && lo <= hi) {
        return Err(usage(format!(
            "scale grid must satisfy 0 < LO <= HI, got {text:?}"
        )));
    }
    if count == 1 {
        return Ok(vec![lo]);
    }
    let step = (hi - lo) / (count - 1) as f64;
    Ok((0..count).map(|i| lo + i as f64 * step).collect())
}

fn check_degree_arity(dataset: &Dataset, degrees: &[u32]) -> Result<(), CliError> {
    if degrees.len() != dataset.dim() {
        return Err(usage(format!(
            "--degree has {} entries but the data has dimension {}",
            degrees.len(),
            dataset.dim()
        )));
    }
    Ok(())
}

fn write_text(path: &Path, text: &str) -> CliResult {
    std::fs::write(path, text)
        .map_err(|e| CliError::from(Error::io(path.display().to_string(), e)))
}

fn run_fit(args: FitArgs) -> CliResult {
    // Flag syntax is validated before touching any file.
    let degrees = parse_degree_list(&args.degree)?;
    let dataset = read_csv(&args.data)?;
    check_degree_arity(&dataset, &degrees)?;
    let set = ExponentSet::grid(&degrees)?;
    let cfg = FitConfig {
        max_iters: args.max_iters,
        eta_tol: args.tol,
        scale: args.scale,
        record_trace: true,
        initial: None,
    };
    let (model, trace) = alternating_fit(dataset.points(), dataset.targets(), &set, &cfg)?;
    ModelFile::new(&model, Some(&cfg), Some(&trace)).write(&args.model)?;
    if let Some(trace_path) = &args.trace {
        write_trace_csv(&trace, trace_path)?;
    }
    println!(
        "fit: e_final={} iterations={} termination={}",
        trace.final_error,
        trace.iterations,
        trace.termination.as_str()
    );
    Ok(())
}

fn run_sweep_degree(args: SweepDegreeArgs) -> CliResult {
    let (lo, hi) = parse_degree_range(&args.degrees)?;
    let dataset = read_csv(&args.data)?;
    let mut out = String::from("degree,e_final,iters\n");
    for degree in lo..=hi {
        let set = ExponentSet::uniform_grid(dataset.dim(), degree)?;
        let cfg = FitConfig {
            max_iters: args.max_iters,
            eta_tol: args.tol,
            scale: args.scale,
            record_trace: false,
            initial: None,
        };
        let (_, trace) = alternating_fit(dataset.points(), dataset.targets(), &set, &cfg)?;
        out.push_str(&format!(
            "{degree},{},{}\n",
            trace.final_error, trace.iterations
        ));
    }
    write_text(&args.out, &out)?;
    println!(
        "sweep-degree: wrote {} ({} rows)",
        args.out.display(),
        hi - lo + 1
    );
    Ok(())
}

fn run_sweep_scale(args: SweepScaleArgs) -> CliResult {
    let degrees = parse_degree_list(&args.degree)?;
    let grid = parse_scale_grid(&args.scales)?;
    let dataset = read_csv(&args.data)?;
    check_degree_arity(&dataset, &degrees)?;
    let set = ExponentSet::grid(&degrees)?;

    let mut out = String::from("c,e_final\n");
    let mut best: Option<(f64, f64)> = None;
    for &c in &grid {
        let cfg = FitConfig {
            max_iters: args.max_iters,
            eta_tol: args.tol,
            scale: c,
            record_trace: false,
            initial: None,
        };
        let (_, trace) = alternating_fit(dataset.points(), dataset.targets(), &set, &cfg)?;
        out.push_str(&format!("{c},{}\n", trace.final_error));
        if best.is_none_or(|(_, e)| trace.final_error < e) {
            best = Some((c, trace.final_error));
        }
    }
    write_text(&args.out, &out)?;
    let (c, e) = best.expect("grid is non-empty");
    println!("sweep-scale: argmin_c={c} e_final={e} rows={}", grid.len());
    Ok(())
}

fn reject_flags(pairs: &[(&str, bool)], kind: &str) -> CliResult {
    for (flag, present) in pairs {
        if *present {
            return Err(usage(format!("{flag} is not valid for --kind {kind}")));
        }
    }
    Ok(())
}

fn run_gen(args: GenArgs) -> CliResult {
    let tropical_flags = [
        ("--dim", args.dim.is_some()),
        ("--degree", args.degree.is_some()),
        ("--coeff-min", args.coeff_min.is_some()),
        ("--coeff-max", args.coeff_max.is_some()),
        ("--box-min", args.box_min.is_some()),
        ("--box-max", args.box_max.is_some()),
        ("--model-out", args.model_out.is_some()),
    ];
    let sine_flags = [
        ("--noise-sigma", args.noise_sigma.is_some()),
        ("--x-min", args.x_min.is_some()),
        ("--x-max", args.x_max.is_some()),
    ];
    let seeded_flags = [
        ("--points", args.points.is_some()),
        ("--seed", args.seed.is_some()),
    ];
    let grid_flags = [("--grid-side", args.grid_side.is_some())];

    let dataset = match args.kind {
        GenKind::Sine => {
            reject_flags(&tropical_flags, "sine")?;
            reject_flags(&grid_flags, "sine")?;
            gen_sine(
                args.points.unwrap_or(200),
                (args.x_min.unwrap_or(-1.0), args.x_max.unwrap_or(12.0)),
                args.noise_sigma.unwrap_or(0.1),
                args.seed.unwrap_or(0),
            )?
        }
        GenKind::Peaks => {
            reject_flags(&tropical_flags, "peaks")?;
            reject_flags(&sine_flags, "peaks")?;
            reject_flags(&seeded_flags, "peaks")?;
            gen_peaks(args.grid_side.unwrap_or(49))?
        }
        GenKind::G6 | GenKind::H10 => {
            let kind = if args.kind == GenKind::G6 { "g6" } else { "h10" };
            reject_flags(&tropical_flags, kind)?;
            reject_flags(&sine_flags, kind)?;
            reject_flags(&grid_flags, kind)?;
            let n = args.points.unwrap_or(10_000);
            let seed = args.seed.unwrap_or(0);
            if args.kind == GenKind::G6 {
                gen_g6(n, seed)?
            } else {
                gen_h10(n, seed)?
            }
        }
        GenKind::Tropical => {
            reject_flags(&sine_flags, "tropical")?;
            reject_flags(&grid_flags, "tropical")?;
            let defaults = TropicalGenConfig::default();
            let cfg = TropicalGenConfig {
                dim: args.dim.unwrap_or(defaults.dim),
                degree: args.degree.unwrap_or(defaults.degree),
                n_points: args.points.unwrap_or(defaults.n_points),
                coeff_range: (
                    args.coeff_min.unwrap_or(defaults.coeff_range.0),
                    args.coeff_max.unwrap_or(defaults.coeff_range.1),
                ),
                box_range: (
                    args.box_min.unwrap_or(defaults.box_range.0),
                    args.box_max.unwrap_or(defaults.box_range.1),
                ),
                seed: args.seed.unwrap_or(defaults.seed),
            };
            let (dataset, truth) = gen_tropical_rational(&cfg)?;
            if let Some(model_out) = &args.model_out {
                ModelFile::new(&truth, None, None).write(model_out)?;
            }
            dataset
        }
    };

    write_csv(&dataset, &args.out)?;
    println!(
        "gen: wrote {} ({} points, dimension {})",
        args.out.display(),
        dataset.len(),
        dataset.dim()
    );
    Ok(())
}

fn run_predict(args: PredictArgs) -> CliResult {
    let model = read_model(&args.model)?;
    let (points, targets) = read_points_csv(&args.data)?;
    if points.dim() != model.exponents().dim() {
        return Err(usage(format!(
            "data has dimension {} but the model expects {}",
            points.dim(),
            model.exponents().dim()
        )));
    }
    if points.is_empty() {
        return Err(CliError::from(Error::EmptyDataset));
    }
    let yhat = model.evaluate(&points)?;
    let mut out = String::from("yhat\n");
    for v in &yhat {
        out.push_str(&format!("{v}\n"));
    }
    write_text(&args.out, &out)?;

    match targets {
        Some(y) => {
            let linf = yhat
                .iter()
                .zip(&y)
                .fold(0.0f64, |acc, (f, yi)| acc.max((f - yi).abs()));
            let norm = y.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
            let relative = if norm > 0.0 {
                linf / norm
            } else if linf == 0.0 {
                0.0
            } else {
                f64::INFINITY
            };
            println!("predict: linf_error={linf} relative_error={relative}");
        }
        None => println!("predict: wrote {} predictions", yhat.len()),
    }
    Ok(())
}

fn run_diagnose(args: DiagnoseArgs) -> CliResult {
    let dataset = read_csv(&args.data)?;
    let model = read_model(&args.model)?;
    if dataset.dim() != model.exponents().dim() {
        return Err(usage(format!(
            "data has dimension {} but the model expects {}",
            dataset.dim(),
            model.exponents().dim()
        )));
    }
    let tol = args
        .tol
        .unwrap_or_else(|| default_certificate_tol(dataset.targets()));
    let loss = model.loss(dataset.points(), dataset.targets())?;
    let cert = certificate(&model, dataset.points(), dataset.targets(), tol)?;
    println!("diagnose: loss={loss} tol={tol}");
    println!(
        "on_hypersurface count={}: {}",
        cert.on_hypersurface.len(),
        join_indices(&cert.on_hypersurface)
    );
    println!(
        "attaining_points count={}: {}",
        cert.attaining_points.len(),
        join_indices(&cert.attaining_points)
    );
    Ok(())
}

fn join_indices(indices: &[usize]) -> String {
    indices
        .iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn run_to_relu(args: ToReluArgs) -> CliResult {
    let model = read_model(&args.model)?;
    let net = rational_to_relu(&model)?;
    net.write_json(&args.out)?;
    println!(
        "to-relu: wrote {} (hidden widths {:?})",
        args.out.display(),
        net.hidden_widths()
    );
    Ok(())
}
