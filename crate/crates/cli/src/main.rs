//! `mfbm`: sample the multiparameter fractional Brownian motion on the unit
//! ball, compare series and closed-form covariances, tabulate Bessel zeros,
//! list spherical harmonics and measure the tail-decay rate.
//!
//! Exit status: 0 on success, 2 for invalid flags, 3 when the numerics fail
//! (a zero that will not converge and the like), 1 for I/O errors.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map};

use mfbm::expansion::{
    covariance_closed, covariance_partial, sample_field, CoefficientTable, ModelParams, TruncationKind,
};
use mfbm::grid::{check_points, GridSpec};
use mfbm::harmonics::enumerate_basis;
use mfbm::io::{cached_zeros, cov_table, field_table, harmonics_table, rate_table, Cell, CovRecord, Format, Table};
use mfbm::rng::DEFAULT_SEED;
use mfbm::special::{bessel_zeros, Order};
use mfbm::validation::{rate_regression, tail_sup_norms};
use mfbm::Error;

#[derive(Parser, Debug)]
#[command(
    name = "mfbm",
    version,
    about = "Series simulation of the multiparameter fractional Brownian motion"
)]
struct Cli {
    /// Worker threads for parallel evaluation (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Tabulate the first positive zeros of J_nu.
    Zeros(ZerosArgs),
    /// Draw one realisation of the truncated field on a grid.
    Sample(SampleArgs),
    /// Compare the series covariance with the closed form.
    Cov(CovArgs),
    /// Estimate the tail sup-norm at several truncation levels and fit its decay.
    Rate(RateArgs),
    /// List the real spherical harmonics with their norms.
    Harmonics(HarmonicsArgs),
}

#[derive(Args, Debug)]
struct OutputArgs {
    /// Output file (standard output when absent).
    #[arg(long)]
    output: Option<PathBuf>,

    /// Output format: csv or jsonl.
    #[arg(long, default_value = "csv", value_parser = parse_format)]
    format: Format,
}

#[derive(Args, Debug)]
struct ModelArgs {
    /// Dimension N of the ball (at least 1).
    #[arg(long, value_parser = parse_dim)]
    dim: usize,

    /// Hurst index H, strictly between 0 and 1.
    #[arg(long, value_parser = parse_hurst)]
    hurst: f64,
}

#[derive(Args, Debug)]
#[group(required = false, multiple = false)]
struct TruncationArgs {
    /// Level-set truncation: all (m, n) with (m+1)(m/2+n)^(2H+1) <= Q (Q >= 1).
    #[arg(long, value_parser = parse_q)]
    q: Option<f64>,

    /// Rectangular truncation M,NMAX: degrees 0..=M and zeros 1..=NMAX.
    #[arg(long, value_name = "M,NMAX", value_parser = parse_rect)]
    rect: Option<(usize, usize)>,
}

impl TruncationArgs {
    fn kind(&self, default_q: f64) -> TruncationKind {
        match (self.q, self.rect) {
            (_, Some((max_degree, max_zero))) => TruncationKind::Rectangle { max_degree, max_zero },
            (Some(q), None) => TruncationKind::LevelSet { q },
            (None, None) => TruncationKind::LevelSet { q: default_q },
        }
    }
}

#[derive(Args, Debug)]
struct ZerosArgs {
    /// Bessel order nu > -1.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_order)]
    nu: f64,

    /// Number of zeros.
    #[arg(long, value_parser = parse_positive)]
    count: usize,

    /// Zero cache (line-delimited); reused when it holds enough zeros, refreshed otherwise.
    #[arg(long)]
    cache: Option<PathBuf>,

    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct SampleArgs {
    #[command(flatten)]
    model: ModelArgs,

    #[command(flatten)]
    truncation: TruncationArgs,

    /// Grid: ball:K, disk:K (N = 2) or halton:COUNT.
    #[arg(long, default_value = "ball:17", value_parser = parse_grid)]
    grid: GridSpec,

    /// Seed of the counter-based generator.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,

    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct CovArgs {
    #[command(flatten)]
    model: ModelArgs,

    #[command(flatten)]
    truncation: TruncationArgs,

    /// First point, comma-separated coordinates (a Halton set of pairs is used when absent).
    #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
    x: Option<Vec<f64>>,

    /// Second point (defaults to --x).
    #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
    y: Option<Vec<f64>>,

    /// Number of point pairs when --x is absent.
    #[arg(long, default_value_t = 20, value_parser = parse_positive)]
    count: usize,

    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct RateArgs {
    #[command(flatten)]
    model: ModelArgs,

    /// Top truncation level q_high of the coupled tails.
    #[arg(long, default_value_t = 65536.0, value_parser = parse_q)]
    q: f64,

    /// Lower truncation levels, comma-separated.
    #[arg(long, value_delimiter = ',', default_value = "16,32,64,128,256,512,1024,2048,4096", value_parser = parse_q)]
    levels: Vec<f64>,

    /// Grid on which the sup-norm is taken.
    #[arg(long, default_value = "halton:512", value_parser = parse_grid)]
    grid: GridSpec,

    /// Replications.
    #[arg(long, default_value_t = 200, value_parser = parse_positive)]
    reps: usize,

    /// Seed of the counter-based generator.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,

    /// Fit log(tail) instead of log(tail / sqrt(log p)).
    #[arg(long)]
    no_log_correction: bool,

    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct HarmonicsArgs {
    /// Dimension N of the ball (at least 1).
    #[arg(long, value_parser = parse_dim)]
    dim: usize,

    /// Highest degree listed.
    #[arg(long, default_value_t = 3)]
    degree: usize,

    #[command(flatten)]
    out: OutputArgs,
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_dim(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(d) if d >= 1 => Ok(d),
        _ => Err("must be an integer >= 1".into()),
    }
}

fn parse_positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(d) if d >= 1 => Ok(d),
        _ => Err("must be a positive integer".into()),
    }
}

fn parse_hurst(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(h) if h > 0.0 && h < 1.0 => Ok(h),
        _ => Err("must be a number strictly between 0 and 1".into()),
    }
}

fn parse_q(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(q) if q >= 1.0 && q.is_finite() => Ok(q),
        _ => Err("must be a finite number >= 1".into()),
    }
}

fn parse_order(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(nu) if nu > -1.0 && nu.is_finite() => Ok(nu),
        _ => Err("must be a finite number > -1".into()),
    }
}

fn parse_rect(s: &str) -> Result<(usize, usize), String> {
    let err = || "must be M,NMAX with M >= 0 and NMAX >= 1".to_string();
    let (m, n) = s.split_once(',').ok_or_else(err)?;
    let m: usize = m.trim().parse().map_err(|_| err())?;
    let n: usize = n.trim().parse().map_err(|_| err())?;
    if n == 0 {
        return Err(err());
    }
    Ok((m, n))
}

fn parse_grid(s: &str) -> Result<GridSpec, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Failure of a subcommand, carrying its exit status.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Numeric(String),
    Io(String),
}

impl Failure {
    fn flag(flag: &str, err: impl std::fmt::Display) -> Self {
        Failure::Usage(format!("invalid value for '{flag}': {err}"))
    }

    fn code(&self) -> u8 {
        match self {
            Failure::Io(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Numeric(_) => 3,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_numeric_failure() {
            Failure::Numeric(e.to_string())
        } else {
            match e {
                Error::Io(_) => Failure::Io(e.to_string()),
                other => Failure::Usage(other.to_string()),
            }
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

fn emit(table: &Table, out: &OutputArgs) -> Result<(), Failure> {
    let text = table.to_string(out.format);
    match &out.output {
        Some(path) => write_file(path, &text),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    let file = File::create(path).map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display())))?;
    let mut w = BufWriter::new(file);
    w.write_all(text.as_bytes())?;
    w.flush()?;
    Ok(())
}

fn model(args: &ModelArgs) -> Result<ModelParams, Failure> {
    ModelParams::new(args.dim, args.hurst).map_err(|e| Failure::flag("--hurst", e))
}

fn run_zeros(args: &ZerosArgs) -> Result<(), Failure> {
    let order = Order::new(args.nu).map_err(|e| Failure::flag("--nu", e))?;
    let table = match &args.cache {
        Some(path) => cached_zeros(path, order, args.count)?,
        None => bessel_zeros(order, args.count)?,
    };
    let mut meta = Map::new();
    meta.insert("kind".into(), json!("zeros"));
    meta.insert("nu".into(), json!(args.nu));
    let mut out = Table::new(meta, vec!["n".into(), "zero".into()]);
    for (i, &z) in table.as_slice().iter().enumerate() {
        out.rows.push(vec![Cell::Int(i as i64 + 1), Cell::Float(z)]);
    }
    emit(&out, &args.out)
}

fn run_sample(args: &SampleArgs) -> Result<(), Failure> {
    let params = model(&args.model)?;
    let points = args.grid.points(params.dim()).map_err(|e| Failure::flag("--grid", e))?;
    let sample = sample_field(&params, args.truncation.kind(256.0), &points, args.seed)?;
    emit(&field_table(&sample, Some(&args.grid.to_string())), &args.out)
}

fn run_cov(args: &CovArgs) -> Result<(), Failure> {
    let params = model(&args.model)?;
    let dim = params.dim();
    let pairs: Vec<(Vec<f64>, Vec<f64>)> = match (&args.x, &args.y) {
        (Some(x), y) => {
            let y = y.clone().unwrap_or_else(|| x.clone());
            check_points(std::slice::from_ref(x), dim).map_err(|e| Failure::flag("--x", e))?;
            check_points(std::slice::from_ref(&y), dim).map_err(|e| Failure::flag("--y", e))?;
            vec![(x.clone(), y)]
        }
        (None, Some(_)) => return Err(Failure::Usage("'--y' needs '--x'".into())),
        (None, None) => {
            let pts = GridSpec::Halton(2 * args.count).points(dim)?;
            pts.chunks(2).map(|c| (c[0].clone(), c[1].clone())).collect()
        }
    };
    let kind = args.truncation.kind(4096.0);
    let truncation = mfbm::expansion::resolve_truncation(kind, &params)?;
    let table = CoefficientTable::new(&params, &truncation)?;
    // for a rectangle, the smallest level set that contains it
    let q = match kind {
        TruncationKind::LevelSet { q } => q,
        TruncationKind::Rectangle { .. } => table.entries().iter().map(|c| c.level).fold(0.0, f64::max),
    };
    let mut records = Vec::with_capacity(pairs.len());
    for (x, y) in pairs {
        let partial = covariance_partial(&table, &x, &y)?;
        let closed = covariance_closed(&params, &x, &y)?;
        records.push(CovRecord {
            x,
            y,
            q,
            partial,
            closed,
            abs_error: (partial - closed).abs(),
        });
    }
    let mut meta = Map::new();
    meta.insert("truncation".into(), json!(kind));
    meta.insert("term_count".into(), json!(truncation.term_count()));
    emit(&cov_table(&params, &records, meta), &args.out)
}

fn run_rate(args: &RateArgs) -> Result<(), Failure> {
    let params = model(&args.model)?;
    if let Some(bad) = args.levels.iter().find(|&&q| q > args.q) {
        return Err(Failure::flag("--levels", format!("level {bad} exceeds --q {}", args.q)));
    }
    if args.reps < 2 {
        return Err(Failure::flag("--reps", "at least two replications are needed"));
    }
    let points = args.grid.points(params.dim()).map_err(|e| Failure::flag("--grid", e))?;
    let tails = tail_sup_norms(&params, &args.levels, args.q, &points, args.reps, args.seed)?;
    let p: Vec<usize> = tails.iter().map(|t| t.term_count).collect();
    let norms: Vec<f64> = tails.iter().map(|t| t.sup_norm.mean).collect();
    let report = rate_regression(&params, &p, &norms, !args.no_log_correction).map_err(|e| match e {
        Error::InvalidParams(msg) => Failure::flag("--levels", msg),
        other => other.into(),
    })?;
    let mut meta = Map::new();
    meta.insert("q_high".into(), json!(args.q));
    meta.insert("grid".into(), json!(args.grid.to_string()));
    meta.insert("reps".into(), json!(args.reps));
    meta.insert("seed".into(), json!(args.seed));
    emit(&rate_table(&report, &tails, meta), &args.out)
}

fn run_harmonics(args: &HarmonicsArgs) -> Result<(), Failure> {
    let bases = (0..=args.degree)
        .map(|m| enumerate_basis(m, args.dim))
        .collect::<Result<Vec<_>, _>>()?;
    emit(&harmonics_table(args.dim, &bases), &args.out)
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads)
        .build()
        .map_err(|e| Failure::flag("--threads", e))?;
    pool.install(|| match &cli.command {
        Command::Zeros(a) => run_zeros(a),
        Command::Sample(a) => run_sample(a),
        Command::Cov(a) => run_cov(a),
        Command::Rate(a) => run_rate(a),
        Command::Harmonics(a) => run_harmonics(a),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let msg = match &f {
                Failure::Usage(m) | Failure::Numeric(m) | Failure::Io(m) => m,
            };
            eprintln!("error: {msg}");
            ExitCode::from(f.code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn value_parsers() {
        assert_eq!(parse_hurst("0.25"), Ok(0.25));
        assert!(parse_hurst("1").is_err() && parse_hurst("0").is_err() && parse_hurst("nan").is_err());
        assert!(parse_q("0.99").is_err() && parse_q("inf").is_err());
        assert_eq!(parse_rect("3, 7"), Ok((3, 7)));
        assert!(parse_rect("3,0").is_err() && parse_rect("3").is_err());
        assert!(parse_order("-1").is_err());
        assert_eq!(parse_dim("4"), Ok(4));
        assert!(parse_dim("0").is_err());
        assert!(parse_grid("halton:10").is_ok() && parse_grid("cube:3").is_err());
    }

    #[test]
    fn error_kinds_map_to_exit_codes() {
        let numeric = Error::DegenerateRegression("x".into());
        assert_eq!(Failure::from(numeric).code(), 3);
        assert_eq!(Failure::from(Error::InvalidParams("x".into())).code(), 2);
        assert_eq!(Failure::from(io::Error::other("x")).code(), 1);
    }
}
