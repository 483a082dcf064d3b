//! Command-line front end: loads JSON measure/model specifications, runs the
//! additivity checker, covariation analytics, classification, cyclic spectra,
//! path synthesis and the kernel-identity verifier.
//!
//! Exit codes: 0 when every requested check passes, 1 when a mathematical
//! check fails, 2 on usage or input errors. All numeric output is rendered
//! with 15 significant digits so reruns diff byte-identically.

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use stable_spectra::covariation::{covariation_estimate, covariation_exact, default_moment_order};
use stable_spectra::harmonisable::Verdict;
use stable_spectra::io::{format_sig15, measure_from_json, model_from_json, paths_csv};
use stable_spectra::rng::DEFAULT_SEED;
use stable_spectra::spectral::{Mode, ThetaGridSpec, TripleMode};
use stable_spectra::stable::{constants, kernel_check_1d, kernel_check_2d, Alpha, MomentKind};
use stable_spectra::Error;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "stable-spectra",
    version,
    about = "Covariation spectra of stable vectors and harmonisable models",
    long_about = "Covariation spectra of symmetric alpha-stable vectors and harmonisable \
                  models with discrete spectral structure (1 < alpha < 2).\n\n\
                  Exit codes: 0 = all checks passed, 1 = a mathematical check failed, \
                  2 = usage or input error.\n\
                  The seed defaults to the STABLE_SPECTRA_SEED environment variable, \
                  then to the documented constant 20240214."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Scan the third derivative of a measure's Fourier transform for
    /// violations of the additivity condition.
    CheckAdditivity(CheckAdditivityArgs),
    /// Exact covariation of two linear forms, optionally next to a
    /// Monte-Carlo estimate.
    Covariation(CovariationArgs),
    /// Classify a harmonisable model as stationary, periodic or almost
    /// periodic from its spectral lines.
    Classify(ClassifyArgs),
    /// Cyclic Fourier coefficients of a model over a range of orders, as CSV.
    Spectrum(SpectrumArgs),
    /// Draw sample paths of a model with an increment law, as CSV.
    Synthesize(SynthesizeArgs),
    /// Verify the oscillatory kernel identities and moment constants.
    VerifyIdentities(VerifyIdentitiesArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum TripleModeArg {
    Literal,
    Pairwise,
}

impl From<TripleModeArg> for TripleMode {
    fn from(value: TripleModeArg) -> Self {
        match value {
            TripleModeArg::Literal => TripleMode::Literal,
            TripleModeArg::Pairwise => TripleMode::PairwiseDistinct,
        }
    }
}

#[derive(Args)]
struct CheckAdditivityArgs {
    /// Measure JSON file
    #[arg(long)]
    measure: PathBuf,
    /// Which index triples to scan
    #[arg(long, value_enum, default_value = "literal")]
    mode: TripleModeArg,
    /// Pass tolerance on the largest derivative modulus
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Extra frequency points to include in the grid, e.g. "1,1" or "1+0.5i,2"
    #[arg(long = "theta", allow_hyphen_values = true)]
    theta: Vec<String>,
}

#[derive(Args)]
struct CovariationArgs {
    /// Measure JSON file
    #[arg(long)]
    measure: PathBuf,
    /// Stability index
    #[arg(long)]
    alpha: f64,
    /// First coefficient vector, comma separated (complex entries like 1+2i)
    #[arg(long, allow_hyphen_values = true)]
    a: String,
    /// Second coefficient vector
    #[arg(long, allow_hyphen_values = true)]
    b: String,
    /// Also estimate the bracket from sampled vectors
    #[arg(long)]
    estimate: bool,
    /// Sample count for the estimate
    #[arg(long, default_value_t = 100_000)]
    n: usize,
    /// Seed (falls back to STABLE_SPECTRA_SEED, then the default constant)
    #[arg(long)]
    seed: Option<u64>,
    /// Moment order for the estimator (defaults to min(1.2, (1+alpha)/2))
    #[arg(long)]
    p: Option<f64>,
}

#[derive(Args)]
struct ClassifyArgs {
    /// Model JSON file
    #[arg(long)]
    model: PathBuf,
    /// Mass tolerance below which bimeasure entries are ignored
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
}

#[derive(Args)]
struct SpectrumArgs {
    /// Model JSON file
    #[arg(long)]
    model: PathBuf,
    /// Lag of the covariation function
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    tau: f64,
    /// Period of the cyclic analysis
    #[arg(long)]
    period: f64,
    /// Smallest coefficient order
    #[arg(long, default_value_t = -4, allow_hyphen_values = true)]
    k_min: i64,
    /// Largest coefficient order
    #[arg(long, default_value_t = 4, allow_hyphen_values = true)]
    k_max: i64,
    /// Mismatch threshold between the averaged and predicted coefficients
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    /// Write the CSV here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SynthesizeArgs {
    /// Model JSON file (must embed an increment law)
    #[arg(long)]
    model: PathBuf,
    /// Comma-separated time points
    #[arg(long, allow_hyphen_values = true)]
    times: String,
    /// Number of paths
    #[arg(long, default_value_t = 1)]
    paths: usize,
    /// Seed (falls back to STABLE_SPECTRA_SEED, then the default constant)
    #[arg(long)]
    seed: Option<u64>,
    /// Write the CSV here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyIdentitiesArgs {
    /// Stability indices for the constants table
    #[arg(long, default_value = "1.1,1.2,1.3,1.4,1.5,1.6,1.7,1.8,1.9")]
    alpha: String,
    /// Orders for the one-dimensional kernel identities (must lie in (1, 2))
    #[arg(long, default_value = "1.1,1.5,1.9")]
    p1: String,
    /// Orders for the two-dimensional kernel identities (must lie in (0, 2))
    #[arg(long, default_value = "0.8,1.5")]
    p2: String,
    /// Threshold for the one-dimensional identities
    #[arg(long, default_value_t = 1e-6)]
    tol1: f64,
    /// Threshold for the two-dimensional identities
    #[arg(long, default_value_t = 1e-4)]
    tol2: f64,
}

/// Failures distinguish mathematical check failures (exit 1) from usage and
/// input problems (exit 2).
enum Failure {
    Check(String),
    Input(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Check(_) => 1,
            Failure::Input(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Check(m) | Failure::Input(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            // a bimeasure rejected by the positivity gate is a failed check
            Error::Integrity(m) => Failure::Check(m),
            other => Failure::Input(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::CheckAdditivity(args) => cmd_check_additivity(args),
        Command::Covariation(args) => cmd_covariation(args),
        Command::Classify(args) => cmd_classify(args),
        Command::Spectrum(args) => cmd_spectrum(args),
        Command::Synthesize(args) => cmd_synthesize(args),
        Command::VerifyIdentities(args) => cmd_verify_identities(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}

fn resolve_seed(flag: Option<u64>) -> Result<u64, Failure> {
    if let Some(seed) = flag {
        return Ok(seed);
    }
    match std::env::var("STABLE_SPECTRA_SEED") {
        Ok(text) => text
            .parse::<u64>()
            .map_err(|_| Failure::Input(format!("STABLE_SPECTRA_SEED is not a u64: {text}"))),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))
}

fn write_output(out: Option<&PathBuf>, content: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn fmt_complex(z: Complex64) -> String {
    format!("{} {}", format_sig15(z.re), format_sig15(z.im))
}

/// Parses "1", "-2.5", "i", "2i", "1+2i", "0.5-0.3i".
fn parse_complex(text: &str) -> Result<Complex64, Failure> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Failure::Input("empty complex entry".into()));
    }
    if let Ok(re) = s.parse::<f64>() {
        return Ok(Complex64::new(re, 0.0));
    }
    if let Some(body) = s.strip_suffix('i') {
        // split at the last +/- that is not an exponent sign or leading sign
        let bytes = body.as_bytes();
        let mut split = None;
        for idx in (1..bytes.len()).rev() {
            let c = bytes[idx] as char;
            if (c == '+' || c == '-') && !matches!(bytes[idx - 1] as char, 'e' | 'E') {
                split = Some(idx);
                break;
            }
        }
        let (re_part, im_part) = match split {
            Some(idx) => (&body[..idx], &body[idx..]),
            None => ("0", body),
        };
        let im = match im_part {
            "" | "+" => 1.0,
            "-" => -1.0,
            other => other
                .parse::<f64>()
                .map_err(|_| Failure::Input(format!("bad complex entry: {text}")))?,
        };
        let re = if re_part.is_empty() {
            0.0
        } else {
            re_part
                .parse::<f64>()
                .map_err(|_| Failure::Input(format!("bad complex entry: {text}")))?
        };
        return Ok(Complex64::new(re, im));
    }
    Err(Failure::Input(format!("bad complex entry: {text}")))
}

fn parse_complex_vector(text: &str) -> Result<Vec<Complex64>, Failure> {
    text.split(',').map(parse_complex).collect()
}

fn parse_real_vector(text: &str) -> Result<Vec<f64>, Failure> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| Failure::Input(format!("bad number: {s}")))
        })
        .collect()
}

fn cmd_check_additivity(args: CheckAdditivityArgs) -> Result<(), Failure> {
    let measure = measure_from_json(&read_file(&args.measure)?)?;
    let mut extra = Vec::new();
    for text in &args.theta {
        let point = parse_complex_vector(text)?;
        if point.len() != measure.dimension() {
            return Err(Failure::Input(format!(
                "extra theta {text:?} has {} entries, the measure has dimension {}",
                point.len(),
                measure.dimension()
            )));
        }
        extra.push(point);
    }
    let grid = ThetaGridSpec::with_extra_points(extra);
    let report = measure.check_additivity(&grid, args.tol, args.mode.into())?;
    println!(
        "additivity condition: {}",
        if report.pass { "PASS" } else { "FAIL" }
    );
    println!("triples   : {}", report.triple_mode);
    println!("max |d3|  : {}", format_sig15(report.max_abs));
    println!("tolerance : {}", format_sig15(report.tolerance));
    println!("grid      : {} ({} points)", report.grid_spec, report.points_scanned);
    if let Some(worst) = &report.worst {
        let theta: Vec<String> = worst.theta.iter().map(|z| fmt_complex(*z)).collect();
        println!(
            "worst case: (i,j,k) = ({},{},{}) at theta = [{}], value = {}",
            worst.i,
            worst.j,
            worst.k,
            theta.join("; "),
            fmt_complex(worst.value)
        );
    }
    if report.pass {
        Ok(())
    } else {
        Err(Failure::Check(format!(
            "additivity condition fails: max |d3| = {}",
            format_sig15(report.max_abs)
        )))
    }
}

fn cmd_covariation(args: CovariationArgs) -> Result<(), Failure> {
    let measure = measure_from_json(&read_file(&args.measure)?)?;
    let alpha = Alpha::new(args.alpha)?;
    let a = parse_complex_vector(&args.a)?;
    let b = parse_complex_vector(&args.b)?;
    let exact = covariation_exact(&measure, alpha, &a, &b)?;
    println!("exact     : {}", fmt_complex(exact));

    if args.estimate {
        let seed = resolve_seed(args.seed)?;
        let p = args.p.unwrap_or_else(|| default_moment_order(alpha));
        let draws = measure.sample_vector(alpha, args.n, seed)?;
        let x: Vec<Complex64> = draws
            .iter()
            .map(|v| v.iter().zip(&a).map(|(xi, ai)| ai * xi).sum())
            .collect();
        let y: Vec<Complex64> = draws
            .iter()
            .map(|v| v.iter().zip(&b).map(|(xi, bi)| bi * xi).sum())
            .collect();
        let kind = match measure.mode() {
            Mode::Real => MomentKind::Real,
            Mode::Complex => MomentKind::Isotropic,
        };
        let est = covariation_estimate(&x, &y, alpha, p, kind)?;
        println!("estimate  : {}", fmt_complex(est.value));
        println!("std_error : {}", format_sig15(est.std_error));
        println!("n         : {}", est.n);
        println!("p         : {}", format_sig15(est.p));
        println!("seed      : {seed}");
        let distance = (est.value - exact).norm();
        println!("|est - exact| = {}", format_sig15(distance));
    }
    Ok(())
}

fn cmd_classify(args: ClassifyArgs) -> Result<(), Failure> {
    let model = model_from_json(&read_file(&args.model)?).map_err(|e| match e {
        Error::Integrity(m) => Failure::Check(format!("invalid bimeasure: {m}")),
        other => Failure::Input(other.to_string()),
    })?;
    let report = model.classify(args.tol)?;
    match report.verdict {
        Verdict::Stationary => println!("verdict: stationary"),
        Verdict::Periodic => println!(
            "verdict: periodic, T = {}",
            format_sig15(report.period.expect("periodic verdict carries a period"))
        ),
        Verdict::AlmostPeriodic => println!("verdict: almost_periodic"),
    }
    println!("mass tolerance: {}", format_sig15(report.mass_tolerance));
    println!("lines ({}):", report.lines.len());
    println!("gamma,mass");
    for line in &report.lines {
        println!("{},{}", format_sig15(line.gamma), format_sig15(line.mass));
    }
    Ok(())
}

fn cmd_spectrum(args: SpectrumArgs) -> Result<(), Failure> {
    if !(args.period.is_finite() && args.period > 0.0) {
        return Err(Failure::Input(format!(
            "period must be positive, got {}",
            args.period
        )));
    }
    if args.k_min > args.k_max {
        return Err(Failure::Input("k-min exceeds k-max".into()));
    }
    let model = model_from_json(&read_file(&args.model)?)?;
    let mut csv = String::from("k,numeric_re,numeric_im,predicted_re,predicted_im,abs_err\n");
    let mut worst = 0.0_f64;
    for k in args.k_min..=args.k_max {
        let c = model.fourier_coefficient(args.tau, k, args.period)?;
        let err = (c.numeric - c.predicted).norm();
        worst = worst.max(err);
        let _ = writeln!(
            csv,
            "{k},{},{},{},{},{}",
            format_sig15(c.numeric.re),
            format_sig15(c.numeric.im),
            format_sig15(c.predicted.re),
            format_sig15(c.predicted.im),
            format_sig15(err)
        );
    }
    write_output(args.out.as_ref(), &csv)?;
    if worst > args.tol {
        Err(Failure::Check(format!(
            "averaged and predicted coefficients disagree: worst |diff| = {}",
            format_sig15(worst)
        )))
    } else {
        Ok(())
    }
}

fn cmd_synthesize(args: SynthesizeArgs) -> Result<(), Failure> {
    let model = model_from_json(&read_file(&args.model)?)?;
    let times = parse_real_vector(&args.times)?;
    if times.is_empty() {
        return Err(Failure::Input("at least one time point is required".into()));
    }
    let seed = resolve_seed(args.seed)?;
    let paths = model.synthesize_paths(&times, args.paths, seed).map_err(|e| match e {
        Error::MissingIncrements => Failure::Input(
            "no increment law: the model supports analytics but not synthesis".into(),
        ),
        other => Failure::from(other),
    })?;
    write_output(args.out.as_ref(), &paths_csv(&times, &paths))
}

fn cmd_verify_identities(args: VerifyIdentitiesArgs) -> Result<(), Failure> {
    let alphas = parse_real_vector(&args.alpha)?;
    let p1 = parse_real_vector(&args.p1)?;
    let p2 = parse_real_vector(&args.p2)?;
    let mut failed = false;

    println!("one-dimensional kernel identities (threshold {}):", format_sig15(args.tol1));
    println!("s,p,numeric,closed_form,abs_err,cos_abs_err,status");
    for &p in &p1 {
        for &s in &[2.0, 1.0, 0.5, -0.5, -1.0, -2.0] {
            let check = kernel_check_1d(s, p)?;
            let ok = check.abs_err <= args.tol1 && check.cosine.abs_err <= args.tol1;
            failed |= !ok;
            println!(
                "{},{},{},{},{},{},{}",
                format_sig15(s),
                format_sig15(p),
                format_sig15(check.numeric),
                format_sig15(check.closed_form),
                format_sig15(check.abs_err),
                format_sig15(check.cosine.abs_err),
                if ok { "ok" } else { "FAIL" }
            );
        }
    }

    println!("two-dimensional kernel identities (threshold {}):", format_sig15(args.tol2));
    println!("z,p,modulus_abs_err,signed_abs_err,status");
    let z_grid = [
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, 1.0),
        Complex64::new(1.0, 1.0),
    ];
    for &p in &p2 {
        for &z in &z_grid {
            let check = kernel_check_2d(z, p)?;
            let ok = check.modulus.abs_err <= args.tol2 && check.signed.abs_err <= args.tol2;
            failed |= !ok;
            println!(
                "{}+{}i,{},{},{},{}",
                format_sig15(z.re),
                format_sig15(z.im),
                format_sig15(p),
                format_sig15(check.modulus.abs_err),
                format_sig15(check.signed.abs_err),
                if ok { "ok" } else { "FAIL" }
            );
        }
    }

    println!("moment constants:");
    println!("alpha,psi,s_real_1,s_iso_1,c0,status");
    for &a in &alphas {
        let alpha = Alpha::new(a)?;
        let c = constants(alpha, 1.0)?;
        let ok = c.s_alpha_real <= c.psi_alpha && c.c0 > 0.0 && c.c0 < 1.0;
        failed |= !ok;
        println!(
            "{},{},{},{},{},{}",
            format_sig15(a),
            format_sig15(c.psi_alpha),
            format_sig15(c.s_alpha_real),
            format_sig15(c.moment_ratio(MomentKind::Isotropic)),
            format_sig15(c.c0),
            if ok { "ok" } else { "FAIL" }
        );
    }

    if failed {
        Err(Failure::Check("at least one identity exceeded its threshold".into()))
    } else {
        println!("all identities within thresholds");
        Ok(())
    }
}
