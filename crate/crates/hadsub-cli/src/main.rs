//! `hadsub` — subfactor invariants of complex Hadamard matrices.
//!
//! Exit codes: 0 success, 1 usage error, 2 verification failure,
//! 3 size limit exceeded, 4 ambiguous rank decision.

use std::f64::consts::TAU;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use hadsub::catalog::{catalog_matrix, families, family_by_tag};
use hadsub::commutants::{sweep_second_commutant, SweepResult};
use hadsub::dita::{
    verify_bisch_expectation, verify_bisch_membership, verify_intermediate_decomposition,
    dita_compose, DitaShape,
};
use hadsub::hadamard::{
    equivalence_fingerprint, fingerprint_digits, fingerprint_hash, random_equivalence,
    verify_hadamard, HadamardMatrix, DEFAULT_TOL,
};
use hadsub::io::{read_hadamard_file, read_square_matrix, write_matrix};
use hadsub::report::{build_report, write_report, DitaSummary, ReportFormat, ReportOptions};
use hadsub::Error;

const EXIT_USAGE: u8 = 1;
const EXIT_VERIFICATION: u8 = 2;
const EXIT_SIZE_LIMIT: u8 = 3;
const EXIT_AMBIGUOUS: u8 = 4;

#[derive(Parser)]
#[command(
    name = "hadsub",
    version,
    about = "Subfactor invariants of complex Hadamard matrices",
    after_help = "Angle parameters take a 'rad' or 'tau' suffix: 0.5rad is half a radian, \
0.25tau is a quarter turn. Bare numbers are radians (or the size, for 'fourier'). \
The HADSUB_TOL environment variable overrides the default tolerance 1e-9."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a matrix file holds a complex Hadamard matrix.
    Verify {
        file: PathBuf,
        /// Entry/orthogonality tolerance (default 1e-9, or HADSUB_TOL).
        #[arg(long)]
        tol: Option<f64>,
    },
    /// List the built-in families or generate one to a file.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Analyze a matrix: commuting square, fingerprint, relative commutants.
    Analyze(AnalyzeArgs),
    /// Sweep the second commutant of a family over a parameter grid.
    Sweep {
        /// Family tag (see `catalog list`).
        #[arg(long)]
        family: String,
        /// Comma-separated grid steps, one per parameter (or one for all).
        #[arg(long)]
        grid: String,
        /// Emit JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Compose a block (Dita-type) matrix and verify its intermediate structure.
    Dita(DitaArgs),
    /// Print the equivalence-fingerprint digest of a matrix file.
    Fingerprint {
        file: PathBuf,
        /// Also hash this many seeded random equivalences; any digest
        /// mismatch exits with a verification failure.
        #[arg(long, default_value_t = 0)]
        scrambles: usize,
        /// Seed for the random equivalences.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        tol: Option<f64>,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// List the families with their sizes and parameter counts.
    List,
    /// Generate a catalog matrix and write it as JSON.
    Gen {
        /// Family tag (see `catalog list`).
        family: String,
        /// Comma-separated parameters, e.g. `0.9rad` or `0.25tau`.
        #[arg(long, default_value = "")]
        params: String,
        /// Output file.
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Matrix file to analyze (or use --family).
    file: Option<PathBuf>,
    /// Catalog family tag instead of a file.
    #[arg(long, conflicts_with = "file")]
    family: Option<String>,
    /// Comma-separated family parameters.
    #[arg(long, requires = "family", default_value = "")]
    params: String,
    /// Highest relative-commutant order to compute (2, 3 or 4).
    #[arg(long, default_value_t = 2)]
    order: usize,
    /// Emit the JSON report.
    #[arg(long, conflicts_with = "text")]
    json: bool,
    /// Emit the text report (the default).
    #[arg(long)]
    text: bool,
    #[arg(long)]
    tol: Option<f64>,
    /// Override size guards and ambiguous-rank bailouts for orders 3/4.
    #[arg(long)]
    force: bool,
    /// Include per-stage timings (makes the JSON non-reproducible).
    #[arg(long)]
    timings: bool,
}

#[derive(Args)]
struct DitaArgs {
    /// The k x k outer Hadamard matrix.
    #[arg(long = "A")]
    a: PathBuf,
    /// The m x m block Hadamard matrices (k files).
    #[arg(long = "B", required = true)]
    b: Vec<PathBuf>,
    /// Optional unit-diagonal twists (k files).
    #[arg(long = "D")]
    d: Vec<PathBuf>,
    /// Only run the verifications; do not write the composed matrix.
    #[arg(long)]
    check_only: bool,
    /// Write the composed matrix to this file.
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Emit the JSON report.
    #[arg(long)]
    json: bool,
    #[arg(long)]
    tol: Option<f64>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // Help and version requests are successes, not usage errors.
            let code = if err.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::NotSquare { .. }
        | Error::NonFinite { .. }
        | Error::NotUnimodular { .. }
        | Error::RowsNotOrthogonal { .. } => EXIT_VERIFICATION,
        Error::SizeLimit { .. } => EXIT_SIZE_LIMIT,
        Error::AmbiguousRank { .. } => EXIT_AMBIGUOUS,
        _ => EXIT_USAGE,
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Verify { file, tol } => cmd_verify(&file, tol),
        Command::Catalog { action } => match action {
            CatalogAction::List => cmd_catalog_list(),
            CatalogAction::Gen { family, params, output } => {
                cmd_catalog_gen(&family, &params, &output)
            }
        },
        Command::Analyze(args) => cmd_analyze(args),
        Command::Sweep { family, grid, json } => cmd_sweep(&family, &grid, json),
        Command::Dita(args) => cmd_dita(args),
        Command::Fingerprint { file, scrambles, seed, tol } => {
            cmd_fingerprint(&file, scrambles, seed, tol)
        }
    }
}

/// Tolerance: command line beats `HADSUB_TOL` beats the default.
fn resolve_tol(cli_tol: Option<f64>) -> Result<f64, Error> {
    if let Some(t) = cli_tol {
        return Ok(t);
    }
    match std::env::var("HADSUB_TOL") {
        Ok(raw) => raw
            .trim()
            .parse::<f64>()
            .map_err(|_| Error::Parse(format!("HADSUB_TOL is not a number: '{raw}'"))),
        Err(_) => Ok(DEFAULT_TOL),
    }
}

/// Parses one parameter: `0.5rad` (radians), `0.25tau` (fraction of a full
/// turn), or a bare number (radians; the size, for `fourier`).
fn parse_param(token: &str) -> Result<f64, Error> {
    let t = token.trim();
    let parsed = if let Some(x) = t.strip_suffix("tau") {
        x.parse::<f64>().map(|v| v * TAU)
    } else if let Some(x) = t.strip_suffix("rad") {
        x.parse::<f64>()
    } else {
        t.parse::<f64>()
    };
    parsed.map_err(|_| {
        Error::Parse(format!("cannot read parameter '{token}' (use e.g. 0.9rad or 0.25tau)"))
    })
}

fn parse_params(raw: &str) -> Result<Vec<f64>, Error> {
    let raw = raw.trim();
    if raw.is_empty() {
        return Ok(Vec::new());
    }
    raw.split(',').map(parse_param).collect()
}

fn load_family(tag: &str, params_raw: &str) -> Result<(HadamardMatrix, String), Error> {
    let family = family_by_tag(tag)?;
    let params = parse_params(params_raw)?;
    let h = catalog_matrix(family, &params)?;
    let source =
        if params_raw.is_empty() { tag.to_string() } else { format!("{tag}({params_raw})") };
    Ok((h, source))
}

fn cmd_verify(file: &Path, tol: Option<f64>) -> Result<u8, Error> {
    let tol = resolve_tol(tol)?;
    let h = read_hadamard_file(file, tol)?;
    println!("ok: {} is a {}x{} complex Hadamard matrix (tol {:e})", file.display(), h.size(), h.size(), tol);
    Ok(0)
}

fn cmd_catalog_list() -> Result<u8, Error> {
    for spec in families() {
        let size = match spec.size {
            Some(n) => n.to_string(),
            None => "n".to_string(),
        };
        println!("{:<9} size {:<2} params {}  {}", spec.tag, size, spec.arity, spec.summary);
    }
    Ok(0)
}

fn cmd_catalog_gen(tag: &str, params: &str, output: &Path) -> Result<u8, Error> {
    let (h, _) = load_family(tag, params)?;
    write_matrix(output, h.matrix())?;
    println!("wrote {} ({}x{})", output.display(), h.size(), h.size());
    Ok(0)
}

fn cmd_analyze(args: AnalyzeArgs) -> Result<u8, Error> {
    if !(2..=4).contains(&args.order) {
        return Err(Error::Parse(format!("--order must be 2, 3 or 4, got {}", args.order)));
    }
    let tol = resolve_tol(args.tol)?;
    let (h, source) = match (&args.file, &args.family) {
        (Some(path), None) => (read_hadamard_file(path, tol)?, path.display().to_string()),
        (None, Some(tag)) => {
            let (h, source) = load_family(tag, &args.params)?;
            // Catalog matrices are certified at the default tolerance;
            // re-certify when the user asked for a different one.
            let h = if tol == DEFAULT_TOL { h } else { verify_hadamard(h.matrix(), tol)? };
            (h, source)
        }
        _ => {
            return Err(Error::Parse(
                "analyze needs a matrix file or --family (but not both)".into(),
            ))
        }
    };
    let opts =
        ReportOptions { max_order: args.order, force: args.force, with_timings: args.timings };
    let report = build_report(&h, &source, &opts)?;
    let format = if args.json { ReportFormat::Json } else { ReportFormat::Text };
    print!("{}", write_report(&report, format));
    Ok(0)
}

#[derive(Serialize)]
struct SweepOut {
    family: String,
    steps: Vec<usize>,
    total_points: usize,
    generic_dim: usize,
    exceptional: Vec<ExceptionalOut>,
}

#[derive(Serialize)]
struct ExceptionalOut {
    index: usize,
    axis_indices: Vec<usize>,
    params: Vec<f64>,
    dim: usize,
    block_sizes: Vec<usize>,
}

fn cmd_sweep(tag: &str, grid: &str, json: bool) -> Result<u8, Error> {
    let family = family_by_tag(tag)?;
    let steps: Vec<usize> = grid
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad grid step '{t}'")))
        })
        .collect::<Result<_, _>>()?;
    let sweep = sweep_second_commutant(family, &steps)?;
    let out = summarize_sweep(tag, &sweep);
    if json {
        println!("{}", serde_json::to_string_pretty(&out)?);
    } else {
        println!(
            "swept {} points of '{}' on grid {:?}: generic dim {}, {} exceptional point(s)",
            out.total_points, out.family, out.steps, out.generic_dim, out.exceptional.len()
        );
        for e in &out.exceptional {
            println!(
                "  #{} at grid {:?} params {:?}: dim {} blocks {:?}",
                e.index, e.axis_indices, e.params, e.dim, e.block_sizes
            );
        }
    }
    Ok(0)
}

fn summarize_sweep(tag: &str, sweep: &SweepResult) -> SweepOut {
    let exceptional = sweep
        .exceptional_indices()
        .into_iter()
        .map(|i| {
            let p = &sweep.points[i];
            ExceptionalOut {
                index: i,
                axis_indices: sweep.axis_indices(i),
                params: p.params.clone(),
                dim: p.dim,
                block_sizes: p.block_sizes.clone(),
            }
        })
        .collect();
    SweepOut {
        family: tag.to_string(),
        steps: sweep.steps.clone(),
        total_points: sweep.points.len(),
        generic_dim: sweep.generic_dim(),
        exceptional,
    }
}

fn cmd_dita(args: DitaArgs) -> Result<u8, Error> {
    let tol = resolve_tol(args.tol)?;
    let a = read_hadamard_file(&args.a, tol)?;
    let b = args
        .b
        .iter()
        .map(|p| read_hadamard_file(p, tol))
        .collect::<Result<Vec<_>, _>>()?;
    let d = args
        .d
        .iter()
        .map(|p| read_square_matrix(p))
        .collect::<Result<Vec<_>, _>>()?;
    let d_opt = if d.is_empty() { None } else { Some(d.as_slice()) };

    let composed = dita_compose(&a, &b, d_opt)?;
    let (m, k) = (b[0].size(), a.size());
    let shape = DitaShape::new(composed.size(), m, k)?;
    let membership = verify_bisch_membership(&composed, shape, tol)?;
    let decomposition = verify_intermediate_decomposition(&a, &b, d_opt, tol)?;
    let expectation = verify_bisch_expectation(shape, tol);

    if let Some(out) = &args.output {
        if !args.check_only {
            write_matrix(out, composed.matrix())?;
        }
    }

    let source = format!(
        "dita A={} B=[{}]{}",
        args.a.display(),
        args.b.iter().map(|p| p.display().to_string()).collect::<Vec<_>>().join(","),
        if args.d.is_empty() {
            String::new()
        } else {
            format!(
                " D=[{}]",
                args.d.iter().map(|p| p.display().to_string()).collect::<Vec<_>>().join(",")
            )
        }
    );
    let mut report = build_report(&composed, &source, &ReportOptions::default())?;
    report.dita = Some(DitaSummary {
        shape: [shape.n(), shape.m(), shape.k()],
        membership: membership.member,
        intermediate_ok: decomposition.passed && expectation.passed,
    });
    let format = if args.json { ReportFormat::Json } else { ReportFormat::Text };
    print!("{}", write_report(&report, format));

    if membership.member && decomposition.passed && expectation.passed {
        Ok(0)
    } else {
        if let Some((wa, wb, wc, wd)) = membership.witness {
            eprintln!(
                "membership fails at profile entry p[{wa},{wb};{wc},{wd}] (modulus {:.3e})",
                membership.worst
            );
        }
        if !decomposition.passed {
            eprintln!("intermediate decomposition defects: {decomposition:?}");
        }
        Ok(EXIT_VERIFICATION)
    }
}

fn cmd_fingerprint(
    file: &Path,
    scrambles: usize,
    seed: u64,
    tol: Option<f64>,
) -> Result<u8, Error> {
    let tol = resolve_tol(tol)?;
    let h = read_hadamard_file(file, tol)?;
    let digits = fingerprint_digits(tol);
    let base = fingerprint_hash(&equivalence_fingerprint(&h), digits);
    println!("{base}");
    let mut all_equal = true;
    for i in 0..scrambles {
        let scrambled = random_equivalence(&h, seed.wrapping_add(i as u64));
        let hash = fingerprint_hash(&equivalence_fingerprint(&scrambled), digits);
        let same = hash == base;
        all_equal &= same;
        println!("scramble {i}: {hash}{}", if same { "" } else { "  MISMATCH" });
    }
    if all_equal {
        Ok(0)
    } else {
        eprintln!("fingerprint is not equivalence-invariant at this tolerance");
        Ok(EXIT_VERIFICATION)
    }
}
