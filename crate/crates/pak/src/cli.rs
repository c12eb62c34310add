//! Command-line surface binding the library modules: verify, analyze,
//! enumerate, classify, transform, isomorphic, oracle, and algebra
//! subcommands with JSON input/output and deterministic exit codes.
//!
//! Exit codes: 0 success/pass, 1 mathematical failure (a violation was
//! found), 2 proven distinct (`isomorphic`), 3 inconclusive, 64 usage
//! error, 65 input parse error. Text output is human-oriented and
//! unstable; JSON output (`--json`, or commands that always emit JSON) is
//! the compatibility contract, and identical configuration — including the
//! seed — produces byte-identical reports.
//!
//! ```
//! let code = pak::cli::run(
//!     ["pak", "algebra", "--name", "L_7", "--field", "q"]
//!         .map(String::from),
//! );
//! assert_eq!(code, 0);
//! ```

use crate::algebra::PeriodicAlgebra;
use crate::analysis::{
    derived_series, fingerprint, lower_central_series, Fingerprint, InvariantProfile,
};
use crate::classify::{classification_report, named_algebras, paper_algebra};
use crate::error::Error;
use crate::field::{Field, FieldElement};
use crate::leibniz::{
    candidate_count, enumerate_leibniz, leibniz_element_check, leibniz_residue_check,
    LeibnizViolation, DEFAULT_ENUM_BUDGET,
};
use crate::residue::{residue_of, Residue};
use crate::sample::{random_element, random_index, random_matrix, rng_from_seed, DEFAULT_SEED};
use crate::transform::{apply_residue_shift, inflate, isomorphism_search, scale, shift};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use rand::Rng;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

// =======================================================================
// Exit codes
// =======================================================================

/// Success, or a verification that passed.
pub const EXIT_PASS: u8 = 0;
/// A mathematical violation was found.
pub const EXIT_VIOLATION: u8 = 1;
/// The two inputs are provably non-isomorphic.
pub const EXIT_DISTINCT: u8 = 2;
/// The search was exhausted without a verdict.
pub const EXIT_INCONCLUSIVE: u8 = 3;
/// Malformed command line or refused configuration.
pub const EXIT_USAGE: u8 = 64;
/// An input document could not be read or parsed.
pub const EXIT_PARSE: u8 = 65;

/// Helper: a failure carrying its exit code and message.
#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn parse(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_PARSE,
            message: message.into(),
        }
    }
}

// =======================================================================
// Argument grammar
// =======================================================================

/// Exact-arithmetic toolkit for periodic algebras over the integer group.
#[derive(Parser)]
#[command(name = "pak", version, about)]
struct Cli {
    /// Worker threads for parallel scans (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Emit reports (and errors) as JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check algebra laws on an input algebra.
    Verify {
        #[command(subcommand)]
        check: VerifyCheck,
    },
    /// Fingerprint an algebra, or walk one of its residue series.
    Analyze(AnalyzeArgs),
    /// List every Leibniz structure matrix over a prime field.
    Enumerate(EnumerateArgs),
    /// Enumerate Leibniz solutions and match them against family tables.
    Classify(ClassifyArgs),
    /// Apply a basis transformation and emit the transformed algebra.
    Transform {
        #[command(subcommand)]
        op: TransformCmd,
    },
    /// Search for an isomorphism between two algebras.
    Isomorphic(IsomorphicArgs),
    /// Randomized cross-checks of closed-form identities.
    Oracle {
        #[command(subcommand)]
        check: OracleCheck,
    },
    /// Emit a named reference algebra as JSON.
    Algebra(AlgebraArgs),
}

#[derive(Subcommand)]
enum VerifyCheck {
    /// Check the Leibniz identity via the finite residue system.
    Leibniz(VerifyLeibnizArgs),
}

#[derive(Args)]
struct VerifyLeibnizArgs {
    /// Algebra JSON document to verify.
    #[arg(long)]
    input: PathBuf,
    /// Also cross-check the identity on random elements.
    #[arg(long)]
    elements: bool,
    /// Number of random element triples when --elements is set.
    #[arg(long, default_value_t = 100)]
    trials: u64,
    /// Half-width of the sampled index window (default and minimum: 2n).
    #[arg(long)]
    window: Option<i64>,
    /// Seed for the element samples.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Algebra JSON document to analyze.
    #[arg(long)]
    input: PathBuf,
    /// Walk a residue series instead of printing the fingerprint.
    #[arg(long, value_enum)]
    series: Option<SeriesKind>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SeriesKind {
    /// Lower central series.
    Lower,
    /// Derived series.
    Derived,
}

#[derive(Args)]
struct EnumerateArgs {
    /// Period of the structure matrices.
    #[arg(long)]
    n: usize,
    /// Translation (an integer; only its residue mod n matters here).
    #[arg(long, allow_hyphen_values = true)]
    t: String,
    /// Scalar field: "q" or "fp:P" for a prime P.
    #[arg(long)]
    field: String,
    /// Write the report to a file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Candidate budget (default: PAK_BUDGET, then 100000000).
    #[arg(long)]
    budget: Option<u64>,
}

#[derive(Args)]
struct ClassifyArgs {
    /// Period of the structure matrices.
    #[arg(long)]
    n: usize,
    /// Translation (an integer; only its residue mod n matters here).
    #[arg(long, allow_hyphen_values = true)]
    t: String,
    /// Scalar field: "q" or "fp:P" for a prime P.
    #[arg(long)]
    field: String,
    /// Family table to match against.
    #[arg(long, default_value = "builtin")]
    families: String,
    /// Write the report to a file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Candidate budget (default: PAK_BUDGET, then 100000000).
    #[arg(long)]
    budget: Option<u64>,
}

#[derive(Subcommand)]
enum TransformCmd {
    /// Precompose the basis enumeration with an integer shift.
    Shift(ShiftArgs),
    /// Rescale every basis vector by per-residue factors.
    Scale(ScaleArgs),
    /// View the algebra at an integer multiple of its period.
    Inflate(InflateArgs),
    /// Offset every basis index by a residue-dependent amount.
    ResidueShift(ResidueShiftArgs),
}

#[derive(Args)]
struct ShiftArgs {
    /// Algebra JSON document to transform.
    #[arg(long)]
    input: PathBuf,
    /// Shift amount (any integer).
    #[arg(long, allow_hyphen_values = true)]
    c: String,
    /// Write the transformed algebra to a file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ScaleArgs {
    /// Algebra JSON document to transform.
    #[arg(long)]
    input: PathBuf,
    /// Comma-separated scaling factors, one per residue (e.g. "1,-1,1/2").
    #[arg(long, allow_hyphen_values = true)]
    lambda: String,
    /// Write the transformed algebra to a file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct InflateArgs {
    /// Algebra JSON document to transform.
    #[arg(long)]
    input: PathBuf,
    /// Inflation factor (the new period is m times the old one).
    #[arg(long)]
    m: usize,
    /// Write the transformed algebra to a file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ResidueShiftArgs {
    /// Algebra JSON document to transform.
    #[arg(long)]
    input: PathBuf,
    /// Comma-separated integer offsets, one per residue (e.g. "0,1,-1").
    #[arg(long, allow_hyphen_values = true)]
    d: String,
    /// Write the transformed algebra to a file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct IsomorphicArgs {
    /// Source algebra JSON document.
    a: PathBuf,
    /// Target algebra JSON document.
    b: PathBuf,
}

#[derive(Subcommand)]
enum OracleCheck {
    /// Compare recursive balanced products against the closed form.
    Balanced(OracleBalancedArgs),
}

#[derive(Args)]
struct OracleBalancedArgs {
    /// Bracket depth: the product has 2^r factors (1 ≤ r ≤ 3).
    #[arg(long)]
    r: u32,
    /// Number of random trials.
    #[arg(long, default_value_t = 100)]
    trials: u64,
    /// Seed for the trial samples.
    #[arg(long)]
    seed: Option<u64>,
    /// Scalar field: "q" or "fp:P" for a prime P.
    #[arg(long)]
    field: String,
    /// Period of the sampled structure matrices.
    #[arg(long)]
    n: usize,
}

#[derive(Args)]
struct AlgebraArgs {
    /// Name of the reference algebra (e.g. "L_7").
    #[arg(long)]
    name: String,
    /// Scalar field: "q" or "fp:P" for a prime P.
    #[arg(long, default_value = "q")]
    field: String,
    /// Parameter assignment, repeatable (e.g. --param beta=1/2).
    #[arg(long = "param", value_name = "NAME=VALUE")]
    params: Vec<String>,
    /// Override the translation t.
    #[arg(long, allow_hyphen_values = true)]
    t: Option<String>,
    /// Write the algebra to a file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

// =======================================================================
// Report shapes (the JSON compatibility contract)
// =======================================================================

#[derive(Serialize)]
struct ErrorReport<'a> {
    error: &'a str,
}

#[derive(Serialize)]
struct VerifyReport<'a> {
    input: String,
    leibniz: bool,
    violations: &'a [LeibnizViolation],
    #[serde(skip_serializing_if = "Option::is_none")]
    elements: Option<ElementTrials>,
}

#[derive(Serialize)]
struct ElementTrials {
    trials: u64,
    window: i64,
    seed: u64,
    mismatches: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    first_mismatch: Option<ElementMismatch>,
}

#[derive(Serialize)]
struct ElementMismatch {
    trial: u64,
    x: String,
    y: String,
    z: String,
    difference: String,
}

#[derive(Serialize)]
struct EnumerationReport {
    field: Field,
    period: usize,
    t_res: Residue,
    candidates: u64,
    solutions: Vec<Vec<Vec<String>>>,
}

#[derive(Serialize)]
struct IsomorphicReport {
    verdict: &'static str,
    reason: String,
    a_fingerprint: Fingerprint,
    b_fingerprint: Fingerprint,
    a_profile: InvariantProfile,
    b_profile: InvariantProfile,
}

#[derive(Serialize)]
struct OracleReport {
    oracle: &'static str,
    r: u32,
    trials: u64,
    seed: u64,
    field: Field,
    n: usize,
    window: i64,
    mismatches: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    first_mismatch: Option<OracleMismatch>,
}

#[derive(Serialize)]
struct OracleMismatch {
    trial: u64,
    algebra: String,
    indices: Vec<String>,
    recursive: String,
    closed_form: String,
}

// =======================================================================
// Entry point
// =======================================================================

/// Parses `argv` (program name first), runs the requested command, and
/// returns the process exit code.
pub fn run<I>(args: I) -> u8
where
    I: IntoIterator<Item = String>,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_PASS,
                _ => EXIT_USAGE,
            };
            let _ = err.print();
            return code;
        }
    };
    let json = cli.json;
    let outcome = match cli.jobs {
        None => dispatch(cli.command, json),
        Some(0) => Err(Failure::usage("--jobs must be positive")),
        Some(jobs) => match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
            Ok(pool) => pool.install(|| dispatch(cli.command, json)),
            Err(err) => Err(Failure::usage(format!("cannot build worker pool: {err}"))),
        },
    };
    match outcome {
        Ok(code) => code,
        Err(failure) => {
            if json {
                let report = ErrorReport {
                    error: &failure.message,
                };
                eprintln!("{}", serde_json::to_string(&report).expect("error serializes"));
            } else {
                eprintln!("error: {}", failure.message);
            }
            failure.code
        }
    }
}

/// Helper: routes one parsed command to its handler.
fn dispatch(command: Command, json: bool) -> Result<u8, Failure> {
    match command {
        Command::Verify {
            check: VerifyCheck::Leibniz(args),
        } => cmd_verify_leibniz(args, json),
        Command::Analyze(args) => cmd_analyze(args, json),
        Command::Enumerate(args) => cmd_enumerate(args),
        Command::Classify(args) => cmd_classify(args),
        Command::Transform { op } => cmd_transform(op),
        Command::Isomorphic(args) => cmd_isomorphic(args),
        Command::Oracle {
            check: OracleCheck::Balanced(args),
        } => cmd_oracle_balanced(args, json),
        Command::Algebra(args) => cmd_algebra(args),
    }
}

// =======================================================================
// Command handlers
// =======================================================================

fn cmd_verify_leibniz(args: VerifyLeibnizArgs, json: bool) -> Result<u8, Failure> {
    let alg = read_algebra(&args.input)?;
    let window = resolve_window(args.window, alg.period())?;
    let violations = leibniz_residue_check(&alg);
    let elements = if args.elements {
        let seed = args.seed.unwrap_or(DEFAULT_SEED);
        let mut rng = rng_from_seed(seed);
        let mut mismatches = 0u64;
        let mut first_mismatch = None;
        for trial in 0..args.trials {
            let x = random_element(&mut rng, alg.field(), window, 3);
            let y = random_element(&mut rng, alg.field(), window, 3);
            let z = random_element(&mut rng, alg.field(), window, 3);
            if let Some(difference) = leibniz_element_check(&alg, &x, &y, &z) {
                mismatches += 1;
                if first_mismatch.is_none() {
                    first_mismatch = Some(ElementMismatch {
                        trial,
                        x: x.to_string(),
                        y: y.to_string(),
                        z: z.to_string(),
                        difference: difference.to_string(),
                    });
                }
            }
        }
        Some(ElementTrials {
            trials: args.trials,
            window,
            seed,
            mismatches,
            first_mismatch,
        })
    } else {
        None
    };
    let element_mismatches = elements.as_ref().map_or(0, |e| e.mismatches);
    let passed = violations.is_empty() && element_mismatches == 0;
    let report = VerifyReport {
        input: args.input.display().to_string(),
        leibniz: violations.is_empty(),
        violations: &violations,
        elements,
    };
    if json {
        println!(
            "{}",
            serde_json::to_string(&report).expect("report serializes")
        );
    } else if passed {
        println!("verify leibniz: PASS ({})", args.input.display());
    } else {
        println!(
            "verify leibniz: FAIL ({} residue violations, {} element mismatches)",
            violations.len(),
            element_mismatches
        );
        println!(
            "{}",
            serde_json::to_string(&violations).expect("violations serialize")
        );
    }
    Ok(if passed { EXIT_PASS } else { EXIT_VIOLATION })
}

fn cmd_analyze(args: AnalyzeArgs, json: bool) -> Result<u8, Failure> {
    let alg = read_algebra(&args.input)?;
    match args.series {
        Some(kind) => {
            let series = match kind {
                SeriesKind::Lower => lower_central_series(&alg),
                SeriesKind::Derived => derived_series(&alg),
            };
            if json {
                println!(
                    "{}",
                    serde_json::to_string(&series).expect("series serializes")
                );
            } else {
                for (offset, stage) in series.stages.iter().enumerate() {
                    println!(
                        "S_{} = {}",
                        series.first_index + offset,
                        format_residue_set(stage)
                    );
                }
                println!("terminated: {}", series.terminated);
                match series.index {
                    Some(index) => println!("index: {index}"),
                    None => println!("index: none"),
                }
            }
        }
        None => {
            let print = fingerprint(&alg);
            if json {
                println!(
                    "{}",
                    serde_json::to_string(&print).expect("fingerprint serializes")
                );
            } else {
                println!("leibniz: {}", print.is_leibniz);
                println!("lie: {}", print.is_lie);
                println!("right nilpotent: {}", print.is_right_nilpotent);
                println!("solvable: {}", print.solvable);
                match print.solvability_index {
                    Some(index) => println!("solvability index: {index}"),
                    None => println!("solvability index: none"),
                }
                println!("perfect: {}", print.perfect);
                println!(
                    "right annihilator residues: {}",
                    format_residue_set(&print.right_annihilator_residues)
                );
                println!(
                    "left annihilator residues: {}",
                    format_residue_set(&print.left_annihilator_residues)
                );
                println!(
                    "center residues: {}",
                    format_residue_set(&print.center_residues)
                );
                println!(
                    "square residues: {}",
                    format_residue_set(&print.square_residues)
                );
            }
        }
    }
    Ok(EXIT_PASS)
}

fn cmd_enumerate(args: EnumerateArgs) -> Result<u8, Failure> {
    let field = parse_field(&args.field)?;
    let budget = resolve_budget(args.budget)?;
    let t_res = translation_residue(&args.t, args.n)?;
    let solutions = enumerate_leibniz(args.n, t_res, field, budget).map_err(refusal)?;
    let candidates = candidate_count(args.n, field).map_err(refusal)? as u64;
    let report = EnumerationReport {
        field,
        period: args.n,
        t_res,
        candidates,
        solutions: solutions
            .iter()
            .map(crate::algebra::StructureMatrix::rows_strings)
            .collect(),
    };
    let body = serde_json::to_string(&report).expect("report serializes");
    emit(
        args.out.as_deref(),
        &body,
        &format!(
            "enumerate: {} solutions among {} candidates",
            report.solutions.len(),
            candidates
        ),
    )?;
    Ok(EXIT_PASS)
}

fn cmd_classify(args: ClassifyArgs) -> Result<u8, Failure> {
    if args.families != "builtin" {
        return Err(Failure::usage(format!(
            "unknown family table {:?}; only \"builtin\" is registered",
            args.families
        )));
    }
    let field = parse_field(&args.field)?;
    let budget = resolve_budget(args.budget)?;
    let t_res = translation_residue(&args.t, args.n)?;
    let report = classification_report(args.n, t_res, field, budget).map_err(refusal)?;
    let body = serde_json::to_string(&report).expect("report serializes");
    emit(
        args.out.as_deref(),
        &body,
        &format!(
            "classify: {} solutions, {} unmatched",
            report.solutions.len(),
            report.unmatched.len()
        ),
    )?;
    Ok(EXIT_PASS)
}

fn cmd_transform(op: TransformCmd) -> Result<u8, Failure> {
    match op {
        TransformCmd::Shift(args) => {
            let alg = read_algebra(&args.input)?;
            let c = parse_integer(&args.c)?;
            emit_algebra(args.out.as_deref(), &shift(&alg, c))
        }
        TransformCmd::Scale(args) => {
            let alg = read_algebra(&args.input)?;
            let lambda = parse_scalar_list(&args.lambda, alg.field())?;
            let transformed = scale(&alg, &lambda).map_err(transform_failure)?;
            emit_algebra(args.out.as_deref(), &transformed)
        }
        TransformCmd::Inflate(args) => {
            let alg = read_algebra(&args.input)?;
            let transformed = inflate(&alg, args.m).map_err(transform_failure)?;
            emit_algebra(args.out.as_deref(), &transformed)
        }
        TransformCmd::ResidueShift(args) => {
            let alg = read_algebra(&args.input)?;
            let offsets = parse_i64_list(&args.d)?;
            let transformed = apply_residue_shift(&alg, &offsets).map_err(transform_failure)?;
            emit_algebra(args.out.as_deref(), &transformed)
        }
    }
}

fn cmd_isomorphic(args: IsomorphicArgs) -> Result<u8, Failure> {
    let a = read_algebra(&args.a)?;
    let b = read_algebra(&args.b)?;
    let searched = match isomorphism_search(&a, &b) {
        Ok(found) => found,
        // Mismatched periods or fields prove the algebras distinct; fall
        // through to the verdict report below.
        Err(Error::PeriodMismatch { .. } | Error::FieldMismatch { .. }) => None,
        Err(other) => return Err(refusal(other)),
    };
    if let Some(transform) = searched {
        println!("{}", transform.to_json_string());
        return Ok(EXIT_PASS);
    }
    let a_fingerprint = fingerprint(&a);
    let b_fingerprint = fingerprint(&b);
    let a_profile = a_fingerprint.invariant_profile();
    let b_profile = b_fingerprint.invariant_profile();
    let (verdict, reason, code) = if a.period() != b.period() {
        (
            "distinct",
            format!("periods differ ({} vs {})", a.period(), b.period()),
            EXIT_DISTINCT,
        )
    } else if a.field() != b.field() {
        (
            "distinct",
            format!("fields differ ({} vs {})", a.field(), b.field()),
            EXIT_DISTINCT,
        )
    } else if a_profile != b_profile {
        (
            "distinct",
            "invariant profiles differ".to_string(),
            EXIT_DISTINCT,
        )
    } else {
        (
            "inconclusive",
            "search space exhausted without a witness".to_string(),
            EXIT_INCONCLUSIVE,
        )
    };
    let report = IsomorphicReport {
        verdict,
        reason,
        a_fingerprint,
        b_fingerprint,
        a_profile,
        b_profile,
    };
    println!(
        "{}",
        serde_json::to_string(&report).expect("report serializes")
    );
    Ok(code)
}

fn cmd_oracle_balanced(args: OracleBalancedArgs, json: bool) -> Result<u8, Failure> {
    if args.r == 0 || args.r > 3 {
        return Err(Failure::usage(format!(
            "--r must be between 1 and 3 (got {}); deeper brackets exceed the verification budget",
            args.r
        )));
    }
    if args.n == 0 {
        return Err(Failure::usage("--n must be positive"));
    }
    let field = parse_field(&args.field)?;
    let seed = args.seed.unwrap_or(DEFAULT_SEED);
    let mut rng = rng_from_seed(seed);
    let factors = 1usize << args.r;
    let window = 2 * args.n as i64;
    let mut mismatches = 0u64;
    let mut first_mismatch = None;
    for trial in 0..args.trials {
        let matrix = random_matrix(&mut rng, field, args.n);
        let t = rng.gen_range(-3i64..=3);
        let alg = PeriodicAlgebra::new(matrix, t);
        let indices: Vec<BigInt> = (0..factors)
            .map(|_| random_index(&mut rng, window))
            .collect();
        let recursive = alg
            .balanced_product(&indices)
            .expect("factor count is a power of two");
        let closed_form = alg
            .closed_form_balanced(&indices)
            .expect("factor count is a power of two");
        if recursive != closed_form {
            mismatches += 1;
            if first_mismatch.is_none() {
                first_mismatch = Some(OracleMismatch {
                    trial,
                    algebra: alg.to_json_string(),
                    indices: indices.iter().map(ToString::to_string).collect(),
                    recursive: recursive.to_string(),
                    closed_form: closed_form.to_string(),
                });
            }
        }
    }
    let report = OracleReport {
        oracle: "balanced",
        r: args.r,
        trials: args.trials,
        seed,
        field,
        n: args.n,
        window,
        mismatches,
        first_mismatch,
    };
    if json || mismatches > 0 {
        println!(
            "{}",
            serde_json::to_string(&report).expect("report serializes")
        );
    } else {
        println!(
            "oracle balanced: PASS (r={}, trials={}, seed={})",
            args.r, args.trials, seed
        );
    }
    Ok(if mismatches == 0 {
        EXIT_PASS
    } else {
        EXIT_VIOLATION
    })
}

fn cmd_algebra(args: AlgebraArgs) -> Result<u8, Failure> {
    let field = parse_field(&args.field)?;
    let mut params = BTreeMap::new();
    for raw in &args.params {
        let (key, value) = raw
            .split_once('=')
            .ok_or_else(|| Failure::usage(format!("--param expects NAME=VALUE, got {raw:?}")))?;
        let scalar = FieldElement::parse(field, value.trim())
            .map_err(|err| Failure::usage(err.to_string()))?;
        params.insert(key.trim().to_string(), scalar);
    }
    let alg = paper_algebra(&args.name, field, &params).map_err(|err| match err {
        Error::UnknownAlgebra(name) => Failure::usage(format!(
            "unknown algebra {name:?}; known names: {}",
            named_algebras().join(", ")
        )),
        other => Failure::usage(other.to_string()),
    })?;
    let alg = match &args.t {
        Some(text) => PeriodicAlgebra::new(alg.matrix().clone(), parse_integer(text)?),
        None => alg,
    };
    emit_algebra(args.out.as_deref(), &alg)
}

// =======================================================================
// Shared plumbing
// =======================================================================

/// Helper: reads and parses an input algebra document; every failure is an
/// input parse error.
fn read_algebra(path: &Path) -> Result<PeriodicAlgebra, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|err| Failure::parse(format!("cannot read {}: {err}", path.display())))?;
    PeriodicAlgebra::from_json_str(&text)
        .map_err(|err| Failure::parse(format!("{}: {err}", path.display())))
}

/// Helper: parses a field descriptor ("q" or "fp:P").
fn parse_field(text: &str) -> Result<Field, Failure> {
    let lower = text.trim().to_ascii_lowercase();
    if lower == "q" {
        return Ok(Field::Q);
    }
    if let Some(rest) = lower.strip_prefix("fp:") {
        let p: u16 = rest
            .parse()
            .map_err(|_| Failure::usage(format!("invalid prime {rest:?} in field descriptor")))?;
        return Field::fp(p).map_err(|err| Failure::usage(err.to_string()));
    }
    Err(Failure::usage(format!(
        "unknown field descriptor {text:?}; use \"q\" or \"fp:P\""
    )))
}

/// Helper: the enumeration budget, from the flag, then the PAK_BUDGET
/// environment variable, then the built-in default.
fn resolve_budget(flag: Option<u64>) -> Result<u64, Failure> {
    let budget = match flag {
        Some(budget) => budget,
        None => match std::env::var("PAK_BUDGET") {
            Ok(raw) => raw.trim().parse::<u64>().map_err(|_| {
                Failure::usage(format!("PAK_BUDGET must be an unsigned integer, got {raw:?}"))
            })?,
            Err(std::env::VarError::NotPresent) => DEFAULT_ENUM_BUDGET,
            Err(err) => return Err(Failure::usage(format!("PAK_BUDGET: {err}"))),
        },
    };
    if budget == 0 {
        return Err(Failure::usage("budget must be positive"));
    }
    Ok(budget)
}

/// Helper: the element-sampling window, defaulting to twice the period and
/// never below it.
fn resolve_window(flag: Option<i64>, period: usize) -> Result<i64, Failure> {
    let minimum = 2 * period as i64;
    match flag {
        Some(window) if window < minimum => Err(Failure::usage(format!(
            "--window must be at least twice the period ({minimum})"
        ))),
        Some(window) => Ok(window),
        None => Ok(minimum),
    }
}

/// Helper: parses an arbitrary-precision integer argument.
fn parse_integer(text: &str) -> Result<BigInt, Failure> {
    BigInt::from_str(text.trim())
        .map_err(|_| Failure::usage(format!("invalid integer {text:?}")))
}

/// Helper: reduces a translation argument to its residue.
fn translation_residue(text: &str, n: usize) -> Result<Residue, Failure> {
    let t = parse_integer(text)?;
    residue_of(&t, n).map_err(|err| Failure::usage(err.to_string()))
}

/// Helper: parses a comma-separated scalar list in the given field.
fn parse_scalar_list(text: &str, field: Field) -> Result<Vec<FieldElement>, Failure> {
    text.split(',')
        .map(|part| {
            FieldElement::parse(field, part.trim()).map_err(|err| Failure::usage(err.to_string()))
        })
        .collect()
}

/// Helper: parses a comma-separated machine-integer list.
fn parse_i64_list(text: &str) -> Result<Vec<i64>, Failure> {
    text.split(',')
        .map(|part| {
            part.trim()
                .parse::<i64>()
                .map_err(|_| Failure::usage(format!("invalid integer {:?}", part.trim())))
        })
        .collect()
}

/// Helper: maps a refused computation (bad period, unenumerable field,
/// exceeded budget, …) to a usage failure.
fn refusal(err: Error) -> Failure {
    Failure::usage(err.to_string())
}

/// Helper: classifies transform-application errors. A violated shift
/// constraint is a mathematical obstruction on this algebra; everything
/// else rejects the arguments.
fn transform_failure(err: Error) -> Failure {
    match err {
        Error::ShiftConstraint { .. } => Failure {
            code: EXIT_VIOLATION,
            message: err.to_string(),
        },
        other => Failure::usage(other.to_string()),
    }
}

/// Helper: writes a JSON body to the output file (echoing a summary line)
/// or to stdout.
fn emit(out: Option<&Path>, body: &str, summary: &str) -> Result<(), Failure> {
    match out {
        Some(path) => {
            fs::write(path, format!("{body}\n"))
                .map_err(|err| Failure::usage(format!("cannot write {}: {err}", path.display())))?;
            println!("{summary}");
        }
        None => println!("{body}"),
    }
    Ok(())
}

/// Helper: emits an algebra document to the output file or stdout.
fn emit_algebra(out: Option<&Path>, alg: &PeriodicAlgebra) -> Result<u8, Failure> {
    emit(
        out,
        &alg.to_json_string(),
        &format!("wrote period-{} algebra", alg.period()),
    )?;
    Ok(EXIT_PASS)
}

/// Helper: renders a residue set as `{0, 1, 2}`.
fn format_residue_set(set: &BTreeSet<Residue>) -> String {
    let inner: Vec<String> = set.iter().map(ToString::to_string).collect();
    format!("{{{}}}", inner.join(", "))
}

// =======================================================================
// Tests
// =======================================================================
