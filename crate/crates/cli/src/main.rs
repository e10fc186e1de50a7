//! `gbsclass`: classify generalized Bell state sets under
//! Clifford-based local-unitary equivalence and test one-way LOCC
//! distinguishability.
//!
//! Exit codes: 0 success, 1 usage or runtime error, 2 no witness found,
//! 3 reference-table mismatch.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use gbs_core::fixtures::{self, TableId};
use gbs_core::store::{self, ClassificationDoc};
use gbs_core::{
    class_of, classify_all, classify_extension, find_witness, identity_base, orbit,
    Classification, ClassifyOptions, Emit, GbsSet, Method, SearchConfig, Verdict,
};

const EXIT_OK: u8 = 0;
const EXIT_USAGE: u8 = 1;
const EXIT_NO_WITNESS: u8 = 2;
const EXIT_TABLE_MISMATCH: u8 = 3;

#[derive(Parser)]
#[command(
    name = "gbsclass",
    version,
    about = "Classify generalized Bell state sets in C^d (x) C^d under Clifford \
             local-unitary equivalence and test one-way LOCC distinguishability"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify all standard l-sets over Z_d into equivalence classes
    Classify(ClassifyArgs),
    /// Print the equivalence class of one standard set
    Orbit(OrbitArgs),
    /// Search for a one-way LOCC teleportation witness for a set
    Distinguish(DistinguishArgs),
    /// Recompute a built-in reference table and diff against it
    Verify(VerifyArgs),
    /// Look up the class containing a set
    ClassOf(ClassOfArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    /// Scan the full universe of standard l-sets
    Full,
    /// Extend the (l-1)-set representatives one GPM at a time
    Incremental,
}

impl From<MethodArg> for Method {
    fn from(value: MethodArg) -> Method {
        match value {
            MethodArg::Full => Method::Full,
            MethodArg::Incremental => Method::Incremental,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EmitArg {
    /// Representatives and class sizes only
    Reps,
    /// Retain member lists
    Members,
}

#[derive(Args)]
struct ClassifyArgs {
    /// Qudit dimension d
    #[arg(long)]
    d: u32,
    /// Set cardinality l
    #[arg(long)]
    l: usize,
    #[arg(long, value_enum, default_value_t = MethodArg::Full)]
    method: MethodArg,
    /// Defaults to members for l <= 3 and reps for larger l
    #[arg(long, value_enum)]
    emit: Option<EmitArg>,
    /// Write the classification document here
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    workers: usize,
}

#[derive(Args)]
struct SetArgs {
    /// Qudit dimension d
    #[arg(long)]
    d: u32,
    /// Set in the form "(m,n);(m,n);..."
    #[arg(long)]
    set: String,
    /// Prepend the identity (0,0) to the parsed set
    #[arg(long)]
    implicit_identity: bool,
}

impl SetArgs {
    fn parse_set(&self) -> Result<GbsSet, gbs_core::Error> {
        let parsed = GbsSet::parse(&self.set, self.d)?;
        Ok(if self.implicit_identity {
            parsed.with_identity()
        } else {
            parsed
        })
    }
}

#[derive(Args)]
struct OrbitArgs {
    #[command(flatten)]
    set: SetArgs,
    #[arg(long, default_value_t = 1)]
    workers: usize,
}

#[derive(Args)]
struct DistinguishArgs {
    #[command(flatten)]
    set: SetArgs,
    #[arg(long, default_value_t = 200)]
    restarts: u32,
    #[arg(long, default_value_t = 2000)]
    max_iters: u32,
    /// Per-constraint magnitude bound a witness must satisfy
    #[arg(long, default_value_t = 1e-9)]
    witness_tol: f64,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    workers: usize,
}

#[derive(Args)]
struct VerifyArgs {
    /// Table id: I, II, III or IV
    #[arg(long)]
    table: String,
    #[arg(long, default_value_t = 1)]
    workers: usize,
}

#[derive(Args)]
struct ClassOfArgs {
    #[command(flatten)]
    set: SetArgs,
    #[arg(long, value_enum, default_value_t = MethodArg::Full)]
    method: MethodArg,
    /// Load the classification from a document instead of recomputing
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    workers: usize,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match cli.command {
        Command::Classify(args) => run_classify(&args),
        Command::Orbit(args) => run_orbit(&args),
        Command::Distinguish(args) => run_distinguish(&args),
        Command::Verify(args) => run_verify(&args),
        Command::ClassOf(args) => run_class_of(&args),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

/// Computes a classification, consulting the on-disk cache named by
/// `GBSCLASS_CACHE_DIR` when it is set. A cached document that lacks
/// members when they were requested counts as a miss and is rewritten.
fn compute_classification(
    d: u32,
    l: usize,
    method: Method,
    emit: Emit,
    workers: usize,
) -> Result<Classification, String> {
    let cache_dir = store::cache_dir_from_env();
    if let Some(dir) = &cache_dir {
        if let Some(doc) = store::load_cached(dir, d, l, method) {
            let members_ok =
                emit == Emit::Reps || doc.classes.iter().all(|c| c.members.is_some());
            if members_ok {
                if let Ok(c) = doc.into_classification() {
                    return Ok(c);
                }
            }
        }
    }

    let opts = ClassifyOptions { emit, workers };
    let classification = match method {
        Method::Full => classify_all(d, l, &opts).map_err(|e| e.to_string())?,
        Method::Incremental => {
            let reps_only = ClassifyOptions {
                emit: Emit::Reps,
                workers,
            };
            let mut current = identity_base(d);
            while current.l < l {
                let step = if current.l + 1 == l { opts } else { reps_only };
                current = classify_extension(&current, &step).map_err(|e| e.to_string())?;
            }
            current
        }
    };

    if let Some(dir) = &cache_dir {
        let doc = ClassificationDoc::from_classification(&classification);
        if let Err(e) = store::store_cached(dir, &doc) {
            eprintln!("warning: could not write cache: {e}");
        }
    }
    Ok(classification)
}

fn run_classify(args: &ClassifyArgs) -> Result<u8, String> {
    let emit = match args.emit {
        Some(EmitArg::Reps) => Emit::Reps,
        Some(EmitArg::Members) => Emit::Members,
        None if args.l <= 3 => Emit::Members,
        None => Emit::Reps,
    };
    let classification =
        compute_classification(args.d, args.l, args.method.into(), emit, args.workers)?;
    println!(
        "d={} l={} classes={} universe={}",
        classification.d,
        classification.l,
        classification.classes.len(),
        classification.universe_size
    );
    if let Some(path) = &args.output {
        ClassificationDoc::from_classification(&classification)
            .write_atomic(path)
            .map_err(|e| e.to_string())?;
    }
    Ok(EXIT_OK)
}

fn run_orbit(args: &OrbitArgs) -> Result<u8, String> {
    let s = args.set.parse_set().map_err(|e| e.to_string())?;
    let class = orbit(&s, args.workers).map_err(|e| e.to_string())?;
    for member in class.members.as_deref().unwrap_or_default() {
        println!("{member}");
    }
    println!("size={}", class.size);
    Ok(EXIT_OK)
}

fn run_distinguish(args: &DistinguishArgs) -> Result<u8, String> {
    let s = args.set.parse_set().map_err(|e| e.to_string())?;
    let cfg = SearchConfig {
        restarts: args.restarts,
        max_iters: args.max_iters,
        witness_tol: args.witness_tol,
        seed: args.seed,
        workers: args.workers,
        ..SearchConfig::default()
    };
    let report = find_witness(&s, &cfg).map_err(|e| e.to_string())?;
    println!("verdict={}", report.verdict);
    println!("min_residual={:e}", report.min_residual);
    println!("restarts_used={}", report.restarts_used);
    for (constraint, magnitude) in &report.per_constraint {
        println!("constraint {constraint}: {magnitude:e}");
    }
    if let Some(witness) = &report.witness {
        let flat: Vec<String> = witness.interleaved().iter().map(f64::to_string).collect();
        println!("witness={}", flat.join(" "));
    }
    if let Some(caveat) = report.caveat() {
        println!("note={caveat}");
    }
    Ok(match report.verdict {
        Verdict::Distinguishable => EXIT_OK,
        Verdict::NoWitnessFound => EXIT_NO_WITNESS,
    })
}

fn run_verify(args: &VerifyArgs) -> Result<u8, String> {
    let id: TableId = args.table.parse().map_err(|e: gbs_core::Error| e.to_string())?;
    let check = fixtures::check_table(id, args.workers).map_err(|e| e.to_string())?;
    for note in &check.notes {
        println!("{note}");
    }
    if check.passed {
        println!("table {id}: pass ({} classes)", check.class_count);
        Ok(EXIT_OK)
    } else {
        println!("table {id}: mismatch");
        Ok(EXIT_TABLE_MISMATCH)
    }
}

fn run_class_of(args: &ClassOfArgs) -> Result<u8, String> {
    let s = args.set.parse_set().map_err(|e| e.to_string())?;
    let classification = match &args.input {
        Some(path) => ClassificationDoc::read(path)
            .and_then(ClassificationDoc::into_classification)
            .map_err(|e| e.to_string())?,
        None => compute_classification(
            s.d(),
            s.len(),
            args.method.into(),
            Emit::Reps,
            args.workers,
        )?,
    };
    let class = class_of(&s, &classification).map_err(|e| e.to_string())?;
    println!("representative={} size={}", class.representative, class.size);
    Ok(EXIT_OK)
}
