//! Command-line surface: build monomial codes over F2, evaluate and invert
//! boolean functions, test/classify coordinate permutations, enumerate and
//! search automorphism groups, and verify the structural group laws.
//!
//! Every successful invocation prints exactly one JSON payload on stdout;
//! diagnostics go to stderr. Exit 0 means success (and verdict "pass" for
//! `verify`), exit 1 is a domain error (payload `{"error": ...}`) or a
//! failing verdict, exit 2 is a usage error.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Serialize;

use polarauto_core::io::{
    AffineCensusJson, ClassificationJson, CodeJson, GeneratorListJson, ImagesJson, ReportJson,
    SearchResultJson,
};
use polarauto_core::{
    backtrack_group, classify, enumerate_affine_automorphisms, eval_to_anf, exhaustive_group,
    group_order, is_automorphism, permutation_from_images, set_parallelism, verify, BinaryCode,
    EvalVector, Exec, InformationSet, Monomial, MonomialSet, Permutation, TheoremCase,
};

#[derive(Parser)]
#[command(name = "polarauto", version, about = "Monomial codes over F2 and their automorphism groups", max_term_width = 100)]
struct Cli {
    /// Worker threads for the enumeration passes: 1 forces sequential
    /// execution, higher values cap the pool. Defaults to POLARAUTO_JOBS,
    /// then to all cores.
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build codes and inspect their monomial structure
    #[command(subcommand)]
    Code(CodeCmd),
    /// Evaluate monomials and recover algebraic normal forms
    #[command(subcommand)]
    Mono(MonoCmd),
    /// Test, classify, enumerate, and search automorphisms
    #[command(subcommand)]
    Aut(AutCmd),
    /// Permutation-group utilities
    #[command(subcommand)]
    Group(GroupCmd),
    /// Check a structural group law: predict the order, build the
    /// generators, and cross-check against search or an affine census
    Verify(VerifyArgs),
}

#[derive(Subcommand)]
enum CodeCmd {
    /// Construct a code and print it as JSON
    Build(BuildArgs),
    /// Report whether the generating monomial set is decreasing
    CheckDecreasing {
        /// Code JSON file
        #[arg(long, value_name = "FILE")]
        code: PathBuf,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BuildKind {
    /// All monomials of degree <= r over n variables
    #[value(name = "rm")]
    Rm,
    /// rm(r, n) plus the single extra monomial x_{n-r-1}..x_{n-1}
    #[value(name = "rm-plus")]
    RmPlus,
    /// {1, x_0..x_{m-1}} plus the degree >= 2 closure of seeds over k vars
    #[value(name = "family3")]
    Family3,
    /// An explicit monomial list
    #[value(name = "monomials")]
    Monomials,
    /// Kernel rows selected by an information set
    #[value(name = "info-set")]
    InfoSet,
    /// The same monomials over a larger variable count
    #[value(name = "lift")]
    Lift,
}

#[derive(Args)]
struct BuildArgs {
    #[arg(long, value_enum)]
    kind: BuildKind,
    /// Degree bound (rm, rm-plus)
    #[arg(long, value_name = "R",
          required_if_eq_any([("kind", "rm"), ("kind", "rm-plus")]))]
    r: Option<usize>,
    /// Variable count (rm, rm-plus, monomials, info-set) or lift target
    #[arg(long, value_name = "N",
          required_if_eq_any([("kind", "rm"), ("kind", "rm-plus"), ("kind", "monomials"),
                              ("kind", "info-set"), ("kind", "lift")]))]
    n: Option<usize>,
    /// Total variable count (family3)
    #[arg(long, value_name = "M", required_if_eq("kind", "family3"))]
    m: Option<usize>,
    /// Seed variable count (family3)
    #[arg(long, value_name = "K", required_if_eq("kind", "family3"))]
    k: Option<usize>,
    /// Seed monomials over x0..x_{k-1}, e.g. "x0x1" or "x0x2,x0x1x2" (family3)
    #[arg(long = "S", value_name = "MONOMIALS", required_if_eq("kind", "family3"))]
    seeds: Option<String>,
    /// Comma- or plus-separated monomial list, e.g. "1,x0,x1x2" (monomials)
    #[arg(long, value_name = "LIST", required_if_eq("kind", "monomials"))]
    monomials: Option<String>,
    /// Comma-separated information-set row indices, e.g. "0,1,2,4" (info-set)
    #[arg(long, value_name = "ROWS", required_if_eq("kind", "info-set"))]
    rows: Option<String>,
    /// Base code JSON file (lift)
    #[arg(long, value_name = "FILE", required_if_eq("kind", "lift"))]
    input: Option<PathBuf>,
}

#[derive(Subcommand)]
enum MonoCmd {
    /// Print a monomial's evaluation vector as a bitstring
    Eval {
        /// Variable count
        #[arg(long)]
        n: usize,
        /// The monomial, e.g. "1" or "x1x2"
        #[arg(long)]
        monomial: String,
    },
    /// Recover the algebraic normal form of an evaluation vector
    Anf {
        /// Variable count (checked against the bitstring length when given)
        #[arg(long)]
        n: Option<usize>,
        /// The evaluation vector, length a power of two
        #[arg(long)]
        bits: String,
    },
}

#[derive(Subcommand)]
enum AutCmd {
    /// Test whether a permutation maps the code onto itself
    Test {
        #[arg(long, value_name = "FILE")]
        code: PathBuf,
        /// Permutation in 1-based cycle notation, e.g. "(1,2)(3,4)"
        #[arg(long)]
        perm: String,
    },
    /// Classify a permutation as affine / non-affine / not an automorphism
    Classify {
        #[arg(long, value_name = "FILE")]
        code: PathBuf,
        #[arg(long)]
        perm: String,
    },
    /// Build the coordinate permutation realizing a variable-image system
    FromImages {
        /// Variable count (checked against the file when given)
        #[arg(long)]
        n: Option<usize>,
        /// Image system JSON file: { n, images: [{var, anf}] }
        #[arg(long, value_name = "FILE")]
        images: PathBuf,
    },
    /// Count and generate all affine automorphisms of a code
    AffineEnum {
        #[arg(long, value_name = "FILE")]
        code: PathBuf,
    },
    /// Exhaustive automorphism-group search (short lengths)
    Exhaustive {
        #[arg(long, value_name = "FILE")]
        code: PathBuf,
    },
    /// Partition-pruned backtracking automorphism-group search
    Backtrack {
        #[arg(long, value_name = "FILE")]
        code: PathBuf,
    },
}

#[derive(Subcommand)]
enum GroupCmd {
    /// Exact order of the group generated by a permutation list
    Order {
        /// Generator list JSON file: { degree, generators }
        #[arg(long, value_name = "FILE")]
        gens: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TheoremName {
    /// Lift group law: (2^{n-m}!)^{2^m} x the base group
    #[value(name = "thm31")]
    Thm31,
    /// One-step lift affine count: 2^n x the base affine count
    #[value(name = "cor35")]
    Cor35,
    /// Substitution-block law for the low-degree family
    #[value(name = "thm36")]
    Thm36,
    /// Block-affine law for rm_plus(r, n), 2 <= r <= n-3
    #[value(name = "thm41")]
    Thm41,
    /// Quadratic analogue at r = 1
    #[value(name = "sec4r1")]
    Sec4R1,
    /// Non-affine witness on rm_plus(n-2, n)
    #[value(name = "remark43")]
    Remark43,
}

#[derive(Args)]
struct VerifyArgs {
    /// Which law to verify
    #[arg(long, value_enum)]
    theorem: TheoremName,
    /// Base code JSON file (thm31, cor35)
    #[arg(long, value_name = "FILE",
          required_if_eq_any([("theorem", "thm31"), ("theorem", "cor35")]))]
    base: Option<PathBuf>,
    /// Ambient variable count (thm31, thm41, sec4r1, remark43)
    #[arg(long, value_name = "N",
          required_if_eq_any([("theorem", "thm31"), ("theorem", "thm41"),
                              ("theorem", "sec4r1"), ("theorem", "remark43")]))]
    n: Option<usize>,
    /// Total variable count (thm36)
    #[arg(long, value_name = "M", required_if_eq("theorem", "thm36"))]
    m: Option<usize>,
    /// Seed variable count (thm36)
    #[arg(long, value_name = "K", required_if_eq("theorem", "thm36"))]
    k: Option<usize>,
    /// Seed monomials over x0..x_{k-1} (thm36)
    #[arg(long = "S", value_name = "MONOMIALS", required_if_eq("theorem", "thm36"))]
    seeds: Option<String>,
    /// Degree parameter (thm41)
    #[arg(long, value_name = "R", required_if_eq("theorem", "thm41"))]
    r: Option<usize>,
}

#[derive(Serialize)]
struct BitsOut {
    bits: String,
}

#[derive(Serialize)]
struct AnfOut {
    anf: Vec<Vec<usize>>,
}

#[derive(Serialize)]
struct DecreasingOut {
    decreasing: bool,
}

#[derive(Serialize)]
struct AutomorphismOut {
    automorphism: bool,
}

#[derive(Serialize)]
struct PermutationOut {
    permutation: String,
}

#[derive(Serialize)]
struct OrderOut {
    order: String,
}

#[derive(Serialize)]
struct ErrorOut {
    error: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            emit(&ErrorOut { error: format!("{e:#}") });
            ExitCode::from(1)
        }
    }
}

/// Prints one compact JSON payload on stdout.
fn emit<T: Serialize>(payload: &T) {
    println!("{}", serde_json::to_string(payload).expect("payloads always serialize"));
}

fn load_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text =
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn load_code(path: &Path) -> Result<BinaryCode> {
    let json: CodeJson = load_json(path)?;
    json.to_code().with_context(|| format!("loading the code in {}", path.display()))
}

fn need<T>(opt: Option<T>, flag: &str) -> Result<T> {
    opt.with_context(|| format!("missing required flag --{flag}"))
}

/// Resolves --jobs / POLARAUTO_JOBS into an execution mode. A value of 1
/// forces the sequential path; higher values cap the worker pool.
fn resolve_exec(jobs: Option<usize>) -> Result<Exec> {
    let jobs = match jobs {
        Some(j) => Some(j),
        None => match std::env::var("POLARAUTO_JOBS") {
            Ok(raw) => Some(
                raw.trim()
                    .parse::<usize>()
                    .with_context(|| format!("POLARAUTO_JOBS={raw:?} is not a thread count"))?,
            ),
            Err(_) => None,
        },
    };
    match jobs {
        Some(0) => bail!("--jobs must be at least 1"),
        Some(1) => Ok(Exec::Seq),
        Some(j) => {
            set_parallelism(j);
            Ok(Exec::Par)
        }
        None => Ok(Exec::Par),
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let exec = resolve_exec(cli.jobs)?;
    match cli.command {
        Command::Code(cmd) => run_code(cmd)?,
        Command::Mono(cmd) => run_mono(cmd)?,
        Command::Aut(cmd) => run_aut(cmd, exec)?,
        Command::Group(cmd) => run_group(cmd)?,
        Command::Verify(args) => return run_verify(args, exec),
    }
    Ok(ExitCode::SUCCESS)
}

fn run_code(cmd: CodeCmd) -> Result<()> {
    match cmd {
        CodeCmd::Build(args) => {
            let code = build_code(&args)?;
            emit(&CodeJson::from_code(&code));
        }
        CodeCmd::CheckDecreasing { code } => {
            let code = load_code(&code)?;
            emit(&DecreasingOut { decreasing: code.monomials().is_decreasing() });
        }
    }
    Ok(())
}

fn build_code(args: &BuildArgs) -> Result<BinaryCode> {
    let code = match args.kind {
        BuildKind::Rm => {
            BinaryCode::reed_muller(need(args.r, "r")?, need(args.n, "n")?)?
        }
        BuildKind::RmPlus => {
            BinaryCode::reed_muller_plus(need(args.r, "r")?, need(args.n, "n")?)?
        }
        BuildKind::Family3 => {
            let k = need(args.k, "k")?;
            let seeds = MonomialSet::parse(need(args.seeds.as_deref(), "S")?, k)?;
            let closed = MonomialSet::from_monomials(
                k,
                seeds.decreasing_closure().iter().filter(|s| s.degree() >= 2).copied(),
            )?;
            if closed != seeds {
                eprintln!(
                    "note: seed set {seeds} is not decreasing-closed; \
                     building with its degree >= 2 closure {closed}"
                );
            }
            BinaryCode::low_degree_family(need(args.m, "m")?, k, &seeds)?
        }
        BuildKind::Monomials => {
            let n = need(args.n, "n")?;
            let set = MonomialSet::parse(need(args.monomials.as_deref(), "monomials")?, n)?;
            BinaryCode::from_monomials(&set)?
        }
        BuildKind::InfoSet => {
            let n = need(args.n, "n")?;
            let rows = parse_rows(need(args.rows.as_deref(), "rows")?)?;
            BinaryCode::from_information_set(&InformationSet { n, rows })?
        }
        BuildKind::Lift => {
            let base = load_code(need(args.input.as_deref(), "input")?)?;
            base.lift(need(args.n, "n")?)?
        }
    };
    Ok(code)
}

fn parse_rows(s: &str) -> Result<BTreeSet<usize>> {
    let mut rows = BTreeSet::new();
    for part in s.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let i: usize = part.parse().with_context(|| format!("bad row index {part:?}"))?;
        if !rows.insert(i) {
            bail!("row {i} listed twice");
        }
    }
    if rows.is_empty() {
        bail!("the information set must name at least one row");
    }
    Ok(rows)
}

fn run_mono(cmd: MonoCmd) -> Result<()> {
    match cmd {
        MonoCmd::Eval { n, monomial } => {
            let m = Monomial::parse(&monomial, n)?;
            emit(&BitsOut { bits: m.evaluate().to_string() });
        }
        MonoCmd::Anf { n, bits } => {
            let v = EvalVector::parse(&bits)?;
            if let Some(n) = n {
                if n != v.n() {
                    bail!("--n {n} disagrees with a length-{} bitstring (n = {})", v.len(), v.n());
                }
            }
            let anf = eval_to_anf(&v);
            emit(&AnfOut { anf: anf.iter().map(|m| m.vars().collect()).collect() });
        }
    }
    Ok(())
}

fn run_aut(cmd: AutCmd, exec: Exec) -> Result<()> {
    match cmd {
        AutCmd::Test { code, perm } => {
            let code = load_code(&code)?;
            let p = Permutation::parse_cycles(&perm, code.len())?;
            emit(&AutomorphismOut { automorphism: is_automorphism(&code, &p)? });
        }
        AutCmd::Classify { code, perm } => {
            let code = load_code(&code)?;
            let p = Permutation::parse_cycles(&perm, code.len())?;
            emit(&ClassificationJson::from_classification(&classify(&code, &p)?));
        }
        AutCmd::FromImages { n, images } => {
            let json: ImagesJson = load_json(&images)?;
            if let Some(n) = n {
                if n != json.n {
                    bail!("--n {n} disagrees with the image system (n = {})", json.n);
                }
            }
            let p = permutation_from_images(&json.to_image_sets()?)?;
            emit(&PermutationOut { permutation: p.cycles_string() });
        }
        AutCmd::AffineEnum { code } => {
            let code = load_code(&code)?;
            emit(&AffineCensusJson::from_census(&enumerate_affine_automorphisms(&code, exec)?));
        }
        AutCmd::Exhaustive { code } => {
            let code = load_code(&code)?;
            emit(&SearchResultJson::from_result(&exhaustive_group(&code, exec)?));
        }
        AutCmd::Backtrack { code } => {
            let code = load_code(&code)?;
            emit(&SearchResultJson::from_result(&backtrack_group(&code)?));
        }
    }
    Ok(())
}

fn run_group(cmd: GroupCmd) -> Result<()> {
    match cmd {
        GroupCmd::Order { gens } => {
            let json: GeneratorListJson = load_json(&gens)?;
            let perms = json.to_permutations()?;
            emit(&OrderOut { order: group_order(json.degree, &perms)?.to_string() });
        }
    }
    Ok(())
}

fn run_verify(args: VerifyArgs, exec: Exec) -> Result<ExitCode> {
    let case = build_case(&args)?;
    let report = verify(&case, exec)?;
    let json = ReportJson::from_report(&report);
    for note in &report.notes {
        eprintln!("note: {note}");
    }
    emit(&json);
    Ok(if report.pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn build_case(args: &VerifyArgs) -> Result<TheoremCase> {
    Ok(match args.theorem {
        TheoremName::Thm31 => TheoremCase::Thm31 {
            base: load_code(need(args.base.as_deref(), "base")?)?,
            n: need(args.n, "n")?,
        },
        TheoremName::Cor35 => {
            let base = load_code(need(args.base.as_deref(), "base")?)?;
            if let Some(n) = args.n {
                if n != base.n() + 1 {
                    bail!("cor35 lifts exactly one step; for this base --n must be {}", base.n() + 1);
                }
            }
            TheoremCase::Cor35 { base }
        }
        TheoremName::Thm36 => {
            let k = need(args.k, "k")?;
            TheoremCase::Thm36 {
                m: need(args.m, "m")?,
                k,
                seeds: MonomialSet::parse(need(args.seeds.as_deref(), "S")?, k)?,
            }
        }
        TheoremName::Thm41 => {
            TheoremCase::Thm41 { r: need(args.r, "r")?, n: need(args.n, "n")? }
        }
        TheoremName::Sec4R1 => TheoremCase::Sec4R1 { n: need(args.n, "n")? },
        TheoremName::Remark43 => TheoremCase::Remark43 { n: need(args.n, "n")? },
    })
}
