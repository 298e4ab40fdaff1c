//! `pcubed`: exact representation-theoretic computations for the groups
//! of order `p^3` (odd `p`).
//!
//! Subcommands: `groups`, `irreps`, `count`, `census`, `dim`, `witness`,
//! `verify`, `charp`. Output is deterministic byte for byte given
//! identical flags and seed. Exit codes: 0 success, 1 invalid input,
//! 2 internal verification failure (a formula/oracle mismatch).
//!
//! `PCUBED_THREADS` overrides the worker count used by `verify` and the
//! oracle paths.

mod render;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use pcubed_core::combinat::{
    census, count_reps, invariant_dim, skew_dim, symmetric_dim, MultVec,
};
use pcubed_core::cyclo::OddPrime;
use pcubed_core::groups::{make_group, GroupFamily};
use pcubed_core::irreps::build_irreps;
use pcubed_core::solver::{assemble, charp_mode, invariant_space, nondegenerate_witness};
use pcubed_core::verify::{sweep, SweepOptions, DEFAULT_SEED};

#[derive(Parser)]
#[command(
    name = "pcubed",
    version,
    about = "Exact counting, invariant bilinear forms and irreducible representations for groups of order p^3"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Group structure: order, center size, conjugacy class sizes.
    Groups(GroupArgs),
    /// Character table and full irrep data.
    Irreps(IrrepsArgs),
    /// Number of n-degree representations per degree.
    Count(RangeArgs),
    /// Census per degree: total, admitting non-degenerate, degenerate-only.
    Census(RangeArgs),
    /// Dimension formulas for one multiplicity vector (optionally checked
    /// against the exact nullspace oracle).
    Dim(DimArgs),
    /// Non-degenerate invariant form witness for one multiplicity vector.
    Witness(WitnessArgs),
    /// Full formula-vs-oracle sweep across all families.
    Verify(VerifyArgs),
    /// Characteristic-p mode: the degenerate regime where every
    /// representation is trivial.
    Charp(CharpArgs),
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Format {
    Table,
    Csv,
    Json,
}

fn parse_format(s: &str) -> Result<Format, String> {
    match s {
        "table" => Ok(Format::Table),
        "csv" => Ok(Format::Csv),
        "json" => Ok(Format::Json),
        other => Err(format!("unknown format '{other}' (expected table, csv or json)")),
    }
}

fn parse_family(s: &str) -> Result<GroupFamily, String> {
    GroupFamily::parse(s).ok_or_else(|| {
        format!(
            "unknown family '{s}' (expected one of {})",
            GroupFamily::ALL.map(|f| f.tag()).join(", ")
        )
    })
}

fn parse_prime(s: &str) -> Result<OddPrime, String> {
    let v: u64 = s.parse().map_err(|_| format!("invalid prime '{s}'"))?;
    OddPrime::new(v).map_err(|e| e.to_string())
}

/// `a..b` (inclusive) or a single value.
fn parse_range(s: &str) -> Result<(u64, u64), String> {
    if let Some((a, b)) = s.split_once("..") {
        let a: u64 = a.parse().map_err(|_| format!("invalid range start '{a}'"))?;
        let b: u64 = b.parse().map_err(|_| format!("invalid range end '{b}'"))?;
        if a > b {
            return Err(format!("empty range {a}..{b}"));
        }
        Ok((a, b))
    } else {
        let n: u64 = s.parse().map_err(|_| format!("invalid degree '{s}'"))?;
        Ok((n, n))
    }
}

/// Comma-separated multiplicities, parsed as one argument.
#[derive(Clone)]
struct KVec(Vec<u64>);

fn parse_kvec(s: &str) -> Result<KVec, String> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| format!("invalid multiplicity '{t}'"))
        })
        .collect::<Result<Vec<u64>, String>>()
        .map(KVec)
}

#[derive(Args)]
struct CommonOut {
    /// Output format: table, csv or json.
    #[arg(long, default_value = "table", value_parser = parse_format)]
    format: Format,
    /// Write output to a file instead of stdout.
    #[arg(long)]
    output: Option<std::path::PathBuf>,
}

#[derive(Args)]
struct GroupArgs {
    #[arg(long, value_parser = parse_prime)]
    p: OddPrime,
    #[arg(long, value_parser = parse_family)]
    family: GroupFamily,
    #[command(flatten)]
    out: CommonOut,
}

#[derive(Args)]
struct IrrepsArgs {
    #[arg(long, value_parser = parse_prime)]
    p: OddPrime,
    #[arg(long, value_parser = parse_family)]
    family: GroupFamily,
    #[command(flatten)]
    out: CommonOut,
}

#[derive(Args)]
struct RangeArgs {
    #[arg(long, value_parser = parse_prime)]
    p: OddPrime,
    #[arg(long, value_parser = parse_family)]
    family: GroupFamily,
    /// Degree or inclusive degree range `a..b`.
    #[arg(long, value_parser = parse_range)]
    n: (u64, u64),
    #[command(flatten)]
    out: CommonOut,
}

#[derive(Args)]
struct DimArgs {
    #[arg(long, value_parser = parse_prime)]
    p: OddPrime,
    #[arg(long, value_parser = parse_family)]
    family: GroupFamily,
    /// Comma-separated multiplicities in the frozen irrep order.
    #[arg(long, value_parser = parse_kvec)]
    k: KVec,
    /// Also solve the invariance equations exactly and compare.
    #[arg(long)]
    oracle: bool,
    /// Include the computed invariant-space basis (implies --oracle).
    #[arg(long)]
    basis: bool,
    /// Render basis/witness entries as `w^k` where possible.
    #[arg(long)]
    compact: bool,
    #[command(flatten)]
    out: CommonOut,
}

#[derive(Args)]
struct WitnessArgs {
    #[arg(long, value_parser = parse_prime)]
    p: OddPrime,
    #[arg(long, value_parser = parse_family)]
    family: GroupFamily,
    /// Comma-separated multiplicities in the frozen irrep order.
    #[arg(long, value_parser = parse_kvec)]
    k: KVec,
    /// Print entries as `w^k` where possible instead of coefficient
    /// arrays (JSON) or polynomials (table).
    #[arg(long)]
    compact: bool,
    #[command(flatten)]
    out: CommonOut,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_parser = parse_prime)]
    p: OddPrime,
    /// Check every multiplicity vector of degree 1..=nmax.
    #[arg(long, default_value_t = 4)]
    nmax: u64,
    /// Restrict to one family (default: all five).
    #[arg(long, value_parser = parse_family)]
    family: Option<GroupFamily>,
    /// Seed for the randomized singularity checks.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[command(flatten)]
    out: CommonOut,
}

#[derive(Args)]
struct CharpArgs {
    /// Degree of the (trivial) representation.
    #[arg(long)]
    n: usize,
    #[command(flatten)]
    out: CommonOut,
}

/// Invalid input exits 1; an internal formula/oracle mismatch exits 2.
enum CliError {
    Invalid(String),
    VerificationFailed(String),
}

impl From<pcubed_core::Error> for CliError {
    fn from(e: pcubed_core::Error) -> Self {
        match e {
            pcubed_core::Error::Verification { .. } => {
                CliError::VerificationFailed(e.to_string())
            }
            other => CliError::Invalid(other.to_string()),
        }
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    if let Ok(threads) = std::env::var("PCUBED_THREADS") {
        if let Ok(threads) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(threads.max(1))
                .build_global();
        }
    }
    match run(cli) {
        Ok(()) => {}
        Err(CliError::Invalid(msg)) => {
            eprintln!("error: {msg}");
            std::process::exit(1);
        }
        Err(CliError::VerificationFailed(msg)) => {
            eprintln!("verification failure: {msg}");
            std::process::exit(2);
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let (text, out) = match cli.command {
        Command::Groups(args) => (cmd_groups(&args)?, args.out),
        Command::Irreps(args) => (cmd_irreps(&args)?, args.out),
        Command::Count(args) => (cmd_count(&args)?, args.out),
        Command::Census(args) => (cmd_census(&args)?, args.out),
        Command::Dim(args) => {
            let text = cmd_dim(&args)?;
            (text, args.out)
        }
        Command::Witness(args) => (cmd_witness(&args)?, args.out),
        Command::Verify(args) => {
            let text = cmd_verify(&args)?;
            (text, args.out)
        }
        Command::Charp(args) => (cmd_charp(&args)?, args.out),
    };
    match &out.output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Invalid(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn cmd_groups(args: &GroupArgs) -> Result<String, CliError> {
    let group = make_group(args.family, args.p);
    let center = group.center();
    let classes = group.conjugacy_classes();
    Ok(render::groups_output(
        args.out.format,
        &group,
        &center,
        &classes,
    ))
}

fn cmd_irreps(args: &IrrepsArgs) -> Result<String, CliError> {
    let group = make_group(args.family, args.p);
    let set = build_irreps(&group)?;
    Ok(render::irreps_output(args.out.format, &set))
}

fn cmd_count(args: &RangeArgs) -> Result<String, CliError> {
    let rows: Vec<(u64, String)> = (args.n.0..=args.n.1)
        .map(|n| (n, count_reps(args.family, args.p, n).to_string()))
        .collect();
    Ok(render::count_output(
        args.out.format,
        args.family,
        args.p,
        &rows,
    ))
}

fn cmd_census(args: &RangeArgs) -> Result<String, CliError> {
    let rows: Vec<_> = (args.n.0..=args.n.1)
        .map(|n| census(args.family, args.p, n))
        .collect();
    Ok(render::census_output(
        args.out.format,
        args.family,
        args.p,
        &rows,
    ))
}

fn cmd_dim(args: &DimArgs) -> Result<String, CliError> {
    let group = make_group(args.family, args.p);
    let set = build_irreps(&group)?;
    let k = MultVec::new(args.family, args.p, args.k.0.clone())?;
    let dim = invariant_dim(&k, set.pairing());
    let sym = symmetric_dim(&k);
    let skw = skew_dim(&k);
    let space = if args.oracle || args.basis {
        if k.degree() == 0 {
            // The empty representation carries the zero space.
            Some(pcubed_core::solver::InvSpace {
                dimension: 0,
                basis: Vec::new(),
                block_support: Default::default(),
            })
        } else {
            let asm = assemble(&k, &set)?;
            Some(invariant_space(&asm))
        }
    } else {
        None
    };
    let oracle = space
        .as_ref()
        .map(|s| (s.dimension, dim == num_bigint::BigUint::from(s.dimension)));
    let text = render::dim_output(
        args.out.format,
        &set,
        &k,
        &dim,
        &sym,
        &skw,
        oracle,
        if args.basis { space.as_ref() } else { None },
        args.compact,
    );
    if let Some((oracle_dim, false)) = oracle {
        // Deterministic output first, then the failure exit path.
        match &args.out.output {
            Some(path) => std::fs::write(path, &text)
                .map_err(|e| CliError::Invalid(format!("cannot write {}: {e}", path.display())))?,
            None => print!("{text}"),
        }
        return Err(CliError::VerificationFailed(format!(
            "oracle dimension {oracle_dim} does not match formula {dim}"
        )));
    }
    Ok(text)
}

fn cmd_witness(args: &WitnessArgs) -> Result<String, CliError> {
    let group = make_group(args.family, args.p);
    let set = build_irreps(&group)?;
    let k = MultVec::new(args.family, args.p, args.k.0.clone())?;
    let witness = nondegenerate_witness(&k, &set)?;
    Ok(render::witness_output(
        args.out.format,
        &set,
        &k,
        witness.as_ref(),
        args.compact,
    ))
}

fn cmd_verify(args: &VerifyArgs) -> Result<String, CliError> {
    let families: Vec<GroupFamily> = match args.family {
        Some(f) => vec![f],
        None => GroupFamily::ALL.to_vec(),
    };
    let options = SweepOptions {
        nmax: args.nmax,
        seed: args.seed,
        ..SweepOptions::default()
    };
    let report = sweep(args.p, &families, &options)?;
    let text = render::verify_output(args.out.format, &report);
    if !report.is_clean() {
        match &args.out.output {
            Some(path) => std::fs::write(path, &text)
                .map_err(|e| CliError::Invalid(format!("cannot write {}: {e}", path.display())))?,
            None => print!("{text}"),
        }
        return Err(CliError::VerificationFailed(
            "formula/oracle mismatches found; see report".into(),
        ));
    }
    Ok(text)
}

fn cmd_charp(args: &CharpArgs) -> Result<String, CliError> {
    let space = charp_mode(args.n);
    Ok(render::charp_output(args.out.format, args.n, &space))
}
