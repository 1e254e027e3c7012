//! Single binary tying documents, identity checks, constructions, the
//! catalog and the structure search together.
//!
//! Exit codes: 0 when every requested check passes, 1 when at least one
//! oracle-confirmed failure is reported, 2 for usage or input errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use bihom_core::algebra::{BiHomAlgebra, Kind, LinearMap};
use bihom_core::axioms::{run_named_check, verify_algebra};
use bihom_core::catalog::{catalog_entries, catalog_entry, catalog_verify};
use bihom_core::constructions;
use bihom_core::document::{
    document_to_json, dump_algebra, load_algebra, load_representation, AlgebraDocument,
    RepresentationDocument,
};
use bihom_core::expr::parse_scalar;
use bihom_core::numeric::confirm_failures;
use bihom_core::representations;
use bihom_core::rng::Rng;
use bihom_core::search::{run_search, MorphismShape, ProductSelection, SearchSpec, DEFAULT_BUDGET};
use bihom_core::{Rational, Report, DEFAULT_SEED};

#[derive(Parser)]
#[command(
    name = "bihom",
    version,
    about = "Exact symbolic verification and construction of BiHom-Poisson algebras"
)]
struct Cli {
    /// Seed for the numeric-oracle confirmation points (env: BIHOM_SEED)
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads for catalog verification and search (env: BIHOM_JOBS)
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct OutputArgs {
    /// Where to write the resulting algebra document
    #[arg(long)]
    output: PathBuf,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Check the defining identities of an algebra document
    Verify {
        #[arg(long)]
        input: PathBuf,
        /// Representation document checked against the input algebra
        #[arg(long)]
        rep: Option<PathBuf>,
        /// Comma-separated list of named checks instead of the
        /// kind-appropriate set
        #[arg(long)]
        checks: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// List, verify or export the built-in catalog
    Catalog {
        #[arg(long)]
        list: bool,
        /// Verify one entry by id, or `all`
        #[arg(long)]
        verify: Option<String>,
        /// Print one entry's algebra document
        #[arg(long)]
        dump: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Twist the products along two commuting weak morphisms
    Twist {
        #[arg(long)]
        input: PathBuf,
        /// JSON matrix of scalar expressions for the first twisting map
        #[arg(long)]
        alpha: PathBuf,
        /// JSON matrix of scalar expressions for the second twisting map
        #[arg(long)]
        beta: PathBuf,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Split one product into a bracket and a commutative product
    Polarize {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Merge bracket and product back into a single multiplication
    Depolarize {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Block-diagonal direct sum of two algebra documents
    Sum {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Tensor product with a BiHom-commutative associative factor
    Tensor {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Semi-direct product with a representation document
    Semidirect {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        rep: PathBuf,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Exhaustive grid search with oracle verification and catalog matching
    Search {
        #[arg(long)]
        dim: usize,
        /// Comma-separated rationals, e.g. "0,1,-1"
        #[arg(long)]
        grid: String,
        #[arg(long, value_enum, default_value = "diagonal")]
        shape: ShapeArg,
        #[arg(long, value_enum, default_value = "both")]
        products: ProductsArg,
        /// Maximum raw candidate count
        #[arg(long)]
        budget: Option<u128>,
        /// Keep one representative per basis-swap orbit
        #[arg(long)]
        symmetry_reduction: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ShapeArg {
    Diagonal,
    General,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProductsArg {
    Mu,
    Bracket,
    Both,
}

fn read_algebra(path: &Path) -> Result<(AlgebraDocument, BiHomAlgebra), String> {
    let text =
        fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let doc: AlgebraDocument = serde_json::from_str(&text)
        .map_err(|e| format!("{}: invalid document: {e}", path.display()))?;
    let algebra = load_algebra(&doc).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok((doc, algebra))
}

fn read_matrix(path: &Path, algebra: &BiHomAlgebra) -> Result<LinearMap, String> {
    let text =
        fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let rows: Vec<Vec<String>> = serde_json::from_str(&text).map_err(|e| {
        format!(
            "{}: expected a JSON matrix of expressions: {e}",
            path.display()
        )
    })?;
    if rows.len() != algebra.dim || rows.iter().any(|r| r.len() != algebra.dim) {
        return Err(format!(
            "{}: matrix must be {dim}x{dim}",
            path.display(),
            dim = algebra.dim
        ));
    }
    let mut map = LinearMap::zero(&algebra.params, algebra.dim);
    for (i, row) in rows.iter().enumerate() {
        for (j, entry) in row.iter().enumerate() {
            map.entries[i][j] = parse_scalar(entry, &algebra.params)
                .map_err(|e| format!("{}[{i}][{j}]: {e}", path.display()))?;
        }
    }
    Ok(map)
}

fn emit_report(report: &Report, format: Format) {
    match format {
        Format::Text => print!("{}", report.to_text()),
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&report.to_json()).unwrap()
        ),
    }
}

fn report_exit(report: &Report) -> i32 {
    if report.passed() {
        0
    } else {
        1
    }
}

/// Verify, numerically confirm failures, write the result document, and
/// emit the report.
fn finish_construction(
    algebra: &BiHomAlgebra,
    report_override: Option<Report>,
    out: &OutputArgs,
    seed: u64,
) -> Result<i32, String> {
    let mut report = match report_override {
        Some(r) => r,
        None => verify_algebra(algebra).map_err(|e| e.to_string())?,
    };
    let mut rng = Rng::new(seed);
    confirm_failures(algebra, &mut report, &mut rng, 3).map_err(|e| e.to_string())?;
    let doc = dump_algebra(algebra);
    fs::write(&out.output, document_to_json(&doc) + "\n")
        .map_err(|e| format!("cannot write {}: {e}", out.output.display()))?;
    emit_report(&report, out.format);
    Ok(report_exit(&report))
}

fn cmd_verify(
    input: &Path,
    rep: Option<&Path>,
    checks: Option<&str>,
    format: Format,
    seed: u64,
) -> Result<i32, String> {
    let (_, algebra) = read_algebra(input)?;
    let mut report = match checks {
        None => verify_algebra(&algebra).map_err(|e| e.to_string())?,
        Some(list) => {
            let mut merged = Report::new();
            for name in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                merged.merge(run_named_check(&algebra, name).map_err(|e| e.to_string())?);
            }
            merged
        }
    };
    if let Some(rep_path) = rep {
        let text = fs::read_to_string(rep_path)
            .map_err(|e| format!("cannot read {}: {e}", rep_path.display()))?;
        let rep_doc: RepresentationDocument = serde_json::from_str(&text).map_err(|e| {
            format!(
                "{}: invalid representation document: {e}",
                rep_path.display()
            )
        })?;
        let representation = load_representation(&rep_doc, &algebra).map_err(|e| e.to_string())?;
        let rep_report = match algebra.kind {
            Kind::Poisson => representations::check_poisson_representation(&representation),
            Kind::Lie => representations::check_lie_representation(&representation),
            _ => representations::check_assoc_representation(&representation),
        }
        .map_err(|e| e.to_string())?;
        report.merge(rep_report);
    }
    let mut rng = Rng::new(seed);
    confirm_failures(&algebra, &mut report, &mut rng, 3).map_err(|e| e.to_string())?;
    emit_report(&report, format);
    Ok(report_exit(&report))
}

fn cmd_catalog(
    list: bool,
    verify: Option<&str>,
    dump: Option<&str>,
    format: Format,
    seed: u64,
    jobs: usize,
) -> Result<i32, String> {
    if list {
        match format {
            Format::Text => {
                for entry in catalog_entries() {
                    println!(
                        "{:8} dim={} {}",
                        entry.id, entry.document.dimension, entry.source
                    );
                    for note in &entry.editorial_notes {
                        println!("         note: {note}");
                    }
                }
            }
            Format::Json => {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&catalog_entries()).unwrap()
                );
            }
        }
        return Ok(0);
    }
    if let Some(id) = dump {
        let entry = catalog_entry(id).map_err(|e| e.to_string())?;
        println!("{}", document_to_json(&entry.document));
        return Ok(0);
    }
    if let Some(selector) = verify {
        let reports = catalog_verify(selector, seed, jobs).map_err(|e| e.to_string())?;
        let mut any_fail = false;
        match format {
            Format::Text => {
                for (id, report) in &reports {
                    println!("== {id}");
                    print!("{}", report.to_text());
                    any_fail |= !report.passed();
                }
            }
            Format::Json => {
                let items: Vec<serde_json::Value> = reports
                    .iter()
                    .map(|(id, r)| {
                        any_fail |= !r.passed();
                        serde_json::json!({"id": id, "report": r.to_json()})
                    })
                    .collect();
                println!("{}", serde_json::to_string_pretty(&items).unwrap());
            }
        }
        return Ok(if any_fail { 1 } else { 0 });
    }
    Err("catalog needs one of --list, --verify or --dump".into())
}

#[allow(clippy::too_many_arguments)]
fn cmd_search(
    dim: usize,
    grid: &str,
    shape: ShapeArg,
    products: ProductsArg,
    budget: Option<u128>,
    symmetry_reduction: bool,
    format: Format,
    jobs: usize,
) -> Result<i32, String> {
    let grid: Vec<Rational> = grid
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| Rational::from_str(s).map_err(|e| format!("bad grid value `{s}`: {e}")))
        .collect::<Result<_, _>>()?;
    let mut spec = SearchSpec::new(dim, grid);
    spec.morphism_shape = match shape {
        ShapeArg::Diagonal => MorphismShape::Diagonal,
        ShapeArg::General => MorphismShape::General,
    };
    spec.products = match products {
        ProductsArg::Mu => ProductSelection::Mu,
        ProductsArg::Bracket => ProductSelection::Bracket,
        ProductsArg::Both => ProductSelection::Both,
    };
    spec.budget = budget.unwrap_or(DEFAULT_BUDGET);
    spec.symmetry_reduction = symmetry_reduction;
    let result = run_search(&spec, jobs).map_err(|e| e.to_string())?;
    match format {
        Format::Text => print!("{}", result.to_text()),
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&result.to_json()).unwrap()
        ),
    }
    Ok(0)
}

fn env_u64(name: &str) -> Option<u64> {
    std::env::var(name).ok().and_then(|v| v.parse().ok())
}

fn run() -> Result<i32, String> {
    let cli = Cli::parse();
    let seed = cli
        .seed
        .or_else(|| env_u64("BIHOM_SEED"))
        .unwrap_or(DEFAULT_SEED);
    let jobs = cli
        .jobs
        .or_else(|| env_u64("BIHOM_JOBS").map(|v| v as usize))
        .unwrap_or(1);
    match cli.command {
        Command::Verify {
            input,
            rep,
            checks,
            format,
        } => cmd_verify(&input, rep.as_deref(), checks.as_deref(), format, seed),
        Command::Catalog {
            list,
            verify,
            dump,
            format,
        } => cmd_catalog(list, verify.as_deref(), dump.as_deref(), format, seed, jobs),
        Command::Twist {
            input,
            alpha,
            beta,
            out,
        } => {
            let (_, algebra) = read_algebra(&input)?;
            let alpha = read_matrix(&alpha, &algebra)?;
            let beta = read_matrix(&beta, &algebra)?;
            let twisted =
                constructions::yau_twist(&algebra, &alpha, &beta).map_err(|e| e.to_string())?;
            finish_construction(&twisted, None, &out, seed)
        }
        Command::Polarize { input, out } => {
            let (_, algebra) = read_algebra(&input)?;
            let polarized = constructions::polarize(&algebra).map_err(|e| e.to_string())?;
            finish_construction(&polarized, None, &out, seed)
        }
        Command::Depolarize { input, out } => {
            let (_, algebra) = read_algebra(&input)?;
            let plain = constructions::depolarize(&algebra).map_err(|e| e.to_string())?;
            let report = bihom_core::axioms::check_admissible(&plain).map_err(|e| e.to_string())?;
            finish_construction(&plain, Some(report), &out, seed)
        }
        Command::Sum { left, right, out } => {
            let (_, a) = read_algebra(&left)?;
            let (_, b) = read_algebra(&right)?;
            let sum = constructions::direct_sum(&a, &b).map_err(|e| e.to_string())?;
            finish_construction(&sum, None, &out, seed)
        }
        Command::Tensor { left, right, out } => {
            let (_, a) = read_algebra(&left)?;
            let (_, b) = read_algebra(&right)?;
            let tensor = constructions::tensor_product(&a, &b).map_err(|e| e.to_string())?;
            finish_construction(&tensor, None, &out, seed)
        }
        Command::Semidirect { input, rep, out } => {
            let (_, algebra) = read_algebra(&input)?;
            let text = fs::read_to_string(&rep)
                .map_err(|e| format!("cannot read {}: {e}", rep.display()))?;
            let rep_doc: RepresentationDocument = serde_json::from_str(&text)
                .map_err(|e| format!("{}: invalid representation document: {e}", rep.display()))?;
            let representation =
                load_representation(&rep_doc, &algebra).map_err(|e| e.to_string())?;
            let (product, report) = match algebra.kind {
                Kind::Poisson => representations::semidirect_poisson(&algebra, &representation),
                Kind::Lie => representations::semidirect_lie(&algebra, &representation),
                Kind::Associative => representations::semidirect_assoc(&algebra, &representation),
                Kind::Plain => {
                    return Err("semidirect products need kind lie, associative or poisson".into())
                }
            }
            .map_err(|e| e.to_string())?;
            finish_construction(&product, Some(report), &out, seed)
        }
        Command::Search {
            dim,
            grid,
            shape,
            products,
            budget,
            symmetry_reduction,
            format,
        } => cmd_search(
            dim,
            &grid,
            shape,
            products,
            budget,
            symmetry_reduction,
            format,
            jobs,
        ),
    }
}

/// Die quietly on a closed pipe (e.g. piping into `head`) instead of
/// panicking on the failed write.
#[cfg(unix)]
fn reset_sigpipe() {
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
}

#[cfg(not(unix))]
fn reset_sigpipe() {}

fn main() {
    reset_sigpipe();
    match run() {
        Ok(code) => std::process::exit(code),
        Err(message) => {
            eprintln!("error: {message}");
            std::process::exit(2);
        }
    }
}
