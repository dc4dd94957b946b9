//! `nielsen-kit`: JSON in, JSON out.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 when the
//! input cannot be read or does not validate.

mod commands;
mod input;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use report::{ErrorReport, RunReport};

#[derive(Parser)]
#[command(
    name = "nielsen-kit",
    version,
    about = "Nielsen fixed point theory toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Exact integer linear algebra.
    #[command(subcommand)]
    Linalg(LinalgCmd),
    /// Finite groups and automorphisms of direct products.
    #[command(subcommand)]
    Group(GroupCmd),
    /// Exact Nielsen theory of linear torus maps.
    #[command(subcommand)]
    Torus(TorusCmd),
    /// Fixed points of smooth perturbed torus maps.
    #[command(subcommand)]
    Smooth(SmoothCmd),
    /// Surface index bounds and product bounds.
    #[command(subcommand)]
    Bounds(BoundsCmd),
    /// Simplicial Lefschetz numbers and Euler characteristics.
    #[command(subcommand)]
    Homology(HomologyCmd),
    /// Run the full verification sweep.
    VerifyAll(VerifyArgs),
}

#[derive(Args)]
pub struct InputArg {
    /// JSON input file; stdin when omitted or `-`.
    #[arg(long)]
    pub input: Option<PathBuf>,
}

#[derive(Subcommand)]
pub enum LinalgCmd {
    /// Smith normal form `U M V = D`.
    Snf(InputArg),
    /// Exact determinant.
    Det(InputArg),
    /// `det(I - N) = det(I - N_m ... N_1)` for the block-cyclic `N`.
    BlockDetIdentity {
        /// `{"blocks": [<matrix>, ...]}`.
        #[arg(long)]
        blocks: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
pub enum GroupCmd {
    /// Centre, decomposability and unfactorizability.
    Check(InputArg),
    /// All automorphisms.
    Aut {
        #[arg(long)]
        input: Option<PathBuf>,
        /// Refuse groups with more automorphisms than this.
        #[arg(long, default_value_t = nielsen_core::group::DEFAULT_AUTOMORPHISM_CAP)]
        cap: usize,
    },
    /// Split an automorphism of a product into permutations and factor
    /// automorphisms.
    Decompose {
        #[arg(long)]
        spec: PathBuf,
        /// `{"images": [...]}` on the product's element indices.
        #[arg(long)]
        aut: Option<PathBuf>,
    },
    /// Conjugacy classes.
    ConjClasses(InputArg),
    /// Enumerated `|Aut|` of a product against the formula.
    AutOrderCheck {
        #[arg(long)]
        spec: Option<PathBuf>,
        #[arg(long, default_value_t = nielsen_core::group::DEFAULT_PRODUCT_CAP)]
        cap: usize,
    },
}

#[derive(Subcommand)]
pub enum TorusCmd {
    /// Classes, L and N of a linear map.
    Analyze(InputArg),
    /// Product of maps, checked against its factors.
    Product(InputArg),
    /// Cyclic map, checked against the composition.
    Cyclic(InputArg),
}

#[derive(Args)]
pub struct SmoothArgs {
    /// Smooth map JSON; stdin when omitted or `-`.
    #[arg(long)]
    pub map: Option<PathBuf>,
    /// Solver configuration JSON; defaults apply to missing fields.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Subcommand)]
pub enum SmoothCmd {
    /// Locate all fixed points with indices and class labels.
    Find(SmoothArgs),
    /// Lefschetz-Hopf and finite-difference checks.
    Check(SmoothArgs),
    /// Block-Jacobian check for a cyclic map.
    Cyclic(SmoothArgs),
}

#[derive(Subcommand)]
pub enum BoundsCmd {
    /// `[2 chi - 1, 1]`.
    Interval {
        #[arg(long, allow_hyphen_values = true)]
        chi: i64,
    },
    /// Check an index multiset `{"indices": [...], "chi": ...}`.
    Check(InputArg),
    /// Product of component bounds `{"bounds": [...]}`.
    Product(InputArg),
    /// `prod |2 chi_i - 1|^{n_i}` for `{"surfaces": [...]}`.
    HyperbolicProduct(InputArg),
}

#[derive(Subcommand)]
pub enum HomologyCmd {
    /// Lefschetz number of a simplicial map.
    Lefschetz {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        map: PathBuf,
    },
    /// Euler characteristic and Betti numbers.
    Chi {
        #[arg(long)]
        complex: Option<PathBuf>,
    },
}

#[derive(Args)]
pub struct VerifyArgs {
    /// Reduced sweep.
    #[arg(long)]
    pub quick: bool,
    /// Write the JSON report here and print only the summary.
    #[arg(long)]
    pub json: Option<PathBuf>,
    /// Seed for sampled sweeps.
    #[arg(long)]
    pub seed: Option<u64>,
}

fn configure_threads() {
    if let Some(n) = std::env::var("NIELSEN_KIT_THREADS")
        .ok()
        .and_then(|s| s.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
    {
        // a second initialisation only fails if a pool already exists
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
}

/// Prints to stdout; a closed pipe is not an error.
pub fn emit(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn main() -> ExitCode {
    configure_threads();
    let cli = Cli::parse();
    if let Command::VerifyAll(args) = &cli.command {
        return ExitCode::from(commands::verify_all(args));
    }
    let name = commands::name(&cli.command);
    match commands::run(cli.command) {
        Ok(outcome) => {
            let report = RunReport::from_outcome(name, outcome);
            emit(&serde_json::to_string_pretty(&report).expect("serializable"));
            eprintln!("{}", report.summary());
            ExitCode::from(report.exit_code as u8)
        }
        Err(e) => {
            let report = ErrorReport::new(name, &e);
            emit(&serde_json::to_string_pretty(&report).expect("serializable"));
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
