//! `ladders`: batch front end for ladders-core.
//!
//! Every command prints `{"invocation": …, "result": …}` (or a table/CSV
//! rendering of the result). Exit codes: 0 ok, 2 contradiction found,
//! 3 inconclusive, 64 bad input.

mod commands;
mod input;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ladders_core::qalgebra::Field;

use output::Format;

#[derive(Parser)]
#[command(name = "ladders", version, about = "Quantum cohomology ladders, index calculus and carrier checks")]
pub struct Cli {
    /// Output rendering.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json, alias = "report")]
    pub format: Format,
    /// Coefficient field override: `Q` or `Fp:<p>`.
    #[arg(long, global = true)]
    pub field: Option<Field>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Quantum products in a ring presentation.
    #[command(subcommand)]
    Ring(RingCmd),
    /// Product decompositions and ladders.
    #[command(subcommand)]
    Ladders(LaddersCmd),
    /// Recapping, iteration and augmented action of capped orbits.
    #[command(subcommand)]
    Spectra(SpectraCmd),
    /// Fixed points of explicit quadratic models.
    #[command(subcommand)]
    Models(ModelsCmd),
    /// Carrier assignments over orbit tables.
    #[command(subcommand)]
    Carriers(CarriersCmd),
}

#[derive(Subcommand)]
pub enum RingCmd {
    /// `a * b`.
    Mul {
        #[arg(long)]
        ring: PathBuf,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// `class^d`.
    Power {
        #[arg(long)]
        ring: PathBuf,
        #[arg(long)]
        class: String,
        #[arg(long)]
        d: u32,
    },
    /// Additive basis, optionally of one cohomological degree.
    Basis {
        #[arg(long)]
        ring: PathBuf,
        #[arg(long)]
        degree: Option<i64>,
    },
}

#[derive(Subcommand)]
pub enum LaddersCmd {
    /// Enumerate decompositions `u0 * u1 * … * u_l = q^nu u0`.
    Search {
        #[arg(long)]
        ring: PathBuf,
        #[arg(long)]
        ell_max: usize,
        #[arg(long, default_value_t = 1)]
        nu_max: i64,
        /// Write the decompositions as a JSON array.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check one decomposition or an array of them.
    Verify {
        #[arg(long)]
        ring: PathBuf,
        #[arg(long)]
        decomposition: PathBuf,
    },
    /// Build the ladder of a decomposition.
    Build {
        #[arg(long)]
        ring: PathBuf,
        #[arg(long)]
        decomposition: PathBuf,
        /// Entry to use when the file holds an array.
        #[arg(long, default_value_t = 0)]
        index: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Power-matching parameters, and a ladder when carrier ids are given.
    Case2 {
        #[arg(long)]
        ring: PathBuf,
        /// Defaults to the first Chern generator.
        #[arg(long)]
        u: Option<String>,
        /// Number of periodic orbits `|P|`.
        #[arg(long)]
        orbits: u32,
        /// Carrier ids of `u^1, …, u^d`, comma separated.
        #[arg(long)]
        ids: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
pub struct MonotoneArgs {
    /// Minimal Chern number `N`.
    #[arg(long)]
    pub chern: u32,
    /// Monotonicity constant.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: String,
}

#[derive(Subcommand)]
pub enum SpectraCmd {
    /// Attach `m` copies of the sphere generator.
    Recap {
        /// Orbit JSON, inline or a path.
        #[arg(long)]
        orbit: String,
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
        #[command(flatten)]
        monotone: MonotoneArgs,
    },
    /// `k`-th iterate.
    Iterate {
        #[arg(long)]
        orbit: String,
        #[arg(long)]
        k: u32,
    },
    /// Augmented actions of one orbit or an array of them.
    Augmented {
        #[arg(long)]
        orbits: String,
        #[command(flatten)]
        monotone: MonotoneArgs,
    },
}

#[derive(Args)]
pub struct ModelOut {
    /// Exit 2 unless all augmented actions agree with the expected value.
    #[arg(long)]
    pub verify: bool,
    /// Write the model file.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Write the fixed points as a carrier scenario table.
    #[arg(long)]
    pub table_out: Option<PathBuf>,
}

#[derive(Subcommand)]
pub enum ModelsCmd {
    /// Weighted rotation of `CP^n` with the given weights.
    Cpn {
        #[arg(long, allow_hyphen_values = true)]
        lambdas: String,
        #[command(flatten)]
        out: ModelOut,
    },
    /// Product of model files.
    Product {
        #[arg(long = "model", required = true)]
        models: Vec<PathBuf>,
        #[command(flatten)]
        out: ModelOut,
    },
    /// Augmented-action equality of a model file; with a ring and a
    /// decomposition, also the predicted count of shared values.
    Verify {
        #[arg(long)]
        model: PathBuf,
        #[arg(long, requires = "decomposition")]
        ring: Option<PathBuf>,
        #[arg(long, requires = "ring")]
        decomposition: Option<PathBuf>,
    },
}

#[derive(Args)]
pub struct ScenarioArgs {
    #[arg(long)]
    pub scenario: PathBuf,
    /// Ladder artifact, replacing the scenario's.
    #[arg(long)]
    pub ladder: Option<PathBuf>,
    /// Comma-separated primes, replacing the scenario's.
    #[arg(long, conflicts_with = "primes_up_to")]
    pub primes: Option<String>,
    /// All primes up to this bound.
    #[arg(long)]
    pub primes_up_to: Option<u32>,
}

#[derive(Subcommand)]
pub enum CarriersCmd {
    /// Admissible carrier maps at one iterate.
    Assignments {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[arg(long)]
        k: u32,
        /// List every admissible map, not just the least.
        #[arg(long)]
        all: bool,
    },
    /// Stable image, augmented-action relation and distinctness.
    Verify {
        #[command(flatten)]
        scenario: ScenarioArgs,
        /// The map is non-degenerate (enables the index gate for nu > 1).
        #[arg(long)]
        nondegenerate: bool,
    },
    /// Carrier of the fundamental class for a negative monotone table.
    Negmon {
        #[command(flatten)]
        scenario: ScenarioArgs,
    },
}

fn configure_threads() -> input::Result<()> {
    if let Ok(v) = std::env::var("LADDERS_THREADS") {
        let n: usize = v
            .trim()
            .parse()
            .map_err(|_| input::InputError::new(format!("LADDERS_THREADS: `{v}` is not a thread count")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| input::InputError::new(format!("LADDERS_THREADS: {e}")))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 64 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(64);
    }
    match commands::run(&cli) {
        Ok(outcome) => {
            if let Err(e) = output::emit(&outcome, cli.format, &argv[1..]) {
                eprintln!("error: {e}");
                return ExitCode::from(74);
            }
            ExitCode::from(outcome.status.code())
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(64)
        }
    }
}
