use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sqrt_coulomb::{CouplingSign, Method};

pub const DEFAULT_ALPHA: f64 = 7.2973525693e-3;

#[derive(Debug, Parser)]
#[command(name = "sqrt-coulomb", version, about = "Hydrogen levels of the spin-1/2 square-root Coulomb equation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form levels for every (n, l, j) up to a principal number
    Spectrum(SpectrumArgs),
    /// Exact Dirac levels
    Dirac(StateArgs),
    /// Levels of the 2-spinor Klein-Gordon-like equation
    Kg(KgArgs),
    /// Spectral diagonalization of the square-root Hamiltonian
    Solve(SolveArgs),
    /// Basis-size and scale study for one channel
    Converge(ConvergeArgs),
    /// One row per method for the same states, with pairwise differences
    Compare(CompareArgs),
    /// Closed-form (and optionally solver) levels over a range of couplings
    ScanAlpha(ScanArgs),
    /// Run every invariant suite
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SignArg {
    Plus,
    Minus,
}

impl From<SignArg> for CouplingSign {
    fn from(s: SignArg) -> Self {
        match s {
            SignArg::Plus => CouplingSign::Plus,
            SignArg::Minus => CouplingSign::Minus,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum MethodArg {
    Perturbative,
    Dirac,
    Kg,
    SqrtSolver,
    Nonrel,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Perturbative => Method::Perturbative,
            MethodArg::Dirac => Method::Dirac,
            MethodArg::Kg => Method::Kg,
            MethodArg::SqrtSolver => Method::SqrtSolver,
            MethodArg::Nonrel => Method::Nonrel,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Fine structure constant
    #[arg(long, default_value_t = DEFAULT_ALPHA, allow_negative_numbers = true)]
    pub alpha: f64,
    /// Particle mass (energy unit)
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub mass: f64,
    #[arg(long, value_enum, default_value_t = SignArg::Plus)]
    pub sign: SignArg,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write the table here instead of standard output
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Accepted for scripting; every computation is deterministic
    #[arg(long)]
    pub seedless: bool,
}

/// State filters. `--n` and `--l` take `3`, `1..3` or `1,2,4`;
/// `--j` takes half-integers as `0.5`, `3/2` or ranges `0.5..2.5`.
#[derive(Debug, Clone, Args)]
pub struct Selectors {
    /// Largest principal number (used when --n is absent)
    #[arg(long = "n-max", default_value_t = 3)]
    pub n_max: u32,
    #[arg(long)]
    pub n: Option<String>,
    #[arg(long)]
    pub l: Option<String>,
    #[arg(long)]
    pub j: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub states: Selectors,
    #[arg(long, value_enum, default_value_t = MethodArg::Perturbative)]
    pub method: MethodArg,
}

#[derive(Debug, Clone, Args)]
pub struct StateArgs {
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub states: Selectors,
}

#[derive(Debug, Clone, Args)]
pub struct KgArgs {
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub states: Selectors,
    /// Solve by fixed-point iteration in a basis of this size instead of the closed form
    #[arg(long = "N")]
    pub size: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct Basis {
    /// Basis size
    #[arg(long = "N", default_value_t = 100)]
    pub size: usize,
    /// Fix the basis scale instead of scanning
    #[arg(long)]
    pub beta: Option<f64>,
    /// Exit with status 2 when the convergence estimate exceeds this
    #[arg(long)]
    pub tolerance: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub states: Selectors,
    #[command(flatten)]
    pub basis: Basis,
    /// Scalar equation without spin; --j is ignored
    #[arg(long)]
    pub spinless: bool,
}

#[derive(Debug, Clone, Args)]
pub struct ConvergeArgs {
    #[command(flatten)]
    pub common: Common,
    /// Total angular momentum, e.g. 0.5 or 3/2
    #[arg(long, default_value = "0.5")]
    pub j: String,
    /// Orbital number, j - 1/2 or j + 1/2
    #[arg(long)]
    pub l: Option<u32>,
    /// Comma-separated basis sizes
    #[arg(long, default_value = "50,100,150,200")]
    pub sizes: String,
    #[arg(long = "beta-points", default_value_t = 15)]
    pub beta_points: usize,
    #[arg(long)]
    pub beta: Option<f64>,
    #[arg(long)]
    pub tolerance: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub states: Selectors,
    #[command(flatten)]
    pub basis: Basis,
}

#[derive(Debug, Clone, Args)]
pub struct ScanArgs {
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub states: Selectors,
    /// Explicit comma-separated couplings; overrides the range flags
    #[arg(long)]
    pub alphas: Option<String>,
    #[arg(long = "alpha-min", default_value_t = 1e-3)]
    pub alpha_min: f64,
    #[arg(long = "alpha-max", default_value_t = 0.3)]
    pub alpha_max: f64,
    /// Number of log-spaced couplings
    #[arg(long, default_value_t = 8)]
    pub steps: usize,
    #[arg(long, value_enum, value_delimiter = ',', default_values_t = [MethodArg::Perturbative, MethodArg::Dirac, MethodArg::Kg, MethodArg::Nonrel])]
    pub methods: Vec<MethodArg>,
    /// Basis size for SQRT_SOLVER rows
    #[arg(long = "N", default_value_t = 100)]
    pub size: usize,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Skip the basis-convergence suite (the slowest)
    #[arg(long)]
    pub quick: bool,
}
