use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "tsl",
    version,
    about = "Symmetric tridiagonal Toeplitz analysis: spectra, structured conditioning, distance to singularity"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain, env = "TSL_FORMAT")]
    pub format: Format,
    /// Write output to this file instead of standard output.
    #[arg(long, global = true, env = "TSL_OUT")]
    pub out: Option<PathBuf>,
    /// RNG seed for the sampling experiment.
    #[arg(long, global = true, env = "TSL_SEED")]
    pub seed: Option<u64>,
    /// Relative tolerance under which two magnitudes or ratios count as tied.
    #[arg(long, global = true, env = "TSL_TIE_RTOL")]
    pub tie_rtol: Option<f64>,
    /// Optional key=value settings file; flags take precedence.
    #[arg(long, global = true, env = "TSL_CONFIG")]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Full report: per-index table, nearest structured singular matrix, bounds, ties.
    Analyze(MatrixArgs),
    /// Eigenvalues and structured condition numbers (optionally eigenvectors).
    Spectrum {
        #[command(flatten)]
        matrix: MatrixArgs,
        /// Include eigenvector entries.
        #[arg(long)]
        vectors: bool,
    },
    /// Cholesky factor of a definite matrix and its monotonicity properties.
    Cholesky {
        #[command(flatten)]
        matrix: MatrixArgs,
        /// Emit the upper triangle of R^-1 as row,col,value CSV.
        #[arg(long)]
        inverse: bool,
    },
    /// Reproduce one of the four worked examples with PASS/FAIL checks.
    Examples {
        /// Example number, 1 to 4.
        id: u8,
        /// Also write the R^-1 grid of example 1 to this CSV file.
        #[arg(long)]
        grid_out: Option<PathBuf>,
    },
    /// Figure data as CSV (1, 3, 5; 2 and 4 with --grid).
    Figures(FigureArgs),
    /// Seeded sampling experiment on indefinite matrices.
    Experiment(ExperimentArgs),
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct MatrixArgs {
    /// Dimension.
    #[arg(short = 'n', long)]
    pub n: usize,
    /// Diagonal entry.
    #[arg(
        short = 'd',
        long,
        conflicts_with = "delta_expr",
        required_unless_present = "delta_expr"
    )]
    pub delta: Option<f64>,
    /// Off-diagonal entry.
    #[arg(
        short = 's',
        long,
        conflicts_with = "sigma_expr",
        required_unless_present = "sigma_expr"
    )]
    pub sigma: Option<f64>,
    /// Diagonal entry as an expression, e.g. "cos(pi/20)".
    #[arg(long, allow_hyphen_values = true)]
    pub delta_expr: Option<String>,
    /// Off-diagonal entry as an expression, e.g. "-sqrt(2)/2".
    #[arg(long, allow_hyphen_values = true)]
    pub sigma_expr: Option<String>,
}

#[derive(Debug, Args, Default)]
pub struct ExperimentArgs {
    #[arg(long)]
    pub n_min: Option<usize>,
    #[arg(long)]
    pub n_max: Option<usize>,
    /// Draws per dimension.
    #[arg(long)]
    pub samples: Option<u64>,
    #[arg(long)]
    pub block_size: Option<u64>,
}

#[derive(Debug, Args)]
pub struct FigureArgs {
    /// Figure number, 1 to 5.
    pub which: u8,
    /// Dense grid export (figures 2 and 4).
    #[arg(long)]
    pub grid: bool,
    /// Matrix dimension (default 100 for figures 1-2, 1000 for figure 4).
    #[arg(short = 'n', long)]
    pub n: Option<usize>,
    /// Eigenvector index for figure 2.
    #[arg(long, default_value_t = 1)]
    pub h: usize,
    /// Largest dimension for figure 3.
    #[arg(long = "up-to", default_value_t = 100)]
    pub up_to: usize,
    /// Matrix for figure 4.
    #[arg(long, value_enum, default_value_t = Fig4Matrix::RInv)]
    pub matrix: Fig4Matrix,
    #[command(flatten)]
    pub experiment: ExperimentArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Fig4Matrix {
    RInv,
    TInv,
}
