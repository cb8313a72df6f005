use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Classify Cartan matrices, enumerate solution matrices, and build and
/// verify vector-field representations of sl(r+1) and affine sl(r).
///
/// Vertices are numbered from 1 in text and JSON output. For affine types the
/// affine node is the vertex the loop checks single out; LaTeX output labels
/// it 0 and the remaining vertices 1, 2, ...
#[derive(Debug, Parser)]
#[command(name = "vfrep", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Report the Cartan type, corank and Dynkin diagram of a matrix.
    Classify(ClassifyArgs),
    /// List the normalized solution matrices of a Cartan matrix.
    Solutions(SolutionsArgs),
    /// Print the images of the Chevalley generators.
    Represent(RepresentArgs),
    /// Check the defining relations and the kernel identities.
    Verify(VerifyArgs),
    /// Check the loop-algebra law for an affine representation.
    LoopCheck(LoopCheckArgs),
    /// Compare the structured enumerator with the brute-force oracle.
    Search(SearchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Debug, Clone, Args)]
pub struct MatrixArgs {
    /// Built-in Cartan matrix: A3, A2affine, B2, C3, D4, E6, F4, G2, ...
    #[arg(long = "type", value_name = "NAME")]
    pub r#type: Option<String>,
    /// Cartan matrix inline, as JSON (`[[2,-1],[-1,2]]`) or rows split by `;`.
    #[arg(long, value_name = "MATRIX", allow_hyphen_values = true)]
    pub matrix: Option<String>,
    /// File holding the Cartan matrix in either inline format.
    #[arg(long, value_name = "PATH")]
    pub file: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct RepArgs {
    /// Index of the normalized solution matrix, as listed by `solutions`.
    #[arg(long, value_name = "INDEX")]
    pub sm: Option<usize>,
    /// Explicit solution matrix with rational entries (JSON or `;` rows).
    #[arg(long, value_name = "MATRIX", allow_hyphen_values = true)]
    pub a: Option<String>,
    /// Column scaling applied to the solution matrix, e.g. `2,-1/3`.
    #[arg(long, value_name = "Q,...", allow_hyphen_values = true)]
    pub diag: Option<String>,
    /// Nonzero integers n_1,...,n_r (default all 1).
    #[arg(long, value_name = "N,...", allow_hyphen_values = true)]
    pub n: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the report to this file instead of standard output.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub matrix: MatrixArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SolutionsArgs {
    #[command(flatten)]
    pub matrix: MatrixArgs,
    /// Column scaling applied to every listed matrix.
    #[arg(long, value_name = "Q,...", allow_hyphen_values = true)]
    pub diag: Option<String>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct RepresentArgs {
    #[command(flatten)]
    pub matrix: MatrixArgs,
    #[command(flatten)]
    pub rep: RepArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub matrix: MatrixArgs,
    #[command(flatten)]
    pub rep: RepArgs,
    /// Representation JSON written by `represent --format json`; the stored
    /// images are checked as given.
    #[arg(long, value_name = "PATH")]
    pub input: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct LoopCheckArgs {
    #[command(flatten)]
    pub matrix: MatrixArgs,
    #[command(flatten)]
    pub rep: RepArgs,
    /// Representation JSON written by `represent --format json`.
    #[arg(long, value_name = "PATH")]
    pub input: Option<PathBuf>,
    /// Exponent range for the loop law, `LO..HI` or `LO,HI`.
    #[arg(
        long,
        value_name = "LO..HI",
        default_value = "-3..3",
        allow_hyphen_values = true
    )]
    pub m_range: String,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    /// Check a single matrix instead of sweeping.
    #[command(flatten)]
    pub matrix: MatrixArgs,
    /// Largest rank in the sweep.
    #[arg(long, default_value_t = 3)]
    pub max_rank: usize,
    /// Most negative off-diagonal entry in the sweep.
    #[arg(long, default_value_t = -3, allow_hyphen_values = true)]
    pub min_entry: i64,
    /// Skip the relation (b) probe over the rank-2 candidate grids.
    #[arg(long)]
    pub no_probe: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}
