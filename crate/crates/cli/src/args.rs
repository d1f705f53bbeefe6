use std::path::PathBuf;

use avail_core::report::FigureId;
use clap::{Args, Parser, Subcommand, ValueEnum};

/// Bounds, constructions and checks for binary codes with locality and
/// availability.
#[derive(Debug, Parser)]
#[command(name = "avail", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate an upper bound.
    #[command(subcommand)]
    Bounds(BoundsCommand),
    /// Build a parity-check matrix.
    #[command(subcommand)]
    Construct(ConstructCommand),
    /// Check a parity-check matrix for (strict) availability.
    Verify(VerifyArgs),
    /// Rank, distance, greedy trace and dual GHW of a parity-check matrix.
    Analyze(AnalyzeArgs),
    /// Emit the data behind one of the comparison plots as CSV.
    Figure(FigureArgs),
}

#[derive(Debug, Subcommand)]
pub enum BoundsCommand {
    /// Upper bounds on the rate k/n.
    Rate(RateArgs),
    /// Upper bounds on the minimum distance.
    Dmin(DminArgs),
    /// Linear-programming bound on the dimension.
    Lp(LpArgs),
    /// Dimension bound from a Griesmer-type oracle.
    Dim(DimArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RateMethod {
    TamoBarg,
    Prime,
    Transpose,
    /// Needs --n; assumes a connected Tanner graph.
    GreedyT3,
    /// Achievable rate of the direct-sum construction.
    Wzl,
    All,
}

#[derive(Debug, Args)]
pub struct RateArgs {
    #[arg(long)]
    pub r: u64,
    #[arg(long)]
    pub t: u64,
    /// Block length, used by greedy-t3.
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long, value_enum, default_value_t = RateMethod::All)]
    pub method: RateMethod,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DminMethod {
    TamoBarg,
    Wang,
    Shortening,
    MDelta,
    MDeltaMax,
    All,
}

#[derive(Debug, Args)]
pub struct DminArgs {
    #[arg(long)]
    pub n: u64,
    #[arg(long)]
    pub k: u64,
    #[arg(long)]
    pub r: u64,
    #[arg(long)]
    pub t: u64,
    #[arg(long, value_enum, default_value_t = DminMethod::All)]
    pub method: DminMethod,
    /// Profile length for m-delta; defaults to n - k.
    #[arg(long)]
    pub m: Option<u64>,
    #[arg(long, default_value_t = 3)]
    pub delta: u64,
}

#[derive(Debug, Args)]
pub struct LpArgs {
    #[arg(long, default_value_t = 2)]
    pub q: u64,
    #[arg(long)]
    pub n: u64,
    #[arg(long)]
    pub r: u64,
    #[arg(long)]
    pub t: u64,
    /// Solve in floating point instead of exact rationals.
    #[arg(long)]
    pub float: bool,
    /// Add the per-weight upper-bound rows.
    #[arg(long)]
    pub strengthen: bool,
    #[arg(long, default_value_t = avail_core::lp::DEFAULT_PIVOT_LIMIT)]
    pub pivot_limit: usize,
}

#[derive(Debug, Args)]
pub struct DimArgs {
    #[arg(long, default_value_t = 2)]
    pub q: u64,
    #[arg(long)]
    pub n: u64,
    #[arg(long)]
    pub d: u64,
    #[arg(long)]
    pub r: u64,
    #[arg(long)]
    pub t: u64,
}

#[derive(Debug, Subcommand)]
pub enum ConstructCommand {
    /// Code from a family of resolutions built with orthogonal Latin squares.
    Partition(PartitionArgs),
    /// Code from fibres of linear functionals on F_q^2.
    Functional(FunctionalArgs),
    /// The t-dimensional single-parity product code.
    Product(ProductArgs),
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Write the matrix here and a JSON sidecar next to it. Relative paths
    /// are resolved against $AVAIL_OUT_DIR when it is set.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PartitionArgs {
    #[arg(long)]
    pub r: usize,
    /// Number of levels; the length is (r+1)^g.
    #[arg(long)]
    pub g: u32,
    #[arg(long)]
    pub t: usize,
    /// Comma-separated 0-based partition indices; defaults to the first t.
    #[arg(long, value_delimiter = ',')]
    pub choice: Option<Vec<usize>>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct FunctionalArgs {
    /// Field order, a prime power.
    #[arg(long)]
    pub q: u64,
    #[arg(long)]
    pub t: usize,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ProductArgs {
    #[arg(long)]
    pub r: usize,
    #[arg(long)]
    pub t: usize,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct CodeInput {
    /// Matrix file, or `-` for standard input.
    #[arg(long = "in", value_name = "PATH")]
    pub input: PathBuf,
    /// Locality; read from the sidecar when omitted.
    #[arg(long)]
    pub r: Option<usize>,
    /// Availability; read from the sidecar when omitted.
    #[arg(long)]
    pub t: Option<usize>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub code: CodeInput,
    /// Require the regular structure: row weight r+1, column weight t and
    /// pairwise row intersections of at most one.
    #[arg(long)]
    pub strict: bool,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub code: CodeInput,
    /// Minimum distance by enumerating all codewords.
    #[arg(long)]
    pub dmin: bool,
    /// Run the greedy cover and report its trace.
    #[arg(long)]
    pub greedy: bool,
    /// First coordinate of the greedy cover.
    #[arg(long, default_value_t = 0)]
    pub start: usize,
    /// Break greedy ties at random with this seed instead of by index.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Order of the dual generalized Hamming weight to compute.
    #[arg(long)]
    pub ghw: Option<usize>,
}

#[derive(Debug, Args)]
pub struct FigureArgs {
    /// One of rate3, rate4, dmin3, dmin3_mdelta, lp3.
    pub id: FigureId,
    #[arg(long)]
    pub rmin: Option<u64>,
    #[arg(long)]
    pub rmax: Option<u64>,
    /// Largest r solved for lp3; rows above it are flagged and left empty.
    #[arg(long)]
    pub budget: Option<u64>,
    /// Write the CSV here instead of standard output.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}
