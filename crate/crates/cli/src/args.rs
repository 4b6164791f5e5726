use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lramsey_core::bounds::{CapRule, GolombReading, Method, Rounding};

#[derive(Parser, Debug)]
#[command(
    name = "lramsey",
    version,
    about = "Monochromatic-L avoidance on k-colored n x n grids"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check a grid file for monochromatic Ls
    Verify {
        /// Grid file (`-` for stdin)
        path: PathBuf,
    },
    /// Run one of the counting arguments that bound R_3(L)
    Bounds(BoundsArgs),
    /// Write the CNF encoding in DIMACS format
    Encode(EncodeArgs),
    /// Turn a solver's output into a grid file
    Decode(DecodeArgs),
    /// Decide whether an L-free coloring exists
    Solve(SolveArgs),
    /// Build lower-bound witnesses
    Construct {
        #[command(subcommand)]
        kind: ConstructKind,
    },
    /// List every L of the n x n grid as `r c t`
    Enumerate {
        #[arg(long)]
        n: usize,
        /// Print only the number of Ls
        #[arg(long)]
        count: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum MethodArg {
    Naive2593,
    Intervals1804,
    Nonadjacent1573,
    Partition772,
    Golomb493,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Naive2593 => Method::Naive2593,
            MethodArg::Intervals1804 => Method::Intervals1804,
            MethodArg::Nonadjacent1573 => Method::Nonadjacent1573,
            MethodArg::Partition772 => Method::Partition772,
            MethodArg::Golomb493 => Method::Golomb493,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, ValueEnum)]
pub enum ReportFormat {
    #[default]
    Table,
    /// `key=value` lines
    Kv,
}

#[derive(Args, Debug)]
pub struct BoundsArgs {
    #[arg(value_enum)]
    pub method: MethodArg,
    /// Largest interval span (partition772 and golomb493)
    #[arg(long)]
    pub c: Option<i64>,
    /// Print every step of the scan, not just the last
    #[arg(long)]
    pub trace: bool,
    /// Rounding of the naive argument: real or ceiling
    #[arg(long, value_parser = parse_rounding)]
    pub rounding: Option<Rounding>,
    /// Multiplicity cap of the partition argument: 2b-2 or 2b-1
    #[arg(long, value_parser = parse_cap_rule)]
    pub cap_rule: Option<CapRule>,
    /// Golomb capacity reading: array, array-shifted or ruler-order
    #[arg(long, value_parser = parse_reading)]
    pub reading: Option<GolombReading>,
    /// First side length examined
    #[arg(long, default_value_t = 100)]
    pub start: i64,
    /// Give up after this side length
    #[arg(long, default_value_t = 100_000)]
    pub limit: i64,
    /// Compare every reading of the method with its published bound
    #[arg(long)]
    pub reconcile: bool,
    #[arg(long, value_enum, default_value_t = ReportFormat::Table)]
    pub format: ReportFormat,
}

fn parse_rounding(s: &str) -> Result<Rounding, String> {
    s.parse()
}

fn parse_cap_rule(s: &str) -> Result<CapRule, String> {
    s.parse()
}

fn parse_reading(s: &str) -> Result<GolombReading, String> {
    s.parse()
}

/// Unit clauses that pin parts of the grid.
#[derive(Args, Debug, Default)]
pub struct StrategyArgs {
    /// Pin cell (1,1) to color C
    #[arg(long, value_name = "C")]
    pub fix_first: Option<u8>,
    /// Pin cells (1,1) and (1,2) to colors A and B
    #[arg(long, value_name = "A,B", value_parser = parse_pair)]
    pub fix_first_two: Option<(u8, u8)>,
    /// Pin the rightmost column to color C
    #[arg(long, value_name = "C")]
    pub fix_right_column: Option<u8>,
    /// Pin reverse diagonal D (cells with i + j - 1 = D) to color C
    #[arg(long, value_name = "D:C", value_parser = parse_diag)]
    pub fix_reverse_diag: Vec<(usize, u8)>,
    /// Pin cells on and below the main diagonal to those of a grid file
    #[arg(long, value_name = "PATH")]
    pub triangle_file: Option<PathBuf>,
}

fn parse_pair(s: &str) -> Result<(u8, u8), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected A,B, got {s:?}"))?;
    let color = |x: &str| {
        x.trim()
            .parse::<u8>()
            .map_err(|_| format!("invalid color {x:?}"))
    };
    Ok((color(a)?, color(b)?))
}

fn parse_diag(s: &str) -> Result<(usize, u8), String> {
    let (d, c) = s
        .split_once(':')
        .ok_or_else(|| format!("expected D:C, got {s:?}"))?;
    let d = d
        .trim()
        .parse::<usize>()
        .map_err(|_| format!("invalid diagonal {d:?}"))?;
    let c = c
        .trim()
        .parse::<u8>()
        .map_err(|_| format!("invalid color {c:?}"))?;
    Ok((d, c))
}

#[derive(Args, Debug)]
pub struct EncodeArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    #[command(flatten)]
    pub strategies: StrategyArgs,
    /// Encode only the cells on and below the main diagonal
    #[arg(long, conflicts_with_all = ["fix_first", "fix_first_two", "fix_right_column", "fix_reverse_diag", "triangle_file"])]
    pub triangle: bool,
    /// Output file (stdout when omitted)
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct DecodeArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    /// Solver output in SAT-competition format (`-` for stdin)
    pub input: PathBuf,
    /// Write the grid even if it contains a monochromatic L
    #[arg(long)]
    pub no_verify: bool,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum EngineArg {
    #[default]
    Internal,
    External,
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    #[command(flatten)]
    pub strategies: StrategyArgs,
    #[arg(long, value_enum, default_value_t = EngineArg::Internal)]
    pub engine: EngineArg,
    /// External solver command; `{cnf}` marks where the CNF path goes,
    /// otherwise it is appended. Falls back to LRAMSEY_SOLVER.
    #[arg(long, value_name = "CMD")]
    pub solver: Option<String>,
    /// Seconds before an external solver run is abandoned
    #[arg(long, default_value_t = 3600.0)]
    pub timeout: f64,
    /// Node budget of the internal search
    #[arg(long)]
    pub budget: Option<u64>,
    /// Split into cubes over the first P cells
    #[arg(long, value_name = "P", default_value_t = 0)]
    pub prefix_cells: usize,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    /// Directory for temporary CNF files
    #[arg(long)]
    pub workdir: Option<PathBuf>,
    /// Witness file on SAT (stdout when omitted)
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum ConstructKind {
    /// Paint an AP-free coloring along the reverse diagonals
    Vdw {
        #[arg(long)]
        k: usize,
        /// Print the underlying AP-free sequence instead of the grid
        #[arg(long)]
        base: bool,
        /// Node budget of each AP-free search
        #[arg(long)]
        budget: Option<u64>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}
