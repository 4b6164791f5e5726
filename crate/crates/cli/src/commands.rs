use std::fmt::Write as _;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::time::Duration;

use lramsey_core::bounds::{
    prove_golomb, prove_intervals, prove_naive, prove_nonadjacent, prove_partition, reconcile,
    BoundReport, BoundsError, GolombTable, Method, ScanConfig,
};
use lramsey_core::construct::{build_vdw_witness_with_budget, ConstructError, DEFAULT_AP_NODE_BUDGET};
use lramsey_core::encode::{parse_solver_output, SolverStatus};
use lramsey_core::grid::{l_count, LIter};
use lramsey_core::solver::{
    solve_partitioned, Engine, ExternalSolverConfig, InternalSolver, SolveError, SolveStatus,
    DEFAULT_NODE_BUDGET,
};
use lramsey_core::{
    decode_model, encode, encode_triangle, find_mono_ls, parse_grid, serialize_grid,
    write_dimacs, GridColoring, SymmetryStrategy, VarMap,
};
use thiserror::Error;

use crate::args::{
    BoundsArgs, ConstructKind, DecodeArgs, EncodeArgs, EngineArg, ReportFormat, SolveArgs,
    StrategyArgs,
};

pub const EXIT_OK: u8 = 0;
/// Monochromatic L found, or UNSAT.
pub const EXIT_NEGATIVE: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_VERIFICATION: u8 = 3;
pub const EXIT_UNDECIDED: u8 = 5;
pub const EXIT_USAGE: u8 = 64;

pub const SOLVER_ENV: &str = "LRAMSEY_SOLVER";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Verification(String),
    #[error("{0}")]
    Undecided(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Io { .. } | CliError::Input(_) => EXIT_INPUT,
            CliError::Verification(_) => EXIT_VERIFICATION,
            CliError::Undecided(_) => EXIT_UNDECIDED,
        }
    }
}

impl From<SolveError> for CliError {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::Encode(_) | SolveError::Config(_) => CliError::Usage(e.to_string()),
            SolveError::Integrity(_) => CliError::Verification(e.to_string()),
            SolveError::Io(source) => CliError::Io {
                path: PathBuf::from("<temporary file>"),
                source,
            },
        }
    }
}

fn read_input(path: &Path) -> Result<String, CliError> {
    let io_err = |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    };
    if path == Path::new("-") {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text).map_err(io_err)?;
        Ok(text)
    } else {
        fs::read_to_string(path).map_err(io_err)
    }
}

/// Writes `text` to `output`, or to stdout when no path is given.
fn emit(output: Option<&Path>, text: &str) -> Result<(), CliError> {
    match output {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        }),
        None => {
            let mut out = io::stdout().lock();
            match out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
                Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(CliError::Io {
                    path: PathBuf::from("<stdout>"),
                    source: e,
                }),
                _ => Ok(()),
            }
        }
    }
}

fn read_grid(path: &Path) -> Result<GridColoring, CliError> {
    let text = read_input(path)?;
    parse_grid(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn verify(path: &Path) -> Result<u8, CliError> {
    let grid = read_grid(path)?;
    let mono = find_mono_ls(&grid);
    if mono.is_empty() {
        emit(None, "L-free\n")?;
        return Ok(EXIT_OK);
    }
    let mut text = String::new();
    for l in &mono {
        let _ = writeln!(text, "{l}");
    }
    emit(None, &text)?;
    eprintln!("{} monochromatic L(s)", mono.len());
    Ok(EXIT_NEGATIVE)
}

fn bounds_error(e: BoundsError) -> CliError {
    match e {
        BoundsError::NoContradiction(_) | BoundsError::TableRange(_) => {
            CliError::Undecided(e.to_string())
        }
        _ => CliError::Usage(e.to_string()),
    }
}

pub fn bounds(args: &BoundsArgs) -> Result<u8, CliError> {
    let method = Method::from(args.method);
    let reject = |flag: &str| {
        Err(CliError::Usage(format!(
            "--{flag} does not apply to {method}"
        )))
    };
    if args.rounding.is_some() && method != Method::Naive2593 {
        return reject("rounding");
    }
    if args.cap_rule.is_some() && method != Method::Partition772 {
        return reject("cap-rule");
    }
    if args.reading.is_some() && method != Method::Golomb493 {
        return reject("reading");
    }
    if args.c.is_some() && !method.needs_span() {
        return reject("c");
    }
    if args.start < 3 || args.limit < args.start {
        return Err(CliError::Usage(format!(
            "scan range {}..={} must start at 3 or above and not be empty",
            args.start, args.limit
        )));
    }
    let cfg = ScanConfig {
        start: args.start,
        limit: args.limit,
    };
    let span = || {
        args.c
            .ok_or_else(|| CliError::Usage(format!("{method} needs --c")))
    };

    if args.reconcile {
        let c = if method.needs_span() { Some(span()?) } else { None };
        let rec = reconcile(method, c, cfg).map_err(bounds_error)?;
        emit(None, &rec.to_key_value())?;
        return Ok(EXIT_OK);
    }

    let report: BoundReport = match method {
        Method::Naive2593 => prove_naive(args.rounding.unwrap_or_default(), cfg),
        Method::Intervals1804 => prove_intervals(cfg),
        Method::Nonadjacent1573 => prove_nonadjacent(cfg),
        Method::Partition772 => prove_partition(span()?, args.cap_rule.unwrap_or_default(), cfg),
        Method::Golomb493 => prove_golomb(
            span()?,
            args.reading.unwrap_or_default(),
            &GolombTable::standard(),
            cfg,
        ),
    }
    .map_err(bounds_error)?;
    let text = match args.format {
        ReportFormat::Table => report.to_table(args.trace),
        ReportFormat::Kv => report.to_key_value(args.trace),
    };
    emit(None, &text)?;
    Ok(EXIT_OK)
}

fn strategies(args: &StrategyArgs) -> Result<Vec<SymmetryStrategy>, CliError> {
    let mut out = Vec::new();
    if let Some(c) = args.fix_first {
        out.push(SymmetryStrategy::FixFirst(c));
    }
    if let Some((a, b)) = args.fix_first_two {
        out.push(SymmetryStrategy::FixFirstTwo(a, b));
    }
    if let Some(c) = args.fix_right_column {
        out.push(SymmetryStrategy::FixRightColumn(c));
    }
    if !args.fix_reverse_diag.is_empty() {
        out.push(SymmetryStrategy::FixReverseDiagonals(
            args.fix_reverse_diag.clone(),
        ));
    }
    if let Some(path) = &args.triangle_file {
        out.push(SymmetryStrategy::LowerTriangle(read_grid(path)?));
    }
    Ok(out)
}

pub fn encode_cmd(args: &EncodeArgs) -> Result<u8, CliError> {
    let inst = if args.triangle {
        encode_triangle(args.n, args.k)
    } else {
        encode(args.n, args.k, &strategies(&args.strategies)?)
    }
    .map_err(|e| CliError::Usage(e.to_string()))?;
    emit(args.output.as_deref(), &write_dimacs(&inst))?;
    Ok(EXIT_OK)
}

pub fn decode_cmd(args: &DecodeArgs) -> Result<u8, CliError> {
    let map = VarMap::new(args.n, args.k).map_err(|e| CliError::Usage(e.to_string()))?;
    let text = read_input(&args.input)?;
    let parsed = parse_solver_output(&text)
        .map_err(|e| CliError::Input(format!("{}: {e}", args.input.display())))?;
    match parsed.status {
        Some(SolverStatus::Unsatisfiable) => {
            emit(None, "UNSATISFIABLE\n")?;
            return Ok(EXIT_NEGATIVE);
        }
        Some(SolverStatus::Unknown) => {
            emit(None, "UNKNOWN\n")?;
            return Ok(EXIT_UNDECIDED);
        }
        None if parsed.model.is_empty() => {
            return Err(CliError::Input(format!(
                "{}: no status line and no model",
                args.input.display()
            )))
        }
        _ => {}
    }
    let grid = decode_model(&map, &parsed.model)
        .map_err(|e| CliError::Verification(format!("model rejected: {e}")))?;
    let mono = find_mono_ls(&grid);
    if !mono.is_empty() {
        let msg = format!(
            "decoded grid has {} monochromatic L(s), first at {}",
            mono.len(),
            mono[0]
        );
        if !args.no_verify {
            return Err(CliError::Verification(msg));
        }
        eprintln!("warning: {msg}");
    }
    emit(args.output.as_deref(), &serialize_grid(&grid))?;
    Ok(EXIT_OK)
}

fn solver_engine(args: &SolveArgs) -> Result<Engine, CliError> {
    match args.engine {
        EngineArg::Internal => {
            if args.solver.is_some() {
                return Err(CliError::Usage(
                    "--solver requires --engine external".into(),
                ));
            }
            Ok(Engine::Internal(InternalSolver::with_budget(
                args.budget.unwrap_or(DEFAULT_NODE_BUDGET),
            )))
        }
        EngineArg::External => {
            if args.budget.is_some() {
                return Err(CliError::Usage(
                    "--budget applies to the internal engine only".into(),
                ));
            }
            let template = match &args.solver {
                Some(s) => s.clone(),
                None => std::env::var(SOLVER_ENV).map_err(|_| {
                    CliError::Usage(format!(
                        "--engine external needs --solver or {SOLVER_ENV}"
                    ))
                })?,
            };
            if !(args.timeout.is_finite() && args.timeout > 0.0) {
                return Err(CliError::Usage(format!(
                    "timeout must be a positive number of seconds, got {}",
                    args.timeout
                )));
            }
            let workdir = args.workdir.clone().unwrap_or_else(std::env::temp_dir);
            Ok(Engine::External(ExternalSolverConfig::from_template(
                &template,
                Duration::from_secs_f64(args.timeout),
                workdir,
            )?))
        }
    }
}

pub fn solve_cmd(args: &SolveArgs) -> Result<u8, CliError> {
    let engine = solver_engine(args)?;
    let strategies = strategies(&args.strategies)?;
    let outcome = solve_partitioned(
        args.n,
        args.k,
        &strategies,
        args.prefix_cells,
        args.workers,
        &engine,
    )?;
    let stats = &outcome.stats;
    eprintln!(
        "c nodes={} backtracks={}{}",
        stats.nodes,
        stats.backtracks,
        stats
            .conflicts
            .map_or_else(String::new, |c| format!(" conflicts={c}"))
    );
    if let Some(d) = &outcome.diagnostic {
        eprintln!("c {d}");
    }
    let status_line = format!("{}\n", outcome.status);
    match outcome.status {
        SolveStatus::Sat => {
            let grid = serialize_grid(outcome.witness().expect("SAT carries a witness"));
            match &args.output {
                Some(path) => {
                    emit(Some(path), &grid)?;
                    emit(None, &status_line)?;
                }
                None => emit(None, &(status_line + &grid))?,
            }
            Ok(EXIT_OK)
        }
        SolveStatus::Unsat => {
            emit(None, &status_line)?;
            Ok(EXIT_NEGATIVE)
        }
        SolveStatus::Unknown => {
            emit(None, &status_line)?;
            Ok(EXIT_UNDECIDED)
        }
    }
}

pub fn construct_cmd(kind: &ConstructKind) -> Result<u8, CliError> {
    match kind {
        ConstructKind::Vdw {
            k,
            base,
            budget,
            output,
        } => {
            let w = build_vdw_witness_with_budget(*k, budget.unwrap_or(DEFAULT_AP_NODE_BUDGET))
                .map_err(|e| match e {
                    ConstructError::Colors(_) => CliError::Usage(e.to_string()),
                    ConstructError::BudgetExhausted { .. } => CliError::Undecided(e.to_string()),
                    _ => CliError::Verification(e.to_string()),
                })?;
            eprintln!("W({}, 3) = {}, side {}", w.k_colors, w.w, w.side);
            let text = if *base {
                format!("{}\n", w.base)
            } else {
                serialize_grid(&w.grid)
            };
            emit(output.as_deref(), &text)?;
            Ok(EXIT_OK)
        }
    }
}

pub fn enumerate_cmd(n: usize, count: bool) -> Result<u8, CliError> {
    if n == 0 {
        return Err(CliError::Usage("--n must be at least 1".into()));
    }
    if count {
        emit(None, &format!("{}\n", l_count(n)))?;
        return Ok(EXIT_OK);
    }
    let mut out = io::BufWriter::new(io::stdout().lock());
    for l in LIter::new(n) {
        if let Err(e) = writeln!(out, "{l}") {
            if e.kind() == io::ErrorKind::BrokenPipe {
                return Ok(EXIT_OK);
            }
            return Err(CliError::Io {
                path: PathBuf::from("<stdout>"),
                source: e,
            });
        }
    }
    let _ = out.flush();
    Ok(EXIT_OK)
}
