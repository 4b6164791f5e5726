use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::thread;

use super::{
    solve_external, ExternalSolverConfig, InternalSolver, SolveError, SolveOutcome, SolveStats,
    SolveStatus,
};
use crate::encode::{encode_with_fixed, fixed_cells, FixedCell, SymmetryStrategy, VarMap};

/// Upper limit on `k^prefix_cells`.
pub const MAX_CUBES: usize = 1 << 20;

#[derive(Debug, Clone)]
pub enum Engine {
    Internal(InternalSolver),
    External(ExternalSolverConfig),
}

/// All `k^p` colorings of the first `p` cells in row-major order, in
/// lexicographic order with cell `(1, 1)` most significant.
pub fn cubes(n: usize, k: usize, prefix_cells: usize) -> Result<Vec<Vec<FixedCell>>, SolveError> {
    if prefix_cells > n * n {
        return Err(SolveError::Config(format!(
            "prefix of {prefix_cells} cells exceeds the {} cells of the grid",
            n * n
        )));
    }
    let count = u32::try_from(prefix_cells)
        .ok()
        .and_then(|p| k.checked_pow(p))
        .filter(|&c| c <= MAX_CUBES)
        .ok_or_else(|| {
            SolveError::Config(format!(
                "{k}^{prefix_cells} cubes exceeds the limit of {MAX_CUBES}"
            ))
        })?;
    Ok((0..count)
        .map(|index| {
            let mut rest = index;
            let mut digits = vec![0u8; prefix_cells];
            for d in digits.iter_mut().rev() {
                *d = (rest % k) as u8;
                rest /= k;
            }
            digits
                .into_iter()
                .enumerate()
                .map(|(pos, color)| FixedCell::new(pos / n + 1, pos % n + 1, color))
                .collect()
        })
        .collect())
}

/// Base pins plus the cube, or `None` when they disagree on a cell.
fn merge(base: &[FixedCell], cube: &[FixedCell]) -> Option<Vec<FixedCell>> {
    for c in cube {
        if base
            .iter()
            .any(|b| b.row == c.row && b.col == c.col && b.color != c.color)
        {
            return None;
        }
    }
    Some(base.iter().chain(cube).copied().collect())
}

fn solve_cube(
    n: usize,
    k: usize,
    fixed: Option<Vec<FixedCell>>,
    engine: &Engine,
) -> Result<SolveOutcome, SolveError> {
    let Some(fixed) = fixed else {
        return Ok(SolveOutcome::unsat(SolveStats::default()));
    };
    match engine {
        Engine::Internal(solver) => solver.solve_fixed(n, k, &fixed),
        Engine::External(config) => {
            let inst = encode_with_fixed(n, k, &fixed)?;
            solve_external(config, &inst, &VarMap::new(n, k)?)
        }
    }
}

/// Splits the search into cubes over the first `prefix_cells` cells and
/// solves them on up to `workers` threads.
///
/// SAT if some cube is SAT, with the witness of the lowest such cube; UNSAT
/// if every cube is UNSAT; otherwise UNKNOWN. Cubes after a SAT cube may be
/// skipped. The status and witness do not depend on `workers`.
pub fn solve_partitioned(
    n: usize,
    k: usize,
    strategies: &[SymmetryStrategy],
    prefix_cells: usize,
    workers: usize,
    engine: &Engine,
) -> Result<SolveOutcome, SolveError> {
    let base = fixed_cells(n, k, strategies)?;
    let cubes = cubes(n, k, prefix_cells)?;
    let workers = workers.clamp(1, cubes.len().max(1));

    let next = AtomicUsize::new(0);
    let best_sat = AtomicUsize::new(usize::MAX);
    let results: Mutex<Vec<Option<Result<SolveOutcome, SolveError>>>> =
        Mutex::new((0..cubes.len()).map(|_| None).collect());

    thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let index = next.fetch_add(1, Ordering::SeqCst);
                if index >= cubes.len() {
                    break;
                }
                if index > best_sat.load(Ordering::SeqCst) {
                    continue;
                }
                let result = solve_cube(n, k, merge(&base, &cubes[index]), engine);
                if matches!(&result, Ok(o) if o.status == SolveStatus::Sat) {
                    best_sat.fetch_min(index, Ordering::SeqCst);
                }
                results.lock().expect("no worker panics")[index] = Some(result);
            });
        }
    });

    let mut stats = SolveStats::default();
    let mut unknown: Vec<(usize, Option<String>)> = Vec::new();
    let mut found = None;
    for (index, slot) in results.into_inner().expect("no worker panics").into_iter().enumerate() {
        let Some(result) = slot else { continue };
        if found.is_some() {
            if let Ok(o) = &result {
                stats.absorb(&o.stats);
            }
            continue;
        }
        let outcome = result?;
        stats.absorb(&outcome.stats);
        match outcome.status {
            SolveStatus::Sat => found = outcome.into_witness(),
            SolveStatus::Unsat => {}
            SolveStatus::Unknown => unknown.push((index, outcome.diagnostic)),
        }
    }

    if let Some(witness) = found {
        return SolveOutcome::sat(witness, stats);
    }
    match unknown.first() {
        None => Ok(SolveOutcome::unsat(stats)),
        Some((index, diag)) => Ok(SolveOutcome::unknown(
            stats,
            format!(
                "{} of {} cubes undecided; cube {index}: {}",
                unknown.len(),
                cubes.len(),
                diag.as_deref().unwrap_or("no diagnostic")
            ),
        )),
    }
}
