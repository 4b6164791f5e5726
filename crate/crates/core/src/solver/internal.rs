use super::{SolveError, SolveOutcome, SolveStats};
use crate::encode::{fixed_cells, EncodeError, FixedCell, SymmetryStrategy};
use crate::grid::GridColoring;

pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

/// Row-major backtracking over cells, colors in ascending order. After each
/// placement only the Ls whose lower-right point is the new cell are
/// checked, so a node costs `O(n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InternalSolver {
    pub node_budget: u64,
}

impl Default for InternalSolver {
    fn default() -> Self {
        Self {
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }
}

impl InternalSolver {
    pub fn with_budget(node_budget: u64) -> Self {
        Self { node_budget }
    }

    pub fn solve(
        &self,
        n: usize,
        k: usize,
        strategies: &[SymmetryStrategy],
    ) -> Result<SolveOutcome, SolveError> {
        check_shape(n, k)?;
        let fixed = fixed_cells(n, k, strategies)?;
        self.solve_fixed(n, k, &fixed)
    }

    /// Search with the given cells pinned. Conflicting pins are an error.
    pub fn solve_fixed(
        &self,
        n: usize,
        k: usize,
        fixed: &[FixedCell],
    ) -> Result<SolveOutcome, SolveError> {
        check_shape(n, k)?;
        let total = n * n;
        let mut pinned: Vec<Option<u8>> = vec![None; total];
        for f in fixed {
            if !(1..=n).contains(&f.row) || !(1..=n).contains(&f.col) {
                return Err(EncodeError::OutOfBounds {
                    row: f.row,
                    col: f.col,
                    n,
                }
                .into());
            }
            if f.color as usize >= k {
                return Err(EncodeError::ColorRange {
                    color: f.color as usize,
                    k,
                }
                .into());
            }
            let slot = &mut pinned[(f.row - 1) * n + f.col - 1];
            match *slot {
                Some(prev) if prev != f.color => {
                    return Err(EncodeError::ConflictingFix {
                        row: f.row,
                        col: f.col,
                        first: prev,
                        second: f.color,
                    }
                    .into())
                }
                _ => *slot = Some(f.color),
            }
        }

        let mut cells = vec![0u8; total];
        // next color to try at each position
        let mut next = vec![0usize; total];
        let mut stats = SolveStats::default();
        let mut pos = 0usize;
        loop {
            if pos == total {
                let grid = GridColoring::new(n, k, cells).expect("colors are in range");
                return SolveOutcome::sat(grid, stats);
            }
            let (lo, hi) = match pinned[pos] {
                Some(color) if next[pos] <= color as usize => (color as usize, color as usize + 1),
                Some(_) => (k, k),
                None => (next[pos], k),
            };
            let mut placed = None;
            for color in lo..hi {
                stats.nodes += 1;
                if stats.nodes > self.node_budget {
                    return Ok(SolveOutcome::unknown(
                        stats,
                        format!("node budget of {} exhausted", self.node_budget),
                    ));
                }
                if fits(&cells, n, pos, color as u8) {
                    placed = Some(color);
                    break;
                }
            }
            match placed {
                Some(color) => {
                    cells[pos] = color as u8;
                    next[pos] = color + 1;
                    pos += 1;
                    if pos < total {
                        next[pos] = 0;
                    }
                }
                None => {
                    stats.backtracks += 1;
                    if pos == 0 {
                        return Ok(SolveOutcome::unsat(stats));
                    }
                    next[pos] = 0;
                    pos -= 1;
                }
            }
        }
    }
}

fn check_shape(n: usize, k: usize) -> Result<(), EncodeError> {
    if n == 0 {
        return Err(EncodeError::EmptyGrid);
    }
    if k == 0 || k > 256 {
        return Err(EncodeError::Colors(k));
    }
    Ok(())
}

/// Whether `color` at `pos` completes no monochromatic L whose lower-right
/// point is `pos`. Cells before `pos` are assigned.
#[inline]
fn fits(cells: &[u8], n: usize, pos: usize, color: u8) -> bool {
    let (i, j) = (pos / n, pos % n);
    for t in 1..=i.min(j) {
        let corner = cells[i * n + (j - t)];
        if corner == color && cells[(i - t) * n + (j - t)] == color {
            return false;
        }
    }
    true
}

/// [`InternalSolver::solve`] with the default node budget.
pub fn solve_internal(
    n: usize,
    k: usize,
    strategies: &[SymmetryStrategy],
) -> Result<SolveOutcome, SolveError> {
    InternalSolver::default().solve(n, k, strategies)
}
