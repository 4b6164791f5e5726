//! Deciding whether an L-free `k`-coloring of the `n x n` grid exists.
//!
//! Every SAT outcome carries a witness that has been checked with
//! [`find_mono_ls`]; a witness that fails the check is an
//! [`SolveError::Integrity`] error, never a SAT result.

mod external;
mod internal;
mod partition;

use std::fmt;

use thiserror::Error;

use crate::encode::{DecodeError, EncodeError};
use crate::grid::{find_mono_ls, GridColoring, LTriple};

pub use external::{solve_external, ExternalSolverConfig};
pub use internal::{solve_internal, InternalSolver, DEFAULT_NODE_BUDGET};
pub use partition::{cubes, solve_partitioned, Engine, MAX_CUBES};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SolveStatus {
    Sat,
    Unsat,
    Unknown,
}

impl fmt::Display for SolveStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SolveStatus::Sat => "SATISFIABLE",
            SolveStatus::Unsat => "UNSATISFIABLE",
            SolveStatus::Unknown => "UNKNOWN",
        })
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolveStats {
    /// Color placements tried by the internal search.
    pub nodes: u64,
    pub backtracks: u64,
    /// Conflict count reported by an external solver.
    pub conflicts: Option<u64>,
}

impl SolveStats {
    fn absorb(&mut self, other: &SolveStats) {
        self.nodes += other.nodes;
        self.backtracks += other.backtracks;
        if let Some(c) = other.conflicts {
            *self.conflicts.get_or_insert(0) += c;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOutcome {
    pub status: SolveStatus,
    witness: Option<GridColoring>,
    pub stats: SolveStats,
    /// Why the outcome is UNKNOWN, when it is.
    pub diagnostic: Option<String>,
}

impl SolveOutcome {
    /// SAT outcome; fails unless `witness` is L-free.
    pub fn sat(witness: GridColoring, stats: SolveStats) -> Result<Self, SolveError> {
        let mono = find_mono_ls(&witness);
        if let Some(&first) = mono.first() {
            return Err(SolveError::Integrity(IntegrityError::MonochromaticL {
                first,
                count: mono.len(),
            }));
        }
        Ok(Self {
            status: SolveStatus::Sat,
            witness: Some(witness),
            stats,
            diagnostic: None,
        })
    }

    pub fn unsat(stats: SolveStats) -> Self {
        Self {
            status: SolveStatus::Unsat,
            witness: None,
            stats,
            diagnostic: None,
        }
    }

    pub fn unknown(stats: SolveStats, diagnostic: impl Into<String>) -> Self {
        Self {
            status: SolveStatus::Unknown,
            witness: None,
            stats,
            diagnostic: Some(diagnostic.into()),
        }
    }

    pub fn witness(&self) -> Option<&GridColoring> {
        self.witness.as_ref()
    }

    pub fn into_witness(self) -> Option<GridColoring> {
        self.witness
    }
}

/// A solver answer that cannot be trusted.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntegrityError {
    #[error("model does not describe a coloring: {0}")]
    Model(#[from] DecodeError),
    #[error("claimed witness has {count} monochromatic Ls, first at {first}")]
    MonochromaticL { first: LTriple, count: usize },
    #[error("model falsifies clause {0} of the submitted instance")]
    FalsifiedClause(usize),
    #[error("solver reported SAT without a model")]
    MissingModel,
}

#[derive(Debug, Error)]
pub enum SolveError {
    #[error(transparent)]
    Encode(#[from] EncodeError),
    #[error("solver integrity failure: {0}")]
    Integrity(#[from] IntegrityError),
    #[error("invalid solver configuration: {0}")]
    Config(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}
