//! DIMACS CNF text and SAT-competition solver output.

use std::fmt::Write as _;

use thiserror::Error;

use super::{CnfInstance, Lit};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DimacsError {
    #[error("missing \"p cnf <vars> <clauses>\" header")]
    MissingHeader,
    #[error("line {line}: malformed header {text:?}")]
    BadHeader { line: usize, text: String },
    #[error("line {line}: second header")]
    DuplicateHeader { line: usize },
    #[error("line {line}: invalid literal {token:?}")]
    BadLiteral { line: usize, token: String },
    #[error("line {line}: literal {lit} exceeds declared variable count {num_vars}")]
    LiteralOutOfRange { line: usize, lit: i64, num_vars: u32 },
    #[error("header declares {declared} clauses, found {found}")]
    ClauseCountMismatch { declared: usize, found: usize },
    #[error("last clause is not terminated by 0")]
    UnterminatedClause,
    #[error("line {line}: unknown status line {text:?}")]
    BadStatus { line: usize, text: String },
    #[error("line {line}: status {text:?} contradicts an earlier status line")]
    ConflictingStatus { line: usize, text: String },
    #[error("model values are not terminated by 0")]
    UnterminatedModel,
}

/// Canonical DIMACS: header, then one zero-terminated clause per line.
pub fn write_dimacs(inst: &CnfInstance) -> String {
    let mut out = String::with_capacity(16 + inst.clauses.len() * 16);
    let _ = writeln!(out, "p cnf {} {}", inst.num_vars, inst.clauses.len());
    for clause in &inst.clauses {
        for lit in clause {
            let _ = write!(out, "{lit} ");
        }
        out.push_str("0\n");
    }
    out
}

/// Reads DIMACS CNF. Comment lines (`c ...`) may appear anywhere; clauses
/// may span lines but every clause must end with `0`.
pub fn parse_dimacs(text: &str) -> Result<CnfInstance, DimacsError> {
    let mut header: Option<(u32, usize)> = None;
    let mut clauses = Vec::new();
    let mut current: Vec<Lit> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') || trimmed.starts_with('%') {
            continue;
        }
        if trimmed.starts_with('p') {
            if header.is_some() {
                return Err(DimacsError::DuplicateHeader { line });
            }
            let bad = || DimacsError::BadHeader {
                line,
                text: trimmed.to_string(),
            };
            let parts: Vec<&str> = trimmed.split_whitespace().collect();
            if parts.len() != 4 || parts[0] != "p" || parts[1] != "cnf" {
                return Err(bad());
            }
            let vars = parts[2].parse::<u32>().map_err(|_| bad())?;
            let count = parts[3].parse::<usize>().map_err(|_| bad())?;
            if vars > Lit::MAX as u32 {
                return Err(bad());
            }
            header = Some((vars, count));
            continue;
        }
        let (num_vars, _) = header.ok_or(DimacsError::MissingHeader)?;
        for token in trimmed.split_whitespace() {
            let lit: i64 = token.parse().map_err(|_| DimacsError::BadLiteral {
                line,
                token: token.to_string(),
            })?;
            if lit == 0 {
                clauses.push(std::mem::take(&mut current));
            } else if lit.unsigned_abs() > num_vars as u64 {
                return Err(DimacsError::LiteralOutOfRange {
                    line,
                    lit,
                    num_vars,
                });
            } else {
                current.push(lit as Lit);
            }
        }
    }

    let (num_vars, declared) = header.ok_or(DimacsError::MissingHeader)?;
    if !current.is_empty() {
        return Err(DimacsError::UnterminatedClause);
    }
    if clauses.len() != declared {
        return Err(DimacsError::ClauseCountMismatch {
            declared,
            found: clauses.len(),
        });
    }
    Ok(CnfInstance { num_vars, clauses })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SolverStatus {
    Satisfiable,
    Unsatisfiable,
    Unknown,
}

/// What a solver printed: its `s` line, its `v` literals, and a conflict
/// count when one appears in a comment line.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SolverOutput {
    pub status: Option<SolverStatus>,
    pub model: Vec<Lit>,
    pub conflicts: Option<u64>,
}

/// First integer following the word "conflicts" in a comment line, as in
/// `c conflicts : 1072210 (...)` or `c conflicts: 42`.
fn conflicts_in(line: &str) -> Option<u64> {
    let lower = line.to_ascii_lowercase();
    let pos = lower.find("conflicts")?;
    lower[pos + "conflicts".len()..]
        .split(|ch: char| !ch.is_ascii_digit())
        .find(|s| !s.is_empty())
        .and_then(|s| s.parse().ok())
}

/// Parses SAT-competition output (`s ...`, `v ... 0`, `c ...`). Other lines
/// are ignored.
pub fn parse_solver_output(text: &str) -> Result<SolverOutput, DimacsError> {
    let mut out = SolverOutput::default();
    let mut terminated = false;
    let mut saw_values = false;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if let Some(rest) = trimmed.strip_prefix("s ").or_else(|| (trimmed == "s").then_some("")) {
            let status = match rest.trim() {
                "SATISFIABLE" => SolverStatus::Satisfiable,
                "UNSATISFIABLE" => SolverStatus::Unsatisfiable,
                "UNKNOWN" | "INDETERMINATE" => SolverStatus::Unknown,
                _ => {
                    return Err(DimacsError::BadStatus {
                        line,
                        text: trimmed.to_string(),
                    })
                }
            };
            if out.status.is_some_and(|s| s != status) {
                return Err(DimacsError::ConflictingStatus {
                    line,
                    text: trimmed.to_string(),
                });
            }
            out.status = Some(status);
        } else if let Some(rest) = trimmed.strip_prefix("v ").or_else(|| (trimmed == "v").then_some("")) {
            saw_values = true;
            for token in rest.split_whitespace() {
                let lit: Lit = token.parse().map_err(|_| DimacsError::BadLiteral {
                    line,
                    token: token.to_string(),
                })?;
                if terminated {
                    continue;
                }
                if lit == 0 {
                    terminated = true;
                } else {
                    out.model.push(lit);
                }
            }
        } else if trimmed.starts_with('c') {
            if let Some(c) = conflicts_in(trimmed) {
                out.conflicts.get_or_insert(c);
            }
        }
    }
    if saw_values && !terminated {
        return Err(DimacsError::UnterminatedModel);
    }
    Ok(out)
}
