//! CNF encodings of "no monochromatic L", with optional unit clauses that
//! fix parts of the grid.
//!
//! Variable `var(r, c, color) = (color + 1) + k(c - 1) + kn(r - 1)` is true
//! when cell `(r, c)` has `color`. Clauses are emitted in a fixed order:
//! the exactly-one block of every cell in row-major order, then one clause
//! per L (in [`enumerate_ls`] order) and color, then the unit clauses.

mod dimacs;
mod model;

use thiserror::Error;

use crate::grid::{enumerate_ls, GridColoring, LIter, LTriple};

pub use dimacs::{
    parse_dimacs, parse_solver_output, write_dimacs, DimacsError, SolverOutput, SolverStatus,
};
pub use model::{decode_model, DecodeError};

pub type Lit = i32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EncodeError {
    #[error("grid side must be at least 1")]
    EmptyGrid,
    #[error("number of colors must be in 1..=256, got {0}")]
    Colors(usize),
    #[error("{k} * {n}^2 variables do not fit in a DIMACS literal")]
    TooManyVars { n: usize, k: usize },
    #[error("point ({row}, {col}) lies outside a {n}x{n} grid")]
    OutOfBounds { row: usize, col: usize, n: usize },
    #[error("color {color} out of range for k = {k}")]
    ColorRange { color: usize, k: usize },
    #[error("reverse diagonal {d} out of range 1..={max}")]
    DiagonalRange { d: usize, max: usize },
    #[error("cell ({row}, {col}) fixed to both {first} and {second}")]
    ConflictingFix {
        row: usize,
        col: usize,
        first: u8,
        second: u8,
    },
    #[error("triangle coloring is {found}x{found}, expected {n}x{n} with {k} colors")]
    TriangleShape { n: usize, k: usize, found: usize },
    #[error("triangle coloring has a monochromatic L at {0}")]
    TriangleNotLFree(LTriple),
}

/// Bijection between `(row, col, color)` and variables `1..=k n^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct VarMap {
    n: usize,
    k: usize,
}

impl VarMap {
    pub fn new(n: usize, k: usize) -> Result<Self, EncodeError> {
        if n == 0 {
            return Err(EncodeError::EmptyGrid);
        }
        if k == 0 || k > 256 {
            return Err(EncodeError::Colors(k));
        }
        match k.checked_mul(n).and_then(|x| x.checked_mul(n)) {
            Some(v) if v <= Lit::MAX as usize => Ok(Self { n, k }),
            _ => Err(EncodeError::TooManyVars { n, k }),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn num_vars(&self) -> u32 {
        (self.k * self.n * self.n) as u32
    }

    pub fn var_id(&self, row: usize, col: usize, color: usize) -> Result<Lit, EncodeError> {
        if !(1..=self.n).contains(&row) || !(1..=self.n).contains(&col) {
            return Err(EncodeError::OutOfBounds {
                row,
                col,
                n: self.n,
            });
        }
        if color >= self.k {
            return Err(EncodeError::ColorRange { color, k: self.k });
        }
        Ok(self.var(row, col, color))
    }

    #[inline]
    fn var(&self, row: usize, col: usize, color: usize) -> Lit {
        ((color + 1) + self.k * (col - 1) + self.k * self.n * (row - 1)) as Lit
    }

    /// Inverse of [`var_id`](Self::var_id).
    pub fn cell_of(&self, var: Lit) -> Option<(usize, usize, usize)> {
        if var < 1 || var as u32 > self.num_vars() {
            return None;
        }
        let v = var as usize - 1;
        let color = v % self.k;
        let col = (v / self.k) % self.n + 1;
        let row = v / (self.k * self.n) + 1;
        Some((row, col, color))
    }

    /// Full assignment (one signed literal per variable, ascending) that
    /// describes `grid`.
    pub fn model_for(&self, grid: &GridColoring) -> Vec<Lit> {
        assert_eq!((grid.n(), grid.k()), (self.n, self.k), "grid shape mismatch");
        (1..=self.num_vars() as Lit)
            .map(|v| {
                let (r, c, color) = self.cell_of(v).expect("in range");
                if grid.get(r, c) as usize == color {
                    v
                } else {
                    -v
                }
            })
            .collect()
    }
}

/// A CNF formula over variables `1..=num_vars`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct CnfInstance {
    pub num_vars: u32,
    pub clauses: Vec<Vec<Lit>>,
}

impl CnfInstance {
    pub fn new(num_vars: u32) -> Self {
        Self {
            num_vars,
            clauses: Vec::new(),
        }
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn push(&mut self, clause: Vec<Lit>) {
        debug_assert!(clause
            .iter()
            .all(|&l| l != 0 && l.unsigned_abs() <= self.num_vars));
        self.clauses.push(clause);
    }

    /// Index of the first clause falsified by `assignment` (indexed by
    /// `var - 1`), or `None` when all clauses hold.
    pub fn first_falsified(&self, assignment: &[bool]) -> Option<usize> {
        self.clauses.iter().position(|clause| {
            !clause.iter().any(|&l| {
                let value = assignment[l.unsigned_abs() as usize - 1];
                if l > 0 {
                    value
                } else {
                    !value
                }
            })
        })
    }

    pub fn is_satisfied_by(&self, assignment: &[bool]) -> bool {
        self.first_falsified(assignment).is_none()
    }
}

/// Symmetry-breaking and search-narrowing options, each realized as unit
/// clauses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SymmetryStrategy {
    /// Cell `(1, 1)` gets the color.
    FixFirst(u8),
    /// Cells `(1, 1)` and `(1, 2)` get the two colors.
    FixFirstTwo(u8, u8),
    /// Every cell of column `n` gets the color.
    FixRightColumn(u8),
    /// Every cell of each listed reverse diagonal gets the paired color.
    FixReverseDiagonals(Vec<(usize, u8)>),
    /// Cells on and below the main diagonal copy a triangle coloring.
    LowerTriangle(GridColoring),
}

/// One cell pinned to a color.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FixedCell {
    pub row: usize,
    pub col: usize,
    pub color: u8,
}

impl FixedCell {
    pub const fn new(row: usize, col: usize, color: u8) -> Self {
        Self { row, col, color }
    }
}

/// Cells pinned by `strategies`, in strategy order, each cell once.
pub fn fixed_cells(
    n: usize,
    k: usize,
    strategies: &[SymmetryStrategy],
) -> Result<Vec<FixedCell>, EncodeError> {
    let check_color = |color: u8| {
        if (color as usize) < k {
            Ok(color)
        } else {
            Err(EncodeError::ColorRange {
                color: color as usize,
                k,
            })
        }
    };
    let mut raw = Vec::new();
    for s in strategies {
        match s {
            SymmetryStrategy::FixFirst(color) => {
                raw.push(FixedCell::new(1, 1, check_color(*color)?));
            }
            SymmetryStrategy::FixFirstTwo(a, b) => {
                raw.push(FixedCell::new(1, 1, check_color(*a)?));
                if n < 2 {
                    return Err(EncodeError::OutOfBounds { row: 1, col: 2, n });
                }
                raw.push(FixedCell::new(1, 2, check_color(*b)?));
            }
            SymmetryStrategy::FixRightColumn(color) => {
                let color = check_color(*color)?;
                raw.extend((1..=n).map(|r| FixedCell::new(r, n, color)));
            }
            SymmetryStrategy::FixReverseDiagonals(diags) => {
                let max = 2 * n - 1;
                for &(d, color) in diags {
                    if !(1..=max).contains(&d) {
                        return Err(EncodeError::DiagonalRange { d, max });
                    }
                    let color = check_color(color)?;
                    for i in 1..=n {
                        if let Some(j) = (d + 1).checked_sub(i).filter(|j| (1..=n).contains(j)) {
                            raw.push(FixedCell::new(i, j, color));
                        }
                    }
                }
            }
            SymmetryStrategy::LowerTriangle(tri) => {
                if tri.n() != n || tri.k() != k {
                    return Err(EncodeError::TriangleShape {
                        n,
                        k,
                        found: tri.n(),
                    });
                }
                if let Some(l) = LIter::new(n).find(|l| l.r >= l.c && tri.is_mono(*l)) {
                    return Err(EncodeError::TriangleNotLFree(l));
                }
                for i in 1..=n {
                    for j in 1..=i {
                        raw.push(FixedCell::new(i, j, tri.get(i, j)));
                    }
                }
            }
        }
    }

    let mut seen: Vec<Option<u8>> = vec![None; n * n];
    let mut out = Vec::with_capacity(raw.len());
    for cell in raw {
        let slot = &mut seen[(cell.row - 1) * n + cell.col - 1];
        match *slot {
            None => {
                *slot = Some(cell.color);
                out.push(cell);
            }
            Some(prev) if prev == cell.color => {}
            Some(prev) => {
                return Err(EncodeError::ConflictingFix {
                    row: cell.row,
                    col: cell.col,
                    first: prev,
                    second: cell.color,
                })
            }
        }
    }
    Ok(out)
}

fn push_exactly_one(inst: &mut CnfInstance, map: &VarMap, row: usize, col: usize) {
    let k = map.k();
    inst.push((0..k).map(|color| map.var(row, col, color)).collect());
    for a in 0..k {
        for b in a + 1..k {
            inst.push(vec![-map.var(row, col, a), -map.var(row, col, b)]);
        }
    }
}

fn push_l_clauses(inst: &mut CnfInstance, map: &VarMap, l: LTriple) {
    let [p, q, s] = l.points();
    for color in 0..map.k() {
        inst.push(vec![
            -map.var(p.0, p.1, color),
            -map.var(q.0, q.1, color),
            -map.var(s.0, s.1, color),
        ]);
    }
}

/// Grid encoding with explicit pinned cells appended as unit clauses.
pub fn encode_with_fixed(n: usize, k: usize, fixed: &[FixedCell]) -> Result<CnfInstance, EncodeError> {
    let map = VarMap::new(n, k)?;
    let mut inst = CnfInstance::new(map.num_vars());
    inst.clauses.reserve(n * n * (1 + k * (k - 1) / 2) + k * crate::grid::l_count(n) + fixed.len());
    for row in 1..=n {
        for col in 1..=n {
            push_exactly_one(&mut inst, &map, row, col);
        }
    }
    for l in enumerate_ls(n) {
        push_l_clauses(&mut inst, &map, l);
    }
    for f in fixed {
        inst.push(vec![map.var_id(f.row, f.col, f.color as usize)?]);
    }
    Ok(inst)
}

/// "`n x n` grid, `k` colors, no monochromatic L", plus one unit clause per
/// cell pinned by `strategies`.
pub fn encode(n: usize, k: usize, strategies: &[SymmetryStrategy]) -> Result<CnfInstance, EncodeError> {
    VarMap::new(n, k)?;
    let fixed = fixed_cells(n, k, strategies)?;
    encode_with_fixed(n, k, &fixed)
}

/// Encoding restricted to cells on or below the main diagonal. Variables
/// keep their full-grid numbering; upper cells never appear.
pub fn encode_triangle(n: usize, k: usize) -> Result<CnfInstance, EncodeError> {
    let map = VarMap::new(n, k)?;
    let mut inst = CnfInstance::new(map.num_vars());
    for row in 1..=n {
        for col in 1..=row {
            push_exactly_one(&mut inst, &map, row, col);
        }
    }
    for l in LIter::new(n).filter(|l| l.r >= l.c) {
        push_l_clauses(&mut inst, &map, l);
    }
    Ok(inst)
}

/// Clause count of the plain 3-color encoding, `n(n-1)(2n-1)/2 + 4n^2`.
pub fn expected_clause_count_k3(n: usize) -> usize {
    n * (n - 1) * (2 * n - 1) / 2 + 4 * n * n
}
