//! Square colorings, the L pattern, and the grid text format.
//!
//! Coordinates are 1-based throughout: rows grow downward, columns grow to
//! the right. An L with upper point `(r, c)` and arm `t` covers
//! `(r, c)`, `(r + t, c)` and `(r + t, c + t)`.

use std::fmt;

use thiserror::Error;

/// Largest supported side length.
pub const MAX_SIDE: usize = 1 << 16;
/// Largest supported number of colors (cells are stored as `u8`).
pub const MAX_COLORS: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GridError {
    #[error("side length must be in 1..={MAX_SIDE}, got {0}")]
    Side(usize),
    #[error("number of colors must be in 1..={MAX_COLORS}, got {0}")]
    Colors(usize),
    #[error("expected {expected} cells, got {found}")]
    CellCount { expected: usize, found: usize },
    #[error("cell ({row}, {col}) has color {value}, but only {k} colors are allowed")]
    ColorRange {
        row: usize,
        col: usize,
        value: usize,
        k: usize,
    },
    #[error("point ({row}, {col}) lies outside a {n}x{n} grid")]
    OutOfBounds { row: usize, col: usize, n: usize },
}

/// Errors produced while reading the grid text format. Line numbers are
/// 1-based and count every physical line, comments included.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseGridError {
    #[error("missing header line \"n k\"")]
    MissingHeader,
    #[error("line {line}: malformed header {text:?}, expected \"n k\"")]
    Header { line: usize, text: String },
    #[error("line {line}: invalid cell value {token:?}")]
    Cell { line: usize, token: String },
    #[error("line {line}: color {value} out of range for k = {k}")]
    ColorRange { line: usize, value: usize, k: usize },
    #[error("line {line}: ragged row, expected {expected} cells, found {found}")]
    Ragged {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("expected {expected} rows, found {found}")]
    RowCount { expected: usize, found: usize },
    #[error(transparent)]
    Grid(#[from] GridError),
}

/// An `n x n` coloring with `k` colors, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GridColoring {
    n: usize,
    k: usize,
    cells: Vec<u8>,
}

impl GridColoring {
    pub fn new(n: usize, k: usize, cells: Vec<u8>) -> Result<Self, GridError> {
        check_dims(n, k)?;
        if cells.len() != n * n {
            return Err(GridError::CellCount {
                expected: n * n,
                found: cells.len(),
            });
        }
        if let Some(idx) = cells.iter().position(|&v| v as usize >= k) {
            return Err(GridError::ColorRange {
                row: idx / n + 1,
                col: idx % n + 1,
                value: cells[idx] as usize,
                k,
            });
        }
        Ok(Self { n, k, cells })
    }

    /// Grid with every cell set to `color`.
    pub fn filled(n: usize, k: usize, color: u8) -> Result<Self, GridError> {
        check_dims(n, k)?;
        Self::new(n, k, vec![color; n * n])
    }

    /// Builds a grid from rows of colors.
    pub fn from_rows<R: AsRef<[u8]>>(k: usize, rows: &[R]) -> Result<Self, GridError> {
        let n = rows.len();
        let cells: Vec<u8> = rows.iter().flat_map(|r| r.as_ref().iter().copied()).collect();
        if rows.iter().any(|r| r.as_ref().len() != n) {
            return Err(GridError::CellCount {
                expected: n * n,
                found: cells.len(),
            });
        }
        Self::new(n, k, cells)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn cells(&self) -> &[u8] {
        &self.cells
    }

    /// Color at `(row, col)`; panics outside the grid.
    #[inline]
    pub fn get(&self, row: usize, col: usize) -> u8 {
        assert!(
            (1..=self.n).contains(&row) && (1..=self.n).contains(&col),
            "({row}, {col}) outside {0}x{0} grid",
            self.n
        );
        self.cells[(row - 1) * self.n + (col - 1)]
    }

    pub fn try_get(&self, row: usize, col: usize) -> Result<u8, GridError> {
        if (1..=self.n).contains(&row) && (1..=self.n).contains(&col) {
            Ok(self.get(row, col))
        } else {
            Err(GridError::OutOfBounds { row, col, n: self.n })
        }
    }

    pub fn set(&mut self, row: usize, col: usize, color: u8) -> Result<(), GridError> {
        if !(1..=self.n).contains(&row) || !(1..=self.n).contains(&col) {
            return Err(GridError::OutOfBounds { row, col, n: self.n });
        }
        if color as usize >= self.k {
            return Err(GridError::ColorRange {
                row,
                col,
                value: color as usize,
                k: self.k,
            });
        }
        self.cells[(row - 1) * self.n + (col - 1)] = color;
        Ok(())
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u8]> {
        self.cells.chunks(self.n)
    }

    /// Reflection across the anti-diagonal: output `(i, j)` is input
    /// `(n + 1 - j, n + 1 - i)`. This maps the L family onto itself, unlike
    /// the plain transpose.
    pub fn anti_transpose(&self) -> Self {
        let n = self.n;
        let mut cells = vec![0u8; n * n];
        for i in 1..=n {
            for j in 1..=n {
                cells[(i - 1) * n + (j - 1)] = self.get(n + 1 - j, n + 1 - i);
            }
        }
        Self {
            n,
            k: self.k,
            cells,
        }
    }

    /// Applies a color permutation: cell color `x` becomes `perm[x]`.
    pub fn recolor(&self, perm: &[u8]) -> Result<Self, GridError> {
        if perm.len() != self.k {
            return Err(GridError::Colors(perm.len()));
        }
        Self::new(
            self.n,
            self.k,
            self.cells.iter().map(|&c| perm[c as usize]).collect(),
        )
    }

    /// True when the three points of `l` share one color.
    pub fn is_mono(&self, l: LTriple) -> bool {
        let [a, b, c] = l.points();
        let x = self.get(a.0, a.1);
        x == self.get(b.0, b.1) && x == self.get(c.0, c.1)
    }

    pub fn is_l_free(&self) -> bool {
        LIter::new(self.n).all(|l| !self.is_mono(l))
    }
}

impl fmt::Display for GridColoring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serialize_grid(self))
    }
}

fn check_dims(n: usize, k: usize) -> Result<(), GridError> {
    if n == 0 || n > MAX_SIDE {
        return Err(GridError::Side(n));
    }
    if k == 0 || k > MAX_COLORS {
        return Err(GridError::Colors(k));
    }
    Ok(())
}

/// One L: upper point `(r, c)` with arm length `t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LTriple {
    pub r: usize,
    pub c: usize,
    pub t: usize,
}

impl LTriple {
    pub const fn new(r: usize, c: usize, t: usize) -> Self {
        Self { r, c, t }
    }

    /// Upper point, corner, right point.
    pub fn points(self) -> [(usize, usize); 3] {
        let Self { r, c, t } = self;
        [(r, c), (r + t, c), (r + t, c + t)]
    }

    pub fn fits(self, n: usize) -> bool {
        self.r >= 1 && self.c >= 1 && self.t >= 1 && self.r + self.t <= n && self.c + self.t <= n
    }

    /// Image of this L under [`GridColoring::anti_transpose`].
    pub fn anti_transposed(self, n: usize) -> Self {
        Self::new(n + 1 - self.c - self.t, n + 1 - self.r - self.t, self.t)
    }
}

impl fmt::Display for LTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.r, self.c, self.t)
    }
}

/// Lazy `(r, c, t)`-lexicographic walk over every L in an `n x n` grid.
#[derive(Debug, Clone)]
pub struct LIter {
    n: usize,
    r: usize,
    c: usize,
    t: usize,
}

impl LIter {
    pub fn new(n: usize) -> Self {
        Self { n, r: 1, c: 1, t: 0 }
    }
}

impl Iterator for LIter {
    type Item = LTriple;

    fn next(&mut self) -> Option<LTriple> {
        loop {
            if self.r >= self.n {
                return None;
            }
            let max_t = (self.n - self.r).min(self.n - self.c);
            if self.t < max_t {
                self.t += 1;
                return Some(LTriple::new(self.r, self.c, self.t));
            }
            self.t = 0;
            self.c += 1;
            if self.c >= self.n {
                self.c = 1;
                self.r += 1;
            }
        }
    }
}

/// Number of Ls in an `n x n` grid, `(n - 1) n (2n - 1) / 6`.
pub fn l_count(n: usize) -> usize {
    if n == 0 {
        return 0;
    }
    (n - 1) * n * (2 * n - 1) / 6
}

/// Every L of an `n x n` grid in `(r, c, t)` order.
pub fn enumerate_ls(n: usize) -> Vec<LTriple> {
    let mut out = Vec::with_capacity(l_count(n));
    out.extend(LIter::new(n));
    out
}

/// All monochromatic Ls of `g`, in [`enumerate_ls`] order.
pub fn find_mono_ls(g: &GridColoring) -> Vec<LTriple> {
    LIter::new(g.n()).filter(|&l| g.is_mono(l)).collect()
}

/// Diagonal families used by the counting arguments and the symmetry options.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DiagonalId {
    /// `(i, i)`.
    Main,
    /// `S_k`: the diagonal `k` steps below the main one, `(k + i, i)`.
    Sub(usize),
    /// Points with `i + j - 1 = d`, running bottom-left to top-right.
    Reverse(usize),
}

impl DiagonalId {
    /// Cells on this diagonal of an `n x n` grid, top to bottom.
    pub fn cells(self, n: usize) -> Vec<(usize, usize)> {
        match self {
            Self::Main => (1..=n).map(|i| (i, i)).collect(),
            Self::Sub(k) => (1..=n.saturating_sub(k)).map(|i| (k + i, i)).collect(),
            Self::Reverse(d) => (1..=n)
                .filter_map(|i| {
                    let j = (d + 1).checked_sub(i)?;
                    (1..=n).contains(&j).then_some((i, j))
                })
                .collect(),
        }
    }

    pub fn contains(self, i: usize, j: usize) -> bool {
        match self {
            Self::Main => i == j,
            Self::Sub(k) => i == j + k,
            Self::Reverse(d) => i + j == d + 1,
        }
    }
}

/// Index of the reverse diagonal through `(i, j)`.
pub fn reverse_diagonal_of(n: usize, i: usize, j: usize) -> Result<usize, GridError> {
    if !(1..=n).contains(&i) || !(1..=n).contains(&j) {
        return Err(GridError::OutOfBounds { row: i, col: j, n });
    }
    Ok(i + j - 1)
}

pub fn reverse_diagonal_count(n: usize) -> usize {
    (2 * n).saturating_sub(1)
}

/// Reads the grid text format: a `n k` header, then `n` rows of `n`
/// space-separated colors. Lines starting with `#` are skipped.
pub fn parse_grid(text: &str) -> Result<GridColoring, ParseGridError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| !l.starts_with('#') && !l.trim().is_empty());

    let (hline, header) = lines.next().ok_or(ParseGridError::MissingHeader)?;
    let bad_header = || ParseGridError::Header {
        line: hline,
        text: header.to_string(),
    };
    let mut parts = header.split_whitespace();
    let (n, k) = match (parts.next(), parts.next(), parts.next()) {
        (Some(a), Some(b), None) => (
            a.parse::<usize>().map_err(|_| bad_header())?,
            b.parse::<usize>().map_err(|_| bad_header())?,
        ),
        _ => return Err(bad_header()),
    };
    check_dims(n, k)?;

    let mut cells = Vec::with_capacity(n * n);
    let mut rows = 0;
    for (line, text) in lines {
        if rows == n {
            return Err(ParseGridError::RowCount {
                expected: n,
                found: rows + 1,
            });
        }
        let before = cells.len();
        for token in text.split_whitespace() {
            let value: usize = token.parse().map_err(|_| ParseGridError::Cell {
                line,
                token: token.to_string(),
            })?;
            if value >= k {
                return Err(ParseGridError::ColorRange { line, value, k });
            }
            cells.push(value as u8);
        }
        let found = cells.len() - before;
        if found != n {
            return Err(ParseGridError::Ragged {
                line,
                expected: n,
                found,
            });
        }
        rows += 1;
    }
    if rows != n {
        return Err(ParseGridError::RowCount {
            expected: n,
            found: rows,
        });
    }
    Ok(GridColoring::new(n, k, cells)?)
}

/// Canonical text form: header, then one row per line, LF-terminated.
pub fn serialize_grid(g: &GridColoring) -> String {
    let mut out = format!("{} {}\n", g.n(), g.k());
    for row in g.rows() {
        let mut first = true;
        for &v in row {
            if !first {
                out.push(' ');
            }
            first = false;
            out.push_str(&v.to_string());
        }
        out.push('\n');
    }
    out
}
