//! Lower-bound witnesses: a `k`-coloring of `1..W-1` with no monochromatic
//! 3-term arithmetic progression, painted along the reverse diagonals of a
//! `floor(W/2)`-sided grid, gives an L-free grid.
//!
//! An L at `(r, c, t)` meets reverse diagonals `r+c-1`, `r+c+t-1` and
//! `r+c+2t-1`, which form a progression with difference `t`.

use std::fmt;

use thiserror::Error;

use crate::grid::{find_mono_ls, GridColoring, GridError, MAX_COLORS};

pub use crate::grid::{reverse_diagonal_count, reverse_diagonal_of};

pub const DEFAULT_AP_NODE_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("number of colors must be in 1..={MAX_COLORS}, got {0}")]
    Colors(usize),
    #[error("sequence length must be positive")]
    EmptyLength,
    #[error("search for a {colors}-coloring of 1..{length} gave up after {budget} nodes")]
    BudgetExhausted {
        colors: usize,
        length: usize,
        budget: u64,
    },
    #[error("sequence has a monochromatic progression at {first}, {}, {}", first + step, first + 2 * step)]
    NotApFree { first: usize, step: usize },
    #[error("color {color} at position {position} is not below {colors}")]
    ColorRange {
        position: usize,
        color: u8,
        colors: usize,
    },
    #[error("constructed grid has a monochromatic L")]
    NotLFree,
    #[error(transparent)]
    Grid(#[from] GridError),
}

/// A coloring of positions `1..=length` without a monochromatic
/// progression `i, i+t, i+2t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ApFreeColoring {
    r_colors: usize,
    colors: Vec<u8>,
}

/// First monochromatic progression as `(first, step)`, 1-based.
fn first_mono_ap(colors: &[u8]) -> Option<(usize, usize)> {
    for last in 2..colors.len() {
        for step in 1..=last / 2 {
            let c = colors[last];
            if colors[last - step] == c && colors[last - 2 * step] == c {
                return Some((last - 2 * step + 1, step));
            }
        }
    }
    None
}

impl ApFreeColoring {
    pub fn new(r_colors: usize, colors: Vec<u8>) -> Result<Self, ConstructError> {
        if r_colors == 0 || r_colors > MAX_COLORS {
            return Err(ConstructError::Colors(r_colors));
        }
        if let Some((i, &color)) = colors
            .iter()
            .enumerate()
            .find(|(_, &c)| c as usize >= r_colors)
        {
            return Err(ConstructError::ColorRange {
                position: i + 1,
                color,
                colors: r_colors,
            });
        }
        if let Some((first, step)) = first_mono_ap(&colors) {
            return Err(ConstructError::NotApFree { first, step });
        }
        Ok(Self { r_colors, colors })
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn r_colors(&self) -> usize {
        self.r_colors
    }

    pub fn colors(&self) -> &[u8] {
        &self.colors
    }

    /// Color of position `pos`, 1-based.
    pub fn color_at(&self, pos: usize) -> u8 {
        self.colors[pos - 1]
    }
}

impl fmt::Display for ApFreeColoring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.colors.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Lexicographically first AP-free `r_colors`-coloring of `1..=length`, or
/// `None` when there is none. Uses [`DEFAULT_AP_NODE_BUDGET`].
pub fn find_ap_free(
    r_colors: usize,
    length: usize,
) -> Result<Option<ApFreeColoring>, ConstructError> {
    find_ap_free_with_budget(r_colors, length, DEFAULT_AP_NODE_BUDGET)
}

/// Backtracking left to right, colors ascending. A position may only use a
/// color at most one above the largest color used so far, which discards
/// relabelings without losing the lexicographically first answer.
pub fn find_ap_free_with_budget(
    r_colors: usize,
    length: usize,
    budget: u64,
) -> Result<Option<ApFreeColoring>, ConstructError> {
    if r_colors == 0 || r_colors > MAX_COLORS {
        return Err(ConstructError::Colors(r_colors));
    }
    if length == 0 {
        return Err(ConstructError::EmptyLength);
    }
    let mut colors = vec![0u8; length];
    // largest color among positions before index i, plus one
    let mut used = vec![0usize; length + 1];
    let mut next = vec![0usize; length];
    let mut nodes = 0u64;
    let mut pos = 0usize;
    loop {
        if pos == length {
            return Ok(Some(ApFreeColoring {
                r_colors,
                colors,
            }));
        }
        let hi = r_colors.min(used[pos] + 1);
        let mut placed = None;
        for color in next[pos]..hi {
            nodes += 1;
            if nodes > budget {
                return Err(ConstructError::BudgetExhausted {
                    colors: r_colors,
                    length,
                    budget,
                });
            }
            let c = color as u8;
            if (1..=pos / 2).all(|t| colors[pos - t] != c || colors[pos - 2 * t] != c) {
                placed = Some(color);
                break;
            }
        }
        match placed {
            Some(color) => {
                colors[pos] = color as u8;
                next[pos] = color + 1;
                used[pos + 1] = used[pos].max(color + 1);
                pos += 1;
                if pos < length {
                    next[pos] = 0;
                }
            }
            None => {
                if pos == 0 {
                    return Ok(None);
                }
                next[pos] = 0;
                pos -= 1;
            }
        }
    }
}

/// Least `W` such that every `r_colors`-coloring of `1..=W` has a
/// monochromatic 3-term progression, with an AP-free coloring of `1..W-1`.
pub fn van_der_waerden_number(
    r_colors: usize,
    budget: u64,
) -> Result<(usize, ApFreeColoring), ConstructError> {
    let mut best: Option<ApFreeColoring> = None;
    for length in 1.. {
        match find_ap_free_with_budget(r_colors, length, budget)? {
            Some(c) => best = Some(c),
            None => {
                let base = best.expect("two positions never hold a 3-term progression");
                return Ok((length, base));
            }
        }
    }
    unreachable!()
}

/// An L-free grid whose reverse diagonal `d` has color `base.color_at(d)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VdwWitness {
    pub k_colors: usize,
    /// The computed van der Waerden number `W(k, 3)`.
    pub w: usize,
    pub side: usize,
    pub grid: GridColoring,
    pub base: ApFreeColoring,
}

pub fn build_vdw_witness(k_colors: usize) -> Result<VdwWitness, ConstructError> {
    build_vdw_witness_with_budget(k_colors, DEFAULT_AP_NODE_BUDGET)
}

pub fn build_vdw_witness_with_budget(
    k_colors: usize,
    budget: u64,
) -> Result<VdwWitness, ConstructError> {
    let (w, base) = van_der_waerden_number(k_colors, budget)?;
    let side = w / 2;
    debug_assert!(reverse_diagonal_count(side) < w);
    let mut cells = Vec::with_capacity(side * side);
    for i in 1..=side {
        for j in 1..=side {
            cells.push(base.color_at(reverse_diagonal_of(side, i, j)?));
        }
    }
    let grid = GridColoring::new(side, k_colors, cells)?;
    if !find_mono_ls(&grid).is_empty() {
        return Err(ConstructError::NotLFree);
    }
    Ok(VdwWitness {
        k_colors,
        w,
        side,
        grid,
        base,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_lengths() {
        assert_eq!(find_ap_free(1, 2).unwrap().unwrap().colors(), &[0, 0]);
        assert_eq!(find_ap_free(1, 3).unwrap(), None);
        assert_eq!(find_ap_free(2, 8).unwrap().unwrap().len(), 8);
        assert_eq!(find_ap_free(2, 9).unwrap(), None);
    }

    #[test]
    fn small_numbers() {
        assert_eq!(van_der_waerden_number(1, 1000).unwrap().0, 3);
        assert_eq!(van_der_waerden_number(2, 100_000).unwrap().0, 9);
    }

    #[test]
    fn witness_for_one_and_two_colors() {
        let one = build_vdw_witness(1).unwrap();
        assert_eq!((one.w, one.side), (3, 1));
        assert_eq!(one.grid.cells(), &[0]);
        let two = build_vdw_witness(2).unwrap();
        assert_eq!((two.w, two.side), (9, 4));
        assert!(two.grid.is_l_free());
        for i in 1..=4 {
            for j in 1..=4 {
                assert_eq!(two.grid.get(i, j), two.base.color_at(i + j - 1));
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(find_ap_free(0, 3), Err(ConstructError::Colors(0)));
        assert_eq!(find_ap_free(2, 0), Err(ConstructError::EmptyLength));
        assert_eq!(
            ApFreeColoring::new(2, vec![1, 0, 1, 0, 1]),
            Err(ConstructError::NotApFree { first: 1, step: 2 })
        );
        assert!(matches!(
            ApFreeColoring::new(2, vec![2]),
            Err(ConstructError::ColorRange { position: 1, .. })
        ));
        assert!(matches!(
            find_ap_free_with_budget(3, 26, 5),
            Err(ConstructError::BudgetExhausted { budget: 5, .. })
        ));
    }

    #[test]
    fn display_is_space_separated() {
        let c = ApFreeColoring::new(2, vec![0, 0, 1, 1]).unwrap();
        assert_eq!(c.to_string(), "0 0 1 1");
    }
}
