//! Reference grids shipped with the crate.

use crate::grid::{parse_grid, GridColoring};

/// Text of a 3-colored 20x20 grid with no monochromatic L.
pub const WITNESS_20X20: &str = include_str!("../fixtures/witness_20x20.grid");

pub fn witness_20x20() -> GridColoring {
    parse_grid(WITNESS_20X20).expect("bundled fixture parses")
}
