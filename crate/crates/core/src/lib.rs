//! Tools for the monochromatic-L problem on `k`-colored `n x n` grids.
//!
//! * [`grid`]: colorings, L enumeration and detection, the grid text format.
//! * [`bounds`]: the counting arguments that bound `R_3(L)` from above.
//! * [`encode`]: CNF encodings, DIMACS I/O and model decoding.
//! * [`solver`]: an exact backtracking solver, an external-solver harness and
//!   cube partitioning.
//! * [`construct`]: lower-bound witnesses from 3-AP-free colorings.

pub mod bounds;
pub mod construct;
pub mod encode;
pub mod fixtures;
pub mod grid;
pub mod solver;

pub use bounds::{BoundReport, BoundsError, Method, StepTrace};
pub use construct::{build_vdw_witness, find_ap_free, ApFreeColoring, VdwWitness};
pub use encode::{
    decode_model, encode, encode_triangle, parse_dimacs, write_dimacs, CnfInstance,
    SymmetryStrategy, VarMap,
};
pub use grid::{enumerate_ls, find_mono_ls, parse_grid, serialize_grid, GridColoring, LTriple};
pub use solver::{SolveOutcome, SolveStatus};
