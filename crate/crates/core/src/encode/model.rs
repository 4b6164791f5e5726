use thiserror::Error;

use super::{Lit, VarMap};
use crate::grid::GridColoring;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecodeError {
    #[error("literal {lit} is outside 1..={num_vars}")]
    OutOfRange { lit: Lit, num_vars: u32 },
    #[error("cell ({row}, {col}) has no true color variable")]
    NoColor { row: usize, col: usize },
    #[error("cell ({row}, {col}) has {count} true color variables")]
    MultipleColors {
        row: usize,
        col: usize,
        count: usize,
    },
}

/// Turns a solver model into the grid it describes. Variables the model
/// does not mention count as false.
pub fn decode_model(map: &VarMap, model: &[Lit]) -> Result<GridColoring, DecodeError> {
    let num_vars = map.num_vars();
    let mut truth = vec![false; num_vars as usize];
    for &lit in model {
        if lit == 0 || lit.unsigned_abs() > num_vars {
            return Err(DecodeError::OutOfRange { lit, num_vars });
        }
        if lit > 0 {
            truth[lit as usize - 1] = true;
        }
    }

    let (n, k) = (map.n(), map.k());
    let mut cells = Vec::with_capacity(n * n);
    for row in 1..=n {
        for col in 1..=n {
            let base = (row - 1) * n * k + (col - 1) * k;
            let on: Vec<usize> = (0..k).filter(|&c| truth[base + c]).collect();
            match on.as_slice() {
                [color] => cells.push(*color as u8),
                [] => return Err(DecodeError::NoColor { row, col }),
                many => {
                    return Err(DecodeError::MultipleColors {
                        row,
                        col,
                        count: many.len(),
                    })
                }
            }
        }
    }
    Ok(GridColoring::new(n, k, cells).expect("decoded colors are in range"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_cell() {
        let m = VarMap::new(1, 3).unwrap();
        let g = decode_model(&m, &[1, -2, -3]).unwrap();
        assert_eq!(g.cells(), &[0]);
        assert_eq!(
            decode_model(&m, &[1, 2, -3]),
            Err(DecodeError::MultipleColors {
                row: 1,
                col: 1,
                count: 2
            })
        );
        assert_eq!(
            decode_model(&m, &[-1, -2, -3]),
            Err(DecodeError::NoColor { row: 1, col: 1 })
        );
        assert_eq!(
            decode_model(&m, &[4]),
            Err(DecodeError::OutOfRange { lit: 4, num_vars: 3 })
        );
    }

    #[test]
    fn fixture_round_trip() {
        let g = crate::fixtures::witness_20x20();
        let m = VarMap::new(20, 3).unwrap();
        assert_eq!(decode_model(&m, &m.model_for(&g)).unwrap(), g);
        // only the true literals are needed
        let positives: Vec<Lit> = m.model_for(&g).into_iter().filter(|&l| l > 0).collect();
        assert_eq!(positives.len(), 400);
        assert_eq!(decode_model(&m, &positives).unwrap(), g);
    }
}
