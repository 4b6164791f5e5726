use std::str::FromStr;

use super::report::{BoundReport, StepTrace};
use super::{div_ceil, scan, BoundsError, Method, ScanConfig};

/// Range of span bounds the Golomb prover scans.
pub const GOLOMB_SCAN: std::ops::RangeInclusive<i64> = 5..=19;

/// Entry `j` is one more than the length of an optimal Golomb ruler with `j`
/// marks (entry 0 is 0).
const STANDARD_TABLE: [i64; 29] = [
    0, 1, 2, 4, 7, 12, 18, 26, 35, 45, 56, 73, 86, 107, 128, 152, 178, 200, 217, 247, 284, 334,
    357, 373, 426, 481, 493, 554, 586,
];

/// Optimal Golomb ruler lengths (plus one) for orders 0 through 28, and the
/// per-subdiagonal capacities derived from them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GolombTable {
    lengths_plus_one: Vec<i64>,
    blue_array: Vec<i64>,
}

impl GolombTable {
    pub fn standard() -> Self {
        Self::new(STANDARD_TABLE.to_vec()).expect("standard table is valid")
    }

    pub fn new(lengths_plus_one: Vec<i64>) -> Result<Self, BoundsError> {
        if lengths_plus_one.len() != 29
            || lengths_plus_one.windows(2).any(|w| w[0] >= w[1])
            || lengths_plus_one[0] < 0
        {
            return Err(BoundsError::BadTable);
        }
        let blue_array = fill_blue_array(&lengths_plus_one);
        Ok(Self {
            lengths_plus_one,
            blue_array,
        })
    }

    pub fn lengths_plus_one(&self) -> &[i64] {
        &self.lengths_plus_one
    }

    /// Largest length the derived capacities cover.
    pub fn max_len(&self) -> i64 {
        self.blue_array.len() as i64 - 1
    }

    /// `blue_array[len]` as filled by the table walk: the number of table
    /// entries strictly below `len`.
    pub fn cap_for_length(&self, len: i64) -> Result<i64, BoundsError> {
        usize::try_from(len)
            .ok()
            .and_then(|i| self.blue_array.get(i).copied())
            .ok_or(BoundsError::TableRange(len))
    }

    /// Largest order `j` whose table entry is at most `len`: the most marks a
    /// Golomb ruler can carry on a subdiagonal with `len` points.
    pub fn largest_order_within(&self, len: i64) -> Result<i64, BoundsError> {
        if !(0..=self.max_len()).contains(&len) {
            return Err(BoundsError::TableRange(len));
        }
        let count = self.lengths_plus_one.iter().filter(|&&g| g <= len).count();
        Ok(count as i64 - 1)
    }
}

// i, j <- 0; while i < last entry { blue_array[i] <- j; if table[j] = i { j++ }; i++ }
fn fill_blue_array(table: &[i64]) -> Vec<i64> {
    let last = *table.last().expect("nonempty table");
    let mut blue = vec![0i64; last as usize];
    let (mut i, mut j) = (0i64, 0usize);
    while i < last {
        blue[i as usize] = j as i64;
        if table[j] == i {
            j += 1;
        }
        i += 1;
    }
    blue
}

/// Which capacity the Golomb prover uses for intervals of length `k - 1`,
/// which force points onto subdiagonal `S_k` (`n - k` points).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum GolombReading {
    /// `2 * blue_array[n - k]`, exactly as the table walk is indexed.
    #[default]
    ArrayAtSubdiagonal,
    /// `2 * blue_array[n - k - 1]`, indexing by ruler length instead.
    ArrayAtRulerLength,
    /// `2 * b_k`, with `b_k` the largest order whose ruler (length plus
    /// one) fits in the `n - k` points of `S_k`.
    RulerOrder,
}

impl GolombReading {
    pub const ALL: [GolombReading; 3] = [
        GolombReading::ArrayAtSubdiagonal,
        GolombReading::ArrayAtRulerLength,
        GolombReading::RulerOrder,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GolombReading::ArrayAtSubdiagonal => "array",
            GolombReading::ArrayAtRulerLength => "array-shifted",
            GolombReading::RulerOrder => "ruler-order",
        }
    }

    /// Blue-point capacity of subdiagonal `S_k` in an `n x n` grid.
    pub fn capacity(self, table: &GolombTable, n: i64, k: i64) -> Result<i64, BoundsError> {
        let marks = match self {
            GolombReading::ArrayAtSubdiagonal => table.cap_for_length(n - k)?,
            GolombReading::ArrayAtRulerLength => table.cap_for_length(n - k - 1)?,
            GolombReading::RulerOrder => table.largest_order_within(n - k)?,
        };
        Ok(2 * marks)
    }
}

impl FromStr for GolombReading {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GolombReading::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| {
                format!("unknown reading {s:?} (expected array, array-shifted or ruler-order)")
            })
    }
}

pub fn golomb_step(
    n: i64,
    c: i64,
    reading: GolombReading,
    table: &GolombTable,
) -> Result<StepTrace, BoundsError> {
    let space = n * c * (c + 1) / 2;
    let n_star = div_ceil(n, 3);
    let intervals = c * n_star - c * (c + 1) / 2;
    let mut sum = c * (c + 1) * (c + 2) / 6 + c * (c - 1) * (c + 1) / 6 + intervals;

    let mut left = intervals;
    let mut k = 1;
    while left > 0 {
        if k >= n {
            return Err(BoundsError::TableRange(n - k));
        }
        let cap = reading.capacity(table, n, k)?;
        if cap > left {
            sum += left * (k - 1);
            left = 0;
        } else {
            sum += cap * (k - 1);
            left -= cap;
        }
        k += 1;
    }
    Ok(StepTrace {
        n,
        n_star,
        b: reading.capacity(table, n, 1)? / 2,
        intervals,
        q: None,
        r: None,
        occupied: sum,
        space,
        contradiction: sum >= space,
    })
}

/// Least `n` at which intervals of span up to `c`, packed greedily into the
/// Golomb capacities of successive subdiagonals, fill the available space.
pub fn prove_golomb(
    c: i64,
    reading: GolombReading,
    table: &GolombTable,
    cfg: ScanConfig,
) -> Result<BoundReport, BoundsError> {
    if !GOLOMB_SCAN.contains(&c) {
        return Err(BoundsError::SpanOutOfRange(c));
    }
    let (n_result, trace) = scan(cfg, |n| golomb_step(n, c, reading, table))?;
    Ok(BoundReport {
        method: Method::Golomb493,
        c: Some(c),
        rounding: None,
        cap_rule: None,
        reading: Some(reading),
        start: cfg.start,
        n_result,
        trace,
    })
}

/// Runs [`prove_golomb`] for every `c` in [`GOLOMB_SCAN`] on separate
/// threads; reports come back in ascending `c`.
pub fn prove_golomb_scan(
    reading: GolombReading,
    table: &GolombTable,
    cfg: ScanConfig,
) -> Result<Vec<BoundReport>, BoundsError> {
    std::thread::scope(|s| {
        let handles: Vec<_> = GOLOMB_SCAN
            .map(|c| s.spawn(move || prove_golomb(c, reading, table, cfg)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("prover thread panicked"))
            .collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Shortest Golomb ruler with `marks` marks, by exhaustive search.
    fn optimal_ruler_length(marks: usize) -> i64 {
        fn extend(ruler: &mut Vec<i64>, used: &mut Vec<bool>, marks: usize, len: i64) -> bool {
            if ruler.len() == marks {
                return *ruler.last().unwrap() == len;
            }
            let last = *ruler.last().unwrap();
            for next in last + 1..=len {
                let diffs: Vec<i64> = ruler.iter().map(|&m| next - m).collect();
                let mut ok = true;
                let mut seen = Vec::new();
                for &d in &diffs {
                    if used[d as usize] || seen.contains(&d) {
                        ok = false;
                        break;
                    }
                    seen.push(d);
                }
                if !ok {
                    continue;
                }
                for &d in &diffs {
                    used[d as usize] = true;
                }
                ruler.push(next);
                if extend(ruler, used, marks, len) {
                    return true;
                }
                ruler.pop();
                for &d in &diffs {
                    used[d as usize] = false;
                }
            }
            false
        }
        if marks <= 1 {
            return 0;
        }
        let mut len = 0;
        loop {
            let mut ruler = vec![0];
            let mut used = vec![false; len as usize + 1];
            if extend(&mut ruler, &mut used, marks, len) {
                return len;
            }
            len += 1;
        }
    }

    #[test]
    fn table_shape() {
        let t = GolombTable::standard();
        assert_eq!(t.lengths_plus_one().len(), 29);
        assert!(t.lengths_plus_one().windows(2).all(|w| w[0] < w[1]));
        assert_eq!(t.max_len(), 585);
        assert!(GolombTable::new(vec![0, 1, 2]).is_err());
        let mut bad = STANDARD_TABLE.to_vec();
        bad.swap(3, 4);
        assert_eq!(GolombTable::new(bad), Err(BoundsError::BadTable));
    }

    #[test]
    fn small_table_entries_are_optimal_lengths_plus_one() {
        let t = GolombTable::standard();
        for marks in 1..=8 {
            assert_eq!(
                t.lengths_plus_one()[marks],
                optimal_ruler_length(marks) + 1,
                "order {marks}"
            );
        }
    }

    #[test]
    fn cap_for_length_examples() {
        let t = GolombTable::standard();
        assert_eq!(t.cap_for_length(0), Ok(0));
        assert_eq!(t.cap_for_length(3), Ok(3));
        assert_eq!(t.cap_for_length(492), Ok(26));
        assert_eq!(t.cap_for_length(585), Ok(28));
        assert_eq!(t.cap_for_length(586), Err(BoundsError::TableRange(586)));
        assert_eq!(t.cap_for_length(-1), Err(BoundsError::TableRange(-1)));
    }

    #[test]
    fn cap_for_length_is_nondecreasing_step() {
        let t = GolombTable::standard();
        let caps: Vec<i64> = (0..=585).map(|l| t.cap_for_length(l).unwrap()).collect();
        assert!(caps.windows(2).all(|w| w[1] == w[0] || w[1] == w[0] + 1));
        // entries strictly below len
        for (len, &cap) in caps.iter().enumerate() {
            let below = t
                .lengths_plus_one()
                .iter()
                .filter(|&&g| g < len as i64)
                .count() as i64;
            assert_eq!(cap, below);
        }
    }

    #[test]
    fn ruler_order_reading() {
        let t = GolombTable::standard();
        assert_eq!(t.largest_order_within(0), Ok(0));
        assert_eq!(t.largest_order_within(3), Ok(2));
        assert_eq!(t.largest_order_within(4), Ok(3));
        assert_eq!(t.largest_order_within(492), Ok(25));
        assert_eq!(t.largest_order_within(493), Ok(26));
        assert!(t.largest_order_within(586).is_err());
    }

    #[test]
    fn step_initialization_at_493() {
        let t = GolombTable::standard();
        let c = 12;
        let n_star = div_ceil(493, 3);
        assert_eq!(n_star, 165);
        let intervals = c * n_star - c * (c + 1) / 2;
        assert_eq!(intervals, 1902);
        let base = c * (c + 1) * (c + 2) / 6 + c * (c - 1) * (c + 1) / 6;
        assert_eq!(base, (1..=c).map(|j| j * j).sum::<i64>());
        assert_eq!(base + intervals, 2552);
        let s = golomb_step(493, c, GolombReading::ArrayAtSubdiagonal, &t).unwrap();
        assert_eq!(s.intervals, 1902);
        assert_eq!(s.space, 493 * 78);
        assert!(s.occupied >= 2552);
    }

    #[test]
    fn span_range_is_enforced() {
        let t = GolombTable::standard();
        for c in [4, 20, 0] {
            assert_eq!(
                prove_golomb(c, GolombReading::default(), &t, ScanConfig::default()),
                Err(BoundsError::SpanOutOfRange(c))
            );
        }
    }

    #[test]
    fn scan_is_ordered_and_matches_single_runs() {
        let t = GolombTable::standard();
        let cfg = ScanConfig::default();
        let all = prove_golomb_scan(GolombReading::RulerOrder, &t, cfg).unwrap();
        assert_eq!(all.len(), 15);
        for (rep, c) in all.iter().zip(GOLOMB_SCAN) {
            assert_eq!(rep.c, Some(c));
            assert_eq!(rep, &prove_golomb(c, GolombReading::RulerOrder, &t, cfg).unwrap());
        }
    }
}
