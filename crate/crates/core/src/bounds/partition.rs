use std::str::FromStr;

use super::report::{BoundReport, StepTrace};
use super::{blue_cap, div_ceil, scan, BoundsError, Method, ScanConfig};

/// How many forced points one subdiagonal may hold before a monochromatic L
/// is unavoidable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum CapRule {
    /// `2(b - 1)`: at most `b - 1` of each of the two remaining colors.
    #[default]
    TwoBMinusTwo,
    /// `2b - 1`.
    TwoBMinusOne,
}

impl CapRule {
    pub const ALL: [CapRule; 2] = [CapRule::TwoBMinusTwo, CapRule::TwoBMinusOne];

    pub fn apply(self, b: i64) -> i64 {
        match self {
            CapRule::TwoBMinusTwo => 2 * (b - 1),
            CapRule::TwoBMinusOne => 2 * b - 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CapRule::TwoBMinusTwo => "2b-2",
            CapRule::TwoBMinusOne => "2b-1",
        }
    }
}

impl FromStr for CapRule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "2b-2" | "2(b-1)" => Ok(CapRule::TwoBMinusTwo),
            "2b-1" => Ok(CapRule::TwoBMinusOne),
            _ => Err(format!("unknown cap rule {s:?} (expected 2b-2 or 2b-1)")),
        }
    }
}

/// `count` intervals that each need a length of at least `lower`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntervalDemand {
    pub lower: i64,
    pub count: i64,
}

/// Least total length of the demanded intervals when no length may be used
/// more than `cap` times.
///
/// Demands are served in ascending order of their lower bound, each taking
/// the smallest length that is both allowed and not yet exhausted.
pub fn min_packing_sum(demands: &[IntervalDemand], cap: i64) -> i64 {
    assert!(cap > 0, "capacity must be positive");
    let mut sorted: Vec<IntervalDemand> = demands.iter().copied().filter(|d| d.count > 0).collect();
    sorted.sort_by_key(|d| d.lower);

    let mut length = 0i64;
    let mut used = 0i64;
    let mut total = 0i64;
    for d in sorted {
        if d.lower > length {
            length = d.lower;
            used = 0;
        }
        let mut left = d.count;
        while left > 0 {
            let take = left.min(cap - used);
            total += take * length;
            used += take;
            left -= take;
            if used == cap {
                length += 1;
                used = 0;
            }
        }
    }
    total
}

/// Demands for all intervals `a_{i, i+j}` with `1 <= j <= c` among `n_star`
/// red points: `n_star - j` of them per span `j`, each at least `j - 1`.
pub fn span_demands(n_star: i64, c: i64) -> Vec<IntervalDemand> {
    (1..=c)
        .filter(|&j| n_star > j)
        .map(|j| IntervalDemand {
            lower: j - 1,
            count: n_star - j,
        })
        .collect()
}

pub fn partition_step(n: i64, c: i64, rule: CapRule) -> Result<StepTrace, BoundsError> {
    let n_star = div_ceil(n, 3);
    let b = blue_cap(n)?;
    let cap = rule.apply(b);
    let demands = span_demands(n_star, c);
    let intervals = demands.iter().map(|d| d.count).sum();
    let occupied = min_packing_sum(&demands, cap) + c * n_star;
    let space = n * c * (c + 1) / 2;
    Ok(StepTrace {
        n,
        n_star,
        b,
        intervals,
        q: None,
        r: None,
        occupied,
        space,
        contradiction: occupied > space,
    })
}

/// Partitions intervals of span up to `c` into chains along the diagonal and
/// finds the least `n` where their minimum total length exceeds
/// `n c (c + 1) / 2`.
pub fn prove_partition(c: i64, rule: CapRule, cfg: ScanConfig) -> Result<BoundReport, BoundsError> {
    if c < 1 {
        return Err(BoundsError::ZeroSpan);
    }
    let (n_result, trace) = scan(cfg, |n| partition_step(n, c, rule))?;
    Ok(BoundReport {
        method: Method::Partition772,
        c: Some(c),
        rounding: None,
        cap_rule: Some(rule),
        reading: None,
        start: cfg.start,
        n_result,
        trace,
    })
}
