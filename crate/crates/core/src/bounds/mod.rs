//! Upper-bound provers for 3-colorings.
//!
//! Each prover scans `n` upward from a start value and stops at the first
//! `n` where its counting argument becomes contradictory, recording one
//! [`StepTrace`] per `n` visited. All arithmetic is exact integer arithmetic.

mod golomb;
mod partition;
mod reconcile;
mod report;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub use golomb::{golomb_step, prove_golomb, prove_golomb_scan, GolombReading, GolombTable, GOLOMB_SCAN};
pub use partition::{min_packing_sum, partition_step, prove_partition, span_demands, CapRule, IntervalDemand};
pub use reconcile::{reconcile, ReadingOutcome, Reconciliation};
pub use report::{BoundReport, StepTrace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("blue cap needs n >= 3, got {0}")]
    BlueCapDomain(i64),
    #[error("span bound c must be at least 1")]
    ZeroSpan,
    #[error("span bound c = {0} is outside the scan range 5..=19")]
    SpanOutOfRange(i64),
    #[error("subdiagonal length {0} is beyond the Golomb table (max 585)")]
    TableRange(i64),
    #[error("Golomb table must be strictly increasing with 29 entries")]
    BadTable,
    #[error("no contradiction found for n up to {0}")]
    NoContradiction(i64),
    #[error("method {0} needs a span bound c")]
    MissingSpan(Method),
}

/// The five counting arguments, named after the bound each one is known to
/// establish.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Naive2593,
    Intervals1804,
    Nonadjacent1573,
    Partition772,
    Golomb493,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::Naive2593,
        Method::Intervals1804,
        Method::Nonadjacent1573,
        Method::Partition772,
        Method::Golomb493,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Naive2593 => "naive2593",
            Method::Intervals1804 => "intervals1804",
            Method::Nonadjacent1573 => "nonadjacent1573",
            Method::Partition772 => "partition772",
            Method::Golomb493 => "golomb493",
        }
    }

    /// The published value of the bound this argument yields.
    pub fn published_bound(self) -> i64 {
        match self {
            Method::Naive2593 => 2593,
            Method::Intervals1804 => 1804,
            Method::Nonadjacent1573 => 1573,
            Method::Partition772 => 772,
            Method::Golomb493 => 493,
        }
    }

    /// Span bound at which the published value was obtained.
    pub fn published_span(self) -> Option<i64> {
        match self {
            Method::Partition772 | Method::Golomb493 => Some(12),
            _ => None,
        }
    }

    pub fn needs_span(self) -> bool {
        matches!(self, Method::Partition772 | Method::Golomb493)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown method {s:?}"))
    }
}

/// How the naive argument rounds its pigeonhole quotients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Rounding {
    /// Exact rational quotients, `n / 3` not rounded.
    RealValued,
    /// Every pigeonhole step rounded up, starting from `ceil(n / 3)`.
    #[default]
    CeilingPigeonhole,
}

impl Rounding {
    pub fn name(self) -> &'static str {
        match self {
            Rounding::RealValued => "real",
            Rounding::CeilingPigeonhole => "ceiling",
        }
    }
}

impl FromStr for Rounding {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "real" => Ok(Rounding::RealValued),
            "ceiling" => Ok(Rounding::CeilingPigeonhole),
            _ => Err(format!("unknown rounding {s:?} (expected real or ceiling)")),
        }
    }
}

/// Where a scan starts and where it gives up.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanConfig {
    pub start: i64,
    pub limit: i64,
}

impl Default for ScanConfig {
    fn default() -> Self {
        Self {
            start: 100,
            limit: 100_000,
        }
    }
}

pub(crate) fn div_ceil(a: i64, b: i64) -> i64 {
    debug_assert!(b > 0 && a >= 0);
    (a + b - 1) / b
}

pub(crate) fn choose2(x: i64) -> i64 {
    x * (x - 1) / 2
}

/// Least `b` with `b (b - 1) / 2 > n - 2`: more forced blue points than
/// this on one diagonal force a monochromatic L.
///
/// With `s = isqrt(8n - 15)` this is `(s + 1) / 2 + 1`. It agrees with
/// [`blue_cap_closed_form`] except when `8n - 15` is a perfect square, where
/// it is one larger.
pub fn blue_cap(n: i64) -> Result<i64, BoundsError> {
    if n < 3 {
        return Err(BoundsError::BlueCapDomain(n));
    }
    Ok(((8 * n - 15).isqrt() + 1) / 2 + 1)
}

/// `ceil(sqrt(2n - 15/4) + 1/2)`, evaluated exactly. At `n = 3` this is 2,
/// where `C(2, 2) = n - 2` holds with equality.
pub fn blue_cap_closed_form(n: i64) -> Result<i64, BoundsError> {
    if n < 3 {
        return Err(BoundsError::BlueCapDomain(n));
    }
    // sqrt(2n - 15/4) + 1/2 = (sqrt(8n - 15) + 1) / 2
    let x = 8 * n - 15;
    let s = x.isqrt();
    if s * s == x {
        Ok((s + 1) / 2)
    } else {
        Ok((s + 1) / 2 + 1)
    }
}

fn scan<F>(cfg: ScanConfig, mut step: F) -> Result<(i64, Vec<StepTrace>), BoundsError>
where
    F: FnMut(i64) -> Result<StepTrace, BoundsError>,
{
    let mut trace = Vec::new();
    for n in cfg.start..=cfg.limit {
        let s = step(n)?;
        let hit = s.contradiction;
        trace.push(s);
        if hit {
            return Ok((n, trace));
        }
    }
    Err(BoundsError::NoContradiction(cfg.limit))
}

/// One step of the naive argument at side `n`.
pub fn naive_step(n: i64, rounding: Rounding) -> StepTrace {
    let n_star = div_ceil(n, 3);
    match rounding {
        Rounding::CeilingPigeonhole => {
            let forced = choose2(n_star);
            let per_diagonal = div_ceil(forced, n - 1);
            let b = div_ceil(per_diagonal, 2);
            let green = choose2(b);
            StepTrace {
                n,
                n_star,
                b,
                intervals: forced,
                q: None,
                r: None,
                occupied: green,
                space: n - 2,
                contradiction: green > n - 2,
            }
        }
        Rounding::RealValued => {
            // b = C(n/3, 2) / (2(n - 1)) = n(n - 3) / (36(n - 1)) = p / q
            let (n128, p) = (n as i128, (n as i128) * (n as i128 - 3));
            let q = 36 * (n128 - 1);
            // C(b, 2) / (n - 2) > 1  <=>  p (p - q) > 2 (n - 2) q^2
            let contradiction = p * (p - q) > 2 * (n128 - 2) * q * q;
            let b_floor = (p / q) as i64;
            StepTrace {
                n,
                n_star,
                b: b_floor,
                intervals: (n * (n - 3) / 18),
                q: None,
                r: None,
                occupied: (p * (p - q) / (2 * q * q)).max(0) as i64,
                space: n - 2,
                contradiction,
            }
        }
    }
}

/// The pigeonhole argument through the main diagonal, one forced
/// subdiagonal, and one doubly forced subdiagonal.
pub fn prove_naive(rounding: Rounding, cfg: ScanConfig) -> Result<BoundReport, BoundsError> {
    let (n_result, trace) = scan(cfg, |n| Ok(naive_step(n, rounding)))?;
    Ok(BoundReport {
        method: Method::Naive2593,
        c: None,
        rounding: Some(rounding),
        cap_rule: None,
        reading: None,
        start: cfg.start,
        n_result,
        trace,
    })
}

/// Greedy packing of `intervals` gaps into lengths `0, 1, 2, ...` with `cap`
/// gaps per length. Returns `(q, r, sum)` where `q` lengths are full, the
/// last one holds `r`, and `sum` is the total length.
fn consecutive_packing(intervals: i64, cap: i64) -> (i64, i64, i64) {
    let q = intervals / cap;
    let r = intervals % cap;
    (q, r, cap * choose2(q) + q * r)
}

/// One step of the consecutive-interval argument.
pub fn intervals_step(n: i64) -> Result<StepTrace, BoundsError> {
    let n_star = div_ceil(n, 3);
    let b = blue_cap(n)?;
    let cap = 2 * (b - 1);
    let intervals = n_star - 1;
    let (q, r, packed) = consecutive_packing(intervals, cap);
    let s_min = n_star + packed;
    Ok(StepTrace {
        n,
        n_star,
        b,
        intervals,
        q: Some(q),
        r: Some(r),
        occupied: s_min,
        space: n,
        contradiction: s_min > n,
    })
}

/// Least `n` where the red points and their consecutive gaps cannot fit on
/// the main diagonal.
pub fn prove_intervals(cfg: ScanConfig) -> Result<BoundReport, BoundsError> {
    let (n_result, trace) = scan(cfg, intervals_step)?;
    Ok(BoundReport {
        method: Method::Intervals1804,
        c: None,
        rounding: None,
        cap_rule: None,
        reading: None,
        start: cfg.start,
        n_result,
        trace,
    })
}

/// One step of the argument that also counts gaps between every other red
/// point.
pub fn nonadjacent_step(n: i64) -> Result<StepTrace, BoundsError> {
    let n_star = div_ceil(n, 3);
    let intervals = (n_star - 1) + (n_star - 1) / 2;
    let b = blue_cap(n)?;
    let cap = 2 * (b - 1);
    let (q, r, packed) = consecutive_packing(intervals, cap);
    let s_min = intervals + 2 + packed;
    Ok(StepTrace {
        n,
        n_star,
        b,
        intervals,
        q: Some(q),
        r: Some(r),
        occupied: s_min,
        space: 2 * n,
        contradiction: s_min > 2 * n,
    })
}

pub fn prove_nonadjacent(cfg: ScanConfig) -> Result<BoundReport, BoundsError> {
    let (n_result, trace) = scan(cfg, nonadjacent_step)?;
    Ok(BoundReport {
        method: Method::Nonadjacent1573,
        c: None,
        rounding: None,
        cap_rule: None,
        reading: None,
        start: cfg.start,
        n_result,
        trace,
    })
}

/// Runs `method` with its default options. `c` is required for the
/// partition and Golomb methods and ignored otherwise.
pub fn prove(method: Method, c: Option<i64>, cfg: ScanConfig) -> Result<BoundReport, BoundsError> {
    match method {
        Method::Naive2593 => prove_naive(Rounding::default(), cfg),
        Method::Intervals1804 => prove_intervals(cfg),
        Method::Nonadjacent1573 => prove_nonadjacent(cfg),
        Method::Partition772 => {
            let c = c.ok_or(BoundsError::MissingSpan(method))?;
            prove_partition(c, CapRule::default(), cfg)
        }
        Method::Golomb493 => {
            let c = c.ok_or(BoundsError::MissingSpan(method))?;
            prove_golomb(c, GolombReading::default(), &GolombTable::standard(), cfg)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn blue_cap_search(n: i64) -> i64 {
        let mut b = 0;
        while b * (b - 1) / 2 <= n - 2 {
            b += 1;
        }
        b
    }

    #[test]
    fn blue_cap_examples() {
        assert_eq!(blue_cap(3), Ok(3));
        assert_eq!(blue_cap_closed_form(3), Ok(2));
        assert_eq!(blue_cap_closed_form(1803), Ok(61));
        assert_eq!(blue_cap(1803), Ok(61));
        assert_eq!(blue_cap(1573), Ok(57));
        assert_eq!(blue_cap(1573), Ok(blue_cap_search(1573)));
        assert_eq!(blue_cap(2), Err(BoundsError::BlueCapDomain(2)));
    }

    #[test]
    fn blue_cap_matches_search() {
        for n in 3..=100_000 {
            assert_eq!(blue_cap(n).unwrap(), blue_cap_search(n), "n = {n}");
            let x = 8 * n - 15;
            let gap = blue_cap(n).unwrap() - blue_cap_closed_form(n).unwrap();
            assert_eq!(gap, i64::from(x.isqrt().pow(2) == x), "n = {n}");
        }
    }

    #[test]
    fn intervals_steps() {
        let s = intervals_step(1804).unwrap();
        assert_eq!((s.b, s.q, s.r, s.occupied), (61, Some(5), Some(1), 1807));
        assert!(s.contradiction);
        let s = intervals_step(1803).unwrap();
        assert_eq!((s.b, s.q, s.r, s.occupied), (61, Some(5), Some(0), 1801));
        assert!(!s.contradiction);
    }

    #[test]
    fn intervals_result() {
        let rep = prove_intervals(ScanConfig::default()).unwrap();
        assert_eq!(rep.n_result, 1804);
        assert_eq!(rep.trace.first().unwrap().n, 100);
        assert_eq!(rep.trace.len() as i64, 1804 - 100 + 1);
        for s in &rep.trace {
            assert_eq!(s.q.unwrap() * 2 * (s.b - 1) + s.r.unwrap(), s.n_star - 1);
        }
        assert_eq!(rep, prove_intervals(ScanConfig::default()).unwrap());
    }

    #[test]
    fn nonadjacent_steps() {
        let s = nonadjacent_step(1573).unwrap();
        assert_eq!(s.n_star, 525);
        assert_eq!(s.intervals, 786);
        assert_eq!((s.b, s.q, s.r), (57, Some(7), Some(2)));
        assert_eq!((s.occupied, s.space), (3154, 3146));
        assert!(s.contradiction);
        let s = nonadjacent_step(1572).unwrap();
        assert_eq!((s.occupied, s.space), (3138, 3144));
        assert!(!s.contradiction);
        let rep = prove_nonadjacent(ScanConfig::default()).unwrap();
        assert_eq!(rep.n_result, 1573);
        for s in &rep.trace {
            assert_eq!(s.q.unwrap() * 2 * (s.b - 1) + s.r.unwrap(), s.intervals);
        }
    }

    #[test]
    fn naive_examples() {
        let s = naive_step(2593, Rounding::CeilingPigeonhole);
        // ceil(2593/3) = 865, C(865,2) = 373680, ceil(373680/2592) = 145, ceil(145/2) = 73
        assert_eq!(s.n_star, 865);
        assert_eq!(s.intervals, 373_680);
        assert_eq!(s.b, 73);
        assert_eq!(s.occupied, 73 * 72 / 2);
        assert_eq!(s.space, 2591);
        assert!(s.contradiction);

        let s = naive_step(100, Rounding::RealValued);
        assert_eq!(s.b, 2);
        assert!(!s.contradiction);
    }

    #[test]
    fn naive_results_are_pinned() {
        let ceil = prove_naive(Rounding::CeilingPigeonhole, ScanConfig::default()).unwrap();
        assert_eq!(ceil.n_result, 2557);
        assert_eq!(ceil.rounding, Some(Rounding::CeilingPigeonhole));
        let real = prove_naive(Rounding::RealValued, ScanConfig::default()).unwrap();
        assert_eq!(real.n_result, 2631);
        // the ceiling predicate is not monotone in n
        assert!(!naive_step(2592, Rounding::CeilingPigeonhole).contradiction);
        assert!(naive_step(2593, Rounding::CeilingPigeonhole).contradiction);
    }

    #[test]
    fn scan_limit_is_reported() {
        let cfg = ScanConfig {
            start: 100,
            limit: 500,
        };
        assert_eq!(
            prove_intervals(cfg),
            Err(BoundsError::NoContradiction(500))
        );
    }

    #[test]
    fn method_names_round_trip() {
        for m in Method::ALL {
            assert_eq!(m.name().parse::<Method>(), Ok(m));
        }
        assert!("bogus".parse::<Method>().is_err());
        assert_eq!(
            prove(Method::Golomb493, None, ScanConfig::default()),
            Err(BoundsError::MissingSpan(Method::Golomb493))
        );
    }
}
