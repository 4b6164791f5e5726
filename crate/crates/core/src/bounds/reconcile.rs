//! Comparison of each prover reading against the published bound.

use std::fmt::Write as _;

use super::{
    prove_golomb, prove_intervals, prove_naive, prove_nonadjacent, prove_partition, BoundReport,
    BoundsError, CapRule, GolombReading, GolombTable, Method, Rounding, ScanConfig, StepTrace,
};

/// One reading of a method and where it lands.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReadingOutcome {
    pub label: String,
    pub n_result: i64,
    /// The step at the published `n`, when the scan reached it.
    pub at_published: Option<StepTrace>,
    /// The step at which this reading first disagrees with the published
    /// bound: the published `n` itself when no contradiction fires there,
    /// otherwise the earlier `n` where one already fires.
    pub divergent: Option<StepTrace>,
}

impl ReadingOutcome {
    fn from_report(label: String, report: &BoundReport, published: i64) -> Self {
        let at_published = report.step_at(published).copied();
        let divergent = if report.n_result == published {
            None
        } else if report.n_result < published {
            Some(*report.final_step())
        } else {
            at_published.or_else(|| report.trace.first().copied())
        };
        Self {
            label,
            n_result: report.n_result,
            at_published,
            divergent,
        }
    }

    pub fn reproduces(&self, published: i64) -> bool {
        self.n_result == published
    }
}

/// All readings of one method side by side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reconciliation {
    pub method: Method,
    pub c: Option<i64>,
    pub published: i64,
    pub readings: Vec<ReadingOutcome>,
}

impl Reconciliation {
    /// True when at least one reading lands exactly on the published bound.
    pub fn reproduced(&self) -> bool {
        self.readings.iter().any(|r| r.reproduces(self.published))
    }

    /// `key=value` lines; each reading is prefixed `reading.<i>.`.
    pub fn to_key_value(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "reconcile.method={}", self.method);
        if let Some(c) = self.c {
            let _ = writeln!(out, "reconcile.c={c}");
        }
        let _ = writeln!(out, "reconcile.published={}", self.published);
        let _ = writeln!(out, "reconcile.reproduced={}", self.reproduced());
        for (i, r) in self.readings.iter().enumerate() {
            let _ = writeln!(out, "reading.{i}.label={}", r.label);
            let _ = writeln!(out, "reading.{i}.n_result={}", r.n_result);
            let _ = writeln!(
                out,
                "reading.{i}.reproduces={}",
                r.reproduces(self.published)
            );
            if let Some(s) = &r.at_published {
                for (k, v) in s.key_values() {
                    let _ = writeln!(out, "reading.{i}.at_published.{k}={v}");
                }
            }
            if let Some(s) = &r.divergent {
                for (k, v) in s.key_values() {
                    let _ = writeln!(out, "reading.{i}.divergent.{k}={v}");
                }
            }
        }
        out
    }
}

/// Runs every reading of `method` (rounding modes, cap rules, or table
/// indexings) and compares each result with the published bound. `c`
/// defaults to the span at which the bound was published.
pub fn reconcile(method: Method, c: Option<i64>, cfg: ScanConfig) -> Result<Reconciliation, BoundsError> {
    let published = method.published_bound();
    let c = if method.needs_span() {
        Some(c.or(method.published_span()).ok_or(BoundsError::MissingSpan(method))?)
    } else {
        None
    };
    let mut readings = Vec::new();
    let mut push = |label: String, report: BoundReport| {
        readings.push(ReadingOutcome::from_report(label, &report, published));
    };
    match method {
        Method::Naive2593 => {
            for rounding in [Rounding::RealValued, Rounding::CeilingPigeonhole] {
                push(
                    format!("rounding={}", rounding.name()),
                    prove_naive(rounding, cfg)?,
                );
            }
        }
        Method::Intervals1804 => push("default".into(), prove_intervals(cfg)?),
        Method::Nonadjacent1573 => push("default".into(), prove_nonadjacent(cfg)?),
        Method::Partition772 => {
            let c = c.expect("span resolved above");
            for rule in CapRule::ALL {
                push(
                    format!("cap_rule={}", rule.name()),
                    prove_partition(c, rule, cfg)?,
                );
            }
        }
        Method::Golomb493 => {
            let c = c.expect("span resolved above");
            let table = GolombTable::standard();
            for reading in GolombReading::ALL {
                push(
                    format!("reading={}", reading.name()),
                    prove_golomb(c, reading, &table, cfg)?,
                );
            }
        }
    }
    Ok(Reconciliation {
        method,
        c,
        published,
        readings,
    })
}
