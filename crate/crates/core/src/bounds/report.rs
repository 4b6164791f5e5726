use std::fmt::Write as _;

use super::{CapRule, GolombReading, Method, Rounding};

/// State of a prover at one value of `n`.
///
/// `occupied` is the minimized space the red points need (`s_min` or the
/// Golomb prover's `sum`); `space` is what is available. For the naive
/// method they are the forced green count and `n - 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StepTrace {
    pub n: i64,
    /// `ceil(n / 3)`, the number of red points on the main diagonal.
    pub n_star: i64,
    pub b: i64,
    /// Number of intervals being packed.
    pub intervals: i64,
    pub q: Option<i64>,
    pub r: Option<i64>,
    pub occupied: i64,
    pub space: i64,
    pub contradiction: bool,
}

impl StepTrace {
    pub fn key_values(&self) -> Vec<(&'static str, String)> {
        let mut kv = vec![
            ("n", self.n.to_string()),
            ("n_star", self.n_star.to_string()),
            ("b", self.b.to_string()),
            ("intervals", self.intervals.to_string()),
        ];
        if let Some(q) = self.q {
            kv.push(("q", q.to_string()));
        }
        if let Some(r) = self.r {
            kv.push(("r", r.to_string()));
        }
        kv.push(("occupied", self.occupied.to_string()));
        kv.push(("space", self.space.to_string()));
        kv.push(("contradiction", self.contradiction.to_string()));
        kv
    }

    /// `n=.. n_star=.. ...` on one line.
    pub fn to_line(&self) -> String {
        self.key_values()
            .into_iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Outcome of one prover run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub method: Method,
    pub c: Option<i64>,
    pub rounding: Option<Rounding>,
    pub cap_rule: Option<CapRule>,
    pub reading: Option<GolombReading>,
    pub start: i64,
    /// First `n` whose step is contradictory.
    pub n_result: i64,
    /// One step per `n`, from `start` through `n_result`.
    pub trace: Vec<StepTrace>,
}

impl BoundReport {
    pub fn final_step(&self) -> &StepTrace {
        self.trace.last().expect("a report always holds its final step")
    }

    pub fn step_at(&self, n: i64) -> Option<&StepTrace> {
        let idx = usize::try_from(n - self.start).ok()?;
        self.trace.get(idx)
    }

    fn header(&self) -> Vec<(&'static str, String)> {
        let mut kv = vec![("method", self.method.name().to_string())];
        if let Some(c) = self.c {
            kv.push(("c", c.to_string()));
        }
        if let Some(r) = self.rounding {
            kv.push(("rounding", r.name().to_string()));
        }
        if let Some(r) = self.cap_rule {
            kv.push(("cap_rule", r.name().to_string()));
        }
        if let Some(r) = self.reading {
            kv.push(("reading", r.name().to_string()));
        }
        kv.push(("start", self.start.to_string()));
        kv.push(("n_result", self.n_result.to_string()));
        kv.push(("published", self.method.published_bound().to_string()));
        kv
    }

    /// Machine-readable form: `key=value` header lines, then one
    /// `step.<key>=<value> ...` line per step.
    pub fn to_key_value(&self, full_trace: bool) -> String {
        let mut out = String::new();
        for (k, v) in self.header() {
            let _ = writeln!(out, "{k}={v}");
        }
        let steps: &[StepTrace] = if full_trace {
            &self.trace
        } else {
            std::slice::from_ref(self.final_step())
        };
        for s in steps {
            let line = s
                .key_values()
                .into_iter()
                .map(|(k, v)| format!("step.{k}={v}"))
                .collect::<Vec<_>>()
                .join(" ");
            let _ = writeln!(out, "{line}");
        }
        out
    }

    /// Human-readable summary with an aligned step table.
    pub fn to_table(&self, full_trace: bool) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "method = {}", self.method);
        for (k, v) in self.header().into_iter().skip(1) {
            if k == "n_result" || k == "published" || k == "start" {
                continue;
            }
            let _ = writeln!(out, "{k} = {v}");
        }
        let _ = writeln!(out, "n = {}", self.n_result);
        let published = self.method.published_bound();
        if published == self.n_result {
            let _ = writeln!(out, "published bound {published} reproduced");
        } else {
            let _ = writeln!(
                out,
                "published bound {published} not reproduced by this reading"
            );
        }
        let _ = writeln!(
            out,
            "{:>7} {:>6} {:>5} {:>9} {:>5} {:>5} {:>10} {:>10}  contradiction",
            "n", "n*", "b", "intervals", "q", "r", "occupied", "space"
        );
        let steps: &[StepTrace] = if full_trace {
            &self.trace
        } else {
            std::slice::from_ref(self.final_step())
        };
        let opt = |v: Option<i64>| v.map_or_else(|| "-".to_string(), |x| x.to_string());
        for s in steps {
            let _ = writeln!(
                out,
                "{:>7} {:>6} {:>5} {:>9} {:>5} {:>5} {:>10} {:>10}  {}",
                s.n,
                s.n_star,
                s.b,
                s.intervals,
                opt(s.q),
                opt(s.r),
                s.occupied,
                s.space,
                if s.contradiction { "yes" } else { "no" }
            );
        }
        out
    }
}
