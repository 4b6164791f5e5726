use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::{Child, Command, Stdio};
use std::thread;
use std::time::{Duration, Instant};

use super::{IntegrityError, SolveError, SolveOutcome, SolveStats};
use crate::encode::{
    decode_model, parse_solver_output, write_dimacs, CnfInstance, SolverStatus, VarMap,
};

/// Token in a command template that is replaced by the CNF path. Without it
/// the path is appended as the last argument.
pub const CNF_PLACEHOLDER: &str = "{cnf}";

/// How to run a DIMACS solver that speaks the SAT-competition output format.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExternalSolverConfig {
    pub program: String,
    pub args: Vec<String>,
    pub timeout: Duration,
    /// Where the temporary CNF file is written.
    pub workdir: PathBuf,
}

impl ExternalSolverConfig {
    /// Splits `template` on whitespace: the first word is the program.
    pub fn from_template(
        template: &str,
        timeout: Duration,
        workdir: impl Into<PathBuf>,
    ) -> Result<Self, SolveError> {
        let mut words = template.split_whitespace().map(str::to_string);
        let program = words
            .next()
            .ok_or_else(|| SolveError::Config("empty solver command".into()))?;
        if timeout.is_zero() {
            return Err(SolveError::Config("timeout must be positive".into()));
        }
        Ok(Self {
            program,
            args: words.collect(),
            timeout,
            workdir: workdir.into(),
        })
    }

    fn command_for(&self, cnf: &str) -> Command {
        let mut cmd = Command::new(&self.program);
        let mut substituted = false;
        for arg in &self.args {
            if arg.contains(CNF_PLACEHOLDER) {
                substituted = true;
                cmd.arg(arg.replace(CNF_PLACEHOLDER, cnf));
            } else {
                cmd.arg(arg);
            }
        }
        if !substituted {
            cmd.arg(cnf);
        }
        cmd
    }
}

/// Puts the solver in its own process group so a timeout can stop any
/// helpers it started along with it.
#[cfg(unix)]
fn isolate(cmd: &mut Command) {
    use std::os::unix::process::CommandExt;
    cmd.process_group(0);
}

#[cfg(not(unix))]
fn isolate(_cmd: &mut Command) {}

fn kill_tree(child: &mut Child) {
    #[cfg(unix)]
    if let Ok(pid) = libc::pid_t::try_from(child.id()) {
        // SAFETY: killpg only sends a signal; the group id is the pid of a
        // child we spawned as a group leader and have not yet reaped.
        unsafe {
            libc::killpg(pid, libc::SIGKILL);
        }
    }
    let _ = child.kill();
    let _ = child.wait();
}

fn drain<R: Read + Send + 'static>(mut source: R) -> thread::JoinHandle<String> {
    thread::spawn(move || {
        let mut buf = Vec::new();
        let _ = source.read_to_end(&mut buf);
        String::from_utf8_lossy(&buf).into_owned()
    })
}

/// Writes `inst` to a temporary file, runs the solver on it, and checks
/// any claimed model against both the instance and the L condition.
///
/// Timeouts, crashes and unreadable output yield UNKNOWN with a diagnostic.
/// A SAT claim whose model is malformed, violates a clause, or contains a
/// monochromatic L is an [`IntegrityError`].
pub fn solve_external(
    config: &ExternalSolverConfig,
    inst: &CnfInstance,
    map: &VarMap,
) -> Result<SolveOutcome, SolveError> {
    let mut file = tempfile::Builder::new()
        .prefix("lramsey-")
        .suffix(".cnf")
        .tempfile_in(&config.workdir)?;
    file.write_all(write_dimacs(inst).as_bytes())?;
    file.flush()?;
    let path = file.path().to_string_lossy().into_owned();

    let mut cmd = config.command_for(&path);
    isolate(&mut cmd);
    let mut child = match cmd
        .stdin(Stdio::null())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
    {
        Ok(child) => child,
        Err(e) => {
            return Ok(SolveOutcome::unknown(
                SolveStats::default(),
                format!("could not start {}: {e}", config.program),
            ))
        }
    };
    let stdout = drain(child.stdout.take().expect("stdout is piped"));
    let stderr = drain(child.stderr.take().expect("stderr is piped"));

    let started = Instant::now();
    let exit = loop {
        if let Some(status) = child.try_wait()? {
            break Some(status);
        }
        if started.elapsed() >= config.timeout {
            kill_tree(&mut child);
            break None;
        }
        thread::sleep(Duration::from_millis(5));
    };
    let out_text = stdout.join().unwrap_or_default();
    let err_text = stderr.join().unwrap_or_default();
    let stats = SolveStats::default();

    let Some(exit) = exit else {
        return Ok(SolveOutcome::unknown(
            stats,
            format!("solver timed out after {:.3}s", config.timeout.as_secs_f64()),
        ));
    };
    let parsed = match parse_solver_output(&out_text) {
        Ok(p) => p,
        Err(e) => {
            return Ok(SolveOutcome::unknown(
                stats,
                format!("unreadable solver output: {e}"),
            ))
        }
    };
    let stats = SolveStats {
        conflicts: parsed.conflicts,
        ..stats
    };

    let by_code = match exit.code() {
        Some(10) => Some(SolverStatus::Satisfiable),
        Some(20) => Some(SolverStatus::Unsatisfiable),
        _ => None,
    };
    let status = match (parsed.status, by_code) {
        (Some(a), Some(b)) if a != b => {
            return Ok(SolveOutcome::unknown(
                stats,
                format!("status line {a:?} disagrees with exit status {exit}"),
            ))
        }
        (Some(s), _) | (None, Some(s)) => s,
        (None, None) => {
            let tail = err_text.lines().last().unwrap_or("").trim();
            return Ok(SolveOutcome::unknown(
                stats,
                format!("no status from solver ({exit}){}{tail}", if tail.is_empty() { "" } else { ": " }),
            ));
        }
    };

    match status {
        SolverStatus::Unsatisfiable => Ok(SolveOutcome::unsat(stats)),
        SolverStatus::Unknown => Ok(SolveOutcome::unknown(stats, "solver answered UNKNOWN")),
        SolverStatus::Satisfiable => {
            if parsed.model.is_empty() {
                return Err(IntegrityError::MissingModel.into());
            }
            let grid = decode_model(map, &parsed.model).map_err(IntegrityError::from)?;
            let mut truth = vec![false; inst.num_vars as usize];
            for &lit in &parsed.model {
                let idx = lit.unsigned_abs() as usize - 1;
                if lit > 0 && idx < truth.len() {
                    truth[idx] = true;
                }
            }
            let outcome = SolveOutcome::sat(grid, stats)?;
            if let Some(i) = inst.first_falsified(&truth) {
                return Err(IntegrityError::FalsifiedClause(i).into());
            }
            Ok(outcome)
        }
    }
}
