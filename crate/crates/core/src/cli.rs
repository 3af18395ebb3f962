//! The commands behind the `hornforge` binary.
//!
//! Exit codes:
//!
//! | code | meaning                                         |
//! |------|-------------------------------------------------|
//! | 0    | proved and checked / check passed               |
//! | 1    | the kernel rejected the proof                   |
//! | 2    | saturated: the goal does not follow             |
//! | 3    | reconstruction failed or unsupported inference  |
//! | 4    | budget exhausted                                |
//! | 64   | usage or parse error                            |
//! | 74   | I/O error                                       |

use std::fs;
use std::io::IsTerminal;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use serde::Serialize;
use thiserror::Error;

use crate::kernel::{self, check_script, emit_surface, parse_surface, CheckContext, Formula, KernelError};
use crate::problem::{clausify, parse_problem, Problem};
use crate::reconstruct::{reconstruct_derivation, ReconstructError};
use crate::saturation::{default_portfolio, run_portfolio, Outcome, Strategy};
use crate::transform::{friedmanize, MalformedDerivation};
use crate::tstp::{emit_tstp, parse_tstp, Derivation};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK: i32 = 1;
pub const EXIT_SATURATED: i32 = 2;
pub const EXIT_RECONSTRUCT: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_IO: i32 = 74;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {message}")]
    Parse { path: PathBuf, message: String },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Malformed(#[from] MalformedDerivation),
    #[error(transparent)]
    Reconstruct(#[from] ReconstructError),
    #[error("proof rejected {0}")]
    Check(#[from] KernelError),
    #[error("the proof's theorem `{found}` is not the goal `{expected}`")]
    WrongTheorem { expected: String, found: String },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } => EXIT_IO,
            CliError::Parse { .. } | CliError::Usage(_) => EXIT_USAGE,
            CliError::Malformed(_) | CliError::Reconstruct(_) => EXIT_RECONSTRUCT,
            CliError::Check(_) | CliError::WrongTheorem { .. } => EXIT_CHECK,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RunOutcome {
    Proved,
    Saturated,
    Budget,
    ReconstructionFailed,
    CheckFailed,
}

impl RunOutcome {
    pub fn exit_code(self) -> i32 {
        match self {
            RunOutcome::Proved => EXIT_OK,
            RunOutcome::Saturated => EXIT_SATURATED,
            RunOutcome::Budget => EXIT_BUDGET,
            RunOutcome::ReconstructionFailed => EXIT_RECONSTRUCT,
            RunOutcome::CheckFailed => EXIT_CHECK,
        }
    }
}

/// Milliseconds per phase; phases that did not run are absent.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Timings {
    pub parse_ms: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub saturate_ms: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub transform_ms: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reconstruct_ms: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub check_ms: Option<f64>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Counts {
    pub generated: usize,
    pub kept: usize,
    pub selected: usize,
    pub derivation_steps: usize,
    pub proof_defs: usize,
    pub proof_size: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub input: String,
    pub outcome: RunOutcome,
    /// The strategy whose result is reported.
    pub strategy: Option<String>,
    pub strategies: Vec<String>,
    pub counts: Counts,
    pub timings: Timings,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub files: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct ProveOptions {
    pub strategies: Vec<Strategy>,
    pub sequential: bool,
    pub normalize: bool,
    /// Also print the refutation on standard output.
    pub emit_tstp: bool,
    pub out_dir: Option<PathBuf>,
}

impl Default for ProveOptions {
    fn default() -> ProveOptions {
        ProveOptions {
            strategies: default_portfolio(),
            sequential: false,
            normalize: false,
            emit_tstp: false,
            out_dir: None,
        }
    }
}

impl ProveOptions {
    /// Applies the budget and ordering flags to every strategy.
    pub fn adjust(&mut self, max_clauses: Option<usize>, timeout: Option<Duration>, no_ordering: bool) {
        for s in &mut self.strategies {
            if let Some(n) = max_clauses {
                s.max_clauses = n;
            }
            if let Some(t) = timeout {
                s.max_time = t;
            }
            if no_ordering {
                s.use_ordering = false;
            }
        }
    }
}

fn ms(d: Duration) -> f64 {
    (d.as_secs_f64() * 1e6).round() / 1e3
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

pub fn load_problem(path: &Path) -> Result<Problem, CliError> {
    parse_problem(&read(path)?).map_err(|e| CliError::Parse {
        path: path.to_owned(),
        message: e.to_string(),
    })
}

pub fn load_derivation(path: &Path, p: &Problem) -> Result<Derivation, CliError> {
    parse_tstp(&read(path)?, &p.signature).map_err(|e| CliError::Parse {
        path: path.to_owned(),
        message: e.to_string(),
    })
}

/// Transforms, reconstructs and checks a refutation, returning the checked
/// proof text.
pub fn certify(d: &Derivation, p: &Problem, normalize: bool) -> Result<(Derivation, kernel::ProofScript), CliError> {
    let t = friedmanize(d, &p.goal.atom)?;
    let rec = reconstruct_derivation(&t, p)?;
    let script = if normalize {
        kernel::normalize_script(&rec.script)
    } else {
        rec.script
    };
    check_script(&CheckContext::from_problem(p), &script)?;
    Ok((t, script))
}

fn stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "problem".into())
}

fn out_dir(opts_dir: &Option<PathBuf>, input: &Path) -> PathBuf {
    match opts_dir {
        Some(d) => d.clone(),
        None => input.parent().map(Path::to_path_buf).unwrap_or_default(),
    }
}

/// Proves the problem in `input` and writes `STEM.tstp`,
/// `STEM.transformed.tstp`, `STEM.prf` and `STEM.report.json`. The proof
/// files are only written when the proof checks; the report always is.
pub fn cmd_prove(input: &Path, opts: &ProveOptions) -> Result<RunReport, CliError> {
    if opts.strategies.is_empty() {
        return Err(CliError::Usage("no strategies".into()));
    }
    let t0 = Instant::now();
    let p = load_problem(input)?;
    let mut report = RunReport {
        input: input.display().to_string(),
        outcome: RunOutcome::Budget,
        strategy: None,
        strategies: opts.strategies.iter().map(|s| s.to_string()).collect(),
        counts: Counts::default(),
        timings: Timings {
            parse_ms: ms(t0.elapsed()),
            ..Timings::default()
        },
        error: None,
        files: Vec::new(),
    };
    let dir = out_dir(&opts.out_dir, input);
    if !dir.as_os_str().is_empty() {
        fs::create_dir_all(&dir).map_err(|source| CliError::Io {
            path: dir.clone(),
            source,
        })?;
    }
    let base = dir.join(stem(input));
    let file = |ext: &str| PathBuf::from(format!("{}.{ext}", base.display()));

    let t = Instant::now();
    let clauses = clausify(&p);
    let res = run_portfolio(&p.signature, &clauses.clauses, &opts.strategies, opts.sequential);
    report.timings.saturate_ms = Some(ms(t.elapsed()));
    if let Some(w) = res.winner {
        report.strategy = Some(opts.strategies[w].to_string());
        let st = &res.runs[w].stats;
        report.counts.generated = st.generated;
        report.counts.kept = st.kept;
        report.counts.selected = st.selected;
    } else {
        // No winner: report the total effort.
        for r in &res.runs {
            report.counts.generated += r.stats.generated;
            report.counts.kept += r.stats.kept;
            report.counts.selected += r.stats.selected;
        }
    }
    match &res.outcome {
        Outcome::Saturated => report.outcome = RunOutcome::Saturated,
        Outcome::BudgetExhausted => report.outcome = RunOutcome::Budget,
        Outcome::Refutation(d) => {
            report.counts.derivation_steps = d.steps.len();
            let raw = emit_tstp(&p.signature, d);
            if opts.emit_tstp {
                print!("{raw}");
            }
            write(&file("tstp"), &raw)?;
            report.files.push(file("tstp").display().to_string());
            prove_rest(&p, d, opts, &mut report, &file)?;
        }
    }
    let json = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
    write(&file("report.json"), &json)?;
    report.files.push(file("report.json").display().to_string());
    Ok(report)
}

fn prove_rest(
    p: &Problem,
    d: &Derivation,
    opts: &ProveOptions,
    report: &mut RunReport,
    file: &dyn Fn(&str) -> PathBuf,
) -> Result<(), CliError> {
    let t = Instant::now();
    let transformed = match friedmanize(d, &p.goal.atom) {
        Ok(t) => t,
        Err(e) => {
            report.outcome = RunOutcome::ReconstructionFailed;
            report.error = Some(e.to_string());
            return Ok(());
        }
    };
    report.timings.transform_ms = Some(ms(t.elapsed()));
    write(&file("transformed.tstp"), &emit_tstp(&p.signature, &transformed))?;
    report.files.push(file("transformed.tstp").display().to_string());

    let t = Instant::now();
    let rec = match reconstruct_derivation(&transformed, p) {
        Ok(r) => r,
        Err(e) => {
            report.outcome = RunOutcome::ReconstructionFailed;
            report.error = Some(e.to_string());
            return Ok(());
        }
    };
    let script = if opts.normalize {
        kernel::normalize_script(&rec.script)
    } else {
        rec.script
    };
    report.timings.reconstruct_ms = Some(ms(t.elapsed()));
    report.counts.proof_defs = script.defs.len();
    report.counts.proof_size = script.defs.iter().map(|d| d.term.size()).sum::<usize>() + script.theorem.term.size();

    let t = Instant::now();
    let checked = check_script(&CheckContext::from_problem(p), &script);
    report.timings.check_ms = Some(ms(t.elapsed()));
    match checked {
        Ok(()) => {
            write(&file("prf"), &emit_surface(&p.signature, &script))?;
            report.files.push(file("prf").display().to_string());
            report.outcome = RunOutcome::Proved;
        }
        Err(e) => {
            report.outcome = RunOutcome::CheckFailed;
            report.error = Some(e.to_string());
        }
    }
    Ok(())
}

/// Reconstructs a given refutation of `input` into a checked proof, written
/// to `output` (default: the derivation path with extension `prf`).
pub fn cmd_reconstruct(input: &Path, tstp: &Path, output: Option<&Path>, normalize: bool) -> Result<PathBuf, CliError> {
    let p = load_problem(input)?;
    let d = load_derivation(tstp, &p)?;
    let (_, script) = certify(&d, &p, normalize)?;
    let out = output.map(Path::to_path_buf).unwrap_or_else(|| tstp.with_extension("prf"));
    write(&out, &emit_surface(&p.signature, &script))?;
    Ok(out)
}

/// Checks a proof file against the problem: every definition must check and
/// the theorem must state the problem's goal.
pub fn cmd_check(proof: &Path, input: &Path) -> Result<(), CliError> {
    let p = load_problem(input)?;
    let script = parse_surface(&read(proof)?, &p.signature).map_err(|e| CliError::Parse {
        path: proof.to_owned(),
        message: e.to_string(),
    })?;
    let goal = Formula::atom(p.goal.atom.clone()).to_prop();
    let stated = script.theorem.formula.to_prop();
    if !stated.alpha_eq(&goal) {
        return Err(CliError::WrongTheorem {
            expected: kernel::prop_text(&p.signature, &goal),
            found: kernel::prop_text(&p.signature, &stated),
        });
    }
    check_script(&CheckContext::from_problem(&p), &script)?;
    Ok(())
}

/// `HORNFORGE_COLOR=always|never|auto` (default auto: colour when standard
/// error is a terminal).
pub fn use_color() -> bool {
    match std::env::var("HORNFORGE_COLOR").as_deref() {
        Ok("always") => true,
        Ok("never") => false,
        _ => std::io::stderr().is_terminal(),
    }
}

pub fn diagnostic(label: &str, message: &str) -> String {
    if use_color() {
        format!("\x1b[1;31m{label}:\x1b[0m {message}")
    } else {
        format!("{label}: {message}")
    }
}
