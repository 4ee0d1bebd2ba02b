use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use wkqfa_core::classical::{
    accepts_pair, check_reversibility, run_1dfa_k, ClassicalWkAutomaton, DfaVerdict, MultiHeadDfa,
    ReversibilityMode, ReversibilityReport, DEFAULT_REVERSIBILITY_MAX_LEN,
};
use wkqfa_core::embed::{complete_to_unitary, reversible_to_quantum, EmbedError};
use wkqfa_core::harness::{compare_dfa, exhaustive_compare, oracle_by_name, oracle_names};
use wkqfa_core::model::{
    complement_strands, Alphabet, ComplementarityRelation, Word, DEFAULT_COMPLEMENT_GUARD,
};
use wkqfa_core::quantum::{
    acceptance_profile, check_well_formed, run, HeadOverrun, Mwkqfa, OperatorEntry, RunOutcome,
    RunParams, SweepParams, DEFAULT_MASS_EPSILON, DEFAULT_WORK_GUARD,
};

use crate::document::{parse_document, to_canonical, Diagnostic, Document, Machine};

pub const DEFAULT_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Parser)]
#[command(
    name = "wkqfa",
    version,
    about = "Multi-head Watson-Crick quantum finite automata workbench"
)]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Unitarity tolerance for `check`.
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,
    /// Reserved; no command uses randomness.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Syntactic,
    Bounded,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OverrunArg {
    Reject,
    Clamp,
}

#[derive(Debug, Args)]
pub struct ReversibilityArgs {
    /// Reversibility check used for multi-head DFA documents.
    #[arg(long, value_enum, default_value_t = ModeArg::Syntactic)]
    pub mode: ModeArg,
    /// Word length bound for `--mode bounded`.
    #[arg(long, default_value_t = DEFAULT_REVERSIBILITY_MAX_LEN)]
    pub max_len: usize,
}

impl ReversibilityArgs {
    fn mode(&self) -> ReversibilityMode {
        match self.mode {
            ModeArg::Syntactic => ReversibilityMode::Syntactic,
            ModeArg::Bounded => ReversibilityMode::Bounded {
                max_len: self.max_len,
            },
        }
    }

    /// Runs the check. A syntactic conflict carries no word, so witnesses are
    /// borrowed from a bounded run up to `max_len` when one exists there.
    fn check(&self, d: &MultiHeadDfa) -> ReversibilityReport {
        let mut report = check_reversibility(d, self.mode());
        if self.mode == ModeArg::Syntactic && !report.predecessor_conflicts.is_empty() {
            let bounded = check_reversibility(
                d,
                ReversibilityMode::Bounded {
                    max_len: self.max_len,
                },
            );
            for c in &mut report.predecessor_conflicts {
                c.witness = bounded
                    .predecessor_conflicts
                    .iter()
                    .filter(|b| b.target == c.target)
                    .find(|b| b.transitions.iter().all(|t| c.transitions.contains(t)))
                    .and_then(|b| b.witness.clone());
            }
        }
        report
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Unitarity of a quantum machine, reversibility of a DFA.
    Check {
        file: PathBuf,
        #[command(flatten)]
        reversibility: ReversibilityArgs,
    },
    /// Runs a machine on one upper word.
    Run {
        file: PathBuf,
        #[arg(long)]
        word: String,
        /// Lower strand; all complements of the word are tried when absent.
        #[arg(long)]
        lower: Option<String>,
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_MASS_EPSILON)]
        epsilon: f64,
        #[arg(long, default_value_t = 0.5)]
        cutpoint: f64,
        #[arg(long, value_enum, default_value_t = OverrunArg::Reject)]
        overrun: OverrunArg,
    },
    /// Compares a machine with a named language oracle on all short words.
    Compare {
        file: PathBuf,
        #[arg(long)]
        oracle: String,
        #[arg(long, default_value_t = 8)]
        max_len: usize,
        #[arg(long, default_value_t = 0.5)]
        cutpoint: f64,
        #[arg(long, default_value_t = DEFAULT_WORK_GUARD)]
        work_guard: usize,
    },
    /// Embeds a reversible multi-head DFA as a quantum machine.
    Convert {
        file: PathBuf,
        /// Output path; the document goes to standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        reversibility: ReversibilityArgs,
    },
    /// Lists the lower strands complementary to a word.
    Complements {
        file: PathBuf,
        #[arg(long)]
        word: String,
        #[arg(long, default_value_t = DEFAULT_COMPLEMENT_GUARD)]
        guard: usize,
    },
}

/// Errors that end a command with exit status 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {diagnostic}")]
    Document {
        path: String,
        diagnostic: Diagnostic,
    },
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}

impl CliError {
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            CliError::Document { path, diagnostic } => serde_json::json!({
                "error": {
                    "file": path,
                    "code": diagnostic.code,
                    "path": diagnostic.path,
                    "message": diagnostic.message,
                    "line": diagnostic.position.map(|p| p.0),
                    "column": diagnostic.position.map(|p| p.1),
                }
            }),
            other => serde_json::json!({ "error": { "message": other.to_string() } }),
        }
    }
}

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

/// A report ready for printing and the exit status it implies.
pub struct Output {
    pub text: String,
    pub json: serde_json::Value,
    pub passed: bool,
}

impl Output {
    fn new<T: Serialize>(report: &T, text: String, passed: bool) -> Self {
        Output {
            text,
            json: serde_json::to_value(report).expect("reports serialize"),
            passed,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text.clone(),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("json");
                s.push('\n');
                s
            }
        }
    }
}

fn read_document(path: &Path) -> Result<Document, CliError> {
    let shown = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|e| CliError::Io {
        path: shown.clone(),
        message: e.to_string(),
    })?;
    parse_document(&text).map_err(|diagnostic| CliError::Document {
        path: shown,
        diagnostic,
    })
}

fn load(path: &Path) -> Result<Machine, CliError> {
    let doc = read_document(path)?;
    doc.to_machine().map_err(|diagnostic| CliError::Document {
        path: path.display().to_string(),
        diagnostic,
    })
}

/// Builds a quantum draft, completing partially authored tuples first.
fn build_quantum(draft: wkqfa_core::quantum::MachineDraft) -> Result<(Mwkqfa, bool), EmbedError> {
    let partial = draft
        .operators
        .values()
        .any(|e| matches!(e, OperatorEntry::Columns(_)));
    if partial {
        complete_to_unitary(draft).map(|m| (m, true))
    } else {
        Ok((draft.build()?, false))
    }
}

fn quantum(machine: Machine, command: &str) -> Result<Mwkqfa, CliError> {
    match machine {
        Machine::Quantum(draft) => build_quantum(draft).map(|(m, _)| m).map_err(usage),
        other => Err(CliError::Usage(format!(
            "{command} does not accept {} documents",
            other.kind()
        ))),
    }
}

fn parse_word(alphabet: &Alphabet, text: &str) -> Result<Word, CliError> {
    alphabet.parse_word(text).map_err(usage)
}

fn prob(p: f64) -> String {
    format!("{p:.9}")
}

pub fn execute(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Check {
            file,
            reversibility,
        } => check(
            file,
            cli.tolerance.unwrap_or(DEFAULT_TOLERANCE),
            reversibility,
        ),
        Command::Run {
            file,
            word,
            lower,
            budget,
            epsilon,
            cutpoint,
            overrun,
        } => {
            let params = RunParams {
                step_budget: *budget,
                mass_epsilon: *epsilon,
                overrun: match overrun {
                    OverrunArg::Reject => HeadOverrun::Reject,
                    OverrunArg::Clamp => HeadOverrun::Clamp,
                },
            };
            run_command(file, word, lower.as_deref(), params, *cutpoint)
        }
        Command::Compare {
            file,
            oracle,
            max_len,
            cutpoint,
            work_guard,
        } => compare(file, oracle, *max_len, *cutpoint, *work_guard),
        Command::Convert {
            file,
            out,
            reversibility,
        } => convert(file, out.as_deref(), reversibility),
        Command::Complements { file, word, guard } => complements(file, word, *guard),
    }
}

// check

#[derive(Serialize)]
struct QuantumCheck {
    file: String,
    kind: &'static str,
    machine: String,
    completed: bool,
    tolerance: f64,
    passed: bool,
    max_deviation: Option<f64>,
    tuples: Vec<TupleLine>,
    failing: Vec<String>,
    completion_error: Option<String>,
}

#[derive(Serialize)]
struct TupleLine {
    tuple: String,
    deviation: f64,
}

#[derive(Serialize)]
struct DfaCheck {
    file: String,
    kind: &'static str,
    machine: String,
    mode: String,
    passed: bool,
    move_conflicts: Vec<MoveConflictLine>,
    predecessor_conflicts: Vec<PredecessorLine>,
}

#[derive(Serialize)]
struct MoveConflictLine {
    target: String,
    first: String,
    second: String,
}

#[derive(Serialize)]
struct PredecessorLine {
    target: String,
    transitions: Vec<String>,
    witness: Option<WitnessLine>,
}

#[derive(Serialize)]
struct WitnessLine {
    word: String,
    state: String,
    positions: Vec<usize>,
}

#[derive(Serialize)]
struct WkCheck {
    file: String,
    kind: &'static str,
    machine: String,
    passed: bool,
    states: usize,
    rules: usize,
}

fn check(
    file: &Path,
    tolerance: f64,
    reversibility: &ReversibilityArgs,
) -> Result<Output, CliError> {
    if !(tolerance >= 0.0) {
        return Err(CliError::Usage(format!(
            "the tolerance must be non-negative, got {tolerance}"
        )));
    }
    let shown = file.display().to_string();
    match load(file)? {
        Machine::Quantum(draft) => {
            let name = draft.name.clone();
            let (machine, completed) = match build_quantum(draft) {
                Ok(pair) => pair,
                Err(EmbedError::Engine(e)) => return Err(usage(e)),
                Err(EmbedError::Model(e)) => return Err(usage(e)),
                Err(e) => {
                    let report = QuantumCheck {
                        file: shown.clone(),
                        kind: crate::document::KIND_MWKQFA,
                        machine: name.clone(),
                        completed: false,
                        tolerance,
                        passed: false,
                        max_deviation: None,
                        tuples: Vec::new(),
                        failing: Vec::new(),
                        completion_error: Some(e.to_string()),
                    };
                    let text = format!("{shown}: {name}: completion failed: {e}\nFAIL\n");
                    return Ok(Output::new(&report, text, false));
                }
            };
            let r = check_well_formed(&machine, tolerance);
            let report = QuantumCheck {
                file: shown.clone(),
                kind: crate::document::KIND_MWKQFA,
                machine: machine.name().to_string(),
                completed,
                tolerance,
                passed: r.passed,
                max_deviation: Some(r.max_deviation),
                tuples: r
                    .tuples
                    .iter()
                    .map(|t| TupleLine {
                        tuple: t.tuple.clone(),
                        deviation: t.deviation,
                    })
                    .collect(),
                failing: r.failing.clone(),
                completion_error: None,
            };
            let mut text = format!(
                "{shown}: {} (mwkqfa, {} states{})\n",
                report.machine,
                machine.state_count(),
                if completed { ", completed" } else { "" }
            );
            for t in &report.tuples {
                let mark = if r.failing.contains(&t.tuple) {
                    "FAIL"
                } else {
                    "ok"
                };
                let _ = writeln!(
                    text,
                    "  {:<16} deviation {:.3e}  {mark}",
                    t.tuple, t.deviation
                );
            }
            let _ = writeln!(
                text,
                "max deviation {:.3e}, tolerance {:.1e}",
                r.max_deviation, tolerance
            );
            for t in &r.failing {
                let _ = writeln!(text, "not unitary: tuple {t}");
            }
            text.push_str(if r.passed { "PASS\n" } else { "FAIL\n" });
            Ok(Output::new(&report, text, r.passed))
        }
        Machine::Dfa(d) => {
            let r = reversibility.check(&d);
            let report = dfa_check(&shown, &d, &r);
            let text = render_dfa_check(&report);
            Ok(Output::new(&report, text, r.passed()))
        }
        Machine::Wk(a) => {
            let report = WkCheck {
                file: shown.clone(),
                kind: crate::document::KIND_WK,
                machine: a.name().to_string(),
                passed: true,
                states: a.state_count(),
                rules: a.rules().len(),
            };
            let text = format!(
                "{shown}: {} (classical-wk, {} states, {} rules)\nPASS\n",
                report.machine, report.states, report.rules
            );
            Ok(Output::new(&report, text, true))
        }
    }
}

fn dfa_check(file: &str, d: &MultiHeadDfa, r: &ReversibilityReport) -> DfaCheck {
    DfaCheck {
        file: file.to_string(),
        kind: crate::document::KIND_DFA,
        machine: d.name().to_string(),
        mode: r.mode.describe(),
        passed: r.passed(),
        move_conflicts: r
            .move_conflicts
            .iter()
            .map(|c| MoveConflictLine {
                target: d.state_name(c.target).to_string(),
                first: d.render_transition(&c.first),
                second: d.render_transition(&c.second),
            })
            .collect(),
        predecessor_conflicts: r
            .predecessor_conflicts
            .iter()
            .map(|c| PredecessorLine {
                target: d.state_name(c.target).to_string(),
                transitions: c
                    .transitions
                    .iter()
                    .map(|t| d.render_transition(t))
                    .collect(),
                witness: c.witness.as_ref().map(|w| WitnessLine {
                    word: d.alphabet().render(&w.word),
                    state: d.state_name(w.configuration.state).to_string(),
                    positions: w.configuration.positions.clone(),
                }),
            })
            .collect(),
    }
}

fn render_dfa_check(r: &DfaCheck) -> String {
    let mut text = format!(
        "{}: {} (multihead-dfa), mode {}\n",
        r.file, r.machine, r.mode
    );
    for c in &r.move_conflicts {
        let _ = writeln!(
            text,
            "condition (1) violated at {}: {} and {} enter with different moves",
            c.target, c.first, c.second
        );
    }
    for c in &r.predecessor_conflicts {
        let _ = writeln!(
            text,
            "condition (2) violated at {}: {}",
            c.target,
            c.transitions.join(" | ")
        );
        if let Some(w) = &c.witness {
            let positions: Vec<String> = w.positions.iter().map(usize::to_string).collect();
            let _ = writeln!(
                text,
                "  witness: word {}, configuration ({}, [{}])",
                w.word,
                w.state,
                positions.join(",")
            );
        }
    }
    text.push_str(if r.passed { "PASS\n" } else { "FAIL\n" });
    text
}

// run

#[derive(Serialize)]
struct QuantumRunReport {
    machine: String,
    word: String,
    cutpoint: f64,
    step_budget: Option<usize>,
    mass_epsilon: f64,
    overrun: &'static str,
    runs: Vec<RunLine>,
    best_p_acc: f64,
    verdict: &'static str,
}

#[derive(Serialize)]
struct RunLine {
    lower: String,
    p_acc: f64,
    p_rej: f64,
    p_residual: f64,
    steps: usize,
    halt_reason: &'static str,
    conservation_error: f64,
}

impl RunLine {
    fn new(alphabet: &Alphabet, lower: &[wkqfa_core::model::Symbol], o: &RunOutcome) -> Self {
        RunLine {
            lower: alphabet.render(lower),
            p_acc: o.p_acc,
            p_rej: o.p_rej,
            p_residual: o.p_residual,
            steps: o.steps,
            halt_reason: o.halt_reason.as_str(),
            conservation_error: o.conservation_error,
        }
    }
}

#[derive(Serialize)]
struct ClassicalRunReport {
    machine: String,
    kind: &'static str,
    word: String,
    lowers: Vec<ClassicalLower>,
    steps: Option<usize>,
    halted: bool,
    verdict: &'static str,
}

#[derive(Serialize)]
struct ClassicalLower {
    lower: String,
    accepted: bool,
}

fn verdict(accept: bool) -> &'static str {
    if accept {
        "accept"
    } else {
        "reject"
    }
}

fn run_command(
    file: &Path,
    word: &str,
    lower: Option<&str>,
    params: RunParams,
    cutpoint: f64,
) -> Result<Output, CliError> {
    if !(0.0..=1.0).contains(&cutpoint) {
        return Err(CliError::Usage(format!(
            "the cutpoint must lie in [0, 1], got {cutpoint}"
        )));
    }
    match load(file)? {
        Machine::Dfa(d) => {
            if lower.is_some() {
                return Err(usage("--lower applies to Watson-Crick machines only"));
            }
            let w = parse_word(d.alphabet(), word)?;
            let r = run_1dfa_k(&d, &w).map_err(usage)?;
            let report = ClassicalRunReport {
                machine: d.name().to_string(),
                kind: crate::document::KIND_DFA,
                word: d.alphabet().render(&w),
                lowers: Vec::new(),
                steps: Some(r.trace.len() - 1),
                halted: r.verdict != DfaVerdict::NonHalting,
                verdict: verdict(r.accepted()),
            };
            let text = format!(
                "machine: {}\nword: {}\nsteps: {}\nhalted: {}\nverdict: {}\n",
                report.machine,
                report.word,
                r.trace.len() - 1,
                report.halted,
                report.verdict
            );
            Ok(Output::new(&report, text, true))
        }
        Machine::Wk(a) => wk_run(&a, word, lower),
        machine => {
            let m = quantum(machine, "run")?;
            let alphabet = m.alphabet();
            let w1 = parse_word(alphabet, word)?;
            let runs = match lower {
                Some(text) => {
                    let w2 = parse_word(alphabet, text)?;
                    let o = run(&m, &w1, &w2, params).map_err(usage)?;
                    vec![RunLine::new(alphabet, &w2, &o)]
                }
                None => acceptance_profile(&m, &w1, params, DEFAULT_COMPLEMENT_GUARD)
                    .map_err(usage)?
                    .entries
                    .iter()
                    .map(|e| RunLine::new(alphabet, &e.lower, &e.outcome))
                    .collect(),
            };
            let best_p_acc = runs.iter().map(|r| r.p_acc).fold(0.0, f64::max);
            let report = QuantumRunReport {
                machine: m.name().to_string(),
                word: alphabet.render(&w1),
                cutpoint,
                step_budget: params.step_budget,
                mass_epsilon: params.mass_epsilon,
                overrun: params.overrun.as_str(),
                best_p_acc,
                verdict: verdict(best_p_acc > cutpoint),
                runs,
            };
            let mut text = format!("machine: {}\nword: {}\n", report.machine, report.word);
            for r in &report.runs {
                let _ = writeln!(
                    text,
                    "lower {}: p_acc={} p_rej={} p_residual={} steps={} halt_reason={} conservation_error={:.1e}",
                    r.lower,
                    prob(r.p_acc),
                    prob(r.p_rej),
                    prob(r.p_residual),
                    r.steps,
                    r.halt_reason,
                    r.conservation_error
                );
            }
            if report.runs.is_empty() {
                text.push_str("no complementary lower strand\n");
            }
            let _ = writeln!(text, "best_p_acc: {}", prob(best_p_acc));
            let _ = writeln!(text, "cutpoint: {cutpoint}");
            let _ = writeln!(text, "verdict: {}", report.verdict);
            Ok(Output::new(&report, text, true))
        }
    }
}

fn wk_run(a: &ClassicalWkAutomaton, word: &str, lower: Option<&str>) -> Result<Output, CliError> {
    let alphabet = a.rho().alphabet();
    let w1 = parse_word(alphabet, word)?;
    let lowers = match lower {
        Some(text) => {
            let w2 = parse_word(alphabet, text)?;
            wkqfa_core::model::make_wk_tape(a.rho(), &w1, &w2).map_err(usage)?;
            vec![w2]
        }
        None => complement_strands(a.rho(), &w1, DEFAULT_COMPLEMENT_GUARD).map_err(usage)?,
    };
    let lowers: Vec<ClassicalLower> = lowers
        .iter()
        .map(|w2| ClassicalLower {
            lower: alphabet.render(w2),
            accepted: accepts_pair(a, &w1, w2),
        })
        .collect();
    let accepted = lowers.iter().any(|l| l.accepted);
    let report = ClassicalRunReport {
        machine: a.name().to_string(),
        kind: crate::document::KIND_WK,
        word: alphabet.render(&w1),
        lowers,
        steps: None,
        halted: true,
        verdict: verdict(accepted),
    };
    let mut text = format!("machine: {}\nword: {}\n", report.machine, report.word);
    for l in &report.lowers {
        let _ = writeln!(text, "lower {}: {}", l.lower, verdict(l.accepted));
    }
    let _ = writeln!(text, "verdict: {}", report.verdict);
    Ok(Output::new(&report, text, true))
}

// compare

#[derive(Serialize)]
struct CompareReport {
    machine: String,
    oracle: String,
    definition: String,
    max_len: usize,
    cutpoint: f64,
    words_tested: usize,
    passed: bool,
    disagreements: Vec<DisagreementLine>,
    max_residual: f64,
}

#[derive(Serialize)]
struct DisagreementLine {
    word: String,
    oracle_verdict: bool,
    best_p_acc: f64,
    max_residual: f64,
}

fn compare(
    file: &Path,
    oracle_name: &str,
    max_len: usize,
    cutpoint: f64,
    work_guard: usize,
) -> Result<Output, CliError> {
    let oracle = oracle_by_name(oracle_name).ok_or_else(|| {
        CliError::Usage(format!(
            "unknown oracle {oracle_name:?}; known oracles: {}",
            oracle_names().join(", ")
        ))
    })?;
    let report = match load(file)? {
        Machine::Dfa(d) => compare_dfa(&d, &oracle, max_len).map_err(usage)?,
        machine => {
            let m = quantum(machine, "compare")?;
            let params = SweepParams {
                work_guard,
                ..SweepParams::default()
            };
            exhaustive_compare(&m, &oracle, max_len, cutpoint, &params).map_err(usage)?
        }
    };
    let alphabet = &oracle.alphabet;
    let out = CompareReport {
        machine: report.machine.clone(),
        oracle: report.oracle.clone(),
        definition: oracle.definition.clone(),
        max_len,
        cutpoint: report.cutpoint,
        words_tested: report.words_tested,
        passed: report.passed(),
        disagreements: report
            .disagreements
            .iter()
            .map(|d| DisagreementLine {
                word: alphabet.render(&d.word),
                oracle_verdict: d.oracle_verdict,
                best_p_acc: d.best_p_acc,
                max_residual: d.max_residual,
            })
            .collect(),
        max_residual: report.max_residual,
    };
    let mut text = format!(
        "machine {} vs oracle {} ({})\nwords up to length {}: {} tested, cutpoint {}\n",
        out.machine, out.oracle, out.definition, max_len, out.words_tested, out.cutpoint
    );
    for d in &out.disagreements {
        let _ = writeln!(
            text,
            "disagreement on {}: oracle {}, best_p_acc {}, residual {:.1e}",
            d.word,
            verdict(d.oracle_verdict),
            prob(d.best_p_acc),
            d.max_residual
        );
    }
    let _ = writeln!(
        text,
        "{} disagreements, max residual {:.1e}",
        out.disagreements.len(),
        out.max_residual
    );
    text.push_str(if out.passed { "PASS\n" } else { "FAIL\n" });
    let passed = out.passed;
    Ok(Output::new(&out, text, passed))
}

// convert

#[derive(Serialize)]
struct ConvertReport {
    source: String,
    passed: bool,
    reversibility: DfaCheck,
    out: Option<String>,
    machine: Option<String>,
    states: Option<usize>,
}

fn convert(
    file: &Path,
    out: Option<&Path>,
    reversibility: &ReversibilityArgs,
) -> Result<Output, CliError> {
    let d = match load(file)? {
        Machine::Dfa(d) => d,
        other => {
            return Err(CliError::Usage(format!(
                "convert expects a multihead-dfa document, got {}",
                other.kind()
            )))
        }
    };
    let shown = file.display().to_string();
    let r = reversibility.check(&d);
    let check = dfa_check(&shown, &d, &r);
    if !r.passed() {
        let text = render_dfa_check(&check);
        let report = ConvertReport {
            source: shown,
            passed: false,
            reversibility: check,
            out: None,
            machine: None,
            states: None,
        };
        return Ok(Output::new(&report, text, false));
    }
    let m = reversible_to_quantum(&d, &r).map_err(usage)?;
    let document = to_canonical(&Document::from_quantum(&m));
    let Some(path) = out else {
        // The document itself is the output.
        return Ok(Output {
            text: document.clone(),
            json: serde_json::from_str(&document).expect("canonical documents are json"),
            passed: true,
        });
    };
    fs::write(path, &document).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    let report = ConvertReport {
        source: shown,
        passed: true,
        reversibility: check,
        out: Some(path.display().to_string()),
        machine: Some(m.name().to_string()),
        states: Some(m.state_count()),
    };
    let text = format!(
        "{} is reversible ({}); wrote {} with {} states to {}\n",
        report.source,
        r.mode.describe(),
        m.name(),
        m.state_count(),
        path.display()
    );
    Ok(Output::new(&report, text, true))
}

// complements

#[derive(Serialize)]
struct ComplementsReport {
    machine: String,
    word: String,
    count: usize,
    complements: Vec<String>,
}

fn complements(file: &Path, word: &str, guard: usize) -> Result<Output, CliError> {
    let (name, rho): (String, ComplementarityRelation) = match load(file)? {
        Machine::Quantum(draft) => (draft.name.clone(), draft.rho.clone()),
        Machine::Wk(a) => (a.name().to_string(), a.rho().clone()),
        Machine::Dfa(_) => {
            return Err(usage(
                "complements needs a document with a complementarity relation",
            ))
        }
    };
    let alphabet = rho.alphabet();
    let w1 = parse_word(alphabet, word)?;
    let lowers = complement_strands(&rho, &w1, guard).map_err(usage)?;
    let report = ComplementsReport {
        machine: name,
        word: alphabet.render(&w1),
        count: lowers.len(),
        complements: lowers.iter().map(|w| alphabet.render(w)).collect(),
    };
    let mut text = String::new();
    for c in &report.complements {
        text.push_str(c);
        text.push('\n');
    }
    Ok(Output::new(&report, text, true))
}
