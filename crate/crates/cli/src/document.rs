//! The automaton document format.
//!
//! A document is a JSON object with `format_version` `"1"` and a `kind` of
//! `mwkqfa`, `multihead-dfa` or `classical-wk`. Complex numbers are written
//! as `[re, im]`. [`to_canonical`] gives the byte-exact form used by the
//! golden files: sorted keys, two-space indentation, arrays nested inside
//! arrays on one line.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use wkqfa_core::classical::{ClassicalWkAutomaton, MultiHeadDfa, Transition, WkRule};
use wkqfa_core::linalg::ComplexMatrix;
use wkqfa_core::model::{Alphabet, ComplementarityRelation, MoveVector, Symbol, TapeSymbol, Word};
use wkqfa_core::quantum::{
    MachineDraft, Mwkqfa, OperatorEntry, StateDecl, StateKind, SymbolTuple, UnmentionedTuples,
};

pub const FORMAT_VERSION: &str = "1";

pub const KIND_MWKQFA: &str = "mwkqfa";
pub const KIND_DFA: &str = "multihead-dfa";
pub const KIND_WK: &str = "classical-wk";

/// Diagnostic codes, one per class of document error.
pub mod codes {
    pub const SYNTAX: &str = "E001";
    pub const SCHEMA: &str = "E002";
    pub const VERSION: &str = "E003";
    pub const UNKNOWN_KIND: &str = "E004";
    pub const UNDECLARED_STATE: &str = "E005";
    pub const UNDECLARED_SYMBOL: &str = "E006";
    pub const MALFORMED_COMPLEX: &str = "E007";
    pub const MATRIX_SIZE: &str = "E008";
    pub const INVALID_MACHINE: &str = "E009";
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub code: &'static str,
    /// Field path such as `operators[1].matrix[0][2]`; empty for the root.
    pub path: String,
    pub message: String,
    /// Line and column for syntax errors.
    pub position: Option<(usize, usize)>,
}

impl Diagnostic {
    fn new(code: &'static str, path: impl Into<String>, message: impl Into<String>) -> Self {
        Diagnostic {
            code,
            path: path.into(),
            message: message.into(),
            position: None,
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "error[{}]", self.code)?;
        if let Some((line, column)) = self.position {
            write!(f, " at line {line}, column {column}")?;
        }
        if !self.path.is_empty() {
            write!(f, " at {}", self.path)?;
        }
        write!(f, ": {}", self.message)
    }
}

impl std::error::Error for Diagnostic {}

fn is_false(b: &bool) -> bool {
    !*b
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub format_version: String,
    pub kind: String,
    pub name: String,
    pub alphabet: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho: Option<Vec<(String, String)>>,
    pub heads: HeadsDoc,
    pub states: Vec<StateDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unmentioned_tuples: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub operators: Option<Vec<OperatorDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transitions: Option<Vec<TransitionDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rules: Option<Vec<RuleDoc>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub metadata: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HeadsDoc {
    pub upper: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lower: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateDoc {
    pub name: String,
    #[serde(default, skip_serializing_if = "is_false")]
    pub initial: bool,
    #[serde(default, skip_serializing_if = "is_false")]
    pub accept: bool,
    #[serde(default, skip_serializing_if = "is_false")]
    pub reject: bool,
    #[serde(default, rename = "final", skip_serializing_if = "is_false")]
    pub is_final: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub moves: Option<MovesDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MovesDoc {
    pub upper: Vec<u8>,
    pub lower: Vec<u8>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TupleDoc {
    pub upper: Vec<String>,
    pub lower: Vec<String>,
}

/// `matrix[i][j]` is the amplitude from state `j` to state `i`. `columns`
/// authors the images of some source states only.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorDoc {
    pub tuple: TupleDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<Value>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub columns: Option<BTreeMap<String, Vec<Value>>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransitionDoc {
    pub from: String,
    pub read: Vec<String>,
    pub to: String,
    pub moves: Vec<u8>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RuleDoc {
    pub from: String,
    pub upper: Vec<String>,
    pub lower: Vec<String>,
    pub to: String,
}

/// Parses and checks the shape of a document. Kind-specific validation
/// happens in [`Document::to_machine`].
pub fn parse_document(text: &str) -> Result<Document, Diagnostic> {
    let value: Value = serde_json::from_str(text).map_err(|e| Diagnostic {
        code: codes::SYNTAX,
        path: String::new(),
        message: e.to_string(),
        position: Some((e.line(), e.column())),
    })?;
    if let Some(version) = value.get("format_version") {
        if version != FORMAT_VERSION {
            return Err(Diagnostic::new(
                codes::VERSION,
                "format_version",
                format!("unsupported format version {version}, expected \"{FORMAT_VERSION}\""),
            ));
        }
    }
    if let Some(kind) = value.get("kind").and_then(Value::as_str) {
        if ![KIND_MWKQFA, KIND_DFA, KIND_WK].contains(&kind) {
            return Err(Diagnostic::new(
                codes::UNKNOWN_KIND,
                "kind",
                format!(
                    "unknown kind {kind:?}, expected one of {KIND_MWKQFA}, {KIND_DFA}, {KIND_WK}"
                ),
            ));
        }
    }
    serde_path_to_error::deserialize(value).map_err(|e| {
        let path = e.path().to_string();
        Diagnostic::new(
            codes::SCHEMA,
            if path == "." { String::new() } else { path },
            e.into_inner().to_string(),
        )
    })
}

/// Sorted keys, two-space indentation, and arrays whose parent is an array
/// written on a single line.
pub fn to_canonical(doc: &Document) -> String {
    let value = serde_json::to_value(doc).expect("documents serialize");
    let mut out = String::new();
    write_value(&mut out, &value, 0, false);
    out.push('\n');
    out
}

fn write_value(out: &mut String, v: &Value, indent: usize, inline: bool) {
    let pad = |n: usize| "  ".repeat(n);
    match v {
        Value::Array(items) if items.is_empty() => out.push_str("[]"),
        Value::Array(items) if inline || items.iter().all(|i| !i.is_object() && !i.is_array()) => {
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_value(out, item, indent, true);
            }
            out.push(']');
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, item) in items.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write_value(out, item, indent + 1, item.is_array());
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (k, item)) in map.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&serde_json::to_string(k).expect("string keys"));
                out.push_str(": ");
                write_value(out, item, indent + 1, false);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        scalar => out.push_str(&serde_json::to_string(scalar).expect("scalars serialize")),
    }
}

/// A machine described by a document. Quantum machines stay drafts until
/// [`crate::commands`] builds or completes them.
#[derive(Debug, Clone)]
pub enum Machine {
    Quantum(MachineDraft),
    Dfa(MultiHeadDfa),
    Wk(ClassicalWkAutomaton),
}

impl Machine {
    pub fn kind(&self) -> &'static str {
        match self {
            Machine::Quantum(_) => KIND_MWKQFA,
            Machine::Dfa(_) => KIND_DFA,
            Machine::Wk(_) => KIND_WK,
        }
    }
}

fn complex_value(z: Complex64) -> Value {
    // Adding 0.0 turns -0.0 into 0.0.
    serde_json::json!([z.re + 0.0, z.im + 0.0])
}

fn parse_complex(v: &Value, path: &str) -> Result<Complex64, Diagnostic> {
    let bad = || {
        Diagnostic::new(
            codes::MALFORMED_COMPLEX,
            path,
            format!("expected a complex entry [re, im] of finite numbers, got {v}"),
        )
    };
    let items = v.as_array().ok_or_else(bad)?;
    if items.len() != 2 {
        return Err(bad());
    }
    let re = items[0]
        .as_f64()
        .filter(|x| x.is_finite())
        .ok_or_else(bad)?;
    let im = items[1]
        .as_f64()
        .filter(|x| x.is_finite())
        .ok_or_else(bad)?;
    Ok(Complex64::new(re, im))
}

fn moves_digits(bits: &[bool]) -> Vec<u8> {
    bits.iter().map(|b| u8::from(*b)).collect()
}

fn parse_moves(digits: &[u8], expected: usize, path: &str) -> Result<MoveVector, Diagnostic> {
    if digits.len() != expected {
        return Err(Diagnostic::new(
            codes::INVALID_MACHINE,
            path,
            format!("expected {expected} move entries, got {}", digits.len()),
        ));
    }
    if let Some(d) = digits.iter().find(|d| **d > 1) {
        return Err(Diagnostic::new(
            codes::INVALID_MACHINE,
            path,
            format!("moves are 0 or 1, got {d}"),
        ));
    }
    Ok(MoveVector::from_digits(digits))
}

fn tape_names(alphabet: &Alphabet, symbols: &[TapeSymbol]) -> Vec<String> {
    symbols
        .iter()
        .map(|s| alphabet.tape_name(*s).to_string())
        .collect()
}

fn word_names(alphabet: &Alphabet, word: &[Symbol]) -> Vec<String> {
    word.iter().map(|s| alphabet.name(*s).to_string()).collect()
}

struct Resolver<'a> {
    alphabet: &'a Alphabet,
    states: BTreeMap<&'a str, usize>,
}

impl Resolver<'_> {
    fn state(&self, name: &str, path: &str) -> Result<usize, Diagnostic> {
        self.states.get(name).copied().ok_or_else(|| {
            Diagnostic::new(
                codes::UNDECLARED_STATE,
                path,
                format!("state {name:?} is not declared"),
            )
        })
    }

    fn tape_symbols(&self, names: &[String], path: &str) -> Result<Vec<TapeSymbol>, Diagnostic> {
        names
            .iter()
            .enumerate()
            .map(|(i, n)| {
                self.alphabet.tape_symbol(n).ok_or_else(|| {
                    Diagnostic::new(
                        codes::UNDECLARED_SYMBOL,
                        format!("{path}[{i}]"),
                        format!("symbol {n:?} is not declared"),
                    )
                })
            })
            .collect()
    }

    fn word(&self, names: &[String], path: &str) -> Result<Word, Diagnostic> {
        names
            .iter()
            .enumerate()
            .map(|(i, n)| {
                self.alphabet.symbol(n).ok_or_else(|| {
                    Diagnostic::new(
                        codes::UNDECLARED_SYMBOL,
                        format!("{path}[{i}]"),
                        format!("symbol {n:?} is not an alphabet symbol"),
                    )
                })
            })
            .collect()
    }
}

impl Document {
    fn alphabet(&self) -> Result<Alphabet, Diagnostic> {
        Alphabet::new(self.alphabet.iter().cloned())
            .map_err(|e| Diagnostic::new(codes::INVALID_MACHINE, "alphabet", e.to_string()))
    }

    fn resolver<'a>(&'a self, alphabet: &'a Alphabet) -> Result<Resolver<'a>, Diagnostic> {
        let mut states = BTreeMap::new();
        for (i, s) in self.states.iter().enumerate() {
            if states.insert(s.name.as_str(), i).is_some() {
                return Err(Diagnostic::new(
                    codes::INVALID_MACHINE,
                    format!("states[{i}].name"),
                    format!("state {:?} is declared twice", s.name),
                ));
            }
        }
        Ok(Resolver { alphabet, states })
    }

    fn rho(&self, alphabet: &Alphabet) -> Result<ComplementarityRelation, Diagnostic> {
        let pairs = self.rho.as_ref().ok_or_else(|| {
            Diagnostic::new(
                codes::SCHEMA,
                "rho",
                format!("a {} document needs a rho field", self.kind),
            )
        })?;
        let mut resolved = Vec::with_capacity(pairs.len());
        for (i, (a, b)) in pairs.iter().enumerate() {
            let get = |name: &str, j: usize| {
                alphabet.symbol(name).ok_or_else(|| {
                    Diagnostic::new(
                        codes::UNDECLARED_SYMBOL,
                        format!("rho[{i}][{j}]"),
                        format!("symbol {name:?} is not declared"),
                    )
                })
            };
            resolved.push((get(a, 0)?, get(b, 1)?));
        }
        ComplementarityRelation::new(alphabet.clone(), resolved)
            .map_err(|e| Diagnostic::new(codes::INVALID_MACHINE, "rho", e.to_string()))
    }

    /// Flags other than `allowed` are rejected; exactly one state is initial.
    fn check_flags(&self, allowed: &[&str]) -> Result<usize, Diagnostic> {
        let mut initial = None;
        for (i, s) in self.states.iter().enumerate() {
            let set = [
                ("accept", s.accept),
                ("reject", s.reject),
                ("final", s.is_final),
            ];
            for (flag, on) in set {
                if on && !allowed.contains(&flag) {
                    return Err(Diagnostic::new(
                        codes::INVALID_MACHINE,
                        format!("states[{i}].{flag}"),
                        format!("flag {flag} is not used by {} documents", self.kind),
                    ));
                }
            }
            if s.initial {
                if initial.is_some() {
                    return Err(Diagnostic::new(
                        codes::INVALID_MACHINE,
                        format!("states[{i}].initial"),
                        "more than one state is marked initial",
                    ));
                }
                initial = Some(i);
            }
        }
        initial.ok_or_else(|| {
            Diagnostic::new(
                codes::INVALID_MACHINE,
                "states",
                "no state is marked initial",
            )
        })
    }

    fn forbid(&self, present: bool, field: &str) -> Result<(), Diagnostic> {
        if present {
            return Err(Diagnostic::new(
                codes::SCHEMA,
                field,
                format!("field {field} is not used by {} documents", self.kind),
            ));
        }
        Ok(())
    }

    pub fn to_machine(&self) -> Result<Machine, Diagnostic> {
        match self.kind.as_str() {
            KIND_MWKQFA => self.to_quantum().map(Machine::Quantum),
            KIND_DFA => self.to_dfa().map(Machine::Dfa),
            KIND_WK => self.to_wk().map(Machine::Wk),
            other => Err(Diagnostic::new(
                codes::UNKNOWN_KIND,
                "kind",
                format!("unknown kind {other:?}"),
            )),
        }
    }

    fn to_quantum(&self) -> Result<MachineDraft, Diagnostic> {
        self.forbid(self.transitions.is_some(), "transitions")?;
        self.forbid(self.rules.is_some(), "rules")?;
        let alphabet = self.alphabet()?;
        let rho = self.rho(&alphabet)?;
        let r = self.resolver(&alphabet)?;
        let initial = self.check_flags(&["accept", "reject"])?;
        let k1 = self.heads.upper;
        let k2 = self.heads.lower.ok_or_else(|| {
            Diagnostic::new(
                codes::SCHEMA,
                "heads.lower",
                "an mwkqfa document needs heads.lower",
            )
        })?;
        let mut draft = MachineDraft::new(self.name.clone(), rho, k1, k2);
        draft.initial = initial;
        draft.metadata = self.metadata.clone();
        draft.unmentioned = match self.unmentioned_tuples.as_deref() {
            None | Some("default-reject") => UnmentionedTuples::DefaultReject,
            Some("error") => UnmentionedTuples::Error,
            Some(other) => {
                return Err(Diagnostic::new(
                    codes::SCHEMA,
                    "unmentioned_tuples",
                    format!("expected default-reject or error, got {other:?}"),
                ))
            }
        };
        for (i, s) in self.states.iter().enumerate() {
            let kind = match (s.accept, s.reject) {
                (true, true) => {
                    return Err(Diagnostic::new(
                        codes::INVALID_MACHINE,
                        format!("states[{i}]"),
                        "a state cannot both accept and reject",
                    ))
                }
                (true, false) => StateKind::Accepting,
                (false, true) => StateKind::Rejecting,
                (false, false) => StateKind::NonHalting,
            };
            let path = format!("states[{i}].moves");
            let moves = s.moves.as_ref().ok_or_else(|| {
                Diagnostic::new(codes::SCHEMA, &path, "mwkqfa states need a moves field")
            })?;
            let upper = parse_moves(&moves.upper, k1, &format!("{path}.upper"))?;
            let lower = parse_moves(&moves.lower, k2, &format!("{path}.lower"))?;
            draft.states.push(StateDecl {
                name: s.name.clone(),
                kind,
                moves: upper.join(&lower),
            });
        }
        let n = self.states.len();
        let mut seen = BTreeSet::new();
        for (i, op) in self.operators.iter().flatten().enumerate() {
            let path = format!("operators[{i}]");
            let upper = r.tape_symbols(&op.tuple.upper, &format!("{path}.tuple.upper"))?;
            let lower = r.tape_symbols(&op.tuple.lower, &format!("{path}.tuple.lower"))?;
            if upper.len() != k1 || lower.len() != k2 {
                return Err(Diagnostic::new(
                    codes::INVALID_MACHINE,
                    format!("{path}.tuple"),
                    format!("a tuple needs {k1} upper and {k2} lower symbols"),
                ));
            }
            let tuple = SymbolTuple::new(upper, lower);
            if !seen.insert(tuple.clone()) {
                return Err(Diagnostic::new(
                    codes::INVALID_MACHINE,
                    format!("{path}.tuple"),
                    format!("tuple {} has two operators", tuple.render(&alphabet)),
                ));
            }
            let entry = match (&op.matrix, &op.columns) {
                (Some(rows), None) => {
                    if rows.len() != n || rows.iter().any(|row| row.len() != n) {
                        let cols = rows.first().map_or(0, Vec::len);
                        return Err(Diagnostic::new(
                            codes::MATRIX_SIZE,
                            format!("{path}.matrix"),
                            format!("expected a {n}x{n} matrix, got {}x{cols}", rows.len()),
                        ));
                    }
                    let mut m = ComplexMatrix::zeros(n, n);
                    for (a, row) in rows.iter().enumerate() {
                        for (b, v) in row.iter().enumerate() {
                            m.set(a, b, parse_complex(v, &format!("{path}.matrix[{a}][{b}]"))?);
                        }
                    }
                    OperatorEntry::Full(m)
                }
                (None, Some(columns)) => {
                    let mut out = BTreeMap::new();
                    for (name, image) in columns {
                        let cpath = format!("{path}.columns.{name}");
                        let q = r.state(name, &cpath)?;
                        if image.len() != n {
                            return Err(Diagnostic::new(
                                codes::MATRIX_SIZE,
                                &cpath,
                                format!("expected {n} entries, got {}", image.len()),
                            ));
                        }
                        let v = image
                            .iter()
                            .enumerate()
                            .map(|(j, z)| parse_complex(z, &format!("{cpath}[{j}]")))
                            .collect::<Result<Vec<_>, _>>()?;
                        out.insert(q, v);
                    }
                    OperatorEntry::Columns(out)
                }
                _ => {
                    return Err(Diagnostic::new(
                        codes::SCHEMA,
                        path,
                        "an operator needs exactly one of matrix or columns",
                    ))
                }
            };
            draft.operators.insert(tuple, entry);
        }
        Ok(draft)
    }

    fn to_dfa(&self) -> Result<MultiHeadDfa, Diagnostic> {
        self.forbid(self.rho.is_some(), "rho")?;
        self.forbid(self.heads.lower.is_some(), "heads.lower")?;
        self.forbid(self.operators.is_some(), "operators")?;
        self.forbid(self.unmentioned_tuples.is_some(), "unmentioned_tuples")?;
        self.forbid(self.rules.is_some(), "rules")?;
        let alphabet = self.alphabet()?;
        let r = self.resolver(&alphabet)?;
        let initial = self.check_flags(&["accept"])?;
        let k = self.heads.upper;
        for (i, s) in self.states.iter().enumerate() {
            self.forbid(s.moves.is_some(), &format!("states[{i}].moves"))?;
        }
        let mut transitions = Vec::new();
        for (i, t) in self.transitions.iter().flatten().enumerate() {
            let path = format!("transitions[{i}]");
            let read = r.tape_symbols(&t.read, &format!("{path}.read"))?;
            if read.len() != k {
                return Err(Diagnostic::new(
                    codes::INVALID_MACHINE,
                    format!("{path}.read"),
                    format!("expected {k} symbols, got {}", read.len()),
                ));
            }
            transitions.push(Transition {
                from: r.state(&t.from, &format!("{path}.from"))?,
                read,
                to: r.state(&t.to, &format!("{path}.to"))?,
                moves: parse_moves(&t.moves, k, &format!("{path}.moves"))?,
            });
        }
        let states = self
            .states
            .iter()
            .map(|s| (s.name.clone(), s.accept))
            .collect();
        let _ = &self.metadata;
        MultiHeadDfa::new(self.name.clone(), alphabet, k, states, initial, transitions)
            .map_err(|e| Diagnostic::new(codes::INVALID_MACHINE, "transitions", e.to_string()))
    }

    fn to_wk(&self) -> Result<ClassicalWkAutomaton, Diagnostic> {
        self.forbid(self.operators.is_some(), "operators")?;
        self.forbid(self.unmentioned_tuples.is_some(), "unmentioned_tuples")?;
        self.forbid(self.transitions.is_some(), "transitions")?;
        let alphabet = self.alphabet()?;
        let rho = self.rho(&alphabet)?;
        let r = self.resolver(&alphabet)?;
        let initial = self.check_flags(&["final"])?;
        if self.heads.upper != 1 || self.heads.lower != Some(1) {
            return Err(Diagnostic::new(
                codes::INVALID_MACHINE,
                "heads",
                "a classical-wk document has one head per strand",
            ));
        }
        for (i, s) in self.states.iter().enumerate() {
            self.forbid(s.moves.is_some(), &format!("states[{i}].moves"))?;
        }
        let mut rules = Vec::new();
        for (i, rule) in self.rules.iter().flatten().enumerate() {
            let path = format!("rules[{i}]");
            rules.push(WkRule {
                from: r.state(&rule.from, &format!("{path}.from"))?,
                upper: r.word(&rule.upper, &format!("{path}.upper"))?,
                lower: r.word(&rule.lower, &format!("{path}.lower"))?,
                to: r.state(&rule.to, &format!("{path}.to"))?,
            });
        }
        let states = self
            .states
            .iter()
            .map(|s| (s.name.clone(), s.is_final))
            .collect();
        ClassicalWkAutomaton::new(self.name.clone(), rho, states, initial, rules)
            .map_err(|e| Diagnostic::new(codes::INVALID_MACHINE, "rules", e.to_string()))
    }

    fn skeleton(kind: &str, name: &str, alphabet: &Alphabet) -> Document {
        Document {
            format_version: FORMAT_VERSION.to_string(),
            kind: kind.to_string(),
            name: name.to_string(),
            alphabet: alphabet.names().to_vec(),
            rho: None,
            heads: HeadsDoc {
                upper: 1,
                lower: None,
            },
            states: Vec::new(),
            unmentioned_tuples: None,
            operators: None,
            transitions: None,
            rules: None,
            metadata: BTreeMap::new(),
        }
    }

    fn rho_pairs(rho: &ComplementarityRelation) -> Vec<(String, String)> {
        let a = rho.alphabet();
        rho.pairs()
            .map(|(x, y)| (a.name(x).to_string(), a.name(y).to_string()))
            .collect()
    }

    pub fn from_quantum(m: &Mwkqfa) -> Document {
        let alphabet = m.alphabet();
        let mut doc = Self::skeleton(KIND_MWKQFA, m.name(), alphabet);
        doc.rho = Some(Self::rho_pairs(m.rho()));
        doc.heads = HeadsDoc {
            upper: m.upper_heads(),
            lower: Some(m.lower_heads()),
        };
        let k1 = m.upper_heads();
        doc.states = m
            .states()
            .iter()
            .enumerate()
            .map(|(q, s)| StateDoc {
                name: s.name.clone(),
                initial: q == m.initial(),
                accept: s.kind == StateKind::Accepting,
                reject: s.kind == StateKind::Rejecting,
                is_final: false,
                moves: Some(MovesDoc {
                    upper: moves_digits(&s.moves.bits()[..k1]),
                    lower: moves_digits(&s.moves.bits()[k1..]),
                }),
            })
            .collect();
        doc.unmentioned_tuples = Some(
            match m.unmentioned() {
                UnmentionedTuples::DefaultReject => "default-reject",
                UnmentionedTuples::Error => "error",
            }
            .to_string(),
        );
        doc.operators = Some(
            m.operators()
                .map(|(t, u)| OperatorDoc {
                    tuple: TupleDoc {
                        upper: tape_names(alphabet, &t.upper),
                        lower: tape_names(alphabet, &t.lower),
                    },
                    matrix: Some(
                        u.to_rows()
                            .into_iter()
                            .map(|row| row.into_iter().map(complex_value).collect())
                            .collect(),
                    ),
                    columns: None,
                })
                .collect(),
        );
        doc.metadata = m.metadata().clone();
        doc
    }

    pub fn from_dfa(d: &MultiHeadDfa) -> Document {
        let alphabet = d.alphabet();
        let mut doc = Self::skeleton(KIND_DFA, d.name(), alphabet);
        doc.heads.upper = d.heads();
        doc.states = (0..d.state_count())
            .map(|q| StateDoc {
                name: d.state_name(q).to_string(),
                initial: q == d.initial(),
                accept: d.is_accepting(q),
                reject: false,
                is_final: false,
                moves: None,
            })
            .collect();
        doc.transitions = Some(
            d.transitions()
                .map(|t| TransitionDoc {
                    from: d.state_name(t.from).to_string(),
                    read: tape_names(alphabet, &t.read),
                    to: d.state_name(t.to).to_string(),
                    moves: moves_digits(t.moves.bits()),
                })
                .collect(),
        );
        doc
    }

    pub fn from_wk(a: &ClassicalWkAutomaton) -> Document {
        let alphabet = a.rho().alphabet();
        let mut doc = Self::skeleton(KIND_WK, a.name(), alphabet);
        doc.rho = Some(Self::rho_pairs(a.rho()));
        doc.heads.lower = Some(1);
        doc.states = (0..a.state_count())
            .map(|q| StateDoc {
                name: a.state_name(q).to_string(),
                initial: q == a.initial(),
                accept: false,
                reject: false,
                is_final: a.is_final(q),
                moves: None,
            })
            .collect();
        doc.rules = Some(
            a.rules()
                .iter()
                .map(|r| RuleDoc {
                    from: a.state_name(r.from).to_string(),
                    upper: word_names(alphabet, &r.upper),
                    lower: word_names(alphabet, &r.lower),
                    to: a.state_name(r.to).to_string(),
                })
                .collect(),
        );
        doc
    }
}
