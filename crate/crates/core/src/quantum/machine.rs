use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use crate::linalg::{ComplexMatrix, ZERO};
use crate::model::{Alphabet, ComplementarityRelation, ModelError, MoveVector, TapeSymbol};

use super::EngineError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StateKind {
    NonHalting,
    Accepting,
    Rejecting,
}

impl StateKind {
    pub fn is_halting(self) -> bool {
        self != StateKind::NonHalting
    }
}

/// Symbols under the upper heads followed by those under the lower heads.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymbolTuple {
    pub upper: Vec<TapeSymbol>,
    pub lower: Vec<TapeSymbol>,
}

impl SymbolTuple {
    pub fn new(upper: Vec<TapeSymbol>, lower: Vec<TapeSymbol>) -> Self {
        SymbolTuple { upper, lower }
    }

    pub fn from_names(
        alphabet: &Alphabet,
        upper: &[&str],
        lower: &[&str],
    ) -> Result<Self, ModelError> {
        let resolve = |names: &[&str]| {
            names
                .iter()
                .map(|n| {
                    alphabet
                        .tape_symbol(n)
                        .ok_or_else(|| ModelError::UnknownSymbol(n.to_string()))
                })
                .collect::<Result<Vec<_>, _>>()
        };
        Ok(SymbolTuple {
            upper: resolve(upper)?,
            lower: resolve(lower)?,
        })
    }

    /// `a,b|#` style rendering.
    pub fn render(&self, alphabet: &Alphabet) -> String {
        let join = |side: &[TapeSymbol]| {
            side.iter()
                .map(|s| alphabet.tape_name(*s))
                .collect::<Vec<_>>()
                .join(",")
        };
        format!("{}|{}", join(&self.upper), join(&self.lower))
    }
}

/// How the engine treats a symbol tuple with no stored operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum UnmentionedTuples {
    /// Every live state `q` moves to its own implicit reject sink, which has
    /// a stationary move vector and is measured at once.
    #[default]
    DefaultReject,
    /// Reading such a tuple is a configuration error.
    Error,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateDecl {
    pub name: String,
    pub kind: StateKind,
    pub moves: MoveVector,
}

/// Operator data for one tuple while a machine is being authored.
#[derive(Debug, Clone, PartialEq)]
pub enum OperatorEntry {
    /// A complete `|Q|`×`|Q|` matrix.
    Full(ComplexMatrix),
    /// Images of some source states only, keyed by state index; each vector
    /// has one amplitude per state. Needs completion before use.
    Columns(BTreeMap<usize, Vec<Complex64>>),
}

/// Mutable description of a machine, validated by [`Mwkqfa::new`] or
/// completed by [`crate::embed::complete_to_unitary`].
#[derive(Debug, Clone, PartialEq)]
pub struct MachineDraft {
    pub name: String,
    pub rho: ComplementarityRelation,
    pub upper_heads: usize,
    pub lower_heads: usize,
    pub states: Vec<StateDecl>,
    pub initial: usize,
    pub operators: BTreeMap<SymbolTuple, OperatorEntry>,
    pub unmentioned: UnmentionedTuples,
    pub metadata: BTreeMap<String, String>,
}

impl MachineDraft {
    pub fn new(
        name: impl Into<String>,
        rho: ComplementarityRelation,
        upper_heads: usize,
        lower_heads: usize,
    ) -> Self {
        MachineDraft {
            name: name.into(),
            rho,
            upper_heads,
            lower_heads,
            states: Vec::new(),
            initial: 0,
            operators: BTreeMap::new(),
            unmentioned: UnmentionedTuples::default(),
            metadata: BTreeMap::new(),
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.rho.alphabet()
    }

    /// Adds a state and returns its index. `moves` lists the upper heads
    /// then the lower heads, 0 or 1 each.
    pub fn add_state(&mut self, name: impl Into<String>, kind: StateKind, moves: &[u8]) -> usize {
        self.states.push(StateDecl {
            name: name.into(),
            kind,
            moves: MoveVector::from_digits(moves),
        });
        self.states.len() - 1
    }

    pub fn state_index(&self, name: &str) -> Option<usize> {
        self.states.iter().position(|s| s.name == name)
    }

    /// Convenience for tuples written with symbol names.
    pub fn tuple(&self, upper: &[&str], lower: &[&str]) -> Result<SymbolTuple, ModelError> {
        SymbolTuple::from_names(self.alphabet(), upper, lower)
    }

    pub fn set_operator(&mut self, tuple: SymbolTuple, matrix: ComplexMatrix) {
        self.operators.insert(tuple, OperatorEntry::Full(matrix));
    }

    /// Authors the image of one source state under one tuple.
    pub fn set_column(&mut self, tuple: SymbolTuple, source: usize, image: Vec<Complex64>) {
        let entry = self
            .operators
            .entry(tuple)
            .or_insert_with(|| OperatorEntry::Columns(BTreeMap::new()));
        match entry {
            OperatorEntry::Columns(columns) => {
                columns.insert(source, image);
            }
            OperatorEntry::Full(matrix) => {
                for (row, v) in image.into_iter().enumerate() {
                    matrix.set(row, source, v);
                }
            }
        }
    }

    pub fn build(self) -> Result<Mwkqfa, EngineError> {
        Mwkqfa::new(self)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Operator {
    pub(crate) matrix: ComplexMatrix,
    /// Nonzero entries of each column: `(target state, amplitude)`.
    pub(crate) images: Vec<Vec<(usize, Complex64)>>,
}

impl Operator {
    fn new(matrix: ComplexMatrix) -> Self {
        let images = (0..matrix.cols())
            .map(|c| {
                (0..matrix.rows())
                    .filter_map(|r| {
                        let v = matrix.get(r, c);
                        (v != ZERO).then_some((r, v))
                    })
                    .collect()
            })
            .collect();
        Operator { matrix, images }
    }
}

/// A validated multi-head Watson-Crick quantum finite automaton.
///
/// States carry a kind (accepting, rejecting or non-halting) and a move
/// vector `D(q)` applied to the heads whenever the machine enters `q`. Only
/// authored symbol tuples store an operator; see [`UnmentionedTuples`] for the
/// rest.
#[derive(Debug, Clone, PartialEq)]
pub struct Mwkqfa {
    name: String,
    rho: ComplementarityRelation,
    upper_heads: usize,
    lower_heads: usize,
    states: Vec<StateDecl>,
    initial: usize,
    operators: BTreeMap<SymbolTuple, Operator>,
    unmentioned: UnmentionedTuples,
    metadata: BTreeMap<String, String>,
}

impl Mwkqfa {
    pub fn new(draft: MachineDraft) -> Result<Self, EngineError> {
        let invalid = |msg: String| Err(EngineError::InvalidMachine(msg));
        let MachineDraft {
            name,
            rho,
            upper_heads,
            lower_heads,
            states,
            initial,
            operators,
            unmentioned,
            metadata,
        } = draft;
        if upper_heads == 0 || lower_heads == 0 {
            return invalid(format!(
                "both strands need at least one head, got {upper_heads}+{lower_heads}"
            ));
        }
        if states.is_empty() {
            return invalid("the state set is empty".into());
        }
        for (i, s) in states.iter().enumerate() {
            if states[..i].iter().any(|t| t.name == s.name) {
                return invalid(format!("state {:?} is declared twice", s.name));
            }
            if s.moves.len() != upper_heads + lower_heads {
                return invalid(format!(
                    "state {:?} has a move vector of length {}, expected {}",
                    s.name,
                    s.moves.len(),
                    upper_heads + lower_heads
                ));
            }
        }
        let Some(init) = states.get(initial) else {
            return invalid(format!("initial state index {initial} is out of range"));
        };
        if init.kind.is_halting() {
            return invalid(format!("initial state {:?} is a halting state", init.name));
        }
        let alphabet = rho.alphabet();
        let dim = states.len();
        let mut stored = BTreeMap::new();
        for (tuple, entry) in operators {
            let label = tuple.render(alphabet);
            if tuple.upper.len() != upper_heads || tuple.lower.len() != lower_heads {
                return invalid(format!("tuple {label} does not match the head counts"));
            }
            let foreign = tuple
                .upper
                .iter()
                .chain(&tuple.lower)
                .any(|s| matches!(s, TapeSymbol::Sym(x) if !alphabet.contains(*x)));
            if foreign {
                return invalid(format!("tuple {label} uses a symbol outside the alphabet"));
            }
            let matrix = match entry {
                OperatorEntry::Full(m) => m,
                OperatorEntry::Columns(_) => {
                    return Err(EngineError::PartialOperator { tuple: label });
                }
            };
            if matrix.rows() != dim || matrix.cols() != dim {
                return Err(EngineError::Structural {
                    tuple: label,
                    rows: matrix.rows(),
                    cols: matrix.cols(),
                    expected: dim,
                });
            }
            stored.insert(tuple, Operator::new(matrix));
        }
        Ok(Mwkqfa {
            name,
            rho,
            upper_heads,
            lower_heads,
            states,
            initial,
            operators: stored,
            unmentioned,
            metadata,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rho(&self) -> &ComplementarityRelation {
        &self.rho
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.rho.alphabet()
    }

    pub fn upper_heads(&self) -> usize {
        self.upper_heads
    }

    pub fn lower_heads(&self) -> usize {
        self.lower_heads
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[StateDecl] {
        &self.states
    }

    pub fn state_name(&self, q: usize) -> &str {
        &self.states[q].name
    }

    pub fn state_index(&self, name: &str) -> Option<usize> {
        self.states.iter().position(|s| s.name == name)
    }

    pub fn kind(&self, q: usize) -> StateKind {
        self.states[q].kind
    }

    pub fn moves(&self, q: usize) -> &MoveVector {
        &self.states[q].moves
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn unmentioned(&self) -> UnmentionedTuples {
        self.unmentioned
    }

    pub fn metadata(&self) -> &BTreeMap<String, String> {
        &self.metadata
    }

    /// True when ρ is the identity.
    pub fn is_strong(&self) -> bool {
        self.rho.is_identity()
    }

    pub fn operator(&self, tuple: &SymbolTuple) -> Option<&ComplexMatrix> {
        self.operators.get(tuple).map(|op| &op.matrix)
    }

    pub fn operators(&self) -> impl Iterator<Item = (&SymbolTuple, &ComplexMatrix)> {
        self.operators.iter().map(|(t, op)| (t, &op.matrix))
    }

    pub(crate) fn sparse_operator(&self, tuple: &SymbolTuple) -> Option<&Operator> {
        self.operators.get(tuple)
    }

    /// Back to an editable draft with every operator stored in full.
    pub fn to_draft(&self) -> MachineDraft {
        MachineDraft {
            name: self.name.clone(),
            rho: self.rho.clone(),
            upper_heads: self.upper_heads,
            lower_heads: self.lower_heads,
            states: self.states.clone(),
            initial: self.initial,
            operators: self
                .operators
                .iter()
                .map(|(t, op)| (t.clone(), OperatorEntry::Full(op.matrix.clone())))
                .collect(),
            unmentioned: self.unmentioned,
            metadata: self.metadata.clone(),
        }
    }
}

impl fmt::Display for Mwkqfa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} ({} states, {}+{} heads, {} operators)",
            self.name,
            self.states.len(),
            self.upper_heads,
            self.lower_heads,
            self.operators.len()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Alphabet;

    fn draft() -> MachineDraft {
        let rho = ComplementarityRelation::identity(Alphabet::new(["a"]).unwrap());
        let mut d = MachineDraft::new("t", rho, 1, 1);
        d.add_state("q0", StateKind::NonHalting, &[1, 1]);
        d.add_state("acc", StateKind::Accepting, &[0, 0]);
        d
    }

    #[test]
    fn wrong_sized_matrix_names_the_tuple() {
        let mut d = draft();
        let t = d.tuple(&["#"], &["#"]).unwrap();
        d.set_operator(t, ComplexMatrix::identity(3));
        match d.build() {
            Err(EngineError::Structural {
                tuple,
                rows,
                cols,
                expected,
            }) => {
                assert_eq!(tuple, "#|#");
                assert_eq!((rows, cols, expected), (3, 3, 2));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn partial_operators_need_completion() {
        let mut d = draft();
        let t = d.tuple(&["a"], &["a"]).unwrap();
        d.set_column(t, 0, vec![ZERO, crate::linalg::ONE]);
        assert!(matches!(
            d.build(),
            Err(EngineError::PartialOperator { .. })
        ));
    }

    #[test]
    fn move_vector_arity_is_checked() {
        let mut d = draft();
        d.add_state("bad", StateKind::NonHalting, &[1]);
        assert!(matches!(d.build(), Err(EngineError::InvalidMachine(_))));
    }

    #[test]
    fn halting_initial_state_is_rejected() {
        let mut d = draft();
        d.initial = 1;
        assert!(matches!(d.build(), Err(EngineError::InvalidMachine(_))));
    }

    #[test]
    fn head_counts_must_be_positive() {
        let rho = ComplementarityRelation::identity(Alphabet::new(["a"]).unwrap());
        let mut d = MachineDraft::new("t", rho, 1, 0);
        d.add_state("q0", StateKind::NonHalting, &[1]);
        assert!(matches!(d.build(), Err(EngineError::InvalidMachine(_))));
    }

    #[test]
    fn tuples_render_with_markers() {
        let d = draft();
        let t = d.tuple(&["$"], &["a"]).unwrap();
        assert_eq!(t.render(d.alphabet()), "$|a");
        assert!(d.tuple(&["z"], &["a"]).is_err());
    }
}
