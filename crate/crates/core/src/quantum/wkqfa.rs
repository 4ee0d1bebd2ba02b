//! The two-head Watson-Crick QFA: one head per strand, operators indexed by a
//! plain symbol pair. It is exactly the 1+1 head case of [`Mwkqfa`], and runs
//! on the same engine.

use std::collections::BTreeMap;

use crate::linalg::ComplexMatrix;
use crate::model::{ComplementarityRelation, MoveVector, Symbol, TapeSymbol};

use super::engine::{run, RunOutcome, RunParams};
use super::machine::{MachineDraft, Mwkqfa, StateDecl, StateKind, SymbolTuple, UnmentionedTuples};
use super::EngineError;

#[derive(Debug, Clone, PartialEq)]
pub struct Wkqfa {
    pub name: String,
    pub rho: ComplementarityRelation,
    pub states: Vec<(String, StateKind)>,
    pub initial: usize,
    /// `D(q)` as (upper move, lower move).
    pub moves: Vec<(bool, bool)>,
    /// `U_{σ,τ}` keyed by (upper symbol, lower symbol).
    pub operators: BTreeMap<(TapeSymbol, TapeSymbol), ComplexMatrix>,
}

impl Wkqfa {
    pub fn to_multi_head(&self) -> Result<Mwkqfa, EngineError> {
        if self.moves.len() != self.states.len() {
            return Err(EngineError::InvalidMachine(format!(
                "{} states but {} move pairs",
                self.states.len(),
                self.moves.len()
            )));
        }
        let mut draft = MachineDraft::new(self.name.clone(), self.rho.clone(), 1, 1);
        draft.states = self
            .states
            .iter()
            .zip(&self.moves)
            .map(|((name, kind), (du, dl))| StateDecl {
                name: name.clone(),
                kind: *kind,
                moves: MoveVector::new(vec![*du, *dl]),
            })
            .collect();
        draft.initial = self.initial;
        draft.unmentioned = UnmentionedTuples::DefaultReject;
        for ((sigma, tau), matrix) in &self.operators {
            draft.set_operator(SymbolTuple::new(vec![*sigma], vec![*tau]), matrix.clone());
        }
        Mwkqfa::new(draft)
    }

    /// Reads a 1+1 head machine as a two-head one.
    pub fn from_multi_head(m: &Mwkqfa) -> Result<Self, EngineError> {
        if m.upper_heads() != 1 || m.lower_heads() != 1 {
            return Err(EngineError::InvalidMachine(format!(
                "a two-head machine needs 1+1 heads, this one has {}+{}",
                m.upper_heads(),
                m.lower_heads()
            )));
        }
        Ok(Wkqfa {
            name: m.name().to_string(),
            rho: m.rho().clone(),
            states: m
                .states()
                .iter()
                .map(|s| (s.name.clone(), s.kind))
                .collect(),
            initial: m.initial(),
            moves: m
                .states()
                .iter()
                .map(|s| (s.moves.bits()[0], s.moves.bits()[1]))
                .collect(),
            operators: m
                .operators()
                .map(|(t, u)| ((t.upper[0], t.lower[0]), u.clone()))
                .collect(),
        })
    }

    pub fn run(
        &self,
        w1: &[Symbol],
        w2: &[Symbol],
        params: RunParams,
    ) -> Result<RunOutcome, EngineError> {
        run(&self.to_multi_head()?, w1, w2, params)
    }
}
