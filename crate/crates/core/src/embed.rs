//! Default-reject completion of operator tables, and the embedding of
//! reversible multi-head DFAs into strongly multi-head quantum machines.

use std::collections::{BTreeMap, BTreeSet};

use num_complex::Complex64;
use thiserror::Error;

use crate::classical::{MultiHeadDfa, ReversibilityMode, ReversibilityReport};
use crate::linalg::{inner, norm_sqr, orthonormal_completion, ComplexMatrix, ONE, ZERO};
use crate::model::{ComplementarityRelation, ModelError, MoveVector, TapeSymbol};
use crate::quantum::{
    EngineError, MachineDraft, Mwkqfa, OperatorEntry, StateDecl, StateKind, SymbolTuple,
};

/// Tolerance on the orthonormality of authored columns.
pub const COMPLETION_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EmbedError {
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("tuple {tuple}: authored images of {first} and {second} are not orthonormal")]
    NotOrthonormal {
        tuple: String,
        first: String,
        second: String,
    },
    #[error("tuple {tuple}: the image of {state} has {len} entries, expected {expected}")]
    ColumnLength {
        tuple: String,
        state: String,
        len: usize,
        expected: usize,
    },
    #[error("tuple {tuple}: column source index {index} is out of range")]
    UnknownSource { tuple: String, index: usize },
    #[error("tuple {tuple}: the authored columns span too little to complete")]
    Degenerate { tuple: String },
    #[error("the machine is not reversible: {0}")]
    NotReversible(String),
    #[error("tuple {tuple}: {first} and {second} both map to {target}")]
    Collision {
        tuple: String,
        first: String,
        second: String,
        target: String,
    },
}

fn fresh_name(taken: &BTreeSet<String>, base: String) -> String {
    let mut name = base;
    while taken.contains(&name) {
        name.push('~');
    }
    name
}

/// Completes every partially authored tuple of `draft` and builds the
/// machine.
///
/// A non-halting state `q` with no authored image under some partial tuple is
/// sent to a reject sink `rej~q` with a stationary move vector; one sink per
/// state is shared by all tuples. The remaining columns (halting states and
/// the sinks themselves) are filled by Gram-Schmidt over the standard basis,
/// so permutation tables stay permutations. Fully authored matrices are
/// extended by the identity on the new sinks. Tuples with no entry at all are
/// left to the machine's [`crate::quantum::UnmentionedTuples`] policy.
pub fn complete_to_unitary(mut draft: MachineDraft) -> Result<Mwkqfa, EmbedError> {
    let dim = draft.states.len();
    let alphabet = draft.alphabet().clone();

    let mut sink_for: BTreeMap<usize, usize> = BTreeMap::new();
    for entry in draft.operators.values() {
        if let OperatorEntry::Columns(columns) = entry {
            for q in 0..dim {
                if !draft.states[q].kind.is_halting() && !columns.contains_key(&q) {
                    sink_for.entry(q).or_insert(0);
                }
            }
        }
    }
    let mut taken: BTreeSet<String> = draft.states.iter().map(|s| s.name.clone()).collect();
    let moves = draft.upper_heads + draft.lower_heads;
    for (q, sink) in sink_for.iter_mut() {
        let name = fresh_name(&taken, format!("rej~{}", draft.states[*q].name));
        taken.insert(name.clone());
        *sink = draft.states.len();
        draft.states.push(StateDecl {
            name,
            kind: StateKind::Rejecting,
            moves: MoveVector::zeros(moves),
        });
    }
    let full_dim = draft.states.len();

    let operators = std::mem::take(&mut draft.operators);
    for (tuple, entry) in operators {
        let label = tuple.render(&alphabet);
        let matrix = match entry {
            OperatorEntry::Full(m) if m.rows() == dim && m.cols() == dim => {
                m.extended_with_identity(full_dim)
            }
            // Leave size errors to the machine validation.
            OperatorEntry::Full(m) => m,
            OperatorEntry::Columns(columns) => {
                complete_columns(&draft, &label, dim, full_dim, &columns, &sink_for)?
            }
        };
        draft.operators.insert(tuple, OperatorEntry::Full(matrix));
    }
    Ok(Mwkqfa::new(draft)?)
}

fn complete_columns(
    draft: &MachineDraft,
    label: &str,
    dim: usize,
    full_dim: usize,
    columns: &BTreeMap<usize, Vec<Complex64>>,
    sink_for: &BTreeMap<usize, usize>,
) -> Result<ComplexMatrix, EmbedError> {
    let state = |q: usize| draft.states[q].name.clone();
    let mut assigned: Vec<Option<Vec<Complex64>>> = vec![None; full_dim];
    for (&q, image) in columns {
        if q >= dim {
            return Err(EmbedError::UnknownSource {
                tuple: label.to_string(),
                index: q,
            });
        }
        if image.len() != dim {
            return Err(EmbedError::ColumnLength {
                tuple: label.to_string(),
                state: state(q),
                len: image.len(),
                expected: dim,
            });
        }
        let mut v = image.clone();
        v.resize(full_dim, ZERO);
        assigned[q] = Some(v);
    }

    let authored: Vec<usize> = columns.keys().copied().collect();
    for (i, &a) in authored.iter().enumerate() {
        let va = assigned[a].as_ref().unwrap();
        if !((norm_sqr(va) - 1.0).abs() <= COMPLETION_TOLERANCE) {
            return Err(EmbedError::NotOrthonormal {
                tuple: label.to_string(),
                first: state(a),
                second: state(a),
            });
        }
        for &b in &authored[i + 1..] {
            let vb = assigned[b].as_ref().unwrap();
            if !(inner(va, vb).norm() <= COMPLETION_TOLERANCE) {
                return Err(EmbedError::NotOrthonormal {
                    tuple: label.to_string(),
                    first: state(a),
                    second: state(b),
                });
            }
        }
    }

    for q in 0..dim {
        if assigned[q].is_none() && !draft.states[q].kind.is_halting() {
            let mut v = vec![ZERO; full_dim];
            v[sink_for[&q]] = ONE;
            assigned[q] = Some(v);
        }
    }

    let existing: Vec<Vec<Complex64>> = assigned.iter().flatten().cloned().collect();
    let free: Vec<usize> = (0..full_dim).filter(|q| assigned[*q].is_none()).collect();
    let fill = orthonormal_completion(full_dim, &existing, free.len());
    if fill.len() < free.len() {
        return Err(EmbedError::Degenerate {
            tuple: label.to_string(),
        });
    }
    for (q, v) in free.into_iter().zip(fill) {
        assigned[q] = Some(v);
    }
    let cols: Vec<Vec<Complex64>> = assigned.into_iter().map(Option::unwrap).collect();
    Ok(ComplexMatrix::from_columns(&cols))
}

/// Embeds a reversible k-head DFA into a strongly (k,1)-head quantum machine.
///
/// Each transition `δ(q,t) = (q',d)` becomes amplitude 1 from `q` to `q'`
/// under every tuple `(t | x)`, and `D(q') = (d | 0)`; the lower head never
/// moves. A final state with no transition on `t` goes to its accept sink
/// `acc~q`; any other state with no transition gets the default reject sink.
/// Bounded-mode evidence is accepted and noted in the metadata.
pub fn reversible_to_quantum(
    a: &MultiHeadDfa,
    evidence: &ReversibilityReport,
) -> Result<Mwkqfa, EmbedError> {
    if !evidence.passed() {
        return Err(EmbedError::NotReversible(format!(
            "{} move-vector conflicts and {} predecessor conflicts",
            evidence.move_conflicts.len(),
            evidence.predecessor_conflicts.len()
        )));
    }
    let k = a.heads();
    let alphabet = a.alphabet().clone();
    let rho = ComplementarityRelation::identity(alphabet.clone());
    let mut draft = MachineDraft::new(a.name(), rho, k, 1);

    let mut moves: Vec<Option<MoveVector>> = vec![None; a.state_count()];
    for t in a.transitions() {
        let d = t.moves.join(&MoveVector::zeros(1));
        match &moves[t.to] {
            Some(existing) if *existing != d => {
                return Err(EmbedError::NotReversible(format!(
                    "transitions into {} use different move vectors",
                    a.state_name(t.to)
                )));
            }
            _ => moves[t.to] = Some(d),
        }
    }
    for (q, d) in moves.into_iter().enumerate() {
        draft.states.push(StateDecl {
            name: a.state_name(q).to_string(),
            kind: StateKind::NonHalting,
            moves: d.unwrap_or_else(|| MoveVector::zeros(k + 1)),
        });
    }
    draft.initial = a.initial();

    let gamma = alphabet.tape_symbols();
    let upper_tuples = tuples(&gamma, k);
    let mut taken: BTreeSet<String> = draft.states.iter().map(|s| s.name.clone()).collect();
    let mut accept_sink: BTreeMap<usize, usize> = BTreeMap::new();
    let mut plans: Vec<(Vec<TapeSymbol>, Vec<(usize, usize)>)> = Vec::new();
    for upper in upper_tuples {
        let mut edges = Vec::new();
        for q in 0..a.state_count() {
            if let Some(t) = a.transition(q, &upper) {
                edges.push((q, t.to));
            } else if a.is_accepting(q) {
                let sink = *accept_sink.entry(q).or_insert_with(|| {
                    let name = fresh_name(&taken, format!("acc~{}", a.state_name(q)));
                    taken.insert(name.clone());
                    draft.states.push(StateDecl {
                        name,
                        kind: StateKind::Accepting,
                        moves: MoveVector::zeros(k + 1),
                    });
                    draft.states.len() - 1
                });
                edges.push((q, sink));
            }
        }
        if !edges.is_empty() {
            plans.push((upper, edges));
        }
    }

    let dim = draft.states.len();
    for (upper, edges) in plans {
        let mut by_target: BTreeMap<usize, usize> = BTreeMap::new();
        for &(q, target) in &edges {
            if let Some(&other) = by_target.get(&target) {
                let tuple = SymbolTuple::new(upper.clone(), vec![TapeSymbol::Left]);
                return Err(EmbedError::Collision {
                    tuple: tuple.render(&alphabet),
                    first: draft.states[other].name.clone(),
                    second: draft.states[q].name.clone(),
                    target: draft.states[target].name.clone(),
                });
            }
            by_target.insert(target, q);
        }
        for lower in &gamma {
            let tuple = SymbolTuple::new(upper.clone(), vec![*lower]);
            for &(q, target) in &edges {
                let mut image = vec![ZERO; dim];
                image[target] = ONE;
                draft.set_column(tuple.clone(), q, image);
            }
        }
    }

    draft.metadata.insert("source".into(), a.name().to_string());
    draft
        .metadata
        .insert("reversibility".into(), evidence.mode.describe());
    if let ReversibilityMode::Bounded { .. } = evidence.mode {
        draft.metadata.insert(
            "reversibility-caveat".into(),
            "condition (2) was only checked on bounded words".into(),
        );
    }
    complete_to_unitary(draft)
}

/// All `k`-tuples over `symbols`, lexicographic.
fn tuples(symbols: &[TapeSymbol], k: usize) -> Vec<Vec<TapeSymbol>> {
    let mut out: Vec<Vec<TapeSymbol>> = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                symbols.iter().map(move |s| {
                    let mut t = prefix.clone();
                    t.push(*s);
                    t
                })
            })
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::{check_reversibility, run_1dfa_k};
    use crate::harness::samples::{anbn_dfa, parity_dfa};
    use crate::model::Alphabet;
    use crate::quantum::{check_well_formed, run, run_observed, RunParams};
    use std::f64::consts::FRAC_1_SQRT_2;

    fn ab() -> ComplementarityRelation {
        ComplementarityRelation::identity(Alphabet::new(["a", "b"]).unwrap())
    }

    fn unit(dim: usize, i: usize) -> Vec<Complex64> {
        let mut v = vec![ZERO; dim];
        v[i] = ONE;
        v
    }

    fn is_permutation(m: &ComplexMatrix) -> bool {
        (0..m.cols()).all(|c| {
            let col = m.column(c);
            col.iter().filter(|v| **v == ONE).count() == 1
                && col.iter().filter(|v| **v != ZERO).count() == 1
        }) && m.gram().max_deviation_from_identity() == 0.0
    }

    #[test]
    fn full_permutation_is_unchanged() {
        let mut d = MachineDraft::new("perm", ab(), 1, 1);
        d.add_state("q0", StateKind::NonHalting, &[1, 1]);
        d.add_state("q1", StateKind::NonHalting, &[1, 1]);
        let t = d.tuple(&["a"], &["a"]).unwrap();
        d.set_operator(t.clone(), ComplexMatrix::permutation(&[1, 0]));
        let m = complete_to_unitary(d.clone()).unwrap();
        assert_eq!(m, d.build().unwrap());
    }

    #[test]
    fn single_authored_column_gains_one_sink() {
        let mut d = MachineDraft::new("partial", ab(), 1, 1);
        d.add_state("q0", StateKind::NonHalting, &[1, 1]);
        d.add_state("q1", StateKind::NonHalting, &[1, 1]);
        let t = d.tuple(&["a"], &["a"]).unwrap();
        d.set_column(t.clone(), 0, unit(2, 1));
        let m = complete_to_unitary(d).unwrap();
        assert_eq!(m.state_count(), 3);
        assert_eq!(m.state_name(2), "rej~q1");
        assert_eq!(m.kind(2), StateKind::Rejecting);
        assert!(m.moves(2).is_stationary());
        let u = m.operator(&t).unwrap();
        assert!(is_permutation(u));
        assert_eq!(u.get(1, 0), ONE);
        assert_eq!(u.get(2, 1), ONE);
        assert_eq!(u.gram().max_deviation_from_identity(), 0.0);
    }

    #[test]
    fn sinks_are_shared_across_tuples() {
        let mut d = MachineDraft::new("shared", ab(), 1, 1);
        d.add_state("q0", StateKind::NonHalting, &[1, 1]);
        d.add_state("q1", StateKind::NonHalting, &[1, 1]);
        let ta = d.tuple(&["a"], &["a"]).unwrap();
        let tb = d.tuple(&["b"], &["b"]).unwrap();
        d.set_column(ta.clone(), 0, unit(2, 1));
        d.set_column(tb.clone(), 1, unit(2, 0));
        let full = d.tuple(&["#"], &["#"]).unwrap();
        d.set_operator(full.clone(), ComplexMatrix::identity(2));
        let m = complete_to_unitary(d).unwrap();
        assert_eq!(m.state_count(), 4);
        assert!(check_well_formed(&m, 0.0).passed);
        assert_eq!(m.operator(&full).unwrap(), &ComplexMatrix::identity(4));
    }

    #[test]
    fn duplicated_column_is_rejected() {
        let mut d = MachineDraft::new("dup", ab(), 1, 1);
        d.add_state("q0", StateKind::NonHalting, &[1, 1]);
        d.add_state("q1", StateKind::NonHalting, &[1, 1]);
        let t = d.tuple(&["a"], &["a"]).unwrap();
        d.set_column(t.clone(), 0, unit(2, 0));
        d.set_column(t, 1, unit(2, 0));
        let err = complete_to_unitary(d).unwrap_err();
        assert_eq!(
            err,
            EmbedError::NotOrthonormal {
                tuple: "a|a".into(),
                first: "q0".into(),
                second: "q1".into()
            }
        );
    }

    #[test]
    fn superposed_columns_complete_unitarily() {
        let mut d = MachineDraft::new("split", ab(), 1, 1);
        d.add_state("q0", StateKind::NonHalting, &[1, 1]);
        d.add_state("q1", StateKind::NonHalting, &[1, 1]);
        d.add_state("acc", StateKind::Accepting, &[0, 0]);
        let t = d.tuple(&["a"], &["a"]).unwrap();
        let s = Complex64::new(FRAC_1_SQRT_2, 0.0);
        d.set_column(t.clone(), 0, vec![ZERO, s, s]);
        let m = complete_to_unitary(d).unwrap();
        assert_eq!(m.state_count(), 4);
        let report = check_well_formed(&m, 1e-12);
        assert!(report.passed, "{report:?}");
    }

    #[test]
    fn wrong_column_length_is_reported() {
        let mut d = MachineDraft::new("short", ab(), 1, 1);
        d.add_state("q0", StateKind::NonHalting, &[1, 1]);
        let t = d.tuple(&["a"], &["a"]).unwrap();
        d.set_column(t, 0, vec![ONE, ZERO]);
        assert!(matches!(
            complete_to_unitary(d),
            Err(EmbedError::ColumnLength {
                len: 2,
                expected: 1,
                ..
            })
        ));
    }

    fn embed(dfa: &MultiHeadDfa) -> Mwkqfa {
        let report = check_reversibility(dfa, ReversibilityMode::Syntactic);
        reversible_to_quantum(dfa, &report).unwrap()
    }

    #[test]
    fn embedded_samples_are_faithful() {
        for dfa in [parity_dfa(), anbn_dfa()] {
            let m = embed(&dfa);
            assert!(m.is_strong());
            assert_eq!((m.upper_heads(), m.lower_heads()), (dfa.heads(), 1));
            assert!(check_well_formed(&m, 1e-9).passed);
            for w in dfa.alphabet().words_up_to(6) {
                let accepted = run_1dfa_k(&dfa, &w).unwrap().accepted();
                let out = run(&m, &w, &w, RunParams::default()).unwrap();
                let expected = if accepted { 1.0 } else { 0.0 };
                assert_eq!(out.p_acc, expected, "{}", dfa.alphabet().render(&w));
            }
        }
    }

    #[test]
    fn lower_head_never_moves() {
        let m = embed(&anbn_dfa());
        assert!(m.states().iter().all(|s| !s.moves.bits()[m.upper_heads()]));
        let w = m.alphabet().parse_word("aabb").unwrap();
        run_observed(&m, &w, &w, RunParams::default(), |_, sup| {
            assert!(sup.len() <= 1);
            for (c, amp) in sup.amplitudes() {
                assert_eq!(c.lower, vec![0]);
                assert_eq!(amp.norm(), 1.0);
            }
        })
        .unwrap();
    }

    #[test]
    fn final_state_without_transitions_accepts_at_once() {
        let dfa = MultiHeadDfa::builder("all", Alphabet::new(["a", "b"]).unwrap(), 1)
            .state("q0", true)
            .build()
            .unwrap();
        let m = embed(&dfa);
        assert_eq!(m.state_name(1), "acc~q0");
        for w in dfa.alphabet().words_up_to(3) {
            let out = run(&m, &w, &w, RunParams::default()).unwrap();
            assert_eq!(out.p_acc, 1.0);
            assert_eq!(out.steps, 1);
        }
    }

    #[test]
    fn bounded_evidence_is_recorded() {
        let dfa = parity_dfa();
        let report = check_reversibility(&dfa, ReversibilityMode::Bounded { max_len: 4 });
        let m = reversible_to_quantum(&dfa, &report).unwrap();
        assert!(m.metadata()["reversibility"].starts_with("bounded"));
        assert!(m.metadata().contains_key("reversibility-caveat"));
    }

    #[test]
    fn irreversible_machine_collides_without_evidence() {
        use crate::harness::samples::irreversible_sink_dfa;
        let dfa = irreversible_sink_dfa();
        let bad = check_reversibility(&dfa, ReversibilityMode::Syntactic);
        assert!(matches!(
            reversible_to_quantum(&dfa, &bad),
            Err(EmbedError::NotReversible(_))
        ));
        // Evidence that missed the conflict leads to a collision diagnostic.
        let blind = check_reversibility(&dfa, ReversibilityMode::Bounded { max_len: 0 });
        let err = reversible_to_quantum(&dfa, &blind).unwrap_err();
        assert!(matches!(err, EmbedError::Collision { ref target, .. } if target == "sink"));
    }
}
