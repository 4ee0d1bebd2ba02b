use std::fmt;
use std::sync::Arc;

use crate::classical::{run_1dfa_k, MultiHeadDfa};
use crate::model::{Alphabet, Symbol};

/// A named membership predicate over the words of a fixed alphabet.
#[derive(Clone)]
pub struct LanguageOracle {
    pub name: String,
    pub alphabet: Alphabet,
    pub definition: String,
    decide: Arc<dyn Fn(&[Symbol]) -> bool + Send + Sync>,
}

impl LanguageOracle {
    pub fn new<F>(
        name: impl Into<String>,
        alphabet: Alphabet,
        definition: impl Into<String>,
        decide: F,
    ) -> Self
    where
        F: Fn(&[Symbol]) -> bool + Send + Sync + 'static,
    {
        LanguageOracle {
            name: name.into(),
            alphabet,
            definition: definition.into(),
            decide: Arc::new(decide),
        }
    }

    pub fn decide(&self, w: &[Symbol]) -> bool {
        (self.decide)(w)
    }
}

impl fmt::Debug for LanguageOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LanguageOracle")
            .field("name", &self.name)
            .field("alphabet", &self.alphabet)
            .field("definition", &self.definition)
            .finish_non_exhaustive()
    }
}

/// `{a, b}`.
pub fn ab_alphabet() -> Alphabet {
    Alphabet::new(["a", "b"]).expect("valid alphabet")
}

/// `{a, b, *, |}`: `*` splits a block, `|` separates blocks.
pub fn yao_rivest_alphabet() -> Alphabet {
    Alphabet::new(["a", "b", "*", "|"]).expect("valid alphabet")
}

const A: Symbol = Symbol::from_index(0);
const B: Symbol = Symbol::from_index(1);
const STAR: Symbol = Symbol::from_index(2);
const BAR: Symbol = Symbol::from_index(3);

/// `{ww}`: even length and equal halves.
pub fn oracle_ww(w: &[Symbol]) -> bool {
    let (left, right) = w.split_at(w.len() / 2);
    w.len().is_multiple_of(2) && left == right
}

/// Words over [`yao_rivest_alphabet`] of the form `w1*x1|w2*x2|…|wn*xn` with
/// `n ≥ 0` and `wi, xi ∈ {a,b}*`, such that `wi = wj` and `xi ≠ xj` for some
/// `i, j`. Malformed words are outside the language.
pub fn oracle_yao_rivest(w: &[Symbol]) -> bool {
    if w.is_empty() {
        return false;
    }
    let mut blocks: Vec<(&[Symbol], &[Symbol])> = Vec::new();
    for block in w.split(|s| *s == BAR) {
        let mut parts = block.split(|s| *s == STAR);
        let (Some(key), Some(value), None) = (parts.next(), parts.next(), parts.next()) else {
            return false;
        };
        if key.iter().chain(value).any(|s| *s != A && *s != B) {
            return false;
        }
        blocks.push((key, value));
    }
    blocks
        .iter()
        .enumerate()
        .any(|(i, (wi, xi))| blocks[i + 1..].iter().any(|(wj, xj)| wi == wj && xi != xj))
}

/// Even number of `a` over `{a, b}`.
pub fn oracle_parity(w: &[Symbol]) -> bool {
    w.iter().filter(|s| **s == A).count() % 2 == 0
}

/// `{a^n b^n : n ≥ 0}` over `{a, b}`.
pub fn oracle_anbn(w: &[Symbol]) -> bool {
    let n = w.len() / 2;
    w.len().is_multiple_of(2) && w[..n].iter().all(|s| *s == A) && w[n..].iter().all(|s| *s == B)
}

/// Acceptance by a single-head DFA. Partial machines still run and reject
/// when they halt outside an accepting state.
pub fn oracle_regular(d: &MultiHeadDfa, w: &[Symbol]) -> bool {
    run_1dfa_k(d, w).map(|r| r.accepted()).unwrap_or(false)
}

/// Wraps [`oracle_regular`]; the definition lists undefined slots when the
/// machine is not total.
pub fn regular_oracle(d: MultiHeadDfa) -> LanguageOracle {
    let mut definition = format!("words accepted by the DFA {:?}", d.name());
    let missing = d.undefined_input_slots();
    if d.heads() != 1 {
        definition.push_str(&format!(
            " (warning: {} heads, not a single-head DFA)",
            d.heads()
        ));
    } else if !missing.is_empty() {
        definition.push_str(&format!(
            " (warning: partial, {} undefined state/symbol slots)",
            missing.len()
        ));
    }
    LanguageOracle::new(
        format!("regular:{}", d.name()),
        d.alphabet().clone(),
        definition,
        move |w| oracle_regular(&d, w),
    )
}

pub fn oracle_names() -> &'static [&'static str] {
    &["ww", "yao-rivest", "parity", "anbn"]
}

pub fn oracle_by_name(name: &str) -> Option<LanguageOracle> {
    let oracle = match name {
        "ww" => LanguageOracle::new("ww", ab_alphabet(), "{ww : w in {a,b}*}", oracle_ww),
        "yao-rivest" => LanguageOracle::new(
            "yao-rivest",
            yao_rivest_alphabet(),
            "{w1*x1|...|wn*xn : n >= 0, wi, xi in {a,b}*, exists i, j: wi = wj and xi != xj}; \
             '*' ends a key and '|' separates blocks",
            oracle_yao_rivest,
        ),
        "parity" => LanguageOracle::new(
            "parity",
            ab_alphabet(),
            "{w in {a,b}* : |w|_a is even}",
            oracle_parity,
        ),
        "anbn" => LanguageOracle::new("anbn", ab_alphabet(), "{a^n b^n : n >= 0}", oracle_anbn),
        _ => return None,
    };
    Some(oracle)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::samples::parity_dfa;

    fn ab(text: &str) -> Vec<Symbol> {
        ab_alphabet().parse_word(text).unwrap()
    }

    fn yr(text: &str) -> Vec<Symbol> {
        yao_rivest_alphabet().parse_word(text).unwrap()
    }

    #[test]
    fn ww_examples() {
        assert!(oracle_ww(&ab("")));
        assert!(oracle_ww(&ab("abab")));
        assert!(!oracle_ww(&ab("abba")));
        assert!(!oracle_ww(&ab("aba")));
        assert!(ab_alphabet()
            .words_up_to(7)
            .filter(|w| w.len() % 2 == 1)
            .all(|w| !oracle_ww(&w)));
    }

    #[test]
    fn yao_rivest_examples() {
        assert!(!oracle_yao_rivest(&yr("")));
        assert!(oracle_yao_rivest(&yr("a*b|a*a")));
        assert!(!oracle_yao_rivest(&yr("a*b|b*a")));
        assert!(!oracle_yao_rivest(&yr("a*b|a*b")));
        assert!(oracle_yao_rivest(&yr("*|*a")));
        assert!(oracle_yao_rivest(&yr("ab*|b*|ab*a")));
    }

    #[test]
    fn yao_rivest_malformed_is_false() {
        for text in ["a", "*", "a*b|", "|a*b", "a**b|a*a", "a*b||a*a", "a*b|a"] {
            assert!(!oracle_yao_rivest(&yr(text)), "{text}");
        }
    }

    #[test]
    fn regular_examples() {
        let d = parity_dfa();
        assert!(oracle_regular(&d, &ab("aa")));
        assert!(!oracle_regular(&d, &ab("a")));
        let universal = MultiHeadDfa::builder("universal", ab_alphabet(), 1)
            .state("q", true)
            .transition("q", &["#"], "q", &[1])
            .transition("q", &["a"], "q", &[1])
            .transition("q", &["b"], "q", &[1])
            .build()
            .unwrap();
        let empty = MultiHeadDfa::builder("empty", ab_alphabet(), 1)
            .state("q", false)
            .transition("q", &["#"], "q", &[1])
            .transition("q", &["a"], "q", &[1])
            .transition("q", &["b"], "q", &[1])
            .build()
            .unwrap();
        for w in ab_alphabet().words_up_to(5) {
            assert!(oracle_regular(&universal, &w));
            assert!(!oracle_regular(&empty, &w));
        }
    }

    #[test]
    fn partial_machine_is_flagged() {
        let partial = MultiHeadDfa::builder("partial", ab_alphabet(), 1)
            .state("q", true)
            .transition("q", &["#"], "q", &[1])
            .build()
            .unwrap();
        assert!(regular_oracle(partial).definition.contains("warning"));
        assert!(!regular_oracle(parity_dfa()).definition.contains("warning"));
    }

    #[test]
    fn names_resolve() {
        for name in oracle_names() {
            assert_eq!(oracle_by_name(name).unwrap().name, *name);
        }
        assert!(oracle_by_name("foo").is_none());
    }

    #[test]
    fn anbn_and_parity() {
        assert!(oracle_anbn(&ab("")));
        assert!(oracle_anbn(&ab("aabb")));
        assert!(!oracle_anbn(&ab("abab")));
        assert!(!oracle_anbn(&ab("ba")));
        assert!(oracle_parity(&ab("abab")));
        assert!(!oracle_parity(&ab("ab")));
    }
}
