//! Alphabets, complementarity relations and double-stranded, end-marked tapes.
//!
//! Symbols are opaque tokens identified by their position in an [`Alphabet`].
//! Words are plain vectors of [`Symbol`]s; the end markers `#` and `$` only
//! ever appear on tapes, as [`TapeSymbol::Left`] and [`TapeSymbol::Right`].

use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// Left end marker.
pub const LEFT_MARKER: &str = "#";
/// Right end marker.
pub const RIGHT_MARKER: &str = "$";

/// Default bound on the number of complementary strands enumerated for one word.
pub const DEFAULT_COMPLEMENT_GUARD: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("the end marker {0:?} cannot be used as an alphabet symbol")]
    ReservedSymbol(String),
    #[error("symbol {0:?} is declared more than once")]
    DuplicateSymbol(String),
    #[error("symbol names must be non-empty and free of whitespace, got {0:?}")]
    InvalidSymbolName(String),
    #[error("symbol {0:?} is not in the alphabet")]
    UnknownSymbol(String),
    #[error("symbol index {index} is outside an alphabet of {size} symbols")]
    SymbolOutOfRange { index: usize, size: usize },
    #[error("strands differ in length: upper has {upper} symbols, lower has {lower}")]
    LengthMismatch { upper: usize, lower: usize },
    #[error("strands are not complementary at position {position}")]
    NotComplementary { position: usize },
    #[error("complement enumeration needs {required} strands, more than the bound of {bound}")]
    CapacityExceeded { required: u128, bound: usize },
}

/// A symbol of an alphabet, identified by its index in declaration order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(u32);

impl Symbol {
    pub const fn from_index(index: usize) -> Self {
        Symbol(index as u32)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

pub type Word = Vec<Symbol>;

/// A tape cell: an end marker or an alphabet symbol.
///
/// The derived order puts `#` first and `$` last, with alphabet symbols in
/// declaration order in between.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TapeSymbol {
    Left,
    Sym(Symbol),
    Right,
}

/// Ordered finite set of distinct symbol names, excluding the end markers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub fn new<I, S>(symbols: I) -> Result<Self, ModelError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut names: Vec<String> = Vec::new();
        for name in symbols {
            let name = name.into();
            if name == LEFT_MARKER || name == RIGHT_MARKER {
                return Err(ModelError::ReservedSymbol(name));
            }
            if name.is_empty() || name.chars().any(char::is_whitespace) {
                return Err(ModelError::InvalidSymbolName(name));
            }
            if names.contains(&name) {
                return Err(ModelError::DuplicateSymbol(name));
            }
            names.push(name);
        }
        Ok(Alphabet { names })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + '_ {
        (0..self.names.len()).map(Symbol::from_index)
    }

    /// The working alphabet: `#`, every symbol in order, then `$`.
    pub fn tape_symbols(&self) -> Vec<TapeSymbol> {
        let mut all = Vec::with_capacity(self.len() + 2);
        all.push(TapeSymbol::Left);
        all.extend(self.symbols().map(TapeSymbol::Sym));
        all.push(TapeSymbol::Right);
        all
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, symbol: Symbol) -> &str {
        &self.names[symbol.index()]
    }

    pub fn symbol(&self, name: &str) -> Option<Symbol> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(Symbol::from_index)
    }

    pub fn contains(&self, symbol: Symbol) -> bool {
        symbol.index() < self.names.len()
    }

    pub fn tape_name(&self, symbol: TapeSymbol) -> &str {
        match symbol {
            TapeSymbol::Left => LEFT_MARKER,
            TapeSymbol::Right => RIGHT_MARKER,
            TapeSymbol::Sym(s) => self.name(s),
        }
    }

    /// Resolves a name of the working alphabet, end markers included.
    pub fn tape_symbol(&self, name: &str) -> Option<TapeSymbol> {
        match name {
            LEFT_MARKER => Some(TapeSymbol::Left),
            RIGHT_MARKER => Some(TapeSymbol::Right),
            _ => self.symbol(name).map(TapeSymbol::Sym),
        }
    }

    pub fn check_word(&self, word: &[Symbol]) -> Result<(), ModelError> {
        match word.iter().find(|s| !self.contains(**s)) {
            Some(s) => Err(ModelError::SymbolOutOfRange {
                index: s.index(),
                size: self.len(),
            }),
            None => Ok(()),
        }
    }

    /// Parses a word from text.
    ///
    /// Text containing whitespace is split on it, one token per symbol.
    /// Otherwise symbols are matched greedily, longest name first. The empty
    /// string and `λ` both denote the empty word.
    pub fn parse_word(&self, text: &str) -> Result<Word, ModelError> {
        let text = text.trim();
        if text.is_empty() || text == "λ" {
            return Ok(Vec::new());
        }
        if text.contains(char::is_whitespace) {
            return text
                .split_whitespace()
                .map(|tok| {
                    self.symbol(tok)
                        .ok_or_else(|| ModelError::UnknownSymbol(tok.to_string()))
                })
                .collect();
        }
        let mut by_length: Vec<(usize, &String)> = self.names.iter().enumerate().collect();
        by_length.sort_by(|a, b| b.1.len().cmp(&a.1.len()).then(a.0.cmp(&b.0)));
        let mut word = Vec::new();
        let mut rest = text;
        while !rest.is_empty() {
            let hit = by_length
                .iter()
                .find(|(_, name)| rest.starts_with(name.as_str()));
            match hit {
                Some((index, name)) => {
                    word.push(Symbol::from_index(*index));
                    rest = &rest[name.len()..];
                }
                None => {
                    let bad: String = rest.chars().take(1).collect();
                    return Err(ModelError::UnknownSymbol(bad));
                }
            }
        }
        Ok(word)
    }

    /// Names of the symbols of `word`, in order.
    pub fn word_names<'a>(&'a self, word: &[Symbol]) -> Vec<&'a str> {
        word.iter().map(|s| self.name(*s)).collect()
    }

    /// Renders a word. Symbols are concatenated when every name is a single
    /// character and space-separated otherwise; the empty word renders as `λ`.
    pub fn render(&self, word: &[Symbol]) -> String {
        if word.is_empty() {
            return "λ".to_string();
        }
        let sep = if self.names.iter().all(|n| n.chars().count() == 1) {
            ""
        } else {
            " "
        };
        self.word_names(word).join(sep)
    }

    /// All words of length at most `max_len`, shortest first and
    /// lexicographic (by declaration order) within a length.
    pub fn words_up_to(&self, max_len: usize) -> WordsUpTo {
        WordsUpTo {
            radix: self.len(),
            max_len,
            current: Some(Vec::new()),
        }
    }

    /// Number of words of length at most `max_len`, saturating.
    pub fn count_words_up_to(&self, max_len: usize) -> u128 {
        geometric_sum(self.len() as u128, max_len)
    }
}

/// Σ_{n=0}^{max_len} base^n, saturating at `u128::MAX`.
pub(crate) fn geometric_sum(base: u128, max_len: usize) -> u128 {
    let mut total: u128 = 0;
    let mut term: u128 = 1;
    for _ in 0..=max_len {
        total = total.saturating_add(term);
        term = term.saturating_mul(base);
    }
    total
}

/// Iterator behind [`Alphabet::words_up_to`].
#[derive(Debug, Clone)]
pub struct WordsUpTo {
    radix: usize,
    max_len: usize,
    current: Option<Word>,
}

impl Iterator for WordsUpTo {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let out = self.current.take()?;
        if self.radix > 0 {
            let mut next = out.clone();
            // Increment as a base-`radix` counter, most significant digit first.
            let mut carried = true;
            for digit in next.iter_mut().rev() {
                if digit.index() + 1 < self.radix {
                    *digit = Symbol::from_index(digit.index() + 1);
                    carried = false;
                    break;
                }
                *digit = Symbol::from_index(0);
            }
            if carried {
                next = vec![Symbol::from_index(0); out.len() + 1];
            }
            if next.len() <= self.max_len {
                self.current = Some(next);
            }
        }
        Some(out)
    }
}

/// A binary relation on one alphabet, stored as the sorted complement list of
/// every symbol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplementarityRelation {
    alphabet: Alphabet,
    images: Vec<Vec<Symbol>>,
}

impl ComplementarityRelation {
    pub fn new<I>(alphabet: Alphabet, pairs: I) -> Result<Self, ModelError>
    where
        I: IntoIterator<Item = (Symbol, Symbol)>,
    {
        let mut images = vec![Vec::new(); alphabet.len()];
        for (a, b) in pairs {
            for s in [a, b] {
                if !alphabet.contains(s) {
                    return Err(ModelError::SymbolOutOfRange {
                        index: s.index(),
                        size: alphabet.len(),
                    });
                }
            }
            images[a.index()].push(b);
        }
        for list in &mut images {
            list.sort();
            list.dedup();
        }
        Ok(ComplementarityRelation { alphabet, images })
    }

    pub fn from_names(alphabet: Alphabet, pairs: &[(&str, &str)]) -> Result<Self, ModelError> {
        let resolve = |name: &str| {
            alphabet
                .symbol(name)
                .ok_or_else(|| ModelError::UnknownSymbol(name.to_string()))
        };
        let resolved = pairs
            .iter()
            .map(|(a, b)| Ok((resolve(a)?, resolve(b)?)))
            .collect::<Result<Vec<_>, ModelError>>()?;
        Self::new(alphabet, resolved)
    }

    pub fn identity(alphabet: Alphabet) -> Self {
        let images = alphabet.symbols().map(|s| vec![s]).collect();
        ComplementarityRelation { alphabet, images }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, list)| list.len() == 1 && list[0].index() == i)
    }

    /// True when some symbol has more than one complement.
    pub fn is_non_injective(&self) -> bool {
        self.images.iter().any(|list| list.len() > 1)
    }

    pub fn contains(&self, a: Symbol, b: Symbol) -> bool {
        self.images
            .get(a.index())
            .is_some_and(|list| list.binary_search(&b).is_ok())
    }

    /// Complements of `a`, in alphabet order.
    pub fn complements(&self, a: Symbol) -> &[Symbol] {
        &self.images[a.index()]
    }

    /// All pairs, ordered by first then second component.
    pub fn pairs(&self) -> impl Iterator<Item = (Symbol, Symbol)> + '_ {
        self.images
            .iter()
            .enumerate()
            .flat_map(|(i, list)| list.iter().map(move |b| (Symbol::from_index(i), *b)))
    }

    /// Symbols that have no complement at all.
    pub fn uncovered(&self) -> Vec<Symbol> {
        self.alphabet
            .symbols()
            .filter(|s| self.images[s.index()].is_empty())
            .collect()
    }

    /// Total number of pairs.
    pub fn len(&self) -> usize {
        self.images.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// True iff `w1` over `w2` lies in the Watson-Crick domain of `rho`.
pub fn is_wk_pair(
    rho: &ComplementarityRelation,
    w1: &[Symbol],
    w2: &[Symbol],
) -> Result<bool, ModelError> {
    rho.alphabet.check_word(w1)?;
    rho.alphabet.check_word(w2)?;
    Ok(w1.len() == w2.len() && w1.iter().zip(w2).all(|(a, b)| rho.contains(*a, *b)))
}

/// Number of lower strands complementary to `w1`, saturating.
pub fn complement_count(rho: &ComplementarityRelation, w1: &[Symbol]) -> u128 {
    w1.iter().fold(1u128, |acc, a| {
        acc.saturating_mul(rho.complements(*a).len() as u128)
    })
}

/// Every `w2` with `is_wk_pair(rho, w1, w2)`, in lexicographic order.
pub fn complement_strands(
    rho: &ComplementarityRelation,
    w1: &[Symbol],
    guard: usize,
) -> Result<Vec<Word>, ModelError> {
    rho.alphabet.check_word(w1)?;
    let required = complement_count(rho, w1);
    if required > guard as u128 {
        return Err(ModelError::CapacityExceeded {
            required,
            bound: guard,
        });
    }
    let mut out: Vec<Word> = vec![Vec::with_capacity(w1.len())];
    for a in w1 {
        let choices = rho.complements(*a);
        out = out
            .into_iter()
            .flat_map(|prefix| {
                choices.iter().map(move |b| {
                    let mut w = prefix.clone();
                    w.push(*b);
                    w
                })
            })
            .collect();
    }
    Ok(out)
}

/// `#w$` as tape cells.
pub fn mark_word(word: &[Symbol]) -> Vec<TapeSymbol> {
    let mut tape = Vec::with_capacity(word.len() + 2);
    tape.push(TapeSymbol::Left);
    tape.extend(word.iter().copied().map(TapeSymbol::Sym));
    tape.push(TapeSymbol::Right);
    tape
}

/// Two end-marked strands, `#w1$` over `#w2$`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleTape {
    upper: Vec<TapeSymbol>,
    lower: Vec<TapeSymbol>,
}

impl DoubleTape {
    pub fn upper(&self) -> &[TapeSymbol] {
        &self.upper
    }

    pub fn lower(&self) -> &[TapeSymbol] {
        &self.lower
    }

    /// Position of `$` on the upper strand.
    pub fn upper_end(&self) -> usize {
        self.upper.len() - 1
    }

    /// Position of `$` on the lower strand.
    pub fn lower_end(&self) -> usize {
        self.lower.len() - 1
    }
}

/// Builds the tape for a complementary pair, naming the first offending
/// position otherwise.
pub fn make_wk_tape(
    rho: &ComplementarityRelation,
    w1: &[Symbol],
    w2: &[Symbol],
) -> Result<DoubleTape, ModelError> {
    rho.alphabet.check_word(w1)?;
    rho.alphabet.check_word(w2)?;
    if let Some(position) = w1.iter().zip(w2).position(|(a, b)| !rho.contains(*a, *b)) {
        return Err(ModelError::NotComplementary { position });
    }
    if w1.len() != w2.len() {
        return Err(ModelError::LengthMismatch {
            upper: w1.len(),
            lower: w2.len(),
        });
    }
    Ok(DoubleTape {
        upper: mark_word(w1),
        lower: mark_word(w2),
    })
}

/// Head movements, one flag per head: `true` moves right, `false` stays.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct MoveVector(Vec<bool>);

impl MoveVector {
    pub fn new(bits: Vec<bool>) -> Self {
        MoveVector(bits)
    }

    pub fn zeros(len: usize) -> Self {
        MoveVector(vec![false; len])
    }

    pub fn from_digits(digits: &[u8]) -> Self {
        MoveVector(digits.iter().map(|d| *d != 0).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn is_stationary(&self) -> bool {
        self.0.iter().all(|b| !b)
    }

    /// Concatenation, upper heads first.
    pub fn join(&self, other: &MoveVector) -> MoveVector {
        let mut bits = self.0.clone();
        bits.extend_from_slice(&other.0);
        MoveVector(bits)
    }
}

impl fmt::Display for MoveVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            f.write_str(if *b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ab() -> Alphabet {
        Alphabet::new(["a", "b"]).unwrap()
    }

    fn w(alphabet: &Alphabet, text: &str) -> Word {
        alphabet.parse_word(text).unwrap()
    }

    #[test]
    fn markers_are_not_symbols() {
        assert_eq!(
            Alphabet::new(["a", "#"]),
            Err(ModelError::ReservedSymbol("#".into()))
        );
        assert_eq!(
            Alphabet::new(["$"]),
            Err(ModelError::ReservedSymbol("$".into()))
        );
        assert_eq!(
            Alphabet::new(["a", "a"]),
            Err(ModelError::DuplicateSymbol("a".into()))
        );
    }

    #[test]
    fn wk_pair_identity() {
        let rho = ComplementarityRelation::identity(ab());
        let a = rho.alphabet().clone();
        assert!(is_wk_pair(&rho, &w(&a, "ab"), &w(&a, "ab")).unwrap());
        assert!(!is_wk_pair(&rho, &w(&a, "ab"), &w(&a, "ba")).unwrap());
        assert!(!is_wk_pair(&rho, &w(&a, "ab"), &w(&a, "a")).unwrap());
    }

    #[test]
    fn wk_pair_general_relation() {
        let rho = ComplementarityRelation::from_names(ab(), &[("a", "a"), ("a", "b"), ("b", "b")])
            .unwrap();
        let a = rho.alphabet().clone();
        assert!(is_wk_pair(&rho, &w(&a, "ab"), &w(&a, "bb")).unwrap());
        assert!(!is_wk_pair(&rho, &w(&a, "ab"), &w(&a, "ba")).unwrap());
    }

    #[test]
    fn wk_pair_rejects_foreign_symbols() {
        let rho = ComplementarityRelation::identity(ab());
        let bad = vec![Symbol::from_index(7)];
        assert_eq!(
            is_wk_pair(&rho, &bad, &bad),
            Err(ModelError::SymbolOutOfRange { index: 7, size: 2 })
        );
    }

    #[test]
    fn complements_identity_and_empty() {
        let rho = ComplementarityRelation::identity(ab());
        let a = rho.alphabet().clone();
        assert_eq!(
            complement_strands(&rho, &w(&a, "ab"), 10).unwrap(),
            vec![w(&a, "ab")]
        );
        assert_eq!(
            complement_strands(&rho, &[], 10).unwrap(),
            vec![Vec::<Symbol>::new()]
        );
    }

    #[test]
    fn complements_enumerate_in_order() {
        let rho = ComplementarityRelation::from_names(ab(), &[("a", "a"), ("a", "b"), ("b", "a")])
            .unwrap();
        let a = rho.alphabet().clone();
        let got = complement_strands(&rho, &w(&a, "aa"), 10).unwrap();
        let expected: Vec<Word> = ["aa", "ab", "ba", "bb"].iter().map(|t| w(&a, t)).collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn complements_of_uncovered_symbol_is_empty() {
        let rho = ComplementarityRelation::from_names(ab(), &[("a", "a")]).unwrap();
        let a = rho.alphabet().clone();
        assert_eq!(rho.uncovered(), vec![a.symbol("b").unwrap()]);
        assert!(complement_strands(&rho, &w(&a, "ab"), 10)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn complement_guard() {
        let rho = ComplementarityRelation::from_names(ab(), &[("a", "a"), ("a", "b")]).unwrap();
        let a = rho.alphabet().clone();
        let err = complement_strands(&rho, &w(&a, "aaaa"), 15).unwrap_err();
        assert_eq!(
            err,
            ModelError::CapacityExceeded {
                required: 16,
                bound: 15
            }
        );
        assert_eq!(
            complement_strands(&rho, &w(&a, "aaaa"), 16).unwrap().len(),
            16
        );
    }

    #[test]
    fn tapes_carry_markers() {
        let rho = ComplementarityRelation::identity(ab());
        let a = rho.alphabet().clone();
        let tape = make_wk_tape(&rho, &w(&a, "a"), &w(&a, "a")).unwrap();
        let sa = TapeSymbol::Sym(a.symbol("a").unwrap());
        assert_eq!(tape.upper(), &[TapeSymbol::Left, sa, TapeSymbol::Right]);
        assert_eq!(tape.lower(), &[TapeSymbol::Left, sa, TapeSymbol::Right]);
        let empty = make_wk_tape(&rho, &[], &[]).unwrap();
        assert_eq!(empty.upper(), &[TapeSymbol::Left, TapeSymbol::Right]);
        assert_eq!(empty.upper_end(), 1);
        assert_eq!(
            make_wk_tape(&rho, &w(&a, "a"), &w(&a, "b")),
            Err(ModelError::NotComplementary { position: 0 })
        );
        assert_eq!(
            make_wk_tape(&rho, &w(&a, "ab"), &w(&a, "a")),
            Err(ModelError::LengthMismatch { upper: 2, lower: 1 })
        );
    }

    #[test]
    fn parse_and_render_words() {
        let multi = Alphabet::new(["ab", "a", "*"]).unwrap();
        assert_eq!(multi.parse_word("aba").unwrap().len(), 2);
        assert_eq!(multi.render(&multi.parse_word("ab a *").unwrap()), "ab a *");
        assert_eq!(multi.render(&[]), "λ");
        assert!(multi.parse_word("λ").unwrap().is_empty());
        assert_eq!(
            multi.parse_word("c"),
            Err(ModelError::UnknownSymbol("c".into()))
        );
    }

    #[test]
    fn words_enumerate_length_then_lex() {
        let a = ab();
        let words: Vec<String> = a.words_up_to(2).map(|w| a.render(&w)).collect();
        assert_eq!(words, ["λ", "a", "b", "aa", "ab", "ba", "bb"]);
        assert_eq!(a.words_up_to(8).count(), 511);
        assert_eq!(a.count_words_up_to(8), 511);
        let empty = Alphabet::new(Vec::<String>::new()).unwrap();
        assert_eq!(empty.words_up_to(3).count(), 1);
    }

    fn relation_strategy() -> impl Strategy<Value = ComplementarityRelation> {
        (1usize..=3)
            .prop_flat_map(|n| {
                (
                    Just(n),
                    proptest::collection::vec(proptest::bool::ANY, n * n),
                )
            })
            .prop_map(|(n, mask)| {
                let names: Vec<String> = (0..n).map(|i| format!("s{i}")).collect();
                let alphabet = Alphabet::new(names).unwrap();
                let pairs = (0..n * n)
                    .filter(|i| mask[*i])
                    .map(|i| (Symbol::from_index(i / n), Symbol::from_index(i % n)));
                ComplementarityRelation::new(alphabet, pairs).unwrap()
            })
    }

    proptest! {
        #[test]
        fn complement_set_is_exactly_the_wk_domain(
            rho in relation_strategy(),
            raw in proptest::collection::vec(0usize..3, 0..=6),
        ) {
            let n = rho.alphabet().len();
            let w1: Word = raw.iter().map(|i| Symbol::from_index(i % n)).collect();
            let set = complement_strands(&rho, &w1, DEFAULT_COMPLEMENT_GUARD).unwrap();
            let product: usize = w1.iter().map(|a| rho.complements(*a).len()).product();
            prop_assert_eq!(set.len(), product);
            // Exhaustive check against every word of the same length.
            let candidates = rho
                .alphabet()
                .words_up_to(w1.len())
                .filter(|w| w.len() == w1.len());
            for w2 in candidates {
                let member = set.contains(&w2);
                prop_assert_eq!(member, is_wk_pair(&rho, &w1, &w2).unwrap());
            }
        }

        #[test]
        fn identity_pairs_every_word_with_itself(raw in proptest::collection::vec(0usize..2, 0..10)) {
            let rho = ComplementarityRelation::identity(ab());
            let word: Word = raw.into_iter().map(Symbol::from_index).collect();
            prop_assert!(is_wk_pair(&rho, &word, &word).unwrap());
        }
    }
}
