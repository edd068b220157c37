//! Alphabets, words over them, border analysis, and finite word sets,
//! plus the word-list text format understood by the CLI.
//!
//! Words are stored as sequences of indices into an [`Alphabet`], not as
//! characters, so any alphabet up to 255 symbols is handled uniformly.
//! The alphabet's declaration order fixes the lexicographic order used
//! for all tie-breaking.

mod families;

pub use families::{
    family_full_minus, family_s4, family_sk, family_sk_prime, power_witness, s5_long_gap_witness,
    sk_prime_witness, sk_witness,
};

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// An ordered alphabet of distinct symbols. The order is fixed at
/// construction and defines lexicographic order everywhere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<char>,
}

impl Alphabet {
    /// Builds an alphabet from symbols in declaration order.
    pub fn new(symbols: impl IntoIterator<Item = char>) -> Result<Self> {
        let symbols: Vec<char> = symbols.into_iter().collect();
        if symbols.is_empty() {
            return Err(Error::invalid("alphabet must contain at least one symbol"));
        }
        if symbols.len() > 256 {
            return Err(Error::invalid(format!(
                "alphabet has {} symbols; at most 256 are supported",
                symbols.len()
            )));
        }
        let mut seen = BTreeSet::new();
        for &c in &symbols {
            if !seen.insert(c) {
                return Err(Error::invalid(format!("duplicate symbol {c:?} in alphabet")));
            }
        }
        Ok(Alphabet { symbols })
    }

    /// The two-symbol alphabet `{a, b}` with `a < b`.
    pub fn binary() -> Self {
        Alphabet {
            symbols: vec!['a', 'b'],
        }
    }

    /// Number of symbols.
    pub fn size(&self) -> usize {
        self.symbols.len()
    }

    /// The symbols in declaration order.
    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    /// Index of a character, if it belongs to the alphabet.
    pub fn index_of(&self, c: char) -> Option<u8> {
        self.symbols.iter().position(|&s| s == c).map(|i| i as u8)
    }

    /// Character at a given index.
    ///
    /// Panics if the index is out of range; indices come from words that
    /// were validated against this alphabet.
    pub fn symbol(&self, index: u8) -> char {
        self.symbols[index as usize]
    }

    /// Parses a string of symbol characters into a word.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let mut indices = Vec::with_capacity(text.len());
        for c in text.chars() {
            match self.index_of(c) {
                Some(i) => indices.push(i),
                None => {
                    return Err(Error::invalid(format!(
                        "symbol {c:?} is not in the alphabet {:?}",
                        self.symbols.iter().collect::<String>()
                    )))
                }
            }
        }
        Ok(Word(indices))
    }

    /// Renders a word as its symbol characters.
    pub fn render(&self, word: &Word) -> String {
        word.symbols().iter().map(|&i| self.symbol(i)).collect()
    }

    /// True if every index of `word` is valid for this alphabet.
    pub fn admits(&self, word: &Word) -> bool {
        word.symbols().iter().all(|&i| (i as usize) < self.size())
    }
}

/// A word: a sequence of symbol indices. May be empty.
///
/// Comparison is lexicographic in index order (a proper prefix sorts
/// before its extensions).
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_indices(indices: Vec<u8>) -> Self {
        Word(indices)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[u8] {
        &self.0
    }

    pub fn push(&mut self, symbol: u8) {
        self.0.push(symbol);
    }

    /// This word followed by `other`.
    pub fn concat(&self, other: &Word) -> Word {
        let mut out = self.0.clone();
        out.extend_from_slice(&other.0);
        Word(out)
    }

    /// True if `self` occurs in `other` as a contiguous factor.
    /// The empty word is a factor of every word.
    pub fn is_factor_of(&self, other: &Word) -> bool {
        if self.is_empty() {
            return true;
        }
        other
            .0
            .windows(self.len())
            .any(|window| window == self.0.as_slice())
    }

    pub fn starts_with(&self, prefix: &Word) -> bool {
        self.0.starts_with(&prefix.0)
    }

    pub fn ends_with(&self, suffix: &Word) -> bool {
        self.0.ends_with(&suffix.0)
    }

    /// The factor `self[start..end)` as a new word.
    pub fn slice(&self, start: usize, end: usize) -> Word {
        Word(self.0[start..end].to_vec())
    }
}

impl fmt::Display for Word {
    /// Digit-style rendering of the raw indices; use [`Alphabet::render`]
    /// for symbol characters.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &i in &self.0 {
            write!(f, "{i}")?;
        }
        Ok(())
    }
}

/// Lengths of all proper nonempty borders of `w`, in ascending order.
///
/// A border of length `L` is a prefix of length `L` that is also a
/// suffix. `w` is unbordered exactly when the result is empty.
pub fn borders(w: &Word) -> Result<Vec<usize>> {
    if w.is_empty() {
        return Err(Error::invalid("borders of the empty word are undefined"));
    }
    let s = w.symbols();
    Ok((1..s.len())
        .filter(|&len| s[..len] == s[s.len() - len..])
        .collect())
}

/// True if `w` has no proper nonempty border.
pub fn is_unbordered(w: &Word) -> Result<bool> {
    Ok(borders(w)?.is_empty())
}

/// A finite set of nonempty words over a fixed alphabet.
///
/// Construction deduplicates, rejects out-of-alphabet symbols, and drops
/// the empty word (recording that it did): the empty word changes neither
/// the generated monoid nor its factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordSet {
    alphabet: Alphabet,
    words: Vec<Word>,
    max_len: usize,
    dropped_empty: bool,
}

impl WordSet {
    pub fn new(alphabet: Alphabet, words: impl IntoIterator<Item = Word>) -> Result<Self> {
        let mut dropped_empty = false;
        let mut set = BTreeSet::new();
        for word in words {
            if word.is_empty() {
                dropped_empty = true;
                continue;
            }
            if !alphabet.admits(&word) {
                return Err(Error::invalid(format!(
                    "word {word} uses symbol indices outside the {}-symbol alphabet",
                    alphabet.size()
                )));
            }
            set.insert(word);
        }
        let mut words: Vec<Word> = set.into_iter().collect();
        // length-then-lex order: deterministic and pleasant to list
        words.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
        let max_len = words.iter().map(Word::len).max().unwrap_or(0);
        Ok(WordSet {
            alphabet,
            words,
            max_len,
            dropped_empty,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// Words in length-then-lex order.
    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Maximal word length, 0 for the empty set.
    pub fn max_len(&self) -> usize {
        self.max_len
    }

    /// True if an empty word was supplied to the constructor and dropped.
    pub fn dropped_empty(&self) -> bool {
        self.dropped_empty
    }

    pub fn contains(&self, word: &Word) -> bool {
        self.words
            .binary_search_by(|probe| probe.len().cmp(&word.len()).then_with(|| probe.cmp(word)))
            .is_ok()
    }

    /// Set union; both sets must share the same alphabet.
    pub fn union(&self, other: &WordSet) -> Result<WordSet> {
        if self.alphabet != other.alphabet {
            return Err(Error::invalid("cannot union word sets over different alphabets"));
        }
        WordSet::new(
            self.alphabet.clone(),
            self.words.iter().chain(other.words.iter()).cloned(),
        )
    }

    /// Parses the word-list text format.
    ///
    /// Lines hold one word each; `#` starts a comment; blank lines are
    /// ignored. An optional leading `@alphabet <symbols>` line fixes the
    /// alphabet and its order; otherwise the alphabet is the set of
    /// characters used, in ascending character order.
    pub fn parse(text: &str) -> Result<WordSet> {
        let mut declared: Option<Alphabet> = None;
        let mut raw_words: Vec<(usize, String)> = Vec::new();
        let mut saw_content = false;

        for (idx, raw_line) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = match raw_line.find('#') {
                Some(pos) => &raw_line[..pos],
                None => raw_line,
            };
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('@') {
                if saw_content {
                    return Err(Error::Parse {
                        line: line_no,
                        message: "directives are only allowed before the first word".into(),
                    });
                }
                if declared.is_some() {
                    return Err(Error::Parse {
                        line: line_no,
                        message: "duplicate @alphabet declaration".into(),
                    });
                }
                let mut parts = rest.split_whitespace();
                match (parts.next(), parts.next(), parts.next()) {
                    (Some("alphabet"), Some(symbols), None) => {
                        declared = Some(Alphabet::new(symbols.chars()).map_err(|e| Error::Parse {
                            line: line_no,
                            message: e.to_string(),
                        })?);
                    }
                    _ => {
                        return Err(Error::Parse {
                            line: line_no,
                            message: format!("unknown directive {line:?}; expected `@alphabet <symbols>`"),
                        })
                    }
                }
                continue;
            }
            if line.split_whitespace().nth(1).is_some() {
                return Err(Error::Parse {
                    line: line_no,
                    message: "expected one word per line".into(),
                });
            }
            saw_content = true;
            raw_words.push((line_no, line.to_string()));
        }

        let alphabet = match declared {
            Some(a) => a,
            None => {
                let chars: BTreeSet<char> = raw_words
                    .iter()
                    .flat_map(|(_, w)| w.chars())
                    .collect();
                if chars.is_empty() {
                    return Err(Error::Parse {
                        line: text.lines().count().max(1),
                        message: "no words and no @alphabet declaration; alphabet cannot be inferred"
                            .into(),
                    });
                }
                Alphabet::new(chars)?
            }
        };

        let mut words = Vec::with_capacity(raw_words.len());
        for (line_no, raw) in raw_words {
            words.push(alphabet.parse_word(&raw).map_err(|e| Error::Parse {
                line: line_no,
                message: e.to_string(),
            })?);
        }
        WordSet::new(alphabet, words)
    }

    /// Serializes to the word-list format with an explicit alphabet header.
    pub fn to_list_string(&self) -> String {
        let mut out = String::new();
        out.push_str("@alphabet ");
        out.extend(self.alphabet.symbols());
        out.push('\n');
        for word in &self.words {
            out.push_str(&self.alphabet.render(word));
            out.push('\n');
        }
        out
    }
}
