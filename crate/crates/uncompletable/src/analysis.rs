//! Structure of minimal uncompletable words: anchored decompositions,
//! double-checked witness verification, the quadratic-bound probe, and the
//! table harness that recomputes every family's known length record.

use std::fmt;
use std::ops::RangeInclusive;

use crate::automaton::build_star_trie;
use crate::error::{Error, Result};
use crate::oracle::cover_oracle;
use crate::search::{self, Limits, SearchResult, SearchStats, Verdict};
use crate::words::{
    self, borders, family_full_minus, family_sk, family_sk_prime, power_witness, Word, WordSet,
};

/// The unique factorization of a word around an unbordered anchor `u`:
/// `w = v₀ u v₁ u ⋯ v_m u v_{m+1}` where no `vᵢ` contains `u`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub anchor: Word,
    pub outer_prefix: Word,
    /// The words strictly between consecutive anchor occurrences.
    pub gaps: Vec<Word>,
    pub outer_suffix: Word,
}

impl Decomposition {
    /// Number of anchor occurrences (= gaps + 1).
    pub fn occurrences(&self) -> usize {
        self.gaps.len() + 1
    }

    /// Reassembles the decomposed word.
    pub fn reconstruct(&self) -> Word {
        let mut out = self.outer_prefix.clone();
        out = out.concat(&self.anchor);
        for gap in &self.gaps {
            out = out.concat(gap);
            out = out.concat(&self.anchor);
        }
        out.concat(&self.outer_suffix)
    }

    pub fn gap_lengths(&self) -> Vec<usize> {
        self.gaps.iter().map(Word::len).collect()
    }

    pub fn max_gap(&self) -> usize {
        self.gaps.iter().map(Word::len).max().unwrap_or(0)
    }

    /// True when the word starts and ends with the anchor itself.
    pub fn outer_empty(&self) -> bool {
        self.outer_prefix.is_empty() && self.outer_suffix.is_empty()
    }
}

/// Factors `w` around the unbordered word `u`.
///
/// Unborderedness makes occurrences of `u` non-overlapping, so the
/// left-to-right scan finds them all and the factorization is unique.
pub fn decompose(w: &Word, u: &Word) -> Result<Decomposition> {
    if !borders(u)?.is_empty() {
        return Err(Error::invalid(format!(
            "anchor has borders {:?}; decomposition is only unique for unbordered anchors",
            borders(u)?
        )));
    }
    let mut occurrences = Vec::new();
    let target = u.symbols();
    let symbols = w.symbols();
    let mut at = 0usize;
    while at + target.len() <= symbols.len() {
        if &symbols[at..at + target.len()] == target {
            occurrences.push(at);
            at += target.len();
        } else {
            at += 1;
        }
    }
    if occurrences.is_empty() {
        return Err(Error::not_applicable(
            "the anchor does not occur in the word",
        ));
    }
    let outer_prefix = w.slice(0, occurrences[0]);
    let gaps = occurrences
        .windows(2)
        .map(|pair| w.slice(pair[0] + target.len(), pair[1]))
        .collect();
    let outer_suffix = w.slice(occurrences.last().unwrap() + target.len(), w.len());
    Ok(Decomposition {
        anchor: u.clone(),
        outer_prefix,
        gaps,
        outer_suffix,
    })
}

/// How a computed witness relates to the anchor structure.
#[derive(Debug, Clone)]
pub struct StructureReport {
    pub starts_with_anchor: bool,
    pub ends_with_anchor: bool,
    pub outer_empty: bool,
    pub gap_lengths: Vec<usize>,
    pub min_gap: Option<usize>,
    pub max_gap: Option<usize>,
}

impl StructureReport {
    pub fn anchored(&self) -> bool {
        self.starts_with_anchor && self.ends_with_anchor && self.outer_empty
    }
}

fn structure_of(witness: &Word, u: &Word) -> Result<StructureReport> {
    let decomposition = decompose(witness, u)?;
    let gap_lengths = decomposition.gap_lengths();
    Ok(StructureReport {
        starts_with_anchor: witness.starts_with(u),
        ends_with_anchor: witness.ends_with(u),
        outer_empty: decomposition.outer_empty(),
        min_gap: gap_lengths.iter().copied().min(),
        max_gap: gap_lengths.iter().copied().max(),
        gap_lengths,
    })
}

/// Verifies that `set` has the form `Σᵏ ∖ {u} ∪ T` with `u` unbordered of
/// length `k = max_len(set)` and `T` made of strictly shorter words, then
/// reports how the witness of `result` sits around `u`.
///
/// For sets of this form the witness must begin and end with `u`.
pub fn check_structure(set: &WordSet, u: &Word, result: &SearchResult) -> Result<StructureReport> {
    let witness = match &result.verdict {
        Verdict::Uncompletable { witness, .. } => witness,
        Verdict::Complete => {
            return Err(Error::not_applicable(
                "structure is only defined for uncompletable results",
            ))
        }
    };
    let k = set.max_len();
    if u.len() != k {
        return Err(Error::not_applicable(format!(
            "anchor length {} differs from the set's maximal word length {k}",
            u.len()
        )));
    }
    if !is_unbordered_anchor(u)? {
        return Err(Error::not_applicable("anchor must be unbordered"));
    }
    if set.contains(u) {
        return Err(Error::not_applicable(
            "the anchor itself belongs to the set",
        ));
    }
    let sigma = set.alphabet().size() as u64;
    if sigma.saturating_pow(k as u32) > 10_000_000 {
        return Err(Error::not_applicable(
            "Σᵏ is too large to verify the set's form",
        ));
    }
    let missing = missing_full_length_words(set);
    if missing.len() != 1 || missing[0] != *u {
        return Err(Error::not_applicable(format!(
            "the set must contain every length-{k} word except the anchor; {} are missing",
            missing.len()
        )));
    }
    structure_of(witness, u)
}

fn is_unbordered_anchor(u: &Word) -> Result<bool> {
    Ok(borders(u)?.is_empty())
}

/// All words of full length `k` absent from the set, in lex order.
fn missing_full_length_words(set: &WordSet) -> Vec<Word> {
    let k = set.max_len();
    let sigma = set.alphabet().size();
    let mut missing = Vec::new();
    let mut current = vec![0u8; k];
    loop {
        let word = Word::from_indices(current.clone());
        if !set.contains(&word) {
            missing.push(word);
        }
        let mut pos = k;
        let mut advanced = false;
        while pos > 0 {
            pos -= 1;
            if (current[pos] as usize) + 1 < sigma {
                current[pos] += 1;
                current[pos + 1..].fill(0);
                advanced = true;
                break;
            }
        }
        if !advanced {
            return missing;
        }
    }
}

/// Outcome of double-checking a claimed uncompletable word.
#[derive(Debug, Clone)]
pub struct WitnessReport {
    /// `w ∉ Fact(S*)`, agreed by both the subset search and the string
    /// oracle.
    pub uncompletable: bool,
    pub length: usize,
    /// Computed minimal uncompletable length, when minimality was checked.
    pub uwl: Option<usize>,
    /// `|w| = uwl(S)`, when minimality was checked.
    pub minimal: Option<bool>,
}

/// Checks `w ∉ Fact(S*)` along two independent paths — the determinized
/// subset automaton and the string-matching cover oracle — and errors if
/// they ever disagree. With `check_minimal`, additionally computes
/// `uwl(S)` and compares it against `|w|`.
pub fn verify_witness(
    set: &WordSet,
    w: &Word,
    check_minimal: bool,
    limits: &Limits,
) -> Result<WitnessReport> {
    let automaton = build_star_trie(set);
    let by_search = search::is_factor(&automaton, w);
    let by_oracle = cover_oracle(set, w);
    if by_search != by_oracle {
        return Err(Error::Inconsistency(format!(
            "is_factor says {by_search} but cover_oracle says {by_oracle} for a word of length {}",
            w.len()
        )));
    }
    let mut report = WitnessReport {
        uncompletable: !by_search,
        length: w.len(),
        uwl: None,
        minimal: None,
    };
    if check_minimal {
        let value = search::uwl(set, limits)?;
        report.uwl = Some(value);
        report.minimal = Some(report.uncompletable && value == w.len());
    }
    Ok(report)
}

/// Per-letter outcome of [`power_witness_check`].
#[derive(Debug, Clone)]
pub struct PowerWitnessLetter {
    pub letter: char,
    pub witness_len: usize,
    pub uncompletable: bool,
}

/// Outcome of [`power_witness_check`]: one entry per alphabet letter.
#[derive(Debug, Clone)]
pub struct PowerWitnessReport {
    pub anchor_len: usize,
    pub letters: Vec<PowerWitnessLetter>,
}

impl PowerWitnessReport {
    pub fn all_uncompletable(&self) -> bool {
        self.letters.iter().all(|entry| entry.uncompletable)
    }
}

/// Verifies the hypothesis that no word of `set` is a factor of `u`
/// (erroring with the offending word otherwise), then checks for every
/// letter `a ∈ Σ` that `(ua)^{k-1}u ∉ Fact(S*)`, with `k = |u|`.
pub fn power_witness_check(set: &WordSet, u: &Word) -> Result<PowerWitnessReport> {
    if u.len() != set.max_len() {
        return Err(Error::invalid(format!(
            "anchor length {} must equal the set's maximal word length {}",
            u.len(),
            set.max_len()
        )));
    }
    if let Some(offender) = set.words().iter().find(|s| s.is_factor_of(u)) {
        return Err(Error::not_applicable(format!(
            "hypothesis fails: {} is a factor of the anchor {}",
            set.alphabet().render(offender),
            set.alphabet().render(u)
        )));
    }
    let automaton = build_star_trie(set);
    let mut letters = Vec::with_capacity(set.alphabet().size());
    for index in 0..set.alphabet().size() as u8 {
        let letter_word = Word::from_indices(vec![index]);
        let witness = power_witness(u, &letter_word)?;
        let by_search = search::is_factor(&automaton, &witness);
        let by_oracle = cover_oracle(set, &witness);
        if by_search != by_oracle {
            return Err(Error::Inconsistency(format!(
                "is_factor says {by_search} but cover_oracle says {by_oracle} for letter {}",
                set.alphabet().symbol(index)
            )));
        }
        letters.push(PowerWitnessLetter {
            letter: set.alphabet().symbol(index),
            witness_len: witness.len(),
            uncompletable: !by_search,
        });
    }
    Ok(PowerWitnessReport {
        anchor_len: u.len(),
        letters,
    })
}

/// The families the reproduction harness knows how to generate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FamilyKind {
    /// `Σᵏ ∖ {a^{k-1}b}`, expected length `k² + k − 1`.
    FullMinus,
    /// The fixed 21-word set at `k = 4`, expected length 25.
    S4,
    /// `S_k`, expected length `2k² − 2k + 1`.
    Sk,
    /// `S'_k`, expected length `3k² − 9k + 1`.
    SkPrime,
}

impl FamilyKind {
    pub fn expected_length(self, k: usize) -> usize {
        match self {
            FamilyKind::FullMinus => k * k + k - 1,
            FamilyKind::S4 => 25,
            FamilyKind::Sk => 2 * k * k - 2 * k + 1,
            FamilyKind::SkPrime => 3 * k * k - 9 * k + 1,
        }
    }

    /// The anchor word around which witnesses are structured.
    pub fn anchor(self, k: usize) -> Word {
        match self {
            // a^{k-1} b
            FamilyKind::FullMinus => Word::from_indices([vec![0; k - 1], vec![1]].concat()),
            // a a b b
            FamilyKind::S4 => Word::from_indices(vec![0, 0, 1, 1]),
            // a^{k-2} b b
            FamilyKind::Sk | FamilyKind::SkPrime => {
                Word::from_indices([vec![0; k - 2], vec![1, 1]].concat())
            }
        }
    }

    pub fn generate(self, k: usize) -> Result<WordSet> {
        match self {
            FamilyKind::FullMinus => {
                family_full_minus(&words::Alphabet::binary(), k, &self.anchor(k))
            }
            FamilyKind::S4 => {
                if k != 4 {
                    return Err(Error::invalid("the s4 family is only defined at k = 4"));
                }
                Ok(words::family_s4())
            }
            FamilyKind::Sk => family_sk(k),
            FamilyKind::SkPrime => family_sk_prime(k),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::FullMinus => "full_minus",
            FamilyKind::S4 => "s4",
            FamilyKind::Sk => "sk",
            FamilyKind::SkPrime => "sk_prime",
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One row of the reproduction table.
#[derive(Debug, Clone)]
pub struct ReproRow {
    pub family: FamilyKind,
    pub k: usize,
    pub set_size: Option<usize>,
    /// Computed minimal uncompletable length.
    pub uwl: Option<usize>,
    /// Closed-form expected length.
    pub expected: usize,
    pub matches: Option<bool>,
    pub witness: Option<Word>,
    pub structure: Option<StructureReport>,
    /// `uwl > 2k²`: the witness length escapes the quadratic bound.
    pub exceeds_quadratic_bound: Option<bool>,
    pub stats: Option<SearchStats>,
    /// Per-row failure (resource limits, parameter range); never fatal to
    /// the table.
    pub error: Option<String>,
}

/// Recomputes `uwl` for each requested family at each `k` and compares it
/// against the closed form. Rows are ordered by `(k, family)`; resource
/// failures are recorded in their row rather than aborting the table.
pub fn reproduce(
    families: &[FamilyKind],
    k_range: RangeInclusive<usize>,
    limits: &Limits,
) -> Vec<ReproRow> {
    let mut ordered = families.to_vec();
    ordered.sort();
    ordered.dedup();
    let mut rows = Vec::new();
    for k in k_range {
        for &family in &ordered {
            rows.push(reproduce_row(family, k, limits));
        }
    }
    rows
}

fn reproduce_row(family: FamilyKind, k: usize, limits: &Limits) -> ReproRow {
    let expected = family.expected_length(k);
    let mut row = ReproRow {
        family,
        k,
        set_size: None,
        uwl: None,
        expected,
        matches: None,
        witness: None,
        structure: None,
        exceeds_quadratic_bound: None,
        stats: None,
        error: None,
    };
    let set = match family.generate(k) {
        Ok(set) => set,
        Err(error) => {
            row.error = Some(error.to_string());
            return row;
        }
    };
    row.set_size = Some(set.len());
    let result = match search::search_word_set(&set, limits) {
        Ok(result) => result,
        Err(error) => {
            row.error = Some(error.to_string());
            return row;
        }
    };
    row.stats = Some(result.stats.clone());
    match &result.verdict {
        Verdict::Complete => {
            row.error = Some("family unexpectedly complete".into());
        }
        Verdict::Uncompletable { length, witness } => {
            row.uwl = Some(*length);
            row.matches = Some(*length == expected);
            row.witness = Some(witness.clone());
            row.exceeds_quadratic_bound = Some(*length > 2 * k * k);
            row.structure = check_structure(&set, &family.anchor(k), &result).ok();
        }
    }
    row
}

/// Shape of a witness against the anchored form `u v₁ u ⋯ v_{k−1} u` with
/// all gaps of length at most `k`.
#[derive(Debug, Clone)]
pub struct ShapeReport {
    pub anchored: bool,
    pub gap_count: usize,
    pub expected_gap_count: usize,
    pub max_gap: usize,
    pub gaps_within_k: bool,
}

impl ShapeReport {
    /// True when the witness has exactly the bounded anchored shape.
    pub fn matches(&self) -> bool {
        self.anchored && self.gap_count == self.expected_gap_count && self.gaps_within_k
    }
}

/// Probe of the quadratic length bound `uwl(S) ≤ 2k²`.
#[derive(Debug, Clone)]
pub struct QuadraticBoundReport {
    pub k: usize,
    pub uwl: usize,
    /// `2k²`.
    pub bound: usize,
    pub within_bound: bool,
    /// The unique missing full-length word, when the set has the
    /// `Σᵏ ∖ {u} ∪ T` form that makes a shape check meaningful.
    pub anchor: Option<Word>,
    pub shape: Option<ShapeReport>,
}

/// Compares `uwl(S)` against `2k²` and, when an unbordered anchor is
/// identifiable, reports whether the witness keeps the anchored shape with
/// exactly `k−1` gaps no longer than `k`. Advisory: the caller decides
/// what to make of a violation.
pub fn quadratic_bound_probe(set: &WordSet, limits: &Limits) -> Result<QuadraticBoundReport> {
    let result = search::search_word_set(set, limits)?;
    let (length, witness) = match &result.verdict {
        Verdict::Complete => {
            return Err(Error::not_applicable(
                "the set is complete; no uncompletable word to probe",
            ))
        }
        Verdict::Uncompletable { length, witness } => (*length, witness),
    };
    let k = set.max_len();
    let bound = 2 * k * k;
    let mut report = QuadraticBoundReport {
        k,
        uwl: length,
        bound,
        within_bound: length <= bound,
        anchor: None,
        shape: None,
    };
    let sigma = set.alphabet().size() as u64;
    if sigma.saturating_pow(k as u32) <= 10_000_000 {
        let missing = missing_full_length_words(set);
        if missing.len() == 1 {
            let anchor = missing.into_iter().next().unwrap();
            if let Ok(true) = is_unbordered_anchor(&anchor) {
                if let Ok(structure) = structure_of(witness, &anchor) {
                    report.shape = Some(ShapeReport {
                        anchored: structure.anchored(),
                        gap_count: structure.gap_lengths.len(),
                        expected_gap_count: k - 1,
                        max_gap: structure.max_gap.unwrap_or(0),
                        gaps_within_k: structure.max_gap.unwrap_or(0) <= k,
                    });
                }
            }
            report.anchor = Some(anchor);
        }
    }
    Ok(report)
}
