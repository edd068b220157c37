//! Independent brute-force ground truth for the subset search.
//!
//! Everything here works by direct string matching and enumeration and
//! deliberately shares no code with the automaton or search modules, so
//! that agreement between the two paths is meaningful evidence of
//! correctness rather than a shared bug validating itself.

use std::time::Instant;

use crate::error::{Error, Result};
use crate::search::{self, Limits};
use crate::words::{Alphabet, Word, WordSet};

/// Hard cap on brute-force enumeration sizes.
const ENUMERATION_GUARD: u64 = 10_000_000;

/// Decides `w ∈ Fact(S*)` by the completion definition: is there a pair
/// `x, y` with `x·w·y ∈ S*`?
///
/// Dynamic programming over cut positions `0..=|w|`: a position `t` is
/// reachable when the prefix `w[0..t)` can be covered by words of `S`
/// aligned against some left context. Position 0 is always reachable
/// (empty left context); a suffix of some `s ∈ S` equal to `w[0..t)`
/// makes `t` reachable (that `s` overlaps the start of `w`); from a
/// reachable `t`, a word of `S` matching inside `w` advances the cut,
/// and one overhanging the right end completes the cover immediately.
/// A word of `S` containing all of `w` also completes it immediately.
pub fn cover_oracle(set: &WordSet, w: &Word) -> bool {
    if w.is_empty() {
        return true;
    }
    let target = w.symbols();
    let len = target.len();

    // w strictly inside a single word of S
    if set.words().iter().any(|s| w.is_factor_of(s)) {
        return true;
    }

    let mut reachable = vec![false; len + 1];
    reachable[0] = true;
    for s in set.words() {
        let s = s.symbols();
        for t in 1..=len.min(s.len()) {
            if s[s.len() - t..] == target[..t] {
                reachable[t] = true;
            }
        }
    }
    for t in 0..len {
        if !reachable[t] {
            continue;
        }
        for s in set.words() {
            let s = s.symbols();
            if t + s.len() <= len {
                if target[t..t + s.len()] == *s {
                    reachable[t + s.len()] = true;
                }
            } else if s.starts_with(&target[t..]) {
                // s overhangs the right end of w
                return true;
            }
        }
    }
    reachable[len]
}

/// Decides `w ∈ Fact(S*)` by enumerating every concatenation of at most
/// `max_words` words of `S` (including the empty concatenation) and
/// searching `w` in each.
///
/// Exact, not heuristic, for `max_words ≥ |w| + 2`: in any covering
/// concatenation, the words that actually intersect `w` number at most
/// `|w|` since each covers at least one of its positions, and dropping
/// the rest keeps `w` a factor.
pub fn naive_oracle(set: &WordSet, w: &Word, max_words: usize) -> Result<bool> {
    if max_words < 1 {
        return Err(Error::invalid("max_words must be at least 1"));
    }
    if w.is_empty() {
        return Ok(true);
    }
    let mut enumerated: u64 = 0;
    dfs(set, w.symbols(), max_words, &[], &mut enumerated)
}

/// Depth-first over concatenation suffixes. `tail` carries the last
/// `|w|-1` symbols written so far: a new occurrence of `w` must end inside
/// the freshly appended word, so nothing older can matter.
fn dfs(
    set: &WordSet,
    target: &[u8],
    remaining: usize,
    tail: &[u8],
    enumerated: &mut u64,
) -> Result<bool> {
    if remaining == 0 {
        return Ok(false);
    }
    for s in set.words() {
        *enumerated += 1;
        if *enumerated > ENUMERATION_GUARD {
            return Err(Error::ResourceLimit {
                what: format!("enumeration guard of {ENUMERATION_GUARD} concatenations"),
                explored: *enumerated,
                elapsed_ms: 0,
            });
        }
        let mut extended = tail.to_vec();
        extended.extend_from_slice(s.symbols());
        if extended.windows(target.len()).any(|win| win == target) {
            return Ok(true);
        }
        let keep = extended.len().min(target.len() - 1);
        if dfs(
            set,
            target,
            remaining - 1,
            &extended[extended.len() - keep..],
            enumerated,
        )? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Outcome of the brute-force minimal-length scan, which can certify a
/// witness but never completeness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BruteForceVerdict {
    /// First (length-then-lex) word outside `Fact(S*)`.
    UncompletableAt { length: usize, witness: Word },
    /// Every word up to the length bound is a factor.
    CompleteUpTo { max_len: usize },
}

/// Scans all words in length-then-lex order up to `max_len`, returning the
/// first that [`cover_oracle`] rejects. That word is exactly the
/// lexicographically least among the shortest uncompletable words.
pub fn uwl_bruteforce(set: &WordSet, max_len: usize) -> Result<BruteForceVerdict> {
    let sigma = set.alphabet().size() as u64;
    let mut total: u64 = 0;
    for len in 1..=max_len as u32 {
        total = total.saturating_add(sigma.saturating_pow(len));
    }
    if total > ENUMERATION_GUARD {
        return Err(Error::ResourceLimit {
            what: format!(
                "brute-force scan up to length {max_len} needs {total} words; guard is {ENUMERATION_GUARD}"
            ),
            explored: 0,
            elapsed_ms: 0,
        });
    }
    for len in 1..=max_len {
        let mut current = vec![0u8; len];
        loop {
            let word = Word::from_indices(current.clone());
            if !cover_oracle(set, &word) {
                return Ok(BruteForceVerdict::UncompletableAt { length: len, witness: word });
            }
            if !increment(&mut current, sigma as usize) {
                break;
            }
        }
    }
    Ok(BruteForceVerdict::CompleteUpTo { max_len })
}

/// Odometer increment in lex order; false on wrap-around.
fn increment(digits: &mut [u8], sigma: usize) -> bool {
    for pos in (0..digits.len()).rev() {
        if (digits[pos] as usize) + 1 < sigma {
            digits[pos] += 1;
            digits[pos + 1..].fill(0);
            return true;
        }
    }
    false
}

/// Result of maximizing `uwl` over every subset of `Σ^{≤k}`.
#[derive(Debug, Clone)]
pub struct UwlMaxResult {
    pub k: usize,
    pub sigma: usize,
    /// Largest `uwl` value seen.
    pub value: usize,
    /// Every subset attaining it, in lexicographic order of contents.
    pub maximizers: Vec<WordSet>,
    /// False when only a sampled lower bound was computed.
    pub exhaustive: bool,
    pub subsets_evaluated: u64,
}

fn universe(k: usize, sigma: usize) -> Result<(Alphabet, Vec<Word>)> {
    if sigma < 1 || sigma > 26 {
        return Err(Error::invalid("sigma must be between 1 and 26"));
    }
    let alphabet = Alphabet::new((0..sigma).map(|i| (b'a' + i as u8) as char))?;
    let mut words = Vec::new();
    for len in 1..=k {
        let mut current = vec![0u8; len];
        loop {
            words.push(Word::from_indices(current.clone()));
            if !increment(&mut current, sigma) {
                break;
            }
        }
    }
    Ok((alphabet, words))
}

fn evaluate_mask(
    alphabet: &Alphabet,
    words: &[Word],
    mask: u64,
    limits: &Limits,
) -> Result<(WordSet, usize)> {
    let chosen = words
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, w)| w.clone());
    let set = WordSet::new(alphabet.clone(), chosen)?;
    let value = search::uwl(&set, limits)?;
    Ok((set, value))
}

/// Exhaustive `UWL(k, σ)`: iterates all `2^{|Σ^{≤k}|}` subsets, computing
/// each `uwl` with the subset search, and reports the maximum together
/// with every maximizer. The empty subset counts (its `uwl` is 1).
///
/// Refuses universes larger than 16 words (2¹⁶ subsets); use
/// [`uwl_max_sampled`] beyond that.
pub fn uwl_max_exhaustive(k: usize, sigma: usize, limits: &Limits) -> Result<UwlMaxResult> {
    let (alphabet, words) = universe(k, sigma)?;
    if words.len() > 16 {
        return Err(Error::invalid(format!(
            "Σ^{{≤{k}}} over {sigma} symbols has {} words, over the exhaustion cap of 16; \
             use sampling mode for a lower bound",
            words.len()
        )));
    }
    let start = Instant::now();
    let mut best = 0usize;
    let mut argmax: Vec<u64> = Vec::new();
    let total_masks = 1u64 << words.len();
    for mask in 0..total_masks {
        if mask & 0xff == 0 {
            if let Some(timeout) = limits.timeout {
                if start.elapsed() > timeout {
                    return Err(Error::ResourceLimit {
                        what: format!("timeout of {timeout:.1?} during exhaustive maximization"),
                        explored: mask,
                        elapsed_ms: start.elapsed().as_millis() as u64,
                    });
                }
            }
        }
        let (_, value) = evaluate_mask(&alphabet, &words, mask, limits)?;
        if value > best {
            best = value;
            argmax.clear();
            argmax.push(mask);
        } else if value == best {
            argmax.push(mask);
        }
    }
    let mut maximizers: Vec<WordSet> = argmax
        .into_iter()
        .map(|mask| evaluate_mask(&alphabet, &words, mask, limits).map(|(set, _)| set))
        .collect::<Result<_>>()?;
    maximizers.sort_by(|x, y| x.words().cmp(y.words()));
    Ok(UwlMaxResult {
        k,
        sigma,
        value: best,
        maximizers,
        exhaustive: true,
        subsets_evaluated: total_masks,
    })
}

/// Sampled lower bound on `UWL(k, σ)`: evaluates `samples` pseudo-random
/// subsets (SplitMix64 over `seed`, reproducible) and reports the best
/// value found, flagged as non-exhaustive.
pub fn uwl_max_sampled(
    k: usize,
    sigma: usize,
    samples: u64,
    seed: u64,
    limits: &Limits,
) -> Result<UwlMaxResult> {
    let (alphabet, words) = universe(k, sigma)?;
    if words.len() > 63 {
        return Err(Error::invalid(format!(
            "Σ^{{≤{k}}} over {sigma} symbols has {} words; subsets no longer fit a 64-bit mask",
            words.len()
        )));
    }
    let mask_bits = words.len();
    let mut state = seed;
    let mut next = move || {
        // SplitMix64
        state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    };
    let mut best = 0usize;
    let mut argmax: Vec<u64> = Vec::new();
    for _ in 0..samples {
        let mask = next() & ((1u64 << mask_bits) - 1);
        let (_, value) = evaluate_mask(&alphabet, &words, mask, limits)?;
        if value > best {
            best = value;
            argmax.clear();
            argmax.push(mask);
        } else if value == best && !argmax.contains(&mask) {
            argmax.push(mask);
        }
    }
    let mut maximizers: Vec<WordSet> = argmax
        .into_iter()
        .map(|mask| evaluate_mask(&alphabet, &words, mask, limits).map(|(set, _)| set))
        .collect::<Result<_>>()?;
    maximizers.sort_by(|x, y| x.words().cmp(y.words()));
    Ok(UwlMaxResult {
        k,
        sigma,
        value: best,
        maximizers,
        exhaustive: false,
        subsets_evaluated: samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::binary()
    }

    fn w(s: &str) -> Word {
        ab().parse_word(s).unwrap()
    }

    fn set(words: &[&str]) -> WordSet {
        WordSet::new(ab(), words.iter().map(|s| w(s))).unwrap()
    }

    #[test]
    fn cover_oracle_examples() {
        let s = set(&["ab", "ba"]);
        assert!(cover_oracle(&s, &w("aa"))); // b|aa|b from ba·ab
        assert!(!cover_oracle(&s, &w("aaa")));
        assert!(cover_oracle(&s, &Word::empty()));
    }

    #[test]
    fn cover_oracle_empty_set() {
        let empty = WordSet::new(ab(), vec![]).unwrap();
        assert!(cover_oracle(&empty, &Word::empty()));
        assert!(!cover_oracle(&empty, &w("a")));
    }

    #[test]
    fn cover_oracle_containment_rule() {
        let s = set(&["aabba"]);
        assert!(cover_oracle(&s, &w("abb"))); // strictly inside one word
        assert!(cover_oracle(&s, &w("baa"))); // across the seam aabba|aabba
    }

    #[test]
    fn naive_oracle_examples() {
        let s = set(&["ab"]);
        assert_eq!(naive_oracle(&s, &w("ba"), 2).unwrap(), true);
        assert_eq!(naive_oracle(&s, &w("aa"), 4).unwrap(), false);
        assert_eq!(naive_oracle(&s, &Word::empty(), 1).unwrap(), true);
        assert!(naive_oracle(&s, &w("aa"), 0).is_err());
    }

    #[test]
    fn uwl_bruteforce_examples() {
        let just_a = set(&["a"]);
        assert_eq!(
            uwl_bruteforce(&just_a, 3).unwrap(),
            BruteForceVerdict::UncompletableAt {
                length: 1,
                witness: w("b")
            }
        );
        let prop2 = set(&["aa", "ba", "bb"]);
        assert_eq!(
            uwl_bruteforce(&prop2, 6).unwrap(),
            BruteForceVerdict::UncompletableAt {
                length: 5,
                witness: w("abaab")
            }
        );
        let complete = set(&["a", "b"]);
        assert_eq!(
            uwl_bruteforce(&complete, 5).unwrap(),
            BruteForceVerdict::CompleteUpTo { max_len: 5 }
        );
    }

    #[test]
    fn uwl_bruteforce_guard() {
        let s = set(&["a"]);
        assert!(matches!(
            uwl_bruteforce(&s, 40),
            Err(Error::ResourceLimit { .. })
        ));
    }

    #[test]
    fn uwl_max_k1() {
        let result = uwl_max_exhaustive(1, 2, &Limits::default()).unwrap();
        assert_eq!(result.value, 1);
        assert!(result.exhaustive);
        assert_eq!(result.subsets_evaluated, 4);
        // ∅, {a}, {b} all miss some single letter
        assert_eq!(result.maximizers.len(), 3);
        assert!(result.maximizers.iter().any(|s| s.is_empty()));
    }

    #[test]
    fn uwl_max_k2() {
        let result = uwl_max_exhaustive(2, 2, &Limits::default()).unwrap();
        assert_eq!(result.value, 5);
        assert_eq!(result.subsets_evaluated, 64);
        // exactly Σ²∖{ab} and Σ²∖{ba}
        assert_eq!(result.maximizers.len(), 2);
        for m in &result.maximizers {
            assert_eq!(m.len(), 3);
            assert_eq!(m.max_len(), 2);
        }
    }

    #[test]
    fn uwl_max_rejects_oversized_universe() {
        assert!(matches!(
            uwl_max_exhaustive(5, 2, &Limits::default()),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn uwl_max_sampled_is_reproducible_lower_bound() {
        let first = uwl_max_sampled(2, 2, 32, 7, &Limits::default()).unwrap();
        let second = uwl_max_sampled(2, 2, 32, 7, &Limits::default()).unwrap();
        assert_eq!(first.value, second.value);
        assert!(!first.exhaustive);
        assert!(first.value <= 5);
    }
}
