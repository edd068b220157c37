//! Parametrized word-set families with known uncompletable-word lengths,
//! and the hand-built witness words that realize them.
//!
//! All families live over the binary alphabet `{a, b}` with `a < b`,
//! except [`family_full_minus`], which accepts any alphabet.

use super::{Alphabet, Word, WordSet};
use crate::error::{Error, Result};

const A: u8 = 0;
const B: u8 = 1;

fn rep(symbol: u8, count: usize) -> Vec<u8> {
    vec![symbol; count]
}

fn word(parts: &[&[u8]]) -> Word {
    Word::from_indices(parts.concat())
}

/// All words of length exactly `k` over `alphabet`, in lex order.
fn all_words_of_len(alphabet: &Alphabet, k: usize) -> Vec<Word> {
    let sigma = alphabet.size();
    let mut out = Vec::new();
    let mut current = vec![0u8; k];
    loop {
        out.push(Word::from_indices(current.clone()));
        // odometer increment, most significant digit first
        let mut pos = k;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            if (current[pos] as usize) + 1 < sigma {
                current[pos] += 1;
                current[pos + 1..].fill(0);
                break;
            }
        }
    }
}

/// `Σᵏ ∖ {u}`: every word of length `k` except `u`.
///
/// Such a set is never complete, and when `u` is unbordered its shortest
/// uncompletable word has length `k² + k − 1`.
pub fn family_full_minus(alphabet: &Alphabet, k: usize, u: &Word) -> Result<WordSet> {
    if u.len() != k {
        return Err(Error::invalid(format!(
            "excluded word has length {}, expected k = {k}",
            u.len()
        )));
    }
    if k < 2 {
        return Err(Error::invalid("k must be at least 2"));
    }
    if !alphabet.admits(u) {
        return Err(Error::invalid("excluded word is not over the given alphabet"));
    }
    let total = (alphabet.size() as f64).powi(k as i32);
    if total > 1e7 {
        return Err(Error::invalid(format!(
            "Σ^{k} has {total:.0} words; refusing to materialize more than 10^7"
        )));
    }
    let words = all_words_of_len(alphabet, k)
        .into_iter()
        .filter(|w| w != u);
    WordSet::new(alphabet.clone(), words)
}

/// The 21-word set `Σ⁴ ∖ {aabb} ∪ {ab, ba, aba, baa, bab, bba}`.
///
/// Its shortest uncompletable word has length 25, beating the
/// `k² + k − 1 = 19` achieved by `Σ⁴ ∖ {aabb}` alone.
pub fn family_s4() -> WordSet {
    let ab = Alphabet::binary();
    let u = word(&[&[A, A, B, B]]);
    let mut words: Vec<Word> = all_words_of_len(&ab, 4)
        .into_iter()
        .filter(|w| *w != u)
        .collect();
    words.extend([
        word(&[&[A, B]]),
        word(&[&[B, A]]),
        word(&[&[A, B, A]]),
        word(&[&[B, A, A]]),
        word(&[&[B, A, B]]),
        word(&[&[B, B, A]]),
    ]);
    WordSet::new(ab, words).expect("hard-coded family is well-formed")
}

/// `S_k = Σᵏ ∖ {a^{k−2}bb} ∪ Σba^{k−4}Σ ∪ Σba ∪ J_k` where
/// `J_k = ⋃_{i=1}^{k−3} (ba^iΣ ∪ a^i b)`, for `k ≥ 5`.
///
/// Its shortest uncompletable word has length `2k² − 2k + 1`.
pub fn family_sk(k: usize) -> Result<WordSet> {
    if k < 5 {
        return Err(Error::invalid(format!(
            "family requires k >= 5 (the exponent k-4 must be positive), got {k}"
        )));
    }
    let ab = Alphabet::binary();
    let u = word(&[&rep(A, k - 2), &[B, B]]);
    let mut words: Vec<Word> = all_words_of_len(&ab, k)
        .into_iter()
        .filter(|w| *w != u)
        .collect();
    for x in [A, B] {
        for y in [A, B] {
            // x b a^{k-4} y
            words.push(word(&[&[x, B], &rep(A, k - 4), &[y]]));
        }
        // x b a
        words.push(word(&[&[x, B, A]]));
    }
    for i in 1..=k - 3 {
        for y in [A, B] {
            // b a^i y
            words.push(word(&[&[B], &rep(A, i), &[y]]));
        }
        // a^i b
        words.push(word(&[&rep(A, i), &[B]]));
    }
    WordSet::new(ab, words)
}

/// `S'_k = S_k ∪ {b⁴}`, for `k ≥ 7`.
///
/// Adding the single word `bbbb` pushes the shortest uncompletable length
/// up to `3k² − 9k + 1`, which exceeds `2k²` from `k = 9` on.
pub fn family_sk_prime(k: usize) -> Result<WordSet> {
    if k < 7 {
        return Err(Error::invalid(format!(
            "family requires k >= 7 (its witness uses the exponent k-5 and k-6 repetitions), got {k}"
        )));
    }
    let base = family_sk(k)?;
    let with_b4 = base
        .words()
        .iter()
        .cloned()
        .chain([word(&[&rep(B, 4)])]);
    WordSet::new(Alphabet::binary(), with_b4)
}

/// The word `(ua)^{k−1} u` with `k = |u|`; its length is `k² + k − 1`.
///
/// Whenever no element of a set `S` with maximal word length `k` is a
/// factor of `u`, this word is uncompletable for `S`.
pub fn power_witness(u: &Word, a: &Word) -> Result<Word> {
    if a.len() != 1 {
        return Err(Error::invalid(format!(
            "separator must be a single symbol, got length {}",
            a.len()
        )));
    }
    let k = u.len();
    if k < 2 {
        return Err(Error::invalid("anchor word must have length at least 2"));
    }
    let mut out = Vec::with_capacity(k * k + k - 1);
    for _ in 0..k - 1 {
        out.extend_from_slice(u.symbols());
        out.extend_from_slice(a.symbols());
    }
    out.extend_from_slice(u.symbols());
    Ok(Word::from_indices(out))
}

/// The shortest uncompletable word for [`family_sk`]:
/// `u a^{k−1} u ba^{k−2} (u b²a^{k−3})^{k−3} u` with `u = a^{k−2}bb`.
/// Its length is `2k² − 2k + 1`.
pub fn sk_witness(k: usize) -> Result<Word> {
    if k < 5 {
        return Err(Error::invalid(format!("witness requires k >= 5, got {k}")));
    }
    let u: Vec<u8> = [rep(A, k - 2), vec![B, B]].concat();
    let mut out: Vec<u8> = Vec::with_capacity(2 * k * k - 2 * k + 1);
    out.extend_from_slice(&u);
    out.extend_from_slice(&rep(A, k - 1));
    out.extend_from_slice(&u);
    out.push(B);
    out.extend_from_slice(&rep(A, k - 2));
    for _ in 0..k - 3 {
        out.extend_from_slice(&u);
        out.extend_from_slice(&[B, B]);
        out.extend_from_slice(&rep(A, k - 3));
    }
    out.extend_from_slice(&u);
    Ok(Word::from_indices(out))
}

/// The shortest uncompletable word for [`family_sk_prime`]:
/// `u a^{k−1} u ba^{k−4} (u ba u b²a^{k−5})^{k−6} u ab u b²a^{k−3} u ba^{k−3} u`
/// with `u = a^{k−2}bb`. Its length is `3k² − 9k + 1`, and `u` occurs in it
/// exactly `2k − 6` times.
pub fn sk_prime_witness(k: usize) -> Result<Word> {
    if k < 7 {
        return Err(Error::invalid(format!("witness requires k >= 7, got {k}")));
    }
    let u: Vec<u8> = [rep(A, k - 2), vec![B, B]].concat();
    let mut out: Vec<u8> = Vec::with_capacity(3 * k * k + 1 - 9 * k);
    out.extend_from_slice(&u);
    out.extend_from_slice(&rep(A, k - 1));
    out.extend_from_slice(&u);
    out.push(B);
    out.extend_from_slice(&rep(A, k - 4));
    for _ in 0..k - 6 {
        out.extend_from_slice(&u);
        out.extend_from_slice(&[B, A]);
        out.extend_from_slice(&u);
        out.extend_from_slice(&[B, B]);
        out.extend_from_slice(&rep(A, k - 5));
    }
    out.extend_from_slice(&u);
    out.extend_from_slice(&[A, B]);
    out.extend_from_slice(&u);
    out.extend_from_slice(&[B, B]);
    out.extend_from_slice(&rep(A, k - 3));
    out.extend_from_slice(&u);
    out.push(B);
    out.extend_from_slice(&rep(A, k - 3));
    out.extend_from_slice(&u);
    Ok(Word::from_indices(out))
}

/// A second shortest uncompletable word for `S₅ =` [`family_sk`]`(5)`:
/// `(a³bb) aaaa (a³bb) baa (a³bb) bbabaa (a³bb) baa (a³bb)`, length 41.
///
/// Unlike the gaps of [`sk_witness`]`(5)`, its third gap `bbabaa` is
/// longer than `k = 5`: minimal witnesses need not keep all gaps short.
pub fn s5_long_gap_witness() -> Word {
    let u: &[u8] = &[A, A, A, B, B];
    word(&[
        u,
        &[A, A, A, A],
        u,
        &[B, A, A],
        u,
        &[B, B, A, B, A, A],
        u,
        &[B, A, A],
        u,
    ])
}
