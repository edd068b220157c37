//! Lazy subset determinization over the factor automaton: membership in
//! `Fact(S*)`, completeness, and the exact shortest uncompletable word.
//!
//! The search runs a FIFO breadth-first traversal from the all-states
//! subset, memoizing every subset it meets and expanding symbols in
//! alphabet order. Reaching the empty subset on some path spells a word
//! that is not a factor of any `S*`-word; the first arrival is therefore
//! the lexicographically least among the shortest uncompletable words.
//! Exhausting the reachable subsets without meeting ∅ proves completeness.

use std::collections::HashMap;
use std::rc::Rc;
use std::time::{Duration, Instant};

use crate::automaton::{build_star_trie, initial_subset, TrieAutomaton};
use crate::error::{Error, Result};
use crate::words::{Word, WordSet};

/// Budgets for a single search. Exceeding one is an error, never a wrong
/// answer.
#[derive(Debug, Clone)]
pub struct Limits {
    /// Maximum number of distinct subsets stored.
    pub max_subsets: usize,
    /// Wall-clock budget.
    pub timeout: Option<Duration>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_subsets: 50_000_000,
            timeout: Some(Duration::from_secs(3600)),
        }
    }
}

impl Limits {
    pub fn with_max_subsets(max_subsets: usize) -> Self {
        Limits {
            max_subsets,
            ..Limits::default()
        }
    }
}

/// Outcome of a completeness search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// `Fact(S*) = Σ*`: the empty subset is unreachable.
    Complete,
    /// A word outside `Fact(S*)` exists; `witness` is the
    /// lexicographically least among the shortest ones.
    Uncompletable { length: usize, witness: Word },
}

impl Verdict {
    pub fn is_complete(&self) -> bool {
        matches!(self, Verdict::Complete)
    }

    /// Minimal uncompletable length, with 0 encoding completeness.
    pub fn uwl(&self) -> usize {
        match self {
            Verdict::Complete => 0,
            Verdict::Uncompletable { length, .. } => *length,
        }
    }
}

/// Search counters, reported alongside every verdict.
#[derive(Debug, Clone, Default)]
pub struct SearchStats {
    /// Distinct nonempty subsets stored.
    pub subsets_explored: usize,
    /// Largest single BFS layer.
    pub peak_frontier: usize,
    /// Sizes of the BFS layers in order (layer 0 is the initial subset).
    pub layer_sizes: Vec<usize>,
    pub elapsed: Duration,
}

#[derive(Debug, Clone)]
pub struct SearchResult {
    pub verdict: Verdict,
    pub stats: SearchStats,
}

/// True iff `word` is a factor of some word of `S*`: fold the determinized
/// transition over `word` starting from the all-states subset and test for
/// nonemptiness.
pub fn is_factor(automaton: &TrieAutomaton, word: &Word) -> bool {
    debug_assert!(
        word.symbols()
            .iter()
            .all(|&s| (s as usize) < automaton.alphabet().size()),
        "word must be over the automaton's alphabet"
    );
    let blocks = automaton.blocks();
    let mut current = initial_subset(automaton).as_blocks().to_vec();
    let mut next = vec![0u64; blocks];
    for &symbol in word.symbols() {
        if symbol as usize >= automaton.alphabet().size() {
            return false;
        }
        automaton.step_raw(&current, symbol, &mut next);
        std::mem::swap(&mut current, &mut next);
        if current.iter().all(|&b| b == 0) {
            return false;
        }
    }
    true
}

/// BFS to the empty subset: the exact minimal uncompletable length and its
/// lexicographically least witness, or the certainty that none exists.
pub fn shortest_uncompletable(automaton: &TrieAutomaton, limits: &Limits) -> Result<SearchResult> {
    let start = Instant::now();
    let sigma = automaton.alphabet().size() as u8;
    let blocks = automaton.blocks();

    // subsets interned once: ids are assigned in discovery order, so each
    // BFS layer is a contiguous id range and the queue is implicit
    let mut ids: HashMap<Rc<[u64]>, u32> = HashMap::new();
    let mut arena: Vec<Rc<[u64]>> = Vec::new();
    let mut parents: Vec<(u32, u8)> = Vec::new();

    let root: Rc<[u64]> = initial_subset(automaton).as_blocks().into();
    ids.insert(root.clone(), 0);
    arena.push(root);
    parents.push((u32::MAX, 0));

    let mut stats = SearchStats {
        subsets_explored: 1,
        peak_frontier: 1,
        layer_sizes: vec![1],
        elapsed: Duration::ZERO,
    };

    let reconstruct = |parents: &[(u32, u8)], last_id: u32, final_symbol: u8| {
        let mut symbols = vec![final_symbol];
        let mut node = last_id;
        while node != 0 {
            let (parent, symbol) = parents[node as usize];
            symbols.push(symbol);
            node = parent;
        }
        symbols.reverse();
        Word::from_indices(symbols)
    };

    let mut scratch = vec![0u64; blocks];
    let mut layer_start = 0usize;
    let mut layer_end = 1usize;
    let mut depth = 0usize;
    let mut ticks = 0u32;

    while layer_start < layer_end {
        depth += 1;
        for id in layer_start..layer_end {
            ticks += 1;
            if ticks & 0x3ff == 0 {
                if let Some(timeout) = limits.timeout {
                    if start.elapsed() > timeout {
                        return Err(Error::ResourceLimit {
                            what: format!("timeout of {:.1?} at depth {depth}", timeout),
                            explored: arena.len() as u64,
                            elapsed_ms: start.elapsed().as_millis() as u64,
                        });
                    }
                }
            }
            let state = arena[id].clone();
            for symbol in 0..sigma {
                automaton.step_raw(&state, symbol, &mut scratch);
                if scratch.iter().all(|&b| b == 0) {
                    stats.subsets_explored = arena.len();
                    stats.elapsed = start.elapsed();
                    let witness = reconstruct(&parents, id as u32, symbol);
                    debug_assert_eq!(witness.len(), depth);
                    return Ok(SearchResult {
                        verdict: Verdict::Uncompletable {
                            length: depth,
                            witness,
                        },
                        stats,
                    });
                }
                if !ids.contains_key(scratch.as_slice()) {
                    if arena.len() >= limits.max_subsets {
                        return Err(Error::ResourceLimit {
                            what: format!("subset budget of {} at depth {depth}", limits.max_subsets),
                            explored: arena.len() as u64,
                            elapsed_ms: start.elapsed().as_millis() as u64,
                        });
                    }
                    let interned: Rc<[u64]> = scratch.as_slice().into();
                    ids.insert(interned.clone(), arena.len() as u32);
                    parents.push((id as u32, symbol));
                    arena.push(interned);
                }
            }
        }
        layer_start = layer_end;
        layer_end = arena.len();
        let layer = layer_end - layer_start;
        if layer > 0 {
            stats.layer_sizes.push(layer);
        }
        stats.peak_frontier = stats.peak_frontier.max(layer);
    }

    stats.subsets_explored = arena.len();
    stats.elapsed = start.elapsed();
    Ok(SearchResult {
        verdict: Verdict::Complete,
        stats,
    })
}

/// Builds the automaton for `set` and runs [`shortest_uncompletable`].
pub fn search_word_set(set: &WordSet, limits: &Limits) -> Result<SearchResult> {
    let automaton = build_star_trie(set);
    shortest_uncompletable(&automaton, limits)
}

/// The minimal uncompletable length of `set`, 0 when the set is complete.
pub fn uwl(set: &WordSet, limits: &Limits) -> Result<usize> {
    Ok(search_word_set(set, limits)?.verdict.uwl())
}

/// True iff `Fact(S*) = Σ*`.
pub fn is_complete(set: &WordSet, limits: &Limits) -> Result<bool> {
    Ok(search_word_set(set, limits)?.verdict.is_complete())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{family_full_minus, family_s4, Alphabet};

    fn ab() -> Alphabet {
        Alphabet::binary()
    }

    fn w(s: &str) -> Word {
        ab().parse_word(s).unwrap()
    }

    fn set(words: &[&str]) -> WordSet {
        WordSet::new(ab(), words.iter().map(|s| w(s))).unwrap()
    }

    fn run(words: &[&str]) -> SearchResult {
        search_word_set(&set(words), &Limits::default()).unwrap()
    }

    #[test]
    fn single_letter_set_misses_the_other_letter() {
        let result = run(&["a"]);
        assert_eq!(
            result.verdict,
            Verdict::Uncompletable {
                length: 1,
                witness: w("b")
            }
        );
    }

    #[test]
    fn both_letters_complete() {
        let result = run(&["a", "b"]);
        assert!(result.verdict.is_complete());
        assert_eq!(result.verdict.uwl(), 0);
    }

    #[test]
    fn sigma2_minus_ab() {
        // Σ² ∖ {ab} = {aa, ba, bb}: minimal length k²+k−1 = 5
        let result = run(&["aa", "ba", "bb"]);
        match &result.verdict {
            Verdict::Uncompletable { length, witness } => {
                assert_eq!(*length, 5);
                assert_eq!(ab().render(witness), "abaab");
            }
            other => panic!("expected uncompletable, got {other:?}"),
        }
    }

    #[test]
    fn empty_set_has_uwl_one() {
        let empty = WordSet::new(ab(), vec![]).unwrap();
        let result = search_word_set(&empty, &Limits::default()).unwrap();
        assert_eq!(
            result.verdict,
            Verdict::Uncompletable {
                length: 1,
                witness: w("a")
            }
        );
    }

    #[test]
    fn pair_ab_only_misses_aa() {
        // Fact((ab)*) never contains aa
        let result = run(&["ab"]);
        assert_eq!(
            result.verdict,
            Verdict::Uncompletable {
                length: 2,
                witness: w("aa")
            }
        );
    }

    #[test]
    fn unary_alphabet() {
        let unary = Alphabet::new("a".chars()).unwrap();
        let aa = WordSet::new(unary.clone(), vec![unary.parse_word("aa").unwrap()]).unwrap();
        assert!(is_complete(&aa, &Limits::default()).unwrap());
        let empty = WordSet::new(unary, vec![]).unwrap();
        assert_eq!(uwl(&empty, &Limits::default()).unwrap(), 1);
    }

    #[test]
    fn is_factor_examples() {
        let automaton = build_star_trie(&set(&["ab", "ba"]));
        assert!(is_factor(&automaton, &w("aa"))); // b·aa·b from ba·ab
        assert!(!is_factor(&automaton, &w("aaa")));
        assert!(is_factor(&automaton, &Word::empty()));
        let automaton = build_star_trie(&set(&["ab"]));
        assert!(is_factor(&automaton, &w("ba")));
        assert!(!is_factor(&automaton, &w("aa")));
    }

    #[test]
    fn uwl_of_s4_is_25() {
        assert_eq!(uwl(&family_s4(), &Limits::default()).unwrap(), 25);
    }

    #[test]
    fn uwl_of_full_minus_matches_quadratic() {
        for (k, expected) in [(2, 5), (3, 11), (4, 19)] {
            let u = Word::from_indices([vec![0; k - 1], vec![1]].concat());
            let family = family_full_minus(&ab(), k, &u).unwrap();
            assert_eq!(uwl(&family, &Limits::default()).unwrap(), expected, "k={k}");
        }
    }

    #[test]
    fn witness_is_deterministic() {
        let first = run(&["aa", "ba", "bb"]);
        let second = run(&["aa", "ba", "bb"]);
        assert_eq!(first.verdict, second.verdict);
    }

    #[test]
    fn factor_closedness_on_samples() {
        let automaton = build_star_trie(&family_s4());
        for sample in ["aabbaaab", "bbbaabba", "abababab"] {
            let word = w(sample);
            if is_factor(&automaton, &word) {
                for start in 0..word.len() {
                    for end in start..=word.len() {
                        assert!(is_factor(&automaton, &word.slice(start, end)));
                    }
                }
            }
        }
    }

    #[test]
    fn subset_budget_errors_out() {
        let limits = Limits {
            max_subsets: 3,
            timeout: None,
        };
        let err = search_word_set(&family_s4(), &limits).unwrap_err();
        match err {
            Error::ResourceLimit { explored, .. } => assert!(explored >= 3),
            other => panic!("expected resource limit, got {other}"),
        }
    }

    #[test]
    fn timeout_errors_out() {
        let limits = Limits {
            max_subsets: usize::MAX,
            timeout: Some(Duration::ZERO),
        };
        // big enough that at least one tick check happens
        let sk = crate::words::family_sk(7).unwrap();
        let err = search_word_set(&sk, &limits).unwrap_err();
        assert!(matches!(err, Error::ResourceLimit { .. }));
    }

    #[test]
    fn stats_are_populated() {
        let result = run(&["aa", "ba", "bb"]);
        assert!(result.stats.subsets_explored >= 4);
        assert!(result.stats.peak_frontier >= 1);
        assert_eq!(result.stats.layer_sizes[0], 1);
        assert!(!result.stats.layer_sizes.is_empty());
    }

    #[test]
    fn concurrent_searches_share_one_automaton() {
        let automaton = build_star_trie(&family_s4());
        let verdicts: Vec<Verdict> = std::thread::scope(|scope| {
            (0..4)
                .map(|_| {
                    scope.spawn(|| {
                        shortest_uncompletable(&automaton, &Limits::default())
                            .unwrap()
                            .verdict
                    })
                })
                .collect::<Vec<_>>()
                .into_iter()
                .map(|handle| handle.join().unwrap())
                .collect()
        });
        for verdict in &verdicts {
            assert_eq!(verdict, &verdicts[0]);
            assert_eq!(verdict.uwl(), 25);
        }
    }
}
