//! The nondeterministic flower-trie automaton recognizing `S*`, read with
//! all states initial and final to recognize `Fact(S*)`.
//!
//! States are the proper prefixes of words of `S` (node 0 is the root ε).
//! On symbol `x`, a node for prefix `p` moves to the node for `px` when
//! `px` is again a proper prefix, and to the root when `px` is a full word
//! of `S` — word-completion edges return to the root directly, so there
//! are no epsilon transitions and a transition step is a single pass.
//! Paths root→root spell exactly the words of `S*`.

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::words::{Alphabet, Word, WordSet};

pub type NodeId = u32;

/// Immutable flower-trie automaton for a word set.
#[derive(Debug, Clone)]
pub struct TrieAutomaton {
    alphabet: Alphabet,
    sigma: usize,
    /// `child[node * sigma + x]`: node for the extended prefix, if it is
    /// again a proper prefix of some word of `S`.
    child: Vec<Option<NodeId>>,
    /// `completes[node * sigma + x]`: true iff prefix(node)·x ∈ S, i.e.
    /// the transition also returns to the root.
    completes: Vec<bool>,
    /// Node labels: prefix words in BFS order (root first).
    prefixes: Vec<Word>,
}

/// Builds the flower-trie automaton for `S*`.
///
/// Node count is `1 +` the number of distinct nonempty proper prefixes of
/// words of `S`; prefixes shared between words map to a single node. The
/// empty set yields the lone root with no transitions (`S* = {ε}`).
pub fn build_star_trie(set: &WordSet) -> TrieAutomaton {
    let sigma = set.alphabet().size();

    // temporary trie in insertion order
    let mut children: Vec<Vec<Option<usize>>> = vec![vec![None; sigma]];
    let mut completes: Vec<Vec<bool>> = vec![vec![false; sigma]];
    for word in set.words() {
        let mut node = 0usize;
        let symbols = word.symbols();
        for (i, &sym) in symbols.iter().enumerate() {
            let sym = sym as usize;
            if i + 1 == symbols.len() {
                completes[node][sym] = true;
            } else {
                node = match children[node][sym] {
                    Some(next) => next,
                    None => {
                        children.push(vec![None; sigma]);
                        completes.push(vec![false; sigma]);
                        let next = children.len() - 1;
                        children[node][sym] = Some(next);
                        next
                    }
                };
            }
        }
    }

    // renumber breadth-first, symbols in alphabet order
    let n = children.len();
    let mut old_to_new = vec![u32::MAX; n];
    let mut new_to_old = Vec::with_capacity(n);
    let mut queue = VecDeque::new();
    old_to_new[0] = 0;
    new_to_old.push(0usize);
    queue.push_back(0usize);
    while let Some(old) = queue.pop_front() {
        for sym in 0..sigma {
            if let Some(next) = children[old][sym] {
                if old_to_new[next] == u32::MAX {
                    old_to_new[next] = new_to_old.len() as u32;
                    new_to_old.push(next);
                    queue.push_back(next);
                }
            }
        }
    }
    debug_assert_eq!(new_to_old.len(), n);

    let mut child = vec![None; n * sigma];
    let mut comp = vec![false; n * sigma];
    let mut prefixes = vec![Word::empty(); n];
    for (new, &old) in new_to_old.iter().enumerate() {
        for sym in 0..sigma {
            if let Some(next) = children[old][sym] {
                child[new * sigma + sym] = Some(old_to_new[next]);
                let mut prefix = prefixes[new].clone();
                prefix.push(sym as u8);
                prefixes[old_to_new[next] as usize] = prefix;
            }
            comp[new * sigma + sym] = completes[old][sym];
        }
    }

    TrieAutomaton {
        alphabet: set.alphabet().clone(),
        sigma,
        child,
        completes: comp,
        prefixes,
    }
}

impl TrieAutomaton {
    pub fn node_count(&self) -> usize {
        self.prefixes.len()
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// The proper prefix labeling a node.
    pub fn prefix(&self, node: NodeId) -> &Word {
        &self.prefixes[node as usize]
    }

    /// Trie child on `symbol`, if the extended prefix is still proper.
    pub fn child(&self, node: NodeId, symbol: u8) -> Option<NodeId> {
        self.child[node as usize * self.sigma + symbol as usize]
    }

    /// True iff prefix(node)·symbol is a full word of `S`.
    pub fn completes_word(&self, node: NodeId, symbol: u8) -> bool {
        self.completes[node as usize * self.sigma + symbol as usize]
    }

    /// The successor set of a single node on `symbol` (size ≤ 2).
    pub fn successors(&self, node: NodeId, symbol: u8) -> Vec<NodeId> {
        let mut out = Vec::with_capacity(2);
        if let Some(next) = self.child(node, symbol) {
            out.push(next);
        }
        if self.completes_word(node, symbol) {
            out.push(0);
        }
        out
    }

    /// Number of `u64` blocks a subset over this automaton occupies.
    pub(crate) fn blocks(&self) -> usize {
        self.node_count().div_ceil(64)
    }

    /// One determinized transition on raw bit blocks. `dst` is overwritten.
    pub(crate) fn step_raw(&self, src: &[u64], symbol: u8, dst: &mut [u64]) {
        dst.fill(0);
        let sym = symbol as usize;
        for (block_index, &block) in src.iter().enumerate() {
            let mut bits = block;
            while bits != 0 {
                let node = block_index * 64 + bits.trailing_zeros() as usize;
                bits &= bits - 1;
                if let Some(next) = self.child[node * self.sigma + sym] {
                    dst[next as usize / 64] |= 1u64 << (next % 64);
                }
                if self.completes[node * self.sigma + sym] {
                    dst[0] |= 1;
                }
            }
        }
    }

    /// DOT rendering of the trie for graph viewers; completion edges are
    /// drawn dashed back to the root.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph star_trie {\n  rankdir=LR;\n");
        for (i, prefix) in self.prefixes.iter().enumerate() {
            let label = if prefix.is_empty() {
                "ε".to_string()
            } else {
                self.alphabet.render(prefix)
            };
            let _ = writeln!(out, "  n{i} [label=\"{label}\"];");
        }
        for node in 0..self.node_count() {
            for sym in 0..self.sigma {
                let symbol = self.alphabet.symbol(sym as u8);
                if let Some(next) = self.child[node * self.sigma + sym] {
                    let _ = writeln!(out, "  n{node} -> n{next} [label=\"{symbol}\"];");
                }
                if self.completes[node * self.sigma + sym] {
                    let _ = writeln!(out, "  n{node} -> n0 [label=\"{symbol}\", style=dashed];");
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

/// A set of active trie nodes, as a fixed-width bit vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SubsetState {
    width: usize,
    bits: Box<[u64]>,
}

impl SubsetState {
    /// The empty subset of a given width.
    pub fn empty(width: usize) -> Self {
        SubsetState {
            width,
            bits: vec![0; width.div_ceil(64)].into_boxed_slice(),
        }
    }

    /// Subset containing exactly the given nodes.
    pub fn from_nodes(width: usize, nodes: impl IntoIterator<Item = NodeId>) -> Self {
        let mut state = SubsetState::empty(width);
        for node in nodes {
            assert!((node as usize) < width, "node {node} out of width {width}");
            state.bits[node as usize / 64] |= 1u64 << (node % 64);
        }
        state
    }

    /// Number of bits (= node count of the owning automaton).
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&b| b == 0)
    }

    pub fn contains(&self, node: NodeId) -> bool {
        let node = node as usize;
        node < self.width && self.bits[node / 64] >> (node % 64) & 1 == 1
    }

    pub fn count(&self) -> usize {
        self.bits.iter().map(|b| b.count_ones() as usize).sum()
    }

    /// Bitwise inclusion.
    pub fn is_subset_of(&self, other: &SubsetState) -> bool {
        self.width == other.width
            && self
                .bits
                .iter()
                .zip(other.bits.iter())
                .all(|(&mine, &theirs)| mine & !theirs == 0)
    }

    /// Active nodes in increasing order.
    pub fn iter_nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.width as u32).filter(|&node| self.contains(node))
    }

    pub(crate) fn as_blocks(&self) -> &[u64] {
        &self.bits
    }
}

/// The all-states subset: the start state of the determinized factor
/// automaton ("every trie node is initial").
pub fn initial_subset(automaton: &TrieAutomaton) -> SubsetState {
    let n = automaton.node_count();
    let mut blocks = vec![u64::MAX; automaton.blocks()];
    let extra = automaton.blocks() * 64 - n;
    if extra > 0 {
        *blocks.last_mut().unwrap() >>= extra;
    }
    SubsetState {
        width: n,
        bits: blocks.into_boxed_slice(),
    }
}

/// One determinized transition: the set of successors of `state` on
/// `symbol`. The empty subset is absorbing.
pub fn step(automaton: &TrieAutomaton, state: &SubsetState, symbol: u8) -> Result<SubsetState> {
    if symbol as usize >= automaton.alphabet().size() {
        return Err(Error::invalid(format!(
            "symbol index {symbol} outside the {}-symbol alphabet",
            automaton.alphabet().size()
        )));
    }
    if state.width() != automaton.node_count() {
        return Err(Error::invalid(format!(
            "subset width {} does not match automaton node count {}",
            state.width(),
            automaton.node_count()
        )));
    }
    let mut out = SubsetState::empty(state.width());
    automaton.step_raw(&state.bits, symbol, &mut out.bits);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::family_s4;
    use proptest::prelude::*;

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
    fn single_word_trie() {
        let automaton = build_star_trie(&set(&["ab"]));
        assert_eq!(automaton.node_count(), 2);
        assert_eq!(automaton.prefix(0), &Word::empty());
        assert_eq!(automaton.prefix(1), &w("a"));
        assert_eq!(automaton.successors(0, 0), vec![1]); // ε --a--> a
        assert_eq!(automaton.successors(0, 1), Vec::<NodeId>::new());
        assert_eq!(automaton.successors(1, 1), vec![0]); // a --b--> root (ab ∈ S)
        assert_eq!(automaton.successors(1, 0), Vec::<NodeId>::new());
    }

    #[test]
    fn shared_prefix_is_nondeterministic() {
        // "a" completes a word while also extending toward "ab"
        let automaton = build_star_trie(&set(&["a", "ab"]));
        assert_eq!(automaton.node_count(), 2);
        assert_eq!(automaton.successors(0, 0), vec![1, 0]);
        assert!(automaton.completes_word(0, 0));
        assert_eq!(automaton.child(0, 0), Some(1));
    }

    #[test]
    fn empty_set_is_lone_root() {
        let automaton = build_star_trie(&WordSet::new(ab(), vec![]).unwrap());
        assert_eq!(automaton.node_count(), 1);
        assert_eq!(automaton.successors(0, 0), Vec::<NodeId>::new());
        assert_eq!(automaton.successors(0, 1), Vec::<NodeId>::new());
    }

    #[test]
    fn node_count_bound() {
        // n ≤ 1 + Σ (|w|−1), equality iff no shared nonempty proper prefixes
        let shared = set(&["aab", "aba"]);
        let automaton = build_star_trie(&shared);
        assert_eq!(automaton.node_count(), 4); // ε, a, aa, ab — "a" shared
        let disjoint = set(&["ab", "ba"]);
        assert_eq!(build_star_trie(&disjoint).node_count(), 3);
        for words in [&shared, &disjoint] {
            let bound: usize = 1 + words.words().iter().map(|x| x.len() - 1).sum::<usize>();
            assert!(build_star_trie(words).node_count() <= bound);
        }
    }

    #[test]
    fn bfs_numbering_is_by_level() {
        let automaton = build_star_trie(&family_s4());
        // root, then both length-1 prefixes, then length-2, ...
        let mut last_len = 0;
        for node in 0..automaton.node_count() as NodeId {
            let len = automaton.prefix(node).len();
            assert!(len >= last_len, "prefix lengths must be nondecreasing");
            last_len = len;
        }
        assert_eq!(automaton.prefix(1), &w("a"));
        assert_eq!(automaton.prefix(2), &w("b"));
    }

    #[test]
    fn initial_subset_is_full() {
        for words in [set(&["ab"]), family_s4(), WordSet::new(ab(), vec![]).unwrap()] {
            let automaton = build_star_trie(&words);
            let initial = initial_subset(&automaton);
            assert_eq!(initial.count(), automaton.node_count());
            assert_eq!(initial.width(), automaton.node_count());
        }
    }

    #[test]
    fn step_examples() {
        let automaton = build_star_trie(&set(&["ab"]));
        let initial = initial_subset(&automaton); // {ε, a}
        let after_b = step(&automaton, &initial, 1).unwrap();
        assert_eq!(after_b.iter_nodes().collect::<Vec<_>>(), vec![0]);
        let stuck = step(&automaton, &after_b, 1).unwrap();
        assert!(stuck.is_empty());
        // the empty subset is absorbing
        for sym in 0..2 {
            assert!(step(&automaton, &stuck, sym).unwrap().is_empty());
        }
    }

    #[test]
    fn step_rejects_foreign_symbol_and_width() {
        let automaton = build_star_trie(&set(&["ab"]));
        let initial = initial_subset(&automaton);
        assert!(step(&automaton, &initial, 2).is_err());
        let wrong_width = SubsetState::empty(7);
        assert!(step(&automaton, &wrong_width, 0).is_err());
    }

    #[test]
    fn dot_export_mentions_every_node() {
        let automaton = build_star_trie(&set(&["ab", "ba"]));
        let dot = automaton.to_dot();
        assert!(dot.starts_with("digraph"));
        assert!(dot.contains("label=\"ε\""));
        assert!(dot.contains("style=dashed"));
        for node in 0..automaton.node_count() {
            assert!(dot.contains(&format!("n{node} ")));
        }
    }

    fn all_len_k(k: usize) -> WordSet {
        let words = (0..1u32 << k).map(|bits| {
            Word::from_indices((0..k).map(|p| (bits >> (k - 1 - p) & 1) as u8).collect())
        });
        WordSet::new(ab(), words).unwrap()
    }

    #[test]
    fn full_sigma_k_never_reaches_empty() {
        // Σᵏ is complete; from the full subset every step stays nonempty
        for k in 1..=4usize {
            let automaton = build_star_trie(&all_len_k(k));
            let mut frontier = vec![initial_subset(&automaton)];
            let mut seen = std::collections::HashSet::new();
            seen.insert(frontier[0].clone());
            while let Some(state) = frontier.pop() {
                for sym in 0..2u8 {
                    let next = step(&automaton, &state, sym).unwrap();
                    assert!(!next.is_empty(), "Σ^{k} reached the empty subset");
                    if seen.insert(next.clone()) {
                        frontier.push(next);
                    }
                }
            }
        }
    }

    fn arb_word_set() -> impl Strategy<Value = WordSet> {
        proptest::collection::vec(proptest::collection::vec(0u8..2, 1..=4), 1..=6)
            .prop_map(|words| {
                WordSet::new(ab(), words.into_iter().map(Word::from_indices)).unwrap()
            })
    }

    proptest! {
        #[test]
        fn step_is_monotone_in_subset_inclusion(
            words in arb_word_set(),
            picks in proptest::collection::vec(any::<bool>(), 64),
            extra in proptest::collection::vec(any::<bool>(), 64),
            sym in 0u8..2,
        ) {
            let automaton = build_star_trie(&words);
            let n = automaton.node_count();
            let small = SubsetState::from_nodes(
                n,
                (0..n as NodeId).filter(|&i| picks[i as usize % 64]),
            );
            let large = SubsetState::from_nodes(
                n,
                (0..n as NodeId).filter(|&i| picks[i as usize % 64] || extra[i as usize % 64]),
            );
            prop_assert!(small.is_subset_of(&large));
            let small_next = step(&automaton, &small, sym).unwrap();
            let large_next = step(&automaton, &large, sym).unwrap();
            prop_assert!(small_next.is_subset_of(&large_next));
        }

        #[test]
        fn step_distributes_over_singletons(
            words in arb_word_set(),
            sym in 0u8..2,
        ) {
            // the image of a subset is the union of the images of its nodes
            let automaton = build_star_trie(&words);
            let n = automaton.node_count();
            let full = initial_subset(&automaton);
            let stepped = step(&automaton, &full, sym).unwrap();
            let mut union = SubsetState::empty(n);
            for node in 0..n as NodeId {
                let single = SubsetState::from_nodes(n, [node]);
                let image = step(&automaton, &single, sym).unwrap();
                union = SubsetState::from_nodes(
                    n,
                    union.iter_nodes().chain(image.iter_nodes()),
                );
            }
            prop_assert_eq!(stepped, union);
        }
    }
}
