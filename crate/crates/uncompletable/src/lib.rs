//! Completeness of finite sets of words.
//!
//! A finite set `S` of words over an alphabet `Σ` is *complete* when
//! `Fact(S*) = Σ*`, i.e. every word occurs as a contiguous factor of some
//! concatenation of words of `S`. When `S` is not complete, the shortest
//! words outside `Fact(S*)` are its *minimal uncompletable words*, and
//! `uwl(S)` denotes their length (0 for complete sets).
//!
//! The crate decides completeness exactly and computes minimal
//! uncompletable words by lazy subset determinization of a flower-trie
//! automaton for `S*` ([`automaton`], [`search`]), cross-checked by
//! independent brute-force oracles ([`oracle`]), with structural analysis
//! of the witnesses and the parametrized families that realize the known
//! length records ([`words`], [`analysis`]).
//!
//! ```
//! use uncompletable::prelude::*;
//!
//! let set = WordSet::parse("@alphabet ab\naa\nba\nbb\n").unwrap();
//! let result = search_word_set(&set, &Limits::default()).unwrap();
//! match result.verdict {
//!     Verdict::Uncompletable { length, ref witness } => {
//!         assert_eq!(length, 5);
//!         assert_eq!(set.alphabet().render(witness), "abaab");
//!     }
//!     Verdict::Complete => unreachable!("some short word avoids Fact(S*)"),
//! }
//! ```

pub mod analysis;
pub mod automaton;
pub mod error;
pub mod oracle;
pub mod search;
pub mod words;

pub use error::{Error, Result};

/// The handful of names almost every user needs.
pub mod prelude {
    pub use crate::automaton::{build_star_trie, initial_subset, step, SubsetState, TrieAutomaton};
    pub use crate::error::{Error, Result};
    pub use crate::search::{
        is_complete, is_factor, search_word_set, shortest_uncompletable, uwl, Limits, SearchResult,
        Verdict,
    };
    pub use crate::words::{borders, is_unbordered, Alphabet, Word, WordSet};
}
