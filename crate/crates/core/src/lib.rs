//! Universal partial words: words over an alphabet extended by a wildcard
//! (the diamond, written `*`) that cover every word of length `n` exactly once.
//!
//! The crate provides the word model and cover relation ([`word`]), frame and
//! period analysis ([`structure`]), exact verification ([`verify`]),
//! refutation rules ([`feasibility`]), explicit constructions
//! ([`construct`]) and an exhaustive search ([`search`]).

pub mod construct;
pub mod error;
pub mod feasibility;
pub mod search;
pub mod structure;
pub mod verify;
pub mod word;

pub use construct::{construct_n4, debruijn_sequence, universal_word, xyz_sequences, XyzSequences};
pub use error::{Error, Result};
pub use feasibility::{
    admissible_diamondicities, check_frame_divisibility, check_parameter_pair, check_parameters,
    diamondicity_bound, expected_length, refute_gcd2, refute_gcd_prime, refute_shape, FeasibilityVerdict,
    Hypotheses, ParameterReport, Rule,
};
pub use search::{canonical_form, estimate_space, search, search_all, Pruning, SearchConfig, SearchResults};
pub use structure::{
    border_lengths, diamondicity_of, frame_has_period, frame_of, is_cyclic, is_pseudocyclic, minimal_frame_root,
    periods_of, relabel, reverse, Diamondicity, Frame, Mark,
};
pub use verify::{coverage_multiplicities, is_trivial_upword, is_universal, verify, verify_full, Accounting, CoverageReport};
pub use word::{
    covered_words, format_partial_word, is_factor, parse_partial_word, windows, word_rank, word_unrank, Alphabet,
    Character, PartialWord, WordContext,
};
