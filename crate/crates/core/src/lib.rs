//! Core algorithms for cyclic equalizability of words.
//!
//! Two words of equal length are *cyclically equalizable* when inserting the
//! same strings at the same positions into both transforms them into words
//! that are cyclic shifts of one another. The property holds exactly when the
//! two words have the same Parikh vector, and this crate provides:
//!
//! - [`word`]: words, Parikh vectors, cyclic shifts, step readings, and
//!   columnwise interleaving;
//! - [`insertion`]: simultaneous insertions, distinguished positions, and
//!   independently checkable equalization certificates;
//! - [`equalizer`]: the constructive pipeline that turns any pair of
//!   Abelian-equivalent words into a verified certificate;
//! - [`oracle`]: an exhaustive bounded search used to cross-validate the
//!   construction on small instances and to find minimal witnesses.
//!
//! The crate is `no_std` compatible (it requires `alloc`). Parsing, file
//! formats, and the command-line front end live in the companion `cyceq`
//! crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod alphabet;
pub mod equalizer;
pub mod insertion;
pub mod oracle;
pub mod word;

pub use alphabet::{Alphabet, TokenError};
pub use equalizer::{
    build_cycle_words, distinct_letter_lift, equalize, normalize, BlockGroupGeometry, Construction,
    Cycle, CycleWordsPair, EqualizationError, Equalization, LetterLift, Normalization, Permutation,
};
pub use insertion::{
    apply_insertion, find_common_insertion, insertion_from_positions, verify_certificate,
    CertificateFault, DistinguishedPositions, EqualizationCertificate, InsertionError,
    SimultaneousInsertion, Verdict,
};
pub use oracle::{
    brute_force_equalize, brute_force_equalize_partitioned, default_insertion_alphabet,
    exhaustive_theorem_sweep, OracleError, OracleResult, OracleWitness, SearchBudget,
    SweepCounterexample, SweepReport, DEFAULT_NODE_LIMIT,
};
pub use word::{CyclicOffset, Letter, ParikhVector, Word, WordError};
