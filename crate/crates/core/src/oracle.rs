//! Exhaustive bounded search for simultaneous insertions.
//!
//! Independent of the constructive pipeline: it enumerates every way to
//! insert up to a budgeted number of letters into the gaps of both words and
//! tests the expanded words for cyclic equivalence directly. On small
//! instances this cross-validates both directions of the Parikh-vector
//! characterization and finds witnesses of minimal total insertion length.
//!
//! The enumeration order is fixed — insertion totals ascending, then gap
//! distributions in lexicographic order, then inserted letters in alphabet
//! order — so results are deterministic. The search space can be split into
//! partitions that each report their earliest hit; a reducer keeps the
//! globally earliest, so the result does not depend on the partition count.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::equalizer::{equalize, EqualizationError};
use crate::insertion::{
    apply_insertion, verify_certificate, CertificateFault, DistinguishedPositions,
    EqualizationCertificate, SimultaneousInsertion, Verdict,
};
use crate::word::{Letter, Word};

/// Default cap on enumerated candidate insertions.
pub const DEFAULT_NODE_LIMIT: u64 = 100_000_000;

/// Bounds for the brute-force search: the total number of letters that may
/// be inserted, the letters allowed for insertion, and a cap on how many
/// candidates the search may enumerate before refusing the job outright.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SearchBudget {
    max_inserted: usize,
    alphabet: Vec<Letter>,
    node_limit: u64,
}

impl SearchBudget {
    /// Builds a budget; duplicate alphabet letters are dropped, keeping the
    /// first occurrence. A positive budget needs a non-empty alphabet.
    pub fn new(max_inserted: usize, alphabet: Vec<Letter>) -> Result<Self, OracleError> {
        let mut deduped: Vec<Letter> = Vec::with_capacity(alphabet.len());
        for letter in alphabet {
            if !deduped.contains(&letter) {
                deduped.push(letter);
            }
        }
        if max_inserted > 0 && deduped.is_empty() {
            return Err(OracleError::EmptyAlphabet);
        }
        Ok(SearchBudget {
            max_inserted,
            alphabet: deduped,
            node_limit: DEFAULT_NODE_LIMIT,
        })
    }

    pub fn with_node_limit(mut self, node_limit: u64) -> Self {
        self.node_limit = node_limit;
        self
    }

    pub fn max_inserted(&self) -> usize {
        self.max_inserted
    }

    pub fn alphabet(&self) -> &[Letter] {
        &self.alphabet
    }

    pub fn node_limit(&self) -> u64 {
        self.node_limit
    }
}

/// A successful search outcome: the certificate found first in enumeration
/// order, hence of minimal total insertion length within the budget.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OracleWitness {
    pub certificate: EqualizationCertificate,
    pub inserted_count: usize,
}

/// What the search established. `witness` is `None` exactly when no
/// insertion within the budget makes the pair cyclically equivalent — the
/// enumeration is exhaustive.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OracleResult {
    pub witness: Option<OracleWitness>,
    pub budget: SearchBudget,
}

impl OracleResult {
    pub fn found(&self) -> bool {
        self.witness.is_some()
    }
}

/// The default insertion alphabet: the letters of `u` and `v`, in id order.
pub fn default_insertion_alphabet(u: &Word, v: &Word) -> Vec<Letter> {
    let mut letters: Vec<Letter> = u.letters().iter().chain(v.letters()).copied().collect();
    letters.sort_unstable();
    letters.dedup();
    letters
}

/// Single-partition [`brute_force_equalize_partitioned`].
pub fn brute_force_equalize(
    u: &Word,
    v: &Word,
    budget: &SearchBudget,
) -> Result<OracleResult, OracleError> {
    brute_force_equalize_partitioned(u, v, budget, 1)
}

/// Searches insertion totals 0, 1, …, max ascending; within a total, gap
/// distributions in lexicographic order and inserted letters in alphabet
/// order. Returns the first hit, which is therefore minimal, with the
/// deterministic lexicographic tie-break.
///
/// `partitions` splits the gap distributions of each total round-robin;
/// every partition reports its earliest hit and the reducer keeps the
/// globally earliest, so any partition count yields the same result.
pub fn brute_force_equalize_partitioned(
    u: &Word,
    v: &Word,
    budget: &SearchBudget,
    partitions: usize,
) -> Result<OracleResult, OracleError> {
    if partitions == 0 {
        return Err(OracleError::ZeroPartitions);
    }
    if u.len() != v.len() {
        return Err(OracleError::LengthMismatch {
            left: u.len(),
            right: v.len(),
        });
    }
    let estimated_nodes = node_estimate(u.len(), budget);
    if estimated_nodes > u128::from(budget.node_limit) {
        return Err(OracleError::BudgetInfeasible {
            estimated_nodes,
            node_limit: budget.node_limit,
        });
    }

    for total in 0..=budget.max_inserted {
        let mut best: Option<(u64, EqualizationCertificate)> = None;
        for partition in 0..partitions {
            if let Some((index, certificate)) =
                search_partition(u, v, budget, total, partition as u64, partitions as u64)
            {
                if best.as_ref().is_none_or(|(earliest, _)| index < *earliest) {
                    best = Some((index, certificate));
                }
            }
        }
        if let Some((_, certificate)) = best {
            return Ok(OracleResult {
                witness: Some(OracleWitness {
                    certificate,
                    inserted_count: total,
                }),
                budget: budget.clone(),
            });
        }
    }
    Ok(OracleResult {
        witness: None,
        budget: budget.clone(),
    })
}

fn search_partition(
    u: &Word,
    v: &Word,
    budget: &SearchBudget,
    total: usize,
    partition: u64,
    partitions: u64,
) -> Option<(u64, EqualizationCertificate)> {
    let gaps = u.len() + 1;
    let mut composition = vec![0usize; gaps];
    composition[gaps - 1] = total;
    let mut index: u64 = 0;
    loop {
        if index % partitions == partition {
            if let Some(certificate) = try_composition(u, v, &composition, budget.alphabet()) {
                return Some((index, certificate));
            }
        }
        if !next_composition(&mut composition) {
            return None;
        }
        index += 1;
    }
}

/// Advances a gap distribution to its lexicographic successor among all
/// distributions of the same total; false once exhausted.
fn next_composition(composition: &mut [usize]) -> bool {
    let len = composition.len();
    let mut suffix = 0usize;
    for i in (0..len - 1).rev() {
        suffix += composition[i + 1];
        if suffix > 0 {
            composition[i] += 1;
            for slot in composition[i + 1..].iter_mut() {
                *slot = 0;
            }
            composition[len - 1] = suffix - 1;
            return true;
        }
    }
    false
}

/// Tries every assignment of alphabet letters to one gap distribution, in
/// lexicographic order, and returns the first certificate that verifies.
fn try_composition(
    u: &Word,
    v: &Word,
    composition: &[usize],
    alphabet: &[Letter],
) -> Option<EqualizationCertificate> {
    let total: usize = composition.iter().sum();
    let mut choice = vec![0usize; total];
    loop {
        if let Some(certificate) = try_candidate(u, v, composition, &choice, alphabet) {
            return Some(certificate);
        }
        let mut slot = total;
        loop {
            if slot == 0 {
                return None;
            }
            slot -= 1;
            choice[slot] += 1;
            if choice[slot] < alphabet.len() {
                break;
            }
            choice[slot] = 0;
        }
    }
}

fn try_candidate(
    u: &Word,
    v: &Word,
    composition: &[usize],
    choice: &[usize],
    alphabet: &[Letter],
) -> Option<EqualizationCertificate> {
    let mut segments = Vec::with_capacity(composition.len());
    let mut taken = 0usize;
    for &count in composition {
        let letters: Vec<Letter> = choice[taken..taken + count]
            .iter()
            .map(|&pick| alphabet[pick])
            .collect();
        taken += count;
        segments.push(Word::new(letters));
    }
    let insertion = SimultaneousInsertion::new(segments).expect("one segment per gap");
    let u_expanded = apply_insertion(u, &insertion).expect("insertion fits u");
    let v_expanded = apply_insertion(v, &insertion).expect("insertion fits v");
    let offset = u_expanded
        .cyclic_equivalence_offset(&v_expanded)
        .expect("expanded words have equal length")?;

    let mut positions = Vec::with_capacity(u.len());
    let mut position = 0usize;
    for &count in composition.iter().take(u.len()) {
        position += count;
        positions.push(position);
        position += 1;
    }
    let distinguished = DistinguishedPositions::new(positions).expect("strictly increasing");
    let certificate = EqualizationCertificate {
        u: u.clone(),
        v: v.clone(),
        u_expanded,
        v_expanded,
        distinguished,
        insertion,
        offset,
    };
    debug_assert!(verify_certificate(&certificate).is_valid());
    Some(certificate)
}

fn node_estimate(base_len: usize, budget: &SearchBudget) -> u128 {
    let gaps = base_len as u128 + 1;
    let alphabet = budget.alphabet.len() as u128;
    let mut total: u128 = 0;
    for inserted in 0..=budget.max_inserted {
        let distributions = binomial(inserted as u128 + gaps - 1, gaps - 1);
        total = total.saturating_add(distributions.saturating_mul(power(alphabet, inserted)));
    }
    total
}

fn binomial(n: u128, k: u128) -> u128 {
    let k = k.min(n - k);
    let mut result: u128 = 1;
    for i in 0..k {
        result = result.saturating_mul(n - i) / (i + 1);
    }
    result
}

fn power(base: u128, exponent: usize) -> u128 {
    let mut result: u128 = 1;
    for _ in 0..exponent {
        result = result.saturating_mul(base);
    }
    result
}

/// What the exhaustive sweep established, with any counterexamples found
/// (there should be none).
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct SweepReport {
    /// Ordered pairs with equal Parikh vectors that were equalized and
    /// verified.
    pub parikh_equal_pairs: u64,
    /// Ordered pairs with unequal Parikh vectors on which the search found
    /// nothing within budget.
    pub parikh_unequal_pairs: u64,
    pub counterexamples: Vec<SweepCounterexample>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SweepCounterexample {
    /// A Parikh-equal pair the constructive pipeline failed on.
    EqualizeFailed {
        u: Word,
        v: Word,
        error: EqualizationError,
    },
    /// A Parikh-equal pair whose constructed certificate did not verify.
    CertificateRejected {
        u: Word,
        v: Word,
        fault: CertificateFault,
    },
    /// A Parikh-unequal pair the search managed to equalize.
    UnequalPairEqualized {
        u: Word,
        v: Word,
        inserted_count: usize,
    },
}

/// Checks both directions of the characterization on every ordered pair of
/// words of each length 1..=n_max over `alphabet`: Parikh-equal pairs must
/// equalize to a verified certificate, Parikh-unequal pairs must defeat the
/// brute-force search within `budget`.
pub fn exhaustive_theorem_sweep(
    n_max: usize,
    alphabet: &[Letter],
    budget: &SearchBudget,
) -> Result<SweepReport, OracleError> {
    let mut letters: Vec<Letter> = Vec::with_capacity(alphabet.len());
    for &letter in alphabet {
        if !letters.contains(&letter) {
            letters.push(letter);
        }
    }
    let base = letters.len();
    if base == 0 && n_max > 0 {
        return Err(OracleError::EmptyAlphabet);
    }

    let mut estimated_nodes: u128 = 0;
    for length in 1..=n_max {
        let pairs = power(base as u128, length).saturating_mul(power(base as u128, length));
        estimated_nodes =
            estimated_nodes.saturating_add(pairs.saturating_mul(node_estimate(length, budget)));
    }
    if estimated_nodes > u128::from(budget.node_limit) {
        return Err(OracleError::SweepInfeasible {
            estimated_nodes,
            node_limit: budget.node_limit,
        });
    }

    let mut report = SweepReport::default();
    for length in 1..=n_max {
        let mut u_digits = vec![0usize; length];
        loop {
            let u_word: Word = u_digits.iter().map(|&digit| letters[digit]).collect();
            let mut u_counts = vec![0usize; base];
            for &digit in &u_digits {
                u_counts[digit] += 1;
            }

            let mut v_digits = vec![0usize; length];
            loop {
                let mut v_counts = vec![0usize; base];
                for &digit in &v_digits {
                    v_counts[digit] += 1;
                }
                let v_word: Word = v_digits.iter().map(|&digit| letters[digit]).collect();

                if u_counts == v_counts {
                    report.parikh_equal_pairs += 1;
                    match equalize(&u_word, &v_word) {
                        Ok(equalization) => {
                            if let Verdict::Invalid(fault) =
                                verify_certificate(&equalization.certificate)
                            {
                                report.counterexamples.push(
                                    SweepCounterexample::CertificateRejected {
                                        u: u_word.clone(),
                                        v: v_word.clone(),
                                        fault,
                                    },
                                );
                            }
                        }
                        Err(error) => {
                            report
                                .counterexamples
                                .push(SweepCounterexample::EqualizeFailed {
                                    u: u_word.clone(),
                                    v: v_word.clone(),
                                    error,
                                });
                        }
                    }
                } else {
                    report.parikh_unequal_pairs += 1;
                    let result = brute_force_equalize(&u_word, &v_word, budget)?;
                    if let Some(witness) = result.witness {
                        report
                            .counterexamples
                            .push(SweepCounterexample::UnequalPairEqualized {
                                u: u_word.clone(),
                                v: v_word.clone(),
                                inserted_count: witness.inserted_count,
                            });
                    }
                }

                if !next_digits(&mut v_digits, base) {
                    break;
                }
            }
            if !next_digits(&mut u_digits, base) {
                break;
            }
        }
    }
    Ok(report)
}

fn next_digits(digits: &mut [usize], base: usize) -> bool {
    for slot in (0..digits.len()).rev() {
        digits[slot] += 1;
        if digits[slot] < base {
            return true;
        }
        digits[slot] = 0;
    }
    false
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum OracleError {
    /// The two words must have equal length.
    LengthMismatch { left: usize, right: usize },
    /// A positive insertion budget needs letters to insert.
    EmptyAlphabet,
    /// At least one partition is required.
    ZeroPartitions,
    /// The search space exceeds the node limit.
    BudgetInfeasible {
        estimated_nodes: u128,
        node_limit: u64,
    },
    /// The sweep's total search space exceeds the node limit.
    SweepInfeasible {
        estimated_nodes: u128,
        node_limit: u64,
    },
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::LengthMismatch { left, right } => {
                write!(f, "words must have equal length ({left} vs {right})")
            }
            OracleError::EmptyAlphabet => {
                write!(f, "a positive insertion budget needs a non-empty alphabet")
            }
            OracleError::ZeroPartitions => write!(f, "at least one partition is required"),
            OracleError::BudgetInfeasible {
                estimated_nodes,
                node_limit,
            } => write!(
                f,
                "infeasible budget: about {estimated_nodes} candidate insertions exceed the node limit {node_limit}"
            ),
            OracleError::SweepInfeasible {
                estimated_nodes,
                node_limit,
            } => write!(
                f,
                "infeasible sweep: about {estimated_nodes} candidate insertions exceed the node limit {node_limit}"
            ),
        }
    }
}

impl core::error::Error for OracleError {}
