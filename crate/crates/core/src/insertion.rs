//! Simultaneous insertions, distinguished positions, and independently
//! checkable equalization certificates.
//!
//! A simultaneous insertion into a word of length n is a choice of n + 1
//! strings u_0, …, u_n placed into the gaps around the original letters.
//! Applying the same insertion to two words leaves the original letters at
//! the same *distinguished positions* of both expanded words, with the
//! inserted letters agreeing everywhere else. A certificate packages that
//! data together with the cyclic offset relating the expanded words, and
//! [`verify_certificate`] re-checks all of it without trusting whoever built
//! the certificate.

use alloc::vec::Vec;
use core::fmt;

use crate::word::{CyclicOffset, Word};

/// The n + 1 strings u_0, …, u_n inserted into the gaps of a length-n word.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SimultaneousInsertion {
    segments: Vec<Word>,
}

impl SimultaneousInsertion {
    /// Wraps the gap strings; there must be base_length + 1 of them, so at
    /// least one.
    pub fn new(segments: Vec<Word>) -> Result<Self, InsertionError> {
        if segments.is_empty() {
            return Err(InsertionError::NoSegments);
        }
        Ok(SimultaneousInsertion { segments })
    }

    /// The insertion that inserts nothing into a word of length
    /// `base_length`.
    pub fn empty(base_length: usize) -> Self {
        SimultaneousInsertion {
            segments: alloc::vec![Word::empty(); base_length + 1],
        }
    }

    pub fn segments(&self) -> &[Word] {
        &self.segments
    }

    /// The word length this insertion applies to.
    pub fn base_length(&self) -> usize {
        self.segments.len() - 1
    }

    /// Total number of inserted letters.
    pub fn inserted_total(&self) -> usize {
        self.segments.iter().map(Word::len).sum()
    }
}

/// The positions of an expanded word that carry original letters, strictly
/// increasing. Gap j of the matching insertion sits between positions j − 1
/// and j.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct DistinguishedPositions {
    positions: Vec<usize>,
}

impl DistinguishedPositions {
    pub fn new(positions: Vec<usize>) -> Result<Self, InsertionError> {
        for index in 1..positions.len() {
            if positions[index] <= positions[index - 1] {
                return Err(InsertionError::PositionsNotIncreasing { index });
            }
        }
        Ok(DistinguishedPositions { positions })
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }
}

/// Applies the insertion to `word`: u_0 w_0 u_1 w_1 … u_{n−1} w_{n−1} u_n.
pub fn apply_insertion(
    word: &Word,
    insertion: &SimultaneousInsertion,
) -> Result<Word, InsertionError> {
    if insertion.base_length() != word.len() {
        return Err(InsertionError::BaseLengthMismatch {
            expected: insertion.base_length(),
            found: word.len(),
        });
    }
    let mut letters = Vec::with_capacity(word.len() + insertion.inserted_total());
    for (j, segment) in insertion.segments.iter().enumerate() {
        letters.extend_from_slice(segment.letters());
        if let Some(&original) = word.letters().get(j) {
            letters.push(original);
        }
    }
    Ok(Word::new(letters))
}

/// Inverse view of an insertion: splits `expanded` into the base word read
/// off the distinguished positions and the gap strings between them, so that
/// [`apply_insertion`] on the result reproduces `expanded`.
pub fn insertion_from_positions(
    expanded: &Word,
    positions: &DistinguishedPositions,
) -> Result<(Word, SimultaneousInsertion), InsertionError> {
    let length = expanded.len();
    if let Some(&last) = positions.positions().last() {
        if last >= length {
            return Err(InsertionError::PositionOutOfRange {
                position: last,
                length,
            });
        }
    }
    let mut base = Vec::with_capacity(positions.len());
    let mut segments = Vec::with_capacity(positions.len() + 1);
    let mut start = 0usize;
    for &position in positions.positions() {
        segments.push(Word::new(expanded.letters()[start..position].to_vec()));
        base.push(expanded.letters()[position]);
        start = position + 1;
    }
    segments.push(Word::new(expanded.letters()[start..].to_vec()));
    Ok((Word::new(base), SimultaneousInsertion { segments }))
}

/// A self-contained, independently checkable witness that `u` and `v` are
/// cyclically equalizable: both expanded words, the distinguished positions
/// and insertion that produced them, and the shift relating them.
///
/// Fields are public so that callers (and tests) can assemble or perturb
/// certificates freely; nothing is trusted until [`verify_certificate`]
/// accepts it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EqualizationCertificate {
    pub u: Word,
    pub v: Word,
    pub u_expanded: Word,
    pub v_expanded: Word,
    pub distinguished: DistinguishedPositions,
    pub insertion: SimultaneousInsertion,
    pub offset: CyclicOffset,
}

/// Outcome of certificate verification.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Verdict {
    Valid,
    Invalid(CertificateFault),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }
}

/// Which base word a restriction fault refers to.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BaseWord {
    U,
    V,
}

impl fmt::Display for BaseWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseWord::U => write!(f, "u"),
            BaseWord::V => write!(f, "v"),
        }
    }
}

/// The first check a certificate fails, with the position that pinpoints it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CertificateFault {
    /// |u| ≠ |v|.
    BaseLengthMismatch { u_len: usize, v_len: usize },
    /// |u'| ≠ |v'|.
    ExpandedLengthMismatch { u_len: usize, v_len: usize },
    /// The offset was built for a different length than the expanded words.
    OffsetModulusMismatch { modulus: usize, length: usize },
    /// Number of distinguished positions differs from the base length.
    PositionCountMismatch { positions: usize, base: usize },
    /// A distinguished position lies outside the expanded word.
    PositionOutOfRange { position: usize },
    /// The stored insertion disagrees with the gaps the distinguished
    /// positions induce.
    SegmentMismatch { segment: usize },
    /// Restricting the expanded word to the distinguished positions does not
    /// give back the base word.
    RestrictionMismatch {
        word: BaseWord,
        position: usize,
        base_index: usize,
    },
    /// The expanded words disagree at a non-distinguished position.
    InsertedLetterMismatch { position: usize },
    /// v' is not u' shifted by the stated offset.
    ShiftMismatch { position: usize },
}

impl fmt::Display for CertificateFault {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CertificateFault::BaseLengthMismatch { u_len, v_len } => {
                write!(f, "base word lengths differ: |u| = {u_len}, |v| = {v_len}")
            }
            CertificateFault::ExpandedLengthMismatch { u_len, v_len } => {
                write!(f, "expanded word lengths differ: {u_len} vs {v_len}")
            }
            CertificateFault::OffsetModulusMismatch { modulus, length } => write!(
                f,
                "offset modulus {modulus} does not match expanded length {length}"
            ),
            CertificateFault::PositionCountMismatch { positions, base } => write!(
                f,
                "{positions} distinguished positions for a base word of length {base}"
            ),
            CertificateFault::PositionOutOfRange { position } => {
                write!(f, "distinguished position {position} is out of range")
            }
            CertificateFault::SegmentMismatch { segment } => write!(
                f,
                "insertion segment {segment} disagrees with the distinguished positions"
            ),
            CertificateFault::RestrictionMismatch {
                word,
                position,
                base_index,
            } => write!(
                f,
                "{word} restriction mismatch at position {position} (letter {base_index} of {word})"
            ),
            CertificateFault::InsertedLetterMismatch { position } => {
                write!(f, "inserted letters differ at position {position}")
            }
            CertificateFault::ShiftMismatch { position } => {
                write!(f, "shift mismatch at position {position}")
            }
        }
    }
}

/// Checks a certificate from scratch. Valid means all of:
///
/// (a) u' restricted to the distinguished positions equals u;
/// (b) v' restricted to the distinguished positions equals v;
/// (c) u' and v' agree at every non-distinguished position;
/// (d) v' equals u' cyclically shifted by the stated offset;
///
/// after structural consistency (lengths, position range, and agreement of
/// the stored insertion with the positions). The first failing check is
/// reported; inconsistent input yields an invalid verdict, never an error.
pub fn verify_certificate(certificate: &EqualizationCertificate) -> Verdict {
    let base_len = certificate.u.len();
    let expanded_len = certificate.u_expanded.len();
    if certificate.v.len() != base_len {
        return Verdict::Invalid(CertificateFault::BaseLengthMismatch {
            u_len: base_len,
            v_len: certificate.v.len(),
        });
    }
    if certificate.v_expanded.len() != expanded_len {
        return Verdict::Invalid(CertificateFault::ExpandedLengthMismatch {
            u_len: expanded_len,
            v_len: certificate.v_expanded.len(),
        });
    }
    if certificate.offset.modulus() != expanded_len {
        return Verdict::Invalid(CertificateFault::OffsetModulusMismatch {
            modulus: certificate.offset.modulus(),
            length: expanded_len,
        });
    }
    let positions = certificate.distinguished.positions();
    if positions.len() != base_len {
        return Verdict::Invalid(CertificateFault::PositionCountMismatch {
            positions: positions.len(),
            base: base_len,
        });
    }
    if let Some(&last) = positions.last() {
        if last >= expanded_len {
            return Verdict::Invalid(CertificateFault::PositionOutOfRange { position: last });
        }
    }
    let (_, derived) = insertion_from_positions(&certificate.u_expanded, &certificate.distinguished)
        .expect("positions checked in range");
    if derived.segments() != certificate.insertion.segments() {
        let segment = derived
            .segments()
            .iter()
            .zip(certificate.insertion.segments())
            .position(|(a, b)| a != b)
            .unwrap_or_else(|| {
                derived
                    .segments()
                    .len()
                    .min(certificate.insertion.segments().len())
            });
        return Verdict::Invalid(CertificateFault::SegmentMismatch { segment });
    }

    // (a), (b)
    for (base_index, &position) in positions.iter().enumerate() {
        if certificate.u_expanded.letters()[position] != certificate.u.letters()[base_index] {
            return Verdict::Invalid(CertificateFault::RestrictionMismatch {
                word: BaseWord::U,
                position,
                base_index,
            });
        }
    }
    for (base_index, &position) in positions.iter().enumerate() {
        if certificate.v_expanded.letters()[position] != certificate.v.letters()[base_index] {
            return Verdict::Invalid(CertificateFault::RestrictionMismatch {
                word: BaseWord::V,
                position,
                base_index,
            });
        }
    }

    // (c)
    let mut next = positions.iter().copied().peekable();
    for position in 0..expanded_len {
        if next.peek() == Some(&position) {
            next.next();
            continue;
        }
        if certificate.u_expanded.letters()[position] != certificate.v_expanded.letters()[position]
        {
            return Verdict::Invalid(CertificateFault::InsertedLetterMismatch { position });
        }
    }

    // (d)
    let shift = certificate.offset.value();
    for position in 0..expanded_len {
        let mut source = position + shift;
        if source >= expanded_len {
            source -= expanded_len;
        }
        if certificate.v_expanded.letters()[position] != certificate.u_expanded.letters()[source] {
            return Verdict::Invalid(CertificateFault::ShiftMismatch { position });
        }
    }

    Verdict::Valid
}

/// Searches for distinguished positions satisfying checks (a)–(c) of
/// [`verify_certificate`] for the given pair of base and expanded words.
///
/// Returns the lexicographically smallest such position set when one exists.
/// Dynamic programming over (expanded index, matched count): position i may
/// be the j-th distinguished position iff u'[i] = u[j] and v'[i] = v[j], and
/// may be non-distinguished iff u'[i] = v'[i]; the traceback takes each
/// position as early as feasibility allows.
pub fn find_common_insertion(
    u: &Word,
    v: &Word,
    u_expanded: &Word,
    v_expanded: &Word,
) -> Result<Option<DistinguishedPositions>, InsertionError> {
    let base_len = u.len();
    if v.len() != base_len {
        return Err(InsertionError::BaseLengthsDiffer {
            left: base_len,
            right: v.len(),
        });
    }
    let expanded_len = u_expanded.len();
    if v_expanded.len() != expanded_len {
        return Err(InsertionError::ExpandedLengthsDiffer {
            left: expanded_len,
            right: v_expanded.len(),
        });
    }
    if expanded_len < base_len {
        return Err(InsertionError::ExpandedShorterThanBase {
            expanded: expanded_len,
            base: base_len,
        });
    }

    let width = base_len + 1;
    // reachable[i * width + j]: from expanded position i with j letters
    // already matched, the remaining suffix can complete the match.
    let mut reachable = alloc::vec![false; (expanded_len + 1) * width];
    reachable[expanded_len * width + base_len] = true;
    for i in (0..expanded_len).rev() {
        let agree = u_expanded.letters()[i] == v_expanded.letters()[i];
        for j in 0..width {
            let take = j < base_len
                && u_expanded.letters()[i] == u.letters()[j]
                && v_expanded.letters()[i] == v.letters()[j]
                && reachable[(i + 1) * width + j + 1];
            let skip = agree && reachable[(i + 1) * width + j];
            reachable[i * width + j] = take || skip;
        }
    }
    if !reachable[0] {
        return Ok(None);
    }

    let mut positions = Vec::with_capacity(base_len);
    let mut matched = 0usize;
    for i in 0..expanded_len {
        let take = matched < base_len
            && u_expanded.letters()[i] == u.letters()[matched]
            && v_expanded.letters()[i] == v.letters()[matched]
            && reachable[(i + 1) * width + matched + 1];
        if take {
            positions.push(i);
            matched += 1;
        }
    }
    debug_assert_eq!(matched, base_len);
    Ok(Some(
        DistinguishedPositions::new(positions).expect("traceback positions are increasing"),
    ))
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum InsertionError {
    /// An insertion consists of base_length + 1 segments, so at least one.
    NoSegments,
    /// The insertion was built for a different base length.
    BaseLengthMismatch { expected: usize, found: usize },
    /// Distinguished positions must be strictly increasing.
    PositionsNotIncreasing { index: usize },
    /// A position points outside the expanded word.
    PositionOutOfRange { position: usize, length: usize },
    /// The two base words must have equal length.
    BaseLengthsDiffer { left: usize, right: usize },
    /// The two expanded words must have equal length.
    ExpandedLengthsDiffer { left: usize, right: usize },
    /// Expanded words cannot be shorter than the base words.
    ExpandedShorterThanBase { expanded: usize, base: usize },
}

impl fmt::Display for InsertionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InsertionError::NoSegments => {
                write!(f, "a simultaneous insertion needs at least one segment")
            }
            InsertionError::BaseLengthMismatch { expected, found } => write!(
                f,
                "insertion applies to words of length {expected}, got length {found}"
            ),
            InsertionError::PositionsNotIncreasing { index } => write!(
                f,
                "distinguished positions must be strictly increasing (violated at index {index})"
            ),
            InsertionError::PositionOutOfRange { position, length } => write!(
                f,
                "position {position} is outside the expanded word of length {length}"
            ),
            InsertionError::BaseLengthsDiffer { left, right } => {
                write!(f, "base words must have equal length ({left} vs {right})")
            }
            InsertionError::ExpandedLengthsDiffer { left, right } => write!(
                f,
                "expanded words must have equal length ({left} vs {right})"
            ),
            InsertionError::ExpandedShorterThanBase { expanded, base } => write!(
                f,
                "expanded length {expanded} is shorter than base length {base}"
            ),
        }
    }
}

impl core::error::Error for InsertionError {}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::word::Word;

    fn chars(alphabet: &mut Alphabet, text: &str) -> Word {
        text.chars()
            .map(|c| alphabet.intern(&c.to_string()).unwrap())
            .collect()
    }

    fn insertion(alphabet: &mut Alphabet, segments: &[&str]) -> SimultaneousInsertion {
        SimultaneousInsertion::new(segments.iter().map(|s| chars(alphabet, s)).collect()).unwrap()
    }

    #[test]
    fn apply_insertion_places_segments_between_letters() {
        let mut alpha = Alphabet::new();
        let word = chars(&mut alpha, "121");
        let ins = insertion(&mut alpha, &["14", "5", "", "56"]);
        let expanded = apply_insertion(&word, &ins).unwrap();
        assert_eq!(expanded, chars(&mut alpha, "14152156"));
    }

    #[test]
    fn empty_insertion_is_identity() {
        let word = Word::from_ids([3, 1, 2]);
        let ins = SimultaneousInsertion::empty(3);
        assert_eq!(apply_insertion(&word, &ins).unwrap(), word);
    }

    #[test]
    fn insertion_into_empty_word() {
        let mut alpha = Alphabet::new();
        let ins = insertion(&mut alpha, &["ab"]);
        let expanded = apply_insertion(&Word::empty(), &ins).unwrap();
        assert_eq!(expanded, chars(&mut alpha, "ab"));
    }

    #[test]
    fn apply_insertion_rejects_base_length_mismatch() {
        let word = Word::from_ids([0, 1]);
        let ins = SimultaneousInsertion::empty(3);
        assert_eq!(
            apply_insertion(&word, &ins).unwrap_err(),
            InsertionError::BaseLengthMismatch {
                expected: 3,
                found: 2
            }
        );
    }

    #[test]
    fn positions_split_expanded_word() {
        let mut alpha = Alphabet::new();
        let expanded = chars(&mut alpha, "1213");
        let positions = DistinguishedPositions::new(vec![0, 1, 3]).unwrap();
        let (base, ins) = insertion_from_positions(&expanded, &positions).unwrap();
        assert_eq!(base, chars(&mut alpha, "123"));
        assert_eq!(ins, insertion(&mut alpha, &["", "", "1", ""]));
        assert_eq!(apply_insertion(&base, &ins).unwrap(), expanded);
    }

    #[test]
    fn all_positions_means_no_insertion() {
        let word = Word::from_ids([5, 6, 7, 8]);
        let positions = DistinguishedPositions::new(vec![0, 1, 2, 3]).unwrap();
        let (base, ins) = insertion_from_positions(&word, &positions).unwrap();
        assert_eq!(base, word);
        assert_eq!(ins, SimultaneousInsertion::empty(4));
    }

    #[test]
    fn positions_split_longer_example() {
        let mut alpha = Alphabet::new();
        let expanded = chars(&mut alpha, "123124424");
        let positions = DistinguishedPositions::new(vec![0, 1, 2, 5, 6]).unwrap();
        let (base, ins) = insertion_from_positions(&expanded, &positions).unwrap();
        assert_eq!(base, chars(&mut alpha, "12344"));
        assert_eq!(ins, insertion(&mut alpha, &["", "", "", "12", "", "24"]));
    }

    #[test]
    fn positions_validate_order_and_range() {
        assert_eq!(
            DistinguishedPositions::new(vec![0, 2, 2]).unwrap_err(),
            InsertionError::PositionsNotIncreasing { index: 2 }
        );
        let word = Word::from_ids([0, 1]);
        let positions = DistinguishedPositions::new(vec![0, 5]).unwrap();
        assert_eq!(
            insertion_from_positions(&word, &positions).unwrap_err(),
            InsertionError::PositionOutOfRange {
                position: 5,
                length: 2
            }
        );
    }

    fn small_handwritten_certificate(alpha: &mut Alphabet) -> EqualizationCertificate {
        let u = chars(alpha, "123");
        let v = chars(alpha, "132");
        let u_expanded = chars(alpha, "1213");
        let v_expanded = chars(alpha, "1312");
        let distinguished = DistinguishedPositions::new(vec![0, 1, 3]).unwrap();
        let (_, insertion) = insertion_from_positions(&u_expanded, &distinguished).unwrap();
        EqualizationCertificate {
            u,
            v,
            u_expanded,
            v_expanded,
            distinguished,
            insertion,
            offset: CyclicOffset::new(2, 4).unwrap(),
        }
    }

    #[test]
    fn verifies_the_small_certificate() {
        let mut alpha = Alphabet::new();
        let certificate = small_handwritten_certificate(&mut alpha);
        assert_eq!(verify_certificate(&certificate), Verdict::Valid);
    }

    #[test]
    fn verifies_the_longer_certificate() {
        let mut alpha = Alphabet::new();
        let u = chars(&mut alpha, "12344");
        let v = chars(&mut alpha, "42431");
        let u_expanded = chars(&mut alpha, "123124424");
        let v_expanded = chars(&mut alpha, "424123124");
        let distinguished = DistinguishedPositions::new(vec![0, 1, 2, 5, 6]).unwrap();
        let (_, insertion) = insertion_from_positions(&u_expanded, &distinguished).unwrap();
        let certificate = EqualizationCertificate {
            u,
            v,
            u_expanded,
            v_expanded,
            distinguished,
            insertion,
            offset: CyclicOffset::new(6, 9).unwrap(),
        };
        assert_eq!(verify_certificate(&certificate), Verdict::Valid);
    }

    #[test]
    fn wrong_offset_reports_shift_mismatch() {
        let mut alpha = Alphabet::new();
        let mut certificate = small_handwritten_certificate(&mut alpha);
        certificate.offset = CyclicOffset::new(1, 4).unwrap();
        let verdict = verify_certificate(&certificate);
        assert_eq!(
            verdict,
            Verdict::Invalid(CertificateFault::ShiftMismatch { position: 0 })
        );
        if let Verdict::Invalid(fault) = verdict {
            assert_eq!(alloc::format!("{fault}"), "shift mismatch at position 0");
        }
    }

    #[test]
    fn stored_insertion_must_match_positions() {
        let mut alpha = Alphabet::new();
        let mut certificate = small_handwritten_certificate(&mut alpha);
        certificate.insertion = insertion(&mut alpha, &["1", "", "", ""]);
        assert_eq!(
            verify_certificate(&certificate),
            Verdict::Invalid(CertificateFault::SegmentMismatch { segment: 0 })
        );
    }

    #[test]
    fn finds_the_common_insertion() {
        let mut alpha = Alphabet::new();
        let u = chars(&mut alpha, "123");
        let v = chars(&mut alpha, "132");
        let u_expanded = chars(&mut alpha, "1213");
        let v_expanded = chars(&mut alpha, "1312");
        let found = find_common_insertion(&u, &v, &u_expanded, &v_expanded)
            .unwrap()
            .unwrap();
        assert_eq!(found.positions(), &[0, 1, 3]);
    }

    #[test]
    fn identical_words_need_no_insertion() {
        let word = Word::from_ids([4, 4, 2]);
        let found = find_common_insertion(&word, &word, &word, &word)
            .unwrap()
            .unwrap();
        assert_eq!(found.positions(), &[0, 1, 2]);
    }

    #[test]
    fn reports_absence_when_no_common_insertion_exists() {
        let mut alpha = Alphabet::new();
        let u = chars(&mut alpha, "01");
        let v = chars(&mut alpha, "10");
        let expanded = chars(&mut alpha, "0110");
        assert_eq!(
            find_common_insertion(&u, &v, &expanded, &expanded).unwrap(),
            None
        );
    }

    #[test]
    fn find_common_insertion_validates_lengths() {
        let a = Word::from_ids([0]);
        let b = Word::from_ids([0, 1]);
        assert!(find_common_insertion(&a, &b, &a, &a).is_err());
        assert!(find_common_insertion(&a, &a, &b, &a).is_err());
        assert!(find_common_insertion(&b, &b, &a, &a).is_err());
    }
}
