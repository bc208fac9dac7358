//! Words over a finite alphabet and the structural operations the rest of
//! the crate builds on: Parikh vectors, cyclic shifts, readings with a step
//! size coprime to the length, and columnwise interleaving.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::borrow::Borrow;
use core::fmt;

/// A letter in its internal normalized form: a dense id assigned by an
/// [`Alphabet`](crate::Alphabet).
///
/// Ids only compare meaningfully within the alphabet context that assigned
/// them; the printable token lives in that alphabet.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Letter(u32);

impl Letter {
    pub const fn new(id: u32) -> Self {
        Letter(id)
    }

    pub const fn id(self) -> u32 {
        self.0
    }
}

/// A finite sequence of letters; the empty word has length 0.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word { letters }
    }

    pub fn empty() -> Self {
        Word::default()
    }

    /// Builds a word directly from raw letter ids.
    pub fn from_ids<I: IntoIterator<Item = u32>>(ids: I) -> Self {
        ids.into_iter().map(Letter::new).collect()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn iter(&self) -> core::slice::Iter<'_, Letter> {
        self.letters.iter()
    }

    /// Occurrence count of every letter of the word; absent letters count 0.
    pub fn parikh(&self) -> ParikhVector {
        let mut counts: BTreeMap<Letter, usize> = BTreeMap::new();
        for &letter in &self.letters {
            *counts.entry(letter).or_insert(0) += 1;
        }
        ParikhVector {
            counts,
            total: self.letters.len(),
        }
    }

    /// True when both words contain the same number of occurrences of each
    /// letter, i.e. when one is a permutation of the other.
    pub fn abelian_equivalent(&self, other: &Word) -> bool {
        self.len() == other.len() && self.parikh() == other.parikh()
    }

    /// Cyclic shift: position j of the result holds the letter of `self` at
    /// position (j + r) mod n, where r is the offset value.
    pub fn cyclic_shift(&self, offset: CyclicOffset) -> Result<Word, WordError> {
        let n = self.len();
        if n == 0 {
            return Err(WordError::EmptyWord);
        }
        if offset.modulus() != n {
            return Err(WordError::OffsetModulusMismatch {
                modulus: offset.modulus(),
                length: n,
            });
        }
        let r = offset.value();
        let mut letters = Vec::with_capacity(n);
        letters.extend_from_slice(&self.letters[r..]);
        letters.extend_from_slice(&self.letters[..r]);
        Ok(Word { letters })
    }

    /// The smallest r such that `other` equals `self` shifted by r, if one
    /// exists. Two empty words are cyclically equivalent with the degenerate
    /// [`CyclicOffset::empty`] offset.
    ///
    /// Checks all n rotations directly; quadratic, but the words this crate
    /// feeds it are desk scale.
    pub fn cyclic_equivalence_offset(
        &self,
        other: &Word,
    ) -> Result<Option<CyclicOffset>, WordError> {
        let n = self.len();
        if other.len() != n {
            return Err(WordError::LengthMismatch {
                left: n,
                right: other.len(),
            });
        }
        if n == 0 {
            return Ok(Some(CyclicOffset::empty()));
        }
        'offsets: for r in 0..n {
            for j in 0..n {
                let mut k = j + r;
                if k >= n {
                    k -= n;
                }
                if other.letters[j] != self.letters[k] {
                    continue 'offsets;
                }
            }
            return Ok(Some(CyclicOffset { value: r, modulus: n }));
        }
        Ok(None)
    }

    /// Reading with step size p: position i of the result holds the letter at
    /// position (i * p) mod n. Requires p ≥ 1 and gcd(p, n) = 1 so that the
    /// reading visits every position exactly once.
    pub fn read_with_step(&self, step: usize) -> Result<Word, WordError> {
        let n = self.len();
        if n == 0 {
            return Err(WordError::EmptyWord);
        }
        if step == 0 || gcd(step, n) != 1 {
            return Err(WordError::StepNotCoprime { step, length: n });
        }
        let p = step % n;
        let mut letters = Vec::with_capacity(n);
        let mut pos = 0usize;
        for _ in 0..n {
            letters.push(self.letters[pos]);
            pos += p;
            if pos >= n {
                pos -= n;
            }
        }
        Ok(Word { letters })
    }

    /// Columnwise interleaving of m equal-length words: column j of every
    /// word precedes column j + 1, so the result at position m·j + (i − 1)
    /// is letter j of the i-th word.
    pub fn interleave<W: Borrow<Word>>(words: &[W]) -> Result<Word, WordError> {
        let Some(first) = words.first() else {
            return Err(WordError::NoWords);
        };
        let n = first.borrow().len();
        for (index, word) in words.iter().enumerate() {
            let found = word.borrow().len();
            if found != n {
                return Err(WordError::UnequalLengths {
                    index,
                    expected: n,
                    found,
                });
            }
        }
        let mut letters = Vec::with_capacity(words.len() * n);
        for j in 0..n {
            for word in words {
                letters.push(word.borrow().letters[j]);
            }
        }
        Ok(Word { letters })
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word {
            letters: iter.into_iter().collect(),
        }
    }
}

impl<'a> IntoIterator for &'a Word {
    type Item = &'a Letter;
    type IntoIter = core::slice::Iter<'a, Letter>;

    fn into_iter(self) -> Self::IntoIter {
        self.letters.iter()
    }
}

/// The Parikh vector of a word: how many times each letter occurs.
///
/// Zero counts are never stored, so equality is well-defined across words
/// drawn from different sub-alphabets of the same alphabet context.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ParikhVector {
    counts: BTreeMap<Letter, usize>,
    total: usize,
}

impl ParikhVector {
    pub fn count(&self, letter: Letter) -> usize {
        self.counts.get(&letter).copied().unwrap_or(0)
    }

    /// Stored entries, all with count ≥ 1, ordered by letter id.
    pub fn counts(&self) -> &BTreeMap<Letter, usize> {
        &self.counts
    }

    /// Sum of all counts; equals the length of the originating word.
    pub fn total(&self) -> usize {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }
}

/// A rotation amount r together with the length n it applies to, kept as a
/// pair so that shifts of mismatched lengths are rejected instead of
/// silently wrapping.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct CyclicOffset {
    value: usize,
    modulus: usize,
}

impl CyclicOffset {
    /// An offset r for words of length `modulus`. Requires modulus ≥ 1 and
    /// 0 ≤ r < modulus.
    pub fn new(value: usize, modulus: usize) -> Result<Self, WordError> {
        if modulus == 0 || value >= modulus {
            return Err(WordError::InvalidOffset { value, modulus });
        }
        Ok(CyclicOffset { value, modulus })
    }

    /// The degenerate offset of the empty word. Two empty words are defined
    /// to be cyclically equivalent; this value records that convention.
    /// It is rejected by [`Word::cyclic_shift`], which needs length ≥ 1.
    pub const fn empty() -> Self {
        CyclicOffset {
            value: 0,
            modulus: 0,
        }
    }

    pub const fn value(self) -> usize {
        self.value
    }

    pub const fn modulus(self) -> usize {
        self.modulus
    }

    pub const fn is_empty(self) -> bool {
        self.modulus == 0
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum WordError {
    /// The operation needs a word of length ≥ 1.
    EmptyWord,
    /// An offset built for one length was applied to another.
    OffsetModulusMismatch { modulus: usize, length: usize },
    /// Offset value outside [0, modulus) or zero modulus.
    InvalidOffset { value: usize, modulus: usize },
    /// The two words must have equal length.
    LengthMismatch { left: usize, right: usize },
    /// Reading step must be positive and coprime with the length.
    StepNotCoprime { step: usize, length: usize },
    /// Interleaving needs at least one word.
    NoWords,
    /// Interleaving needs all words to have the same length.
    UnequalLengths {
        index: usize,
        expected: usize,
        found: usize,
    },
}

impl fmt::Display for WordError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WordError::EmptyWord => write!(f, "operation requires a non-empty word"),
            WordError::OffsetModulusMismatch { modulus, length } => write!(
                f,
                "offset modulus must equal word length (modulus {modulus}, length {length})"
            ),
            WordError::InvalidOffset { value, modulus } => {
                write!(f, "offset {value} is not valid for modulus {modulus}")
            }
            WordError::LengthMismatch { left, right } => {
                write!(f, "words must have equal length ({left} vs {right})")
            }
            WordError::StepNotCoprime { step, length } => write!(
                f,
                "step size must be coprime with length (step {step}, length {length})"
            ),
            WordError::NoWords => write!(f, "interleaving requires at least one word"),
            WordError::UnequalLengths {
                index,
                expected,
                found,
            } => write!(
                f,
                "interleaving requires equal lengths: word {index} has length {found}, expected {expected}"
            ),
        }
    }
}

impl core::error::Error for WordError {}

pub(crate) fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;

    fn chars(alphabet: &mut Alphabet, text: &str) -> Word {
        text.chars()
            .map(|c| alphabet.intern(&c.to_string()).unwrap())
            .collect()
    }

    #[test]
    fn parikh_counts_occurrences() {
        let mut alpha = Alphabet::new();
        let u = chars(&mut alpha, "acbcac");
        let parikh = u.parikh();
        let a = alpha.letter("a").unwrap();
        let b = alpha.letter("b").unwrap();
        let c = alpha.letter("c").unwrap();
        assert_eq!(parikh.count(a), 2);
        assert_eq!(parikh.count(b), 1);
        assert_eq!(parikh.count(c), 3);
        assert_eq!(parikh.total(), 6);
    }

    #[test]
    fn parikh_of_empty_word_is_empty() {
        let parikh = Word::empty().parikh();
        assert!(parikh.is_empty());
        assert_eq!(parikh.total(), 0);
        assert!(parikh.counts().is_empty());
    }

    #[test]
    fn parikh_of_all_distinct_word() {
        let w = Word::from_ids(0..5);
        let parikh = w.parikh();
        assert_eq!(parikh.total(), 5);
        for id in 0..5 {
            assert_eq!(parikh.count(Letter::new(id)), 1);
        }
        assert_eq!(parikh.count(Letter::new(5)), 0);
    }

    #[test]
    fn abelian_equivalence_examples() {
        let mut alpha = Alphabet::new();
        let u = chars(&mut alpha, "acbcac");
        let v = chars(&mut alpha, "cbaacc");
        assert!(u.abelian_equivalent(&v));
        assert!(u.abelian_equivalent(&u));
        let x = chars(&mut alpha, "01");
        let y = chars(&mut alpha, "11");
        assert!(!x.abelian_equivalent(&y));
    }

    #[test]
    fn cyclic_shift_rotates_left() {
        let w = Word::from_ids(0..5);
        let shifted = w.cyclic_shift(CyclicOffset::new(1, 5).unwrap()).unwrap();
        assert_eq!(shifted, Word::from_ids([1, 2, 3, 4, 0]));
    }

    #[test]
    fn cyclic_shift_by_zero_is_identity() {
        let w = Word::from_ids([4, 1, 4, 2]);
        assert_eq!(w.cyclic_shift(CyclicOffset::new(0, 4).unwrap()).unwrap(), w);
    }

    #[test]
    fn cyclic_shift_longer_example() {
        let mut alpha = Alphabet::new();
        let w = chars(&mut alpha, "123124424");
        let expected = chars(&mut alpha, "424123124");
        assert_eq!(w.cyclic_shift(CyclicOffset::new(6, 9).unwrap()).unwrap(), expected);
        // cross-check against the full rotation table
        for r in 0..9 {
            let rotated = w.cyclic_shift(CyclicOffset::new(r, 9).unwrap()).unwrap();
            let direct: Word = (0..9).map(|j| w.letters()[(j + r) % 9]).collect();
            assert_eq!(rotated, direct);
        }
    }

    #[test]
    fn cyclic_shift_rejects_modulus_mismatch() {
        let w = Word::from_ids(0..4);
        let err = w.cyclic_shift(CyclicOffset::new(1, 5).unwrap()).unwrap_err();
        assert_eq!(
            err,
            WordError::OffsetModulusMismatch {
                modulus: 5,
                length: 4
            }
        );
        assert!(Word::empty().cyclic_shift(CyclicOffset::empty()).is_err());
    }

    #[test]
    fn equivalence_offset_finds_smallest() {
        let mut alpha = Alphabet::new();
        let u = chars(&mut alpha, "1213");
        let v = chars(&mut alpha, "1312");
        let offset = u.cyclic_equivalence_offset(&v).unwrap().unwrap();
        assert_eq!(offset.value(), 2);
        assert_eq!(offset.modulus(), 4);
    }

    #[test]
    fn equivalence_offset_of_word_with_itself_is_zero() {
        let w = Word::from_ids([7, 7, 7]);
        let offset = w.cyclic_equivalence_offset(&w).unwrap().unwrap();
        assert_eq!(offset.value(), 0);
    }

    #[test]
    fn equivalence_offset_absent_for_non_conjugates() {
        let mut alpha = Alphabet::new();
        let u = chars(&mut alpha, "0123");
        let v = chars(&mut alpha, "0213");
        assert_eq!(u.cyclic_equivalence_offset(&v).unwrap(), None);
    }

    #[test]
    fn equivalence_offset_rejects_length_mismatch() {
        let u = Word::from_ids(0..3);
        let v = Word::from_ids(0..4);
        assert!(u.cyclic_equivalence_offset(&v).is_err());
    }

    #[test]
    fn empty_words_are_cyclically_equivalent() {
        let offset = Word::empty()
            .cyclic_equivalence_offset(&Word::empty())
            .unwrap()
            .unwrap();
        assert!(offset.is_empty());
    }

    #[test]
    fn read_with_step_one_is_identity() {
        let w = Word::from_ids([3, 1, 4, 1, 5]);
        assert_eq!(w.read_with_step(1).unwrap(), w);
    }

    #[test]
    fn read_with_step_three_on_length_four() {
        let mut alpha = Alphabet::new();
        let w = chars(&mut alpha, "abcd");
        let expected = chars(&mut alpha, "adcb");
        assert_eq!(w.read_with_step(3).unwrap(), expected);
    }

    #[test]
    fn read_with_step_rejects_shared_factor() {
        let w = Word::from_ids(0..6);
        assert_eq!(
            w.read_with_step(4).unwrap_err(),
            WordError::StepNotCoprime { step: 4, length: 6 }
        );
        assert!(w.read_with_step(0).is_err());
        assert!(Word::empty().read_with_step(1).is_err());
    }

    #[test]
    fn interleave_two_words() {
        let mut alpha = Alphabet::new();
        let a = chars(&mut alpha, "ab");
        let b = chars(&mut alpha, "cd");
        let expected = chars(&mut alpha, "acbd");
        assert_eq!(Word::interleave(&[a, b]).unwrap(), expected);
    }

    #[test]
    fn interleave_single_word_is_identity() {
        let w = Word::from_ids([5, 6, 7]);
        assert_eq!(Word::interleave(core::slice::from_ref(&w)).unwrap(), w);
    }

    #[test]
    fn interleave_combines_the_two_cycle_words() {
        let first = Word::from_ids(
            "0000233000233000033000023"
                .chars()
                .map(|c| c.to_digit(10).unwrap()),
        );
        let second = Word::from_ids(
            "1111141111144111144111144"
                .chars()
                .map(|c| c.to_digit(10).unwrap()),
        );
        let combined = Word::interleave(&[first, second]).unwrap();
        let expected = Word::from_ids(
            "01010101213431010101213434010101013434010101012434"
                .chars()
                .map(|c| c.to_digit(10).unwrap()),
        );
        assert_eq!(combined, expected);
    }

    #[test]
    fn read_with_step_six_collects_the_groups() {
        let expanded = Word::from_ids(
            "0114233114233014433014423"
                .chars()
                .map(|c| c.to_digit(10).unwrap()),
        );
        let reading = expanded.read_with_step(6).unwrap();
        let expected = Word::from_ids(
            "0333333322244444411111100"
                .chars()
                .map(|c| c.to_digit(10).unwrap()),
        );
        assert_eq!(reading, expected);
    }

    #[test]
    fn interleave_rejects_unequal_lengths_and_empty_input() {
        let a = Word::from_ids([0, 1]);
        let b = Word::from_ids([2]);
        assert_eq!(
            Word::interleave(&[a, b]).unwrap_err(),
            WordError::UnequalLengths {
                index: 1,
                expected: 2,
                found: 1
            }
        );
        let none: [Word; 0] = [];
        assert_eq!(Word::interleave(&none).unwrap_err(), WordError::NoWords);
    }

    #[test]
    fn offsets_validate_their_range() {
        assert!(CyclicOffset::new(0, 1).is_ok());
        assert!(CyclicOffset::new(3, 3).is_err());
        assert!(CyclicOffset::new(0, 0).is_err());
        assert!(CyclicOffset::empty().is_empty());
    }
}
