//! Constructive equalization of Abelian-equivalent words.
//!
//! The pipeline behind [`equalize`]:
//!
//! 1. *Lift*: replace repeated letters by fresh per-occurrence letters so
//!    both words consist of pairwise-distinct letters ([`distinct_letter_lift`]).
//! 2. *Normalize*: relabel so the first word reads 0 1 … n−1; the second word
//!    then spells out a permutation π ([`normalize`]).
//! 3. *Per-cycle construction*: for each cycle of π build a pair of words of
//!    length n² on the block/group geometry ([`build_cycle_words`]). Reading
//!    the pair with step n+1 gives words that differ by a shift of one, so
//!    the pair itself differs by a shift of n+1.
//! 4. *Interleave*: combine the m per-cycle pairs columnwise; the result
//!    differs by a shift of m·(n+1) and restricts to the original words on
//!    the distinguished positions.
//!
//! Undoing the relabeling and the lift yields an
//! [`EqualizationCertificate`] over the original alphabet.
//!
//! The geometry underneath: positions 0..n² split into n *blocks* of n
//! consecutive positions, and into n *groups* of n consecutive positions of
//! the reading order φ(i) = i·(n+1) mod n². Each (block, group) pair meets in
//! exactly one position f(t, g), which is where the construction pins the
//! original letters.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::insertion::{
    insertion_from_positions, verify_certificate, DistinguishedPositions, EqualizationCertificate,
    SimultaneousInsertion,
};
use crate::word::{CyclicOffset, Letter, ParikhVector, Word};

/// A permutation of 0..n−1 in one-line notation, with its cycle
/// decomposition computed on construction.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Permutation {
    images: Vec<usize>,
    cycles: Vec<Cycle>,
}

impl Permutation {
    /// Validates that `images` is a bijection on 0..images.len().
    pub fn new(images: Vec<usize>) -> Result<Self, EqualizationError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for (index, &image) in images.iter().enumerate() {
            if image >= n || seen[image] {
                return Err(EqualizationError::NotAPermutation { index });
            }
            seen[image] = true;
        }
        let cycles = decompose(&images);
        Ok(Permutation { images, cycles })
    }

    pub fn identity(n: usize) -> Self {
        Permutation::new((0..n).collect()).expect("identity is a bijection")
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// The disjoint cycles, ordered by ascending anchor; together they
    /// partition 0..n.
    pub fn cycles(&self) -> &[Cycle] {
        &self.cycles
    }
}

/// One cycle of a permutation: the orbit of its minimum element (the
/// *anchor*), listed in application order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Cycle {
    elements: Vec<usize>,
}

impl Cycle {
    /// The minimum element of the cycle; the orbit starts here.
    pub fn anchor(&self) -> usize {
        self.elements[0]
    }

    /// anchor, π(anchor), π²(anchor), …
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

fn decompose(images: &[usize]) -> Vec<Cycle> {
    let n = images.len();
    let mut visited = vec![false; n];
    let mut cycles = Vec::new();
    for start in 0..n {
        if visited[start] {
            continue;
        }
        let mut elements = vec![start];
        visited[start] = true;
        let mut current = images[start];
        while current != start {
            visited[current] = true;
            elements.push(current);
            current = images[current];
        }
        cycles.push(Cycle { elements });
    }
    cycles
}

/// The block/group coordinate system on positions 0..n², with reading step
/// p = n + 1 (always coprime with n²).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct BlockGroupGeometry {
    n: usize,
    p: usize,
    modulus: usize,
}

impl BlockGroupGeometry {
    pub fn new(n: usize) -> Self {
        BlockGroupGeometry {
            n,
            p: n + 1,
            modulus: n * n,
        }
    }

    /// The base word length n.
    pub fn n(self) -> usize {
        self.n
    }

    /// The reading step p = n + 1.
    pub fn step(self) -> usize {
        self.p
    }

    /// n², the length of the per-cycle words.
    pub fn modulus(self) -> usize {
        self.modulus
    }

    /// φ(i) = i·(n+1) mod n²: the position visited i-th when reading with
    /// step n + 1.
    pub fn phi(self, i: usize) -> Result<usize, EqualizationError> {
        if i >= self.modulus {
            return Err(EqualizationError::IndexOutOfRange {
                index: i,
                modulus: self.modulus,
            });
        }
        Ok(i * self.p % self.modulus)
    }

    /// f(t, g): the unique position lying in Block t and Group g, namely
    /// φ(g·n + i) with i ≡ t − g (mod n).
    pub fn block_group_position(self, t: usize, g: usize) -> Result<usize, EqualizationError> {
        if t >= self.n || g >= self.n {
            return Err(EqualizationError::BlockGroupOutOfRange { t, g, n: self.n });
        }
        let i = (t + self.n - g) % self.n;
        let position = (g * self.n + i) * self.p % self.modulus;
        debug_assert_eq!(position / self.n, t);
        Ok(position)
    }
}

/// Output of the per-cycle construction: two words of length n² that agree
/// outside the cycle's distinguished positions and read as shift-by-one
/// under step n + 1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CycleWordsPair {
    pub u_word: Word,
    pub v_word: Word,
    /// Positions f(π^k(x), k) for k = 0..ℓ, sorted ascending.
    pub distinguished: Vec<usize>,
}

/// Builds the pair of words for one cycle of the permutation.
///
/// At the distinguished position f(π^k(x), k) the u-word holds π^k(x) and
/// the v-word holds π^{k+1}(x), where x is the cycle anchor. Every other
/// position is filled by walking the reading order from just after the
/// anchor's position and copying the previous v-letter into both words,
/// which forces the shift-by-one property of the step-p readings.
///
/// The words are over the normalized alphabet: letter ids are the permuted
/// values 0..n−1 themselves.
pub fn build_cycle_words(
    geometry: BlockGroupGeometry,
    cycle: &Cycle,
    permutation: &Permutation,
) -> CycleWordsPair {
    let n = geometry.n();
    let size = geometry.modulus();
    let step = geometry.step();
    assert_eq!(permutation.len(), n, "geometry and permutation disagree");
    debug_assert!(cycle
        .elements()
        .iter()
        .zip(cycle.elements().iter().cycle().skip(1))
        .all(|(&a, &b)| permutation.apply(a) == b));

    // Reading-space letters: a[i] = u[φ(i)], b[i] = v[φ(i)].
    let mut a = vec![0u32; size];
    let mut b = vec![0u32; size];
    let mut distinguished_reading = vec![false; size];
    let length = cycle.len();
    for k in 0..length {
        let t = cycle.elements()[k];
        let next = cycle.elements()[(k + 1) % length];
        let i = k * n + (t + n - k) % n;
        distinguished_reading[i] = true;
        a[i] = t as u32;
        b[i] = next as u32;
    }

    // φ(anchor) = f(anchor, 0), so the walk starts right after the anchor's
    // reading index and wraps around.
    let start = cycle.anchor();
    for offset in 1..size {
        let i = (start + offset) % size;
        if distinguished_reading[i] {
            continue;
        }
        let previous = if i == 0 { size - 1 } else { i - 1 };
        a[i] = b[previous];
        b[i] = b[previous];
    }

    let mut u_letters = vec![Letter::new(0); size];
    let mut v_letters = vec![Letter::new(0); size];
    let mut position = 0usize;
    for i in 0..size {
        u_letters[position] = Letter::new(a[i]);
        v_letters[position] = Letter::new(b[i]);
        position = (position + step) % size;
    }

    let mut distinguished: Vec<usize> = (0..length)
        .map(|k| {
            let t = cycle.elements()[k];
            (k * n + (t + n - k) % n) * step % size
        })
        .collect();
    distinguished.sort_unstable();

    CycleWordsPair {
        u_word: Word::new(u_letters),
        v_word: Word::new(v_letters),
        distinguished,
    }
}

/// Replaces each letter occurring k ≥ 2 times by k fresh per-occurrence
/// letters, matching occurrences left to right in both words; letters
/// occurring once are kept. Keeps the maps needed to undo the replacement.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct LetterLift {
    forward: BTreeMap<(Letter, usize), Letter>,
    backward: BTreeMap<Letter, Letter>,
}

impl LetterLift {
    pub fn is_identity(&self) -> bool {
        self.forward.is_empty()
    }

    /// The fresh letter standing for the given 1-based occurrence of
    /// `original`, if that letter was lifted.
    pub fn fresh(&self, original: Letter, occurrence: usize) -> Option<Letter> {
        self.forward.get(&(original, occurrence)).copied()
    }

    /// The original behind a fresh letter.
    pub fn original(&self, fresh: Letter) -> Option<Letter> {
        self.backward.get(&fresh).copied()
    }

    /// Maps a possibly-fresh letter back to its original.
    pub fn resolve(&self, letter: Letter) -> Letter {
        self.backward.get(&letter).copied().unwrap_or(letter)
    }

    /// (original, occurrence, fresh) triples in (original, occurrence) order.
    pub fn entries(&self) -> impl Iterator<Item = (Letter, usize, Letter)> + '_ {
        self.forward
            .iter()
            .map(|(&(original, occurrence), &fresh)| (original, occurrence, fresh))
    }
}

/// Lifts `u` and `v` to words with pairwise-distinct letters.
///
/// Fresh letter ids start right after the largest id occurring in the
/// words, so they cannot collide with any letter of the input pair. The
/// j-th occurrence of a letter in `u` and the j-th occurrence in `v` map to
/// the same fresh letter, which keeps the lifted words permutations of each
/// other.
pub fn distinct_letter_lift(
    u: &Word,
    v: &Word,
) -> Result<(Word, Word, LetterLift), EqualizationError> {
    let parikh_u = u.parikh();
    let parikh_v = v.parikh();
    if parikh_u != parikh_v {
        return Err(EqualizationError::ParikhMismatch {
            letter: parikh_witness(&parikh_u, &parikh_v),
        });
    }

    let mut next_id = u
        .letters()
        .iter()
        .map(|letter| letter.id())
        .max()
        .map_or(0, |max| max + 1);
    let mut lift = LetterLift::default();
    let mut lift_word = |word: &Word| -> Word {
        let mut occurrences: BTreeMap<Letter, usize> = BTreeMap::new();
        word.letters()
            .iter()
            .map(|&letter| {
                if parikh_u.count(letter) < 2 {
                    return letter;
                }
                let occurrence = occurrences.entry(letter).or_insert(0);
                *occurrence += 1;
                *lift.forward.entry((letter, *occurrence)).or_insert_with(|| {
                    let fresh = Letter::new(next_id);
                    next_id += 1;
                    lift.backward.insert(fresh, letter);
                    fresh
                })
            })
            .collect()
    };
    let u_lifted = lift_word(u);
    let v_lifted = lift_word(v);
    Ok((u_lifted, v_lifted, lift))
}

fn parikh_witness(left: &ParikhVector, right: &ParikhVector) -> Letter {
    for (&letter, &count) in left.counts() {
        if right.count(letter) != count {
            return letter;
        }
    }
    for (&letter, &count) in right.counts() {
        if left.count(letter) != count {
            return letter;
        }
    }
    unreachable!("parikh vectors differ")
}

/// Relabeling of two distinct-letter words onto 0..n−1 so that `u` reads
/// 0 1 … n−1; `v` then reads π(0) π(1) … π(n−1).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Normalization {
    pub permutation: Permutation,
    /// letters[i] is the letter the normalized id i stands for, i.e. letter
    /// i of the lifted u.
    pub letters: Vec<Letter>,
}

impl Normalization {
    pub fn letter(&self, id: usize) -> Letter {
        self.letters[id]
    }
}

/// Computes the normalization of two words over the same n pairwise-distinct
/// letters.
pub fn normalize(u: &Word, v: &Word) -> Result<Normalization, EqualizationError> {
    if u.len() != v.len() {
        return Err(EqualizationError::LengthMismatch {
            left: u.len(),
            right: v.len(),
        });
    }
    let mut index: BTreeMap<Letter, usize> = BTreeMap::new();
    for (i, &letter) in u.letters().iter().enumerate() {
        if index.insert(letter, i).is_some() {
            return Err(EqualizationError::RepeatedLetter { letter });
        }
    }
    let images = v
        .letters()
        .iter()
        .map(|letter| {
            index
                .get(letter)
                .copied()
                .ok_or(EqualizationError::MismatchedLetter { letter: *letter })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let permutation = Permutation::new(images)?;
    Ok(Normalization {
        permutation,
        letters: u.letters().to_vec(),
    })
}

/// Everything [`equalize`] derives on the way to the certificate, kept for
/// inspection and rendering; verification needs none of it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Construction {
    pub geometry: BlockGroupGeometry,
    pub permutation: Permutation,
    pub lift: LetterLift,
    /// Normalized id → lifted letter (letter i of the lifted u).
    pub letters: Vec<Letter>,
    /// Per-cycle word pairs, in cycle (anchor) order, over normalized ids.
    pub cycle_words: Vec<CycleWordsPair>,
}

impl Construction {
    pub fn n(&self) -> usize {
        self.geometry.n()
    }

    pub fn cycle_count(&self) -> usize {
        self.cycle_words.len()
    }
}

/// A certificate together with the construction that produced it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Equalization {
    pub certificate: EqualizationCertificate,
    pub construction: Construction,
}

/// Decides cyclic equalizability of `u` and `v` and, when they have equal
/// Parikh vectors, constructs a verified certificate.
///
/// The expanded words have length m·n², where m is the number of cycles of
/// the normalized permutation, and they differ by the cyclic offset
/// m·(n+1) mod m·n². A Parikh mismatch is reported as a distinct error: it
/// is the negative decision. Two empty words yield the empty certificate.
pub fn equalize(u: &Word, v: &Word) -> Result<Equalization, EqualizationError> {
    let n = u.len();
    if v.len() != n {
        return Err(EqualizationError::LengthMismatch {
            left: n,
            right: v.len(),
        });
    }
    if n == 0 {
        let certificate = EqualizationCertificate {
            u: Word::empty(),
            v: Word::empty(),
            u_expanded: Word::empty(),
            v_expanded: Word::empty(),
            distinguished: DistinguishedPositions::default(),
            insertion: SimultaneousInsertion::empty(0),
            offset: CyclicOffset::empty(),
        };
        let construction = Construction {
            geometry: BlockGroupGeometry::new(0),
            permutation: Permutation::identity(0),
            lift: LetterLift::default(),
            letters: Vec::new(),
            cycle_words: Vec::new(),
        };
        return Ok(Equalization {
            certificate,
            construction,
        });
    }

    let (u_lifted, v_lifted, lift) = distinct_letter_lift(u, v)?;
    let Normalization {
        permutation,
        letters,
    } = normalize(&u_lifted, &v_lifted)?;

    let geometry = BlockGroupGeometry::new(n);
    let cycle_words: Vec<CycleWordsPair> = permutation
        .cycles()
        .iter()
        .map(|cycle| build_cycle_words(geometry, cycle, &permutation))
        .collect();
    let cycle_count = cycle_words.len();

    let u_normalized = Word::interleave(
        &cycle_words
            .iter()
            .map(|pair| &pair.u_word)
            .collect::<Vec<_>>(),
    )
    .expect("per-cycle words share length n^2");
    let v_normalized = Word::interleave(
        &cycle_words
            .iter()
            .map(|pair| &pair.v_word)
            .collect::<Vec<_>>(),
    )
    .expect("per-cycle words share length n^2");

    // Undo normalization and lift in one table: normalized id → original.
    let original: Vec<Letter> = letters.iter().map(|&letter| lift.resolve(letter)).collect();
    let restore = |word: &Word| -> Word {
        word.letters()
            .iter()
            .map(|letter| original[letter.id() as usize])
            .collect()
    };
    let u_expanded = restore(&u_normalized);
    let v_expanded = restore(&v_normalized);

    let mut positions = Vec::with_capacity(n);
    for (index, pair) in cycle_words.iter().enumerate() {
        for &position in &pair.distinguished {
            positions.push(cycle_count * position + index);
        }
    }
    positions.sort_unstable();
    let distinguished =
        DistinguishedPositions::new(positions).expect("distinguished positions are distinct");

    let (restriction, insertion) = insertion_from_positions(&u_expanded, &distinguished)
        .expect("positions lie inside the expanded word");
    debug_assert_eq!(&restriction, u);

    let modulus = cycle_count * geometry.modulus();
    let offset = CyclicOffset::new(cycle_count * geometry.step() % modulus, modulus)
        .expect("offset in range");

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

    Ok(Equalization {
        certificate,
        construction: Construction {
            geometry,
            permutation,
            lift,
            letters,
            cycle_words,
        },
    })
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum EqualizationError {
    /// Equalizability is defined for words of equal length.
    LengthMismatch { left: usize, right: usize },
    /// Parikh vectors differ: the words are not cyclically equalizable.
    /// Carries the first letter (in id order) whose counts differ.
    ParikhMismatch { letter: Letter },
    /// Normalization needs pairwise-distinct letters.
    RepeatedLetter { letter: Letter },
    /// The second word uses a letter the first does not.
    MismatchedLetter { letter: Letter },
    /// The image sequence is not a bijection.
    NotAPermutation { index: usize },
    /// φ argument outside 0..n².
    IndexOutOfRange { index: usize, modulus: usize },
    /// Block or group index outside 0..n.
    BlockGroupOutOfRange { t: usize, g: usize, n: usize },
}

impl fmt::Display for EqualizationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EqualizationError::LengthMismatch { left, right } => {
                write!(f, "words must have equal length ({left} vs {right})")
            }
            EqualizationError::ParikhMismatch { letter } => write!(
                f,
                "Parikh vectors differ (first differing letter id {})",
                letter.id()
            ),
            EqualizationError::RepeatedLetter { letter } => write!(
                f,
                "letters must be pairwise distinct (letter id {} repeats)",
                letter.id()
            ),
            EqualizationError::MismatchedLetter { letter } => write!(
                f,
                "words use different letters (letter id {} missing)",
                letter.id()
            ),
            EqualizationError::NotAPermutation { index } => {
                write!(f, "image sequence is not a permutation (index {index})")
            }
            EqualizationError::IndexOutOfRange { index, modulus } => {
                write!(f, "reading index {index} outside 0..{modulus}")
            }
            EqualizationError::BlockGroupOutOfRange { t, g, n } => {
                write!(f, "block {t}, group {g} outside 0..{n}")
            }
        }
    }
}

impl core::error::Error for EqualizationError {}
