//! Inclusion hyperspaces on a finite discrete carrier.
//!
//! A hyperspace is stored as its membership vector: bit `A` (a raw subset
//! mask) is set iff `A` belongs to the family. The bit for `∅` is always
//! clear and the bit for the full carrier is always set. Equality, hashing
//! and ordering all go through this vector; the order is the numeric order
//! of the `2ⁿ`-bit vector read as an unsigned integer.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::ground::MAX_CARRIER;
use crate::mask::SubsetMask;

pub(crate) type Words = SmallVec<[u64; 1]>;

/// Positions (subset masks) whose bit `i` is clear, for `i < 6`.
const LOW: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0F0F_0F0F_0F0F_0F0F,
    0x00FF_00FF_00FF_00FF,
    0x0000_FFFF_0000_FFFF,
    0x0000_0000_FFFF_FFFF,
];

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Hyperspace {
    n: u8,
    words: Words,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatticeOp {
    Meet,
    Join,
}

#[inline]
pub(crate) fn word_count(n: usize) -> usize {
    if n <= 6 {
        1
    } else {
        1 << (n - 6)
    }
}

/// Mask of the valid bits in the last word.
#[inline]
fn valid_bits(n: usize) -> u64 {
    if n >= 6 {
        u64::MAX
    } else {
        (1u64 << (1 << n)) - 1
    }
}

fn check_carrier(n: usize) -> Result<()> {
    if n == 0 || n > MAX_CARRIER {
        Err(Error::SizeLimit {
            what: "hyperspaces",
            n,
            limit: MAX_CARRIER,
        })
    } else {
        Ok(())
    }
}

/// In-place upward closure of a raw membership vector.
pub(crate) fn close_upward(n: usize, words: &mut [u64]) {
    for (i, low) in LOW.iter().enumerate().take(n.min(6)) {
        let shift = 1 << i;
        for w in words.iter_mut() {
            *w |= (*w & low) << shift;
        }
    }
    for i in 6..n {
        let stride = 1 << (i - 6);
        for j in 0..words.len() {
            if j & stride == 0 {
                words[j | stride] |= words[j];
            }
        }
    }
}

impl Hyperspace {
    /// Wraps a raw vector that is known to satisfy the invariants.
    pub(crate) fn from_words(n: usize, words: Words) -> Self {
        debug_assert_eq!(words.len(), word_count(n));
        let h = Hyperspace { n: n as u8, words };
        debug_assert!(h.is_valid(), "invalid membership vector for n = {n}");
        h
    }

    /// A single-word hyperspace, `n ≤ 6`.
    pub(crate) fn from_word(n: usize, word: u64) -> Self {
        Self::from_words(n, smallvec::smallvec![word])
    }

    /// Builds a hyperspace from a membership predicate, checking every invariant.
    pub fn from_predicate<F: FnMut(SubsetMask) -> bool>(n: usize, mut member: F) -> Result<Self> {
        check_carrier(n)?;
        let mut words: Words = smallvec::smallvec![0; word_count(n)];
        for a in 1..(1usize << n) {
            if member(SubsetMask(a as u32)) {
                words[a >> 6] |= 1 << (a & 63);
            }
        }
        let h = Hyperspace { n: n as u8, words };
        if !h.is_valid() {
            return Err(Error::Parse {
                input: "membership predicate".into(),
                reason: "family is not an inclusion hyperspace".into(),
            });
        }
        Ok(h)
    }

    /// `min G(X) = {X}`.
    pub fn min(n: usize) -> Self {
        assert!((1..=MAX_CARRIER).contains(&n));
        let mut words: Words = smallvec::smallvec![0; word_count(n)];
        let full = (1usize << n) - 1;
        words[full >> 6] |= 1 << (full & 63);
        Hyperspace { n: n as u8, words }
    }

    /// `max G(X)`: every non-empty subset.
    pub fn max(n: usize) -> Self {
        assert!((1..=MAX_CARRIER).contains(&n));
        let mut words: Words = smallvec::smallvec![u64::MAX; word_count(n)];
        let last = words.len() - 1;
        words[last] &= valid_bits(n);
        words[0] &= !1;
        Hyperspace { n: n as u8, words }
    }

    /// `⟨B⟩`: all sets containing some base set.
    pub fn generate(n: usize, base: &[SubsetMask]) -> Result<Self> {
        check_carrier(n)?;
        if base.is_empty() {
            return Err(Error::EmptyBase);
        }
        let full = SubsetMask::full(n);
        let mut words: Words = smallvec::smallvec![0; word_count(n)];
        for &b in base {
            if b.is_empty() {
                return Err(Error::EmptySetInBase);
            }
            if !b.is_subset_of(full) {
                return Err(Error::IndexOutOfRange {
                    index: 31 - (b.bits() & !full.bits()).leading_zeros() as usize,
                    n,
                });
            }
            words[b.index() >> 6] |= 1 << (b.index() & 63);
        }
        close_upward(n, &mut words);
        Ok(Hyperspace { n: n as u8, words })
    }

    /// `⟨{x}⟩`, the principal ultrafilter at `x`.
    pub fn principal(n: usize, x: usize) -> Result<Self> {
        check_carrier(n)?;
        if x >= n {
            return Err(Error::IndexOutOfRange { index: x, n });
        }
        Self::generate(n, &[SubsetMask::singleton(x)])
    }

    #[inline]
    pub fn carrier_size(&self) -> usize {
        self.n as usize
    }

    /// The membership vector as a single word; `n ≤ 6` only.
    #[inline]
    pub fn word(&self) -> u64 {
        debug_assert!(self.n <= 6);
        self.words[0]
    }

    #[inline]
    pub fn contains(&self, set: SubsetMask) -> bool {
        let a = set.index();
        self.words[a >> 6] >> (a & 63) & 1 == 1
    }

    /// Number of member sets.
    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Member sets in ascending mask order.
    pub fn members(&self) -> impl Iterator<Item = SubsetMask> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(SubsetMask((k * 64 + b) as u32))
            })
        })
    }

    /// Checks `∅ ∉ F`, `X ∈ F`, upward closure and the padding bits.
    pub fn is_valid(&self) -> bool {
        let n = self.carrier_size();
        if n == 0 || n > MAX_CARRIER || self.words.len() != word_count(n) {
            return false;
        }
        if self.words[self.words.len() - 1] & !valid_bits(n) != 0 {
            return false;
        }
        if self.contains(SubsetMask::EMPTY) || !self.contains(SubsetMask::full(n)) {
            return false;
        }
        let mut closed = self.words.clone();
        close_upward(n, &mut closed);
        closed == self.words
    }

    fn same_carrier(&self, other: &Hyperspace) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::CarrierMismatch(
                self.carrier_size(),
                other.carrier_size(),
            ))
        }
    }

    /// Member-wise AND (`∧`) or OR (`∨`) of the two families.
    pub fn combine(&self, op: LatticeOp, other: &Hyperspace) -> Result<Self> {
        self.same_carrier(other)?;
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| match op {
                LatticeOp::Meet => a & b,
                LatticeOp::Join => a | b,
            })
            .collect();
        Ok(Hyperspace { n: self.n, words })
    }

    pub fn meet(&self, other: &Hyperspace) -> Result<Self> {
        self.combine(LatticeOp::Meet, other)
    }

    pub fn join(&self, other: &Hyperspace) -> Result<Self> {
        self.combine(LatticeOp::Join, other)
    }

    /// `F ⊆ G` as families.
    pub fn is_subfamily_of(&self, other: &Hyperspace) -> bool {
        self.n == other.n
            && self
                .words
                .iter()
                .zip(&other.words)
                .all(|(a, b)| a & !b == 0)
    }

    /// `F^⊥`: the sets meeting every member of `F`.
    ///
    /// `E` misses some member iff its complement contains one, so
    /// `E ∈ F^⊥ ⇔ X \ E ∉ F`; complementing the index reverses the vector.
    pub fn transversal(&self) -> Self {
        let n = self.carrier_size();
        let words: Words = if n <= 6 {
            let len = 1u32 << n;
            let rev = self.words[0].reverse_bits() >> (64 - len);
            smallvec::smallvec![!rev & valid_bits(n)]
        } else {
            self.words.iter().rev().map(|w| !w.reverse_bits()).collect()
        };
        Hyperspace::from_words(n, words)
    }

    /// The inclusion-minimal members, ascending by mask.
    pub fn minimal_sets(&self) -> Vec<SubsetMask> {
        self.members()
            .filter(|&a| a.iter().all(|i| !self.contains(a.without(i))))
            .collect()
    }

    /// The union of the minimal sets.
    ///
    /// On a finite discrete carrier `F ∈ G(A)` holds exactly when every
    /// minimal set lies inside `A`, so the intersection of all such `A`
    /// is this union.
    pub fn support(&self) -> SubsetMask {
        self.minimal_sets()
            .into_iter()
            .fold(SubsetMask::EMPTY, SubsetMask::union)
    }

    /// Whether `F` is a principal ultrafilter, and at which point.
    pub fn as_principal(&self) -> Option<usize> {
        match self.minimal_sets().as_slice() {
            [single] if single.len() == 1 => single.iter().next(),
            _ => None,
        }
    }
}

impl Ord for Hyperspace {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

impl PartialOrd for Hyperspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `<[0,1],[0,2]>` with element indices; see [`crate::literal`] for names.
/// Serialized as its minimal sets, each a list of point indices.
impl serde::Serialize for Hyperspace {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let sets: Vec<Vec<usize>> = self
            .minimal_sets()
            .into_iter()
            .map(|a| a.iter().collect())
            .collect();
        sets.serialize(s)
    }
}

impl fmt::Display for Hyperspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (k, a) in self.minimal_sets().into_iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for (t, i) in a.iter().enumerate() {
                if t > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{i}")?;
            }
            write!(f, "]")?;
        }
        write!(f, ">")
    }
}

impl fmt::Debug for Hyperspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hyperspace(n={}, {})", self.n, self)
    }
}
