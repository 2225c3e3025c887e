//! Subsets of the ground set `[n] = {1, ..., n}` and the Gale order on them.
//!
//! A [`GroundSubset`] is a bitmask over at most 64 elements. Iteration always
//! yields elements in ascending order, so the sorted sequence `a_1 < ... < a_k`
//! is available without a separate array.

use std::cmp::Ordering;
use std::fmt;

use itertools::Itertools;
use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::error::{LpmError, Result};

/// Largest supported ground set.
pub const MAX_GROUND: usize = 64;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroundSubset {
    n: u8,
    bits: u64,
}

fn check_ground(n: usize) -> Result<()> {
    if n > MAX_GROUND {
        Err(LpmError::GroundTooLarge(n))
    } else {
        Ok(())
    }
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl GroundSubset {
    /// Builds a subset of `[n]`. Elements may come in any order but must be
    /// distinct and lie in `1..=n`.
    pub fn new(n: usize, elements: impl IntoIterator<Item = usize>) -> Result<Self> {
        check_ground(n)?;
        let mut bits = 0u64;
        for e in elements {
            if e == 0 || e > n {
                return Err(LpmError::ElementOutOfRange { element: e, n });
            }
            let bit = 1u64 << (e - 1);
            if bits & bit != 0 {
                return Err(LpmError::DuplicateElement(e));
            }
            bits |= bit;
        }
        Ok(Self { n: n as u8, bits })
    }

    pub fn from_bits(n: usize, bits: u64) -> Result<Self> {
        check_ground(n)?;
        if bits & !full_mask(n) != 0 {
            let element = 64 - bits.leading_zeros() as usize;
            return Err(LpmError::ElementOutOfRange { element, n });
        }
        Ok(Self { n: n as u8, bits })
    }

    pub fn empty(n: usize) -> Result<Self> {
        Self::from_bits(n, 0)
    }

    pub fn full(n: usize) -> Result<Self> {
        check_ground(n)?;
        Ok(Self { n: n as u8, bits: full_mask(n) })
    }

    /// `{1, ..., k}`, the Gale-minimum k-subset.
    pub fn initial(n: usize, k: usize) -> Result<Self> {
        check_ground(n)?;
        if k > n {
            return Err(LpmError::RankOutOfRange { rank: k, max: n });
        }
        Ok(Self { n: n as u8, bits: full_mask(k) })
    }

    /// `{n-k+1, ..., n}`, the Gale-maximum k-subset.
    pub fn terminal(n: usize, k: usize) -> Result<Self> {
        let init = Self::initial(n, k)?;
        Ok(Self { n: init.n, bits: init.bits << (n - k) })
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn contains(&self, x: usize) -> bool {
        x >= 1 && x <= self.n() && self.bits & (1u64 << (x - 1)) != 0
    }

    /// Elements in ascending order.
    pub fn iter(&self) -> Elements {
        Elements { bits: self.bits }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// The `r`-th smallest element (1-based).
    pub fn nth(&self, r: usize) -> Option<usize> {
        if r == 0 {
            return None;
        }
        self.iter().nth(r - 1)
    }

    /// 1-based position of `x` in the sorted sequence, if present.
    pub fn position(&self, x: usize) -> Option<usize> {
        if !self.contains(x) {
            return None;
        }
        let below = self.bits & ((1u64 << (x - 1)) - 1);
        Some(below.count_ones() as usize + 1)
    }

    /// `[n] \ A`.
    pub fn complement(&self) -> Self {
        Self { n: self.n, bits: !self.bits & full_mask(self.n()) }
    }

    pub fn with(&self, x: usize) -> Result<Self> {
        if x == 0 || x > self.n() {
            return Err(LpmError::ElementOutOfRange { element: x, n: self.n() });
        }
        Ok(Self { n: self.n, bits: self.bits | (1u64 << (x - 1)) })
    }

    pub fn without(&self, x: usize) -> Self {
        if x == 0 || x > self.n() {
            return *self;
        }
        Self { n: self.n, bits: self.bits & !(1u64 << (x - 1)) }
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn difference(&self, other: &Self) -> Self {
        Self { n: self.n, bits: self.bits & !other.bits }
    }

    fn check_comparable(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(LpmError::GroundMismatch { left: self.n(), right: other.n() });
        }
        if self.len() != other.len() {
            return Err(LpmError::SizeMismatch { left: self.len(), right: other.len() });
        }
        Ok(())
    }

    /// `self <=_G other`: `a_r <= b_r` for every r.
    pub fn gale_leq(&self, other: &Self) -> Result<bool> {
        self.check_comparable(other)?;
        Ok(self.gale_leq_unchecked(other))
    }

    pub(crate) fn gale_leq_unchecked(&self, other: &Self) -> bool {
        self.iter().zip(other.iter()).all(|(a, b)| a <= b)
    }

    /// Componentwise minimum, the Gale meet.
    pub fn gale_meet(&self, other: &Self) -> Result<Self> {
        self.check_comparable(other)?;
        let n = self.n();
        Self::new(n, self.iter().zip(other.iter()).map(|(a, b)| a.min(b)))
    }

    /// Componentwise maximum, the Gale join.
    pub fn gale_join(&self, other: &Self) -> Result<Self> {
        self.check_comparable(other)?;
        let n = self.n();
        Self::new(n, self.iter().zip(other.iter()).map(|(a, b)| a.max(b)))
    }

    /// Digit-string form (`1246`) when `n <= 9`, comma form otherwise.
    pub fn compact(&self) -> String {
        if self.is_empty() {
            return "-".to_string();
        }
        if self.n() <= 9 {
            self.iter().map(|e| e.to_string()).collect()
        } else {
            self.to_string()
        }
    }
}

/// Ascending iterator over the elements of a [`GroundSubset`].
#[derive(Clone)]
pub struct Elements {
    bits: u64,
}

impl Iterator for Elements {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.bits == 0 {
            return None;
        }
        let tz = self.bits.trailing_zeros() as usize;
        self.bits &= self.bits - 1;
        Some(tz + 1)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.bits.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for Elements {}

/// Lexicographic on the sorted element sequence (after the ground size).
impl Ord for GroundSubset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n.cmp(&other.n).then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for GroundSubset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GroundSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "-");
        }
        write!(f, "{}", self.iter().join(","))
    }
}

impl fmt::Debug for GroundSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}@{}", self.iter().join(","), self.n)
    }
}

impl Serialize for GroundSubset {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.len()))?;
        for e in self.iter() {
            seq.serialize_element(&e)?;
        }
        seq.end()
    }
}

/// `A <=_G B`.
pub fn gale_leq(a: &GroundSubset, b: &GroundSubset) -> Result<bool> {
    a.gale_leq(b)
}

/// `[n] \ A`.
pub fn complement(a: &GroundSubset) -> GroundSubset {
    a.complement()
}

/// Rank of `x` inside `s` under the order-preserving relabelling `s -> [|s|]`.
pub fn standardize(s: &GroundSubset, x: usize) -> Result<usize> {
    s.position(x).ok_or_else(|| LpmError::NotMember { element: x, set: format!("{{{s}}}") })
}

/// All k-subsets of `[n]` in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> impl Iterator<Item = GroundSubset> {
    let n8 = n.min(MAX_GROUND) as u8;
    (1..=n.min(MAX_GROUND)).combinations(k).map(move |c| GroundSubset {
        n: n8,
        bits: c.iter().fold(0u64, |acc, &e| acc | (1u64 << (e - 1))),
    })
}

/// Parses `1,2,4`, `-` (empty) or, when `n <= 9`, the digit shorthand `124`.
pub fn parse_subset(n: usize, text: &str) -> Result<GroundSubset> {
    parse_subset_at(n, text, 0)
}

pub(crate) fn parse_subset_at(n: usize, text: &str, offset: usize) -> Result<GroundSubset> {
    let t = text.trim();
    if t == "-" || t.is_empty() {
        return GroundSubset::empty(n);
    }
    let mut elements = Vec::new();
    if !t.contains(',') && t.len() > 1 && n <= 9 {
        for (i, c) in t.char_indices() {
            let d = c.to_digit(10).ok_or_else(|| LpmError::Parse {
                position: offset + i,
                message: format!("expected a digit, found {c:?}"),
            })?;
            elements.push(d as usize);
        }
    } else {
        let mut pos = offset;
        for tok in text.split(',') {
            let v = tok.trim().parse::<usize>().map_err(|_| LpmError::Parse {
                position: pos,
                message: format!("expected an element, found {:?}", tok.trim()),
            })?;
            elements.push(v);
            pos += tok.len() + 1;
        }
    }
    GroundSubset::new(n, elements)
}
