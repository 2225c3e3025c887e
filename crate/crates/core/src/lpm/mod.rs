//! Lattice path matroids.
//!
//! `M[U, L]` has as bases the k-subsets `B` with `U <=_G B <=_G L`. Reading
//! the elements `1..=n` as steps of a lattice path from `(0,0)` to
//! `(n-k, k)`, with element `i` a North step iff `i` is in the set, `U` is
//! the upper boundary path and `L` the lower one.

mod diagram;

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::Serialize;

use crate::error::{LpmError, Result};
use crate::subset::{parse_subset_at, GroundSubset};

pub use diagram::{render_diagram, DiagramArtifact};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Lpm {
    n: usize,
    #[serde(rename = "U")]
    upper: GroundSubset,
    #[serde(rename = "L")]
    lower: GroundSubset,
}

impl Lpm {
    /// Validated `M[upper, lower]` on `[n]`.
    pub fn new(n: usize, upper: GroundSubset, lower: GroundSubset) -> Result<Self> {
        for s in [&upper, &lower] {
            if s.n() != n {
                return Err(LpmError::GroundMismatch { left: n, right: s.n() });
            }
        }
        if !upper.gale_leq(&lower)? {
            return Err(LpmError::GaleViolation {
                upper: upper.to_string(),
                lower: lower.to_string(),
            });
        }
        Ok(Self { n, upper, lower })
    }

    pub fn from_elements(n: usize, upper: &[usize], lower: &[usize]) -> Result<Self> {
        Self::new(
            n,
            GroundSubset::new(n, upper.iter().copied())?,
            GroundSubset::new(n, lower.iter().copied())?,
        )
    }

    /// The uniform matroid `U_{k,n}`.
    pub fn uniform(k: usize, n: usize) -> Result<Self> {
        Self::new(n, GroundSubset::initial(n, k)?, GroundSubset::terminal(n, k)?)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.upper.len()
    }

    pub fn corank(&self) -> usize {
        self.n - self.rank()
    }

    pub fn upper(&self) -> &GroundSubset {
        &self.upper
    }

    pub fn lower(&self) -> &GroundSubset {
        &self.lower
    }

    pub fn is_uniform(&self) -> bool {
        Self::uniform(self.rank(), self.n).map(|u| u == *self).unwrap_or(false)
    }

    /// Compact label such as `M[1246,3568]`.
    pub fn label(&self) -> String {
        format!("M[{},{}]", self.upper.compact(), self.lower.compact())
    }

    /// Bases in lexicographic order.
    pub fn bases(&self) -> BasisSet {
        BasisSet { n: self.n, rank: self.rank(), bases: gale_interval(&self.upper, &self.lower) }
    }

    pub fn num_bases(&self) -> usize {
        gale_interval(&self.upper, &self.lower).len()
    }

    /// Gale sandwich test `U <=_G B <=_G L`.
    pub fn is_basis(&self, b: &GroundSubset) -> Result<bool> {
        Ok(self.upper.gale_leq(b)? && b.gale_leq(&self.lower)?)
    }

    fn check_exchange_args(&self, b: &GroundSubset, p: usize) -> Result<()> {
        if !self.is_basis(b)? {
            return Err(LpmError::NotABasis(b.to_string()));
        }
        if p == 0 || p > self.n {
            return Err(LpmError::ElementOutOfRange { element: p, n: self.n });
        }
        if b.contains(p) {
            return Err(LpmError::ElementInBasis(p));
        }
        Ok(())
    }

    /// The fundamental set `B_p = {q in B : B + p - q is a basis}`, read off
    /// the path of `B` without testing exchanges: it is the run of North
    /// steps from the last point where `B` could still move down onto `L`
    /// before `p` up to the first point after `p` where it would cross `U`.
    pub fn fundamental_set(&self, b: &GroundSubset, p: usize) -> Result<GroundSubset> {
        self.check_exchange_args(b, p)?;
        let k = self.rank();
        let bs = b.to_vec();
        let us = self.upper.to_vec();
        let ls = self.lower.to_vec();
        // 1-based accessors
        let bb = |r: usize| bs[r - 1];
        let u = |r: usize| us[r - 1];
        let l = |r: usize| ls[r - 1];
        // b_{x-1} < p < b_x
        let x = bs.iter().take_while(|&&e| e < p).count() + 1;

        // Removing b_q (q < x) shifts b_{q+1..x-1} and p down one position.
        let mut s = x;
        while s > 1 {
            let r = s - 1;
            let shifted = if r == x - 1 { p } else { bb(r + 1) };
            if shifted <= l(r) {
                s -= 1;
            } else {
                break;
            }
        }
        // Removing b_q (q >= x) shifts p and b_{x..q-1} up one position.
        let mut t = x - 1;
        while t < k {
            let r = t + 1;
            let shifted = if r == x { p } else { bb(r - 1) };
            if shifted >= u(r) {
                t += 1;
            } else {
                break;
            }
        }
        GroundSubset::new(self.n, (s..=t).map(bb))
    }

    /// `B_p` by testing every exchange with [`Lpm::is_basis`].
    pub fn fundamental_set_oracle(&self, b: &GroundSubset, p: usize) -> Result<GroundSubset> {
        self.check_exchange_args(b, p)?;
        let mut keep = Vec::new();
        for q in b.iter() {
            if self.is_basis(&b.without(q).with(p)?)? {
                keep.push(q);
            }
        }
        GroundSubset::new(self.n, keep)
    }

    /// `M* = M[complement(L), complement(U)]`.
    pub fn dual(&self) -> Self {
        Self { n: self.n, upper: self.lower.complement(), lower: self.upper.complement() }
    }

    /// Elements in no basis: `i` is a non-loop iff `u_t <= i <= l_t` for some `t`.
    pub fn loops(&self) -> GroundSubset {
        let mut non_loops = 0u64;
        for (u, l) in self.upper.iter().zip(self.lower.iter()) {
            for i in u..=l {
                non_loops |= 1u64 << (i - 1);
            }
        }
        GroundSubset::from_bits(self.n, non_loops)
            .expect("elements of U and L lie in [n]")
            .complement()
    }

    /// Elements in every basis, i.e. loops of the dual.
    pub fn coloops(&self) -> GroundSubset {
        self.dual().loops()
    }

    pub fn loops_and_coloops(&self) -> (GroundSubset, GroundSubset) {
        (self.loops(), self.coloops())
    }

    pub fn is_loop_coloop_free(&self) -> bool {
        self.loops().is_empty() && self.coloops().is_empty()
    }

    /// Bases of the `i`-th truncation: the `(k-i)`-subsets of bases.
    pub fn truncation_bases(&self, i: usize) -> Result<BasisSet> {
        let k = self.rank();
        if i > k {
            return Err(LpmError::RankOutOfRange { rank: i, max: k });
        }
        let mut out = BTreeSet::new();
        for b in gale_interval(&self.upper, &self.lower) {
            for sub in b.iter().combinations(k - i) {
                out.insert(GroundSubset::new(self.n, sub)?);
            }
        }
        BasisSet::new(self.n, out)
    }
}

/// Enumerates the Gale interval `[lo, hi]` in lexicographic order.
fn gale_interval(lo: &GroundSubset, hi: &GroundSubset) -> Vec<GroundSubset> {
    fn go(
        r: usize,
        prev: usize,
        lo: &[usize],
        hi: &[usize],
        bits: u64,
        n: usize,
        out: &mut Vec<GroundSubset>,
    ) {
        if r == lo.len() {
            out.push(GroundSubset::from_bits(n, bits).expect("within ground set"));
            return;
        }
        for e in lo[r].max(prev + 1)..=hi[r] {
            go(r + 1, e, lo, hi, bits | (1u64 << (e - 1)), n, out);
        }
    }
    let mut out = Vec::new();
    go(0, 0, &lo.to_vec(), &hi.to_vec(), 0, lo.n(), &mut out);
    out
}

impl Ord for Lpm {
    /// By ground size, then rank, then `U`, then `L`.
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then(self.rank().cmp(&other.rank()))
            .then_with(|| self.upper.cmp(&other.upper))
            .then_with(|| self.lower.cmp(&other.lower))
    }
}

impl PartialOrd for Lpm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Lpm {
    /// Canonical text form `M[1,2,4,6|3,5,6,8]@8`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M[{}|{}]@{}", self.upper, self.lower, self.n)
    }
}

impl fmt::Debug for Lpm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Lpm {
    type Err = LpmError;

    fn from_str(s: &str) -> Result<Self> {
        parse_lpm(s)
    }
}

fn parse_err(position: usize, message: impl Into<String>) -> LpmError {
    LpmError::Parse { position, message: message.into() }
}

/// Parses `M[<U>|<L>]@<n>`, e.g. `M[1,2,4,6|3,5,6,8]@8`, `M[-|-]@4`, or the
/// digit shorthand `M[1246|3568]@8` when `n <= 9`.
pub fn parse_lpm(s: &str) -> Result<Lpm> {
    let open = s.find("M[").ok_or_else(|| parse_err(0, "expected `M[`"))?;
    if !s[..open].trim().is_empty() {
        return Err(parse_err(0, "unexpected text before `M[`"));
    }
    let body_start = open + 2;
    let bar = s[body_start..]
        .find('|')
        .map(|i| i + body_start)
        .ok_or_else(|| parse_err(body_start, "expected `|` between U and L"))?;
    let close = s[bar..]
        .find(']')
        .map(|i| i + bar)
        .ok_or_else(|| parse_err(bar + 1, "expected `]`"))?;
    let rest = &s[close + 1..];
    let at = rest.trim_end();
    if !at.starts_with('@') {
        return Err(parse_err(close + 1, "expected `@<n>` after `]`"));
    }
    let n: usize = at[1..]
        .trim()
        .parse()
        .map_err(|_| parse_err(close + 2, format!("expected ground size, found {:?}", &at[1..])))?;
    let upper = parse_subset_at(n, &s[body_start..bar], body_start)?;
    let lower = parse_subset_at(n, &s[bar + 1..close], bar + 1)?;
    Lpm::new(n, upper, lower)
}

/// Canonical text form of `m`.
pub fn format_lpm(m: &Lpm) -> String {
    m.to_string()
}

/// A nonempty collection of equal-size subsets of `[n]`, sorted
/// lexicographically without duplicates.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct BasisSet {
    n: usize,
    rank: usize,
    bases: Vec<GroundSubset>,
}

impl BasisSet {
    pub fn new(n: usize, bases: impl IntoIterator<Item = GroundSubset>) -> Result<Self> {
        let set: BTreeSet<GroundSubset> = bases.into_iter().collect();
        let first = set
            .first()
            .copied()
            .ok_or_else(|| LpmError::Precondition("basis collection is empty".into()))?;
        for b in &set {
            if b.n() != n {
                return Err(LpmError::GroundMismatch { left: n, right: b.n() });
            }
            if b.len() != first.len() {
                return Err(LpmError::SizeMismatch { left: first.len(), right: b.len() });
            }
        }
        Ok(Self { n, rank: first.len(), bases: set.into_iter().collect() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.bases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bases.is_empty()
    }

    pub fn as_slice(&self) -> &[GroundSubset] {
        &self.bases
    }

    pub fn iter(&self) -> std::slice::Iter<'_, GroundSubset> {
        self.bases.iter()
    }

    pub fn contains(&self, b: &GroundSubset) -> bool {
        self.bases.binary_search(b).is_ok()
    }
}

impl<'a> IntoIterator for &'a BasisSet {
    type Item = &'a GroundSubset;
    type IntoIter = std::slice::Iter<'a, GroundSubset>;

    fn into_iter(self) -> Self::IntoIter {
        self.iter()
    }
}

/// Returns `M[U, L]` when the collection is exactly a Gale interval `[U, L]`.
pub fn recognize_lpm(bases: &BasisSet) -> Option<Lpm> {
    let mut it = bases.iter();
    let first = *it.next()?;
    let (mut lo, mut hi) = (first, first);
    for b in it {
        lo = lo.gale_meet(b).ok()?;
        hi = hi.gale_join(b).ok()?;
    }
    // every member lies in [lo, hi], so equality is a cardinality check
    if !bases.contains(&lo) || !bases.contains(&hi) {
        return None;
    }
    if gale_interval(&lo, &hi).len() != bases.len() {
        return None;
    }
    Lpm::new(bases.n(), lo, hi).ok()
}
