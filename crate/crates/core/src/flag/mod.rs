//! Lattice path flag matroids (LPFMs), flags of bases and their permutations.
//!
//! A full flag of bases `∅ = B_0 ⊂ B_1 ⊂ ... ⊂ B_n = [n]` is stored by its
//! Gale permutation `π(i) = B_i \ B_{i-1}`. Its Bruhat permutation is
//! `τ = π̄^{-1}` where `π̄(i) = π(n - i + 1)`. Flags ordered componentwise by
//! Gale correspond to Bruhat permutations ordered in reverse.

mod diagram;

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{LpmError, Result};
use crate::lpm::Lpm;
use crate::permutation::{bruhat_leq, Permutation};
use crate::poset::{build_poset, maximal_chain_list};
use crate::quotient::is_quotient;
use crate::subset::{standardize, GroundSubset};

pub use diagram::{flag_diagram, FlagDiagram};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FlagOfBases {
    perm: Permutation,
}

impl FlagOfBases {
    /// `B_i = {π(1), ..., π(i)}`.
    pub fn from_permutation(pi: Permutation) -> Self {
        Self { perm: pi }
    }

    /// From the Bruhat permutation: `π = reverse(τ^{-1})`.
    pub fn from_bruhat(tau: &Permutation) -> Self {
        Self { perm: tau.inverse().reversed() }
    }

    /// Validates `B_0 ⊂ ... ⊂ B_n` growing by one element per step.
    pub fn from_chain(chain: &[GroundSubset]) -> Result<Self> {
        let n = chain.first().map(|b| b.n()).unwrap_or(0);
        if chain.len() != n + 1 {
            return Err(LpmError::InvalidFlag(format!(
                "expected {} members on a ground set of size {n}, found {}",
                n + 1,
                chain.len()
            )));
        }
        let mut image = Vec::with_capacity(n);
        for (i, w) in chain.windows(2).enumerate() {
            if w[1].n() != n {
                return Err(LpmError::GroundMismatch { left: n, right: w[1].n() });
            }
            let added = w[1].difference(&w[0]);
            if !w[0].is_subset(&w[1]) || added.len() != 1 {
                return Err(LpmError::InvalidFlag(format!("step {} does not add exactly one element", i + 1)));
            }
            image.push(added.iter().next().expect("one element"));
        }
        if !chain[0].is_empty() {
            return Err(LpmError::InvalidFlag("flag must start at the empty set".into()));
        }
        Ok(Self { perm: Permutation::new(image)? })
    }

    pub fn n(&self) -> usize {
        self.perm.n()
    }

    pub fn gale_perm(&self) -> &Permutation {
        &self.perm
    }

    pub fn bruhat_perm(&self) -> Permutation {
        self.perm.reversed().inverse()
    }

    /// `B_i` for `0 <= i <= n`.
    pub fn member(&self, i: usize) -> GroundSubset {
        GroundSubset::new(self.n(), self.perm.image()[..i].iter().copied()).expect("values lie in [n]")
    }

    pub fn chain(&self) -> Vec<GroundSubset> {
        (0..=self.n()).map(|i| self.member(i)).collect()
    }

    pub fn to_json(&self) -> Value {
        let chain: Vec<Vec<usize>> = self.chain().iter().map(|b| b.to_vec()).collect();
        json!({ "chain": chain, "gale": self.perm.image(), "bruhat": self.bruhat_perm().image() })
    }
}

impl Serialize for FlagOfBases {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl fmt::Display for FlagOfBases {
    /// `∅ ⊂ 3 ⊂ 34 ⊂ 134 ⊂ 1234`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .chain()
            .iter()
            .map(|b| if b.is_empty() { "∅".to_string() } else { b.compact() })
            .collect();
        write!(f, "{}", parts.join(" ⊂ "))
    }
}

impl fmt::Debug for FlagOfBases {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Flag({})", self.perm)
    }
}

pub fn flag_of_perm(pi: &Permutation) -> FlagOfBases {
    FlagOfBases::from_permutation(pi.clone())
}

pub fn gale_perm(b: &FlagOfBases) -> Permutation {
    b.gale_perm().clone()
}

pub fn bruhat_perm(b: &FlagOfBases) -> Permutation {
    b.bruhat_perm()
}

/// Componentwise Gale comparison `B_i <=_G B'_i`. Flags of different sizes are unrelated.
pub fn flag_gale_leq(a: &FlagOfBases, b: &FlagOfBases) -> bool {
    if a.n() != b.n() {
        return false;
    }
    (1..a.n()).all(|i| a.member(i).gale_leq_unchecked(&b.member(i)))
}

/// Every full flag on `[n]`, in lexicographic order of Gale permutations.
pub fn all_flags(n: usize) -> Vec<FlagOfBases> {
    Permutation::all(n).into_iter().map(FlagOfBases::from_permutation).collect()
}

/// A chain of LPMs `M_0 <=_Q M_1 <=_Q ...` with strictly increasing ranks.
/// It is full when it has `n + 1` members, one of each rank.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Lpfm {
    n: usize,
    constituents: Vec<Lpm>,
}

impl Lpfm {
    /// A full LPFM `(M_0, ..., M_n)` with `rank(M_i) = i`.
    pub fn new(constituents: Vec<Lpm>) -> Result<Self> {
        let f = Self::partial(constituents)?;
        if !f.is_full() {
            return Err(LpmError::InvalidFlag(format!(
                "a full flag on [{}] needs {} constituents, found {}",
                f.n,
                f.n + 1,
                f.constituents.len()
            )));
        }
        Ok(f)
    }

    /// Pads `(M_1, ..., M_{n-1})` with `U_{0,n}` and `U_{n,n}`.
    pub fn from_inner(n: usize, inner: Vec<Lpm>) -> Result<Self> {
        let mut all = vec![Lpm::uniform(0, n)?];
        all.extend(inner);
        if n > 0 {
            all.push(Lpm::uniform(n, n)?);
        }
        Self::new(all)
    }

    pub fn partial(constituents: Vec<Lpm>) -> Result<Self> {
        let n = constituents
            .first()
            .map(|m| m.n())
            .ok_or_else(|| LpmError::InvalidFlag("no constituents".into()))?;
        for w in constituents.windows(2) {
            if w[1].n() != n {
                return Err(LpmError::GroundMismatch { left: n, right: w[1].n() });
            }
            if w[1].rank() <= w[0].rank() {
                return Err(LpmError::InvalidFlag(format!(
                    "ranks must increase: {} then {}",
                    w[0].rank(),
                    w[1].rank()
                )));
            }
            if !is_quotient(&w[0], &w[1]) {
                return Err(LpmError::NotQuotient { sub: w[0].to_string(), sup: w[1].to_string() });
            }
        }
        Ok(Self { n, constituents })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn constituents(&self) -> &[Lpm] {
        &self.constituents
    }

    pub fn is_full(&self) -> bool {
        self.constituents.len() == self.n + 1
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.constituents.iter().map(|m| m.rank()).collect()
    }

    /// `(U_0, ..., U_n)` as a flag, the Gale minimum of the flag set.
    pub fn upper_flag(&self) -> Result<FlagOfBases> {
        self.require_full()?;
        FlagOfBases::from_chain(&self.constituents.iter().map(|m| *m.upper()).collect::<Vec<_>>())
    }

    /// `(L_0, ..., L_n)` as a flag, the Gale maximum of the flag set.
    pub fn lower_flag(&self) -> Result<FlagOfBases> {
        self.require_full()?;
        FlagOfBases::from_chain(&self.constituents.iter().map(|m| *m.lower()).collect::<Vec<_>>())
    }

    fn require_full(&self) -> Result<()> {
        if self.is_full() {
            Ok(())
        } else {
            Err(LpmError::InvalidFlag("operation needs a full flag".into()))
        }
    }
}

impl fmt::Display for Lpfm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.constituents.iter().map(|m| m.label()).join(", "))
    }
}

/// Chains `B_0 ⊂ B_1 ⊂ ...` with `B_i` a basis of the `i`-th constituent.
pub fn chains_of_bases(f: &Lpfm) -> Vec<Vec<GroundSubset>> {
    fn go(f: &Lpfm, i: usize, chain: &mut Vec<GroundSubset>, out: &mut Vec<Vec<GroundSubset>>) {
        if i == f.constituents.len() {
            out.push(chain.clone());
            return;
        }
        for b in f.constituents[i].bases().iter() {
            if chain.last().is_none_or(|prev| prev.is_subset(b)) {
                chain.push(*b);
                go(f, i + 1, chain, out);
                chain.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(f, 0, &mut Vec::new(), &mut out);
    out
}

/// Flags of bases of a full LPFM, sorted by Gale permutation.
pub fn flags_of_lpfm(f: &Lpfm) -> Result<Vec<FlagOfBases>> {
    f.require_full()?;
    let mut out: Vec<FlagOfBases> = chains_of_bases(f)
        .iter()
        .map(|c| FlagOfBases::from_chain(c).expect("bases of consecutive ranks"))
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// All full LPFMs on `[n]`, i.e. the maximal chains of the quotient poset.
pub fn enumerate_lpfms(n: usize) -> Vec<Lpfm> {
    let p = build_poset(n);
    let bottom = Lpm::uniform(0, n).expect("valid");
    let top = Lpm::uniform(n, n).expect("valid");
    maximal_chain_list(&p, &bottom, &top, usize::MAX)
        .expect("U_{0,n} is a quotient of U_{n,n}")
        .into_iter()
        .map(|mut c| {
            c.reverse();
            Lpfm { n, constituents: c }
        })
        .collect()
}

/// `M_k = M[B_k, B'_k]`; returns the LPFM when consecutive members are quotients.
pub fn lpfm_from_flag_pair(lower: &FlagOfBases, upper: &FlagOfBases) -> Result<Option<Lpfm>> {
    if lower.n() != upper.n() {
        return Err(LpmError::GroundMismatch { left: lower.n(), right: upper.n() });
    }
    if !flag_gale_leq(lower, upper) {
        return Err(LpmError::EmptyInterval { lower: lower.to_string(), upper: upper.to_string() });
    }
    let n = lower.n();
    let constituents: Vec<Lpm> = (0..=n)
        .map(|k| Lpm::new(n, lower.member(k), upper.member(k)))
        .collect::<Result<_>>()?;
    if constituents.windows(2).all(|w| is_quotient(&w[0], &w[1])) {
        Ok(Some(Lpfm { n, constituents }))
    } else {
        Ok(None)
    }
}

/// The LPFM whose flags have Bruhat permutations filling `[low, high]_B`, if any.
pub fn lpfm_from_bruhat_interval(low: &Permutation, high: &Permutation) -> Result<Option<Lpfm>> {
    if low.n() != high.n() {
        return Err(LpmError::GroundMismatch { left: low.n(), right: high.n() });
    }
    if !bruhat_leq(low, high) {
        return Err(LpmError::EmptyInterval { lower: low.to_string(), upper: high.to_string() });
    }
    lpfm_from_flag_pair(&FlagOfBases::from_bruhat(high), &FlagOfBases::from_bruhat(low))
}

/// For each `k`: `max(0, a_k - b_k) <= st_{a[1..=k]}(a_k) - st_{b[1..=k]}(b_k)`.
fn standardization_condition(a: &[usize], b: &[usize]) -> bool {
    let n = a.len();
    (1..=n).all(|k| {
        let sa = GroundSubset::new(n, a[..k].iter().copied()).expect("values in [n]");
        let sb = GroundSubset::new(n, b[..k].iter().copied()).expect("values in [n]");
        let lhs = (a[k - 1] as isize - b[k - 1] as isize).max(0);
        let rhs = standardize(&sa, a[k - 1]).expect("member") as isize
            - standardize(&sb, b[k - 1]).expect("member") as isize;
        lhs <= rhs
    })
}

/// Interval test on Gale permutations of flags `B <=_G B'`.
pub fn good_interval_gale(pi: &Permutation, pi_prime: &Permutation) -> bool {
    pi.n() == pi_prime.n() && standardization_condition(pi.image(), pi_prime.image())
}

/// Interval test on Bruhat permutations `τ >=_B τ'`, with `a_k = τ^{-1}(n - k + 1)`.
pub fn good_interval_bruhat(tau: &Permutation, tau_prime: &Permutation) -> bool {
    if tau.n() != tau_prime.n() {
        return false;
    }
    let n = tau.n();
    let a: Vec<usize> = (1..=n).map(|k| tau.inverse().at(n - k + 1)).collect();
    let b: Vec<usize> = (1..=n).map(|k| tau_prime.inverse().at(n - k + 1)).collect();
    standardization_condition(&a, &b)
}

/// Checks `[τ, τ s_{i_1} ... s_{i_m}]_B` for pairwise commuting ascents `i_j` of `τ`.
pub fn cube_interval_check(tau: &Permutation, indices: &[usize]) -> Result<bool> {
    let n = tau.n();
    for &i in indices {
        if i == 0 || i >= n {
            return Err(LpmError::Precondition(format!("s_{i} is not a simple transposition of S_{n}")));
        }
        if tau.at(i) > tau.at(i + 1) {
            return Err(LpmError::Precondition(format!("{i} is a descent of {tau}")));
        }
    }
    for (a, b) in indices.iter().tuple_combinations() {
        if a.abs_diff(*b) < 2 {
            return Err(LpmError::Precondition(format!("s_{a} and s_{b} do not commute")));
        }
    }
    let top = indices.iter().fold(tau.clone(), |t, &i| t.swap_positions(i, i + 1));
    Ok(good_interval_bruhat(&top, tau))
}

/// `e_{B_0} + ... + e_{B_r}` for every chain of bases, sorted and deduplicated.
pub fn polytope_vertices(f: &Lpfm) -> Vec<Vec<usize>> {
    let n = f.n();
    let set: BTreeSet<Vec<usize>> = chains_of_bases(f)
        .iter()
        .map(|chain| (1..=n).map(|i| chain.iter().filter(|b| b.contains(i)).count()).collect())
        .collect();
    set.into_iter().collect()
}
