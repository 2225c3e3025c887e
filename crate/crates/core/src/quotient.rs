//! Quotients among lattice path matroids.
//!
//! `M' = M[U', L']` is a quotient of `M = M[U, L]` exactly when `U' ⊆ U`,
//! `L' ⊆ L`, and the greedy pairing of `L \ L'` with `U \ U'` (both sorted,
//! matched in order) can be removed pair by pair, each pair good in the
//! matroid left by the previous removals. [`is_quotient_oracle`] decides the
//! same relation from base sets alone, by the exchange criterion.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use itertools::Itertools;
use serde::Serialize;

use crate::error::{LpmError, Result};
use crate::lpm::{BasisSet, Lpm};

/// A pair `(ℓ, u)` with `ℓ` taken from the lower path and `u` from the upper.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Pair {
    pub lower: usize,
    pub upper: usize,
}

impl Pair {
    pub fn new(lower: usize, upper: usize) -> Self {
        Self { lower, upper }
    }
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.lower, self.upper)
    }
}

/// An ordered sequence of pairs, removed front to back.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Pairing {
    pub pairs: Vec<Pair>,
}

impl Pairing {
    pub fn new(pairs: Vec<Pair>) -> Self {
        Self { pairs }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

impl fmt::Display for Pairing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.pairs.iter().join(","))
    }
}

impl From<Vec<(usize, usize)>> for Pairing {
    fn from(v: Vec<(usize, usize)>) -> Self {
        Self { pairs: v.into_iter().map(|(l, u)| Pair::new(l, u)).collect() }
    }
}

fn good_by_position(m: &Lpm, lower: usize, upper: usize) -> Option<bool> {
    let i = m.lower().position(lower)?;
    let j = m.upper().position(upper)?;
    Some(i <= j && upper as isize - lower as isize <= (j - i) as isize)
}

/// `(ℓ_i, u_j)` is good iff `i <= j` and `u_j - ℓ_i <= j - i`.
pub fn is_good_pair(m: &Lpm, lower: usize, upper: usize) -> Result<bool> {
    if !m.lower().contains(lower) {
        return Err(LpmError::NotMember { element: lower, set: format!("L = {{{}}}", m.lower()) });
    }
    if !m.upper().contains(upper) {
        return Err(LpmError::NotMember { element: upper, set: format!("U = {{{}}}", m.upper()) });
    }
    Ok(good_by_position(m, lower, upper).expect("membership checked"))
}

/// `M[U - u, L - ℓ]` for a good pair `(ℓ, u)`.
pub fn remove_pair(m: &Lpm, lower: usize, upper: usize) -> Result<Lpm> {
    if !is_good_pair(m, lower, upper)? {
        return Err(LpmError::BadPair { lower, upper });
    }
    Lpm::new(m.n(), m.upper().without(upper), m.lower().without(lower))
}

/// Matches `L \ L'` with `U \ U'` in increasing order.
pub fn greedy_pairing(sub: &Lpm, sup: &Lpm) -> Result<Pairing> {
    if sub.n() != sup.n() {
        return Err(LpmError::GroundMismatch { left: sub.n(), right: sup.n() });
    }
    if !sub.upper().is_subset(sup.upper()) || !sub.lower().is_subset(sup.lower()) {
        return Err(LpmError::NotContained { sub: sub.to_string(), sup: sup.to_string() });
    }
    let ls = sup.lower().difference(sub.lower());
    let us = sup.upper().difference(sub.upper());
    Ok(Pairing { pairs: ls.iter().zip(us.iter()).map(|(l, u)| Pair::new(l, u)).collect() })
}

/// Index of the first pair that is not good at the moment it is removed.
fn first_bad_pair(m: &Lpm, pairing: &Pairing) -> Option<usize> {
    let mut current = *m;
    for (idx, p) in pairing.pairs.iter().enumerate() {
        match good_by_position(&current, p.lower, p.upper) {
            Some(true) => {
                current = Lpm::new(
                    current.n(),
                    current.upper().without(p.upper),
                    current.lower().without(p.lower),
                )
                .expect("removing a good pair keeps the paths non-crossing");
            }
            _ => return Some(idx),
        }
    }
    None
}

/// Removes the pairs in order, re-indexing after each removal; true iff
/// every pair is a good pair of the matroid it is removed from.
pub fn is_good_pairing(m: &Lpm, pairing: &Pairing) -> bool {
    first_bad_pair(m, pairing).is_none()
}

/// Outcome of the quotient test, with a witness either way.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum QuotientVerdict {
    Quotient { pairing: Pairing },
    GroundMismatch,
    NotContained,
    BadPair { index: usize, pair: Pair, pairing: Pairing },
}

impl QuotientVerdict {
    pub fn is_quotient(&self) -> bool {
        matches!(self, QuotientVerdict::Quotient { .. })
    }
}

pub fn explain_quotient(sub: &Lpm, sup: &Lpm) -> QuotientVerdict {
    if sub.n() != sup.n() {
        return QuotientVerdict::GroundMismatch;
    }
    let pairing = match greedy_pairing(sub, sup) {
        Ok(p) => p,
        Err(_) => return QuotientVerdict::NotContained,
    };
    match first_bad_pair(sup, &pairing) {
        None => QuotientVerdict::Quotient { pairing },
        Some(index) => QuotientVerdict::BadPair { index, pair: pairing.pairs[index], pairing },
    }
}

/// `sub <=_Q sup`: containment of both paths plus goodness of the greedy pairing.
pub fn is_quotient(sub: &Lpm, sup: &Lpm) -> bool {
    explain_quotient(sub, sup).is_quotient()
}

/// Brute-force quotient test on base sets: for every basis `B` of `sup` and
/// `p ∉ B` some basis `B' ⊆ B` of `sub` has `B'_p ⊆ B_p`.
pub fn is_quotient_oracle(sub: &BasisSet, sup: &BasisSet) -> bool {
    if sub.n() != sup.n() {
        return false;
    }
    let n = sup.n();
    let sub_set: HashSet<u64> = sub.iter().map(|b| b.bits()).collect();
    let sup_set: HashSet<u64> = sup.iter().map(|b| b.bits()).collect();
    let exchange = |set: &HashSet<u64>, b: u64, p: usize| -> u64 {
        let pbit = 1u64 << (p - 1);
        let mut out = 0u64;
        let mut rest = b;
        while rest != 0 {
            let q = rest & rest.wrapping_neg();
            rest &= rest - 1;
            if set.contains(&((b & !q) | pbit)) {
                out |= q;
            }
        }
        out
    };
    sup.iter().all(|b| {
        let b = b.bits();
        (1..=n).filter(|p| b & (1u64 << (p - 1)) == 0).all(|p| {
            let bp = exchange(&sup_set, b, p);
            sub.iter().any(|b2| {
                let b2 = b2.bits();
                b2 & !b == 0 && exchange(&sub_set, b2, p) & !bp == 0
            })
        })
    })
}

/// All corank-1 quotients `M[U - u, L - ℓ]` over good pairs `(ℓ, u)`, sorted.
pub fn quotient_children(m: &Lpm) -> Vec<Lpm> {
    let mut out = BTreeSet::new();
    for l in m.lower().iter() {
        for u in m.upper().iter() {
            if good_by_position(m, l, u) == Some(true) {
                out.insert(
                    Lpm::new(m.n(), m.upper().without(u), m.lower().without(l))
                        .expect("good pair removal is valid"),
                );
            }
        }
    }
    out.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subset::k_subsets;

    fn m(text: &str) -> Lpm {
        text.parse().unwrap()
    }

    fn all_lpms(n: usize) -> Vec<Lpm> {
        let mut out = Vec::new();
        for k in 0..=n {
            for u in k_subsets(n, k) {
                for l in k_subsets(n, k) {
                    if u.gale_leq(&l).unwrap() {
                        out.push(Lpm::new(n, u, l).unwrap());
                    }
                }
            }
        }
        out
    }

    #[test]
    fn good_pair_examples() {
        let mm = m("M[1357|3578]@8");
        assert!(!is_good_pair(&mm, 3, 7).unwrap());
        let diag = m("M[246|246]@7");
        for (i, x) in [2, 4, 6].into_iter().enumerate() {
            let _ = i;
            assert!(is_good_pair(&diag, x, x).unwrap());
        }
        let full = Lpm::uniform(6, 6).unwrap();
        for l in 1..=6 {
            for u in 1..=6 {
                assert_eq!(is_good_pair(&full, l, u).unwrap(), l <= u);
            }
        }
        assert!(matches!(is_good_pair(&mm, 4, 7), Err(LpmError::NotMember { .. })));
        assert!(matches!(is_good_pair(&mm, 3, 4), Err(LpmError::NotMember { .. })));
    }

    #[test]
    fn remove_pair_examples() {
        let full = Lpm::uniform(8, 8).unwrap();
        let got = remove_pair(&full, 1, 3).unwrap();
        assert_eq!(got, Lpm::from_elements(8, &[1, 2, 4, 5, 6, 7, 8], &[2, 3, 4, 5, 6, 7, 8]).unwrap());
        assert_eq!(got.rank(), 7);
        assert_eq!(
            remove_pair(&m("M[1357|3578]@8"), 3, 7),
            Err(LpmError::BadPair { lower: 3, upper: 7 })
        );
    }

    #[test]
    fn greedy_pairing_examples() {
        let p = greedy_pairing(&m("M[1246|3568]@8"), &Lpm::uniform(8, 8).unwrap()).unwrap();
        assert_eq!(p, Pairing::from(vec![(1, 3), (2, 5), (4, 7), (7, 8)]));
        let mm = m("M[124|268]@8");
        assert!(greedy_pairing(&mm, &mm).unwrap().is_empty());
        let p = greedy_pairing(&m("M[12|68]@8"), &mm).unwrap();
        assert_eq!(p, Pairing::from(vec![(2, 4)]));
        assert!(matches!(
            greedy_pairing(&m("M[12|58]@8"), &mm),
            Err(LpmError::NotContained { .. })
        ));
    }

    #[test]
    fn good_pairing_examples() {
        let u33 = Lpm::uniform(3, 3).unwrap();
        assert!(is_good_pairing(&u33, &Pairing::from(vec![(1, 2), (2, 3)])));
        assert!(is_good_pairing(&u33, &Pairing::from(vec![(2, 3), (1, 2)])));
        assert!(is_good_pairing(&u33, &Pairing::from(vec![(1, 3), (2, 2)])));
        assert!(!is_good_pairing(&u33, &Pairing::from(vec![(2, 2), (1, 3)])));
        assert!(is_good_pairing(&u33, &Pairing::default()));
    }

    #[test]
    fn quotient_examples() {
        let sup = m("M[124|268]@8");
        assert!(!is_quotient(&m("M[12|58]@8"), &sup));
        assert!(is_quotient(&m("M[12|68]@8"), &sup));
        assert!(is_quotient(&Lpm::uniform(0, 8).unwrap(), &sup));
        assert!(is_quotient(&sup, &sup));
        assert!(matches!(
            explain_quotient(&m("M[13|23]@3"), &m("M[12|23]@3")),
            QuotientVerdict::NotContained
        ));
        // (3,7) is bad in M[1357,3578]
        match explain_quotient(&m("M[135|578]@8"), &m("M[1357|3578]@8")) {
            QuotientVerdict::BadPair { pair, index, .. } => {
                assert_eq!((pair, index), (Pair::new(3, 7), 0));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn oracle_examples() {
        for n in 0..=5 {
            for r in 0..=n {
                for s in r..=n {
                    let a = Lpm::uniform(r, n).unwrap().bases();
                    let b = Lpm::uniform(s, n).unwrap().bases();
                    assert!(is_quotient_oracle(&a, &b));
                }
            }
        }
        let mm = m("M[1246|2568]@8").bases();
        assert!(is_quotient_oracle(&mm, &mm));
        assert!(!is_quotient_oracle(&m("M[12|58]@8").bases(), &m("M[124|268]@8").bases()));
    }

    #[test]
    fn truncation_is_a_quotient() {
        let mm = m("M[135|246]@6");
        for i in 0..=3 {
            assert!(is_quotient_oracle(&mm.truncation_bases(i).unwrap(), &mm.bases()));
        }
    }

    #[test]
    fn children_examples() {
        let c = quotient_children(&Lpm::uniform(3, 3).unwrap());
        assert_eq!(c.len(), 6);
        assert!(c.iter().all(|x| x.rank() == 2));
        for parent in [m("M[12|23]@3"), m("M[13|23]@3")] {
            let c = quotient_children(&parent);
            assert!(c.contains(&m("M[1|3]@3")));
            assert!(c.contains(&m("M[1|2]@3")));
        }
        assert!(quotient_children(&Lpm::uniform(0, 3).unwrap()).is_empty());
    }

    #[test]
    fn children_count_equals_good_pair_count() {
        for n in 0..=5 {
            for mm in all_lpms(n) {
                let good = mm
                    .lower()
                    .iter()
                    .cartesian_product(mm.upper().iter())
                    .filter(|&(l, u)| is_good_pair(&mm, l, u).unwrap())
                    .count();
                assert_eq!(quotient_children(&mm).len(), good);
            }
        }
    }

    #[test]
    fn characterization_matches_oracle() {
        for n in 0..=4 {
            let lpms = all_lpms(n);
            let bases: Vec<_> = lpms.iter().map(|x| x.bases()).collect();
            for (a, ba) in lpms.iter().zip(&bases) {
                for (b, bb) in lpms.iter().zip(&bases) {
                    assert_eq!(is_quotient(a, b), is_quotient_oracle(ba, bb), "{a} vs {b}");
                }
            }
        }
    }

    /// Checking only the first `z - 1` pairs of the greedy pairing accepts
    /// non-quotients, so the last pair must be checked too.
    #[test]
    fn last_pair_matters() {
        let mut disagreements = 0;
        for n in 0..=4 {
            let lpms = all_lpms(n);
            for a in &lpms {
                for b in &lpms {
                    let Ok(pairing) = greedy_pairing(a, b) else { continue };
                    if pairing.is_empty() {
                        continue;
                    }
                    let head = Pairing::new(pairing.pairs[..pairing.len() - 1].to_vec());
                    let truncated = is_good_pairing(b, &head);
                    if truncated != is_quotient_oracle(&a.bases(), &b.bases()) {
                        disagreements += 1;
                    }
                }
            }
        }
        assert!(disagreements > 0);
    }

    #[test]
    fn duality_and_containment() {
        for n in 0..=5 {
            let lpms = all_lpms(n);
            for a in &lpms {
                for b in &lpms {
                    let q = is_quotient(a, b);
                    assert_eq!(q, is_quotient(&b.dual(), &a.dual()));
                    if q {
                        assert!(a.rank() <= b.rank());
                        assert!(a.upper().is_subset(b.upper()));
                        assert!(a.lower().is_subset(b.lower()));
                    }
                }
            }
        }
    }

    #[test]
    fn quotient_is_a_partial_order() {
        for n in 0..=4 {
            let lpms = all_lpms(n);
            for a in &lpms {
                assert!(is_quotient(a, a));
                for b in &lpms {
                    let ab = is_quotient(a, b);
                    if ab && is_quotient(b, a) {
                        assert_eq!(a, b);
                    }
                    if ab && a.rank() == b.rank() {
                        assert_eq!(a, b);
                    }
                    for c in &lpms {
                        if ab && is_quotient(b, c) {
                            assert!(is_quotient(a, c), "{a} {b} {c}");
                        }
                    }
                }
            }
        }
    }

    /// Every ordering of a good greedy pairing whose pairs are mutually
    /// comparable is itself a good pairing.
    #[test]
    fn reordered_greedy_pairings_stay_good() {
        for n in 0..=5 {
            let lpms = all_lpms(n);
            for a in &lpms {
                for b in &lpms {
                    let QuotientVerdict::Quotient { pairing } = explain_quotient(a, b) else {
                        continue;
                    };
                    let z = pairing.len();
                    for order in pairing.pairs.iter().copied().permutations(z) {
                        assert!(is_good_pairing(b, &Pairing::new(order)), "{a} {b}");
                    }
                }
            }
        }
    }
}
