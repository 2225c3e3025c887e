use proptest::prelude::*;
use proptest::sample::subsequence;

use lpm_core::{
    dyck_to_lpm, explain_quotient, is_quotient, is_quotient_oracle, lpm_to_dyck, parse_lpm, quotient_children,
    remove_pair, GroundSubset, Lpm, Permutation, QuotientVerdict,
};

fn subset(n: usize, k: usize) -> impl Strategy<Value = GroundSubset> {
    subsequence((1..=n).collect::<Vec<_>>(), k).prop_map(move |v| GroundSubset::new(n, v).unwrap())
}

/// An LPM from the Gale meet and join of two random k-subsets.
fn lpm_on(n: usize) -> impl Strategy<Value = Lpm> {
    (0..=n).prop_flat_map(move |k| (subset(n, k), subset(n, k))).prop_map(move |(a, b)| {
        Lpm::new(n, a.gale_meet(&b).unwrap(), a.gale_join(&b).unwrap()).unwrap()
    })
}

fn lpm_any(max_n: usize) -> impl Strategy<Value = Lpm> {
    (0..=max_n).prop_flat_map(lpm_on)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn fundamental_set_closed_form(m in lpm_any(11), pick in any::<prop::sample::Index>(), ppick in any::<prop::sample::Index>()) {
        let bases = m.bases();
        let b = bases.as_slice()[pick.index(bases.len())];
        let outside = b.complement().to_vec();
        prop_assume!(!outside.is_empty());
        let p = outside[ppick.index(outside.len())];
        prop_assert_eq!(m.fundamental_set(&b, p).unwrap(), m.fundamental_set_oracle(&b, p).unwrap());
    }

    #[test]
    fn text_round_trip(m in lpm_any(20)) {
        prop_assert_eq!(parse_lpm(&m.to_string()).unwrap(), m);
    }

    #[test]
    fn dual_is_an_involution(m in lpm_any(20)) {
        prop_assert_eq!(m.dual().dual(), m);
        prop_assert_eq!(m.dual().loops(), m.coloops());
    }

    #[test]
    fn dyck_round_trip(m in lpm_any(30)) {
        let d = lpm_to_dyck(&m);
        prop_assert_eq!(d.peaks(), m.corank() + 1);
        prop_assert_eq!(dyck_to_lpm(&d, m.n()).unwrap(), m);
    }

    #[test]
    fn children_are_quotients(m in lpm_any(12)) {
        for c in quotient_children(&m) {
            prop_assert!(is_quotient(&c, &m));
            prop_assert_eq!(c.rank() + 1, m.rank());
        }
    }

    #[test]
    fn quotient_matches_oracle((a, b) in (0usize..=7).prop_flat_map(|n| (lpm_on(n), lpm_on(n)))) {
        prop_assert_eq!(is_quotient(&a, &b), is_quotient_oracle(&a.bases(), &b.bases()));
    }

    /// Removing the greedy pairs of a quotient one at a time walks down to it.
    #[test]
    fn greedy_removal_reaches_the_quotient((a, b) in (0usize..=9).prop_flat_map(|n| (lpm_on(n), lpm_on(n)))) {
        if let QuotientVerdict::Quotient { pairing } = explain_quotient(&a, &b) {
            let mut cur = b;
            for p in &pairing.pairs {
                cur = remove_pair(&cur, p.lower, p.upper).unwrap();
            }
            prop_assert_eq!(cur, a);
        }
    }

    #[test]
    fn bruhat_perm_round_trip(v in Just((1..=9).collect::<Vec<usize>>()).prop_shuffle()) {
        let pi = Permutation::new(v).unwrap();
        let f = lpm_core::flag_of_perm(&pi);
        prop_assert_eq!(lpm_core::FlagOfBases::from_bruhat(&f.bruhat_perm()), f);
    }
}
