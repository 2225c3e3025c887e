//! Exhaustive cross-checks between independent implementations, run in parallel.
//!
//! Each suite sweeps every instance up to a ground size and counts cases
//! where two routes to the same answer disagree. Suites over pairs of
//! permutations are capped at [`PERMUTATION_CAP`] because they grow as `(n!)^2`.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::arrows::interval_union_condition;
use crate::flag::{
    all_flags, cube_interval_check, enumerate_lpfms, flag_gale_leq, flags_of_lpfm, good_interval_bruhat,
    good_interval_gale, lpfm_from_flag_pair,
};
use crate::lpm::{recognize_lpm, Lpm};
use crate::permutation::{bruhat_interval, bruhat_leq, bruhat_upper_set, Permutation};
use crate::poset::{build_poset, catalan, dyck_to_lpm, enumerate_lpms, lpm_to_dyck, narayana, rank_counts};
use crate::quotient::{is_quotient, is_quotient_oracle};

pub const PERMUTATION_CAP: usize = 6;
const MAX_EXAMPLES: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub name: &'static str,
    pub max_n: usize,
    pub cases: u64,
    pub mismatches: u64,
    pub examples: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.mismatches == 0
    }
}

/// Names of all suites, in the order [`run_all`] runs them.
pub const SUITES: &[&str] = &[
    "fundamental-set",
    "recognize",
    "quotient-oracle",
    "quotient-duality",
    "narayana",
    "dyck",
    "interval-union",
    "bruhat-closure",
    "order-reversal",
    "interval-characterization",
    "cube",
    "flag-intervals",
];

#[derive(Default)]
struct Tally {
    cases: u64,
    mismatches: u64,
    examples: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.mismatches += 1;
            if self.examples.len() < MAX_EXAMPLES {
                self.examples.push(describe());
            }
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.cases += other.cases;
        self.mismatches += other.mismatches;
        for e in other.examples {
            if self.examples.len() < MAX_EXAMPLES {
                self.examples.push(e);
            }
        }
        self
    }
}

fn sweep<T: Sync>(items: &[T], f: impl Fn(&T, &mut Tally) + Sync) -> Tally {
    items
        .par_iter()
        .map(|x| {
            let mut t = Tally::default();
            f(x, &mut t);
            t
        })
        .reduce(Tally::default, Tally::merge)
}

fn report(name: &'static str, max_n: usize, ns: impl Iterator<Item = usize>, f: impl Fn(usize) -> Tally) -> SuiteReport {
    let t = ns.map(f).fold(Tally::default(), Tally::merge);
    SuiteReport { name, max_n, cases: t.cases, mismatches: t.mismatches, examples: t.examples }
}

fn fundamental_set(max_n: usize) -> SuiteReport {
    report("fundamental-set", max_n, 0..=max_n, |n| {
        sweep(&enumerate_lpms(n), |m, t| {
            for b in m.bases().iter() {
                for p in b.complement().iter() {
                    let fast = m.fundamental_set(b, p);
                    let slow = m.fundamental_set_oracle(b, p);
                    t.check(fast.is_ok() && fast == slow, || format!("{m} B={b} p={p}"));
                }
            }
        })
    })
}

fn recognize(max_n: usize) -> SuiteReport {
    report("recognize", max_n, 0..=max_n, |n| {
        sweep(&enumerate_lpms(n), |m, t| {
            t.check(recognize_lpm(&m.bases()) == Some(*m), || m.to_string());
        })
    })
}

fn quotient_oracle(max_n: usize) -> SuiteReport {
    report("quotient-oracle", max_n, 0..=max_n, |n| {
        let all: Vec<(Lpm, _)> = enumerate_lpms(n).into_iter().map(|m| (m, m.bases())).collect();
        sweep(&all, |(a, ba), t| {
            for (b, bb) in &all {
                t.check(is_quotient(a, b) == is_quotient_oracle(ba, bb), || format!("{a} vs {b}"));
            }
        })
    })
}

fn quotient_duality(max_n: usize) -> SuiteReport {
    report("quotient-duality", max_n, 0..=max_n, |n| {
        let all = enumerate_lpms(n);
        sweep(&all, |a, t| {
            for b in &all {
                t.check(is_quotient(a, b) == is_quotient(&b.dual(), &a.dual()), || format!("{a} vs {b}"));
            }
        })
    })
}

fn narayana_counts(max_n: usize) -> SuiteReport {
    report("narayana", max_n, 1..=max_n, |n| {
        let p = build_poset(n);
        let counts = rank_counts(&p);
        let mut t = Tally::default();
        for (k, c) in counts.iter().enumerate() {
            let want = narayana(n + 1, n - k + 1).expect("1 <= n-k+1 <= n+1");
            t.check(*c as u128 == want, || format!("n={n} rank {k}: {c} vs {want}"));
        }
        t.check(p.len() as u128 == catalan(n + 1), || format!("n={n}: {} nodes", p.len()));
        for &(a, b) in p.covers() {
            t.check(p.rank(a) == p.rank(b) + 1 && is_quotient(p.node(b), p.node(a)), || {
                format!("cover {} > {}", p.node(a), p.node(b))
            });
        }
        t
    })
}

fn dyck(max_n: usize) -> SuiteReport {
    report("dyck", max_n, 0..=max_n, |n| {
        sweep(&enumerate_lpms(n), |m, t| {
            let d = lpm_to_dyck(m);
            t.check(d.peaks() == m.corank() + 1 && dyck_to_lpm(&d, n).ok() == Some(*m), || m.to_string());
        })
    })
}

fn interval_union(max_n: usize) -> SuiteReport {
    report("interval-union", max_n, 1..=max_n, |n| {
        let free: Vec<Lpm> = enumerate_lpms(n).into_iter().filter(|m| m.is_loop_coloop_free()).collect();
        sweep(&free, |a, t| {
            for b in &free {
                let ok = interval_union_condition(a, b).map(|v| v == is_quotient(a, b)).unwrap_or(false);
                t.check(ok, || format!("{a} vs {b}"));
            }
        })
    })
}

fn bruhat_closure(max_n: usize) -> SuiteReport {
    let cap = max_n.min(PERMUTATION_CAP);
    report("bruhat-closure", cap, 0..=cap, |n| {
        let all = Permutation::all(n);
        sweep(&all, |u, t| {
            let up = bruhat_upper_set(u);
            for v in &all {
                t.check(up.contains(v) == bruhat_leq(u, v), || format!("{u} vs {v}"));
            }
        })
    })
}

fn order_reversal(max_n: usize) -> SuiteReport {
    let cap = max_n.min(PERMUTATION_CAP);
    report("order-reversal", cap, 0..=cap, |n| {
        let flags = all_flags(n);
        sweep(&flags, |a, t| {
            let ta = a.bruhat_perm();
            for b in &flags {
                t.check(flag_gale_leq(a, b) == bruhat_leq(&b.bruhat_perm(), &ta), || format!("{a} vs {b}"));
            }
        })
    })
}

fn interval_characterization(max_n: usize) -> SuiteReport {
    let cap = max_n.min(PERMUTATION_CAP);
    report("interval-characterization", cap, 0..=cap, |n| {
        let flags = all_flags(n);
        sweep(&flags, |a, t| {
            for b in flags.iter().filter(|b| flag_gale_leq(a, b)) {
                let built = lpfm_from_flag_pair(a, b).map(|f| f.is_some());
                let gale = good_interval_gale(a.gale_perm(), b.gale_perm());
                let bruhat = good_interval_bruhat(&a.bruhat_perm(), &b.bruhat_perm());
                t.check(built == Ok(gale) && gale == bruhat, || format!("{a} vs {b}"));
            }
        })
    })
}

fn cube(max_n: usize) -> SuiteReport {
    let cap = max_n.min(PERMUTATION_CAP + 1);
    report("cube", cap, 1..=cap, |n| {
        let subsets: Vec<Vec<usize>> = commuting_subsets(n);
        sweep(&Permutation::all(n), |tau, t| {
            for idx in &subsets {
                let ascents = idx.iter().all(|&i| tau.at(i) < tau.at(i + 1));
                match cube_interval_check(tau, idx) {
                    Ok(v) => t.check(ascents && v, || format!("{tau} {idx:?}")),
                    Err(_) => t.check(!ascents, || format!("{tau} {idx:?} rejected")),
                }
            }
        })
    })
}

/// Sets of pairwise non-adjacent indices in `1..n`.
pub fn commuting_subsets(n: usize) -> Vec<Vec<usize>> {
    fn go(next: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        out.push(cur.clone());
        for i in next..n {
            cur.push(i);
            go(i + 2, n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, n, &mut Vec::new(), &mut out);
    out
}

fn flag_intervals(max_n: usize) -> SuiteReport {
    let cap = max_n.min(PERMUTATION_CAP);
    report("flag-intervals", cap, 0..=cap, |n| {
        sweep(&enumerate_lpfms(n), |f, t| {
            let flags = flags_of_lpfm(f).expect("full flag");
            let taus: BTreeSet<Permutation> = flags.iter().map(|b| b.bruhat_perm()).collect();
            let lo = f.lower_flag().expect("full flag").bruhat_perm();
            let hi = f.upper_flag().expect("full flag").bruhat_perm();
            let want: Option<BTreeSet<Permutation>> = bruhat_interval(&lo, &hi).ok().map(|v| v.into_iter().collect());
            t.check(want.as_ref() == Some(&taus), || f.to_string());
        })
    })
}

pub fn run_suite(name: &str, max_n: usize) -> Option<SuiteReport> {
    Some(match name {
        "fundamental-set" => fundamental_set(max_n),
        "recognize" => recognize(max_n),
        "quotient-oracle" => quotient_oracle(max_n),
        "quotient-duality" => quotient_duality(max_n),
        "narayana" => narayana_counts(max_n),
        "dyck" => dyck(max_n),
        "interval-union" => interval_union(max_n),
        "bruhat-closure" => bruhat_closure(max_n),
        "order-reversal" => order_reversal(max_n),
        "interval-characterization" => interval_characterization(max_n),
        "cube" => cube(max_n),
        "flag-intervals" => flag_intervals(max_n),
        _ => return None,
    })
}

pub fn run_all(max_n: usize) -> Vec<SuiteReport> {
    SUITES.iter().map(|s| run_suite(s, max_n).expect("listed suite")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_suites_pass_small() {
        for r in run_all(4) {
            assert!(r.passed(), "{r:?}");
            assert!(r.cases > 0, "{}", r.name);
        }
    }

    #[test]
    fn unknown_suite() {
        assert!(run_suite("nope", 3).is_none());
    }

    #[test]
    fn commuting_index_sets() {
        assert_eq!(commuting_subsets(1), vec![Vec::<usize>::new()]);
        assert_eq!(commuting_subsets(4), vec![vec![], vec![1], vec![1, 3], vec![2], vec![3]]);
        // Fibonacci counts
        assert_eq!(commuting_subsets(7).len(), 21);
    }

    #[test]
    fn quotient_pair_count() {
        let r = run_suite("quotient-oracle", 3).unwrap();
        assert_eq!(r.cases, 1 + 4 + 25 + 196);
    }
}
