//! Permutations in one-line notation and the strong Bruhat order of `S_n`.
//!
//! Values and positions are 1-based. `u.swap_positions(i, j)` is the right
//! multiplication `u * (i, j)`.
//!
//! Bruhat comparison has two independent routes: [`bruhat_leq_closure`]
//! walks the cover relation upwards, and [`bruhat_leq`] uses the rank-matrix
//! dominance criterion. The test suite checks that they agree on `S_n`.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::Serialize;

use crate::error::{LpmError, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        let mut seen = vec![false; n + 1];
        for &v in &image {
            if v == 0 || v > n || seen[v] {
                return Err(LpmError::NotAPermutation(image.iter().join(",")));
            }
            seen[v] = true;
        }
        Ok(Self { image })
    }

    pub fn identity(n: usize) -> Self {
        Self { image: (1..=n).collect() }
    }

    /// The longest element `n, n-1, ..., 1`.
    pub fn longest(n: usize) -> Self {
        Self { image: (1..=n).rev().collect() }
    }

    /// All of `S_n` in lexicographic order.
    pub fn all(n: usize) -> Vec<Self> {
        (1..=n).permutations(n).map(|image| Self { image }).collect()
    }

    pub fn n(&self) -> usize {
        self.image.len()
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    /// `self(i)` for 1-based `i`.
    pub fn at(&self, i: usize) -> usize {
        self.image[i - 1]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.n()];
        for (i, &v) in self.image.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Self { image: inv }
    }

    /// `i -> self(n - i + 1)`.
    pub fn reversed(&self) -> Self {
        Self { image: self.image.iter().rev().copied().collect() }
    }

    /// `self * (i, j)`: exchange the values at positions `i` and `j`.
    pub fn swap_positions(&self, i: usize, j: usize) -> Self {
        let mut image = self.image.clone();
        image.swap(i - 1, j - 1);
        Self { image }
    }

    /// Number of inversions, the Bruhat rank.
    pub fn length(&self) -> usize {
        let mut count = 0;
        for i in 0..self.n() {
            for j in i + 1..self.n() {
                if self.image[i] > self.image[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Elements covering `self` in the strong Bruhat order.
    pub fn bruhat_upper_covers(&self) -> Vec<Self> {
        let n = self.n();
        let mut out = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                let (a, b) = (self.at(i), self.at(j));
                if a < b && (i + 1..j).all(|k| !(a < self.at(k) && self.at(k) < b)) {
                    out.push(self.swap_positions(i, j));
                }
            }
        }
        out
    }
}

impl fmt::Display for Permutation {
    /// Digit string for `n <= 9`, comma-separated otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n() <= 9 {
            write!(f, "{}", self.image.iter().join(""))
        } else {
            write!(f, "{}", self.image.iter().join(","))
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.image.iter().join(","))
    }
}

impl FromStr for Permutation {
    type Err = LpmError;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let image: Vec<usize> = if t.contains(',') {
            let mut pos = 0;
            let mut out = Vec::new();
            for tok in t.split(',') {
                out.push(tok.trim().parse().map_err(|_| LpmError::Parse {
                    position: pos,
                    message: format!("expected a value, found {:?}", tok.trim()),
                })?);
                pos += tok.len() + 1;
            }
            out
        } else {
            if t.len() > 9 {
                return Err(LpmError::Parse {
                    position: 9,
                    message: "digit shorthand only allowed for n <= 9".into(),
                });
            }
            t.char_indices()
                .map(|(i, c)| {
                    c.to_digit(10).map(|d| d as usize).ok_or_else(|| LpmError::Parse {
                        position: i,
                        message: format!("expected a digit, found {c:?}"),
                    })
                })
                .collect::<Result<_>>()?
        };
        Permutation::new(image)
    }
}

/// `v` covers `u`: `v = u * (i, j)` with `i < j`, `u(i) < u(j)` and no
/// position strictly between carrying a value strictly between.
/// Permutations of different sizes are never related.
pub fn bruhat_cover(u: &Permutation, v: &Permutation) -> bool {
    if u.n() != v.n() {
        return false;
    }
    let diff: Vec<usize> = (1..=u.n()).filter(|&i| u.at(i) != v.at(i)).collect();
    let [i, j] = diff[..] else {
        return false;
    };
    let (a, b) = (u.at(i), u.at(j));
    v.at(i) == b
        && v.at(j) == a
        && a < b
        && (i + 1..j).all(|k| u.at(k) < a || u.at(k) > b)
}

/// `u <=_B v` by breadth-first search along covers.
pub fn bruhat_leq_closure(u: &Permutation, v: &Permutation) -> bool {
    if u.n() != v.n() {
        return false;
    }
    let target = v.length();
    let mut seen = HashSet::from([u.clone()]);
    let mut queue = VecDeque::from([u.clone()]);
    while let Some(w) = queue.pop_front() {
        if &w == v {
            return true;
        }
        if w.length() >= target {
            continue;
        }
        for c in w.bruhat_upper_covers() {
            if seen.insert(c.clone()) {
                queue.push_back(c);
            }
        }
    }
    false
}

/// Every `v` with `u <=_B v`, by closure of the cover relation.
pub fn bruhat_upper_set(u: &Permutation) -> HashSet<Permutation> {
    let mut seen = HashSet::from([u.clone()]);
    let mut queue = VecDeque::from([u.clone()]);
    while let Some(w) = queue.pop_front() {
        for c in w.bruhat_upper_covers() {
            if seen.insert(c.clone()) {
                queue.push_back(c);
            }
        }
    }
    seen
}

/// `u <=_B v` by the dominance criterion: for every prefix length `i` and
/// threshold `t`, `#{a <= i : u(a) >= t} <= #{a <= i : v(a) >= t}`.
pub fn bruhat_leq(u: &Permutation, v: &Permutation) -> bool {
    let n = u.n();
    if n != v.n() {
        return false;
    }
    let mut in_u = vec![false; n + 1];
    let mut in_v = vec![false; n + 1];
    for i in 1..=n {
        in_u[u.at(i)] = true;
        in_v[v.at(i)] = true;
        let (mut cu, mut cv) = (0usize, 0usize);
        for t in (1..=n).rev() {
            cu += in_u[t] as usize;
            cv += in_v[t] as usize;
            if cu > cv {
                return false;
            }
        }
    }
    true
}

/// All `z` with `u <=_B z <=_B v`, in lexicographic order.
pub fn bruhat_interval(u: &Permutation, v: &Permutation) -> Result<Vec<Permutation>> {
    if !bruhat_leq(u, v) {
        return Err(LpmError::EmptyInterval { lower: u.to_string(), upper: v.to_string() });
    }
    let mut seen = BTreeSet::from([u.clone()]);
    let mut queue = VecDeque::from([u.clone()]);
    while let Some(w) = queue.pop_front() {
        for c in w.bruhat_upper_covers() {
            if bruhat_leq(&c, v) && seen.insert(c.clone()) {
                queue.push_back(c);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(p("2,4,1,3"), p("2413"));
        assert_eq!(p("2413").to_string(), "2413");
        let big = Permutation::identity(10);
        assert_eq!(big.to_string(), "1,2,3,4,5,6,7,8,9,10");
        assert_eq!(big.to_string().parse::<Permutation>().unwrap(), big);
        assert!("1123".parse::<Permutation>().is_err());
        assert!("12345678910".parse::<Permutation>().is_err());
    }

    #[test]
    fn cover_examples() {
        assert!(!bruhat_cover(&p("1243"), &p("4213")));
        assert_eq!(p("4213").length() - p("1243").length(), 3);
        assert!(bruhat_cover(&p("1234"), &p("1243")));
        assert!(bruhat_cover(&p("132"), &p("231")));
        // swapping 1 and 3 over the 2 in the middle is not a cover
        assert!(!bruhat_cover(&p("123"), &p("321")));
    }

    #[test]
    fn leq_examples() {
        assert!(bruhat_leq(&p("1243"), &p("4213")));
        assert!(bruhat_leq_closure(&p("1243"), &p("4213")));
        let u = p("3142");
        assert!(bruhat_leq(&u, &u));
        assert!(!bruhat_leq(&p("213"), &p("132")));
        assert!(!bruhat_leq(&p("132"), &p("213")));
        assert!(!bruhat_leq_closure(&p("213"), &p("132")));
    }

    #[test]
    fn interval_examples() {
        assert_eq!(bruhat_interval(&p("1243"), &p("4213")).unwrap().len(), 6);
        assert_eq!(bruhat_interval(&p("2143"), &p("2143")).unwrap(), vec![p("2143")]);
        assert_eq!(
            bruhat_interval(&Permutation::identity(3), &Permutation::longest(3)).unwrap(),
            Permutation::all(3)
        );
        assert!(matches!(
            bruhat_interval(&p("213"), &p("132")),
            Err(LpmError::EmptyInterval { .. })
        ));
    }

    #[test]
    fn closure_matches_dominance() {
        for n in 0..=5 {
            let all = Permutation::all(n);
            for u in &all {
                let up = bruhat_upper_set(u);
                for v in &all {
                    assert_eq!(up.contains(v), bruhat_leq(u, v), "{u} vs {v}");
                }
            }
        }
    }

    #[test]
    fn covers_raise_length_by_one() {
        for u in Permutation::all(5) {
            for v in u.bruhat_upper_covers() {
                assert_eq!(v.length(), u.length() + 1);
                assert!(bruhat_cover(&u, &v));
            }
        }
    }
}
