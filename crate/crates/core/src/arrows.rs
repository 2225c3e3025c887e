//! Decorated permutations of LPMs and their row and column intervals.
//!
//! With `Ū = [n] \ U` and `L̄ = [n] \ L` (sorted), the decorated permutation
//! sends `u_i -> ℓ_i` and `ū_i -> ℓ̄_i`. Row intervals are the cyclic
//! intervals `[ℓ_i, u_i]`, column intervals the linear `[ℓ̄_i, ū_i]`.
//! `M' <=_Q M` exactly when every interval of `M` is a union of intervals of `M'`.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{LpmError, Result};
use crate::lpm::Lpm;
use crate::permutation::Permutation;
use crate::subset::GroundSubset;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Decoration {
    Loop,
    Coloop,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DecoratedPermutation {
    image: Permutation,
    /// Indexed by element; `Some` exactly on fixed points.
    decorations: Vec<Option<Decoration>>,
}

impl DecoratedPermutation {
    pub fn n(&self) -> usize {
        self.image.n()
    }

    pub fn permutation(&self) -> &Permutation {
        &self.image
    }

    pub fn decoration(&self, i: usize) -> Option<Decoration> {
        self.decorations[i - 1]
    }

    fn tokens(&self) -> Vec<String> {
        (1..=self.n())
            .map(|i| {
                let v = self.image.at(i);
                match self.decoration(i) {
                    Some(Decoration::Loop) => format!("{v}u"),
                    Some(Decoration::Coloop) => format!("{v}c"),
                    None => v.to_string(),
                }
            })
            .collect()
    }

    /// Digit form such as `21534` when `n <= 9`.
    pub fn compact(&self) -> String {
        if self.n() <= 9 {
            self.tokens().concat()
        } else {
            self.to_string()
        }
    }
}

impl fmt::Display for DecoratedPermutation {
    /// `2,1,5,3,4`; fixed points carry `u` (loop) or `c` (coloop).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.tokens().join(","))
    }
}

impl Serialize for DecoratedPermutation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.tokens().serialize(s)
    }
}

pub fn decorated_permutation(m: &Lpm) -> DecoratedPermutation {
    let n = m.n();
    let mut image = vec![0; n];
    let mut decorations = vec![None; n];
    for (u, l) in m.upper().iter().zip(m.lower().iter()) {
        image[u - 1] = l;
        if u == l {
            decorations[u - 1] = Some(Decoration::Coloop);
        }
    }
    for (u, l) in m.upper().complement().iter().zip(m.lower().complement().iter()) {
        image[u - 1] = l;
        if u == l {
            decorations[u - 1] = Some(Decoration::Loop);
        }
    }
    DecoratedPermutation {
        image: Permutation::new(image).expect("both halves are bijections"),
        decorations,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum IntervalKind {
    Row,
    Column,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CyclicInterval {
    pub start: usize,
    pub end: usize,
    pub kind: IntervalKind,
    #[serde(serialize_with = "members_as_vec")]
    pub members: GroundSubset,
}

fn members_as_vec<S: Serializer>(m: &GroundSubset, s: S) -> std::result::Result<S::Ok, S::Error> {
    m.to_vec().serialize(s)
}

impl CyclicInterval {
    /// `{start, start+1, ..., end}` read modulo `n`.
    pub fn new(n: usize, start: usize, end: usize, kind: IntervalKind) -> Result<Self> {
        for e in [start, end] {
            if e == 0 || e > n {
                return Err(LpmError::ElementOutOfRange { element: e, n });
            }
        }
        let elems: Vec<usize> = if start <= end {
            (start..=end).collect()
        } else {
            (start..=n).chain(1..=end).collect()
        };
        Ok(Self { start, end, kind, members: GroundSubset::new(n, elems)? })
    }

    pub fn n(&self) -> usize {
        self.members.n()
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.members.is_subset(&other.members)
    }
}

impl fmt::Display for CyclicInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.start, self.end)
    }
}

fn require_free(m: &Lpm) -> Result<()> {
    if m.is_loop_coloop_free() {
        Ok(())
    } else {
        let (l, c) = m.loops_and_coloops();
        Err(LpmError::LoopsOrColoops(format!("{m} has loops {{{l}}} and coloops {{{c}}}")))
    }
}

/// `[ℓ_i, u_i]` for `i = 1..=k`, cyclic.
pub fn row_intervals(m: &Lpm) -> Result<Vec<CyclicInterval>> {
    require_free(m)?;
    m.upper()
        .iter()
        .zip(m.lower().iter())
        .map(|(u, l)| CyclicInterval::new(m.n(), l, u, IntervalKind::Row))
        .collect()
}

/// `[ℓ̄_i, ū_i]` for `i = 1..=n-k`, linear.
pub fn column_intervals(m: &Lpm) -> Result<Vec<CyclicInterval>> {
    require_free(m)?;
    m.upper()
        .complement()
        .iter()
        .zip(m.lower().complement().iter())
        .map(|(u, l)| CyclicInterval::new(m.n(), l, u, IntervalKind::Column))
        .collect()
}

pub fn all_intervals(m: &Lpm) -> Result<Vec<CyclicInterval>> {
    let mut out = row_intervals(m)?;
    out.extend(column_intervals(m)?);
    Ok(out)
}

/// Intervals of `sub` that lie inside `target`.
pub fn contained_intervals(sub: &Lpm, target: &CyclicInterval) -> Result<Vec<CyclicInterval>> {
    if sub.n() != target.n() {
        return Err(LpmError::GroundMismatch { left: sub.n(), right: target.n() });
    }
    Ok(all_intervals(sub)?.into_iter().filter(|i| i.is_subset(target)).collect())
}

/// Every interval of `sup` is the union of the intervals of `sub` it contains.
pub fn interval_union_condition(sub: &Lpm, sup: &Lpm) -> Result<bool> {
    if sub.n() != sup.n() {
        return Err(LpmError::GroundMismatch { left: sub.n(), right: sup.n() });
    }
    let mine = all_intervals(sub)?;
    Ok(all_intervals(sup)?.iter().all(|target| {
        let covered = mine
            .iter()
            .filter(|i| i.is_subset(target))
            .fold(0u64, |acc, i| acc | i.members.bits());
        covered == target.members.bits()
    }))
}

/// For a column interval `target` of `sup`, true iff no row interval of `sub`
/// fits inside it, so any union representing it uses columns only.
pub fn columns_need_columns(sub: &Lpm, sup: &Lpm, target: &CyclicInterval) -> Result<bool> {
    require_free(sub)?;
    let n = sup.n();
    if n >= 1 && sup.rank() == n - 1 && sup.is_uniform() {
        return Err(LpmError::Precondition(format!("{} is U_{{n-1,n}}", sup.label())));
    }
    if !column_intervals(sup)?.contains(target) {
        return Err(LpmError::Precondition(format!("{target} is not a column interval of {}", sup.label())));
    }
    Ok(row_intervals(sub)?.iter().all(|r| !r.is_subset(target)))
}
