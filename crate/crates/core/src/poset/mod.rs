//! The graded poset of all LPMs on `[n]` ordered by quotients.

mod dyck;

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{LpmError, Result};
use crate::lpm::Lpm;
use crate::quotient::{is_quotient, quotient_children};
use crate::subset::{k_subsets, GroundSubset};

pub use dyck::{dyck_to_lpm, lpm_to_dyck, DyckPath, Step};

/// Every LPM on `[n]`, sorted by rank and then lexicographically by `(U, L)`.
pub fn enumerate_lpms(n: usize) -> Vec<Lpm> {
    let mut out = Vec::new();
    for k in 0..=n {
        let subsets: Vec<GroundSubset> = k_subsets(n, k).collect();
        for u in &subsets {
            for l in &subsets {
                if u.gale_leq_unchecked(l) {
                    out.push(Lpm::new(n, *u, *l).expect("Gale-comparable pair"));
                }
            }
        }
    }
    out
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

/// `a(n, k) = binom(n, k) binom(n, k-1) / n`, the number of Dyck paths of
/// semilength `n` with `k` peaks.
pub fn narayana(n: usize, k: usize) -> Result<u128> {
    if k == 0 || k > n {
        return Err(LpmError::RankOutOfRange { rank: k, max: n });
    }
    let (n, k) = (n as u128, k as u128);
    Ok(binomial(n, k) * binomial(n, k - 1) / n)
}

pub fn catalan(n: usize) -> u128 {
    binomial(2 * n as u128, n as u128) / (n as u128 + 1)
}

#[derive(Clone, Debug, Serialize)]
pub struct PosetNode {
    pub id: usize,
    #[serde(rename = "U")]
    pub upper: Vec<usize>,
    #[serde(rename = "L")]
    pub lower: Vec<usize>,
    pub rank: usize,
    pub label: String,
}

/// The Hasse diagram of `(LPMs on [n], <=_Q)`. Node ids are positions in
/// [`enumerate_lpms`] order, so they are stable across runs.
#[derive(Clone, Debug)]
pub struct QuotientPoset {
    n: usize,
    nodes: Vec<Lpm>,
    index: HashMap<Lpm, usize>,
    /// `(parent, child)` with `rank(parent) = rank(child) + 1`, sorted.
    covers: Vec<(usize, usize)>,
    children: Vec<Vec<usize>>,
    parents: Vec<Vec<usize>>,
}

pub fn build_poset(n: usize) -> QuotientPoset {
    let nodes = enumerate_lpms(n);
    let index: HashMap<Lpm, usize> = nodes.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let children: Vec<Vec<usize>> = nodes
        .par_iter()
        .map(|m| {
            let mut c: Vec<usize> = quotient_children(m).iter().map(|c| index[c]).collect();
            c.sort_unstable();
            c
        })
        .collect();
    let mut parents = vec![Vec::new(); nodes.len()];
    let mut covers = Vec::new();
    for (p, cs) in children.iter().enumerate() {
        for &c in cs {
            covers.push((p, c));
            parents[c].push(p);
        }
    }
    QuotientPoset { n, nodes, index, covers, children, parents }
}

impl QuotientPoset {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[Lpm] {
        &self.nodes
    }

    pub fn node(&self, id: usize) -> &Lpm {
        &self.nodes[id]
    }

    pub fn rank(&self, id: usize) -> usize {
        self.nodes[id].rank()
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn children(&self, id: usize) -> &[usize] {
        &self.children[id]
    }

    pub fn parents(&self, id: usize) -> &[usize] {
        &self.parents[id]
    }

    pub fn id_of(&self, m: &Lpm) -> Option<usize> {
        self.index.get(m).copied()
    }

    fn require(&self, m: &Lpm) -> Result<usize> {
        if m.n() != self.n {
            return Err(LpmError::GroundMismatch { left: self.n, right: m.n() });
        }
        Ok(self.index[m])
    }

    /// Node ids of `[bottom, top]_Q`.
    pub fn interval(&self, bottom: &Lpm, top: &Lpm) -> Result<Vec<usize>> {
        self.require(bottom)?;
        self.require(top)?;
        if !is_quotient(bottom, top) {
            return Err(LpmError::NotQuotient { sub: bottom.to_string(), sup: top.to_string() });
        }
        Ok((0..self.nodes.len())
            .filter(|&i| {
                let m = &self.nodes[i];
                m.rank() >= bottom.rank()
                    && m.rank() <= top.rank()
                    && is_quotient(bottom, m)
                    && is_quotient(m, top)
            })
            .collect())
    }

    pub fn to_json(&self) -> Value {
        let nodes: Vec<PosetNode> = self
            .nodes
            .iter()
            .enumerate()
            .map(|(id, m)| PosetNode {
                id,
                upper: m.upper().to_vec(),
                lower: m.lower().to_vec(),
                rank: m.rank(),
                label: m.label(),
            })
            .collect();
        json!({ "n": self.n, "nodes": nodes, "covers": self.covers })
    }

    /// Graphviz source, one `rank=same` layer per matroid rank.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph P{} {{", self.n);
        let _ = writeln!(out, "  rankdir=BT;");
        let _ = writeln!(out, "  node [shape=box, fontname=\"monospace\"];");
        let mut layers: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (id, m) in self.nodes.iter().enumerate() {
            let _ = writeln!(out, "  n{id} [label=\"{}\"];", m.label());
            layers.entry(m.rank()).or_default().push(id);
        }
        for ids in layers.values() {
            let names: Vec<String> = ids.iter().map(|i| format!("n{i}")).collect();
            let _ = writeln!(out, "  {{ rank=same; {}; }}", names.join("; "));
        }
        for &(p, c) in &self.covers {
            let _ = writeln!(out, "  n{c} -> n{p};");
        }
        out.push_str("}\n");
        out
    }
}

/// Node counts per rank `0..=n`.
pub fn rank_counts(p: &QuotientPoset) -> Vec<usize> {
    let mut out = vec![0; p.n() + 1];
    for m in p.nodes() {
        out[m.rank()] += 1;
    }
    out
}

/// `M' <=_W M` iff `U' >=_G U` and `L' <=_G L`, i.e. the diagram of `M'`
/// sits inside that of `M`.
pub fn weak_leq(sub: &Lpm, sup: &Lpm) -> Result<bool> {
    if sub.n() != sup.n() {
        return Err(LpmError::GroundMismatch { left: sub.n(), right: sup.n() });
    }
    if sub.rank() != sup.rank() {
        return Err(LpmError::SizeMismatch { left: sub.rank(), right: sup.rank() });
    }
    Ok(sup.upper().gale_leq(sub.upper())? && sub.lower().gale_leq(sup.lower())?)
}

/// Number of maximal chains of `[bottom, top]_Q`.
pub fn maximal_chains(p: &QuotientPoset, bottom: &Lpm, top: &Lpm) -> Result<u128> {
    let b = p.require(bottom)?;
    let t = p.require(top)?;
    if !is_quotient(bottom, top) {
        return Err(LpmError::NotQuotient { sub: bottom.to_string(), sup: top.to_string() });
    }
    let mut memo: HashMap<usize, u128> = HashMap::new();
    Ok(count_down(p, bottom, b, t, &mut memo))
}

fn count_down(p: &QuotientPoset, bottom: &Lpm, b: usize, x: usize, memo: &mut HashMap<usize, u128>) -> u128 {
    if x == b {
        return 1;
    }
    if let Some(&v) = memo.get(&x) {
        return v;
    }
    let mut total = 0;
    for &c in p.children(x) {
        if p.rank(c) >= bottom.rank() && is_quotient(bottom, p.node(c)) {
            total += count_down(p, bottom, b, c, memo);
        }
    }
    memo.insert(x, total);
    total
}

/// Up to `limit` maximal chains of `[bottom, top]_Q`, each listed from top to bottom.
pub fn maximal_chain_list(p: &QuotientPoset, bottom: &Lpm, top: &Lpm, limit: usize) -> Result<Vec<Vec<Lpm>>> {
    let b = p.require(bottom)?;
    let t = p.require(top)?;
    if !is_quotient(bottom, top) {
        return Err(LpmError::NotQuotient { sub: bottom.to_string(), sup: top.to_string() });
    }
    let mut out = Vec::new();
    let mut stack = vec![t];
    walk_chains(p, bottom, b, &mut stack, &mut out, limit);
    Ok(out)
}

fn walk_chains(
    p: &QuotientPoset,
    bottom: &Lpm,
    b: usize,
    stack: &mut Vec<usize>,
    out: &mut Vec<Vec<Lpm>>,
    limit: usize,
) {
    if out.len() >= limit {
        return;
    }
    let x = *stack.last().expect("nonempty");
    if x == b {
        out.push(stack.iter().map(|&i| *p.node(i)).collect());
        return;
    }
    for &c in p.children(x) {
        if p.rank(c) >= bottom.rank() && is_quotient(bottom, p.node(c)) {
            stack.push(c);
            walk_chains(p, bottom, b, stack, out, limit);
            stack.pop();
        }
    }
}

/// The `<=_W`-maximal rank-`r` members of `[bottom, top]_Q`, sorted.
pub fn weak_maxima_in_interval(p: &QuotientPoset, bottom: &Lpm, top: &Lpm, r: usize) -> Result<Vec<Lpm>> {
    if r < bottom.rank() || r > top.rank() {
        return Err(LpmError::RankOutOfRange { rank: r, max: top.rank() });
    }
    let level: Vec<Lpm> = p
        .interval(bottom, top)?
        .into_iter()
        .map(|i| *p.node(i))
        .filter(|m| m.rank() == r)
        .collect();
    let mut out: Vec<Lpm> = level
        .iter()
        .filter(|a| !level.iter().any(|b| b != *a && weak_leq(a, b).expect("equal rank")))
        .copied()
        .collect();
    out.sort();
    Ok(out)
}

/// Node counts per rank inside `[bottom, top]_Q`, from `rank(bottom)` up.
pub fn interval_rank_histogram(p: &QuotientPoset, bottom: &Lpm, top: &Lpm) -> Result<Vec<usize>> {
    let mut out = vec![0; top.rank() + 1 - bottom.rank()];
    for i in p.interval(bottom, top)? {
        out[p.rank(i) - bottom.rank()] += 1;
    }
    Ok(out)
}
