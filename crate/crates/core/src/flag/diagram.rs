//! Flag diagrams in `Z^k` of partial LPFMs `(U_{0,n}, M_1, ..., M_{k-1}, U_{n,n})`.
//!
//! Each chain of bases is walked as a monotone lattice path: step `i` is
//! `e_j` when `i ∈ B_j \ B_{j-1}`. The diagram is the union of the points and
//! unit edges of all such paths.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::Serialize;

use super::{chains_of_bases, Lpfm};
use crate::error::{LpmError, Result};

const SCALE: f64 = 40.0;
const MARGIN: f64 = 20.0;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlagDiagram {
    pub dim: usize,
    pub points: BTreeSet<Vec<usize>>,
    pub edges: BTreeSet<(Vec<usize>, Vec<usize>)>,
}

pub fn flag_diagram(f: &Lpfm) -> Result<FlagDiagram> {
    let cs = f.constituents();
    let n = f.n();
    if cs[0].rank() != 0 || cs[cs.len() - 1].rank() != n || cs.len() < 2 {
        return Err(LpmError::InvalidFlag("flag diagram needs U_{0,n} first and U_{n,n} last".into()));
    }
    let dim = cs.len() - 1;
    let mut points = BTreeSet::new();
    let mut edges = BTreeSet::new();
    for chain in chains_of_bases(f) {
        let mut pt = vec![0; dim];
        points.insert(pt.clone());
        for i in 1..=n {
            let j = (1..=dim).find(|&j| chain[j].contains(i) && !chain[j - 1].contains(i)).expect("chain ends at [n]");
            let prev = pt.clone();
            pt[j - 1] += 1;
            points.insert(pt.clone());
            edges.insert((prev, pt.clone()));
        }
    }
    Ok(FlagDiagram { dim, points, edges })
}

impl FlagDiagram {
    /// Grid drawing for `dim <= 2`, with `e_1` vertical and `e_2` horizontal;
    /// a point list otherwise.
    pub fn to_ascii(&self) -> String {
        match self.dim {
            1 => {
                let len = self.edges.len();
                format!("{}\n", "|".repeat(len))
            }
            2 => {
                let height = self.points.iter().map(|p| p[0]).max().unwrap_or(0);
                let width = self.points.iter().map(|p| p[1]).max().unwrap_or(0);
                let mut grid = vec![vec![' '; 2 * width + 1]; height + 1];
                for (a, b) in &self.edges {
                    let (y, x) = (a[0], a[1]);
                    if b[0] > a[0] {
                        grid[height - y][2 * x] = '|';
                    } else {
                        grid[height - y][2 * x + 1] = '_';
                    }
                }
                let mut out = String::new();
                for row in grid {
                    let line: String = row.into_iter().collect();
                    out.push_str(line.trim_end());
                    out.push('\n');
                }
                out
            }
            _ => {
                let mut out = String::new();
                for p in &self.points {
                    let coords: Vec<String> = p.iter().map(|c| c.to_string()).collect();
                    let _ = writeln!(out, "({})", coords.join(","));
                }
                out
            }
        }
    }

    fn project(&self, p: &[usize]) -> (f64, f64) {
        match self.dim {
            1 => (0.0, -(p[0] as f64)),
            2 => (p[1] as f64, -(p[0] as f64)),
            _ => {
                let c30 = 3f64.sqrt() / 2.0;
                let (a, b, c) = (p[0] as f64, p[1] as f64, p[2] as f64);
                ((a - b) * c30, (a + b) * 0.5 - c)
            }
        }
    }

    /// SVG drawing for `dim <= 3`; three dimensions use an isometric projection.
    pub fn to_svg(&self) -> Result<String> {
        if self.dim > 3 {
            return Err(LpmError::Precondition(format!("cannot draw a diagram in Z^{}", self.dim)));
        }
        let proj: Vec<(f64, f64)> = self.points.iter().map(|p| self.project(p)).collect();
        let min_x = proj.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
        let max_x = proj.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
        let min_y = proj.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
        let max_y = proj.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
        let tx = |x: f64| MARGIN + (x - min_x) * SCALE;
        let ty = |y: f64| MARGIN + (y - min_y) * SCALE;
        let width = 2.0 * MARGIN + (max_x - min_x) * SCALE;
        let height = 2.0 * MARGIN + (max_y - min_y) * SCALE;
        let mut out = String::new();
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.1} {height:.1}">"#
        );
        let _ = writeln!(out, r#"  <g stroke="black" stroke-width="2">"#);
        for (a, b) in &self.edges {
            let (ax, ay) = self.project(a);
            let (bx, by) = self.project(b);
            let _ = writeln!(
                out,
                r#"    <line x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}"/>"#,
                tx(ax),
                ty(ay),
                tx(bx),
                ty(by)
            );
        }
        let _ = writeln!(out, "  </g>");
        let _ = writeln!(out, r#"  <g fill="black">"#);
        for (x, y) in &proj {
            let _ = writeln!(out, r#"    <circle cx="{:.1}" cy="{:.1}" r="3"/>"#, tx(*x), ty(*y));
        }
        let _ = writeln!(out, "  </g>");
        out.push_str("</svg>\n");
        Ok(out)
    }
}
