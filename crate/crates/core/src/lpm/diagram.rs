//! Drawing the region between the upper path `U` and the lower path `L`.
//!
//! Paths run from `(0,0)` to `(n-k, k)`; step `i` goes North iff `i` is in the
//! set. An edge belongs to the diagram iff some basis path uses it.

use std::fmt::Write as _;

use serde::Serialize;

use super::Lpm;
use crate::error::{LpmError, Result};
use crate::subset::GroundSubset;

const CELL: usize = 40;
const MARGIN: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagramArtifact {
    pub ascii: String,
    pub svg: String,
}

/// Height of the path at each of its East steps.
fn east_heights(path: &GroundSubset) -> Vec<usize> {
    let mut h = 0;
    let mut out = Vec::new();
    for i in 1..=path.n() {
        if path.contains(i) {
            h += 1;
        } else {
            out.push(h);
        }
    }
    out
}

struct Region {
    k: usize,
    width: usize,
    /// `[lo, hi]` heights of horizontal edges in column `x -> x+1`
    horizontal: Vec<(usize, usize)>,
    /// `[lo, hi]` vertical extent on the line `x`
    vertical: Vec<(usize, usize)>,
}

impl Region {
    fn of(m: &Lpm) -> Self {
        let k = m.rank();
        let width = m.corank();
        let hu = east_heights(m.upper());
        let hl = east_heights(m.lower());
        let horizontal = (0..width).map(|x| (hl[x], hu[x])).collect();
        let vertical = (0..=width)
            .map(|x| {
                let lo = if x == 0 { 0 } else { hl[x - 1] };
                let hi = if x == width { k } else { hu[x] };
                (lo, hi)
            })
            .collect();
        Region { k, width, horizontal, vertical }
    }

    fn has_horizontal(&self, x: usize, y: usize) -> bool {
        let (lo, hi) = self.horizontal[x];
        lo <= y && y <= hi
    }

    fn has_vertical(&self, x: usize, y: usize) -> bool {
        let (lo, hi) = self.vertical[x];
        lo <= y && y < hi
    }
}

/// Edges of a single path: `(x, y, north)`.
fn path_edges(path: &GroundSubset) -> Vec<(usize, usize, bool)> {
    let (mut x, mut y) = (0, 0);
    let mut out = Vec::new();
    for i in 1..=path.n() {
        if path.contains(i) {
            out.push((x, y, true));
            y += 1;
        } else {
            out.push((x, y, false));
            x += 1;
        }
    }
    out
}

/// ASCII and SVG drawings of `m`, optionally highlighting the path of `overlay`.
pub fn render_diagram(m: &Lpm, overlay: Option<&GroundSubset>) -> Result<DiagramArtifact> {
    if let Some(b) = overlay {
        if !m.is_basis(b)? {
            return Err(LpmError::NotABasis(b.to_string()));
        }
    }
    let region = Region::of(m);
    let highlighted = overlay.map(path_edges).unwrap_or_default();
    Ok(DiagramArtifact {
        ascii: ascii(&region, &highlighted),
        svg: svg(m, &region, &highlighted),
    })
}

fn ascii(region: &Region, highlighted: &[(usize, usize, bool)]) -> String {
    let k = region.k;
    let cols = 2 * region.width + 1;
    let mut grid = vec![vec![' '; cols]; k + 1];
    for y in 0..=k {
        let line = k - y;
        for x in 0..region.width {
            if region.has_horizontal(x, y) {
                grid[line][2 * x + 1] = '_';
            }
        }
        for x in 0..=region.width {
            if y < k && region.has_vertical(x, y) {
                grid[line][2 * x] = '|';
            }
        }
    }
    for &(x, y, north) in highlighted {
        if north {
            grid[k - y][2 * x] = '#';
        } else {
            grid[k - y][2 * x + 1] = '=';
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

fn svg(m: &Lpm, region: &Region, highlighted: &[(usize, usize, bool)]) -> String {
    let k = region.k;
    let px = |x: usize| MARGIN + x * CELL;
    let py = |y: usize| MARGIN + (k - y) * CELL;
    let width = 2 * MARGIN + region.width * CELL;
    let height = 2 * MARGIN + k * CELL;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(out, "  <title>{}</title>", m.label());
    let _ = writeln!(out, r#"  <g stroke="black" stroke-width="2" stroke-linecap="round">"#);
    for y in 0..=k {
        for x in 0..region.width {
            if region.has_horizontal(x, y) {
                let _ = writeln!(
                    out,
                    r#"    <line x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
                    px(x),
                    py(y),
                    px(x + 1),
                    py(y)
                );
            }
        }
        for x in 0..=region.width {
            if y < k && region.has_vertical(x, y) {
                let _ = writeln!(
                    out,
                    r#"    <line x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
                    px(x),
                    py(y),
                    px(x),
                    py(y + 1)
                );
            }
        }
    }
    let _ = writeln!(out, "  </g>");
    if !highlighted.is_empty() {
        let mut points = vec![format!("{},{}", px(0), py(0))];
        for &(x, y, north) in highlighted {
            let (nx, ny) = if north { (x, y + 1) } else { (x + 1, y) };
            points.push(format!("{},{}", px(nx), py(ny)));
        }
        let _ = writeln!(
            out,
            r#"  <polyline fill="none" stroke="red" stroke-width="4" points="{}"/>"#,
            points.join(" ")
        );
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(text: &str) -> Lpm {
        text.parse().unwrap()
    }

    #[test]
    fn three_stacked_squares() {
        let art = render_diagram(&m("M[135|246]@6"), None).unwrap();
        assert_eq!(art.ascii, "     _\n   _|_|\n _|_|\n|_|\n");
    }

    #[test]
    fn rank_zero_is_a_horizontal_path() {
        let art = render_diagram(&Lpm::uniform(0, 4).unwrap(), None).unwrap();
        assert_eq!(art.ascii, " _ _ _ _\n");
    }

    #[test]
    fn fig1_region() {
        let art = render_diagram(&m("M[1246|3568]@8"), None).unwrap();
        let expected = "     _ _\n   _|_|_|\n _|_|_|\n|_|_|_|\n|_|_|\n";
        assert_eq!(art.ascii, expected);
        assert!(art.svg.starts_with("<svg"));
        assert!(art.svg.contains(r#"version="1.1""#));
    }

    #[test]
    fn overlay_marks_basis_path() {
        let fig1 = m("M[1246|3568]@8");
        let b = GroundSubset::new(8, [2, 3, 5, 7]).unwrap();
        let art = render_diagram(&fig1, Some(&b)).unwrap();
        assert_eq!(art.ascii.matches('#').count(), 4);
        assert_eq!(art.ascii.matches('=').count(), 4);
        assert!(art.svg.contains("polyline"));
        let not_basis = GroundSubset::new(8, [5, 6, 7, 8]).unwrap();
        assert!(render_diagram(&fig1, Some(&not_basis)).is_err());
    }

    /// Edge set equals the union of the edges of all basis paths.
    #[test]
    fn region_is_union_of_basis_paths() {
        for text in ["M[1246|3568]@8", "M[135|246]@6", "M[13|25]@5", "M[2|2]@3"] {
            let mm = m(text);
            let region = Region::of(&mm);
            let mut used = std::collections::BTreeSet::new();
            for b in mm.bases().iter() {
                used.extend(path_edges(b));
            }
            let mut drawn = std::collections::BTreeSet::new();
            for y in 0..=region.k {
                for x in 0..region.width {
                    if region.has_horizontal(x, y) {
                        drawn.insert((x, y, false));
                    }
                }
                for x in 0..=region.width {
                    if y < region.k && region.has_vertical(x, y) {
                        drawn.insert((x, y, true));
                    }
                }
            }
            assert_eq!(used, drawn, "{text}");
        }
    }
}
