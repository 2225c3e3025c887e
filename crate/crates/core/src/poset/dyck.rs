//! Dyck paths of semilength `n + 1` and their bijection with LPMs on `[n]`.
//!
//! The valleys of the path are the points `(j_r, i_r)` of the greedy pairing
//! of `M` as a quotient of `U_{n,n}`: `j_r` runs over `[n] \ L` and `i_r`
//! over `[n] \ U`. The path starts with North steps and stays weakly above
//! the diagonal.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{LpmError, Result};
use crate::lpm::Lpm;
use crate::subset::GroundSubset;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Step {
    N,
    E,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct DyckPath {
    n: usize,
    steps: Vec<Step>,
}

impl DyckPath {
    /// Validates a path from `(0,0)` to `(n+1, n+1)` that never drops below the diagonal.
    pub fn new(n: usize, steps: Vec<Step>) -> Result<Self> {
        if steps.len() != 2 * (n + 1) {
            return Err(LpmError::InvalidDyck(format!(
                "expected {} steps for n = {n}, found {}",
                2 * (n + 1),
                steps.len()
            )));
        }
        let mut height = 0isize;
        for (i, s) in steps.iter().enumerate() {
            height += if *s == Step::N { 1 } else { -1 };
            if height < 0 {
                return Err(LpmError::InvalidDyck(format!("path drops below the diagonal at step {}", i + 1)));
            }
        }
        if height != 0 {
            return Err(LpmError::InvalidDyck("path does not end on the diagonal".into()));
        }
        Ok(Self { n, steps })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// Number of `N E` corners.
    pub fn peaks(&self) -> usize {
        self.steps.windows(2).filter(|w| w[0] == Step::N && w[1] == Step::E).count()
    }

    /// Valley points `(x, y)` at `E N` corners, in path order.
    pub fn valleys(&self) -> Vec<(usize, usize)> {
        let (mut x, mut y) = (0, 0);
        let mut out = Vec::new();
        for (i, s) in self.steps.iter().enumerate() {
            match s {
                Step::N => y += 1,
                Step::E => {
                    x += 1;
                    if self.steps.get(i + 1) == Some(&Step::N) {
                        out.push((x, y));
                    }
                }
            }
        }
        out
    }

    /// Valleys with the two endpoints `(0,0)` and `(n+1, n+1)` added.
    pub fn points(&self) -> Vec<(usize, usize)> {
        let mut out = vec![(0, 0)];
        out.extend(self.valleys());
        out.push((self.n + 1, self.n + 1));
        out
    }
}

impl fmt::Display for DyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            f.write_str(match s {
                Step::N => "N",
                Step::E => "E",
            })?;
        }
        Ok(())
    }
}

impl FromStr for DyckPath {
    type Err = LpmError;

    /// A word in `N`/`E`; the ground size is half its length minus one.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let steps = t
            .char_indices()
            .map(|(i, c)| match c.to_ascii_uppercase() {
                'N' | 'U' => Ok(Step::N),
                'E' | 'D' => Ok(Step::E),
                _ => Err(LpmError::Parse { position: i, message: format!("expected N or E, found {c:?}") }),
            })
            .collect::<Result<Vec<_>>>()?;
        if steps.len() % 2 != 0 || steps.is_empty() {
            return Err(LpmError::InvalidDyck(format!("odd or empty length {}", steps.len())));
        }
        let n = steps.len() / 2 - 1;
        DyckPath::new(n, steps)
    }
}

pub fn lpm_to_dyck(m: &Lpm) -> DyckPath {
    let n = m.n();
    let xs = m.lower().complement().to_vec();
    let ys = m.upper().complement().to_vec();
    let mut steps = Vec::with_capacity(2 * (n + 1));
    let (mut x, mut y) = (0, 0);
    for (&j, &i) in xs.iter().zip(&ys).chain(std::iter::once((&(n + 1), &(n + 1)))) {
        steps.extend(std::iter::repeat_n(Step::N, i - y));
        steps.extend(std::iter::repeat_n(Step::E, j - x));
        (x, y) = (j, i);
    }
    DyckPath::new(n, steps).expect("greedy points lie weakly above the diagonal")
}

pub fn dyck_to_lpm(d: &DyckPath, n: usize) -> Result<Lpm> {
    if d.n() != n {
        return Err(LpmError::InvalidDyck(format!(
            "path has semilength {}, expected {}",
            d.n() + 1,
            n + 1
        )));
    }
    let valleys = d.valleys();
    let lower = GroundSubset::new(n, valleys.iter().map(|p| p.0))?.complement();
    let upper = GroundSubset::new(n, valleys.iter().map(|p| p.1))?.complement();
    Lpm::new(n, upper, lower)
}
