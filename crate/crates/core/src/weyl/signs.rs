//! Squares in the arrow graph and a sign assignment making every square's
//! sign product `-1`, found by solving a parity system over GF(2).

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::WeylGroup;
use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize)]
pub struct Arrow {
    pub source: usize,
    pub target: usize,
}

/// `(w1, w2, w3, w4)` with `w1 -> w2 -> w4`, `w1 -> w3 -> w4` and `w2 < w3`
/// in the group's index order (lexicographic on reduced words within a level).
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct Square(pub usize, pub usize, pub usize, pub usize);

impl Square {
    pub fn arrows(&self) -> [Arrow; 4] {
        let Square(a, b, c, d) = *self;
        [
            Arrow { source: a, target: b },
            Arrow { source: b, target: d },
            Arrow { source: a, target: c },
            Arrow { source: c, target: d },
        ]
    }
}

impl WeylGroup {
    /// All squares whose top element is enumerated.
    ///
    /// Fails if some length-two interval has a number of midpoints other
    /// than two.
    pub fn squares(&self) -> Result<Vec<Square>> {
        let mut out = Vec::new();
        for w1 in 0..self.len() {
            let mut mids: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
            for &m in self.covers(w1) {
                for &w4 in self.covers(m) {
                    mids.entry(w4).or_default().push(m);
                }
            }
            for (w4, ms) in mids {
                if ms.len() != 2 {
                    return Err(Error::Invariant(format!(
                        "interval [{:?}, {:?}] has {} midpoints",
                        self.element(w4).word(),
                        self.element(w1).word(),
                        ms.len()
                    )));
                }
                out.push(Square(w1, ms[0], ms[1], w4));
            }
        }
        Ok(out)
    }
}

/// `s(w, w') = +-1` for every arrow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignAssignment {
    arrows: Vec<Arrow>,
    position: HashMap<Arrow, usize>,
    negative: Vec<bool>,
}

impl SignAssignment {
    pub fn sign(&self, arrow: Arrow) -> i64 {
        match self.position.get(&arrow) {
            Some(&p) if self.negative[p] => -1,
            Some(_) => 1,
            None => panic!("no sign for arrow {arrow:?}"),
        }
    }

    pub fn get(&self, arrow: Arrow) -> Option<i64> {
        self.position.get(&arrow).map(|&p| if self.negative[p] { -1 } else { 1 })
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn flip(&mut self, arrow: Arrow) {
        let p = self.position[&arrow];
        self.negative[p] = !self.negative[p];
    }

    /// Arrows of squares whose sign product is not `-1`.
    pub fn violations(&self, squares: &[Square]) -> Vec<Square> {
        squares
            .iter()
            .copied()
            .filter(|sq| sq.arrows().iter().map(|&a| self.sign(a)).product::<i64>() != -1)
            .collect()
    }
}

/// Solves `sum of the four bits = 1 (mod 2)` per square, one bit per arrow
/// (bit 1 meaning sign `-1`). Free variables are set to 0, in arrow order.
pub fn assign_signs(arrows: &[Arrow], squares: &[Square]) -> Result<SignAssignment> {
    let position: HashMap<Arrow, usize> = arrows.iter().enumerate().map(|(k, &a)| (a, k)).collect();
    let n = arrows.len();
    let mut system = Gf2System::new(n);
    for sq in squares {
        let mut row = BitRow::zeros(n + 1);
        for a in sq.arrows() {
            let p = *position
                .get(&a)
                .ok_or_else(|| Error::Invariant(format!("square {sq:?} uses unknown arrow {a:?}")))?;
            row.toggle(p);
        }
        row.toggle(n);
        system.push(row);
    }
    let negative = system
        .solve()
        .ok_or_else(|| Error::Invariant("square sign system is inconsistent".to_string()))?;
    Ok(SignAssignment { arrows: arrows.to_vec(), position, negative })
}

#[derive(Clone, Debug)]
struct BitRow(Vec<u64>);

impl BitRow {
    fn zeros(bits: usize) -> Self {
        BitRow(vec![0; bits.div_ceil(64)])
    }
    fn get(&self, k: usize) -> bool {
        self.0[k / 64] >> (k % 64) & 1 == 1
    }
    fn toggle(&mut self, k: usize) {
        self.0[k / 64] ^= 1 << (k % 64);
    }
    fn xor(&mut self, other: &BitRow) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a ^= b;
        }
    }
}

/// Augmented linear system over GF(2); column `vars` is the right-hand side.
struct Gf2System {
    vars: usize,
    rows: Vec<BitRow>,
}

impl Gf2System {
    fn new(vars: usize) -> Self {
        Gf2System { vars, rows: Vec::new() }
    }

    fn push(&mut self, row: BitRow) {
        self.rows.push(row);
    }

    fn solve(mut self) -> Option<Vec<bool>> {
        let mut pivots = Vec::new();
        let mut lead = 0;
        for c in 0..self.vars {
            let Some(p) = (lead..self.rows.len()).find(|&r| self.rows[r].get(c)) else {
                continue;
            };
            self.rows.swap(lead, p);
            let pivot_row = self.rows[lead].clone();
            for (r, row) in self.rows.iter_mut().enumerate() {
                if r != lead && row.get(c) {
                    row.xor(&pivot_row);
                }
            }
            pivots.push(c);
            lead += 1;
        }
        if self.rows[lead..].iter().any(|r| r.get(self.vars)) {
            return None;
        }
        let mut x = vec![false; self.vars];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = self.rows[r].get(self.vars);
        }
        Some(x)
    }
}
