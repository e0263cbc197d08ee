//! Weyl group elements as integer matrices on simple-root coordinates,
//! enumeration by length, and Bruhat covers.
//!
//! The matrix of `w` sends the coordinate vector of a root `beta` to that of
//! `w(beta)`; `s_i(alpha_j) = alpha_j - a_ij alpha_i`. Elements are keyed by
//! their matrix, which is canonical, while the cached reduced word is the
//! greedy one obtained by always stripping the smallest right descent.

mod export;
mod parabolic;
mod signs;

use std::collections::HashMap;

pub use export::{weyl_dot, weyl_json, word_label, WeylJson};
pub use parabolic::ArrowClass;
pub use signs::{assign_signs, Arrow, SignAssignment, Square};

use crate::cartan::{dot_action_word, CartanMatrix, Weight};
use crate::error::{Error, Result};
use crate::field::{Field, Rational};
use crate::linalg::Matrix;

/// Square integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct IntMatrix {
    n: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        IntMatrix { n, data }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        let data = rows.iter().flat_map(|r| r.iter().copied()).collect::<Vec<_>>();
        assert_eq!(data.len(), n * n, "matrix must be square");
        IntMatrix { n, data }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.n + c]
    }

    pub fn column(&self, c: usize) -> Vec<i64> {
        (0..self.n).map(|r| self.get(r, c)).collect()
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.data.chunks(self.n).map(|c| c.to_vec()).collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        let n = self.n;
        let mut data = vec![0; n * n];
        for r in 0..n {
            for k in 0..n {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..n {
                    data[r * n + c] += a * other.get(k, c);
                }
            }
        }
        IntMatrix { n, data }
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        (0..self.n).map(|r| (0..self.n).map(|c| self.get(r, c) * v[c]).sum()).collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == IntMatrix::identity(self.n)
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        let rows = self.rows().into_iter().map(|r| r.into_iter().map(Rational::from_i64).collect()).collect();
        Matrix::from_rows(rows, self.n).rank()
    }
}

/// Matrix of the simple reflection `s_i`.
pub fn simple_reflection(gcm: &CartanMatrix, i: usize) -> IntMatrix {
    let r = gcm.rank();
    let mut m = IntMatrix::identity(r);
    for j in 0..r {
        m.data[i * r + j] -= gcm.entry(i, j);
    }
    m
}

/// Product of simple reflections along a word.
pub fn word_matrix(gcm: &CartanMatrix, word: &[usize]) -> IntMatrix {
    word.iter().fold(IntMatrix::identity(gcm.rank()), |m, &i| m.mul(&simple_reflection(gcm, i)))
}

/// A root vector is negative when it is nonzero with all entries `<= 0`.
fn is_negative(v: &[i64]) -> bool {
    v.iter().all(|&x| x <= 0) && v.iter().any(|&x| x < 0)
}

/// Length and greedy reduced word of a Weyl group matrix.
///
/// Strips the smallest right descent (a column that is a negative root)
/// until the identity is reached; the word is returned left to right.
pub fn length_and_word(gcm: &CartanMatrix, matrix: &IntMatrix, bound: usize) -> Result<(usize, Vec<usize>)> {
    let mut m = matrix.clone();
    let mut stripped = Vec::new();
    loop {
        if m.is_identity() {
            stripped.reverse();
            return Ok((stripped.len(), stripped));
        }
        if stripped.len() >= bound {
            return Err(Error::NotWeylElement(bound));
        }
        let Some(i) = (0..gcm.rank()).find(|&i| is_negative(&m.column(i))) else {
            return Err(Error::NotWeylElement(stripped.len()));
        };
        m = m.mul(&simple_reflection(gcm, i));
        stripped.push(i);
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    matrix: IntMatrix,
    inverse: IntMatrix,
    word: Vec<usize>,
}

impl WeylElement {
    pub fn identity(rank: usize) -> Self {
        WeylElement { matrix: IntMatrix::identity(rank), inverse: IntMatrix::identity(rank), word: Vec::new() }
    }

    pub fn from_matrix(gcm: &CartanMatrix, matrix: IntMatrix) -> Result<Self> {
        let (_, word) = length_and_word(gcm, &matrix, 4096)?;
        let rev: Vec<usize> = word.iter().rev().copied().collect();
        Ok(WeylElement { inverse: word_matrix(gcm, &rev), matrix, word })
    }

    pub fn from_word(gcm: &CartanMatrix, word: &[usize]) -> Result<Self> {
        Self::from_matrix(gcm, word_matrix(gcm, word))
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn inverse_matrix(&self) -> &IntMatrix {
        &self.inverse
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    /// `w^{-1} alpha_i` in simple-root coordinates.
    pub fn inverse_on_simple(&self, i: usize) -> Vec<i64> {
        self.inverse.column(i)
    }

    /// `l(s_i w) < l(w)`.
    pub fn has_left_descent(&self, i: usize) -> bool {
        is_negative(&self.inverse.column(i))
    }

    /// `l(w s_i) < l(w)`.
    pub fn has_right_descent(&self, i: usize) -> bool {
        is_negative(&self.matrix.column(i))
    }

    /// `w . lambda`.
    pub fn dot(&self, gcm: &CartanMatrix, lambda: &Weight) -> Weight {
        dot_action_word(gcm, &self.word, lambda)
    }
}

/// `u^2 = e`, `u != e` and `rank(u - 1) = 1`.
pub fn is_reflection(u: &IntMatrix) -> bool {
    if u.is_identity() || !u.mul(u).is_identity() {
        return false;
    }
    let n = u.size();
    let mut diff = u.clone();
    for i in 0..n {
        diff.data[i * n + i] -= 1;
    }
    diff.rank() == 1
}

/// Default bound on the size of one length level.
pub const DEFAULT_LEVEL_BOUND: usize = 200_000;

/// The elements of `W` up to some length, with their down-covers.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    gcm: CartanMatrix,
    elements: Vec<WeylElement>,
    index: HashMap<IntMatrix, usize>,
    levels: Vec<Vec<usize>>,
    covers: Vec<Vec<usize>>,
    complete: bool,
    level_bound: usize,
}

impl WeylGroup {
    pub fn new(gcm: &CartanMatrix) -> Self {
        let e = WeylElement::identity(gcm.rank());
        let mut index = HashMap::new();
        index.insert(e.matrix.clone(), 0);
        WeylGroup {
            gcm: gcm.clone(),
            elements: vec![e],
            index,
            levels: vec![vec![0]],
            covers: vec![Vec::new()],
            complete: false,
            level_bound: DEFAULT_LEVEL_BOUND,
        }
    }

    pub fn with_level_bound(mut self, bound: usize) -> Self {
        self.level_bound = bound;
        self
    }

    /// All elements of length at most `max_length`, grouped by length.
    pub fn enumerate_up_to(gcm: &CartanMatrix, max_length: usize) -> Result<Self> {
        let mut g = WeylGroup::new(gcm);
        g.extend_to(max_length)?;
        Ok(g)
    }

    pub fn gcm(&self) -> &CartanMatrix {
        &self.gcm
    }

    /// Largest length enumerated so far.
    pub fn max_length(&self) -> usize {
        self.levels.len() - 1
    }

    /// True once an empty level was reached, i.e. the group is finite and fully known.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, idx: usize) -> &WeylElement {
        &self.elements[idx]
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn level(&self, n: usize) -> &[usize] {
        self.levels.get(n).map_or(&[], |v| v.as_slice())
    }

    pub fn levels(&self) -> &[Vec<usize>] {
        &self.levels
    }

    pub fn level_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.len()).collect()
    }

    pub fn find(&self, m: &IntMatrix) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn identity_index(&self) -> usize {
        0
    }

    /// `w'` with `w -> w'`, sorted by index.
    pub fn covers(&self, idx: usize) -> &[usize] {
        &self.covers[idx]
    }

    /// Extends the enumeration so that every element of length `<= max_length`
    /// is present.
    pub fn extend_to(&mut self, max_length: usize) -> Result<()> {
        while !self.complete && self.max_length() < max_length {
            self.extend_one()?;
        }
        Ok(())
    }

    /// Adds the next length level. Returns false if it was empty.
    pub fn extend_one(&mut self) -> Result<bool> {
        if self.complete {
            return Ok(false);
        }
        let n = self.max_length();
        let mut fresh: Vec<WeylElement> = Vec::new();
        let mut seen: HashMap<IntMatrix, ()> = HashMap::new();
        for &w in &self.levels[n] {
            let elem = &self.elements[w];
            for i in 0..self.gcm.rank() {
                if elem.has_right_descent(i) {
                    continue;
                }
                let m = elem.matrix.mul(&simple_reflection(&self.gcm, i));
                if seen.insert(m.clone(), ()).is_some() {
                    continue;
                }
                fresh.push(WeylElement::from_matrix(&self.gcm, m)?);
                if fresh.len() > self.level_bound {
                    return Err(Error::LevelTooLarge { level: n + 1, size: fresh.len(), bound: self.level_bound });
                }
            }
        }
        if fresh.is_empty() {
            self.complete = true;
            return Ok(false);
        }
        fresh.sort_by(|a, b| a.word.cmp(&b.word));
        let mut level = Vec::with_capacity(fresh.len());
        for elem in fresh {
            debug_assert_eq!(elem.length(), n + 1);
            let idx = self.elements.len();
            self.index.insert(elem.matrix.clone(), idx);
            self.elements.push(elem);
            level.push(idx);
        }
        for &idx in &level {
            let c = self.covers_by_deletion(idx);
            self.covers.push(c);
        }
        self.levels.push(level);
        Ok(true)
    }

    /// Deletes each letter of the cached reduced word and keeps the products
    /// that drop the length by exactly one.
    fn covers_by_deletion(&self, idx: usize) -> Vec<usize> {
        let word = &self.elements[idx].word;
        let mut out = Vec::new();
        for j in 0..word.len() {
            let mut shorter = word.clone();
            shorter.remove(j);
            let m = word_matrix(&self.gcm, &shorter);
            if let Some(k) = self.find(&m) {
                if self.elements[k].length() + 1 == word.len() && !out.contains(&k) {
                    out.push(k);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Bruhat order `a <= b`, by descending through covers from `b`.
    pub fn bruhat_le(&self, a: usize, b: usize) -> bool {
        let la = self.elements[a].length();
        let lb = self.elements[b].length();
        if la > lb {
            return false;
        }
        let mut frontier = vec![b];
        for _ in la..lb {
            let mut next: Vec<usize> = frontier.iter().flat_map(|&x| self.covers[x].iter().copied()).collect();
            next.sort_unstable();
            next.dedup();
            frontier = next;
        }
        frontier.contains(&a)
    }

    /// All arrows `w -> w'` among enumerated elements, ordered by source
    /// then target.
    pub fn arrows(&self) -> Vec<Arrow> {
        let mut out = Vec::new();
        for (src, cs) in self.covers.iter().enumerate() {
            for &dst in cs {
                out.push(Arrow { source: src, target: dst });
            }
        }
        out
    }

    /// Index of `s_i w`, if enumerated.
    pub fn left_multiply(&self, i: usize, idx: usize) -> Option<usize> {
        let m = simple_reflection(&self.gcm, i).mul(&self.elements[idx].matrix);
        self.find(&m)
    }

    /// Height of the offset of `w.mu` below `mu`.
    pub fn offset_height(&self, idx: usize, mu: &[i64]) -> i64 {
        crate::cartan::height(&self.elements[idx].dot(&self.gcm, &Weight::top(mu.to_vec())).offset)
    }

    /// Enumerates until every `w` with `ht(mu - w.mu) <= depth` is present,
    /// for dominant `mu`. Offsets grow strictly along arrows, so it suffices
    /// that the last level lies entirely above `depth`.
    pub fn enumerate_for_depth(gcm: &CartanMatrix, mu: &[i64], depth: i64) -> Result<Self> {
        if let Some(i) = mu.iter().position(|&m| m < 0) {
            return Err(Error::NotDominant(format!("label {} at index {i} is negative", mu[i])));
        }
        let mut g = WeylGroup::new(gcm);
        loop {
            let last = g.levels.last().unwrap();
            if last.iter().all(|&w| g.offset_height(w, mu) > depth) {
                break;
            }
            if !g.extend_one()? {
                break;
            }
        }
        Ok(g)
    }

    /// Whether every element whose offset has height at most `depth` is
    /// enumerated.
    pub fn covers_depth(&self, mu: &[i64], depth: i64) -> bool {
        self.complete || self.levels.last().unwrap().iter().all(|&w| self.offset_height(w, mu) > depth)
    }
}
