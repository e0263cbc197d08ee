//! Generalized Cartan matrices, symmetrizers and weights.
//!
//! Weights are never materialized in `h*`. A [`Weight`] is a label vector
//! (the values on the simple coroots of some base weight) together with a
//! root-lattice offset subtracted from it. The pairing convention is
//! `<alpha_j, alpha_i^vee> = a_ij`.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A root-lattice vector in simple-root coordinates.
pub type Degree = Vec<i64>;

pub fn height(beta: &[i64]) -> i64 {
    beta.iter().sum()
}

/// `a <= b` in the dominance order on the root lattice.
pub fn dominated(a: &[i64], b: &[i64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub fn is_nonnegative(beta: &[i64]) -> bool {
    beta.iter().all(|&x| x >= 0)
}

pub fn add_degrees(a: &[i64], b: &[i64]) -> Degree {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_degrees(a: &[i64], b: &[i64]) -> Degree {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn unit_degree(rank: usize, i: usize) -> Degree {
    let mut d = vec![0; rank];
    d[i] = 1;
    d
}

/// All nonnegative degrees of rank `rank` and height at most `max_height`,
/// ordered by height, then lexicographically descending in coordinates.
pub fn degrees_up_to(rank: usize, max_height: i64) -> Vec<Degree> {
    let mut out = Vec::new();
    for h in 0..=max_height.max(-1) {
        let mut level = Vec::new();
        compositions(rank, h, &mut Vec::new(), &mut level);
        out.extend(level);
    }
    out
}

fn compositions(parts: usize, total: i64, prefix: &mut Vec<i64>, out: &mut Vec<Degree>) {
    if parts == 0 {
        if total == 0 {
            out.push(prefix.clone());
        }
        return;
    }
    if parts == 1 {
        prefix.push(total);
        out.push(prefix.clone());
        prefix.pop();
        return;
    }
    for first in (0..=total).rev() {
        prefix.push(first);
        compositions(parts - 1, total - first, prefix, out);
        prefix.pop();
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct CartanMatrix {
    rank: usize,
    entries: Vec<Vec<i64>>,
}

/// JSON form `{"rank": r, "entries": [[...], ...]}`.
#[derive(Deserialize, Serialize, Debug, Clone, PartialEq, Eq)]
pub struct CartanMatrixJson {
    pub rank: usize,
    pub entries: Vec<Vec<i64>>,
}

impl CartanMatrix {
    /// Validates the three axioms, reporting every violation found.
    /// Positions in messages are 1-based matrix positions.
    pub fn new(entries: Vec<Vec<i64>>) -> Result<Self> {
        let r = entries.len();
        let mut problems = Vec::new();
        if r == 0 {
            problems.push("matrix is empty".to_string());
        }
        for (i, row) in entries.iter().enumerate() {
            if row.len() != r {
                problems.push(format!("row {} has {} entries, expected {r}", i + 1, row.len()));
            }
        }
        if !problems.is_empty() {
            return Err(Error::InvalidCartan(problems));
        }
        for i in 0..r {
            if entries[i][i] != 2 {
                problems.push(format!("diagonal entry at ({},{}) is {}, expected 2", i + 1, i + 1, entries[i][i]));
            }
            for j in 0..r {
                if i == j {
                    continue;
                }
                if entries[i][j] > 0 {
                    problems.push(format!("positive off-diagonal entry {} at ({},{})", entries[i][j], i + 1, j + 1));
                }
                if i < j && (entries[i][j] == 0) != (entries[j][i] == 0) {
                    problems.push(format!("zero pattern asymmetric at ({},{})", i + 1, j + 1));
                }
            }
        }
        if problems.is_empty() {
            Ok(CartanMatrix { rank: r, entries })
        } else {
            Err(Error::InvalidCartan(problems))
        }
    }

    pub fn from_json(json: &CartanMatrixJson) -> Result<Self> {
        if json.rank != json.entries.len() {
            return Err(Error::InvalidCartan(vec![format!(
                "declared rank {} but {} rows given",
                json.rank,
                json.entries.len()
            )]));
        }
        Self::new(json.entries.clone())
    }

    pub fn to_json(&self) -> CartanMatrixJson {
        CartanMatrixJson { rank: self.rank, entries: self.entries.clone() }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    /// `<beta, alpha_i^vee>` for a root-lattice vector `beta`.
    pub fn root_pairing(&self, beta: &[i64], i: usize) -> i64 {
        beta.iter().enumerate().map(|(j, b)| b * self.entries[i][j]).sum()
    }

    /// Principal submatrix on `indices`, in the given order.
    pub fn submatrix(&self, indices: &[usize]) -> CartanMatrix {
        let entries = indices
            .iter()
            .map(|&i| indices.iter().map(|&j| self.entries[i][j]).collect())
            .collect();
        CartanMatrix { rank: indices.len(), entries }
    }

    /// Minimal positive integer solution of `d_i a_ij = d_j a_ji`.
    pub fn symmetrizer(&self) -> Result<Symmetrizer> {
        let r = self.rank;
        // d as reduced fractions (num, den), assigned per connected component.
        let mut d: Vec<Option<(i64, i64)>> = vec![None; r];
        for start in 0..r {
            if d[start].is_some() {
                continue;
            }
            d[start] = Some((1, 1));
            let mut component = vec![start];
            let mut stack = vec![start];
            while let Some(i) = stack.pop() {
                let (n, m) = d[i].unwrap();
                for j in 0..r {
                    if i == j || self.entries[i][j] == 0 {
                        continue;
                    }
                    // d_j = d_i * a_ij / a_ji
                    let (nn, mm) = reduce(n * self.entries[i][j], m * self.entries[j][i]);
                    match d[j] {
                        None => {
                            d[j] = Some((nn, mm));
                            component.push(j);
                            stack.push(j);
                        }
                        Some(existing) if existing != (nn, mm) => {
                            return Err(Error::NotSymmetrizable(format!(
                                "constraints on d_{} and d_{} contradict",
                                i + 1,
                                j + 1
                            )));
                        }
                        Some(_) => {}
                    }
                }
            }
            let lcm = component.iter().fold(1i64, |acc, &i| acc.lcm(&d[i].unwrap().1));
            let ints: Vec<i64> = component.iter().map(|&i| d[i].unwrap().0 * (lcm / d[i].unwrap().1)).collect();
            let g = ints.iter().fold(0i64, |acc, x| acc.gcd(x));
            for (&i, v) in component.iter().zip(ints) {
                d[i] = Some((v / g, 1));
            }
        }
        Ok(Symmetrizer(d.into_iter().map(|x| x.unwrap().0).collect()))
    }

    pub fn is_symmetrizable(&self) -> bool {
        self.symmetrizer().is_ok()
    }
}

fn reduce(n: i64, m: i64) -> (i64, i64) {
    let g = n.gcd(&m);
    let (n, m) = (n / g, m / g);
    if m < 0 {
        (-n, -m)
    } else {
        (n, m)
    }
}

impl fmt::Display for CartanMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .entries
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

/// Positive integers `d_i` with `d_i a_ij = d_j a_ji`, coprime on each
/// connected component of the Dynkin diagram.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Symmetrizer(pub Vec<i64>);

impl Symmetrizer {
    pub fn get(&self, i: usize) -> i64 {
        self.0[i]
    }

    /// The invariant form on the root lattice, `(alpha_i, alpha_j) = d_i a_ij`.
    pub fn form(&self, gcm: &CartanMatrix, a: &[i64], b: &[i64]) -> i64 {
        let r = gcm.rank();
        let mut s = 0;
        for i in 0..r {
            if a[i] == 0 {
                continue;
            }
            for j in 0..r {
                s += a[i] * b[j] * self.0[i] * gcm.entry(i, j);
            }
        }
        s
    }

    /// `(lambda, beta)` for a weight given by its labels and a root-lattice
    /// vector `beta`.
    pub fn pair_labels(&self, labels: &[i64], beta: &[i64]) -> i64 {
        beta.iter().enumerate().map(|(j, b)| b * self.0[j] * labels[j]).sum()
    }
}

/// The weight `base - sum_j offset_j alpha_j`, where `base` is described by
/// its coroot labels.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Weight {
    pub labels: Vec<i64>,
    pub offset: Vec<i64>,
}

impl Weight {
    pub fn new(labels: Vec<i64>, offset: Vec<i64>) -> Self {
        assert_eq!(labels.len(), offset.len(), "label/offset rank mismatch");
        Weight { labels, offset }
    }

    /// A weight with zero offset.
    pub fn top(labels: Vec<i64>) -> Self {
        let r = labels.len();
        Weight { labels, offset: vec![0; r] }
    }

    /// `rho`, all ones.
    pub fn rho(rank: usize) -> Self {
        Weight::top(vec![1; rank])
    }

    /// `alpha_j` expressed as labels `(a_ij)_i` relative to 0.
    pub fn simple_root(gcm: &CartanMatrix, j: usize) -> Self {
        Weight::top((0..gcm.rank()).map(|i| gcm.entry(i, j)).collect())
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    /// `<self, alpha_i^vee>`.
    pub fn pairing(&self, gcm: &CartanMatrix, i: usize) -> i64 {
        self.labels[i] - gcm.root_pairing(&self.offset, i)
    }

    /// Coroot labels of the weight itself.
    pub fn effective_labels(&self, gcm: &CartanMatrix) -> Vec<i64> {
        (0..self.rank()).map(|i| self.pairing(gcm, i)).collect()
    }

    pub fn height(&self) -> i64 {
        height(&self.offset)
    }

    /// `self - beta`.
    pub fn lower(&self, beta: &[i64]) -> Weight {
        Weight { labels: self.labels.clone(), offset: add_degrees(&self.offset, beta) }
    }

    pub fn is_dominant(&self, gcm: &CartanMatrix) -> bool {
        (0..self.rank()).all(|i| self.pairing(gcm, i) >= 0)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}-{:?}", self.labels, self.offset)
    }
}

/// The shifted action `s_i . lambda = lambda - (<lambda, alpha_i^vee> + 1) alpha_i`.
pub fn dot_action_simple(gcm: &CartanMatrix, i: usize, lambda: &Weight) -> Weight {
    let shift = lambda.pairing(gcm, i) + 1;
    let mut offset = lambda.offset.clone();
    offset[i] += shift;
    Weight { labels: lambda.labels.clone(), offset }
}

/// Shifted action of a word `s_{i_1} ... s_{i_k}` (rightmost letter first).
pub fn dot_action_word(gcm: &CartanMatrix, word: &[usize], lambda: &Weight) -> Weight {
    word.iter().rev().fold(lambda.clone(), |acc, &i| dot_action_simple(gcm, i, &acc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn a2() -> CartanMatrix {
        CartanMatrix::new(vec![vec![2, -1], vec![-1, 2]]).unwrap()
    }

    #[test]
    fn validation_examples() {
        assert!(CartanMatrix::new(vec![vec![2, -2], vec![-2, 2]]).is_ok());
        let err = CartanMatrix::new(vec![vec![2, -1], vec![0, 2]]).unwrap_err();
        assert_eq!(err.to_string(), "invalid generalized Cartan matrix: zero pattern asymmetric at (1,2)");
        let err = CartanMatrix::new(vec![vec![1, 1], vec![-1, 2]]).unwrap_err();
        let Error::InvalidCartan(list) = err else { panic!() };
        assert_eq!(list.len(), 2);
        assert!(CartanMatrix::new(vec![vec![2, -1]]).is_err());
    }

    #[test]
    fn symmetrizer_examples() {
        assert_eq!(a2().symmetrizer().unwrap(), Symmetrizer(vec![1, 1]));
        let b2 = CartanMatrix::new(vec![vec![2, -2], vec![-1, 2]]).unwrap();
        assert_eq!(b2.symmetrizer().unwrap(), Symmetrizer(vec![1, 2]));
        let bad = CartanMatrix::new(vec![vec![2, -1, -1], vec![-1, 2, -1], vec![-2, -1, 2]]).unwrap();
        assert!(matches!(bad.symmetrizer(), Err(Error::NotSymmetrizable(_))));
        let g2 = CartanMatrix::new(vec![vec![2, -1], vec![-3, 2]]).unwrap();
        assert_eq!(g2.symmetrizer().unwrap(), Symmetrizer(vec![3, 1]));
        let split = CartanMatrix::new(vec![vec![2, 0], vec![0, 2]]).unwrap();
        assert_eq!(split.symmetrizer().unwrap(), Symmetrizer(vec![1, 1]));
    }

    #[test]
    fn symmetrizer_by_substitution() {
        for entries in [
            vec![vec![2, -2], vec![-1, 2]],
            vec![vec![2, -1, 0], vec![-2, 2, -1], vec![0, -1, 2]],
            vec![vec![2, -4], vec![-1, 2]],
        ] {
            let gcm = CartanMatrix::new(entries).unwrap();
            let d = gcm.symmetrizer().unwrap();
            for i in 0..gcm.rank() {
                for j in 0..gcm.rank() {
                    assert_eq!(d.get(i) * gcm.entry(i, j), d.get(j) * gcm.entry(j, i));
                }
            }
        }
    }

    #[test]
    fn dot_action_examples() {
        let a1 = CartanMatrix::new(vec![vec![2]]).unwrap();
        let s = dot_action_simple(&a1, 0, &Weight::top(vec![3]));
        assert_eq!(s.offset, vec![4]);
        let fixed = Weight::top(vec![-1]);
        assert_eq!(dot_action_simple(&a1, 0, &fixed), fixed);
        let s1 = dot_action_simple(&a2(), 0, &Weight::top(vec![1, 1]));
        assert_eq!(s1.offset, vec![2, 0]);
    }

    #[test]
    fn pairing_transpose_convention() {
        let b2 = CartanMatrix::new(vec![vec![2, -2], vec![-1, 2]]).unwrap();
        for j in 0..2 {
            let alpha = Weight::simple_root(&b2, j);
            for i in 0..2 {
                assert_eq!(alpha.pairing(&b2, i), b2.entry(i, j));
                // same root as a negative offset from 0
                let as_offset = Weight::new(vec![0, 0], {
                    let mut o = vec![0, 0];
                    o[j] = -1;
                    o
                });
                assert_eq!(as_offset.pairing(&b2, i), b2.entry(i, j));
            }
        }
        assert_eq!(Weight::simple_root(&b2, 1).labels, vec![-2, 2]);
    }

    #[test]
    fn degree_listing() {
        let ds = degrees_up_to(2, 2);
        assert_eq!(ds, vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![2, 0], vec![1, 1], vec![0, 2]]);
    }

    proptest! {
        #[test]
        fn dot_action_is_an_involution(labels in prop::collection::vec(-6i64..6, 3), offset in prop::collection::vec(-4i64..6, 3), i in 0usize..3) {
            let gcm = CartanMatrix::new(vec![vec![2, -1, 0], vec![-1, 2, -2], vec![0, -1, 2]]).unwrap();
            let w = Weight::new(labels, offset);
            prop_assert_eq!(dot_action_simple(&gcm, i, &dot_action_simple(&gcm, i, &w)), w);
        }
    }
}
