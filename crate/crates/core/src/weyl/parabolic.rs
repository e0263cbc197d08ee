//! Parabolic factorization `w = w_S w^S` and the classification of arrows
//! relative to it.

use serde::Serialize;

use super::{Arrow, WeylGroup};
use crate::error::{Error, Result};

/// How an arrow `w_S w^S -> w'_S w'^S` behaves with respect to the
/// factorization.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum ArrowClass {
    /// `l(w^S) > l(w'^S)`.
    DropsWS,
    /// `w^S = w'^S` and `w_S -> w'_S` in `W_S` (indices of `w_S`, `w'_S`).
    SameWS { levi_source: usize, levi_target: usize },
}

impl WeylGroup {
    /// `(w_S, w^S)` with `w = w_S w^S`, both as element indices. Left
    /// descents in `S` are stripped, smallest index first.
    pub fn parabolic_decompose(&self, idx: usize, subset: &[usize]) -> (usize, usize) {
        let mut rest = idx;
        let mut levi_word = Vec::new();
        while let Some(&i) = subset.iter().filter(|&&i| self.element(rest).has_left_descent(i)).min() {
            rest = self.left_multiply(i, rest).expect("shorter element is enumerated");
            levi_word.push(i);
        }
        let levi = crate::weyl::word_matrix(self.gcm(), &levi_word);
        let levi_idx = self.find(&levi).expect("W_S factor is enumerated");
        (levi_idx, rest)
    }

    /// Elements with no left descent in `S`, up to the enumerated length.
    pub fn minimal_coset_reps(&self, subset: &[usize]) -> Vec<usize> {
        (0..self.len()).filter(|&w| self.is_minimal_rep(w, subset)).collect()
    }

    pub fn is_minimal_rep(&self, idx: usize, subset: &[usize]) -> bool {
        subset.iter().all(|&i| !self.element(idx).has_left_descent(i))
    }

    /// Whether `idx` lies in the parabolic subgroup `W_S`.
    pub fn in_parabolic(&self, idx: usize, subset: &[usize]) -> bool {
        self.element(idx).word().iter().all(|i| subset.contains(i))
    }

    pub fn classify_arrow(&self, arrow: Arrow, subset: &[usize]) -> Result<ArrowClass> {
        let (ls, rs) = self.parabolic_decompose(arrow.source, subset);
        let (lt, rt) = self.parabolic_decompose(arrow.target, subset);
        let (len_s, len_t) = (self.element(rs).length(), self.element(rt).length());
        if len_s > len_t {
            return Ok(ArrowClass::DropsWS);
        }
        if rs == rt && self.covers(ls).contains(&lt) {
            return Ok(ArrowClass::SameWS { levi_source: ls, levi_target: lt });
        }
        Err(Error::Invariant(format!(
            "arrow {:?} -> {:?} neither drops the W^S length nor stays in one coset",
            self.element(arrow.source).word(),
            self.element(arrow.target).word()
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::CartanMatrix;
    use crate::weyl::word_matrix;

    fn a2_group() -> WeylGroup {
        WeylGroup::enumerate_up_to(&CartanMatrix::new(vec![vec![2, -1], vec![-1, 2]]).unwrap(), 3).unwrap()
    }

    fn idx(g: &WeylGroup, w: &[usize]) -> usize {
        g.find(&word_matrix(g.gcm(), w)).unwrap()
    }

    #[test]
    fn decomposition_examples() {
        let g = a2_group();
        assert_eq!(g.parabolic_decompose(idx(&g, &[0, 1]), &[0]), (idx(&g, &[0]), idx(&g, &[1])));
        assert_eq!(g.parabolic_decompose(idx(&g, &[0]), &[0]), (idx(&g, &[0]), 0));
        assert_eq!(g.parabolic_decompose(idx(&g, &[1, 0]), &[0]), (0, idx(&g, &[1, 0])));
    }

    #[test]
    fn coset_representatives() {
        let g = a2_group();
        let reps: Vec<Vec<usize>> = g.minimal_coset_reps(&[0]).iter().map(|&w| g.element(w).word().to_vec()).collect();
        assert_eq!(reps, vec![vec![], vec![1], vec![1, 0]]);
        assert_eq!(g.minimal_coset_reps(&[0, 1]), vec![0]);
        assert_eq!(g.minimal_coset_reps(&[]).len(), 6);
    }

    #[test]
    fn arrow_classes() {
        let g = a2_group();
        let a = Arrow { source: idx(&g, &[0, 1]), target: idx(&g, &[1]) };
        assert_eq!(g.classify_arrow(a, &[0]).unwrap(), ArrowClass::SameWS { levi_source: idx(&g, &[0]), levi_target: 0 });
        let b = Arrow { source: idx(&g, &[1, 0]), target: idx(&g, &[1]) };
        assert_eq!(g.classify_arrow(b, &[0]).unwrap(), ArrowClass::DropsWS);
        for arrow in g.arrows() {
            assert_eq!(g.classify_arrow(arrow, &[]).unwrap(), ArrowClass::DropsWS);
        }
    }
}
