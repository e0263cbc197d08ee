//! The graded algebra generated by `f_1, ..., f_r` modulo the (quantum)
//! Serre relations, built one degree at a time.
//!
//! For classical coefficients this is `U(n^-)`; for quantum coefficients it
//! is `U_q(n^-)`. The degree-`beta` component is computed as a quotient of
//! `sum_i f_i * U_{beta - alpha_i}` by the images of the relators placed at
//! the left end, which is all of the two-sided ideal in that degree once the
//! lower degrees are already reduced. Every basis vector is `f_i * b` for a
//! basis vector `b` one degree down, so each basis vector carries a word.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::cartan::{add_degrees, is_nonnegative, sub_degrees, unit_degree, CartanMatrix, Degree};
use crate::field::{Field, Rational};
use crate::linalg::{Matrix, Quotient};

/// The scalars that distinguish the classical and quantum settings.
pub trait Coefficients: Send + Sync + 'static {
    type F: Field;

    /// Value of `[e_i, f_i]` on a weight vector whose `alpha_i^vee` pairing
    /// is `n`: `n` classically, `[n]_{q_i}` in the quantum case.
    fn cartan_value(&self, i: usize, n: i64) -> Self::F;

    /// Binomial `C(n, k)` (classical) or `[n k]_{q_i}` (quantum) used in the
    /// Serre relator `sum_k (-1)^k c_k f_i^{n-k} f_j f_i^k`.
    fn serre_coefficient(&self, i: usize, n: usize, k: usize) -> Self::F;

    /// Human-readable name of the scalar field.
    fn field_name(&self) -> String;
}

/// Rational coefficients, `q = 1`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Classical;

impl Coefficients for Classical {
    type F = Rational;

    fn cartan_value(&self, _i: usize, n: i64) -> Rational {
        Rational::from_i64(n)
    }

    fn serre_coefficient(&self, _i: usize, n: usize, k: usize) -> Rational {
        let mut c = Rational::one();
        for t in 0..k {
            c = c.mul(&Rational::from_i64((n - t) as i64)).div(&Rational::from_i64(t as i64 + 1));
        }
        c
    }

    fn field_name(&self) -> String {
        "Q".to_string()
    }
}

/// `sum (coefficient, word)`; a word `[i_1, ..., i_k]` is `f_{i_1} ... f_{i_k}`.
pub type WordPolynomial<F> = Vec<(F, Vec<usize>)>;

#[derive(Clone, Debug)]
pub struct Relator<F> {
    pub i: usize,
    pub j: usize,
    pub degree: Degree,
    pub terms: WordPolynomial<F>,
}

/// `sum_{k=0}^{n} (-1)^k c_k f_i^{n-k} f_j f_i^k` with `n = 1 - a_ij`, for every `i != j`.
pub fn serre_relators<C: Coefficients>(gcm: &CartanMatrix, coeffs: &C) -> Vec<Relator<C::F>> {
    let r = gcm.rank();
    let mut out = Vec::new();
    for i in 0..r {
        for j in 0..r {
            if i == j {
                continue;
            }
            let n = (1 - gcm.entry(i, j)) as usize;
            let mut terms = Vec::with_capacity(n + 1);
            for k in 0..=n {
                let mut c = coeffs.serre_coefficient(i, n, k);
                if k % 2 == 1 {
                    c = c.neg();
                }
                let mut word = vec![i; n - k];
                word.push(j);
                word.extend(std::iter::repeat_n(i, k));
                terms.push((c, word));
            }
            let mut degree = vec![0; r];
            degree[i] = n as i64;
            degree[j] = 1;
            out.push(Relator { i, j, degree, terms });
        }
    }
    out
}

/// One graded component `U_beta`.
#[derive(Clone, Debug)]
pub struct DegreePiece<F> {
    pub degree: Degree,
    /// Representative word of each basis vector.
    pub words: Vec<Vec<usize>>,
    /// Basis vector `k` is `f_{basis[k].0}` times basis vector `basis[k].1`
    /// of `U_{beta - alpha_i}`. Empty in degree zero.
    pub basis: Vec<(usize, usize)>,
    /// `lowering[i]`: left multiplication by `f_i`, `U_{beta - alpha_i} -> U_beta`.
    pub lowering: Vec<Option<Matrix<F>>>,
}

impl<F: Field> DegreePiece<F> {
    pub fn dim(&self) -> usize {
        self.words.len()
    }
}

pub struct NegativePart<C: Coefficients> {
    gcm: CartanMatrix,
    coeffs: C,
    relators: Vec<Relator<C::F>>,
    cache: Mutex<HashMap<Degree, Arc<DegreePiece<C::F>>>>,
}

impl<C: Coefficients> NegativePart<C> {
    pub fn new(gcm: &CartanMatrix, coeffs: C) -> Self {
        let relators = serre_relators(gcm, &coeffs);
        NegativePart { gcm: gcm.clone(), coeffs, relators, cache: Mutex::new(HashMap::new()) }
    }

    pub fn gcm(&self) -> &CartanMatrix {
        &self.gcm
    }

    pub fn coefficients(&self) -> &C {
        &self.coeffs
    }

    pub fn relators(&self) -> &[Relator<C::F>] {
        &self.relators
    }

    pub fn rank(&self) -> usize {
        self.gcm.rank()
    }

    pub fn dim(&self, beta: &[i64]) -> usize {
        if !is_nonnegative(beta) {
            return 0;
        }
        self.piece(beta).dim()
    }

    /// The component in degree `beta`; panics if `beta` has a negative entry.
    pub fn piece(&self, beta: &[i64]) -> Arc<DegreePiece<C::F>> {
        assert!(is_nonnegative(beta), "negative degree {beta:?}");
        if let Some(p) = self.cache.lock().unwrap().get(beta) {
            return Arc::clone(p);
        }
        let built = Arc::new(self.build_piece(beta));
        let mut cache = self.cache.lock().unwrap();
        Arc::clone(cache.entry(beta.to_vec()).or_insert(built))
    }

    fn build_piece(&self, beta: &[i64]) -> DegreePiece<C::F> {
        let r = self.rank();
        if beta.iter().all(|&b| b == 0) {
            return DegreePiece { degree: beta.to_vec(), words: vec![Vec::new()], basis: Vec::new(), lowering: vec![None; r] };
        }
        // Ambient space: direct sum over i of U_{beta - alpha_i}.
        let mut children: Vec<Option<Arc<DegreePiece<C::F>>>> = vec![None; r];
        let mut offsets = vec![0usize; r];
        let mut total = 0;
        for i in 0..r {
            offsets[i] = total;
            if beta[i] >= 1 {
                let child = self.piece(&sub_degrees(beta, &unit_degree(r, i)));
                total += child.dim();
                children[i] = Some(child);
            }
        }
        let mut relations: Vec<Vec<C::F>> = Vec::new();
        for rel in &self.relators {
            let rest = sub_degrees(beta, &rel.degree);
            if !is_nonnegative(&rest) {
                continue;
            }
            let rest_dim = self.piece(&rest).dim();
            for k in 0..rest_dim {
                let mut unit = vec![C::F::zero(); rest_dim];
                unit[k] = C::F::one();
                let mut row = vec![C::F::zero(); total];
                for (c, word) in &rel.terms {
                    let first = word[0];
                    let (v, _) = self.apply_word(&word[1..], &unit, &rest);
                    for (t, x) in v.iter().enumerate() {
                        row[offsets[first] + t].add_mul_assign(c, x);
                    }
                }
                relations.push(row);
            }
        }
        let rel_matrix = Matrix::from_rows(relations, total);
        let quotient = Quotient::new(total, &rel_matrix);
        let mut basis = Vec::with_capacity(quotient.dim());
        let mut words = Vec::with_capacity(quotient.dim());
        for &col in quotient.kept() {
            let i = (0..r).rev().find(|&i| children[i].is_some() && offsets[i] <= col).unwrap();
            let k = col - offsets[i];
            basis.push((i, k));
            let mut w = vec![i];
            w.extend_from_slice(&children[i].as_ref().unwrap().words[k]);
            words.push(w);
        }
        let lowering = (0..r)
            .map(|i| {
                children[i].as_ref().map(|child| quotient.projection().block(0, offsets[i], quotient.dim(), child.dim()))
            })
            .collect();
        DegreePiece { degree: beta.to_vec(), words, basis, lowering }
    }

    /// Left multiplication `f_i : U_gamma -> U_{gamma + alpha_i}`.
    pub fn lowering(&self, i: usize, gamma: &[i64]) -> Matrix<C::F> {
        let target = add_degrees(gamma, &unit_degree(self.rank(), i));
        let piece = self.piece(&target);
        piece.lowering[i].clone().expect("lowering into a positive degree exists")
    }

    /// `word * v` for `v` in `U_gamma`; returns the vector and its degree.
    pub fn apply_word(&self, word: &[usize], v: &[C::F], gamma: &[i64]) -> (Vec<C::F>, Degree) {
        let r = self.rank();
        let mut deg = gamma.to_vec();
        let mut cur = v.to_vec();
        for &letter in word.iter().rev() {
            deg[letter] += 1;
            let piece = self.piece(&deg);
            cur = piece.lowering[letter].as_ref().unwrap().mul_vec(&cur);
        }
        debug_assert_eq!(deg.len(), r);
        (cur, deg)
    }

    /// Coordinates of a homogeneous word polynomial of degree `degree`.
    pub fn element_of(&self, poly: &[(C::F, Vec<usize>)], degree: &[i64]) -> Vec<C::F> {
        let r = self.rank();
        let mut out = vec![C::F::zero(); self.dim(degree)];
        let one = [C::F::one()];
        for (c, word) in poly {
            let (v, d) = self.apply_word(word, &one, &vec![0; r]);
            assert_eq!(d, degree, "inhomogeneous word polynomial");
            for (o, x) in out.iter_mut().zip(&v) {
                o.add_mul_assign(c, x);
            }
        }
        out
    }

    /// Degree of a word.
    pub fn word_degree(&self, word: &[usize]) -> Degree {
        let mut d = vec![0; self.rank()];
        for &i in word {
            d[i] += 1;
        }
        d
    }
}

/// Right multiplication by a fixed homogeneous element `u`, as matrices
/// `U_gamma -> U_{gamma + deg u}`, memoized per `gamma`.
pub struct RightMultiplier<C: Coefficients> {
    algebra: Arc<NegativePart<C>>,
    element: Vec<C::F>,
    degree: Degree,
    cache: Mutex<HashMap<Degree, Arc<Matrix<C::F>>>>,
}

impl<C: Coefficients> RightMultiplier<C> {
    pub fn new(algebra: Arc<NegativePart<C>>, element: Vec<C::F>, degree: Degree) -> Self {
        assert_eq!(element.len(), algebra.dim(&degree), "element does not match its degree");
        RightMultiplier { algebra, element, degree, cache: Mutex::new(HashMap::new()) }
    }

    pub fn element(&self) -> &[C::F] {
        &self.element
    }

    pub fn degree(&self) -> &[i64] {
        &self.degree
    }

    pub fn algebra(&self) -> &Arc<NegativePart<C>> {
        &self.algebra
    }

    /// `x -> x * u` on `U_gamma`.
    pub fn matrix(&self, gamma: &[i64]) -> Arc<Matrix<C::F>> {
        if let Some(m) = self.cache.lock().unwrap().get(gamma) {
            return Arc::clone(m);
        }
        let built = Arc::new(self.build(gamma));
        let mut cache = self.cache.lock().unwrap();
        Arc::clone(cache.entry(gamma.to_vec()).or_insert(built))
    }

    fn build(&self, gamma: &[i64]) -> Matrix<C::F> {
        let r = self.algebra.rank();
        let target = add_degrees(gamma, &self.degree);
        let piece = self.algebra.piece(gamma);
        let target_dim = self.algebra.dim(&target);
        if piece.basis.is_empty() {
            // degree zero: 1 * u = u
            return Matrix::from_columns(&[self.element.clone()], target_dim);
        }
        let mut columns = Vec::with_capacity(piece.dim());
        for &(j, k) in &piece.basis {
            let lower = sub_degrees(gamma, &unit_degree(r, j));
            let inner = self.matrix(&lower).column(k);
            let lowering = self.algebra.lowering(j, &add_degrees(&lower, &self.degree));
            columns.push(lowering.mul_vec(&inner));
        }
        Matrix::from_columns(&columns, target_dim)
    }
}
