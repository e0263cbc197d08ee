//! Quantum coefficients: `U_q(n^-)` and quantum Verma modules reuse the
//! generic engines with `[n]_{q_i}` and Gaussian binomials in `q_i = q^{d_i}`.
//!
//! Two scalar fields are supported: `Q(q)` with `q` an indeterminate, and
//! `Q` with `q` a rational number of absolute value different from 0 and 1
//! (such a number is never a root of unity).

use std::collections::HashMap;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::cartan::{is_nonnegative, sub_degrees, CartanMatrix, Symmetrizer};
use crate::enveloping::{serre_relators, Coefficients, NegativePart, WordPolynomial};
use crate::error::{Error, Result};
use crate::field::{is_unit_modulus, Field, Rational};
use crate::linalg::Matrix;
use crate::ratfunc::{Poly, RatFunc};

/// `[n]_t = (t^n - t^{-n}) / (t - t^{-1})`, for any integer `n`.
pub fn qint<F: Field>(t: &F, n: i64) -> F {
    if n < 0 {
        return qint(t, -n).neg();
    }
    (0..n).fold(F::zero(), |acc, k| acc.add(&t.powi(n - 1 - 2 * k)))
}

/// `[n]_t! = [1]_t [2]_t ... [n]_t`.
pub fn qfactorial<F: Field>(t: &F, n: i64) -> F {
    (1..=n).fold(F::one(), |acc, k| acc.mul(&qint(t, k)))
}

/// Gaussian binomial via `[n k] = t^{-k} [n-1 k] + t^{n-k} [n-1 k-1]`.
pub fn qbinom<F: Field>(t: &F, n: usize, k: usize) -> F {
    if k > n {
        return F::zero();
    }
    let mut row = vec![F::one()];
    for m in 1..=n {
        let mut next = vec![F::zero(); m + 1];
        for j in 0..=m {
            let mut x = F::zero();
            if j < m {
                x = x.add(&t.powi(-(j as i64)).mul(&row[j]));
            }
            if j > 0 {
                x = x.add(&t.powi((m - j) as i64).mul(&row[j - 1]));
            }
            next[j] = x;
        }
        row = next;
    }
    row[k].clone()
}

/// How the quantum parameter is realized.
#[derive(Clone, Debug, PartialEq)]
pub enum QMode {
    Symbolic,
    Numeric(Rational),
}

/// Coefficients of `U_q(g)` for a symmetrizable Cartan matrix.
pub struct QuantumCoefficients<F: Field> {
    q: F,
    d: Vec<i64>,
    name: String,
    binomials: Mutex<HashMap<(usize, usize, usize), F>>,
}

impl QuantumCoefficients<RatFunc> {
    pub fn symbolic(symmetrizer: &Symmetrizer) -> Self {
        QuantumCoefficients::with_parameter(RatFunc::q(), symmetrizer, "Q(q)".to_string())
    }
}

impl QuantumCoefficients<Rational> {
    /// Errors when `|q| in {0, 1}`.
    pub fn numeric(q: Rational, symmetrizer: &Symmetrizer) -> Result<Self> {
        if Zero::is_zero(&q) || is_unit_modulus(&q) {
            return Err(Error::Config(format!("quantum parameter q = {q} must satisfy |q| != 0, 1")));
        }
        let name = format!("Q (q = {q})");
        Ok(QuantumCoefficients::with_parameter(q, symmetrizer, name))
    }
}

impl<F: Field> QuantumCoefficients<F> {
    fn with_parameter(q: F, symmetrizer: &Symmetrizer, name: String) -> Self {
        QuantumCoefficients { q, d: symmetrizer.0.clone(), name, binomials: Mutex::new(HashMap::new()) }
    }

    pub fn q(&self) -> &F {
        &self.q
    }

    /// `q_i = q^{d_i}`.
    pub fn q_i(&self, i: usize) -> F {
        self.q.powi(self.d[i])
    }
}

impl<F: Field> Coefficients for QuantumCoefficients<F> {
    type F = F;

    fn cartan_value(&self, i: usize, n: i64) -> F {
        qint(&self.q_i(i), n)
    }

    fn serre_coefficient(&self, i: usize, n: usize, k: usize) -> F {
        let key = (i, n, k);
        if let Some(c) = self.binomials.lock().unwrap().get(&key) {
            return c.clone();
        }
        let c = qbinom(&self.q_i(i), n, k);
        self.binomials.lock().unwrap().insert(key, c.clone());
        c
    }

    fn field_name(&self) -> String {
        self.name.clone()
    }
}

pub type QuantumAlgebra<F> = NegativePart<QuantumCoefficients<F>>;

/// `U_q(n^-)` over `Q(q)`.
pub fn symbolic_algebra(gcm: &CartanMatrix) -> Result<QuantumAlgebra<RatFunc>> {
    let d = gcm.symmetrizer()?;
    Ok(NegativePart::new(gcm, QuantumCoefficients::symbolic(&d)))
}

/// `U_q(n^-)` at a rational `q`.
pub fn numeric_algebra(gcm: &CartanMatrix, q: Rational) -> Result<QuantumAlgebra<Rational>> {
    let d = gcm.symmetrizer()?;
    Ok(NegativePart::new(gcm, QuantumCoefficients::numeric(q, &d)?))
}

/// The degree-`beta` part of the two-sided ideal of the free algebra on the
/// `F_i` generated by the (quantum) Serre relators, inside the span of all
/// words of that degree.
#[derive(Clone, Debug)]
pub struct IdealComponent<F> {
    pub words: Vec<Vec<usize>>,
    /// Spanning vectors `u R v` as rows, in word coordinates.
    pub span: Matrix<F>,
    pub rank: usize,
}

/// All words of degree `beta`, in lexicographic order.
pub fn words_of_degree(beta: &[i64]) -> Vec<Vec<usize>> {
    fn go(rest: &mut Vec<i64>, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.iter().all(|&x| x == 0) {
            out.push(prefix.clone());
            return;
        }
        for i in 0..rest.len() {
            if rest[i] > 0 {
                rest[i] -= 1;
                prefix.push(i);
                go(rest, prefix, out);
                prefix.pop();
                rest[i] += 1;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut beta.to_vec(), &mut Vec::new(), &mut out);
    out
}

/// Spans the ideal by every `u R v` with `u`, `v` words, placed explicitly in
/// the free algebra. Independent of the degreewise quotient in
/// [`NegativePart`], so `#words - rank` must equal its dimension.
pub fn q_serre_ideal_degree<C: Coefficients>(gcm: &CartanMatrix, coeffs: &C, beta: &[i64]) -> IdealComponent<C::F> {
    let words = words_of_degree(beta);
    let index: HashMap<&[usize], usize> = words.iter().enumerate().map(|(k, w)| (w.as_slice(), k)).collect();
    let mut rows = Vec::new();
    for rel in serre_relators(gcm, coeffs) {
        let rest = sub_degrees(beta, &rel.degree);
        if !is_nonnegative(&rest) {
            continue;
        }
        let outer = words_of_degree(&rest);
        for w in &outer {
            for split in 0..=w.len() {
                let mut row = vec![C::F::zero(); words.len()];
                for (c, body) in &rel.terms {
                    let mut full = w[..split].to_vec();
                    full.extend_from_slice(body);
                    full.extend_from_slice(&w[split..]);
                    let k = index[full.as_slice()];
                    row[k] = row[k].add(c);
                }
                rows.push(row);
            }
        }
    }
    let span = Matrix::from_rows(rows, words.len());
    let rank = span.rank();
    IdealComponent { words, span, rank }
}

/// Order of vanishing of a nonzero polynomial at `q = 1`.
fn order_at_one(p: &Poly) -> i64 {
    let one = Rational::from_i64(1);
    let linear = Poly::from_coeffs(vec![BigInt::from(-1), BigInt::from(1)]);
    let mut p = p.clone();
    let mut k = 0;
    while Zero::is_zero(&p.eval(&one)) {
        p = p.div_exact(&linear);
        k += 1;
    }
    k
}

/// Rescales a nonzero vector over `Q(q)` by a power of `q - 1` so that it
/// is regular and nonzero at `q = 1`, then evaluates there.
pub fn specialize_at_one(v: &[RatFunc]) -> Option<Vec<Rational>> {
    let m = v
        .iter()
        .filter(|x| !x.is_zero())
        .map(|x| order_at_one(x.numerator()) - order_at_one(x.denominator()))
        .min()?;
    let linear = RatFunc::q().sub(&RatFunc::one());
    let scale = linear.powi(-m);
    let one = Rational::from_i64(1);
    v.iter().map(|x| x.mul(&scale).eval(&one)).collect()
}

/// Specializes a quantum vector of degree `beta` at `q = 1` and rewrites it
/// in the coordinates of the classical algebra, going through the word
/// representatives.
pub fn specialize_to_classical(
    quantum: &QuantumAlgebra<RatFunc>,
    classical: &NegativePart<crate::enveloping::Classical>,
    v: &[RatFunc],
    beta: &[i64],
) -> Option<Vec<Rational>> {
    let values = specialize_at_one(v)?;
    let piece = quantum.piece(beta);
    let poly: WordPolynomial<Rational> = values.into_iter().zip(piece.words.iter().cloned()).collect();
    Some(classical.element_of(&poly, beta))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::cartan::{degrees_up_to, unit_degree};
    use crate::enveloping::Classical;
    use crate::linalg::Matrix;
    use crate::verma::VermaModule;

    fn gcm(entries: Vec<Vec<i64>>) -> CartanMatrix {
        CartanMatrix::new(entries).unwrap()
    }

    fn q() -> RatFunc {
        RatFunc::q()
    }

    #[test]
    fn qint_display() {
        assert_eq!(qint(&q(), 2).to_string(), "(q^2+1)/q");
        assert_eq!(qint(&q(), 0), RatFunc::zero());
        assert_eq!(qint(&q(), -1), RatFunc::from_i64(-1));
        assert_eq!(qint(&Rational::from_i64(2), 3), crate::field::parse_rational("21/4").unwrap());
    }

    #[test]
    fn gaussian_recursion_matches_factorials() {
        for n in 0..7usize {
            for k in 0..=n {
                let expected = qfactorial(&q(), n as i64)
                    .div(&qfactorial(&q(), k as i64).mul(&qfactorial(&q(), (n - k) as i64)));
                assert_eq!(qbinom(&q(), n, k), expected, "n {n} k {k}");
            }
        }
        assert_eq!(qbinom(&q(), 2, 1), qint(&q(), 2));
    }

    #[test]
    fn serre_relator_for_simply_laced_pair() {
        let a2 = gcm(vec![vec![2, -1], vec![-1, 2]]);
        let coeffs = QuantumCoefficients::symbolic(&a2.symmetrizer().unwrap());
        let rel = &serre_relators(&a2, &coeffs)[0];
        assert_eq!(rel.terms.len(), 3);
        assert_eq!(rel.terms[0], (RatFunc::one(), vec![0, 0, 1]));
        assert_eq!(rel.terms[1], (qint(&q(), 2).neg(), vec![0, 1, 0]));
        assert_eq!(rel.terms[2], (RatFunc::one(), vec![1, 0, 0]));
    }

    #[test]
    fn ideal_degrees() {
        let a1 = gcm(vec![vec![2]]);
        let c = QuantumCoefficients::symbolic(&a1.symmetrizer().unwrap());
        assert_eq!(q_serre_ideal_degree(&a1, &c, &[4]).rank, 0);
        let a2 = gcm(vec![vec![2, -1], vec![-1, 2]]);
        let c = QuantumCoefficients::symbolic(&a2.symmetrizer().unwrap());
        assert_eq!(q_serre_ideal_degree(&a2, &c, &[1, 1]).rank, 0);
        assert_eq!(q_serre_ideal_degree(&a2, &c, &[2, 1]).rank, 1);
    }

    #[test]
    fn word_space_ideal_matches_degreewise_quotient() {
        for entries in [vec![vec![2, -1], vec![-1, 2]], vec![vec![2, -2], vec![-1, 2]], vec![vec![2, -2], vec![-2, 2]]] {
            let g = gcm(entries);
            let alg = symbolic_algebra(&g).unwrap();
            for beta in degrees_up_to(2, 5) {
                let ideal = q_serre_ideal_degree(&g, alg.coefficients(), &beta);
                assert_eq!(ideal.words.len() - ideal.rank, alg.dim(&beta), "{g} beta {beta:?}");
            }
        }
    }

    #[test]
    fn flat_against_classical() {
        for entries in [vec![vec![2]], vec![vec![2, -1], vec![-1, 2]], vec![vec![2, -2], vec![-1, 2]]] {
            let g = gcm(entries);
            let quantum = symbolic_algebra(&g).unwrap();
            let classical = NegativePart::new(&g, Classical);
            for beta in degrees_up_to(g.rank(), 6) {
                assert_eq!(quantum.dim(&beta), classical.dim(&beta), "{g} beta {beta:?}");
            }
        }
    }

    #[test]
    fn a1_quantum_string() {
        let g = gcm(vec![vec![2]]);
        let alg = Arc::new(symbolic_algebra(&g).unwrap());
        let m = 3;
        let v = VermaModule::new(Arc::clone(&alg), vec![m]);
        for k in 1..6 {
            let e = v.raising(0, &[k]);
            assert_eq!(*e.get(0, 0), qint(&q(), k).mul(&qint(&q(), m - k + 1)));
        }
        assert_eq!(v.singular_vectors(&[m + 1]).unwrap().len(), 1);
        assert!(v.singular_vectors(&[m]).unwrap().is_empty());
    }

    #[test]
    fn quantum_commutator_identity() {
        let g = gcm(vec![vec![2, -1], vec![-1, 2]]);
        let alg = Arc::new(symbolic_algebra(&g).unwrap());
        let v = VermaModule::new(Arc::clone(&alg), vec![1, 0]);
        for beta in degrees_up_to(2, 4) {
            for i in 0..2 {
                for j in 0..2 {
                    if beta[i] == 0 && i != j {
                        continue;
                    }
                    let up = crate::cartan::add_degrees(&beta, &unit_degree(2, j));
                    let mut lhs = v.raising(i, &up).mul(&alg.lowering(j, &beta));
                    if beta[i] >= 1 {
                        let below = sub_degrees(&beta, &unit_degree(2, i));
                        lhs = lhs.sub(&alg.lowering(j, &below).mul(&v.raising(i, &beta)));
                    }
                    let dim = alg.dim(&beta);
                    let expected = if i == j {
                        Matrix::identity(dim).scale(&qint(&q(), v.pairing_at(&beta, i)))
                    } else {
                        Matrix::zeros(lhs.rows(), dim)
                    };
                    assert_eq!(lhs, expected);
                }
            }
        }
    }

    #[test]
    fn numeric_mode_rejects_unit_modulus() {
        let d = Symmetrizer(vec![1]);
        assert!(QuantumCoefficients::numeric(Rational::from_i64(1), &d).is_err());
        assert!(QuantumCoefficients::numeric(Rational::from_i64(-1), &d).is_err());
        assert!(QuantumCoefficients::numeric(Rational::from_i64(0), &d).is_err());
        assert!(QuantumCoefficients::numeric(Rational::from_i64(2), &d).is_ok());
    }

    #[test]
    fn specialization_recovers_classical_singular_vector() {
        let g = gcm(vec![vec![2, -1], vec![-1, 2]]);
        let quantum = Arc::new(symbolic_algebra(&g).unwrap());
        let classical = Arc::new(NegativePart::new(&g, Classical));
        // w0.mu for mu = (1,1) sits at offset (4,4)
        let beta = [4, 4];
        let qv = VermaModule::new(Arc::clone(&quantum), vec![1, 1]);
        let cv = VermaModule::new(Arc::clone(&classical), vec![1, 1]);
        let qs = qv.singular_vectors(&beta).unwrap();
        assert_eq!(qs.len(), 1);
        let special = specialize_to_classical(&quantum, &classical, &qs[0], &beta).unwrap();
        assert!(special.iter().any(|x| !Field::is_zero(x)));
        let killed = cv.raising_stack(&beta).mul_vec(&special);
        assert!(killed.iter().all(Field::is_zero));
    }

    #[test]
    fn specialize_clears_poles() {
        let v = vec![RatFunc::one().div(&q().sub(&RatFunc::one())), RatFunc::one()];
        assert_eq!(specialize_at_one(&v).unwrap(), vec![Rational::from_i64(1), Rational::from_i64(0)]);
    }
}
