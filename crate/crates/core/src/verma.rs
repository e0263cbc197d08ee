//! Weight slices of Verma modules, singular vectors, literal submodule
//! inclusions and highest-weight quotients.
//!
//! The Verma module `V^lambda` is identified with `U(n^-)` (or `U_q(n^-)`)
//! through `x -> x v_lambda`, so the slice of weight `lambda - beta` is the
//! degree-`beta` piece of the algebra. A submodule generated by a singular
//! vector `u` is the image of right multiplication by `u`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::cartan::{height, is_nonnegative, sub_degrees, unit_degree, CartanMatrix, Degree, Weight};
use crate::enveloping::{Coefficients, NegativePart, RightMultiplier};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Matrix, Quotient};
use crate::weyl::WeylGroup;

/// One weight space of a Verma module with the action of the generators.
#[derive(Clone, Debug)]
pub struct GradedSlice<F> {
    pub degree: Degree,
    pub words: Vec<Vec<usize>>,
    /// `raising[i]`: `e_i` into the slice `degree - alpha_i`, when that is a
    /// degree; `None` otherwise (the action is zero).
    pub raising: Vec<Option<Matrix<F>>>,
    /// `lowering[i]`: `f_i` into the slice `degree + alpha_i`.
    pub lowering: Vec<Matrix<F>>,
}

impl<F: Field> GradedSlice<F> {
    pub fn dim(&self) -> usize {
        self.words.len()
    }
}

pub struct VermaModule<C: Coefficients> {
    algebra: Arc<NegativePart<C>>,
    top: Vec<i64>,
    cutoff: Option<i64>,
    raising: Mutex<HashMap<(usize, Degree), Arc<Matrix<C::F>>>>,
}

impl<C: Coefficients> VermaModule<C> {
    /// Verma module whose highest weight has the given coroot pairings.
    pub fn new(algebra: Arc<NegativePart<C>>, top: Vec<i64>) -> Self {
        assert_eq!(top.len(), algebra.rank());
        VermaModule { algebra, top, cutoff: None, raising: Mutex::new(HashMap::new()) }
    }

    pub fn of_weight(algebra: Arc<NegativePart<C>>, weight: &Weight) -> Self {
        let top = weight.effective_labels(algebra.gcm());
        Self::new(algebra, top)
    }

    /// Refuse slices above this height.
    pub fn with_cutoff(mut self, cutoff: i64) -> Self {
        self.cutoff = Some(cutoff);
        self
    }

    pub fn algebra(&self) -> &Arc<NegativePart<C>> {
        &self.algebra
    }

    pub fn gcm(&self) -> &CartanMatrix {
        self.algebra.gcm()
    }

    pub fn top(&self) -> &[i64] {
        &self.top
    }

    /// `(lambda - beta)(alpha_i^vee)`.
    pub fn pairing_at(&self, beta: &[i64], i: usize) -> i64 {
        self.top[i] - self.gcm().root_pairing(beta, i)
    }

    fn check_cutoff(&self, beta: &[i64]) -> Result<()> {
        match self.cutoff {
            Some(c) if height(beta) > c => Err(Error::CutoffExceeded { height: height(beta), cutoff: c }),
            _ => Ok(()),
        }
    }

    pub fn dim(&self, beta: &[i64]) -> usize {
        self.algebra.dim(beta)
    }

    /// `e_i` from the slice `beta` to the slice `beta - alpha_i`. Uses
    /// `e_i f_j b = f_j e_i b + delta_ij [h_i] b` on the basis `f_j b`.
    pub fn raising(&self, i: usize, beta: &[i64]) -> Arc<Matrix<C::F>> {
        let key = (i, beta.to_vec());
        if let Some(m) = self.raising.lock().unwrap().get(&key) {
            return Arc::clone(m);
        }
        let built = Arc::new(self.build_raising(i, beta));
        let mut cache = self.raising.lock().unwrap();
        Arc::clone(cache.entry(key).or_insert(built))
    }

    fn build_raising(&self, i: usize, beta: &[i64]) -> Matrix<C::F> {
        let r = self.algebra.rank();
        let target = sub_degrees(beta, &unit_degree(r, i));
        let piece = self.algebra.piece(beta);
        let target_dim = self.algebra.dim(&target);
        let mut columns = Vec::with_capacity(piece.dim());
        for &(j, k) in &piece.basis {
            let child = sub_degrees(beta, &unit_degree(r, j));
            let mut col = vec![C::F::zero(); target_dim];
            let grandchild = sub_degrees(&child, &unit_degree(r, i));
            if is_nonnegative(&grandchild) {
                let inner = self.raising(i, &child).column(k);
                col = self.algebra.lowering(j, &grandchild).mul_vec(&inner);
            }
            if i == j {
                let c = self.algebra.coefficients().cartan_value(i, self.pairing_at(&child, i));
                col[k] = col[k].add(&c);
            }
            columns.push(col);
        }
        Matrix::from_columns(&columns, target_dim)
    }

    pub fn slice(&self, beta: &[i64]) -> Result<GradedSlice<C::F>> {
        self.check_cutoff(beta)?;
        let r = self.algebra.rank();
        let piece = self.algebra.piece(beta);
        let raising = (0..r)
            .map(|i| (beta[i] >= 1).then(|| (*self.raising(i, beta)).clone()))
            .collect();
        let lowering = (0..r).map(|i| self.algebra.lowering(i, beta)).collect();
        Ok(GradedSlice { degree: beta.to_vec(), words: piece.words.clone(), raising, lowering })
    }

    /// All `e_i` stacked: the slice `beta` into the direct sum of the slices
    /// `beta - alpha_i`.
    pub fn raising_stack(&self, beta: &[i64]) -> Matrix<C::F> {
        let dim = self.dim(beta);
        let mut out = Matrix::zeros(0, dim);
        for i in 0..self.algebra.rank() {
            if beta[i] >= 1 {
                out = out.vstack(&self.raising(i, beta));
            }
        }
        out
    }

    /// Basis of the vectors of weight `lambda - beta` killed by every `e_i`,
    /// each scaled so its first nonzero coordinate is 1.
    pub fn singular_vectors(&self, beta: &[i64]) -> Result<Vec<Vec<C::F>>> {
        if !is_nonnegative(beta) {
            return Ok(Vec::new());
        }
        self.check_cutoff(beta)?;
        if beta.iter().all(|&b| b == 0) {
            return Ok(vec![vec![C::F::one()]]);
        }
        let ker = self.raising_stack(beta).kernel();
        Ok(ker.into_iter().map(normalize).collect())
    }

    /// `e_i` applied to `x` of degree `beta`.
    pub fn apply_raising(&self, i: usize, x: &[C::F], beta: &[i64]) -> Vec<C::F> {
        self.raising(i, beta).mul_vec(x)
    }
}

/// Scales so that the first nonzero coordinate is one.
pub fn normalize<F: Field>(mut v: Vec<F>) -> Vec<F> {
    if let Some(lead) = v.iter().find(|x| !x.is_zero()).cloned() {
        let inv = lead.inv();
        for x in v.iter_mut() {
            *x = x.mul(&inv);
        }
    }
    v
}

/// A homomorphism `V^{source} -> V^{target}` given by right multiplication by
/// a singular vector `g` of the target.
pub struct SubmoduleMap<C: Coefficients> {
    pub source_top: Vec<i64>,
    pub target_top: Vec<i64>,
    multiplier: RightMultiplier<C>,
}

impl<C: Coefficients> SubmoduleMap<C> {
    pub fn new(algebra: Arc<NegativePart<C>>, source_top: Vec<i64>, target_top: Vec<i64>, element: Vec<C::F>, degree: Degree) -> Self {
        SubmoduleMap { source_top, target_top, multiplier: RightMultiplier::new(algebra, element, degree) }
    }

    pub fn identity(algebra: Arc<NegativePart<C>>, top: Vec<i64>) -> Self {
        let r = algebra.rank();
        Self::new(algebra, top.clone(), top, vec![C::F::one()], vec![0; r])
    }

    /// Image of the highest weight vector.
    pub fn generator_image(&self) -> &[C::F] {
        self.multiplier.element()
    }

    /// The weight shift `deg g`.
    pub fn degree(&self) -> &[i64] {
        self.multiplier.degree()
    }

    /// Block from source slice `gamma` to target slice `gamma + deg g`.
    pub fn matrix(&self, gamma: &[i64]) -> Arc<Matrix<C::F>> {
        self.multiplier.matrix(gamma)
    }
}

/// The chosen singular vectors `u_w` in `V^mu` of weight `w.mu`, and the
/// inclusions among the submodules they generate. Every map is a literal
/// inclusion inside `V^mu`, so composites agree exactly.
pub struct Embeddings<C: Coefficients> {
    algebra: Arc<NegativePart<C>>,
    mu: Vec<i64>,
    top: VermaModule<C>,
    generators: Mutex<HashMap<Degree, Arc<Vec<C::F>>>>,
}

impl<C: Coefficients> Embeddings<C> {
    pub fn new(algebra: Arc<NegativePart<C>>, mu: Vec<i64>) -> Self {
        let top = VermaModule::new(Arc::clone(&algebra), mu.clone());
        Embeddings { algebra, mu, top, generators: Mutex::new(HashMap::new()) }
    }

    pub fn mu(&self) -> &[i64] {
        &self.mu
    }

    pub fn verma(&self) -> &VermaModule<C> {
        &self.top
    }

    /// Offset of `w.mu` below `mu`.
    pub fn offset(&self, group: &WeylGroup, w: usize) -> Degree {
        group.element(w).dot(self.algebra.gcm(), &Weight::top(self.mu.clone())).offset
    }

    /// Top labels of `V^{w.mu}`.
    pub fn top_of(&self, group: &WeylGroup, w: usize) -> Vec<i64> {
        group.element(w).dot(self.algebra.gcm(), &Weight::top(self.mu.clone())).effective_labels(self.algebra.gcm())
    }

    /// The normalized singular vector of `V^mu` at `beta`; the space must be
    /// one-dimensional.
    pub fn generator(&self, beta: &[i64]) -> Result<Arc<Vec<C::F>>> {
        if let Some(g) = self.generators.lock().unwrap().get(beta) {
            return Ok(Arc::clone(g));
        }
        let sing = self.top.singular_vectors(beta)?;
        if sing.len() != 1 {
            return Err(Error::Invariant(format!(
                "singular space of V^mu at offset {beta:?} has dimension {} instead of 1",
                sing.len()
            )));
        }
        let g = Arc::new(sing.into_iter().next().unwrap());
        let mut cache = self.generators.lock().unwrap();
        Ok(Arc::clone(cache.entry(beta.to_vec()).or_insert(g)))
    }

    /// The element `g` with `g u_{w'} = u_w`. Requires a chain of arrows
    /// from `w` down to `w'`.
    pub fn connecting_element(&self, group: &WeylGroup, w: usize, w_prime: usize) -> Result<(Vec<C::F>, Degree)> {
        if !group.bruhat_le(w_prime, w) {
            return Err(Error::NotComparable(format!(
                "no chain of arrows from {:?} to {:?}",
                group.element(w).word(),
                group.element(w_prime).word()
            )));
        }
        let bw = self.offset(group, w);
        let bwp = self.offset(group, w_prime);
        let gamma = sub_degrees(&bw, &bwp);
        let uw = self.generator(&bw)?;
        let uwp = self.generator(&bwp)?;
        let rm = RightMultiplier::new(Arc::clone(&self.algebra), (*uwp).clone(), bwp);
        let g = rm.matrix(&gamma).solve(&uw).ok_or_else(|| {
            Error::Invariant(format!("u_w at {bw:?} is not a multiple of u_w' at {:?}", rm.degree()))
        })?;
        Ok((g, gamma))
    }

    /// The inclusion `V^{w.mu} -> V^{w'.mu}`; `NotComparable` unless `w'` is
    /// below `w` in the Bruhat order.
    pub fn inclusion(&self, group: &WeylGroup, w: usize, w_prime: usize) -> Result<SubmoduleMap<C>> {
        let (g, gamma) = self.connecting_element(group, w, w_prime)?;
        Ok(SubmoduleMap::new(
            Arc::clone(&self.algebra),
            self.top_of(group, w),
            self.top_of(group, w_prime),
            g,
            gamma,
        ))
    }
}

/// `V^lambda` modulo the submodule generated by `f_i^{lambda_i + 1} v` for
/// `i` in a subset. With the full index set and `lambda` dominant this is the
/// integrable quotient `V(lambda)`; with a smaller subset it is the
/// generalized Verma module `V^{M(lambda)}`.
pub struct HighestWeightQuotient<C: Coefficients> {
    algebra: Arc<NegativePart<C>>,
    top: Vec<i64>,
    subset: Vec<usize>,
    multipliers: Vec<RightMultiplier<C>>,
    cache: Mutex<HashMap<Degree, Arc<Quotient<C::F>>>>,
}

impl<C: Coefficients> HighestWeightQuotient<C> {
    /// Errors unless `lambda_i >= 0` for every `i` in the subset.
    pub fn new(algebra: Arc<NegativePart<C>>, top: Vec<i64>, subset: &[usize]) -> Result<Self> {
        let r = algebra.rank();
        let mut multipliers = Vec::new();
        for &i in subset {
            if i >= r {
                return Err(Error::Config(format!("index {i} out of range for rank {r}")));
            }
            if top[i] < 0 {
                return Err(Error::NotDominant(format!("label {} at index {i} is negative", top[i])));
            }
            let n = top[i] + 1;
            let mut deg = vec![0; r];
            deg[i] = n;
            let word = vec![i; n as usize];
            let element = algebra.element_of(&[(C::F::one(), word)], &deg);
            multipliers.push(RightMultiplier::new(Arc::clone(&algebra), element, deg));
        }
        Ok(HighestWeightQuotient { algebra, top, subset: subset.to_vec(), multipliers, cache: Mutex::new(HashMap::new()) })
    }

    pub fn integrable(algebra: Arc<NegativePart<C>>, top: Vec<i64>) -> Result<Self> {
        let all: Vec<usize> = (0..algebra.rank()).collect();
        Self::new(algebra, top, &all)
    }

    pub fn subset(&self) -> &[usize] {
        &self.subset
    }

    pub fn top(&self) -> &[i64] {
        &self.top
    }

    /// Spanning vectors (columns) of the submodule in degree `beta`.
    pub fn relations(&self, beta: &[i64]) -> Matrix<C::F> {
        let dim = self.algebra.dim(beta);
        let mut out = Matrix::zeros(dim, 0);
        for m in &self.multipliers {
            let rest = sub_degrees(beta, m.degree());
            if is_nonnegative(&rest) {
                out = out.hstack(&m.matrix(&rest));
            }
        }
        out
    }

    pub fn quotient(&self, beta: &[i64]) -> Arc<Quotient<C::F>> {
        if let Some(q) = self.cache.lock().unwrap().get(beta) {
            return Arc::clone(q);
        }
        let dim = self.algebra.dim(beta);
        let q = Arc::new(Quotient::new(dim, &self.relations(beta).transpose()));
        let mut cache = self.cache.lock().unwrap();
        Arc::clone(cache.entry(beta.to_vec()).or_insert(q))
    }

    pub fn dim(&self, beta: &[i64]) -> usize {
        if !is_nonnegative(beta) {
            return 0;
        }
        self.quotient(beta).dim()
    }
}

/// For `w` with `l(s_i w) = l(w) + 1`: the image of `f_i^{n+1} v`, with
/// `n = (w.mu)(alpha_i^vee)`, vanishes in `V^{w.mu} / V^{s_i w.mu}`.
pub fn local_finiteness_witness<C: Coefficients>(
    embeddings: &Embeddings<C>,
    group: &WeylGroup,
    w: usize,
    i: usize,
) -> Result<bool> {
    let siw = group.left_multiply(i, w).ok_or(Error::EnumerationInsufficient {
        enumerated: group.max_length(),
        needed: group.element(w).length() + 1,
    })?;
    if group.element(siw).length() != group.element(w).length() + 1 {
        return Err(Error::Invariant(format!("s_{i} w is not longer than w = {:?}", group.element(w).word())));
    }
    let top = embeddings.top_of(group, w);
    let r = top.len();
    let n = top[i];
    if n < 0 {
        return Ok(false);
    }
    let inclusion = embeddings.inclusion(group, siw, w)?;
    let mut deg = vec![0; r];
    deg[i] = n + 1;
    let algebra = embeddings.verma().algebra();
    let power = algebra.element_of(&[(C::F::one(), vec![i; (n + 1) as usize])], &deg);
    if inclusion.degree() != deg.as_slice() {
        return Ok(false);
    }
    let image = Matrix::from_columns(&[inclusion.generator_image().to_vec()], power.len());
    Ok(image.solve(&power).is_some())
}

/// Entry `[a][b]` is the dimension of the singular vectors of
/// `V^{b.mu}` in weight `a.mu`.
pub fn singular_dimension_matrix<C: Coefficients>(
    embeddings: &Embeddings<C>,
    group: &WeylGroup,
    elements: &[usize],
) -> Result<Vec<Vec<usize>>> {
    let algebra = embeddings.verma().algebra();
    let mut out = vec![vec![0; elements.len()]; elements.len()];
    for (b, &wb) in elements.iter().enumerate() {
        let verma = VermaModule::new(Arc::clone(algebra), embeddings.top_of(group, wb));
        let base = embeddings.offset(group, wb);
        for (a, &wa) in elements.iter().enumerate() {
            let beta = sub_degrees(&embeddings.offset(group, wa), &base);
            if is_nonnegative(&beta) {
                out[a][b] = verma.singular_vectors(&beta)?.len();
            }
        }
    }
    Ok(out)
}

/// Entry `[a][b]` is 1 when `b <= a` in the Bruhat order.
pub fn bruhat_indicator(group: &WeylGroup, elements: &[usize]) -> Vec<Vec<usize>> {
    elements.iter().map(|&a| elements.iter().map(|&b| group.bruhat_le(b, a) as usize).collect()).collect()
}
