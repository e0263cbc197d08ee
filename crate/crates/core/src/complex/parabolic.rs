//! The parabolic BGG complex: each `V^{w.mu}` with `w` a minimal coset
//! representative is replaced by its generalized Verma quotient, the others
//! are dropped, and the differential is induced through the projections.

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use super::filtration::{FiltrationData, GradedPieceCheck};
use super::{BggComplex, Summand};
use crate::cartan::{is_nonnegative, sub_degrees, Degree};
use crate::enveloping::Coefficients;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::nilpotent::GradedLieAlgebra;
use crate::verma::HighestWeightQuotient;

pub struct BgglComplex<'a, C: Coefficients> {
    base: &'a BggComplex<C>,
    subset: Vec<usize>,
    quotients: HashMap<usize, HighestWeightQuotient<C>>,
    integrable: HighestWeightQuotient<C>,
    decomposition: HashMap<usize, (usize, usize)>,
    filtration: Option<FiltrationData>,
}

/// Everything computed on one slice of the parabolic complex.
#[derive(Clone, Debug, Serialize)]
pub struct ParabolicSlice {
    pub offset: Degree,
    pub dims: Vec<usize>,
    pub ranks: Vec<usize>,
    pub homology: Vec<i64>,
    pub degree0: i64,
    pub d_squared_ok: bool,
    /// `pi_{n-1} d_n (Ker pi_n) = 0` for every `n >= 1`.
    pub containment_ok: bool,
    /// The augmentation kills `Ker pi_0`.
    pub augmentation_ok: bool,
    pub kernel_dims: Vec<usize>,
    pub kernel_homology: Vec<i64>,
    pub upward_nonzero_blocks: usize,
    pub graded: Vec<GradedPieceCheck>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BgglReport {
    pub subset: Vec<usize>,
    pub representatives: Vec<Vec<usize>>,
    pub slices_checked: usize,
    pub d_squared_ok: bool,
    pub containment_ok: bool,
    pub augmentation_ok: bool,
    pub nonzero_homology: Vec<super::HomologyEntry>,
    pub nonzero_kernel_homology: Vec<super::HomologyEntry>,
}

impl<'a, C: Coefficients> BgglComplex<'a, C> {
    /// `lie` enables the filtration checks; it must reach the depth of
    /// `base` and is only used for root multiplicities.
    pub fn new(base: &'a BggComplex<C>, subset: &[usize], lie: Option<&GradedLieAlgebra>) -> Result<Self> {
        let rank = base.gcm().rank();
        let mut subset = subset.to_vec();
        subset.sort_unstable();
        subset.dedup();
        if let Some(&i) = subset.iter().find(|&&i| i >= rank) {
            return Err(Error::Config(format!("subset index {i} out of range for rank {rank}")));
        }
        let group = base.group();
        let algebra = base.algebra();
        let mut quotients = HashMap::new();
        let mut decomposition = HashMap::new();
        for &w in base.members() {
            decomposition.insert(w, group.parabolic_decompose(w, &subset));
            if group.is_minimal_rep(w, &subset) {
                let top = base.embeddings().top_of(group, w);
                quotients.insert(w, HighestWeightQuotient::new(Arc::clone(algebra), top, &subset)?);
            }
        }
        let integrable = HighestWeightQuotient::integrable(Arc::clone(algebra), base.mu().to_vec())?;
        let mut out = BgglComplex { base, subset, quotients, integrable, decomposition, filtration: None };
        if let Some(lie) = lie {
            out.filtration = Some(FiltrationData::new(&out, lie)?);
        }
        Ok(out)
    }

    pub fn base(&self) -> &BggComplex<C> {
        self.base
    }

    pub fn subset(&self) -> &[usize] {
        &self.subset
    }

    pub fn is_rep(&self, w: usize) -> bool {
        self.quotients.contains_key(&w)
    }

    pub fn quotient_of(&self, w: usize) -> Option<&HighestWeightQuotient<C>> {
        self.quotients.get(&w)
    }

    /// Contributing minimal coset representatives, by length then index.
    pub fn representatives(&self) -> Vec<usize> {
        let mut reps: Vec<usize> = self.quotients.keys().copied().collect();
        reps.sort_unstable_by_key(|&w| (self.base.group().element(w).length(), w));
        reps
    }

    /// `(w_S, w^S)`.
    pub fn decomposition(&self, w: usize) -> (usize, usize) {
        self.decomposition[&w]
    }

    /// `l(w^S)`, the filtration level of the summand `V^{w.mu}`.
    pub fn filtration_level(&self, w: usize) -> usize {
        self.base.group().element(self.decomposition[&w].1).length()
    }

    pub fn filtration(&self) -> Option<&FiltrationData> {
        self.filtration.as_ref()
    }

    fn quotient_dims(&self, summands: &[Summand], beta: &[i64]) -> Vec<usize> {
        summands
            .iter()
            .map(|s| match self.quotients.get(&s.element) {
                Some(q) => q.dim(&sub_degrees(beta, self.base.offset(s.element))),
                None => 0,
            })
            .collect()
    }

    /// `pi_n`: rows for representatives only.
    fn projection(&self, summands: &[Summand], beta: &[i64]) -> Matrix<C::F> {
        let qd = self.quotient_dims(summands, beta);
        let cols: usize = summands.iter().map(|s| s.dim).sum();
        let mut out = Matrix::zeros(qd.iter().sum(), cols);
        let (mut r, mut c) = (0, 0);
        for (s, &d) in summands.iter().zip(&qd) {
            if d > 0 {
                let q = self.quotients[&s.element].quotient(&sub_degrees(beta, self.base.offset(s.element)));
                out.put_block(r, c, q.projection());
            }
            r += d;
            c += s.dim;
        }
        out
    }

    fn lift(&self, summands: &[Summand], beta: &[i64]) -> Matrix<C::F> {
        self.projection_lift(summands, beta).1
    }

    fn projection_lift(&self, summands: &[Summand], beta: &[i64]) -> (Matrix<C::F>, Matrix<C::F>) {
        let p = self.projection(summands, beta);
        let qd = self.quotient_dims(summands, beta);
        let mut l = Matrix::zeros(p.cols(), p.rows());
        let (mut r, mut c) = (0, 0);
        for (s, &d) in summands.iter().zip(&qd) {
            if d > 0 {
                let q = self.quotients[&s.element].quotient(&sub_degrees(beta, self.base.offset(s.element)));
                l.put_block(r, c, &q.lift());
            }
            r += s.dim;
            c += d;
        }
        (p, l)
    }

    /// Columns spanning `Ker pi_n`.
    fn kernel_span(&self, summands: &[Summand], beta: &[i64]) -> Matrix<C::F> {
        let rows: usize = summands.iter().map(|s| s.dim).sum();
        let mut blocks = Vec::new();
        let mut r = 0;
        for s in summands {
            let gamma = sub_degrees(beta, self.base.offset(s.element));
            let local = match self.quotients.get(&s.element) {
                Some(q) => q.relations(&gamma),
                None => Matrix::identity(s.dim),
            };
            blocks.push((r, local));
            r += s.dim;
        }
        let cols: usize = blocks.iter().map(|(_, b)| b.cols()).sum();
        let mut out = Matrix::zeros(rows, cols);
        let mut c = 0;
        for (r, b) in blocks {
            out.put_block(r, c, &b);
            c += b.cols();
        }
        out
    }

    pub fn analyze_slice(&self, beta: &[i64]) -> ParabolicSlice {
        let base = self.base;
        let top = base.top_level();
        let summands: Vec<Vec<Summand>> = (0..=top + 1).map(|n| base.summands(n, beta)).collect();
        let ds: Vec<Option<Matrix<C::F>>> = (0..=top + 1)
            .map(|n| (n >= 1).then(|| base.assemble(&summands[n], &summands[n - 1], beta, |_| true)))
            .collect();
        let pl: Vec<(Matrix<C::F>, Matrix<C::F>)> = summands.iter().map(|s| self.projection_lift(s, beta)).collect();
        let kernels: Vec<Matrix<C::F>> = summands.iter().map(|s| self.kernel_span(s, beta)).collect();

        let dims: Vec<usize> = pl.iter().map(|(p, _)| p.rows()).collect();
        let mut ranks = vec![0usize; top + 2];
        let mut dss: Vec<Option<Matrix<C::F>>> = vec![None];
        let mut containment_ok = true;
        let mut kernel_ranks = vec![0usize; top + 2];
        for n in 1..=top + 1 {
            let d = ds[n].as_ref().unwrap();
            let image_of_kernel = d.mul(&kernels[n]);
            kernel_ranks[n] = image_of_kernel.rank();
            if !pl[n - 1].0.mul(&image_of_kernel).is_zero() {
                containment_ok = false;
            }
            let induced = pl[n - 1].0.mul(d).mul(&pl[n].1);
            ranks[n] = induced.rank();
            dss.push(Some(induced));
        }
        let mut d_squared_ok = true;
        for n in 2..=top + 1 {
            if !dss[n - 1].as_ref().unwrap().mul(dss[n].as_ref().unwrap()).is_zero() {
                d_squared_ok = false;
            }
        }
        let mut homology = vec![0i64; top + 1];
        for n in 1..=top {
            homology[n] = dims[n] as i64 - ranks[n] as i64 - ranks[n + 1] as i64;
        }
        let degree0 = dims[0] as i64 - ranks.get(1).copied().unwrap_or(0) as i64;

        let kernel_dims: Vec<usize> = kernels.iter().map(Matrix::rank).collect();
        let kernel_homology: Vec<i64> = (0..=top)
            .map(|n| kernel_dims[n] as i64 - kernel_ranks[n] as i64 - kernel_ranks[n + 1] as i64)
            .collect();

        let augmentation_ok = if is_nonnegative(beta) {
            let eps = self.integrable.quotient(beta);
            eps.projection().mul(&kernels[0]).is_zero()
        } else {
            true
        };

        let mut upward_nonzero_blocks = 0;
        for n in 1..=top {
            for s in &summands[n] {
                for t in &summands[n - 1] {
                    if self.filtration_level(t.element) > self.filtration_level(s.element) {
                        let arrow = crate::weyl::Arrow { source: s.element, target: t.element };
                        if base.block(arrow, beta).is_some_and(|b| !b.is_zero()) {
                            upward_nonzero_blocks += 1;
                        }
                    }
                }
            }
        }

        let graded = match &self.filtration {
            Some(f) => f.graded_checks(self, beta, &summands),
            None => Vec::new(),
        };

        ParabolicSlice {
            offset: beta.to_vec(),
            dims,
            ranks,
            homology,
            degree0,
            d_squared_ok,
            containment_ok,
            augmentation_ok,
            kernel_dims,
            kernel_homology,
            upward_nonzero_blocks,
            graded,
        }
    }

    pub fn analyze(&self) -> Vec<ParabolicSlice> {
        self.base.trusted_slices().par_iter().map(|b| self.analyze_slice(b)).collect()
    }

    /// The induced differential `d^S_n` on one slice.
    pub fn differential(&self, n: usize, beta: &[i64]) -> Matrix<C::F> {
        let src = self.base.summands(n, beta);
        let dst = self.base.summands(n - 1, beta);
        let d = self.base.assemble(&src, &dst, beta, |_| true);
        self.projection(&dst, beta).mul(&d).mul(&self.lift(&src, beta))
    }

    pub fn report(&self, slices: &[ParabolicSlice]) -> BgglReport {
        let group = self.base.group();
        let mut nonzero_homology = Vec::new();
        let mut nonzero_kernel_homology = Vec::new();
        for s in slices {
            for (n, &h) in s.homology.iter().enumerate().skip(1) {
                if h != 0 {
                    nonzero_homology.push(super::HomologyEntry { n, weight: s.offset.clone(), dim: h });
                }
            }
            for (n, &h) in s.kernel_homology.iter().enumerate() {
                if h != 0 {
                    nonzero_kernel_homology.push(super::HomologyEntry { n, weight: s.offset.clone(), dim: h });
                }
            }
        }
        BgglReport {
            subset: self.subset.clone(),
            representatives: self.representatives().iter().map(|&w| group.element(w).word().to_vec()).collect(),
            slices_checked: slices.len(),
            d_squared_ok: slices.iter().all(|s| s.d_squared_ok),
            containment_ok: slices.iter().all(|s| s.containment_ok),
            augmentation_ok: slices.iter().all(|s| s.augmentation_ok),
            nonzero_homology,
            nonzero_kernel_homology,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::CartanMatrix;
    use crate::enveloping::{Classical, NegativePart};
    use crate::nilpotent::build_nilpotent;

    fn base(entries: Vec<Vec<i64>>, mu: &[i64], depth: i64) -> BggComplex<Classical> {
        let g = CartanMatrix::new(entries).unwrap();
        BggComplex::build(Arc::new(NegativePart::new(&g, Classical)), mu, depth, &[]).unwrap()
    }

    #[test]
    fn empty_subset_reproduces_bgg() {
        let b = base(vec![vec![2, -1], vec![-1, 2]], &[1, 0], 6);
        let p = BgglComplex::new(&b, &[], None).unwrap();
        for beta in b.trusted_slices() {
            let s = p.analyze_slice(&beta);
            let t = b.analyze_slice(&beta);
            assert_eq!(s.dims[..t.dims.len() - 1], t.dims[..t.dims.len() - 1]);
            assert_eq!(s.degree0, t.degree0);
            assert!(s.kernel_dims.iter().all(|&k| k == 0));
        }
    }

    #[test]
    fn a2_levi_quotient_is_exact() {
        let b = base(vec![vec![2, -1], vec![-1, 2]], &[1, 1], 8);
        let lie = build_nilpotent(b.gcm(), 8).unwrap();
        let p = BgglComplex::new(&b, &[0], Some(&lie)).unwrap();
        assert_eq!(p.representatives().len(), 3);
        let slices = p.analyze();
        let r = p.report(&slices);
        assert!(r.d_squared_ok && r.containment_ok && r.augmentation_ok);
        assert!(r.nonzero_homology.is_empty(), "{:?}", r.nonzero_homology);
        assert!(r.nonzero_kernel_homology.is_empty(), "{:?}", r.nonzero_kernel_homology);
        assert_eq!(slices.iter().map(|s| s.degree0).sum::<i64>(), 8);
        assert!(slices.iter().all(|s| s.upward_nonzero_blocks == 0));
        assert!(slices.iter().flat_map(|s| &s.graded).all(|g| g.dim as i64 == g.expected_dim && g.homology == 0));
    }

    #[test]
    fn full_subset_leaves_only_the_integrable_quotient() {
        let b = base(vec![vec![2, -1], vec![-1, 2]], &[1, 0], 4);
        let p = BgglComplex::new(&b, &[0, 1], None).unwrap();
        assert_eq!(p.representatives(), vec![b.group().identity_index()]);
        let total: usize = p.analyze().iter().map(|s| s.dims[0]).sum();
        assert_eq!(total, 3);
    }
}
