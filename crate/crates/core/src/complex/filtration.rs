//! The filtration of the BGG complex by `l(w^S)` and its graded pieces.
//!
//! Each graded piece `D_{*, w^S}` collects the summands of one coset
//! `W_S w^S`, with `V^{w^S.mu}` replaced by the kernel `K_{w^S}` of its
//! generalized Verma projection. Its dimensions are predicted independently
//! from the root multiplicities of the nilradical and a Levi BGG complex.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use super::parabolic::{BgglComplex, ParabolicSlice};
use super::{BggComplex, SliceAnalysis, Summand};
use crate::cartan::{dominated, height, sub_degrees, Degree};
use crate::characters::{partition_character, TruncatedCharacter};
use crate::enveloping::{Classical, Coefficients, NegativePart};
use crate::error::Result;
use crate::nilpotent::GradedLieAlgebra;
use crate::weyl::ArrowClass;

/// One graded piece on one slice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedPieceCheck {
    pub representative: Vec<usize>,
    pub n: usize,
    pub offset: Degree,
    pub dim: usize,
    pub expected_dim: i64,
    pub homology: i64,
    pub image_in_kernel: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FiltrationReport {
    pub arrows_checked: usize,
    pub drops: usize,
    pub same_coset: usize,
    pub classification_errors: Vec<String>,
    pub upward_arrows: usize,
    pub upward_nonzero_blocks: usize,
    pub graded_checks: usize,
    pub dim_mismatches: Vec<GradedPieceCheck>,
    pub nonzero_homology: Vec<GradedPieceCheck>,
    pub image_failures: usize,
}

impl FiltrationReport {
    pub fn ok(&self) -> bool {
        self.classification_errors.is_empty()
            && self.upward_arrows == 0
            && self.upward_nonzero_blocks == 0
            && self.dim_mismatches.is_empty()
            && self.nonzero_homology.is_empty()
            && self.image_failures == 0
    }
}

struct Levi {
    slices: HashMap<Degree, SliceAnalysis>,
}

pub struct FiltrationData {
    subset: Vec<usize>,
    rank: usize,
    complement: TruncatedCharacter,
    levi: HashMap<usize, Levi>,
    drops: usize,
    same_coset: usize,
    classification_errors: Vec<String>,
    upward_arrows: usize,
}

impl FiltrationData {
    pub(super) fn new<C: Coefficients>(bggl: &BgglComplex<'_, C>, lie: &GradedLieAlgebra) -> Result<Self> {
        let base = bggl.base();
        let group = base.group();
        let subset = bggl.subset().to_vec();
        let rank = base.gcm().rank();
        let depth = base.depth();
        let split = lie.split_parabolic(&subset);
        let complement = partition_character(rank, &split.complement_roots, depth);

        let (mut drops, mut same_coset, mut upward_arrows) = (0, 0, 0);
        let mut classification_errors = Vec::new();
        for arrow in base.arrows() {
            match group.classify_arrow(arrow, &subset) {
                Ok(ArrowClass::DropsWS) => drops += 1,
                Ok(ArrowClass::SameWS { .. }) => same_coset += 1,
                Err(e) => classification_errors.push(e.to_string()),
            }
            if bggl.filtration_level(arrow.target) > bggl.filtration_level(arrow.source) {
                upward_arrows += 1;
            }
        }

        let mut levi = HashMap::new();
        if !subset.is_empty() {
            let levi_gcm = base.gcm().submatrix(&subset);
            let levi_algebra = Arc::new(NegativePart::new(&levi_gcm, Classical));
            for rep in bggl.representatives() {
                let top = base.embeddings().top_of(group, rep);
                let levi_top: Vec<i64> = subset.iter().map(|&i| top[i]).collect();
                let levi_depth = depth - height(base.offset(rep));
                let complex = BggComplex::build(Arc::clone(&levi_algebra), &levi_top, levi_depth, &[])?;
                let slices = complex.analyze().into_iter().map(|s| (s.offset.clone(), s)).collect();
                levi.insert(rep, Levi { slices });
            }
        }
        Ok(FiltrationData {
            subset,
            rank,
            complement,
            levi,
            drops,
            same_coset,
            classification_errors,
            upward_arrows,
        })
    }

    /// `j = 0`: rank of the first Levi differential; `j >= 1`: the `j`-th
    /// Levi chain group. `delta` is in full coordinates.
    fn levi_term(&self, rep: usize, j: usize, delta: &[i64]) -> i64 {
        if (0..self.rank).any(|i| delta[i] != 0 && !self.subset.contains(&i)) {
            return 0;
        }
        let Some(levi) = self.levi.get(&rep) else { return 0 };
        let local: Degree = self.subset.iter().map(|&i| delta[i]).collect();
        let Some(s) = levi.slices.get(&local) else { return 0 };
        let v = if j == 0 { s.ranks.get(1) } else { s.dims.get(j) };
        v.copied().unwrap_or(0) as i64
    }

    fn expected(&self, rep: usize, j: usize, gamma: &[i64]) -> i64 {
        self.complement
            .coeffs
            .iter()
            .filter(|(g, _)| dominated(g, gamma))
            .map(|(g, c)| c * self.levi_term(rep, j, &sub_degrees(gamma, g)))
            .sum()
    }

    pub(super) fn graded_checks<C: Coefficients>(
        &self,
        bggl: &BgglComplex<'_, C>,
        beta: &[i64],
        summands: &[Vec<Summand>],
    ) -> Vec<GradedPieceCheck> {
        let base = bggl.base();
        let group = base.group();
        let top = base.top_level();
        let mut out = Vec::new();
        for rep in bggl.representatives() {
            let rep_offset = base.offset(rep);
            if !dominated(rep_offset, beta) {
                continue;
            }
            let gamma = sub_degrees(beta, rep_offset);
            let k = group.element(rep).length();
            let coset: Vec<Vec<Summand>> = summands
                .iter()
                .map(|level| level.iter().copied().filter(|s| bggl.decomposition(s.element).1 == rep).collect())
                .collect();
            let quotient = bggl.quotient_of(rep).expect("representative has a quotient").quotient(&gamma);
            let mut dims = vec![0usize; top + 2];
            dims[k] = quotient.kernel_rank();
            for n in k + 1..=top {
                dims[n] = coset[n].iter().map(|s| s.dim).sum();
            }
            let mut ranks = vec![0usize; top + 2];
            let mut image_in_kernel = true;
            for n in k + 1..=top {
                let g = base.assemble(&coset[n], &coset[n - 1], beta, |_| true);
                ranks[n] = g.rank();
                if n == k + 1 && !quotient.projection().mul(&g).is_zero() {
                    image_in_kernel = false;
                }
            }
            for n in k..=top {
                let homology = dims[n] as i64 - ranks[n] as i64 - ranks[n + 1] as i64;
                let expected_dim = self.expected(rep, n - k, &gamma);
                if dims[n] == 0 && expected_dim == 0 {
                    continue;
                }
                out.push(GradedPieceCheck {
                    representative: group.element(rep).word().to_vec(),
                    n,
                    offset: beta.to_vec(),
                    dim: dims[n],
                    expected_dim,
                    homology,
                    image_in_kernel: n != k || image_in_kernel,
                });
            }
        }
        out
    }

    pub fn report(&self, slices: &[ParabolicSlice]) -> FiltrationReport {
        let checks: Vec<&GradedPieceCheck> = slices.iter().flat_map(|s| &s.graded).collect();
        FiltrationReport {
            arrows_checked: self.drops + self.same_coset + self.classification_errors.len(),
            drops: self.drops,
            same_coset: self.same_coset,
            classification_errors: self.classification_errors.clone(),
            upward_arrows: self.upward_arrows,
            upward_nonzero_blocks: slices.iter().map(|s| s.upward_nonzero_blocks).sum(),
            graded_checks: checks.len(),
            dim_mismatches: checks.iter().filter(|c| c.dim as i64 != c.expected_dim).map(|c| (*c).clone()).collect(),
            nonzero_homology: checks.iter().filter(|c| c.homology != 0).map(|c| (*c).clone()).collect(),
            image_failures: checks.iter().filter(|c| !c.image_in_kernel).count(),
        }
    }
}
