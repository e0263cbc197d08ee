//! The BGG complex `C_n = sum_{l(w) = n} V^{w.mu}` with signed inclusion
//! differentials, assembled and verified one weight slice at a time.
//!
//! A slice is indexed by an offset `beta` (weight `mu - beta`); the
//! summand `V^{w.mu}` contributes its degree `beta - beta_w` piece, where
//! `beta_w` is the offset of `w.mu`. Only elements with `ht(beta_w) <= D`
//! can contribute to slices of height at most `D`, and the Weyl group is
//! enumerated until all of them are present, so every slice of height at
//! most `D` is complete.

mod filtration;
mod parabolic;

pub use filtration::{FiltrationReport, GradedPieceCheck};
pub use parabolic::{BgglComplex, BgglReport, ParabolicSlice};

use std::collections::HashMap;
use std::fmt::Write;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::cartan::{degrees_up_to, dominated, height, is_nonnegative, sub_degrees, CartanMatrix, Degree};
use crate::enveloping::{Coefficients, NegativePart};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;
use crate::verma::{Embeddings, SubmoduleMap};
use crate::weyl::{assign_signs, word_label, Arrow, SignAssignment, Square, WeylGroup};

/// Deliberate corruptions used to show the verifiers are not vacuous.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Mutation {
    /// Replace `s(w, w')` by `-s(w, w')`.
    FlipSign(Arrow),
    /// Add one to a coordinate of the element `g` defining `f_{w,w'}`.
    PerturbInclusion { arrow: Arrow, coordinate: usize },
}

/// A summand `V^{w.mu}` of one slice: element index and dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Summand {
    pub element: usize,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DSquaredViolation {
    pub n: usize,
    pub offset: Degree,
    pub source: Vec<usize>,
    pub target: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TrustRegion {
    pub depth: i64,
    pub max_length_enumerated: usize,
    pub group_complete: bool,
    pub contributing_elements: usize,
    pub trusted_slices: usize,
    pub rule: String,
}

/// Everything computed on one slice.
#[derive(Clone, Debug, Serialize)]
pub struct SliceAnalysis {
    pub offset: Degree,
    /// `dim C_{n, beta}` for `n = 0, 1, ...`.
    pub dims: Vec<usize>,
    /// `rank d_{n, beta}`; entry 0 is unused and zero.
    pub ranks: Vec<usize>,
    /// `dim H_n` for `n >= 1` (entry 0 is unused and zero).
    pub homology: Vec<i64>,
    /// `dim C_0 - rank d_1`.
    pub degree0: i64,
    pub d_squared: Vec<DSquaredViolation>,
    pub injectivity_checks: usize,
    pub injectivity_failures: Vec<(usize, usize)>,
}

pub struct BggComplex<C: Coefficients> {
    gcm: CartanMatrix,
    mu: Vec<i64>,
    depth: i64,
    group: WeylGroup,
    squares: Vec<Square>,
    signs: SignAssignment,
    embeddings: Embeddings<C>,
    members: Vec<usize>,
    levels: Vec<Vec<usize>>,
    offsets: HashMap<usize, Degree>,
    blocks: HashMap<Arrow, (i64, SubmoduleMap<C>)>,
    mutations: Vec<Mutation>,
}

impl<C: Coefficients> BggComplex<C> {
    /// Enumerates the Weyl group far enough for `depth`, assigns signs and
    /// fixes every inclusion `f_{w,w'}` for arrows among contributing
    /// elements.
    pub fn build(algebra: Arc<NegativePart<C>>, mu: &[i64], depth: i64, mutations: &[Mutation]) -> Result<Self> {
        let gcm = algebra.gcm().clone();
        if mu.len() != gcm.rank() {
            return Err(Error::Config(format!("mu has {} labels but the rank is {}", mu.len(), gcm.rank())));
        }
        if depth < 0 {
            return Err(Error::Config(format!("depth must be nonnegative, got {depth}")));
        }
        let group = WeylGroup::enumerate_for_depth(&gcm, mu, depth)?;
        let squares = group.squares()?;
        let mut signs = assign_signs(&group.arrows(), &squares)?;
        for m in mutations {
            if let Mutation::FlipSign(a) = m {
                signs.flip(*a);
            }
        }
        let embeddings = Embeddings::new(Arc::clone(&algebra), mu.to_vec());
        let mut offsets = HashMap::new();
        let mut members = Vec::new();
        let mut levels: Vec<Vec<usize>> = Vec::new();
        for (n, lvl) in group.levels().iter().enumerate() {
            for &w in lvl {
                let beta = embeddings.offset(&group, w);
                if height(&beta) <= depth {
                    offsets.insert(w, beta);
                    members.push(w);
                    if levels.len() <= n {
                        levels.resize(n + 1, Vec::new());
                    }
                    levels[n].push(w);
                }
            }
        }
        let mut blocks = HashMap::new();
        for arrow in group.arrows() {
            if !offsets.contains_key(&arrow.source) {
                continue;
            }
            let (mut g, gamma) = embeddings.connecting_element(&group, arrow.source, arrow.target)?;
            for m in mutations {
                if let Mutation::PerturbInclusion { arrow: a, coordinate } = m {
                    if *a == arrow {
                        let c = coordinate % g.len();
                        g[c] = g[c].add(&C::F::one());
                    }
                }
            }
            let map = SubmoduleMap::new(
                Arc::clone(&algebra),
                embeddings.top_of(&group, arrow.source),
                embeddings.top_of(&group, arrow.target),
                g,
                gamma,
            );
            blocks.insert(arrow, (signs.sign(arrow), map));
        }
        Ok(BggComplex {
            gcm,
            mu: mu.to_vec(),
            depth,
            group,
            squares,
            signs,
            embeddings,
            members,
            levels,
            offsets,
            blocks,
            mutations: mutations.to_vec(),
        })
    }

    pub fn gcm(&self) -> &CartanMatrix {
        &self.gcm
    }

    pub fn mu(&self) -> &[i64] {
        &self.mu
    }

    pub fn depth(&self) -> i64 {
        self.depth
    }

    pub fn group(&self) -> &WeylGroup {
        &self.group
    }

    pub fn squares(&self) -> &[Square] {
        &self.squares
    }

    pub fn signs(&self) -> &SignAssignment {
        &self.signs
    }

    pub fn embeddings(&self) -> &Embeddings<C> {
        &self.embeddings
    }

    pub fn algebra(&self) -> &Arc<NegativePart<C>> {
        self.embeddings.verma().algebra()
    }

    pub fn mutations(&self) -> &[Mutation] {
        &self.mutations
    }

    /// Elements with `ht(beta_w) <= depth`, by length.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn levels(&self) -> &[Vec<usize>] {
        &self.levels
    }

    pub fn top_level(&self) -> usize {
        self.levels.len().saturating_sub(1)
    }

    pub fn offset(&self, w: usize) -> &Degree {
        &self.offsets[&w]
    }

    /// Arrows among contributing elements.
    pub fn arrows(&self) -> Vec<Arrow> {
        let mut out: Vec<Arrow> = self.blocks.keys().copied().collect();
        out.sort_unstable_by_key(|a| (a.source, a.target));
        out
    }

    pub fn inclusion(&self, arrow: Arrow) -> Option<&SubmoduleMap<C>> {
        self.blocks.get(&arrow).map(|(_, m)| m)
    }

    /// All slices of height at most `depth`.
    pub fn trusted_slices(&self) -> Vec<Degree> {
        degrees_up_to(self.gcm.rank(), self.depth)
    }

    pub fn trust_region(&self) -> TrustRegion {
        TrustRegion {
            depth: self.depth,
            max_length_enumerated: self.group.max_length(),
            group_complete: self.group.is_complete(),
            contributing_elements: self.members.len(),
            trusted_slices: self.trusted_slices().len(),
            rule: "a slice mu - beta is trusted iff ht(beta) <= depth; every w with ht(mu - w.mu) <= depth is enumerated"
                .to_string(),
        }
    }

    /// Summands of `C_{n, beta}` in level order.
    pub fn summands(&self, n: usize, beta: &[i64]) -> Vec<Summand> {
        let Some(level) = self.levels.get(n) else { return Vec::new() };
        level
            .iter()
            .filter(|&&w| dominated(&self.offsets[&w], beta))
            .map(|&w| Summand { element: w, dim: self.algebra().dim(&sub_degrees(beta, &self.offsets[&w])) })
            .collect()
    }

    /// The signed block `s(w, w') f_{w,w'}` on the slice `beta`.
    pub fn block(&self, arrow: Arrow, beta: &[i64]) -> Option<Matrix<C::F>> {
        let (sign, map) = self.blocks.get(&arrow)?;
        let gamma = sub_degrees(beta, &self.offsets[&arrow.source]);
        if !is_nonnegative(&gamma) {
            return None;
        }
        let m = map.matrix(&gamma);
        Some(if *sign > 0 { (*m).clone() } else { m.scale(&C::F::from_i64(-1)) })
    }

    /// Matrix from the listed source summands to the listed target summands,
    /// keeping only the arrows accepted by `keep`.
    pub fn assemble(&self, sources: &[Summand], targets: &[Summand], beta: &[i64], keep: impl Fn(Arrow) -> bool) -> Matrix<C::F> {
        let rows: usize = targets.iter().map(|s| s.dim).sum();
        let cols: usize = sources.iter().map(|s| s.dim).sum();
        let mut out = Matrix::zeros(rows, cols);
        let mut col = 0;
        for s in sources {
            let mut row = 0;
            for t in targets {
                let arrow = Arrow { source: s.element, target: t.element };
                if keep(arrow) && s.dim > 0 && t.dim > 0 {
                    if let Some(b) = self.block(arrow, beta) {
                        out.put_block(row, col, &b);
                    }
                }
                row += t.dim;
            }
            col += s.dim;
        }
        out
    }

    /// `d_n` on the slice `beta`.
    pub fn differential(&self, n: usize, beta: &[i64]) -> Matrix<C::F> {
        assert!(n >= 1);
        self.assemble(&self.summands(n, beta), &self.summands(n - 1, beta), beta, |_| true)
    }

    /// `d^2`, ranks, homology and the injectivity witness on one slice.
    pub fn analyze_slice(&self, beta: &[i64]) -> SliceAnalysis {
        let top = self.top_level();
        let summands: Vec<Vec<Summand>> = (0..=top + 1).map(|n| self.summands(n, beta)).collect();
        let dims: Vec<usize> = summands.iter().map(|s| s.iter().map(|x| x.dim).sum()).collect();
        let mut ds: Vec<Option<Matrix<C::F>>> = vec![None];
        for n in 1..=top + 1 {
            ds.push(Some(self.assemble(&summands[n], &summands[n - 1], beta, |_| true)));
        }
        let mut ranks = vec![0usize; top + 2];
        for n in 1..=top + 1 {
            ranks[n] = ds[n].as_ref().unwrap().rank();
        }
        let mut d_squared = Vec::new();
        for n in 2..=top + 1 {
            let product = ds[n - 1].as_ref().unwrap().mul(ds[n].as_ref().unwrap());
            if product.is_zero() {
                continue;
            }
            let mut col = 0;
            for s in &summands[n] {
                let mut row = 0;
                for t in &summands[n - 2] {
                    if !product.block(row, col, t.dim, s.dim).is_zero() {
                        d_squared.push(DSquaredViolation {
                            n,
                            offset: beta.to_vec(),
                            source: self.group.element(s.element).word().to_vec(),
                            target: self.group.element(t.element).word().to_vec(),
                        });
                    }
                    row += t.dim;
                }
                col += s.dim;
            }
        }
        let mut homology = vec![0i64; top + 1];
        for n in 1..=top {
            homology[n] = dims[n] as i64 - ranks[n] as i64 - ranks[n + 1] as i64;
        }
        let degree0 = dims[0] as i64 - ranks.get(1).copied().unwrap_or(0) as i64;
        let mut injectivity_checks = 0;
        let mut injectivity_failures = Vec::new();
        for n in 1..=top {
            for i in 0..self.gcm.rank() {
                let minus: Vec<Summand> =
                    summands[n].iter().copied().filter(|s| self.group.element(s.element).has_left_descent(i)).collect();
                let dim: usize = minus.iter().map(|s| s.dim).sum();
                if dim == 0 {
                    continue;
                }
                injectivity_checks += 1;
                if self.assemble(&minus, &summands[n - 1], beta, |_| true).rank() != dim {
                    injectivity_failures.push((n, i));
                }
            }
        }
        SliceAnalysis {
            offset: beta.to_vec(),
            dims,
            ranks,
            homology,
            degree0,
            d_squared,
            injectivity_checks,
            injectivity_failures,
        }
    }

    /// Every trusted slice, in parallel on the current rayon pool; results
    /// are in slice order.
    pub fn analyze(&self) -> Vec<SliceAnalysis> {
        self.trusted_slices().par_iter().map(|b| self.analyze_slice(b)).collect()
    }

    /// DOT picture of the summands and signed blocks.
    pub fn to_dot(&self, highlight: Option<&[usize]>) -> String {
        let mut out = String::from("digraph bgg {\n  rankdir=RL;\n  node [shape=box];\n");
        for &w in &self.members {
            let label = word_label(self.group.element(w).word());
            let fill = match highlight {
                Some(s) if self.group.is_minimal_rep(w, s) => ", style=filled, fillcolor=lightblue",
                _ => "",
            };
            let _ = writeln!(out, "  w{w} [label=\"V^{{{label}.mu}} @ {:?}\"{fill}];", self.offsets[&w]);
        }
        for a in self.arrows() {
            let (sign, map) = &self.blocks[&a];
            let s = if *sign > 0 { "+" } else { "-" };
            let _ = writeln!(out, "  w{} -> w{} [label=\"{s} deg {:?}\"];", a.source, a.target, map.degree());
        }
        out.push_str("}\n");
        out
    }
}

/// Summary of a full verification run.
#[derive(Clone, Debug, Serialize)]
pub struct HomologyEntry {
    pub n: usize,
    pub weight: Degree,
    pub dim: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct HomologyReport {
    /// Nonzero homology in degrees `n >= 1` on trusted slices.
    pub nonzero: Vec<HomologyEntry>,
    pub slices_checked: usize,
    pub max_chain_dim: usize,
}

pub fn homology_report(slices: &[SliceAnalysis]) -> HomologyReport {
    let mut nonzero = Vec::new();
    for s in slices {
        for (n, &h) in s.homology.iter().enumerate().skip(1) {
            if h != 0 {
                nonzero.push(HomologyEntry { n, weight: s.offset.clone(), dim: h });
            }
        }
    }
    HomologyReport {
        nonzero,
        slices_checked: slices.len(),
        max_chain_dim: slices.iter().flat_map(|s| s.dims.iter().copied()).max().unwrap_or(0),
    }
}

pub fn d_squared_violations(slices: &[SliceAnalysis]) -> Vec<DSquaredViolation> {
    slices.iter().flat_map(|s| s.d_squared.iter().cloned()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enveloping::Classical;

    fn complex(entries: Vec<Vec<i64>>, mu: &[i64], depth: i64, mutations: &[Mutation]) -> BggComplex<Classical> {
        let g = CartanMatrix::new(entries).unwrap();
        BggComplex::build(Arc::new(NegativePart::new(&g, Classical)), mu, depth, mutations).unwrap()
    }

    fn a2() -> Vec<Vec<i64>> {
        vec![vec![2, -1], vec![-1, 2]]
    }

    #[test]
    fn a1_slice_dims_and_rank() {
        let c = complex(vec![vec![2]], &[2], 6, &[]);
        let s = c.analyze_slice(&[3]);
        assert_eq!(s.dims, vec![1, 1, 0]);
        assert_eq!(s.ranks[1], 1);
        assert_eq!(s.homology[1], 0);
        assert_eq!(s.degree0, 0);
        assert_eq!(c.analyze_slice(&[2]).degree0, 1);
    }

    #[test]
    fn a2_levels_and_blocks() {
        let c = complex(a2(), &[1, 1], 8, &[]);
        let sizes: Vec<usize> = c.levels().iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![1, 2, 2, 1]);
        assert_eq!(c.arrows().len(), 8);
        let slices = c.analyze();
        assert!(d_squared_violations(&slices).is_empty());
        assert!(homology_report(&slices).nonzero.is_empty());
        assert_eq!(slices.iter().map(|s| s.degree0).sum::<i64>(), 8);
        assert!(slices.iter().all(|s| s.injectivity_failures.is_empty()));
    }

    #[test]
    fn sign_flip_breaks_d_squared() {
        let clean = complex(a2(), &[1, 1], 8, &[]);
        for arrow in clean.arrows() {
            let c = complex(a2(), &[1, 1], 8, &[Mutation::FlipSign(arrow)]);
            assert!(!d_squared_violations(&c.analyze()).is_empty(), "{arrow:?}");
        }
    }

    #[test]
    fn too_shallow_depth_restricts_members() {
        let c = complex(a2(), &[1, 1], 3, &[]);
        assert_eq!(c.members().len(), 3);
        assert_eq!(c.trust_region().trusted_slices, 10);
        assert!(c.to_dot(Some(&[0])).contains("->"));
    }
}
