//! The graded Lie algebra `n^-` generated by the `f_i` subject to the Serre
//! relations, truncated at a height cutoff.
//!
//! Components are realized inside the Serre quotient `U(n^-)`: the degree
//! `beta` component is spanned by the commutators `[f_i, y]` with `y` a basis
//! element one degree down. Each basis element therefore carries a
//! left-normed bracket word `[f_{i_1}, [f_{i_2}, ... f_{i_k}]]`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::cartan::{add_degrees, degrees_up_to, height, is_nonnegative, sub_degrees, unit_degree, CartanMatrix, Degree};
use crate::enveloping::{Classical, NegativePart, RightMultiplier};
use crate::error::{Error, Result};
use crate::field::{Field, Rational};
use crate::linalg::{independent_subset, Matrix};

/// One root space.
#[derive(Clone, Debug)]
pub struct Component {
    pub degree: Degree,
    /// Left-normed bracket word of each basis element.
    pub brackets: Vec<Vec<usize>>,
    /// Basis element `k` is `[f_{children[k].0}, y]` with `y` basis element
    /// `children[k].1` one degree down. Empty in height one.
    pub children: Vec<(usize, usize)>,
    /// Basis as columns inside `U(n^-)_beta`.
    pub basis: Matrix<Rational>,
}

impl Component {
    pub fn dim(&self) -> usize {
        self.brackets.len()
    }
}

/// An element of one component, in its basis.
#[derive(Clone, Debug, PartialEq)]
pub struct LieElement {
    pub degree: Degree,
    pub coeffs: Vec<Rational>,
}

/// `[e_i, x]`: an element of the Cartan subalgebra (coefficients of the
/// `h_j`) when `x` has degree `alpha_i`, otherwise an element of `n^-`.
#[derive(Clone, Debug, PartialEq)]
pub enum Raised {
    Cartan(Vec<Rational>),
    Element(LieElement),
    Zero,
}

pub struct GradedLieAlgebra {
    gcm: CartanMatrix,
    cutoff: i64,
    algebra: Arc<NegativePart<Classical>>,
    components: BTreeMap<Degree, Component>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootMultiplicity {
    pub degree: Degree,
    pub mult: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParabolicSplit {
    pub subset: Vec<usize>,
    pub levi_roots: Vec<RootMultiplicity>,
    pub complement_roots: Vec<RootMultiplicity>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LieDimsJson {
    pub cutoff: i64,
    pub components: Vec<RootMultiplicity>,
}

/// Builds every component of height at most `cutoff`.
pub fn build_nilpotent(gcm: &CartanMatrix, cutoff: i64) -> Result<GradedLieAlgebra> {
    let algebra = Arc::new(NegativePart::new(gcm, Classical));
    GradedLieAlgebra::build(algebra, cutoff)
}

impl GradedLieAlgebra {
    pub fn build(algebra: Arc<NegativePart<Classical>>, cutoff: i64) -> Result<Self> {
        if cutoff < 1 {
            return Err(Error::Config(format!("cutoff must be at least 1, got {cutoff}")));
        }
        let gcm = algebra.gcm().clone();
        let r = gcm.rank();
        let generators: Vec<RightMultiplier<Classical>> = (0..r)
            .map(|i| RightMultiplier::new(Arc::clone(&algebra), vec![Rational::one()], unit_degree(r, i)))
            .collect();
        let mut components: BTreeMap<Degree, Component> = BTreeMap::new();
        for beta in degrees_up_to(r, cutoff) {
            if height(&beta) == 0 {
                continue;
            }
            let dim = algebra.dim(&beta);
            if height(&beta) == 1 {
                let i = beta.iter().position(|&b| b == 1).unwrap();
                components.insert(
                    beta.clone(),
                    Component {
                        degree: beta,
                        brackets: vec![vec![i]],
                        children: Vec::new(),
                        basis: Matrix::from_columns(&[vec![Rational::one()]], dim),
                    },
                );
                continue;
            }
            let mut candidates = Vec::new();
            let mut labels = Vec::new();
            for i in 0..r {
                if beta[i] == 0 {
                    continue;
                }
                let lower = sub_degrees(&beta, &unit_degree(r, i));
                let Some(child) = components.get(&lower) else { continue };
                let left = algebra.lowering(i, &lower);
                let right = generators[i].matrix(&lower);
                for k in 0..child.dim() {
                    let y = child.basis.column(k);
                    let v: Vec<Rational> = left.mul_vec(&y).iter().zip(right.mul_vec(&y)).map(|(a, b)| a.sub(&b)).collect();
                    candidates.push(v);
                    let mut word = vec![i];
                    word.extend_from_slice(&child.brackets[k]);
                    labels.push(((i, k), word));
                }
            }
            let keep = independent_subset(&candidates, dim);
            if keep.is_empty() {
                continue;
            }
            let basis = Matrix::from_columns(&keep.iter().map(|&c| candidates[c].clone()).collect::<Vec<_>>(), dim);
            components.insert(
                beta.clone(),
                Component {
                    degree: beta,
                    brackets: keep.iter().map(|&c| labels[c].1.clone()).collect(),
                    children: keep.iter().map(|&c| labels[c].0).collect(),
                    basis,
                },
            );
        }
        Ok(GradedLieAlgebra { gcm, cutoff, algebra, components })
    }

    pub fn gcm(&self) -> &CartanMatrix {
        &self.gcm
    }

    pub fn cutoff(&self) -> i64 {
        self.cutoff
    }

    pub fn enveloping(&self) -> &Arc<NegativePart<Classical>> {
        &self.algebra
    }

    pub fn component(&self, beta: &[i64]) -> Option<&Component> {
        self.components.get(beta)
    }

    /// `dim g_{-beta}`; errors above the cutoff.
    pub fn mult(&self, beta: &[i64]) -> Result<usize> {
        if height(beta) > self.cutoff {
            return Err(Error::CutoffExceeded { height: height(beta), cutoff: self.cutoff });
        }
        Ok(self.components.get(beta).map_or(0, Component::dim))
    }

    /// Positive roots up to the cutoff with multiplicities, ordered by
    /// height and then lexicographically.
    pub fn roots(&self) -> Vec<RootMultiplicity> {
        let mut out: Vec<RootMultiplicity> =
            self.components.values().map(|c| RootMultiplicity { degree: c.degree.clone(), mult: c.dim() }).collect();
        out.sort_by(|a, b| height(&a.degree).cmp(&height(&b.degree)).then_with(|| a.degree.cmp(&b.degree)));
        out
    }

    pub fn split_parabolic(&self, subset: &[usize]) -> ParabolicSplit {
        let (levi, complement) = self
            .roots()
            .into_iter()
            .partition(|root| root.degree.iter().enumerate().all(|(i, &c)| c == 0 || subset.contains(&i)));
        ParabolicSplit { subset: subset.to_vec(), levi_roots: levi, complement_roots: complement }
    }

    pub fn dims_json(&self) -> LieDimsJson {
        LieDimsJson { cutoff: self.cutoff, components: self.roots() }
    }

    /// The element as a vector in `U(n^-)`.
    pub fn embed(&self, x: &LieElement) -> Vec<Rational> {
        match self.components.get(&x.degree) {
            Some(c) => c.basis.mul_vec(&x.coeffs),
            None => vec![Rational::zero(); self.algebra.dim(&x.degree)],
        }
    }

    /// Coordinates of a vector of `U(n^-)_beta` lying in the component.
    pub fn coordinates(&self, v: &[Rational], beta: &[i64]) -> Result<LieElement> {
        let dim = self.components.get(beta).map_or(0, Component::dim);
        if dim == 0 {
            if v.iter().all(Field::is_zero) {
                return Ok(LieElement { degree: beta.to_vec(), coeffs: Vec::new() });
            }
            return Err(Error::Invariant(format!("nonzero vector in the empty component {beta:?}")));
        }
        let coeffs = self.components[beta]
            .basis
            .solve(v)
            .ok_or_else(|| Error::Invariant(format!("vector of degree {beta:?} is not a Lie element")))?;
        Ok(LieElement { degree: beta.to_vec(), coeffs })
    }

    pub fn basis_element(&self, beta: &[i64], k: usize) -> LieElement {
        let dim = self.components[beta].dim();
        let mut coeffs = vec![Rational::zero(); dim];
        coeffs[k] = Rational::one();
        LieElement { degree: beta.to_vec(), coeffs }
    }

    /// `[x, y] = xy - yx` computed in `U(n^-)`.
    pub fn bracket(&self, x: &LieElement, y: &LieElement) -> Result<LieElement> {
        let degree = add_degrees(&x.degree, &y.degree);
        if height(&degree) > self.cutoff {
            return Err(Error::CutoffExceeded { height: height(&degree), cutoff: self.cutoff });
        }
        let xv = self.embed(x);
        let yv = self.embed(y);
        let right_y = RightMultiplier::new(Arc::clone(&self.algebra), yv.clone(), y.degree.clone());
        let right_x = RightMultiplier::new(Arc::clone(&self.algebra), xv.clone(), x.degree.clone());
        let xy = right_y.matrix(&x.degree).mul_vec(&xv);
        let yx = right_x.matrix(&y.degree).mul_vec(&yv);
        let diff: Vec<Rational> = xy.iter().zip(&yx).map(|(a, b)| a.sub(b)).collect();
        self.coordinates(&diff, &degree)
    }

    /// `[h_i, x] = -beta(alpha_i^vee) x` for `x` of degree `beta`.
    pub fn cartan_action(&self, i: usize, x: &LieElement) -> LieElement {
        let c = Rational::from_i64(-self.gcm.root_pairing(&x.degree, i));
        LieElement { degree: x.degree.clone(), coeffs: x.coeffs.iter().map(|a| a.mul(&c)).collect() }
    }

    /// `[f_j, h]` for `h = sum_i c_i h_i`, which is `(sum_i c_i a_ij) f_j`.
    fn lower_cartan(&self, j: usize, h: &[Rational]) -> LieElement {
        let mut c = Rational::zero();
        for (i, hi) in h.iter().enumerate() {
            c = c.add(&hi.mul(&Rational::from_i64(self.gcm.entry(i, j))));
        }
        LieElement { degree: unit_degree(self.gcm.rank(), j), coeffs: vec![c] }
    }

    /// `[e_i, x]` for a basis element, by
    /// `[e_i, [f_j, y]] = delta_ij [h_i, y] + [f_j, [e_i, y]]`.
    pub fn e_action_basis(&self, i: usize, beta: &[i64], k: usize) -> Result<Raised> {
        let r = self.gcm.rank();
        let comp = &self.components[beta];
        if height(beta) == 1 {
            let j = comp.brackets[k][0];
            if i != j {
                return Ok(Raised::Zero);
            }
            let mut h = vec![Rational::zero(); r];
            h[i] = Rational::one();
            return Ok(Raised::Cartan(h));
        }
        let target = sub_degrees(beta, &unit_degree(r, i));
        if !is_nonnegative(&target) {
            return Ok(Raised::Zero);
        }
        let (j, child) = comp.children[k];
        let y_deg = sub_degrees(beta, &unit_degree(r, j));
        let fj = self.basis_element(&unit_degree(r, j), 0);
        let mut acc = self.zero(&target);
        if i == j {
            let y = self.basis_element(&y_deg, child);
            acc = self.add(&acc, &self.cartan_action(i, &y));
        }
        match self.e_action_basis(i, &y_deg, child)? {
            Raised::Zero => {}
            Raised::Cartan(h) => acc = self.add(&acc, &self.lower_cartan(j, &h)),
            Raised::Element(z) => {
                if !z.coeffs.is_empty() {
                    acc = self.add(&acc, &self.bracket(&fj, &z)?);
                }
            }
        }
        Ok(Raised::Element(acc))
    }

    /// `[e_i, x]` extended linearly.
    pub fn e_action(&self, i: usize, x: &LieElement) -> Result<Raised> {
        let r = self.gcm.rank();
        if height(&x.degree) == 1 {
            let j = x.degree.iter().position(|&b| b == 1).unwrap();
            if i != j || x.coeffs.iter().all(Field::is_zero) {
                return Ok(Raised::Zero);
            }
            let mut h = vec![Rational::zero(); r];
            h[i] = x.coeffs[0].clone();
            return Ok(Raised::Cartan(h));
        }
        let target = sub_degrees(&x.degree, &unit_degree(r, i));
        if !is_nonnegative(&target) {
            return Ok(Raised::Zero);
        }
        let mut acc = self.zero(&target);
        for (k, c) in x.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if let Raised::Element(z) = self.e_action_basis(i, &x.degree, k)? {
                acc = self.add(&acc, &self.scale(&z, c));
            }
        }
        Ok(Raised::Element(acc))
    }

    pub fn zero(&self, beta: &[i64]) -> LieElement {
        let dim = self.components.get(beta).map_or(0, Component::dim);
        LieElement { degree: beta.to_vec(), coeffs: vec![Rational::zero(); dim] }
    }

    pub fn add(&self, a: &LieElement, b: &LieElement) -> LieElement {
        assert_eq!(a.degree, b.degree);
        LieElement { degree: a.degree.clone(), coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x.add(y)).collect() }
    }

    pub fn scale(&self, a: &LieElement, c: &Rational) -> LieElement {
        LieElement { degree: a.degree.clone(), coeffs: a.coeffs.iter().map(|x| x.mul(c)).collect() }
    }
}

impl LieElement {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Field::is_zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gcm(entries: Vec<Vec<i64>>) -> CartanMatrix {
        CartanMatrix::new(entries).unwrap()
    }

    fn a2() -> CartanMatrix {
        gcm(vec![vec![2, -1], vec![-1, 2]])
    }

    fn b2() -> CartanMatrix {
        gcm(vec![vec![2, -2], vec![-1, 2]])
    }

    fn affine() -> CartanMatrix {
        gcm(vec![vec![2, -2], vec![-2, 2]])
    }

    #[test]
    fn a2_multiplicities() {
        let n = build_nilpotent(&a2(), 3).unwrap();
        assert_eq!(n.mult(&[1, 0]).unwrap(), 1);
        assert_eq!(n.mult(&[0, 1]).unwrap(), 1);
        assert_eq!(n.mult(&[1, 1]).unwrap(), 1);
        assert_eq!(n.mult(&[2, 1]).unwrap(), 0);
        assert_eq!(n.roots().len(), 3);
        assert!(n.mult(&[2, 2]).is_err());
    }

    #[test]
    fn a1_has_no_degree_two() {
        let n = build_nilpotent(&gcm(vec![vec![2]]), 2).unwrap();
        assert_eq!(n.mult(&[2]).unwrap(), 0);
    }

    #[test]
    fn b2_and_affine_roots() {
        let n = build_nilpotent(&b2(), 4).unwrap();
        let roots: Vec<Degree> = n.roots().into_iter().map(|r| r.degree).collect();
        assert_eq!(roots, vec![vec![0, 1], vec![1, 0], vec![1, 1], vec![2, 1]]);
        let n = build_nilpotent(&affine(), 4).unwrap();
        assert_eq!(n.mult(&[1, 1]).unwrap(), 1);
        assert_eq!(n.mult(&[2, 2]).unwrap(), 1);
        assert_eq!(n.mult(&[2, 1]).unwrap(), 1);
        assert_eq!(n.mult(&[1, 2]).unwrap(), 1);
        assert_eq!(n.mult(&[3, 1]).unwrap(), 0);
    }

    #[test]
    fn stable_under_cutoff_extension() {
        for g in [a2(), b2(), affine()] {
            let small = build_nilpotent(&g, 4).unwrap();
            let large = build_nilpotent(&g, 5).unwrap();
            for beta in degrees_up_to(2, 4) {
                assert_eq!(small.mult(&beta).unwrap(), large.mult(&beta).unwrap());
            }
        }
    }

    #[test]
    fn serre_elements_vanish() {
        for g in [a2(), b2(), affine()] {
            let n = build_nilpotent(&g, 5).unwrap();
            for i in 0..2 {
                for j in 0..2 {
                    if i == j {
                        continue;
                    }
                    let fi = n.basis_element(&unit_degree(2, i), 0);
                    let mut x = n.basis_element(&unit_degree(2, j), 0);
                    for _ in 0..(1 - g.entry(i, j)) {
                        x = n.bracket(&fi, &x).unwrap();
                    }
                    assert!(x.is_zero());
                }
            }
        }
    }

    fn basis(n: &GradedLieAlgebra) -> Vec<LieElement> {
        n.components.iter().flat_map(|(d, c)| (0..c.dim()).map(move |k| (d.clone(), k))).map(|(d, k)| n.basis_element(&d, k)).collect()
    }

    #[test]
    fn antisymmetry_and_jacobi() {
        for g in [a2(), b2()] {
            let n = build_nilpotent(&g, 4).unwrap();
            let elems = basis(&n);
            let fits = |xs: &[&LieElement]| {
                let total: i64 = xs.iter().map(|x| height(&x.degree)).sum();
                total <= n.cutoff()
            };
            for x in &elems {
                for y in &elems {
                    if !fits(&[x, y]) {
                        continue;
                    }
                    let xy = n.bracket(x, y).unwrap();
                    let yx = n.bracket(y, x).unwrap();
                    assert!(n.add(&xy, &yx).is_zero());
                    for z in &elems {
                        if !fits(&[x, y, z]) {
                            continue;
                        }
                        let a = n.bracket(x, &n.bracket(y, z).unwrap()).unwrap();
                        let b = n.bracket(y, &n.bracket(z, x).unwrap()).unwrap();
                        let c = n.bracket(z, &xy).unwrap();
                        assert!(n.add(&n.add(&a, &b), &c).is_zero());
                    }
                }
            }
        }
    }

    /// `[e, [x, y]]` where `[e, x]` may land in the Cartan subalgebra.
    fn bracket_raised(n: &GradedLieAlgebra, r: &Raised, y: &LieElement) -> Option<LieElement> {
        match r {
            Raised::Zero => None,
            Raised::Cartan(h) => {
                let mut acc = n.zero(&y.degree);
                for (i, c) in h.iter().enumerate() {
                    acc = n.add(&acc, &n.scale(&n.cartan_action(i, y), c));
                }
                Some(acc)
            }
            Raised::Element(z) if z.degree.iter().all(|&d| d == 0) => None,
            Raised::Element(z) => Some(n.bracket(z, y).unwrap()),
        }
    }

    #[test]
    fn e_action_is_a_derivation() {
        for g in [a2(), b2(), affine()] {
            let n = build_nilpotent(&g, 4).unwrap();
            let elems = basis(&n);
            for i in 0..2 {
                for x in &elems {
                    for y in &elems {
                        if height(&x.degree) + height(&y.degree) > 4 {
                            continue;
                        }
                        let xy = n.bracket(x, y).unwrap();
                        let target = sub_degrees(&xy.degree, &unit_degree(2, i));
                        let lhs = match n.e_action(i, &xy).unwrap() {
                            Raised::Element(z) => z,
                            _ => n.zero(&target),
                        };
                        let mut rhs = n.zero(&target);
                        if !is_nonnegative(&target) {
                            continue;
                        }
                        if let Some(a) = bracket_raised(&n, &n.e_action(i, x).unwrap(), y) {
                            rhs = n.add(&rhs, &a);
                        }
                        if let Some(b) = bracket_raised(&n, &n.e_action(i, y).unwrap(), x) {
                            rhs = n.add(&rhs, &n.scale(&b, &Rational::from_i64(-1)));
                        }
                        assert_eq!(lhs, rhs, "{g} i {i} x {:?} y {:?}", x.degree, y.degree);
                    }
                }
            }
        }
    }

    #[test]
    fn parabolic_split() {
        let n = build_nilpotent(&a2(), 3).unwrap();
        let split = n.split_parabolic(&[0]);
        let degs = |v: &[RootMultiplicity]| v.iter().map(|r| r.degree.clone()).collect::<Vec<_>>();
        assert_eq!(degs(&split.levi_roots), vec![vec![1, 0]]);
        assert_eq!(degs(&split.complement_roots), vec![vec![0, 1], vec![1, 1]]);
        assert!(n.split_parabolic(&[]).levi_roots.is_empty());
        assert!(n.split_parabolic(&[0, 1]).complement_roots.is_empty());
    }
}
