//! Truncated formal characters and the dimension oracles that do not go
//! through any module construction: Kostant partition counts, the
//! Freudenthal recursion, and the denominator identity.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::cartan::{degrees_up_to, height, is_nonnegative, sub_degrees, Degree, Weight};
use crate::error::{Error, Result};
use crate::nilpotent::{GradedLieAlgebra, RootMultiplicity};
use crate::weyl::WeylGroup;

/// `sum_beta c_beta e^{top - beta}` over offsets of height at most `cutoff`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedCharacter {
    pub top: Vec<i64>,
    pub cutoff: i64,
    pub coeffs: BTreeMap<Degree, i64>,
}

#[derive(Serialize, Debug, Clone)]
pub struct CoefficientJson {
    pub offset: Degree,
    pub value: i64,
}

#[derive(Serialize, Debug, Clone)]
pub struct CharacterJson {
    pub top: Weight,
    pub cutoff: i64,
    pub coeffs: Vec<CoefficientJson>,
}

impl TruncatedCharacter {
    pub fn zero(top: Vec<i64>, cutoff: i64) -> Self {
        TruncatedCharacter { top, cutoff, coeffs: BTreeMap::new() }
    }

    pub fn get(&self, beta: &[i64]) -> i64 {
        self.coeffs.get(beta).copied().unwrap_or(0)
    }

    pub fn set(&mut self, beta: Degree, value: i64) {
        if value == 0 {
            self.coeffs.remove(&beta);
        } else {
            self.coeffs.insert(beta, value);
        }
    }

    pub fn add_at(&mut self, beta: &[i64], value: i64) {
        let v = self.get(beta) + value;
        self.set(beta.to_vec(), v);
    }

    /// Sum of all coefficients.
    pub fn total(&self) -> i64 {
        self.coeffs.values().sum()
    }

    /// `e^{-shift} * self`, truncated at `cutoff`.
    pub fn shifted(&self, shift: &[i64], cutoff: i64) -> TruncatedCharacter {
        let mut out = TruncatedCharacter::zero(self.top.clone(), cutoff);
        for (beta, &c) in &self.coeffs {
            let b: Degree = beta.iter().zip(shift).map(|(x, y)| x + y).collect();
            if height(&b) <= cutoff {
                out.set(b, c);
            }
        }
        out
    }

    /// Truncated product.
    pub fn mul(&self, other: &TruncatedCharacter) -> TruncatedCharacter {
        let cutoff = self.cutoff.min(other.cutoff);
        let mut out = TruncatedCharacter::zero(self.top.clone(), cutoff);
        for (a, &x) in &self.coeffs {
            for (b, &y) in &other.coeffs {
                let s: Degree = a.iter().zip(b).map(|(p, q)| p + q).collect();
                if height(&s) <= cutoff {
                    out.add_at(&s, x * y);
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> CharacterJson {
        CharacterJson {
            top: Weight::top(self.top.clone()),
            cutoff: self.cutoff,
            coeffs: self.coeffs.iter().map(|(b, &v)| CoefficientJson { offset: b.clone(), value: v }).collect(),
        }
    }
}

/// `prod_alpha (1 - e^{-alpha})^{-mult alpha}` truncated: the number of
/// multiset partitions of each offset into positive roots.
pub fn partition_character(rank: usize, roots: &[RootMultiplicity], cutoff: i64) -> TruncatedCharacter {
    let degrees = degrees_up_to(rank, cutoff);
    let mut c: BTreeMap<Degree, i64> = BTreeMap::new();
    c.insert(vec![0; rank], 1);
    for root in roots {
        if height(&root.degree) > cutoff {
            continue;
        }
        for _ in 0..root.mult {
            // ascending height: c[beta] += c[beta - alpha] reuses parts
            for beta in &degrees {
                let rest = sub_degrees(beta, &root.degree);
                if !is_nonnegative(&rest) {
                    continue;
                }
                let add = c.get(&rest).copied().unwrap_or(0);
                if add != 0 {
                    *c.entry(beta.clone()).or_insert(0) += add;
                }
            }
        }
    }
    TruncatedCharacter { top: vec![0; rank], cutoff, coeffs: c }
}

fn check_cutoff(lie: &GradedLieAlgebra, cutoff: i64) -> Result<()> {
    if cutoff > lie.cutoff() {
        return Err(Error::CutoffExceeded { height: cutoff, cutoff: lie.cutoff() });
    }
    Ok(())
}

/// Character of the Verma module with the given top labels.
pub fn verma_character(top: &[i64], lie: &GradedLieAlgebra, cutoff: i64) -> Result<TruncatedCharacter> {
    check_cutoff(lie, cutoff)?;
    let mut ch = partition_character(top.len(), &lie.roots(), cutoff);
    ch.top = top.to_vec();
    Ok(ch)
}

/// `prod_alpha (1 - e^{-alpha})^{mult alpha}`, truncated.
pub fn denominator_product(rank: usize, roots: &[RootMultiplicity], cutoff: i64) -> TruncatedCharacter {
    let mut degrees = degrees_up_to(rank, cutoff);
    degrees.reverse();
    let mut c: BTreeMap<Degree, i64> = BTreeMap::new();
    c.insert(vec![0; rank], 1);
    for root in roots {
        if height(&root.degree) > cutoff {
            continue;
        }
        for _ in 0..root.mult {
            // descending height: each factor used at most once
            for beta in &degrees {
                let rest = sub_degrees(beta, &root.degree);
                if !is_nonnegative(&rest) {
                    continue;
                }
                let sub = c.get(&rest).copied().unwrap_or(0);
                if sub != 0 {
                    let v = c.get(beta).copied().unwrap_or(0) - sub;
                    if v == 0 {
                        c.remove(beta);
                    } else {
                        c.insert(beta.clone(), v);
                    }
                }
            }
        }
    }
    TruncatedCharacter { top: vec![0; rank], cutoff, coeffs: c }
}

/// `sum_w (-1)^{l(w)} e^{w.0}`, truncated. The group must contain every
/// element whose offset has height at most `cutoff`.
pub fn alternating_orbit_sum(group: &WeylGroup, cutoff: i64) -> Result<TruncatedCharacter> {
    let r = group.gcm().rank();
    let zero = vec![0; r];
    if !group.covers_depth(&zero, cutoff) {
        return Err(Error::EnumerationInsufficient { enumerated: group.max_length(), needed: group.max_length() + 1 });
    }
    let mut out = TruncatedCharacter::zero(zero.clone(), cutoff);
    for w in 0..group.len() {
        let beta = group.element(w).dot(group.gcm(), &Weight::top(zero.clone())).offset;
        if height(&beta) <= cutoff {
            let sign = if group.element(w).length() % 2 == 0 { 1 } else { -1 };
            out.add_at(&beta, sign);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct DenominatorReport {
    pub cutoff: i64,
    pub matches: bool,
    pub discrepancies: Vec<Discrepancy>,
    pub coefficients_checked: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub offset: Degree,
    pub expected: i64,
    pub actual: i64,
}

/// Coefficientwise comparison on every offset of height at most `cutoff`.
pub fn compare(rank: usize, expected: &TruncatedCharacter, actual: &TruncatedCharacter, cutoff: i64) -> Vec<Discrepancy> {
    degrees_up_to(rank, cutoff)
        .into_iter()
        .filter_map(|b| {
            let (e, a) = (expected.get(&b), actual.get(&b));
            (e != a).then_some(Discrepancy { offset: b, expected: e, actual: a })
        })
        .collect()
}

/// Weyl side against product side of the denominator identity, with the
/// multiplicities of the Serre-presented algebra.
pub fn denominator_identity(group: &WeylGroup, lie: &GradedLieAlgebra, cutoff: i64) -> Result<DenominatorReport> {
    check_cutoff(lie, cutoff)?;
    denominator_identity_with(group, &lie.roots(), cutoff)
}

/// Same, with explicit multiplicities.
pub fn denominator_identity_with(group: &WeylGroup, roots: &[RootMultiplicity], cutoff: i64) -> Result<DenominatorReport> {
    let r = group.gcm().rank();
    let lhs = alternating_orbit_sum(group, cutoff)?;
    let rhs = denominator_product(r, roots, cutoff);
    let discrepancies = compare(r, &rhs, &lhs, cutoff);
    Ok(DenominatorReport {
        cutoff,
        matches: discrepancies.is_empty(),
        discrepancies,
        coefficients_checked: degrees_up_to(r, cutoff).len(),
    })
}

/// Weight multiplicities of `V(mu)` by the Freudenthal recursion
/// `(2(mu+rho, beta) - (beta, beta)) m(beta)
///   = 2 sum_alpha mult(alpha) sum_{k>=1} (mu - beta + k alpha, alpha) m(beta - k alpha)`.
pub fn freudenthal(mu: &[i64], lie: &GradedLieAlgebra, cutoff: i64) -> Result<TruncatedCharacter> {
    let gcm = lie.gcm();
    let d = gcm.symmetrizer()?;
    if let Some(i) = mu.iter().position(|&m| m < 0) {
        return Err(Error::NotDominant(format!("label {} at index {i} is negative", mu[i])));
    }
    check_cutoff(lie, cutoff)?;
    let roots = lie.roots();
    let r = gcm.rank();
    let rho_plus_mu: Vec<i64> = mu.iter().map(|m| m + 1).collect();
    let mut ch = TruncatedCharacter::zero(mu.to_vec(), cutoff);
    ch.set(vec![0; r], 1);
    for beta in degrees_up_to(r, cutoff).into_iter().skip(1) {
        let c = 2 * d.pair_labels(&rho_plus_mu, &beta) - d.form(gcm, &beta, &beta);
        let mut rhs = 0i64;
        for root in &roots {
            let alpha = &root.degree;
            let aa = d.form(gcm, alpha, alpha);
            let mu_a = d.pair_labels(mu, alpha);
            let beta_a = d.form(gcm, &beta, alpha);
            let mut k = 1;
            loop {
                let rest: Degree = beta.iter().zip(alpha).map(|(b, a)| b - k * a).collect();
                if !is_nonnegative(&rest) {
                    break;
                }
                let m = ch.get(&rest);
                if m != 0 {
                    rhs += root.mult as i64 * (mu_a - beta_a + k * aa) * m;
                }
                k += 1;
            }
        }
        rhs *= 2;
        if c == 0 {
            if rhs != 0 {
                return Err(Error::Invariant(format!("Freudenthal recursion inconsistent at offset {beta:?}")));
            }
            continue;
        }
        if rhs % c != 0 {
            return Err(Error::Invariant(format!("Freudenthal multiplicity at {beta:?} is not an integer: {rhs}/{c}")));
        }
        ch.set(beta, rhs / c);
    }
    Ok(ch)
}

/// Result of comparing an alternating sum of level characters with a target.
#[derive(Clone, Debug, Serialize)]
pub struct EulerReport {
    pub matches: bool,
    pub discrepancies: Vec<Discrepancy>,
}

/// `sum_n (-1)^n ch C_n` against `target`, with `levels[n]` the list of
/// `(shift, character)` summands of `C_n`.
pub fn euler_check(rank: usize, levels: &[Vec<(Degree, TruncatedCharacter)>], target: &TruncatedCharacter, cutoff: i64) -> EulerReport {
    let mut sum = TruncatedCharacter::zero(target.top.clone(), cutoff);
    for (n, level) in levels.iter().enumerate() {
        let sign = if n % 2 == 0 { 1 } else { -1 };
        for (shift, ch) in level {
            for (beta, c) in &ch.shifted(shift, cutoff).coeffs {
                sum.add_at(beta, sign * c);
            }
        }
    }
    let discrepancies = compare(rank, target, &sum, cutoff);
    EulerReport { matches: discrepancies.is_empty(), discrepancies }
}
