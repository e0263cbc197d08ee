//! Run configuration and the report-producing drivers behind the CLI.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cartan::{CartanMatrix, CartanMatrixJson, Degree};
use crate::characters::{
    compare, denominator_identity, euler_check, freudenthal, verma_character, CharacterJson,
    DenominatorReport, Discrepancy, EulerReport, TruncatedCharacter,
};
use crate::complex::{
    d_squared_violations, homology_report, BggComplex, BgglComplex, BgglReport, DSquaredViolation, FiltrationReport,
    HomologyEntry, Mutation, ParabolicSlice, SliceAnalysis, TrustRegion,
};
use crate::enveloping::{Classical, Coefficients, NegativePart};
use crate::error::{Error, Result};
use crate::field::{parse_rational, Rational};
use crate::nilpotent::{build_nilpotent, GradedLieAlgebra, LieDimsJson};
use crate::quantum::{numeric_algebra, symbolic_algebra};
use crate::verma::{bruhat_indicator, local_finiteness_witness, singular_dimension_matrix, HighestWeightQuotient};
use crate::weyl::{weyl_json, Arrow, WeylGroup, WeylJson};

const FULL_DEPTH_LENGTH_BOUND: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GcmInput {
    Entries(Vec<Vec<i64>>),
    Json(CartanMatrixJson),
}

impl GcmInput {
    pub fn to_matrix(&self) -> Result<CartanMatrix> {
        match self {
            GcmInput::Entries(e) => CartanMatrix::new(e.clone()),
            GcmInput::Json(j) => CartanMatrix::from_json(j),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Depth {
    Height(i64),
    Named(String),
}

impl Default for Depth {
    fn default() -> Self {
        Depth::Named("full".to_string())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EngineKind {
    #[default]
    Classical,
    Quantum,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QModeConfig {
    #[default]
    Symbolic,
    Numeric(String),
}

/// Mutation as written in a config: arrows are positions in the sorted
/// arrow list of the complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum MutationConfig {
    Flip { arrow: usize },
    Perturb { arrow: usize, coordinate: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub gcm: GcmInput,
    #[serde(default)]
    pub mu: Option<Vec<i64>>,
    #[serde(default, rename = "S")]
    pub subset: Vec<usize>,
    #[serde(default)]
    pub depth: Depth,
    #[serde(default)]
    pub engine: EngineKind,
    #[serde(default)]
    pub q_mode: QModeConfig,
    #[serde(default)]
    pub outputs: Vec<String>,
    #[serde(default)]
    pub max_length: Option<usize>,
    #[serde(default)]
    pub mutations: Vec<MutationConfig>,
}

impl RunConfig {
    pub fn new(gcm: Vec<Vec<i64>>) -> Self {
        RunConfig {
            gcm: GcmInput::Entries(gcm),
            mu: None,
            subset: Vec::new(),
            depth: Depth::default(),
            engine: EngineKind::Classical,
            q_mode: QModeConfig::Symbolic,
            outputs: Vec::new(),
            max_length: None,
            mutations: Vec::new(),
        }
    }

    pub fn with_mu(mut self, mu: &[i64]) -> Self {
        self.mu = Some(mu.to_vec());
        self
    }

    pub fn with_depth(mut self, depth: i64) -> Self {
        self.depth = Depth::Height(depth);
        self
    }

    pub fn with_subset(mut self, subset: &[usize]) -> Self {
        self.subset = subset.to_vec();
        self
    }

    pub fn with_engine(mut self, engine: EngineKind, q_mode: QModeConfig) -> Self {
        self.engine = engine;
        self.q_mode = q_mode;
        self
    }

    pub fn validate(&self) -> Result<Validated> {
        let gcm = self.gcm.to_matrix()?;
        let r = gcm.rank();
        let mu = self.mu.clone().unwrap_or_else(|| vec![0; r]);
        if mu.len() != r {
            return Err(Error::Config(format!("mu has {} labels but the rank is {r}", mu.len())));
        }
        if let Some(i) = mu.iter().position(|&m| m < 0) {
            return Err(Error::Config(format!("mu must be dominant; label {} at index {i}", mu[i])));
        }
        if let Some(&i) = self.subset.iter().find(|&&i| i >= r) {
            return Err(Error::Config(format!("S contains index {i}, out of range for rank {r}")));
        }
        for o in &self.outputs {
            if o != "summary" && o != "slices" {
                return Err(Error::Config(format!("unknown output kind {o:?}; expected \"summary\" or \"slices\"")));
            }
        }
        let depth = match &self.depth {
            Depth::Height(d) if *d >= 1 => *d,
            Depth::Height(d) => return Err(Error::Config(format!("depth must be at least 1, got {d}"))),
            Depth::Named(s) if s == "full" => full_depth(&gcm, &mu)?,
            Depth::Named(s) => return Err(Error::Config(format!("depth must be an integer or \"full\", got {s:?}"))),
        };
        let q = match (&self.engine, &self.q_mode) {
            (EngineKind::Classical, _) => None,
            (EngineKind::Quantum, QModeConfig::Symbolic) => None,
            (EngineKind::Quantum, QModeConfig::Numeric(s)) => {
                Some(parse_rational(s).ok_or_else(|| Error::Config(format!("cannot parse q = {s:?} as a rational")))?)
            }
        };
        if self.engine == EngineKind::Quantum {
            gcm.symmetrizer()?;
        }
        let mut subset = self.subset.clone();
        subset.sort_unstable();
        subset.dedup();
        Ok(Validated {
            gcm,
            mu,
            subset,
            depth,
            engine: self.engine,
            q,
            slices: self.outputs.iter().any(|o| o == "slices"),
            max_length: self.max_length,
            mutations: self.mutations.clone(),
        })
    }
}

/// `ht(mu - w_0.mu)` for a finite Weyl group: every weight of `V(mu)` and
/// every summand of the complex lies within it.
pub fn full_depth(gcm: &CartanMatrix, mu: &[i64]) -> Result<i64> {
    let g = WeylGroup::enumerate_up_to(gcm, FULL_DEPTH_LENGTH_BOUND)?;
    if !g.is_complete() {
        return Err(Error::Config("depth \"full\" requires a finite Weyl group; give an integer depth".to_string()));
    }
    let longest = g.levels().last().unwrap()[0];
    Ok(g.offset_height(longest, mu).max(1))
}

#[derive(Clone, Debug)]
pub struct Validated {
    pub gcm: CartanMatrix,
    pub mu: Vec<i64>,
    pub subset: Vec<usize>,
    pub depth: i64,
    pub engine: EngineKind,
    pub q: Option<Rational>,
    pub slices: bool,
    pub max_length: Option<usize>,
    pub mutations: Vec<MutationConfig>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpecJson {
    pub gcm: Vec<Vec<i64>>,
    pub mu: Vec<i64>,
    #[serde(rename = "S")]
    pub subset: Vec<usize>,
    pub depth: i64,
    pub engine: EngineKind,
    pub field: String,
    pub mutations: Vec<Mutation>,
}

/// How a run ended; the CLI maps these to exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    HomologyFinding,
    DSquaredViolation,
    InvariantViolation,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::InvariantViolation => 3,
            Status::DSquaredViolation => 4,
            Status::HomologyFinding => 5,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum DSquared {
    Ok(String),
    Violations(Vec<DSquaredViolation>),
}

impl DSquared {
    fn from(v: Vec<DSquaredViolation>) -> Self {
        if v.is_empty() {
            DSquared::Ok("ok".to_string())
        } else {
            DSquared::Violations(v)
        }
    }

    pub fn is_ok(&self) -> bool {
        matches!(self, DSquared::Ok(_))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Degree0Report {
    pub oracle: String,
    pub total: i64,
    pub mismatches: Vec<Discrepancy>,
    /// Against dimensions of the integrable quotient on the same engine.
    pub quotient_match: bool,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CountReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BggRunReport {
    pub spec: SpecJson,
    pub trust_region: TrustRegion,
    pub trusted_slices: usize,
    pub d_squared: DSquared,
    pub homology: Vec<HomologyEntry>,
    pub degree0_match: bool,
    pub degree0: Degree0Report,
    pub injectivity: CountReport,
    pub descent_partition: CountReport,
    pub local_finiteness: CountReport,
    pub euler: Option<EulerReport>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slices: Option<Vec<SliceAnalysis>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BgglRunReport {
    pub spec: SpecJson,
    pub trust_region: TrustRegion,
    pub trusted_slices: usize,
    pub d_squared: DSquared,
    pub homology: Vec<HomologyEntry>,
    pub degree0_match: bool,
    pub degree0: Degree0Report,
    pub euler: Option<EulerReport>,
    pub quotient: BgglReport,
    pub filtration: Option<FiltrationReport>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slices: Option<Vec<ParabolicSlice>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct QuantumRunReport {
    pub field: String,
    pub flat_dimensions: bool,
    pub flatness_mismatches: Vec<Degree>,
    pub singular_dimensions: Vec<Vec<usize>>,
    pub bruhat_indicator: Vec<Vec<usize>>,
    pub dichotomy_match: bool,
    pub bgg: BggRunReport,
    pub status: Status,
}

#[derive(Clone, Debug, Serialize)]
pub struct CharactersRunReport {
    pub gcm: Vec<Vec<i64>>,
    pub mu: Vec<i64>,
    pub depth: i64,
    pub root_multiplicities: LieDimsJson,
    pub verma: CharacterJson,
    pub integrable: Option<CharacterJson>,
    pub integrable_matches_quotient: Option<bool>,
    pub verma_matches_enveloping: bool,
    pub denominator: Option<DenominatorReport>,
    pub status: Status,
}

#[derive(Clone, Debug, Serialize)]
pub struct WeylRunReport {
    #[serde(flatten)]
    pub weyl: WeylJson,
    pub sign_conditions_ok: bool,
    pub status: Status,
}

/// Runs `f` on a pool of `jobs` threads, or the global pool.
pub fn with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match jobs {
        None => Ok(f()),
        Some(0) => Err(Error::Config("--jobs must be at least 1".to_string())),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::Config(format!("cannot build thread pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

fn lie_for(v: &Validated) -> Result<Option<GradedLieAlgebra>> {
    if v.gcm.is_symmetrizable() {
        Ok(Some(build_nilpotent(&v.gcm, v.depth)?))
    } else {
        Ok(None)
    }
}

fn resolve_mutations<C: Coefficients>(algebra: &Arc<NegativePart<C>>, v: &Validated) -> Result<Vec<Mutation>> {
    if v.mutations.is_empty() {
        return Ok(Vec::new());
    }
    let probe = BggComplex::build(Arc::clone(algebra), &v.mu, v.depth, &[])?;
    let arrows = probe.arrows();
    let pick = |k: usize| -> Result<Arrow> {
        arrows
            .get(k)
            .copied()
            .ok_or_else(|| Error::Config(format!("mutation arrow {k} out of range; the complex has {} arrows", arrows.len())))
    };
    v.mutations
        .iter()
        .map(|m| match m {
            MutationConfig::Flip { arrow } => Ok(Mutation::FlipSign(pick(*arrow)?)),
            MutationConfig::Perturb { arrow, coordinate } => {
                Ok(Mutation::PerturbInclusion { arrow: pick(*arrow)?, coordinate: *coordinate })
            }
        })
        .collect()
}

fn spec_json(v: &Validated, field: String, mutations: &[Mutation]) -> SpecJson {
    SpecJson {
        gcm: v.gcm.entries().to_vec(),
        mu: v.mu.clone(),
        subset: v.subset.clone(),
        depth: v.depth,
        engine: v.engine,
        field,
        mutations: mutations.to_vec(),
    }
}

fn degree0_report<C: Coefficients>(
    algebra: &Arc<NegativePart<C>>,
    v: &Validated,
    lie: Option<&GradedLieAlgebra>,
    observed: &[(Degree, i64)],
) -> Result<Degree0Report> {
    let quotient = HighestWeightQuotient::integrable(Arc::clone(algebra), v.mu.clone())?;
    let quotient_match = observed.iter().all(|(b, d)| quotient.dim(b) as i64 == *d);
    let mut actual = TruncatedCharacter::zero(v.mu.clone(), v.depth);
    for (b, d) in observed {
        actual.set(b.clone(), *d);
    }
    let (oracle, mismatches) = match lie {
        Some(lie) => ("freudenthal", compare(v.gcm.rank(), &freudenthal(&v.mu, lie, v.depth)?, &actual, v.depth)),
        None => {
            let mut expected = TruncatedCharacter::zero(v.mu.clone(), v.depth);
            for (b, _) in observed {
                expected.set(b.clone(), quotient.dim(b) as i64);
            }
            ("integrable_quotient", compare(v.gcm.rank(), &expected, &actual, v.depth))
        }
    };
    Ok(Degree0Report { oracle: oracle.to_string(), total: actual.total(), mismatches, quotient_match })
}

fn bgg_generic<C: Coefficients>(
    algebra: Arc<NegativePart<C>>,
    v: &Validated,
    lie: Option<&GradedLieAlgebra>,
) -> Result<BggRunReport> {
    let mutations = resolve_mutations(&algebra, v)?;
    let field = algebra.coefficients().field_name();
    let complex = BggComplex::build(Arc::clone(&algebra), &v.mu, v.depth, &mutations)?;
    let slices = complex.analyze();
    let violations = d_squared_violations(&slices);
    let hom = homology_report(&slices);
    let observed: Vec<(Degree, i64)> = slices.iter().map(|s| (s.offset.clone(), s.degree0)).collect();
    let degree0 = degree0_report(&algebra, v, lie, &observed)?;
    let degree0_match = degree0.mismatches.is_empty() && degree0.quotient_match;

    let mut injectivity = CountReport::default();
    for s in &slices {
        injectivity.checked += s.injectivity_checks;
        for (n, i) in &s.injectivity_failures {
            injectivity.failures.push(format!("n = {n}, i = {i}, offset {:?}", s.offset));
        }
    }

    let group = complex.group();
    let mut descent_partition = CountReport::default();
    for w in 0..group.len() {
        let e = group.element(w);
        for i in 0..v.gcm.rank() {
            let positive = e.inverse_on_simple(i).iter().all(|&c| c >= 0);
            if let Some(siw) = group.left_multiply(i, w) {
                descent_partition.checked += 1;
                let l = group.element(siw).length() as i64 - e.length() as i64;
                if !(l == 1 && positive || l == -1 && !positive) {
                    descent_partition.failures.push(format!("w = {:?}, i = {i}", e.word()));
                }
            }
        }
    }

    let mut local_finiteness = CountReport::default();
    for &w in complex.members() {
        for i in 0..v.gcm.rank() {
            let Some(siw) = group.left_multiply(i, w) else { continue };
            if group.element(siw).length() != group.element(w).length() + 1 || !complex.members().contains(&siw) {
                continue;
            }
            local_finiteness.checked += 1;
            if !local_finiteness_witness(complex.embeddings(), group, w, i)? {
                local_finiteness.failures.push(format!("w = {:?}, i = {i}", group.element(w).word()));
            }
        }
    }

    let euler = match lie {
        Some(lie) => {
            let levels: Vec<Vec<(Degree, TruncatedCharacter)>> = complex
                .levels()
                .iter()
                .map(|lvl| {
                    lvl.iter()
                        .map(|&w| Ok((complex.offset(w).clone(), verma_character(&complex.embeddings().top_of(group, w), lie, v.depth)?)))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<_>>()?;
            Some(euler_check(v.gcm.rank(), &levels, &freudenthal(&v.mu, lie, v.depth)?, v.depth))
        }
        None => None,
    };

    let d_squared = DSquared::from(violations);
    let status = if !descent_partition.failures.is_empty() || !local_finiteness.failures.is_empty() {
        Status::InvariantViolation
    } else if !d_squared.is_ok() {
        Status::DSquaredViolation
    } else if !hom.nonzero.is_empty()
        || !degree0_match
        || !injectivity.failures.is_empty()
        || euler.as_ref().is_some_and(|e| !e.matches)
    {
        Status::HomologyFinding
    } else {
        Status::Ok
    };
    let homology = slices
        .iter()
        .flat_map(|s| {
            (1..s.homology.len())
                .filter(|&n| s.dims[n] > 0 || s.homology[n] != 0)
                .map(|n| HomologyEntry { n, weight: s.offset.clone(), dim: s.homology[n] })
        })
        .collect();
    Ok(BggRunReport {
        spec: spec_json(v, field, &mutations),
        trust_region: complex.trust_region(),
        trusted_slices: slices.len(),
        d_squared,
        homology,
        degree0_match,
        degree0,
        injectivity,
        descent_partition,
        local_finiteness,
        euler,
        status,
        slices: v.slices.then_some(slices),
    })
}

fn bggl_generic<C: Coefficients>(
    algebra: Arc<NegativePart<C>>,
    v: &Validated,
    lie: Option<&GradedLieAlgebra>,
) -> Result<BgglRunReport> {
    let mutations = resolve_mutations(&algebra, v)?;
    let field = algebra.coefficients().field_name();
    let base = BggComplex::build(Arc::clone(&algebra), &v.mu, v.depth, &mutations)?;
    let bggl = BgglComplex::new(&base, &v.subset, lie)?;
    let slices = bggl.analyze();
    let quotient = bggl.report(&slices);
    let filtration = bggl.filtration().map(|f| f.report(&slices));
    let observed: Vec<(Degree, i64)> = slices.iter().map(|s| (s.offset.clone(), s.degree0)).collect();
    let degree0 = degree0_report(&algebra, v, lie, &observed)?;
    let degree0_match = degree0.mismatches.is_empty() && degree0.quotient_match;

    let euler = match lie {
        Some(lie) => {
            let mut sum = TruncatedCharacter::zero(v.mu.clone(), v.depth);
            for s in &slices {
                let e: i64 = s.dims.iter().enumerate().map(|(n, &d)| if n % 2 == 0 { d as i64 } else { -(d as i64) }).sum();
                sum.set(s.offset.clone(), e);
            }
            let target = freudenthal(&v.mu, lie, v.depth)?;
            let discrepancies = compare(v.gcm.rank(), &target, &sum, v.depth);
            Some(EulerReport { matches: discrepancies.is_empty(), discrepancies })
        }
        None => None,
    };

    let d_squared_ok = quotient.d_squared_ok;
    let hard_filtration = filtration
        .as_ref()
        .is_some_and(|f| !f.classification_errors.is_empty() || f.upward_arrows > 0 || f.upward_nonzero_blocks > 0);
    let status = if !quotient.containment_ok || !quotient.augmentation_ok || hard_filtration {
        Status::InvariantViolation
    } else if !d_squared_ok {
        Status::DSquaredViolation
    } else if !quotient.nonzero_homology.is_empty()
        || !quotient.nonzero_kernel_homology.is_empty()
        || !degree0_match
        || euler.as_ref().is_some_and(|e| !e.matches)
        || filtration.as_ref().is_some_and(|f| !f.ok())
    {
        Status::HomologyFinding
    } else {
        Status::Ok
    };
    let homology = slices
        .iter()
        .flat_map(|s| {
            (1..s.homology.len())
                .filter(|&n| s.dims[n] > 0 || s.homology[n] != 0)
                .map(|n| HomologyEntry { n, weight: s.offset.clone(), dim: s.homology[n] })
        })
        .collect();
    Ok(BgglRunReport {
        spec: spec_json(v, field, &mutations),
        trust_region: base.trust_region(),
        trusted_slices: slices.len(),
        d_squared: if d_squared_ok { DSquared::Ok("ok".to_string()) } else { DSquared::Violations(Vec::new()) },
        homology,
        degree0_match,
        degree0,
        euler,
        quotient,
        filtration,
        status,
        slices: v.slices.then_some(slices),
    })
}

pub fn run_bgg(v: &Validated) -> Result<BggRunReport> {
    let lie = lie_for(v)?;
    match v.engine {
        EngineKind::Classical => bgg_generic(Arc::new(NegativePart::new(&v.gcm, Classical)), v, lie.as_ref()),
        EngineKind::Quantum => match &v.q {
            None => bgg_generic(Arc::new(symbolic_algebra(&v.gcm)?), v, lie.as_ref()),
            Some(q) => bgg_generic(Arc::new(numeric_algebra(&v.gcm, q.clone())?), v, lie.as_ref()),
        },
    }
}

pub fn run_bggl(v: &Validated) -> Result<BgglRunReport> {
    let lie = lie_for(v)?;
    match v.engine {
        EngineKind::Classical => bggl_generic(Arc::new(NegativePart::new(&v.gcm, Classical)), v, lie.as_ref()),
        EngineKind::Quantum => match &v.q {
            None => bggl_generic(Arc::new(symbolic_algebra(&v.gcm)?), v, lie.as_ref()),
            Some(q) => bggl_generic(Arc::new(numeric_algebra(&v.gcm, q.clone())?), v, lie.as_ref()),
        },
    }
}

fn quantum_generic<C: Coefficients>(algebra: Arc<NegativePart<C>>, v: &Validated) -> Result<QuantumRunReport> {
    let classical = NegativePart::new(&v.gcm, Classical);
    let field = algebra.coefficients().field_name();
    let mut flatness_mismatches = Vec::new();
    for beta in crate::cartan::degrees_up_to(v.gcm.rank(), v.depth) {
        if algebra.dim(&beta) != classical.dim(&beta) {
            flatness_mismatches.push(beta);
        }
    }
    let group = WeylGroup::enumerate_for_depth(&v.gcm, &v.mu, v.depth)?;
    let elements: Vec<usize> =
        (0..group.len()).filter(|&w| group.offset_height(w, &v.mu) <= v.depth).collect();
    let embeddings = crate::verma::Embeddings::new(Arc::clone(&algebra), v.mu.clone());
    let singular_dimensions = singular_dimension_matrix(&embeddings, &group, &elements)?;
    let indicator = bruhat_indicator(&group, &elements);
    let dichotomy_match = singular_dimensions == indicator;
    let lie = lie_for(v)?;
    let bgg = bgg_generic(algebra, v, lie.as_ref())?;
    let status = if bgg.status != Status::Ok {
        bgg.status
    } else if !flatness_mismatches.is_empty() || !dichotomy_match {
        Status::HomologyFinding
    } else {
        Status::Ok
    };
    Ok(QuantumRunReport {
        field,
        flat_dimensions: flatness_mismatches.is_empty(),
        flatness_mismatches,
        singular_dimensions,
        bruhat_indicator: indicator,
        dichotomy_match,
        bgg,
        status,
    })
}

/// The BGG run over the quantum engine, plus flatness of `U_q(n^-)` and
/// the singular-vector dichotomy over `U_q`.
pub fn run_quantum(v: &Validated) -> Result<QuantumRunReport> {
    let mut v = v.clone();
    v.engine = EngineKind::Quantum;
    match &v.q {
        None => quantum_generic(Arc::new(symbolic_algebra(&v.gcm)?), &v),
        Some(q) => quantum_generic(Arc::new(numeric_algebra(&v.gcm, q.clone())?), &v),
    }
}

pub fn run_characters(v: &Validated) -> Result<CharactersRunReport> {
    let lie = build_nilpotent(&v.gcm, v.depth)?;
    let verma = verma_character(&v.mu, &lie, v.depth)?;
    let algebra = Arc::new(NegativePart::new(&v.gcm, Classical));
    let verma_matches_enveloping = verma.coeffs.iter().all(|(b, &c)| algebra.dim(b) as i64 == c);
    let (integrable, integrable_matches_quotient) = if v.gcm.is_symmetrizable() {
        let ch = freudenthal(&v.mu, &lie, v.depth)?;
        let quotient = HighestWeightQuotient::integrable(Arc::clone(&algebra), v.mu.clone())?;
        let ok = crate::cartan::degrees_up_to(v.gcm.rank(), v.depth)
            .iter()
            .all(|b| quotient.dim(b) as i64 == ch.get(b));
        (Some(ch.to_json()), Some(ok))
    } else {
        (None, None)
    };
    let denominator = if v.mu.iter().all(|&m| m == 0) {
        let group = WeylGroup::enumerate_for_depth(&v.gcm, &v.mu, v.depth)?;
        Some(denominator_identity(&group, &lie, v.depth)?)
    } else {
        None
    };
    let bad = !verma_matches_enveloping
        || integrable_matches_quotient == Some(false)
        || denominator.as_ref().is_some_and(|d| !d.matches);
    Ok(CharactersRunReport {
        gcm: v.gcm.entries().to_vec(),
        mu: v.mu.clone(),
        depth: v.depth,
        root_multiplicities: lie.dims_json(),
        verma: verma.to_json(),
        integrable,
        integrable_matches_quotient,
        verma_matches_enveloping,
        denominator,
        status: if bad { Status::HomologyFinding } else { Status::Ok },
    })
}

/// DOT picture of the classical complex; with a subset, the minimal coset
/// representatives are highlighted.
pub fn complex_dot(v: &Validated) -> Result<String> {
    let algebra = Arc::new(NegativePart::new(&v.gcm, Classical));
    let mutations = resolve_mutations(&algebra, v)?;
    let complex = BggComplex::build(algebra, &v.mu, v.depth, &mutations)?;
    Ok(complex.to_dot((!v.subset.is_empty()).then_some(v.subset.as_slice())))
}

/// Enumeration to `max_length`, arrows, squares and signs, with the
/// square condition rechecked.
pub fn run_weyl(gcm: &CartanMatrix, max_length: usize) -> Result<(WeylRunReport, WeylGroup, crate::weyl::SignAssignment)> {
    let group = WeylGroup::enumerate_up_to(gcm, max_length)?;
    let squares = group.squares()?;
    let signs = crate::weyl::assign_signs(&group.arrows(), &squares)?;
    let sign_conditions_ok = signs.violations(&squares).is_empty();
    let weyl = weyl_json(&group, &squares, &signs);
    let status = if sign_conditions_ok { Status::Ok } else { Status::InvariantViolation };
    Ok((WeylRunReport { weyl, sign_conditions_ok, status }, group, signs))
}
