//! End-to-end acceptance run: one PASS/FAIL line per criterion.

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use bgg_core::complex::{d_squared_violations, homology_report};
use bgg_core::nilpotent::build_nilpotent;
use bgg_core::pipeline::{full_depth, run_bgg, run_bggl, run_characters, run_quantum, EngineKind, QModeConfig, RunConfig, Status};
use bgg_core::verma::{bruhat_indicator, singular_dimension_matrix, Embeddings};
use bgg_core::weyl::{assign_signs, ArrowClass};
use bgg_core::{BggComplex, BgglComplex, CartanMatrix, Classical, Mutation, NegativePart, WeylGroup};

type Outcome = Result<String, String>;

fn a1() -> Vec<Vec<i64>> {
    vec![vec![2]]
}

fn a2() -> Vec<Vec<i64>> {
    vec![vec![2, -1], vec![-1, 2]]
}

fn b2() -> Vec<Vec<i64>> {
    vec![vec![2, -2], vec![-1, 2]]
}

fn affine() -> Vec<Vec<i64>> {
    vec![vec![2, -2], vec![-2, 2]]
}

fn gcm(e: Vec<Vec<i64>>) -> CartanMatrix {
    CartanMatrix::new(e).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn dichotomy() -> Outcome {
    let g = gcm(a2());
    let group = WeylGroup::enumerate_up_to(&g, 3).unwrap();
    let elements: Vec<usize> = (0..group.len()).collect();
    let emb = Embeddings::new(Arc::new(NegativePart::new(&g, Classical)), vec![1, 1]);
    let dims = singular_dimension_matrix(&emb, &group, &elements).map_err(|e| e.to_string())?;
    let indicator = bruhat_indicator(&group, &elements);
    ensure(dims == indicator, || format!("singular dims {dims:?} vs Bruhat {indicator:?}"))?;
    let ones: usize = dims.iter().flatten().sum();
    ensure(ones == 19, || format!("expected 19 comparable pairs, got {ones}"))?;
    Ok(format!("6x6 matrix equals the Bruhat indicator ({ones} ones)"))
}

fn signs() -> Outcome {
    let mut notes = Vec::new();
    for (name, e, len) in [("A2", a2(), 3), ("B2", b2(), 4), ("A1^(1)", affine(), 6)] {
        let group = WeylGroup::enumerate_up_to(&gcm(e), len).unwrap();
        let squares = group.squares().map_err(|e| e.to_string())?;
        let arrows = group.arrows();
        let signs = assign_signs(&arrows, &squares).map_err(|e| format!("{name}: {e}"))?;
        for sq in &squares {
            let p: i64 = sq.arrows().iter().map(|&a| signs.sign(a)).product();
            ensure(p == -1, || format!("{name}: square {sq:?} has product {p}"))?;
        }
        let mut pairs = 0;
        for w in 0..group.len() {
            for v in 0..group.len() {
                let (lw, lv) = (group.element(w).length(), group.element(v).length());
                if lw != lv + 2 || !group.bruhat_le(v, w) {
                    continue;
                }
                pairs += 1;
                let sum: i64 = group
                    .covers(w)
                    .iter()
                    .filter(|&&m| group.covers(m).contains(&v))
                    .map(|&m| {
                        signs.sign(bgg_core::Arrow { source: w, target: m })
                            * signs.sign(bgg_core::Arrow { source: m, target: v })
                    })
                    .sum();
                ensure(sum == 0, || format!("{name}: signed d^2 = {sum} on a length-2 pair"))?;
            }
        }
        notes.push(format!("{name}: {} squares, {pairs} pairs", squares.len()));
    }
    Ok(notes.join("; "))
}

fn bgg_instances() -> Vec<(&'static str, RunConfig)> {
    let mut out = Vec::new();
    for m in [0, 1, 2, 5] {
        out.push(("A1", RunConfig::new(a1()).with_mu(&[m])));
    }
    out.push(("A2", RunConfig::new(a2()).with_mu(&[1, 1])));
    out.push(("A2", RunConfig::new(a2()).with_mu(&[2, 0])));
    out.push(("B2", RunConfig::new(b2()).with_mu(&[1, 1])));
    out.push(("A1^(1)", RunConfig::new(affine()).with_mu(&[1, 0]).with_depth(6)));
    out
}

fn exactness() -> Outcome {
    let mut slices = 0;
    for (name, cfg) in bgg_instances() {
        let v = cfg.validate().map_err(|e| e.to_string())?;
        let r = run_bgg(&v).map_err(|e| format!("{name} {:?}: {e}", v.mu))?;
        ensure(r.d_squared.is_ok(), || format!("{name} {:?}: d^2 fails", v.mu))?;
        ensure(r.homology.iter().all(|h| h.dim == 0), || format!("{name} {:?}: homology {:?}", v.mu, r.homology))?;
        ensure(r.degree0_match, || format!("{name} {:?}: degree 0 {:?}", v.mu, r.degree0))?;
        ensure(r.status == Status::Ok, || format!("{name} {:?}: status {:?}", v.mu, r.status))?;
        slices += r.trusted_slices;
    }
    Ok(format!("8 instances, {slices} trusted slices, all exact with Freudenthal degree 0"))
}

fn bggl_instances() -> Vec<(&'static str, RunConfig)> {
    vec![
        ("A2 S={0}", RunConfig::new(a2()).with_mu(&[1, 1]).with_subset(&[0])),
        ("A2 S={1}", RunConfig::new(a2()).with_mu(&[1, 1]).with_subset(&[1])),
        ("B2 S={1}", RunConfig::new(b2()).with_mu(&[1, 1]).with_subset(&[1])),
        ("A1^(1) S={0}", RunConfig::new(affine()).with_mu(&[1, 0]).with_subset(&[0]).with_depth(5)),
        ("A1^(1) S={1}", RunConfig::new(affine()).with_mu(&[1, 0]).with_subset(&[1]).with_depth(5)),
    ]
}

fn parabolic_exactness() -> Outcome {
    let mut notes = Vec::new();
    for (name, cfg) in bggl_instances() {
        let v = cfg.validate().map_err(|e| e.to_string())?;
        let r = run_bggl(&v).map_err(|e| format!("{name}: {e}"))?;
        ensure(r.d_squared.is_ok(), || format!("{name}: (d^S)^2 fails"))?;
        ensure(r.quotient.nonzero_homology.is_empty(), || format!("{name}: {:?}", r.quotient.nonzero_homology))?;
        ensure(r.degree0_match, || format!("{name}: degree 0 {:?}", r.degree0))?;
        ensure(r.status == Status::Ok, || format!("{name}: status {:?}", r.status))?;
        notes.push(format!("{name}: {} reps", r.quotient.representatives.len()));
    }
    Ok(notes.join("; "))
}

fn containment_and_filtration() -> Outcome {
    let mut graded = 0;
    let mut blocks = 0;
    for (name, cfg) in bggl_instances() {
        let v = cfg.validate().map_err(|e| e.to_string())?;
        let algebra = Arc::new(NegativePart::new(&v.gcm, Classical));
        let base = BggComplex::build(algebra, &v.mu, v.depth, &[]).map_err(|e| e.to_string())?;
        let lie = build_nilpotent(&v.gcm, v.depth).map_err(|e| e.to_string())?;
        let p = BgglComplex::new(&base, &v.subset, Some(&lie)).map_err(|e| e.to_string())?;
        let slices = p.analyze();
        let q = p.report(&slices);
        ensure(q.containment_ok, || format!("{name}: d(Ker pi) not inside Ker pi"))?;
        ensure(q.augmentation_ok, || format!("{name}: augmentation does not kill Ker pi_0"))?;
        ensure(q.nonzero_kernel_homology.is_empty(), || format!("{name}: kernel homology {:?}", q.nonzero_kernel_homology))?;
        let f = p.filtration().unwrap().report(&slices);
        ensure(f.ok(), || format!("{name}: {f:?}"))?;
        ensure(f.graded_checks > 0, || format!("{name}: no graded pieces checked"))?;
        graded += f.graded_checks;
        blocks += f.arrows_checked;
    }
    Ok(format!("5 instances, {blocks} arrows classified, no upward blocks, {graded} graded pieces match and are exact"))
}

fn quantum() -> Outcome {
    let mut runs = 0;
    let mut instances: Vec<RunConfig> = (0..4).map(|k| RunConfig::new(a1()).with_mu(&[[0, 1, 2, 5][k]])).collect();
    instances.push(RunConfig::new(a2()).with_mu(&[1, 1]));
    instances.push(RunConfig::new(a2()).with_mu(&[2, 0]));
    for cfg in instances {
        let classical = run_bgg(&cfg.validate().unwrap()).map_err(|e| e.to_string())?;
        for mode in [QModeConfig::Symbolic, QModeConfig::Numeric("2".to_string())] {
            let v = cfg.clone().with_engine(EngineKind::Quantum, mode.clone()).validate().map_err(|e| e.to_string())?;
            let r = run_quantum(&v).map_err(|e| e.to_string())?;
            let tag = format!("{:?} over {}", v.mu, r.field);
            ensure(r.dichotomy_match, || format!("{tag}: dichotomy fails"))?;
            ensure(r.flat_dimensions, || format!("{tag}: dims differ from classical at {:?}", r.flatness_mismatches))?;
            ensure(r.status == Status::Ok, || format!("{tag}: status {:?}", r.status))?;
            let same = serde_json::to_string(&r.bgg.homology).unwrap() == serde_json::to_string(&classical.homology).unwrap();
            ensure(same, || format!("{tag}: homology report differs from the classical engine"))?;
            runs += 1;
        }
    }
    Ok(format!("{runs} runs over Q(q) and at q = 2 agree with the classical engine"))
}

fn parabolic_combinatorics() -> Outcome {
    let mut checked = 0;
    for (name, e) in [("A2", a2()), ("B2", b2()), ("A1^(1)", affine())] {
        let g = gcm(e);
        let group = WeylGroup::enumerate_up_to(&g, 6).unwrap();
        let r = g.rank();
        for mask in 0..(1u32 << r) {
            let subset: Vec<usize> = (0..r).filter(|i| mask & (1 << i) != 0).collect();
            for w in 0..group.len() {
                let (u, v) = group.parabolic_decompose(w, &subset);
                let product = group.element(u).matrix().mul(group.element(v).matrix());
                ensure(&product == group.element(w).matrix(), || format!("{name} {subset:?}: w != w_S w^S"))?;
                ensure(group.in_parabolic(u, &subset) && group.is_minimal_rep(v, &subset), || {
                    format!("{name} {subset:?}: factors of {:?} misplaced", group.element(w).word())
                })?;
                let additive = group.element(u).length() + group.element(v).length() == group.element(w).length();
                ensure(additive, || format!("{name} {subset:?}: lengths not additive"))?;
                let count = (0..group.len())
                    .filter(|&a| group.in_parabolic(a, &subset))
                    .flat_map(|a| (0..group.len()).map(move |b| (a, b)))
                    .filter(|&(a, b)| {
                        group.is_minimal_rep(b, &subset)
                            && &group.element(a).matrix().mul(group.element(b).matrix()) == group.element(w).matrix()
                    })
                    .count();
                ensure(count == 1, || format!("{name} {subset:?}: {count} decompositions"))?;
                checked += 1;
            }
            for arrow in group.arrows() {
                let class = group.classify_arrow(arrow, &subset).map_err(|e| format!("{name} {subset:?}: {e}"))?;
                let (_, vs) = group.parabolic_decompose(arrow.source, &subset);
                let (_, vt) = group.parabolic_decompose(arrow.target, &subset);
                ensure(group.element(vs).length() >= group.element(vt).length(), || format!("{name}: l(w^S) increases along an arrow"))?;
                if let ArrowClass::SameWS { levi_source, levi_target } = class {
                    ensure(group.covers(levi_source).contains(&levi_target), || format!("{name}: W_S arrow missing"))?;
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} decompositions and arrow classifications"))
}

fn denominator() -> Outcome {
    let v = RunConfig::new(affine()).with_depth(6).validate().map_err(|e| e.to_string())?;
    let r = run_characters(&v).map_err(|e| e.to_string())?;
    let d = r.denominator.ok_or("no denominator report")?;
    ensure(d.matches, || format!("discrepancies {:?}", d.discrepancies))?;
    let lie = build_nilpotent(&v.gcm, 6).map_err(|e| e.to_string())?;
    for k in 1..=3 {
        let m = lie.mult(&[k, k]).map_err(|e| e.to_string())?;
        ensure(m == 1, || format!("mult({k} delta) = {m}"))?;
    }
    Ok(format!("{} coefficients agree; mult(k delta) = 1 for k <= 3", d.coefficients_checked))
}

fn detects(complex: &BggComplex<Classical>) -> bool {
    let slices = complex.analyze();
    !d_squared_violations(&slices).is_empty()
        || !homology_report(&slices).nonzero.is_empty()
        || slices.iter().any(|s| !s.injectivity_failures.is_empty())
}

fn mutations() -> Outcome {
    let mut caught = 0;
    for (name, e, mu) in [("A2", a2(), [1, 1]), ("B2", b2(), [1, 1])] {
        let g = gcm(e);
        let depth = full_depth(&g, &mu).map_err(|e| e.to_string())?;
        let algebra = Arc::new(NegativePart::new(&g, Classical));
        let clean = BggComplex::build(Arc::clone(&algebra), &mu, depth, &[]).map_err(|e| e.to_string())?;
        ensure(!detects(&clean), || format!("{name}: unmutated complex flagged"))?;
        for arrow in clean.arrows() {
            for m in [Mutation::FlipSign(arrow), Mutation::PerturbInclusion { arrow, coordinate: 0 }] {
                let c = BggComplex::build(Arc::clone(&algebra), &mu, depth, &[m]).map_err(|e| e.to_string())?;
                ensure(detects(&c), || format!("{name}: mutation {m:?} not detected"))?;
                caught += 1;
            }
        }
    }
    Ok(format!("{caught} single mutations all detected"))
}

fn main() -> ExitCode {
    let criteria: [(u32, &str, u64, fn() -> Outcome); 9] = [
        (1, "Hom dichotomy for A2", 10, dichotomy),
        (2, "square signs and signed d^2", 5, signs),
        (3, "BGG exactness", 300, exactness),
        (4, "BGGL exactness", 300, parabolic_exactness),
        (5, "containment and filtration", 120, containment_and_filtration),
        (6, "quantum analogue", 600, quantum),
        (7, "parabolic factorization", 30, parabolic_combinatorics),
        (8, "denominator identity", 30, denominator),
        (9, "mutation detection", 60, mutations),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (n, name, limit, f) in criteria {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or(p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(_) if elapsed > Duration::from_secs(limit) => Err(format!("took {elapsed:.2?}, limit {limit}s")),
            o => o,
        };
        match outcome {
            Ok(detail) => println!("criterion {n} [{name}]: PASS ({detail}; {elapsed:.2?} of {limit}s)"),
            Err(detail) => {
                failed += 1;
                println!("criterion {n} [{name}]: FAIL ({detail}; {elapsed:.2?} of {limit}s)");
            }
        }
    }
    println!("acceptance: {} of 9 criteria passed", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
