//! The eight acceptance criteria. Each prints one `PASS`/`FAIL` line; all
//! comparisons are exact. Run with `cargo test --test acceptance -- --nocapture`
//! to see the lines.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use cmpairs::dsl::{self, Env};
use cmpairs::homological::{ext, free_resolution, Certificate, ExtendedNat};
use cmpairs::local_cohomology::{cd_support, deficiency, depth, DegreeBox};
use cmpairs::module::GradedModule;
use cmpairs::monomial::Degree;
use cmpairs::pair::{
    ar_certificate, ass_monomial, cd_pair, depth_pair, huneke_check, is_cm_pair, is_semidualizing, present_over,
    CdStrategy, CmVerdict, FreenessVerdict,
};
use cmpairs::verifier::{load_corpus, run_suite, Outcome, SuiteOptions, SuiteReport};

type Check = Result<(), String>;

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

fn corpus_file(name: &str) -> Env {
    let src = std::fs::read_to_string(corpus_dir().join(name)).unwrap();
    dsl::load(&src).unwrap()
}

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Check {
    if ok { Ok(()) } else { Err(what()) }
}

fn finite(n: usize) -> ExtendedNat {
    ExtendedNat::Finite(n)
}

fn total_dim(m: &cmpairs::module::Subquotient, window: &DegreeBox) -> usize {
    window.degrees().iter().map(|d| m.dim(d)).sum()
}

/// Runs one criterion, prints its line and returns whether it passed.
fn criterion(n: usize, title: &str, limit: Option<Duration>, body: impl FnOnce() -> Check) -> bool {
    let start = Instant::now();
    let result = body();
    let took = start.elapsed();
    let result = match (result, limit) {
        (Ok(()), Some(l)) if took >= l => Err(format!("took {took:.2?}, limit {l:?}")),
        (r, _) => r,
    };
    match &result {
        Ok(()) => println!("criterion {n} PASS ({took:.2?}): {title}"),
        Err(e) => println!("criterion {n} FAIL ({took:.2?}): {title}: {e}"),
    }
    result.is_ok()
}

fn zero_divisor_example() -> Check {
    let env = corpus_file("ex18.cm");
    let p = env.pair("P").unwrap();
    let (i, m, n) = (&p.ideal, &p.m, &p.n);
    let window = DegreeBox::around(n, 4);
    for k in 1..=4 {
        let e = ext(2 * k, m, n).map_err(|e| e.to_string())?;
        let t = total_dim(&e, &window);
        ensure(t == 1, || format!("Ext^{}(M,N) has total dimension {t}", 2 * k))?;
    }
    for k in 0..=3 {
        let e = ext(2 * k + 1, m, n).map_err(|e| e.to_string())?;
        ensure(e.is_zero(), || format!("Ext^{}(M,N) is nonzero", 2 * k + 1))?;
    }
    let hom = ext(0, m, n).map_err(|e| e.to_string())?;
    for d in window.degrees() {
        ensure(hom.dim(&d) == n.dim(&d), || format!("Ext^0(M,N) differs from yR in degree {d:?}"))?;
    }
    let report = cd_pair(i, m, n).map_err(|e| e.to_string())?;
    ensure(
        matches!(&report.cd.value, ExtendedNat::Infinite(Certificate::Periodicity { period: 2, .. })),
        || format!("cd_I(M,N) = {}", report.cd.value),
    )?;
    let cd_n = cd_support(i, n).map_err(|e| e.to_string())?;
    ensure(cd_n.value == finite(0), || format!("cd_I N = {}", cd_n.value))?;
    let v = is_cm_pair(i, m, n).map_err(|e| e.to_string())?;
    ensure(v == CmVerdict::No, || format!("(M,N) verdict {v}"))?;
    let q = env.pair("Q").unwrap();
    let v = is_cm_pair(&q.ideal, &q.m, &q.n).map_err(|e| e.to_string())?;
    ensure(v == CmVerdict::Yes(0), || format!("(R,N) verdict {v}"))
}

/// The fine Hilbert function of `a` agrees with a shift of that of `b`.
fn same_dims_up_to_shift(a: &GradedModule, b: &GradedModule) -> bool {
    let support = |m: &GradedModule| -> Vec<Degree> {
        DegreeBox::around(m, 3).degrees().into_iter().filter(|d| m.dim(d) > 0).collect()
    };
    let (sa, sb) = (support(a), support(b));
    if sa.len() != sb.len() || sa.is_empty() {
        return sa.is_empty() && sb.is_empty();
    }
    // Both supports are enumerated in the same order, so a shift must match their first elements.
    let shift: Vec<i32> = sb[0].0.iter().zip(&sa[0].0).map(|(y, x)| y - x).collect();
    sa.iter().zip(&sb).all(|(x, y)| {
        let moved = Degree(x.0.iter().zip(&shift).map(|(u, s)| u + s).collect());
        &moved == y && a.dim(x) == b.dim(y)
    })
}

fn artinian_semidualizing() -> Check {
    let env = corpus_file("ex36.cm");
    let c = env.module_named("C").unwrap();
    let r = env.module_named("R36").unwrap();
    let sd = is_semidualizing(&c, 6).map_err(|e| e.to_string())?;
    ensure(sd.is_yes(), || format!("C semidualizing: {sd:?}"))?;
    let betti = free_resolution(&c, 1).betti();
    ensure(betti.get(1).is_some_and(|&b| b > 0), || format!("C looks free, Betti numbers {betti:?}"))?;
    let k0 = deficiency(0, &r).map_err(|e| e.to_string())?;
    let omega = present_over(&k0.module, &r.ring).map_err(|e| e.to_string())?;
    ensure(!same_dims_up_to_shift(&c, &omega), || "C has the dimensions of a shifted canonical module".into())?;
    let p = env.pair("CC").unwrap();
    let dp = depth_pair(&p.ideal, &c, &c).map_err(|e| e.to_string())?;
    let dr = depth(&r).map_err(|e| e.to_string())?;
    let report = cd_pair(&p.ideal, &c, &c).map_err(|e| e.to_string())?;
    let cdr = cd_support(&p.ideal, &r).map_err(|e| e.to_string())?;
    ensure(dp == finite(0) && dr == finite(0), || format!("depth_m(C,C) = {dp}, depth R = {dr}"))?;
    ensure(report.cd.value == finite(0) && cdr.value == finite(0), || {
        format!("cd_m(C,C) = {}, cd_m R = {}", report.cd.value, cdr.value)
    })?;
    ensure(report.verdict == CmVerdict::Yes(0), || format!("verdict {}", report.verdict))
}

fn semigroup_canonical() -> Check {
    let env = corpus_file("semigroup.cm");
    let w = env.module_named("W").unwrap();
    let r = env.module_named("R").unwrap();
    let m = env.ideals["m"].clone();
    ensure(w.minimal_generator_count() == 2, || format!("ω has {} generators", w.minimal_generator_count()))?;
    let sd = is_semidualizing(&w, 6).map_err(|e| e.to_string())?;
    ensure(sd.is_yes(), || format!("ω semidualizing: {sd:?}"))?;
    let dp = depth_pair(&m, &w, &w).map_err(|e| e.to_string())?;
    let report = cd_pair(&m, &w, &w).map_err(|e| e.to_string())?;
    let dr = depth(&r).map_err(|e| e.to_string())?;
    let cdr = cd_support(&m, &r).map_err(|e| e.to_string())?;
    let all = [&dp, &report.cd.value, &dr, &cdr.value];
    ensure(all.iter().all(|v| **v == finite(1)), || {
        format!("depth_m(ω,ω) = {dp}, cd_m(ω,ω) = {}, depth R = {dr}, cd_m R = {}", report.cd.value, cdr.value)
    })
}

fn each_entry(report: &SuiteReport, property: &str, allow_skip: impl Fn(&str, &str) -> bool) -> Check {
    for e in &report.entries {
        match report.outcome(&e.name, property) {
            Some(Outcome::Pass(_)) => {}
            Some(Outcome::Skipped(why)) if allow_skip(&e.name, why) => {}
            other => return Err(format!("{property} on {}: {other:?}", e.name)),
        }
    }
    Ok(())
}

fn chain_and_bounds(report: &SuiteReport) -> Check {
    ensure(report.entries.len() >= 12, || format!("only {} corpus entries", report.entries.len()))?;
    each_entry(report, "chain", |_, _| false)?;
    each_entry(report, "bounds", |_, _| false)?;
    // Equality case of the tensor bound: skipped only when e is not finite.
    each_entry(report, "tensor_plus_e", |_, why| why.contains("is not finite"))
}

fn route_agreement(report: &SuiteReport, fine: &[String]) -> Check {
    each_entry(report, "grade_routes", |_, _| false)?;
    each_entry(report, "cech_duality", |name, _| !fine.iter().any(|f| f == name))?;
    each_entry(report, "hilbert_routes", |_, _| false)
}

fn strategy_cross_check(report: &SuiteReport) -> Check {
    let env = corpus_file("polynomial.cm");
    let p = env.pair("LS").unwrap();
    let r = cd_pair(&p.ideal, &p.m, &p.n).map_err(|e| e.to_string())?;
    for s in [CdStrategy::SingleExt, CdStrategy::CMPlusH, CdStrategy::CMLocalFormula] {
        let x = r.cross_checks.iter().find(|x| x.strategy == s);
        ensure(x.is_some_and(|x| x.cd == finite(2)), || format!("{s:?}: {x:?}"))?;
    }
    ensure(r.all_agree && r.cd.value == finite(2), || format!("cd {} agreement {}", r.cd.value, r.all_agree))?;
    for entry in ["polynomial/LS", "ex18/A"] {
        for prop in ["top_degeneration", "bottom_degeneration"] {
            let o = report.outcome(entry, prop);
            ensure(matches!(o, Some(Outcome::Pass(_))), || format!("{prop} on {entry}: {o:?}"))?;
        }
    }
    Ok(())
}

fn prime_names(ring: &cmpairs::ring::RingRef, ps: &[cmpairs::pair::MonomialPrime]) -> Vec<String> {
    let mut v: Vec<String> = ps.iter().map(|p| p.format(ring)).collect();
    v.sort();
    v
}

fn associated_primes() -> Check {
    let ex18 = corpus_file("ex18.cm");
    let p = ex18.pair("P").unwrap();
    let h = huneke_check(&p.ideal, &p.m, &p.n).map_err(|e| e.to_string())?;
    let got = prime_names(&p.ideal.ring, &h.ass);
    ensure(h.finite && got == ["(x)"], || format!("Huneke: finite {} Ass {got:?}", h.finite))?;
    let poly = corpus_file("polynomial.cm");
    let cases = [
        (poly.module_named("S2").unwrap(), vec!["(0)"]),
        (ex18.module_named("R").unwrap(), vec!["(x)", "(y)"]),
        (poly.module_named("D").unwrap(), vec!["(x)", "(x, y)"]),
    ];
    for (m, want) in cases {
        let got = prime_names(&m.ring, &ass_monomial(&m).map_err(|e| e.to_string())?);
        ensure(got == want, || format!("Ass {} = {got:?}, want {want:?}", m.format()))?;
    }
    Ok(())
}

fn freeness(report: &SuiteReport) -> Check {
    let env = corpus_file("ar.cm");
    let verdict = |name: &str| ar_certificate(&env.module_named(name).unwrap(), 6).map(|c| c.verdict);
    let f = verdict("F").map_err(|e| e.to_string())?;
    ensure(f == FreenessVerdict::Free, || format!("free module: {f:?}"))?;
    let max = verdict("Max").map_err(|e| e.to_string())?;
    ensure(
        matches!(&max, FreenessVerdict::NotFree(w) if w.contains("reflexive")),
        || format!("(x, y): {max:?}"),
    )?;
    let l = verdict("L").map_err(|e| e.to_string())?;
    ensure(matches!(l, FreenessVerdict::NotFree(_)), || format!("S2/x: {l:?}"))?;
    let total = Duration::from_millis(report.timing.total_ms as u64);
    ensure(total < Duration::from_secs(120), || format!("corpus suite took {total:?}"))?;
    ensure(report.passed(), || format!("{} corpus checks failed", report.summary.fail))
}

#[test]
fn acceptance() {
    let mut results = Vec::new();
    results.push(criterion(1, "zero-divisor example: infinite pair cd, cd_I N = 0", Some(Duration::from_secs(1)), zero_divisor_example));
    results.push(criterion(2, "Artinian non-free semidualizing (C, C) is 0-CM", Some(Duration::from_secs(30)), artinian_semidualizing));
    results.push(criterion(3, "semigroup canonical module (ω, ω) is 1-CM", None, semigroup_canonical));

    let corpus = load_corpus(&[corpus_dir()]).unwrap();
    let fine: Vec<String> = corpus
        .entries
        .iter()
        .filter(|e| matches!(e.ring.grading, cmpairs::ring::Grading::Fine))
        .map(|e| e.name.clone())
        .collect();
    let report = run_suite(&corpus, &SuiteOptions::default()).unwrap();
    println!("corpus suite: {} entries, {} ms", report.entries.len(), report.timing.total_ms);

    results.push(criterion(4, "chain and bounds on every corpus entry", None, || chain_and_bounds(&report)));
    results.push(criterion(5, "grade, Čech/duality and Hilbert route agreement", None, || route_agreement(&report, &fine)));
    results.push(criterion(6, "three-way strategy agreement and degeneration identities", None, || strategy_cross_check(&report)));
    results.push(criterion(7, "Huneke set and associated primes", None, associated_primes));
    results.push(criterion(8, "freeness certificates and full-suite runtime", None, || freeness(&report)));

    let failed: Vec<usize> = results.iter().enumerate().filter(|(_, ok)| !**ok).map(|(k, _)| k + 1).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
