//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line.

use intstar::cli::{run_suite, SuiteName};
use intstar::conjharness::{
    check_monotone, run_ladder, search_certificate, verify_chain, ChainStatus, DomainId, RunOptions, SearchOutcome,
    DEFAULT_LADDER,
};
use intstar::exactalg::TruncSeries;
use intstar::intpoly::parse::parse_lat_ideal;
use intstar::intpoly::{interchange_check, localization_check, theta_check_bivariate, DomainHandle, MultSet};
use intstar::latorder::{prime_profile, profile_primes, QuadOrder};
use intstar::psring::{conductor_ideal, is_t_maximal_local, FracIdeal, RingElement, SemigroupRingSpec};
use intstar::verdict::Outcome;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::io::Write;
use std::sync::Arc;
use std::time::{Duration, Instant};

type Check = std::result::Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e2s<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn legendre(k: u64, p: u64) -> u32 {
    let mut v = 0;
    let mut q = p;
    while q <= k {
        v += (k / q) as u32;
        q *= p;
    }
    v
}

fn valuation(mut n: BigInt, p: u64) -> u32 {
    let p = BigInt::from(p);
    let mut v = 0;
    while !n.is_zero() && (&n % &p).is_zero() {
        n /= &p;
        v += 1;
    }
    v
}

fn binomial_denominators() -> Check {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = intstar::cli::run(["intstar", "basis", "--domain", "Z", "--deg", "8", "--format", "json"], &mut out, &mut err);
    ensure(code == 0, || format!("exit {code}: {}", String::from_utf8_lossy(&err)))?;
    let text = String::from_utf8(out).map_err(e2s)?;
    let last = text.lines().last().ok_or("no output")?;
    let v: serde_json::Value = serde_json::from_str(last).map_err(e2s)?;
    let dens = v["data"]["denominators"].as_array().ok_or("no denominators")?;
    ensure(dens.len() == 9, || format!("{} generators", dens.len()))?;
    for (k, d) in dens.iter().enumerate() {
        let d: BigInt = d.as_str().ok_or("denominator is not a string")?.parse().map_err(e2s)?;
        let mut rest = d.clone();
        for p in [2u64, 3, 5, 7] {
            let got = valuation(d.clone(), p);
            let want = legendre(k as u64, p);
            ensure(got == want, || format!("k = {k}, p = {p}: valuation {got}, Legendre {want}"))?;
            rest /= BigInt::from(p).pow(got);
        }
        ensure(rest.is_one(), || format!("k = {k}: stray factor {rest}"))?;
    }
    Ok("valuations match Legendre for k ≤ 8, p ∈ {2,3,5,7}".into())
}

fn premises() -> Check {
    for id in [DomainId::F2Semi23, DomainId::F2Tf4] {
        let r = verify_chain(id, 16).map_err(e2s)?;
        ensure(r.status == ChainStatus::Verified, || format!("{id}: {:?}", r.status))?;
        ensure(r.items.len() == 4, || format!("{id}: {} items", r.items.len()))?;
        for i in &r.items {
            ensure(i.verdict.is_yes(), || format!("{id}: {} is {}", i.name, i.verdict))?;
        }
        let spec = Arc::new(id.spec());
        let inv = FracIdeal::maximal(&spec).inverse().map_err(e2s)?;
        ensure(inv == FracIdeal::power_of_t(&spec, 0), || format!("{id}: M^-1 = {}", inv.describe()))?;
    }
    Ok("all four premises Yes on both domains, M^-1 = k'[[T]]".into())
}

fn conductor_identity() -> Check {
    let spec = Arc::new(SemigroupRingSpec::f2_semi23());
    let f = spec.field().clone();
    for prec in [8, 16, 32] {
        let t2 = RingElement::new(&spec, TruncSeries::monomial(&f, f.one(), 2, prec)).map_err(e2s)?;
        let t3 = RingElement::new(&spec, TruncSeries::monomial(&f, f.one(), 3, prec)).map_err(e2s)?;
        let c = conductor_ideal(&t2, &t3).map_err(e2s)?;
        let m = FracIdeal::from_generators(&spec, &[t2.series().clone(), t3.series().clone()]).map_err(e2s)?;
        ensure(c == m, || format!("precision {prec}: conductor {}", c.describe()))?;
    }
    Ok("(T^2 :_D T^3) = (T^2, T^3) at precisions 8, 16, 32".into())
}

fn t_maximal_not_principal() -> Check {
    let spec = Arc::new(SemigroupRingSpec::f2_semi23());
    let (v, prof) = is_t_maximal_local(&spec).map_err(e2s)?;
    ensure(v.is_yes(), || format!("t-maximal: {v}"))?;
    ensure(!prof.principal && prof.generator_count == 2, || format!("{prof:?}"))?;
    Ok("M is t-maximal and needs two generators".into())
}

fn harness_ladder() -> Check {
    let s = search_certificate(DomainId::F2Dvr, "X^2 + X", 2, 8).map_err(e2s)?;
    ensure(s.outcome == SearchOutcome::CertificateFound, || format!("control: {:?}", s.outcome))?;
    ensure(s.reverified == Some(true), || "control certificate fails at precision 16".into())?;
    let mut lines = Vec::new();
    for id in [DomainId::F2Semi23, DomainId::F2Tf4] {
        let recs = run_ladder(id, "X^2 + X", &DEFAULT_LADDER, RunOptions { deterministic: true }).map_err(e2s)?;
        let v = check_monotone(&recs);
        ensure(v.is_empty(), || format!("{id}: {v:?}"))?;
        for r in &recs {
            if r.outcome == Some(SearchOutcome::CertificateFound) {
                ensure(r.reverified == Some(true), || format!("{id} ({}, {}) not reverified", r.degree, r.precision))?;
            }
            ensure(r.outcome != Some(SearchOutcome::Inconclusive), || format!("{id} inconclusive at {}", r.degree))?;
        }
        let found = recs.iter().filter(|r| r.outcome == Some(SearchOutcome::CertificateFound)).count();
        lines.push(format!("{id}: {found} certificates in {} records", recs.len()));
    }
    Ok(format!("control found and reverified; {}", lines.join("; ")))
}

fn suite_clean(name: SuiteName, seed: u64, count: usize, allow_unknown: bool) -> Check {
    let r = run_suite(name, seed, count).map_err(e2s)?;
    ensure(r.violations.is_empty(), || format!("{:?}", &r.violations[..r.violations.len().min(3)]))?;
    ensure(allow_unknown || r.unknown == 0, || format!("{} unknown", r.unknown))?;
    ensure(r.cases > 0, || "no cases".into())?;
    Ok(format!("{} cases, seed {seed}, zero violations", r.cases))
}

fn prime_profile_instance() -> Check {
    let o = QuadOrder::sqrt(-3).map_err(e2s)?;
    let p = parse_lat_ideal(o, "(2, 1 + w)").map_err(e2s)?;
    let prof = prime_profile(&p).map_err(e2s)?;
    let want = [
        ("principal", Outcome::No),
        ("locally_principal", Outcome::No),
        ("ass", Outcome::Yes),
        ("wass", Outcome::Yes),
        ("t_ideal", Outcome::Yes),
        ("t_maximal", Outcome::Yes),
        ("t_invertible", Outcome::No),
    ];
    for ((name, v), (wname, w)) in prof.rows().iter().zip(want) {
        ensure(*name == wname && v.outcome == w, || format!("{name}: {v}, expected {w}"))?;
    }
    let wit = prof.ass.witness.clone().unwrap_or_default();
    ensure(wit.contains("(2)") && wit.contains("(1 + w)"), || format!("Ass witness {wit}"))?;
    let mut n = 0;
    for m in [-1, -3, -5] {
        for pr in profile_primes(QuadOrder::sqrt(m).map_err(e2s)?, 100).map_err(e2s)? {
            ensure(pr.is_consistent(), || format!("{}: {:?}", pr.prime, pr.diagram_violations()))?;
            n += 1;
        }
    }
    Ok(format!("profile matches; diagram consistent on {n} primes"))
}

fn localization_instance() -> Check {
    for p in [2, 3, 5] {
        let v = localization_check(&DomainHandle::Integers, MultSet::PrimeComplement(p), 6).map_err(e2s)?;
        ensure(v.is_yes(), || format!("p = {p}: {v}"))?;
    }
    let v = interchange_check(&DomainHandle::Integers, 2, 3, 5).map_err(e2s)?;
    ensure(v.is_yes(), || format!("interchange: {v}"))?;
    Ok("localization Yes for p = 2, 3, 5; interchange Yes".into())
}

/// Determinant of the evaluation matrix `C(a,i)C(b,j)` on `{0..d}^2`.
fn binomial_grid_determinant(d: usize) -> BigRational {
    let binom = |n: usize, k: usize| -> i64 {
        if k > n {
            return 0;
        }
        (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
    };
    let idx: Vec<(usize, usize)> = (0..=d).flat_map(|i| (0..=d).map(move |j| (i, j))).collect();
    let mut m: Vec<Vec<BigRational>> = idx
        .iter()
        .map(|&(a, b)| {
            idx.iter()
                .map(|&(i, j)| BigRational::from_integer(BigInt::from(binom(a, i) * binom(b, j))))
                .collect()
        })
        .collect();
    let n = m.len();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(r) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return BigRational::zero();
        };
        if r != c {
            m.swap(r, c);
            det = -det;
        }
        let piv = m[c][c].clone();
        det *= &piv;
        for r in c + 1..n {
            let f = &m[r][c] / &piv;
            if f.is_zero() {
                continue;
            }
            for k in c..n {
                let t = &f * &m[c][k];
                m[r][k] -= t;
            }
        }
    }
    det
}

fn theta_bivariate() -> Check {
    let r = theta_check_bivariate(4).map_err(e2s)?;
    ensure(r.verdict.is_yes(), || format!("theta: {}", r.verdict))?;
    let det = binomial_grid_determinant(4);
    ensure(det.abs().is_one(), || format!("evaluation determinant {det}"))?;
    Ok("theta Yes at (4,4); evaluation matrix on the 5x5 grid is unimodular".into())
}

fn soundness() -> Check {
    let base = suite_clean(SuiteName::Soundness, 2024, 1000, true)?;
    for id in [DomainId::F2Semi23, DomainId::F2Tf4] {
        let a = verify_chain(id, 16).map_err(e2s)?;
        let b = verify_chain(id, 32).map_err(e2s)?;
        for (x, y) in a.items.iter().zip(&b.items) {
            if !x.verdict.is_unknown() {
                ensure(x.verdict.outcome == y.verdict.outcome, || format!("{id}: {} flips", x.name))?;
            }
        }
    }
    let m = run_suite(SuiteName::Mpalpha, 2024, 300).map_err(e2s)?;
    ensure(m.violations.is_empty(), || format!("{:?}", m.violations))?;
    Ok(format!("{base}; premise verdicts stable from 16 to 32"))
}

#[test]
fn acceptance() {
    let criteria: Vec<(&str, Duration, Box<dyn Fn() -> Check>)> = vec![
        ("binomial basis denominators", Duration::from_secs(5), Box::new(binomial_denominators)),
        ("non-flatness premises", Duration::from_secs(20), Box::new(premises)),
        ("conductor identity", Duration::from_secs(10), Box::new(conductor_identity)),
        ("t-maximal but not principal", Duration::from_secs(10), Box::new(t_maximal_not_principal)),
        ("certificate ladder", Duration::from_secs(120), Box::new(harness_ladder)),
        (
            "star operation axioms",
            Duration::from_secs(60),
            Box::new(|| suite_clean(SuiteName::Star, 7, 1000, false)),
        ),
        (
            "t-invertible t-primes",
            Duration::from_secs(60),
            Box::new(|| suite_clean(SuiteName::Tinv, 0, 1, false)),
        ),
        ("prime profile and diagram", Duration::from_secs(60), Box::new(prime_profile_instance)),
        ("localization and interchange", Duration::from_secs(10), Box::new(localization_instance)),
        ("bivariate binomial products", Duration::from_secs(30), Box::new(theta_bivariate)),
        ("verdicts stable at doubled precision", Duration::from_secs(120), Box::new(soundness)),
    ];
    let mut failed = Vec::new();
    for (k, (name, limit, check)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let res = check();
        let took = started.elapsed();
        let res = res.and_then(|d| {
            if took <= *limit {
                Ok(d)
            } else {
                Err(format!("took {took:.1?}, limit {limit:?}"))
            }
        });
        // written to the handle directly so the lines survive output capture
        let line = match &res {
            Ok(d) => format!("PASS {:>2} {name} ({took:.2?}): {d}", k + 1),
            Err(e) => {
                failed.push(k + 1);
                format!("FAIL {:>2} {name} ({took:.2?}): {e}", k + 1)
            }
        };
        writeln!(std::io::stdout().lock(), "{line}").unwrap();
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
