//! Brute-force membership in Int(D) for the series domains: a polynomial with
//! denominators at most T^k maps D into D iff it does so on every residue of
//! D modulo T^(k + c), c the conductor exponent.

use intstar::exactalg::{Fe, Poly, TruncSeries, EXACT};
use intstar::intpoly::{int_member_at, DomainHandle, IvPoly, Target};
use intstar::latorder::{QuadElem, QuadOrder};
use intstar::psring::SemigroupRingSpec;
use proptest::prelude::*;
use std::sync::Arc;

/// Every element of D truncated below T^n, as exact series.
fn residues(spec: &SemigroupRingSpec, n: i64) -> Vec<TruncSeries> {
    let f = spec.field();
    let mut out = vec![TruncSeries::zero(f, EXACT)];
    for i in 0..n {
        for b in spec.level_basis(i) {
            let m = TruncSeries::monomial(f, b, i, EXACT);
            let more: Vec<TruncSeries> = out.iter().map(|x| x.add(&m).unwrap()).collect();
            out.extend(more);
        }
    }
    out
}

fn in_ring(spec: &SemigroupRingSpec, x: &TruncSeries) -> bool {
    x.terms().all(|(e, c)| e >= spec.conductor() || (e >= 0 && spec.coeff_allowed(e, c)))
}

fn denominator_exponent(f: &Poly<TruncSeries>) -> i64 {
    f.coeffs().iter().filter_map(|c| c.valuation()).map(|v| (-v).max(0)).max().unwrap_or(0)
}

/// `None` when f maps D into D, else a residue where it fails.
fn residue_counterexample(spec: &SemigroupRingSpec, f: &Poly<TruncSeries>) -> Option<TruncSeries> {
    let n = denominator_exponent(f) + spec.conductor().max(1);
    residues(spec, n).into_iter().find(|a| !in_ring(spec, &f.eval(a).unwrap()))
}

fn parse(dom: &DomainHandle, s: &str) -> Poly<TruncSeries> {
    dom.parse_poly(s).unwrap().as_series().unwrap().clone()
}

fn same(a: &Poly<TruncSeries>, b: &Poly<TruncSeries>) -> bool {
    a.coeffs().len() == b.coeffs().len() && a.coeffs().iter().zip(b.coeffs()).all(|(x, y)| x.eq_to_precision(y))
}

fn series(dom: &DomainHandle, s: &str) -> TruncSeries {
    parse(dom, s).coeffs()[0].clone()
}

#[test]
fn tf4_combination_lies_in_m_int() {
    let dom = DomainHandle::by_name("F2_TF4").unwrap();
    let spec = dom.series_spec().unwrap().clone();
    let b6 = parse(&dom, "T^-2*(X^4 + X^2) + T^-1*(X^2 + X)");
    let b7 = parse(&dom, "g*T^-2*(X^4 + X^2) + (g + 1)*T^-1*(X^2 + X)");
    assert!(residue_counterexample(&spec, &b6).is_none());
    assert!(residue_counterexample(&spec, &b7).is_none());
    let (t, gt) = (series(&dom, "T"), series(&dom, "g*T"));
    // both scalars lie in the maximal ideal T·F4[[T]]
    assert!(t.valuation() == Some(1) && gt.valuation() == Some(1));
    let sum = b7
        .scale(&t)
        .unwrap()
        .add(&b6.scale(&gt).unwrap())
        .unwrap();
    assert!(same(&sum, &parse(&dom, "X^2 + X")));
}

#[test]
fn semi23_combination_lies_in_m_int() {
    let dom = DomainHandle::by_name("F2_SEMI23").unwrap();
    let spec = dom.series_spec().unwrap().clone();
    let b32 = parse(&dom, "T^-10*(X^8 + X^4) + T^-6*(X^4 + X^2)");
    let b33 = parse(&dom, "T^-9*(X^8 + X^4) + T^-5*(X^4 + X^2) + T^-2*(X^2 + X)");
    assert!(residue_counterexample(&spec, &b32).is_none());
    assert!(residue_counterexample(&spec, &b33).is_none());
    let quotient = b32.scale(&series(&dom, "T")).unwrap().add(&b33).unwrap();
    assert!(same(&quotient, &parse(&dom, "T^-2*(X^2 + X)")));
    // X^2 + X = T^3·b32 + T^2·b33 with T^2, T^3 in M
    let full = b32
        .scale(&series(&dom, "T^3"))
        .unwrap()
        .add(&b33.scale(&series(&dom, "T^2")).unwrap())
        .unwrap();
    assert!(same(&full, &parse(&dom, "X^2 + X")));
}

#[test]
fn quotient_by_t_is_not_integer_valued() {
    let dom = DomainHandle::by_name("F2_SEMI23").unwrap();
    let spec = dom.series_spec().unwrap().clone();
    assert!(residue_counterexample(&spec, &parse(&dom, "T^-1*(X^2 + X)")).is_some());
    assert!(residue_counterexample(&spec, &parse(&dom, "T^-2*(X^2 + X)")).is_some());
}

fn random_poly(spec: Arc<SemigroupRingSpec>) -> impl Strategy<Value = Poly<TruncSeries>> {
    let f = spec.field().clone();
    let order = f.order();
    prop::collection::vec(prop::collection::vec((-3i64..4, 1u16..order), 0..3), 1..4).prop_map(move |cs| {
        let coeffs = cs
            .iter()
            .map(|terms| {
                terms.iter().fold(TruncSeries::zero(&f, EXACT), |acc, &(e, c)| {
                    acc.add(&TruncSeries::monomial(&f, Fe(c), e, EXACT)).unwrap()
                })
            })
            .collect();
        Poly::new(coeffs)
    })
}

/// Sums of `c·T^e·h` with `h` among 1, X, X^2 + X, X^4 + X^2, X^4 + X: a
/// good share of these are integer-valued.
fn structured_poly(spec: Arc<SemigroupRingSpec>) -> impl Strategy<Value = Poly<TruncSeries>> {
    let f = spec.field().clone();
    let order = f.order();
    let shapes: [&[usize]; 5] = [&[0], &[1], &[1, 2], &[2, 4], &[1, 4]];
    prop::collection::vec((0usize..5, -4i64..3, 1u16..order), 1..4).prop_map(move |ts| {
        let mut acc = Poly::zero();
        for &(h, e, c) in &ts {
            let m = TruncSeries::monomial(&f, Fe(c), e, EXACT);
            for &k in shapes[h] {
                acc = acc.add(&Poly::monomial(m.clone(), k)).unwrap();
            }
        }
        acc
    })
}

fn agrees_with_enumeration(name: &str, f: Poly<TruncSeries>) -> Result<(), TestCaseError> {
    let dom = DomainHandle::by_name(name).unwrap();
    let spec = dom.series_spec().unwrap().clone();
    let brute = residue_counterexample(&spec, &f).is_none();
    let v = int_member_at(&dom, &IvPoly::Series(f.clone()), &Target::Ring, 40).unwrap();
    prop_assert!(!v.is_unknown(), "unknown on {}", IvPoly::Series(f.clone()));
    prop_assert_eq!(v.is_yes(), brute, "{} on {}: {}", name, IvPoly::Series(f), v);
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn semi23_membership_matches_enumeration(f in random_poly(Arc::new(SemigroupRingSpec::f2_semi23()))) {
        agrees_with_enumeration("F2_SEMI23", f)?;
    }

    #[test]
    fn tf4_membership_matches_enumeration(f in random_poly(Arc::new(SemigroupRingSpec::f2_tf4()))) {
        agrees_with_enumeration("F2_TF4", f)?;
    }

    #[test]
    fn structured_semi23_matches_enumeration(f in structured_poly(Arc::new(SemigroupRingSpec::f2_semi23()))) {
        agrees_with_enumeration("F2_SEMI23", f)?;
    }

    #[test]
    fn structured_tf4_matches_enumeration(f in structured_poly(Arc::new(SemigroupRingSpec::f2_tf4()))) {
        agrees_with_enumeration("F2_TF4", f)?;
    }

    #[test]
    fn dvr_membership_matches_enumeration(f in random_poly(Arc::new(SemigroupRingSpec::f2_dvr()))) {
        agrees_with_enumeration("F2_DVR", f)?;
    }
}

/// `g/n` maps Z[ω] into itself iff it does so on Z[ω]/nZ[ω], since
/// g(a + nh) − g(a) ∈ nZ[ω] for g with integral coefficients.
fn quad_residue_scan(m: i64, f: &Poly<QuadElem>, n: i64) -> bool {
    let o = QuadOrder::sqrt(m).unwrap();
    (0..n).all(|x| (0..n).all(|y| f.eval(&o.int_elem(x, y)).unwrap().is_integral()))
}

fn quad_poly_source(n: i64, cs: &[(i64, i64)]) -> String {
    let terms: Vec<String> = cs
        .iter()
        .enumerate()
        .map(|(k, &(a, b))| {
            let sign = if b < 0 { '-' } else { '+' };
            format!("({a} {sign} {}*w)*X^{k}", b.abs())
        })
        .collect();
    format!("1/{n}*({})", terms.join(" + "))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn quadratic_membership_matches_residue_scan(
        m in prop::sample::select(vec![-1i64, -3, -5, 2]),
        n in prop::sample::select(vec![2i64, 3, 4, 6]),
        cs in prop::collection::vec((-4i64..5, -4i64..5), 1..5),
    ) {
        let dom = DomainHandle::QuadOrder(QuadOrder::sqrt(m).unwrap());
        let src = quad_poly_source(n, &cs);
        let f = dom.parse_poly(&src).unwrap();
        let brute = quad_residue_scan(m, f.as_quadratic().unwrap(), n);
        let v = intstar::intpoly::int_member(&dom, &f, &Target::Ring).unwrap();
        prop_assert!(!v.is_unknown());
        prop_assert_eq!(v.is_yes(), brute, "{} over Z[sqrt({})]: {}", src, m, v);
    }
}

#[test]
fn quadratic_scan_sees_both_outcomes() {
    let f = |s: &str| DomainHandle::QuadOrder(QuadOrder::sqrt(-1).unwrap()).parse_poly(s).unwrap();
    // x^4 + x^2 = x^2(x^2 + 1) is even on 0, 1, i, 1 + i
    assert!(quad_residue_scan(-1, f("1/2*(X^4 + X^2)").as_quadratic().unwrap(), 2));
    assert!(!quad_residue_scan(-1, f("1/2*X").as_quadratic().unwrap(), 2));
    assert!(!quad_residue_scan(-1, f("1/2*(X^2 + X)").as_quadratic().unwrap(), 2));
}
