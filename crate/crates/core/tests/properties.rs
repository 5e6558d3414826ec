use intstar::exactalg::rat::{binomial_poly, vp};
use intstar::exactalg::{Fe, FiniteField, Poly, Rat, TruncSeries, EXACT};
use intstar::intpoly::{graded_basis, int_member, mpalpha_member, DomainHandle, IvPoly, PadicAlgebraic, Target};
use intstar::latorder::{random_elem, random_ideal as random_lat_ideal, QuadOrder};
use intstar::psring::{random_element, random_ideal, FracIdeal, SemigroupRingSpec};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

fn f4() -> Arc<FiniteField> {
    FiniteField::by_name("F4").unwrap()
}

fn series_strategy(prec: i64) -> impl Strategy<Value = TruncSeries> {
    (-3i64..3, prop::collection::vec(0u16..4, 0..8)).prop_map(move |(start, cs)| {
        let f = f4();
        let coeffs: Vec<Fe> = cs.into_iter().map(Fe).collect();
        TruncSeries::from_coeffs(&f, start, &coeffs, prec)
    })
}

fn small_rat() -> impl Strategy<Value = Rat> {
    (-12i64..=12, 1i64..=8).prop_map(|(n, d)| Rat::new(BigInt::from(n), BigInt::from(d)))
}

fn rational_poly() -> impl Strategy<Value = Poly<Rat>> {
    prop::collection::vec(small_rat(), 1..6).prop_map(Poly::new)
}

/// `Σ c_k C(X, k)` with integer `c_k`.
fn integer_valued() -> impl Strategy<Value = Poly<Rat>> {
    prop::collection::vec(-9i64..=9, 1..7).prop_map(|cs| {
        cs.iter().enumerate().fold(Poly::zero(), |acc, (k, &c)| {
            acc.add(&binomial_poly(k).scale(&Rat::from_integer(c.into())).unwrap()).unwrap()
        })
    })
}

fn z_member(f: &Poly<Rat>) -> bool {
    let v = int_member(&DomainHandle::Integers, &IvPoly::Rational(f.clone()), &Target::Ring).unwrap();
    assert!(!v.is_unknown());
    v.is_yes()
}

/// Integer values on 41 consecutive integers; sufficient once that exceeds the degree.
fn integral_on_window(f: &Poly<Rat>) -> bool {
    (-20i64..=20).all(|a| f.eval(&Rat::from_integer(a.into())).unwrap().is_integer())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn series_ring_axioms(a in series_strategy(12), b in series_strategy(10), c in series_strategy(EXACT)) {
        let l = a.add(&b).unwrap().add(&c).unwrap();
        let r = a.add(&b.add(&c).unwrap()).unwrap();
        prop_assert!(l.eq_to_precision(&r));
        let l = a.mul(&b.add(&c).unwrap()).unwrap();
        let r = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
        prop_assert!(l.eq_to_precision(&r));
        prop_assert!(a.mul(&b).unwrap().eq_to_precision(&b.mul(&a).unwrap()));
    }

    #[test]
    fn series_inverse(a in series_strategy(16)) {
        prop_assume!(!a.is_zero());
        let one = a.mul(&a.inv().unwrap()).unwrap();
        prop_assert!(one.eq_to_precision(&TruncSeries::one(a.field(), EXACT)));
    }

    #[test]
    fn sum_precision_is_the_minimum(a in series_strategy(9), b in series_strategy(14)) {
        let s = a.add(&b).unwrap();
        prop_assert_eq!(s.precision(), 9);
    }

    #[test]
    fn int_z_matches_evaluation(f in rational_poly()) {
        prop_assert_eq!(z_member(&f), integral_on_window(&f));
    }

    #[test]
    fn int_z_is_a_ring(f in integer_valued(), g in integer_valued()) {
        prop_assert!(z_member(&f) && z_member(&g));
        prop_assert!(z_member(&f.add(&g).unwrap()));
        prop_assert!(z_member(&f.mul(&g).unwrap()));
        prop_assert!(z_member(&f.neg()));
    }

    #[test]
    fn graded_basis_spans(f in integer_valued()) {
        let d = f.degree().unwrap_or(0);
        let basis: Vec<Poly<Rat>> = graded_basis(&DomainHandle::Integers, d)
            .unwrap()
            .generators()
            .map(|g| g.as_rational().unwrap().clone())
            .collect();
        prop_assert_eq!(basis.len(), d + 1);
        // triangular elimination from the top degree; every coefficient must be an integer
        let mut rest = f.clone();
        for k in (0..=d).rev() {
            let b = &basis[k];
            prop_assert_eq!(b.degree(), Some(k));
            let c = rest.coeff(k).cloned().unwrap_or_else(Rat::zero) / b.coeff(k).unwrap();
            prop_assert!(c.is_integer(), "coefficient {} at degree {}", c, k);
            rest = rest.sub(&b.scale(&c).unwrap()).unwrap();
        }
        prop_assert!(rest.is_zero());
    }

    #[test]
    fn mpalpha_at_integers_matches_valuation(f in integer_valued(), a in -20i64..20, pi in 0usize..3) {
        let p = [2u64, 3, 5][pi];
        let alpha = PadicAlgebraic::integer(p, a, 48).unwrap();
        let v = mpalpha_member(p, &alpha, &IvPoly::Rational(f.clone()), 48).unwrap();
        let value = f.eval(&Rat::from_integer(a.into())).unwrap();
        let want = vp(&value, p).is_none_or(|e| e >= 1);
        if !v.is_unknown() {
            prop_assert_eq!(v.is_yes(), want, "f = {}, a = {}, p = {}", IvPoly::Rational(f), a, p);
        }
    }

    #[test]
    fn v_closure_is_a_closure_on_quadratic_orders(seed in any::<u64>(), m in prop::sample::select(vec![-1i64, -3, -5, -7, 5])) {
        let o = QuadOrder::sqrt(m).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let i = random_lat_ideal(o, &mut rng);
        let j = random_lat_ideal(o, &mut rng);
        let x = random_elem(o, &mut rng);
        let iv = i.v_closure().unwrap();
        prop_assert!(iv.contains_ideal(&i));
        prop_assert_eq!(iv.v_closure().unwrap(), iv.clone());
        prop_assert!(i.add(&j).unwrap().v_closure().unwrap().contains_ideal(&iv));
        prop_assert_eq!(i.scale_by(&x).unwrap().v_closure().unwrap(), iv.scale_by(&x).unwrap());
        let ii = i.mul(&i.inverse().unwrap()).unwrap();
        prop_assert!(ii.is_integral());
    }

    #[test]
    fn v_closure_is_a_closure_on_series_rings(seed in any::<u64>(), which in 0usize..3) {
        let spec = Arc::new(match which {
            0 => SemigroupRingSpec::f2_semi23(),
            1 => SemigroupRingSpec::f2_tf4(),
            _ => SemigroupRingSpec::new(FiniteField::prime(2).unwrap(), vec![3, 4, 5], Default::default(), None).unwrap(),
        });
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let i = random_ideal(&spec, &mut rng);
        let j = random_ideal(&spec, &mut rng);
        let x = random_element(&spec, &mut rng, 4);
        let iv = i.v_closure().unwrap();
        prop_assert!(iv.contains_ideal(&i));
        prop_assert_eq!(iv.v_closure().unwrap(), iv.clone());
        prop_assert!(i.add(&j).unwrap().v_closure().unwrap().contains_ideal(&iv));
        prop_assert_eq!(i.scale(&x).unwrap().v_closure().unwrap(), iv.scale(&x).unwrap());
        let px = FracIdeal::principal(&spec, &x).unwrap();
        prop_assert_eq!(px.v_closure().unwrap(), px);
    }
}

#[test]
fn binomials_are_integer_valued_and_halves_are_not() {
    for k in 0..10 {
        let b = binomial_poly(k);
        assert!(z_member(&b));
        if k > 0 {
            let half = b.scale(&Rat::new(BigInt::one(), BigInt::from(2))).unwrap();
            assert!(!z_member(&half), "C(X,{k})/2");
        }
    }
}
