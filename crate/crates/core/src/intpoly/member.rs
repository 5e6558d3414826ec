use super::{DomainHandle, IvPoly, Target};
use crate::error::{Error, Result};
use crate::exactalg::rat::vp_int;
use crate::exactalg::{Poly, Rat, TruncSeries, EXACT};
use crate::latorder::{LatIdeal, QuadElem, QuadOrder};
use crate::psring::{FracIdeal, SemigroupRingSpec, MAX_REPS};
use crate::verdict::Verdict;
use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;
use std::fmt;
use std::sync::Arc;

/// Decides `f(D) ⊆ target` exactly, or returns `Unknown` when the
/// coefficients are not known to enough precision.
pub fn int_member(dom: &DomainHandle, f: &IvPoly, target: &Target) -> Result<Verdict> {
    let d = f.degree().unwrap_or(0);
    let v = match (dom, f) {
        (DomainHandle::Integers | DomainHandle::LocalizedIntegers(_), IvPoly::Rational(g)) => {
            rational_member(dom, g, target)?
        }
        (DomainHandle::DvrSeries(spec) | DomainHandle::SemigroupRing(spec), IvPoly::Series(g)) => {
            let module = match target {
                Target::Ring => FracIdeal::unit(spec),
                Target::Series(i) if i.spec() == spec => i.clone(),
                _ => return Err(incompatible(dom, target)),
            };
            series_member(spec, g, &module)?
        }
        (DomainHandle::QuadOrder(o), IvPoly::Quadratic(g)) => {
            let module = match target {
                Target::Ring => LatIdeal::unit(*o),
                Target::Lattice(i) if i.order() == *o => i.clone(),
                _ => return Err(incompatible(dom, target)),
            };
            quadratic_member(*o, g, &module)?
        }
        _ => {
            return Err(Error::InvalidArgument(format!(
                "polynomial is not over the quotient field of {dom}"
            )))
        }
    };
    Ok(v.at_degree(d))
}

/// [`int_member`] after truncating every series coefficient to `prec`.
pub fn int_member_at(dom: &DomainHandle, f: &IvPoly, target: &Target, prec: i64) -> Result<Verdict> {
    Ok(int_member(dom, &f.truncated(prec), target)?.at_precision(prec))
}

fn incompatible(dom: &DomainHandle, t: &Target) -> Error {
    Error::InvalidArgument(format!("target {} does not fit domain {dom}", t.describe()))
}

fn rational_member(dom: &DomainHandle, f: &Poly<Rat>, target: &Target) -> Result<Verdict> {
    let local = match dom {
        DomainHandle::LocalizedIntegers(p) => Some(*p),
        _ => None,
    };
    // integrality of a value, at one prime or everywhere
    let integral = |x: &Rat, at: Option<u64>| match at {
        Some(p) => vp_int(x.denom(), p) == Some(0),
        None => x.is_integer(),
    };
    let check: Box<dyn Fn(&Rat) -> bool> = match target {
        Target::Ring => Box::new(move |x| integral(x, local)),
        Target::IntegerIdeal(n) => {
            if n.is_zero() {
                return Err(Error::ZeroIdeal);
            }
            let n = Rat::from_integer(n.clone());
            Box::new(move |x| integral(&(x / &n), local))
        }
        Target::LocalizedAt(q) if local.is_none() || local == Some(*q) => {
            let q = *q;
            Box::new(move |x| integral(x, Some(q)))
        }
        _ => return Err(incompatible(dom, target)),
    };
    let d = f.degree().unwrap_or(0);
    // Newton expansion in C(X, k): values at 0..=d determine f(ℤ)
    for a in 0..=d as i64 {
        let v = f.eval(&Rat::from_integer(a.into()))?;
        if !check(&v) {
            return Ok(Verdict::no(format!("f({a}) = {v} is not in {}", target.describe())));
        }
    }
    Ok(Verdict::yes())
}

/// Points `x + yω` with `x, y ≥ 0`, `x + y ≤ d`.
fn quadratic_member(o: QuadOrder, f: &Poly<QuadElem>, module: &LatIdeal) -> Result<Verdict> {
    let d = f.degree().unwrap_or(0) as i64;
    for s in 0..=d {
        for y in 0..=s {
            let a = o.int_elem(s - y, y);
            let v = f.eval(&a)?;
            if !module.contains(&v) {
                return Ok(Verdict::no(format!("f({a}) = {v} is not in {module}")));
            }
        }
    }
    Ok(Verdict::yes())
}

/// Prime-field basis `β T^i`, `i < s`, of `D / (D ∩ T^s k'[[T]])`.
pub(crate) fn digit_basis(spec: &SemigroupRingSpec, s: i64) -> Vec<TruncSeries> {
    let mut out = Vec::new();
    for i in 0..s.max(0) {
        for b in spec.level_basis(i) {
            out.push(TruncSeries::monomial(spec.field(), b, i, EXACT));
        }
    }
    out
}

/// Digit vectors in `{0..p-1}^n` with digit sum at most `d`, ordered by
/// their value as base-`p` numbers (first digit least significant).
pub(crate) fn lower_set(n: usize, p: u16, d: usize) -> Result<Vec<Vec<u16>>> {
    let mut out = vec![vec![0u16; n]];
    for pos in 0..n {
        let mut next = Vec::new();
        for v in &out {
            let used: usize = v.iter().map(|&x| x as usize).sum();
            for digit in 1..p {
                if used + digit as usize > d {
                    break;
                }
                let mut w = v.clone();
                w[pos] = digit;
                next.push(w);
            }
        }
        out.extend(next);
        if out.len() > MAX_REPS {
            return Err(Error::ResourceLimit(format!(
                "more than {MAX_REPS} evaluation points"
            )));
        }
    }
    out.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev()));
    Ok(out)
}

pub(crate) fn digit_element(field: &Arc<crate::exactalg::FiniteField>, basis: &[TruncSeries], digits: &[u16]) -> Result<TruncSeries> {
    let mut x = TruncSeries::zero(field, EXACT);
    for (b, &c) in basis.iter().zip(digits) {
        if c != 0 {
            x = x.add(&b.scale(field.from_int(c as i64)))?;
        }
    }
    Ok(x)
}

/// Exponent `m ≥ 0` with `T^m f` having coefficients in `k'[[T]]`.
pub(crate) fn t_denominator(f: &Poly<TruncSeries>) -> i64 {
    f.coeffs()
        .iter()
        .map(|c| c.valuation_bound())
        .min()
        .map_or(0, |v| (-v).max(0))
}

/// Evaluation points for a series polynomial of degree `d` with
/// denominator `T^m` and target whose tail is `tail`: the lower set of
/// `D / (D ∩ T^{m+tail})`, which determines `f(D)` modulo the target.
pub(crate) fn series_eval_points(spec: &SemigroupRingSpec, d: usize, m: i64, tail: i64) -> Result<Vec<TruncSeries>> {
    let basis = digit_basis(spec, m + tail);
    let p = spec.field().characteristic();
    lower_set(basis.len(), p, d)?
        .iter()
        .map(|c| digit_element(spec.field(), &basis, c))
        .collect()
}

fn series_member(spec: &Arc<SemigroupRingSpec>, f: &Poly<TruncSeries>, module: &FracIdeal) -> Result<Verdict> {
    for c in f.coeffs() {
        if c.field() != spec.field() {
            return Err(Error::field_mismatch(c.field(), spec.field()));
        }
    }
    let d = f.degree().unwrap_or(0);
    let m = t_denominator(f);
    let mut unknown: Option<Verdict> = None;
    for a in series_eval_points(spec, d, m, module.tail())? {
        let v = f.eval(&a)?;
        let r = module.contains(&v);
        if r.is_no() {
            return Ok(Verdict::no(format!("f({a}) = {v} is not in {}", module.describe())));
        }
        if r.is_unknown() && unknown.is_none() {
            unknown = Some(Verdict::unknown(format!(
                "f({a}) = {v}: {}",
                r.exhausted.unwrap_or_default()
            )));
        }
    }
    Ok(unknown.unwrap_or_else(Verdict::yes))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Uniformizer {
    Prime(u64),
    T,
}

impl fmt::Display for Uniformizer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Uniformizer::Prime(p) => write!(f, "{p}"),
            Uniformizer::T => f.write_str("T"),
        }
    }
}

/// Valuation bounds on the coefficient denominators of `Int(D)` in degree
/// at most `d`, from Lagrange interpolation at `points`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DenominatorBound {
    pub degree: usize,
    pub points: Vec<String>,
    pub bounds: Vec<(Uniformizer, i64)>,
}

impl DenominatorBound {
    pub fn at(&self, u: Uniformizer) -> i64 {
        self.bounds.iter().find(|(v, _)| *v == u).map_or(0, |(_, b)| *b)
    }
}

/// The first `n` elements of the digit enumeration of `D`: the `k`-th
/// element has the base-`p` digits of `k` as coordinates on the ordered
/// monomial basis.
pub fn interpolation_points(spec: &SemigroupRingSpec, n: usize) -> Vec<TruncSeries> {
    let p = spec.field().characteristic() as usize;
    let mut len = 0;
    while p.pow(len as u32) < n.max(1) {
        len += 1;
    }
    let basis = spec.basis_elements(len);
    (0..n)
        .map(|k| {
            let mut k = k;
            let digits: Vec<u16> = (0..len)
                .map(|_| {
                    let d = (k % p) as u16;
                    k /= p;
                    d
                })
                .collect();
            digit_element(spec.field(), &basis, &digits).expect("same field")
        })
        .collect()
}

fn lagrange_bound(n: usize, v: impl Fn(usize, usize) -> i64) -> i64 {
    (0..n)
        .map(|i| (0..n).filter(|&j| j != i).map(|j| v(i, j)).sum::<i64>())
        .max()
        .unwrap_or(0)
}

pub fn denominator_bound(dom: &DomainHandle, d: usize) -> Result<DenominatorBound> {
    let n = d + 1;
    let int_points = || (0..n).map(|k| k.to_string()).collect::<Vec<_>>();
    let at_prime = |p: u64| {
        lagrange_bound(n, |i, j| {
            vp_int(&BigInt::from(i as i64 - j as i64), p).unwrap_or(0) as i64
        })
    };
    Ok(match dom {
        DomainHandle::Integers | DomainHandle::QuadOrder(_) => DenominatorBound {
            degree: d,
            points: int_points(),
            bounds: (2..=d as u64)
                .filter(|&p| crate::exactalg::ff::is_prime_u64(p))
                .map(|p| (Uniformizer::Prime(p), at_prime(p)))
                .collect(),
        },
        DomainHandle::LocalizedIntegers(p) => DenominatorBound {
            degree: d,
            points: int_points(),
            bounds: vec![(Uniformizer::Prime(*p), at_prime(*p))],
        },
        DomainHandle::DvrSeries(spec) | DomainHandle::SemigroupRing(spec) => {
            let pts = interpolation_points(spec, n);
            let b = lagrange_bound(n, |i, j| {
                pts[i]
                    .sub(&pts[j])
                    .ok()
                    .and_then(|x| x.valuation())
                    .unwrap_or(0)
            });
            DenominatorBound {
                degree: d,
                points: pts.iter().map(|x| x.to_string()).collect(),
                bounds: vec![(Uniformizer::T, b)],
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat::{binomial_poly, legendre};

    fn dom(name: &str) -> DomainHandle {
        DomainHandle::by_name(name).unwrap()
    }

    #[test]
    fn binomials_are_integer_valued() {
        let f = IvPoly::Rational(binomial_poly(2));
        assert!(int_member(&dom("Z"), &f, &Target::Ring).unwrap().is_yes());
        let g = IvPoly::Rational(binomial_poly(3).scale(&Rat::new(1.into(), 2.into())).unwrap());
        let v = int_member(&dom("Z"), &g, &Target::Ring).unwrap();
        assert!(v.is_no() && v.witness.unwrap().contains("f(3)"));
        assert!(int_member(&dom("Z_(3)"), &g, &Target::Ring).unwrap().is_yes());
    }

    #[test]
    fn series_examples() {
        let s23 = dom("F2_SEMI23");
        let f = s23.parse_poly("(X^2+X)/T^2").unwrap();
        let v = int_member(&s23, &f, &Target::Ring).unwrap();
        assert!(v.is_no());
        assert!(v.witness.as_deref().unwrap().starts_with("f(T^3) = T + T^4"), "{v}");
        let tf4 = dom("F2_TF4");
        let f = tf4.parse_poly("(X^2+X)/T").unwrap();
        let dp = Target::integral_closure(tf4.series_spec().unwrap());
        assert!(int_member(&tf4, &f, &dp).unwrap().is_yes());
        assert!(int_member(&tf4, &f, &Target::Ring).unwrap().is_no());
        let dvr = dom("F2_DVR");
        let v = int_member(&dvr, &dvr.parse_poly("X/T").unwrap(), &Target::Ring).unwrap();
        assert!(v.is_no() && v.witness.unwrap().starts_with("f(1)"));
    }

    #[test]
    fn truncated_coefficients_give_unknown() {
        let dvr = dom("F2_DVR");
        let f = dvr.parse_poly("X + T^5").unwrap();
        assert!(int_member(&dvr, &f, &Target::Ring).unwrap().is_yes());
        let s23 = dom("F2_SEMI23");
        let f = s23.parse_poly("X^2 + T^2").unwrap();
        assert!(int_member_at(&s23, &f, &Target::Ring, 1).unwrap().is_unknown());
        assert!(int_member_at(&s23, &f, &Target::Ring, 4).unwrap().is_yes());
    }

    #[test]
    fn quadratic_members() {
        let o = dom("Z[sqrt(-3)]");
        let f = o.parse_poly("(X^2 + X)/2").unwrap();
        assert!(int_member(&o, &f, &Target::Ring).unwrap().is_no());
        let g = o.parse_poly("(X^2 - X)*(X - w)").unwrap();
        assert!(int_member(&o, &g, &Target::Ring).unwrap().is_yes());
    }

    #[test]
    fn denominator_bounds() {
        let b = denominator_bound(&dom("Z"), 4).unwrap();
        assert_eq!(b.at(Uniformizer::Prime(2)), 3);
        for d in 0..10 {
            let b = denominator_bound(&dom("Z"), d).unwrap();
            for p in [2u64, 3, 5, 7] {
                assert_eq!(b.at(Uniformizer::Prime(p)), legendre(d as u64, p) as i64);
            }
        }
        let b = denominator_bound(&dom("F2_DVR"), 2).unwrap();
        assert_eq!(b.points, vec!["0", "1", "T"]);
        assert_eq!(b.at(Uniformizer::T), 1);
        assert_eq!(denominator_bound(&dom("F2_SEMI23"), 0).unwrap().at(Uniformizer::T), 0);
    }

    #[test]
    fn lower_set_order() {
        let v = lower_set(3, 2, 2).unwrap();
        assert_eq!(v.len(), 7);
        assert_eq!(v[0], vec![0, 0, 0]);
        assert_eq!(v[3], vec![1, 1, 0]);
        assert_eq!(v[4], vec![0, 0, 1]);
    }
}
