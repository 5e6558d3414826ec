use super::member::int_member;
use super::{DomainHandle, IvPoly, Target};
use crate::error::{Error, Result};
use crate::exactalg::rat::{common_denominator, vp_int};
use crate::exactalg::Rat;
use crate::verdict::Verdict;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// An algebraic `α ∈ ℤ_p` given by its minimal polynomial and an
/// approximation `α ≡ approx (mod p^precision)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadicAlgebraic {
    p: u64,
    minpoly: Vec<BigInt>,
    approx: BigInt,
    precision: u32,
}

fn eval(c: &[BigInt], x: &BigInt) -> BigInt {
    c.iter().rev().fold(BigInt::zero(), |acc, a| acc * x + a)
}

fn derivative(c: &[BigInt]) -> Vec<BigInt> {
    c.iter()
        .enumerate()
        .skip(1)
        .map(|(i, a)| a * BigInt::from(i))
        .collect()
}

fn val(x: &BigInt, p: u64) -> Option<u32> {
    vp_int(x, p)
}

impl PadicAlgebraic {
    /// Lifts `start` to a root of `minpoly` (coefficients in increasing
    /// degree) modulo `p^precision`, provided `v(f(start)) > 2 v(f'(start))`.
    pub fn hensel(p: u64, minpoly: &[i64], start: i64, precision: u32) -> Result<Self> {
        if !crate::exactalg::ff::is_prime_u64(p) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        if minpoly.len() < 2 || minpoly.last() == Some(&0) {
            return Err(Error::InvalidArgument("minimal polynomial must have positive degree".into()));
        }
        if !(1..=512).contains(&precision) {
            return Err(Error::InvalidArgument("precision must lie in 1..=512".into()));
        }
        let f: Vec<BigInt> = minpoly.iter().map(|&c| BigInt::from(c)).collect();
        let df = derivative(&f);
        let mut r = BigInt::from(start);
        let k = match val(&eval(&df, &r), p) {
            Some(k) => k,
            None => return Err(Error::InvalidArgument("f'(start) = 0: Hensel lifting does not apply".into())),
        };
        let fr = eval(&f, &r);
        if val(&fr, p).is_some_and(|v| v <= 2 * k) {
            return Err(Error::InvalidArgument(format!(
                "v(f({start})) must exceed 2·v(f'({start})) = {}",
                2 * k
            )));
        }
        let pk = BigInt::from(p).pow(k);
        let modulus = BigInt::from(p).pow(precision + 2 * k + 1);
        for _ in 0..200 {
            let fr = eval(&f, &r);
            // α ≡ r modulo p^{v(f(r)) - k}
            if val(&fr, p).is_none_or(|v| v >= precision + k) {
                let approx = r.mod_floor(&BigInt::from(p).pow(precision));
                return Ok(PadicAlgebraic {
                    p,
                    minpoly: f,
                    approx,
                    precision,
                });
            }
            let d = eval(&df, &r);
            let unit = (&d / &pk).mod_floor(&modulus);
            let inv = mod_inverse(&unit, &modulus).expect("unit part of f'(r) is prime to p");
            let step = (&fr / &pk).mod_floor(&modulus) * inv;
            r = (&r - step).mod_floor(&modulus);
        }
        Err(Error::PrecisionExhausted("Newton iteration did not converge".into()))
    }

    /// A rational integer root.
    pub fn integer(p: u64, a: i64, precision: u32) -> Result<Self> {
        Self::hensel(p, &[-a, 1], a, precision)
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn approximation(&self) -> &BigInt {
        &self.approx
    }

    /// `f(approx) ≡ 0 (mod p^precision)`.
    pub fn is_consistent(&self) -> bool {
        val(&eval(&self.minpoly, &self.approx), self.p).is_none_or(|v| v >= self.precision)
    }
}

impl fmt::Display for PadicAlgebraic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O({}^{})", self.approx, self.p, self.precision)
    }
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    e.gcd.abs().is_one().then(|| e.x.mod_floor(m))
}

/// Decides `f ∈ m_{p,α} = {f ∈ Int(ℤ) : f(α) ∈ pℤ_p}` from `α` modulo `p^n`.
pub fn mpalpha_member(p: u64, alpha: &PadicAlgebraic, f: &IvPoly, n: u32) -> Result<Verdict> {
    if alpha.p != p {
        return Err(Error::InvalidArgument(format!("α is {}-adic, not {p}-adic", alpha.p)));
    }
    let g = f.as_rational()?;
    let z = DomainHandle::Integers;
    let iv = int_member(&z, f, &Target::Ring)?;
    if !iv.is_yes() {
        return Err(Error::NotIntegerValued(format!("{f}: {iv}")));
    }
    let n = n.min(alpha.precision);
    let den = common_denominator(g);
    let a = val(&den, p).unwrap_or(0);
    let modulus = BigInt::from(p).pow(n);
    // numerator polynomial with integer coefficients, evaluated at the approximation
    let num: Vec<BigInt> = g
        .coeffs()
        .iter()
        .map(|c| (c * Rat::from_integer(den.clone())).to_integer())
        .collect();
    let value = eval(&num, &alpha.approx).mod_floor(&modulus);
    let v = match val(&value, p) {
        Some(v) if v < n => {
            let fv = v as i64 - a as i64;
            let w = format!("v_{p}(f(α)) = {fv}");
            if fv >= 1 {
                Verdict::yes().with_witness(w)
            } else {
                Verdict::no(w)
            }
        }
        _ if n > a => Verdict::yes().with_witness(format!("v_{p}(f(α)) ≥ {}", n - a)),
        _ => Verdict::unknown(format!(
            "α known modulo {p}^{n}, denominator has valuation {a}"
        )),
    };
    Ok(v.at_precision(n as i64))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hensel_sqrt17() {
        let a = PadicAlgebraic::hensel(2, &[-17, 0, 1], 1, 20).unwrap();
        assert!(a.is_consistent());
        assert_eq!(a.approximation().mod_floor(&BigInt::from(8)), BigInt::from(1));
        let z = DomainHandle::Integers;
        let x = z.parse_poly("X").unwrap();
        assert!(mpalpha_member(2, &a, &x, 20).unwrap().is_no());
    }

    #[test]
    fn zero_point() {
        let z = DomainHandle::Integers;
        let a = PadicAlgebraic::integer(2, 0, 8).unwrap();
        assert!(mpalpha_member(2, &a, &z.parse_poly("X").unwrap(), 8).unwrap().is_yes());
        assert!(mpalpha_member(2, &a, &z.parse_poly("C(X,2)").unwrap(), 8).unwrap().is_yes());
        assert!(mpalpha_member(2, &a, &z.parse_poly("X + 1").unwrap(), 8).unwrap().is_no());
        let e = mpalpha_member(2, &a, &z.parse_poly("X/2").unwrap(), 8).unwrap_err();
        assert!(matches!(e, Error::NotIntegerValued(_)));
    }

    #[test]
    fn unresolved_valuation() {
        let z = DomainHandle::Integers;
        let a = PadicAlgebraic::integer(2, 0, 8).unwrap();
        // C(X,8) has 2-adic denominator 2^7 and vanishes at 0 to any precision
        let f = z.parse_poly("C(X,8)").unwrap();
        assert!(mpalpha_member(2, &a, &f, 3).unwrap().is_unknown());
        assert!(mpalpha_member(2, &a, &f, 8).unwrap().is_yes());
    }
}
