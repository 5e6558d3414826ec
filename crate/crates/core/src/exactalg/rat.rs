use super::poly::Poly;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// p-adic valuation of a nonzero integer.
pub fn vp_int(n: &BigInt, p: u64) -> Option<u32> {
    if n.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut k = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return Some(k);
        }
        n = q;
        k += 1;
    }
}

/// p-adic valuation of a nonzero rational.
pub fn vp(x: &Rat, p: u64) -> Option<i64> {
    Some(vp_int(x.numer(), p)? as i64 - vp_int(x.denom(), p)? as i64)
}

pub fn is_p_integral(x: &Rat, p: u64) -> bool {
    x.is_zero() || vp_int(x.denom(), p) == Some(0)
}

/// Legendre's formula ν_p(k!).
pub fn legendre(k: u64, p: u64) -> u32 {
    let mut s = 0;
    let mut q = p;
    while q <= k {
        s += (k / q) as u32;
        q = match q.checked_mul(p) {
            Some(x) => x,
            None => break,
        };
    }
    s
}

pub fn factorial(k: u64) -> BigInt {
    (1..=k).fold(BigInt::one(), |a, b| a * BigInt::from(b))
}

/// Falling factorial `X(X-1)...(X-k+1)` over ℚ.
pub fn falling_factorial(k: usize) -> Poly<Rat> {
    let mut f = Poly::constant(Rat::one());
    for j in 0..k {
        let lin = Poly::new(vec![int(-(j as i64)), Rat::one()]);
        f = f.mul(&lin).expect("rational arithmetic is infallible");
    }
    f
}

/// Binomial polynomial `C(X, k)`.
pub fn binomial_poly(k: usize) -> Poly<Rat> {
    let inv = Rat::new(BigInt::one(), factorial(k as u64));
    falling_factorial(k).scale(&inv).expect("rational arithmetic is infallible")
}

/// Least common multiple of the coefficient denominators.
pub fn common_denominator(f: &Poly<Rat>) -> BigInt {
    f.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_matches_factorial() {
        for k in 0..12u64 {
            for p in [2u64, 3, 5, 7] {
                assert_eq!(vp_int(&factorial(k), p).unwrap(), legendre(k, p));
            }
        }
    }

    #[test]
    fn binomial_evaluates() {
        let f = binomial_poly(2);
        assert_eq!(f.eval(&int(5)).unwrap(), int(10));
        assert_eq!(vp(&rat(12, 5), 2), Some(2));
        assert_eq!(vp(&rat(3, 8), 2), Some(-3));
    }
}
