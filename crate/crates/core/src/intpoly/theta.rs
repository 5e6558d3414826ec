use crate::error::{Error, Result};
use crate::exactalg::rat::{binomial_poly, legendre};
use crate::exactalg::zlinalg::IntHnf;
use crate::exactalg::Rat;
use crate::verdict::Verdict;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

/// Largest residue grid scanned for one prime.
pub const MAX_GRID: u64 = 1 << 24;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeWindow {
    pub prime: u64,
    /// Denominators of bidegree-`(d,d)` elements divide this prime power.
    pub modulus: u64,
    /// `[Int(ℤ²)≤(d,d) : ℤ[X,Y]≤(d,d)]` at this prime, as a power of the prime.
    pub index_exponent: u32,
    pub spans: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThetaReport {
    pub degree: usize,
    pub products: usize,
    pub injective: bool,
    pub primes: Vec<PrimeWindow>,
    pub verdict: Verdict,
}

fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n)
        .filter(|&p| (2..p).take_while(|q| q * q <= p).all(|q| p % q != 0))
        .collect()
}

fn inv_mod(a: u64, m: u64) -> u64 {
    let e = BigInt::from(a).extended_gcd(&BigInt::from(m));
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(&BigInt::from(m)).to_u64().expect("reduced modulo m")
}

/// Coefficient vectors, indexed by `a·(d+1) + b` for `X^a Y^b`, of
/// `C(X,i)·C(Y,j)`.
fn binomial_products(d: usize) -> Vec<Vec<Rat>> {
    let cs: Vec<Vec<Rat>> = (0..=d)
        .map(|k| {
            let mut c = binomial_poly(k).coeffs().to_vec();
            c.resize(d + 1, Rat::zero());
            c
        })
        .collect();
    let mut out = Vec::with_capacity((d + 1) * (d + 1));
    for ci in &cs {
        for cj in &cs {
            let mut v = Vec::with_capacity((d + 1) * (d + 1));
            for a in ci {
                for b in cj {
                    v.push(a * b);
                }
            }
            out.push(v);
        }
    }
    out
}

/// Generators of `{g ∈ (ℤ/p^e)^n : g(x,y) = 0 for all x, y ∈ ℤ/p^e}`.
fn kernel_mod(d: usize, p: u64, e: u32) -> Vec<Vec<u64>> {
    let m = p.pow(e);
    let n = (d + 1) * (d + 1);
    let mut gens: Vec<Vec<u64>> = (0..n)
        .map(|k| {
            let mut v = vec![0; n];
            v[k] = 1;
            v
        })
        .collect();
    let val = |x: u64| -> u32 {
        if x == 0 {
            e
        } else {
            let mut s = 0;
            let mut x = x;
            while x.is_multiple_of(p) {
                x /= p;
                s += 1;
            }
            s
        }
    };
    let mut monomials = vec![0u64; n];
    for x in 0..m {
        let px: Vec<u64> = (0..=d).scan(1u64, |acc, _| {
            let r = *acc;
            *acc = *acc * x % m;
            Some(r)
        }).collect();
        for y in 0..m {
            let mut py = 1u64;
            let mut pys = Vec::with_capacity(d + 1);
            for _ in 0..=d {
                pys.push(py);
                py = py * y % m;
            }
            for a in 0..=d {
                for b in 0..=d {
                    monomials[a * (d + 1) + b] = px[a] * pys[b] % m;
                }
            }
            let vals: Vec<u64> = gens
                .iter()
                .map(|g| g.iter().zip(&monomials).fold(0, |s, (c, t)| (s + c * t) % m))
                .collect();
            let Some(r) = (0..n).min_by_key(|&k| val(vals[k])) else {
                continue;
            };
            let s = val(vals[r]);
            if s == e {
                continue;
            }
            let ps = p.pow(s);
            let uinv = inv_mod(vals[r] / ps, m);
            let pivot = gens[r].clone();
            for (k, g) in gens.iter_mut().enumerate() {
                if k == r || vals[k] == 0 {
                    continue;
                }
                let q = (vals[k] / ps) % m * uinv % m;
                for (c, pc) in g.iter_mut().zip(&pivot) {
                    *c = (*c + m - q * pc % m) % m;
                }
            }
            let scale = p.pow(e - s);
            for c in gens[r].iter_mut() {
                *c = *c * scale % m;
            }
        }
    }
    gens
}

fn lattice_with_modulus(rows: Vec<Vec<BigInt>>, n: usize, m: u64) -> IntHnf {
    let mut rows = rows;
    for k in 0..n {
        let mut v = vec![BigInt::zero(); n];
        v[k] = BigInt::from(m);
        rows.push(v);
    }
    IntHnf::new(&rows, n)
}

fn check_prime(d: usize, p: u64, products: &[Vec<Rat>]) -> Result<PrimeWindow> {
    let n = (d + 1) * (d + 1);
    let e = 2 * legendre(d as u64, p);
    let m = p
        .checked_pow(e)
        .filter(|m| m.checked_mul(*m).is_some_and(|g| g <= MAX_GRID))
        .ok_or_else(|| Error::ResourceLimit(format!("residue grid modulo {p}^{e} is too large")))?;
    let kernel = kernel_mod(d, p, e);
    let int_side = lattice_with_modulus(
        kernel
            .iter()
            .map(|g| g.iter().map(|&c| BigInt::from(c)).collect())
            .collect(),
        n,
        m,
    );
    let mb = BigInt::from(m);
    let span_side = lattice_with_modulus(
        products
            .iter()
            .map(|v| {
                v.iter()
                    .map(|c| {
                        let c = c * Rat::from_integer(mb.clone());
                        let den = c.denom().mod_floor(&mb).to_u64().expect("small");
                        let inv = BigInt::from(inv_mod(den, m));
                        (c.numer() * inv).mod_floor(&mb)
                    })
                    .collect()
            })
            .collect(),
        n,
        m,
    );
    let index = int_side.index().expect("full rank");
    let spans = int_side.rows() == span_side.rows();
    let mut index_exponent = n as u32 * e;
    let mut rest = index;
    while rest > BigInt::one() && (&rest % p).is_zero() {
        rest /= p;
        index_exponent -= 1;
    }
    Ok(PrimeWindow {
        prime: p,
        modulus: m,
        index_exponent,
        spans,
    })
}

/// Checks at bidegree `≤ (d,d)` that `Int(ℤ)⊗Int(ℤ) → Int(ℤ²)` is onto and one-to-one.
pub fn theta_check_bivariate(d: usize) -> Result<ThetaReport> {
    let products = binomial_products(d);
    let n = products.len();
    let scale = Rat::from_integer(crate::exactalg::rat::factorial(d as u64).pow(2));
    let cleared: Vec<Vec<BigInt>> = products
        .iter()
        .map(|v| v.iter().map(|c| (c * &scale).to_integer()).collect())
        .collect();
    let injective = IntHnf::new(&cleared, n).rank() == n;
    let mut primes = Vec::new();
    let mut verdict = Verdict::decide(injective, || "binomial products are linearly dependent".into());
    for p in primes_up_to(d as u64) {
        let w = match check_prime(d, p, &products) {
            Ok(w) => w,
            Err(Error::ResourceLimit(r)) => {
                verdict = verdict.and(Verdict::unknown(r));
                continue;
            }
            Err(e) => return Err(e),
        };
        if !w.spans {
            verdict = verdict.and(Verdict::no(format!(
                "an element of Int(Z^2) with {p}-power denominator is not in the span of C(X,i)C(Y,j)"
            )));
        }
        primes.push(w);
    }
    Ok(ThetaReport {
        degree: d,
        products: n,
        injective,
        primes,
        verdict: verdict.at_degree(d),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_degrees() {
        for d in 0..=3 {
            let r = theta_check_bivariate(d).unwrap();
            assert!(r.verdict.is_yes(), "d = {d}: {}", r.verdict);
            assert!(r.injective);
        }
    }

    // the kernel modulo 4 at d = 2 against a direct scan of (ℤ/4)^9
    #[test]
    fn kernel_matches_brute_force() {
        let d = 2;
        let w = check_prime(d, 2, &binomial_products(d)).unwrap();
        assert_eq!(w.modulus, 4);
        let mut count = 0u64;
        for code in 0..4u32.pow(9) {
            let g: Vec<u32> = (0..9).map(|k| (code >> (2 * k)) & 3).collect();
            let ok = (0..4u32).all(|x| {
                (0..4u32).all(|y| {
                    let mut s = 0;
                    for a in 0..3 {
                        for b in 0..3 {
                            s += g[a * 3 + b] * x.pow(a as u32) * y.pow(b as u32);
                        }
                    }
                    s % 4 == 0
                })
            });
            if ok {
                count += 1;
            }
        }
        // index of ℤ[X,Y] in Int at 2 equals |kernel mod 4|
        assert_eq!(count, 2u64.pow(w.index_exponent));
        // C(X,2)C(Y,2) contributes 2^2, C(X,2)C(Y,j<2) and symmetric 2 each
        assert_eq!(w.index_exponent, 6);
    }
}
