use crate::error::{Error, Result};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

/// Element of a [`FiniteField`]: the index `c0 + c1*p` of `c0 + c1*g`,
/// where `g` is the fixed root of the defining quadratic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fe(pub u16);

/// F_q with q = p or q = p^2, p ≤ 97.
pub struct FiniteField {
    p: u16,
    e: u8,
    q: u16,
    // g^2 = m1*g + m0 when e = 2
    m0: u16,
    m1: u16,
    exp: Vec<u16>,
    log: Vec<u16>,
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl fmt::Display for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e
    }
}

impl Eq for FiniteField {}

impl std::hash::Hash for FiniteField {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        (self.p, self.e).hash(state);
    }
}

pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn cache() -> &'static Mutex<HashMap<(u16, u8), Arc<FiniteField>>> {
    static CACHE: OnceLock<Mutex<HashMap<(u16, u8), Arc<FiniteField>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

impl FiniteField {
    /// Returns the (cached) field with `p^e` elements.
    pub fn new(p: u16, e: u8) -> Result<Arc<FiniteField>> {
        if !(2..=97).contains(&p) || !is_prime_u64(p as u64) {
            return Err(Error::InvalidField(format!("characteristic {p} is not a prime ≤ 97")));
        }
        if !(1..=2).contains(&e) {
            return Err(Error::InvalidField(format!("degree {e} not in {{1, 2}}")));
        }
        let mut guard = cache().lock().expect("field cache poisoned");
        if let Some(f) = guard.get(&(p, e)) {
            return Ok(f.clone());
        }
        let f = Arc::new(Self::build(p, e)?);
        guard.insert((p, e), f.clone());
        Ok(f)
    }

    pub fn prime(p: u16) -> Result<Arc<FiniteField>> {
        Self::new(p, 1)
    }

    /// Parses names like `F2`, `F4`, `F49`.
    pub fn by_name(name: &str) -> Result<Arc<FiniteField>> {
        let q: u32 = name
            .trim()
            .strip_prefix('F')
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::InvalidField(format!("cannot parse field name {name:?}")))?;
        if q <= 97 && is_prime_u64(q as u64) {
            return Self::new(q as u16, 1);
        }
        let r = (q as f64).sqrt().round() as u32;
        for p in r.saturating_sub(1)..=r + 1 {
            if p * p == q && is_prime_u64(p as u64) && p <= 97 {
                return Self::new(p as u16, 2);
            }
        }
        Err(Error::InvalidField(format!("{name} is not F_p or F_(p^2) with p ≤ 97")))
    }

    fn build(p: u16, e: u8) -> Result<FiniteField> {
        let q = p.pow(e as u32);
        let (m0, m1) = if e == 2 {
            Self::find_irreducible(p)
        } else {
            (0, 0)
        };
        let mut f = FiniteField {
            p,
            e,
            q,
            m0,
            m1,
            exp: Vec::new(),
            log: Vec::new(),
        };
        let order = (q - 1) as usize;
        let gen = (1..q)
            .find(|&a| f.naive_order(a) == order)
            .ok_or_else(|| Error::InvalidField(format!("no primitive element in F{q}")))?;
        let mut exp = Vec::with_capacity(order);
        let mut log = vec![0u16; q as usize];
        let mut x = 1u16;
        for i in 0..order {
            exp.push(x);
            log[x as usize] = i as u16;
            x = f.naive_mul(x, gen);
        }
        f.exp = exp;
        f.log = log;
        f.check_axioms()?;
        Ok(f)
    }

    fn find_irreducible(p: u16) -> (u16, u16) {
        for m1 in 0..p {
            for m0 in 1..p {
                // x^2 - m1 x - m0 has no root in F_p
                let has_root = (0..p).any(|r| {
                    let v = (r as u32 * r as u32 + (p - m1) as u32 * r as u32 + (p - m0) as u32) % p as u32;
                    v == 0
                });
                if !has_root {
                    return (m0, m1);
                }
            }
        }
        unreachable!("every prime field has an irreducible quadratic")
    }

    fn naive_mul(&self, a: u16, b: u16) -> u16 {
        let p = self.p as u32;
        if self.e == 1 {
            return ((a as u32 * b as u32) % p) as u16;
        }
        let (a0, a1) = (a as u32 % p, a as u32 / p);
        let (b0, b1) = (b as u32 % p, b as u32 / p);
        let hi = a1 * b1 % p;
        let c0 = (a0 * b0 + hi * self.m0 as u32) % p;
        let c1 = (a0 * b1 + a1 * b0 + hi * self.m1 as u32) % p;
        (c0 + c1 * p) as u16
    }

    fn naive_order(&self, a: u16) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 1 {
            x = self.naive_mul(x, a);
            k += 1;
            if k > self.q as usize {
                return 0;
            }
        }
        k
    }

    fn check_axioms(&self) -> Result<()> {
        let q = self.q;
        let triples: Vec<(u16, u16, u16)> = if q <= 16 {
            let mut v = Vec::new();
            for a in 0..q {
                for b in 0..q {
                    for c in 0..q {
                        v.push((a, b, c));
                    }
                }
            }
            v
        } else {
            // deterministic LCG sample
            let mut s: u64 = 0x9E37_79B9_7F4A_7C15 ^ q as u64;
            let mut next = || {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                ((s >> 33) % q as u64) as u16
            };
            (0..4000).map(|_| (next(), next(), next())).collect()
        };
        let bad = |what: &str| Error::InvalidField(format!("F{q} fails {what}"));
        for (a, b, c) in triples {
            let (a, b, c) = (Fe(a), Fe(b), Fe(c));
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                return Err(bad("associativity of multiplication"));
            }
            if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                return Err(bad("associativity of addition"));
            }
            if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                return Err(bad("distributivity"));
            }
            if self.mul(a, b) != self.mul(b, a) || self.add(a, b) != self.add(b, a) {
                return Err(bad("commutativity"));
            }
        }
        for a in self.elements() {
            if a != self.zero() && self.mul(a, self.inv(a).ok_or_else(|| bad("inverses"))?) != self.one() {
                return Err(bad("inverses"));
            }
            if self.add(a, self.neg(a)) != self.zero() {
                return Err(bad("negation"));
            }
        }
        let mut seen = vec![false; q as usize];
        for a in self.elements() {
            let fa = self.frobenius(a);
            if std::mem::replace(&mut seen[fa.0 as usize], true) {
                return Err(bad("Frobenius bijectivity"));
            }
        }
        Ok(())
    }

    pub fn characteristic(&self) -> u16 {
        self.p
    }

    pub fn degree(&self) -> u8 {
        self.e
    }

    pub fn order(&self) -> u16 {
        self.q
    }

    pub fn name(&self) -> String {
        format!("F{}", self.q)
    }

    pub fn zero(&self) -> Fe {
        Fe(0)
    }

    pub fn one(&self) -> Fe {
        Fe(1)
    }

    /// The root `g` of the defining quadratic (only meaningful when e = 2).
    pub fn generator(&self) -> Fe {
        if self.e == 2 {
            Fe(self.p)
        } else {
            Fe(1)
        }
    }

    pub fn from_int(&self, n: i64) -> Fe {
        Fe(n.rem_euclid(self.p as i64) as u16)
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.q).map(Fe)
    }

    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        let p = self.p;
        if self.e == 1 {
            return Fe((a.0 + b.0) % p);
        }
        let c0 = (a.0 % p + b.0 % p) % p;
        let c1 = (a.0 / p + b.0 / p) % p;
        Fe(c0 + c1 * p)
    }

    pub fn neg(&self, a: Fe) -> Fe {
        let p = self.p;
        let c0 = (p - a.0 % p) % p;
        let c1 = (p - a.0 / p) % p;
        Fe(c0 + c1 * p)
    }

    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 || b.0 == 0 {
            return Fe(0);
        }
        let n = (self.q - 1) as usize;
        let s = self.log[a.0 as usize] as usize + self.log[b.0 as usize] as usize;
        Fe(self.exp[s % n])
    }

    pub fn inv(&self, a: Fe) -> Option<Fe> {
        if a.0 == 0 {
            return None;
        }
        let n = (self.q - 1) as usize;
        let l = self.log[a.0 as usize] as usize;
        Some(Fe(self.exp[(n - l) % n]))
    }

    pub fn pow(&self, a: Fe, k: u64) -> Fe {
        if k == 0 {
            return Fe(1);
        }
        if a.0 == 0 {
            return Fe(0);
        }
        let n = (self.q - 1) as u64;
        let l = self.log[a.0 as usize] as u64;
        Fe(self.exp[((l * (k % n)) % n) as usize])
    }

    pub fn frobenius(&self, a: Fe) -> Fe {
        self.pow(a, self.p as u64)
    }

    /// Coordinates over the prime field in the basis `1, g`.
    pub fn prime_coords(&self, a: Fe) -> [u16; 2] {
        [a.0 % self.p, a.0 / self.p]
    }

    pub fn from_prime_coords(&self, c0: u16, c1: u16) -> Fe {
        Fe(c0 % self.p + (c1 % self.p) * self.p * (self.e as u16 - 1))
    }

    pub fn in_prime_subfield(&self, a: Fe) -> bool {
        a.0 < self.p
    }

    pub fn format(&self, a: Fe) -> String {
        let [c0, c1] = self.prime_coords(a);
        match (c1, c0) {
            (0, c) => c.to_string(),
            (1, 0) => "g".to_string(),
            (k, 0) => format!("{k}g"),
            (1, c) => format!("(g+{c})"),
            (k, c) => format!("({k}g+{c})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f4_arithmetic() {
        let f = FiniteField::by_name("F4").unwrap();
        let g = f.generator();
        // g^2 = g + 1 over F2
        assert_eq!(f.mul(g, g), f.add(g, f.one()));
        assert_eq!(f.pow(g, 3), f.one());
        assert!(f.in_prime_subfield(f.one()));
        assert!(!f.in_prime_subfield(g));
    }

    #[test]
    fn every_small_field_builds() {
        for p in [2u16, 3, 5, 7, 11, 13] {
            for e in [1u8, 2] {
                if p.pow(e as u32) <= 16 || e == 1 {
                    FiniteField::new(p, e).unwrap();
                }
            }
        }
        let big = FiniteField::new(97, 2).unwrap();
        assert_eq!(big.order(), 9409);
    }

    #[test]
    fn rejects_bad_fields() {
        assert!(FiniteField::new(4, 1).is_err());
        assert!(FiniteField::new(101, 1).is_err());
        assert!(FiniteField::new(2, 3).is_err());
        assert!(FiniteField::by_name("F8").is_err());
        assert_eq!(FiniteField::by_name("F9").unwrap().degree(), 2);
    }
}
