use super::lattice::Lat2;
use super::order::{QuadElem, QuadOrder};
use crate::error::{Error, Result};
use crate::exactalg::Rat;
use crate::verdict::Verdict;
use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use std::fmt;

/// Fractional ideal `scale·[a, b + ω]` of a quadratic order, with
/// `a > 0`, `0 ≤ b < a` and `a | b² + t b + n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatIdeal {
    order: QuadOrder,
    a: BigInt,
    b: BigInt,
    scale: Rat,
}

impl LatIdeal {
    fn from_lat(order: QuadOrder, l: &Lat2) -> Result<LatIdeal> {
        if !l.a.is_multiple_of(&l.c) || !l.b.is_multiple_of(&l.c) {
            return Err(Error::InvalidArgument("lattice is not closed under multiplication by w".into()));
        }
        let out = LatIdeal {
            order,
            a: &l.a / &l.c,
            b: &l.b / &l.c,
            scale: Rat::new(l.c.clone(), l.den.clone()),
        };
        let w = order.omega();
        for g in out.basis() {
            if !out.contains(&g.mul(&w)) {
                return Err(Error::InvalidArgument("lattice is not closed under multiplication by w".into()));
            }
        }
        Ok(out)
    }

    fn lat(&self) -> Lat2 {
        let [u, v] = self.basis();
        Lat2::from_vectors(&[(u.x, u.y), (v.x, v.y)]).expect("ideal lattices have rank 2")
    }

    /// D-module generated by `gens`.
    pub fn from_generators(order: QuadOrder, gens: &[QuadElem]) -> Result<LatIdeal> {
        let w = order.omega();
        let mut vs = Vec::new();
        for g in gens {
            if g.order != order {
                return Err(Error::InvalidArgument("generator from a different order".into()));
            }
            let gw = g.mul(&w);
            vs.push((g.x.clone(), g.y.clone()));
            vs.push((gw.x, gw.y));
        }
        let l = Lat2::from_vectors(&vs).ok_or(Error::ZeroIdeal)?;
        Self::from_lat(order, &l)
    }

    pub fn principal(a: &QuadElem) -> Result<LatIdeal> {
        Self::from_generators(a.order, std::slice::from_ref(a))
    }

    pub fn unit(order: QuadOrder) -> LatIdeal {
        Self::principal(&order.int_elem(1, 0)).expect("nonzero")
    }

    /// The lattice `scale·⟨a, b + cω⟩` given as a literal triple.
    pub fn from_triple(order: QuadOrder, a: i64, b: i64, c: i64, scale: Rat) -> Result<LatIdeal> {
        if a == 0 || c == 0 || scale.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        let u = order.int_elem(a, 0).scale(&scale);
        let v = order.int_elem(b, c).scale(&scale);
        let l = Lat2::from_vectors(&[(u.x, u.y), (v.x, v.y)]).ok_or(Error::ZeroIdeal)?;
        Self::from_lat(order, &l)
    }

    pub fn order(&self) -> QuadOrder {
        self.order
    }

    /// Normal-form triple `(a, b, c)` with `c = 1` and the scale.
    pub fn normal_form(&self) -> (BigInt, BigInt, BigInt, Rat) {
        (self.a.clone(), self.b.clone(), BigInt::one(), self.scale.clone())
    }

    pub fn basis(&self) -> [QuadElem; 2] {
        let o = self.order;
        [
            o.elem(Rat::from_integer(self.a.clone()), Rat::zero()).scale(&self.scale),
            o.elem(Rat::from_integer(self.b.clone()), Rat::one()).scale(&self.scale),
        ]
    }

    pub fn contains(&self, x: &QuadElem) -> bool {
        self.lat().contains(&(x.x.clone(), x.y.clone()))
    }

    pub fn contains_ideal(&self, o: &LatIdeal) -> bool {
        self.lat().contains_lattice(&o.lat())
    }

    fn same_order(&self, o: &LatIdeal) -> Result<()> {
        if self.order != o.order {
            return Err(Error::InvalidArgument("ideals of different orders".into()));
        }
        Ok(())
    }

    pub fn mul(&self, o: &LatIdeal) -> Result<LatIdeal> {
        self.same_order(o)?;
        let mut gens = Vec::new();
        for x in self.basis() {
            for y in o.basis() {
                gens.push(x.mul(&y));
            }
        }
        let vs: Vec<(Rat, Rat)> = gens.into_iter().map(|g| (g.x, g.y)).collect();
        Self::from_lat(self.order, &Lat2::from_vectors(&vs).ok_or(Error::ZeroIdeal)?)
    }

    pub fn add(&self, o: &LatIdeal) -> Result<LatIdeal> {
        self.same_order(o)?;
        Self::from_lat(self.order, &self.lat().sum(&o.lat()))
    }

    pub fn intersect(&self, o: &LatIdeal) -> Result<LatIdeal> {
        self.same_order(o)?;
        Self::from_lat(self.order, &self.lat().intersect(&o.lat()))
    }

    pub fn scale_by(&self, x: &QuadElem) -> Result<LatIdeal> {
        if x.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        let gens: Vec<QuadElem> = self.basis().iter().map(|g| g.mul(x)).collect();
        Self::from_generators(self.order, &gens)
    }

    /// `{x : x·o ⊆ self} = ∩_j j⁻¹·self` over a basis `j` of `o`.
    pub fn colon(&self, o: &LatIdeal) -> Result<LatIdeal> {
        self.same_order(o)?;
        let [j1, j2] = o.basis();
        let l1 = self.scale_by(&j1.inv()?)?;
        let l2 = self.scale_by(&j2.inv()?)?;
        l1.intersect(&l2)
    }

    pub fn inverse(&self) -> Result<LatIdeal> {
        LatIdeal::unit(self.order).colon(self)
    }

    pub fn v_closure(&self) -> Result<LatIdeal> {
        self.inverse()?.inverse()
    }

    /// Same as [`LatIdeal::v_closure`]: every `LatIdeal` is finitely generated.
    pub fn t_closure(&self) -> Result<LatIdeal> {
        self.v_closure()
    }

    pub fn is_integral(&self) -> bool {
        LatIdeal::unit(self.order).contains_ideal(self)
    }

    pub fn is_unit_ideal(&self) -> bool {
        *self == LatIdeal::unit(self.order)
    }

    /// `[D : I]` as a rational number (an integer for integral ideals).
    pub fn norm(&self) -> Rat {
        self.lat().covolume()
    }

    /// Decides principality. Exact for imaginary orders; real orders yield `Unknown`.
    pub fn principal_generator(&self) -> Verdict {
        if !self.order.is_imaginary() {
            return Verdict::unknown("principality search needs a definite norm form");
        }
        // primitive part [a, b + w] is principal iff it has an element of norm a
        let (t, n) = (BigInt::from(self.order.trace()), BigInt::from(self.order.norm_param()));
        let a = &self.a;
        let b = &self.b;
        let disc = (&t * &t - BigInt::from(4) * &n).abs();
        // Q(X, v) = (X + tv/2)² + |disc| v²/4 with X ≡ v b (mod a)
        let vmax: BigInt = (BigInt::from(4) * a / &disc).sqrt() + 1;
        let r: BigInt = a.sqrt() + 1;
        let mut v = -vmax.clone();
        while v <= vmax {
            let mid = -(&t * &v).div_floor(&BigInt::from(2));
            let mut x: BigInt = &mid - &r - 1;
            let xmax: BigInt = &mid + &r + 1;
            while x <= xmax {
                if (&x - &v * b).is_multiple_of(a) && &x * &x + &t * &x * &v + &n * &v * &v == *a {
                    let g = self
                        .order
                        .elem(Rat::from_integer(x), Rat::from_integer(v.clone()))
                        .scale(&self.scale);
                    return Verdict::yes().with_witness(format!("generated by {g}"));
                }
                x += 1;
            }
            v += 1;
        }
        Verdict::no(format!("no element of norm {} in the primitive part", self.a))
    }

    /// Residue characteristic `p` if the ideal is a nonzero prime.
    pub fn prime_below(&self) -> Result<u64> {
        if !self.is_integral() || self.is_unit_ideal() {
            return Err(Error::NotPrime(format!("{self} is not a proper integral ideal")));
        }
        let idx = self.norm().to_integer();
        let n = idx
            .to_u64()
            .ok_or_else(|| Error::NotPrime("index too large".into()))?;
        if crate::exactalg::ff::is_prime_u64(n) {
            return Ok(n);
        }
        let p = n.sqrt();
        if p * p == n && crate::exactalg::ff::is_prime_u64(p) {
            let pd = LatIdeal::principal(&self.order.int_elem(p as i64, 0))?;
            let p = p as i64;
            let irreducible = (0..p).all(|x| self.order.minpoly_mod(x, p) != 0);
            if *self == pd && irreducible {
                return Ok(p as u64);
            }
        }
        Err(Error::NotPrime(format!("{self} has index {n}")))
    }

    pub fn describe(&self) -> String {
        let second = if self.b.is_zero() {
            "w".to_string()
        } else {
            format!("{} + w", self.b)
        };
        let inner = format!("[{}, {second}]", self.a);
        if self.scale.is_one() {
            inner
        } else {
            format!("({})·{inner}", self.scale)
        }
    }
}

impl fmt::Display for LatIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

pub fn lat_v_closure(i: &LatIdeal) -> Result<LatIdeal> {
    i.v_closure()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LatOp {
    Mul,
    Colon,
}

pub fn lat_arith(i: &LatIdeal, j: &LatIdeal, op: LatOp) -> Result<LatIdeal> {
    match op {
        LatOp::Mul => i.mul(j),
        LatOp::Colon => i.colon(j),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TInvertibility {
    pub product: String,
    pub closure: String,
}

/// `(I⁻¹ I)_v = D`, with the product or the proper obstruction as witness.
pub fn t_invertible(i: &LatIdeal) -> Result<(Verdict, TInvertibility)> {
    let prod = i.inverse()?.mul(i)?;
    let pv = prod.v_closure()?;
    let info = TInvertibility {
        product: prod.describe(),
        closure: pv.describe(),
    };
    let v = if pv.is_unit_ideal() {
        Verdict::yes().with_witness(format!("I⁻¹I = {prod}"))
    } else {
        Verdict::no(format!("(I⁻¹I)_v = {pv} ≠ D"))
    };
    Ok((v, info))
}

/// All nonzero primes of norm at most `bound`.
pub fn primes_up_to_norm(order: QuadOrder, bound: u64) -> Result<Vec<LatIdeal>> {
    let mut out = Vec::new();
    for p in 2..=bound {
        if !crate::exactalg::ff::is_prime_u64(p) {
            continue;
        }
        let pi = p as i64;
        let roots: Vec<i64> = (0..pi).filter(|&x| order.minpoly_mod(-x, pi) == 0).collect();
        for b in &roots {
            // [p, b + w] has index p exactly when N(b + w) ≡ 0 mod p
            out.push(LatIdeal::from_triple(order, pi, *b, 1, Rat::one())?);
        }
        if roots.is_empty() && p * p <= bound {
            out.push(LatIdeal::principal(&order.int_elem(pi, 0))?);
        }
    }
    Ok(out)
}

/// Random integral ideal generated by up to three small elements.
pub fn random_ideal(order: QuadOrder, rng: &mut impl rand::Rng) -> LatIdeal {
    loop {
        let k = rng.gen_range(1..=3);
        let gens: Vec<QuadElem> = (0..k)
            .map(|_| order.int_elem(rng.gen_range(-12..=12), rng.gen_range(-12..=12)))
            .collect();
        if let Ok(i) = LatIdeal::from_generators(order, &gens) {
            return i;
        }
    }
}

pub fn random_elem(order: QuadOrder, rng: &mut impl rand::Rng) -> QuadElem {
    loop {
        let den = rng.gen_range(1..=4);
        let x = order.elem(
            Rat::new(rng.gen_range(-9..=9).into(), BigInt::from(den)),
            Rat::new(rng.gen_range(-9..=9).into(), BigInt::from(den)),
        );
        if !x.is_zero() {
            return x;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z3() -> QuadOrder {
        QuadOrder::sqrt(-3).unwrap()
    }

    fn p2() -> LatIdeal {
        let o = z3();
        LatIdeal::from_generators(o, &[o.int_elem(2, 0), o.int_elem(1, 1)]).unwrap()
    }

    #[test]
    fn principal_inverse() {
        let o = z3();
        let a = o.int_elem(1, 1);
        let i = LatIdeal::principal(&a).unwrap();
        assert_eq!(i.inverse().unwrap(), LatIdeal::principal(&a.inv().unwrap()).unwrap());
    }

    #[test]
    fn conductor_prime_is_a_colon() {
        let o = z3();
        let two = LatIdeal::principal(&o.int_elem(2, 0)).unwrap();
        let b = LatIdeal::principal(&o.int_elem(1, 1)).unwrap();
        assert_eq!(two.colon(&b).unwrap().intersect(&LatIdeal::unit(o)).unwrap(), p2());
        let c = lat_arith(&two, &b, LatOp::Colon).unwrap();
        let half = o.elem(Rat::new(1.into(), 2.into()), Rat::new((-1).into(), 2.into()));
        assert_eq!(c, LatIdeal::principal(&half).unwrap());
        assert!(!c.is_integral());
        assert_eq!(LatIdeal::unit(o).mul(&p2()).unwrap(), p2());
    }

    #[test]
    fn closures() {
        let o = z3();
        let six = LatIdeal::principal(&o.int_elem(6, 0)).unwrap();
        assert_eq!(lat_v_closure(&six).unwrap(), six);
        assert_eq!(lat_v_closure(&p2()).unwrap(), p2());
        assert!(lat_v_closure(&LatIdeal::unit(o)).unwrap().is_unit_ideal());
    }

    #[test]
    fn t_invertibility() {
        let (v, info) = t_invertible(&p2()).unwrap();
        assert!(v.is_no());
        assert_eq!(info.closure, p2().describe());
        let o = z3();
        let r = LatIdeal::principal(&o.int_elem(0, 1)).unwrap();
        assert!(t_invertible(&r).unwrap().0.is_yes());
        let zi = QuadOrder::sqrt(-1).unwrap();
        let two = LatIdeal::principal(&zi.int_elem(2, 0)).unwrap();
        assert!(t_invertible(&two).unwrap().0.is_yes());
    }

    #[test]
    fn primality_and_principality() {
        assert_eq!(p2().prime_below().unwrap(), 2);
        assert!(p2().principal_generator().is_no());
        let o = z3();
        let r = LatIdeal::principal(&o.int_elem(0, 1)).unwrap();
        assert!(r.principal_generator().is_yes());
        let five = LatIdeal::principal(&o.int_elem(5, 0)).unwrap();
        assert_eq!(five.prime_below().unwrap(), 5);
        let six = LatIdeal::principal(&o.int_elem(6, 0)).unwrap();
        assert!(matches!(six.prime_below(), Err(Error::NotPrime(_))));
        let primes = primes_up_to_norm(o, 30).unwrap();
        assert!(primes.iter().all(|p| p.prime_below().is_ok()));
        assert!(primes.contains(&p2()) && primes.contains(&five));
    }
}
