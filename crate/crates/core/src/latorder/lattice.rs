use crate::exactalg::Rat;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Full-rank lattice `(1/den)·⟨(a, 0), (b, c)⟩ ⊂ ℚ²` in canonical form:
/// `0 ≤ b < a`, `c > 0`, `den` minimal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Lat2 {
    pub den: BigInt,
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

type V = (Rat, Rat);

impl Lat2 {
    /// Lattice spanned by `vs`; `None` if the span has rank < 2.
    pub fn from_vectors(vs: &[V]) -> Option<Lat2> {
        let den = vs
            .iter()
            .fold(BigInt::one(), |d, (x, y)| d.lcm(x.denom()).lcm(y.denom()));
        let ints: Vec<(BigInt, BigInt)> = vs
            .iter()
            .map(|(x, y)| {
                (
                    (x * Rat::from_integer(den.clone())).to_integer(),
                    (y * Rat::from_integer(den.clone())).to_integer(),
                )
            })
            .collect();
        let mut pivot: Option<(BigInt, BigInt)> = None;
        let mut a = BigInt::zero();
        for (x, y) in ints {
            let mut v = (x, y);
            if let Some(mut p) = pivot.take() {
                // Euclid on the second coordinate
                while !v.1.is_zero() {
                    let q = p.1.div_floor(&v.1);
                    p = (&p.0 - &q * &v.0, &p.1 - &q * &v.1);
                    std::mem::swap(&mut p, &mut v);
                }
                a = a.gcd(&v.0);
                pivot = Some(p);
            } else if v.1.is_zero() {
                a = a.gcd(&v.0);
            } else {
                pivot = Some(v);
            }
        }
        let (mut b, mut c) = pivot?;
        if a.is_zero() {
            return None;
        }
        if c.is_negative() {
            b = -b;
            c = -c;
        }
        b = b.mod_floor(&a);
        let g = den.gcd(&a).gcd(&b).gcd(&c);
        Some(Lat2 {
            den: den / &g,
            a: a / &g,
            b: b / &g,
            c: c / &g,
        })
    }

    pub fn basis(&self) -> [V; 2] {
        let r = |n: &BigInt| Rat::new(n.clone(), self.den.clone());
        [(r(&self.a), Rat::zero()), (r(&self.b), r(&self.c))]
    }

    pub fn contains(&self, v: &V) -> bool {
        let d = Rat::from_integer(self.den.clone());
        let (x, y) = (&v.0 * &d, &v.1 * &d);
        if !x.is_integer() || !y.is_integer() {
            return false;
        }
        let (x, y) = (x.to_integer(), y.to_integer());
        let (k, r) = y.div_rem(&self.c);
        if !r.is_zero() {
            return false;
        }
        (x - k * &self.b).is_multiple_of(&self.a)
    }

    pub fn contains_lattice(&self, o: &Lat2) -> bool {
        o.basis().iter().all(|v| self.contains(v))
    }

    /// Dual lattice under the coordinate dot product.
    pub fn dual(&self) -> Lat2 {
        let ac = &self.a * &self.c;
        let s = |n: BigInt| Rat::new(n * &self.den, ac.clone());
        let v1 = (s(self.c.clone()), s(-self.b.clone()));
        let v2 = (Rat::zero(), s(self.a.clone()));
        Lat2::from_vectors(&[v1, v2]).expect("dual of a full-rank lattice has full rank")
    }

    pub fn sum(&self, o: &Lat2) -> Lat2 {
        let [a, b] = self.basis();
        let [c, d] = o.basis();
        Lat2::from_vectors(&[a, b, c, d]).expect("full rank")
    }

    pub fn intersect(&self, o: &Lat2) -> Lat2 {
        self.dual().sum(&o.dual()).dual()
    }

    /// Covolume `a c / den²`.
    pub fn covolume(&self) -> Rat {
        Rat::new(&self.a * &self.c, &self.den * &self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: i64, y: i64) -> V {
        (Rat::from_integer(x.into()), Rat::from_integer(y.into()))
    }

    #[test]
    fn canonical_form() {
        let l = Lat2::from_vectors(&[v(4, 2), v(2, 2), v(6, 0)]).unwrap();
        let m = Lat2::from_vectors(&[v(2, 0), v(0, 2)]).unwrap();
        assert_eq!(l, m);
        assert_eq!(l.dual().dual(), l);
        assert!(Lat2::from_vectors(&[v(1, 1), v(2, 2)]).is_none());
    }

    #[test]
    fn intersection() {
        let a = Lat2::from_vectors(&[v(2, 0), v(0, 1)]).unwrap();
        let b = Lat2::from_vectors(&[v(3, 0), v(0, 1)]).unwrap();
        let c = Lat2::from_vectors(&[v(6, 0), v(0, 1)]).unwrap();
        assert_eq!(a.intersect(&b), c);
        assert!(a.contains_lattice(&c) && !c.contains_lattice(&a));
    }
}
