use crate::error::{Error, Result};
use crate::exactalg::{Coeff, Rat};
use crate::textfmt::{self, Key, Value};
use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// The order `ℤ[ω]` with `ω² = tω − n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QuadOrder {
    t: i64,
    n: i64,
}

impl QuadOrder {
    pub fn new(t: i64, n: i64) -> Result<Self> {
        if t.abs() > 1 << 20 || n.abs() > 1 << 40 {
            return Err(Error::InvalidSpec("order parameters too large".into()));
        }
        let d = t * t - 4 * n;
        if d >= 0 && d.sqrt() * d.sqrt() == d {
            return Err(Error::InvalidSpec(format!(
                "discriminant {d} is a square: ℤ[ω] is not a domain of rank 2 over ℤ"
            )));
        }
        Ok(QuadOrder { t, n })
    }

    /// `ℤ[√m]` for a non-square `m`.
    pub fn sqrt(m: i64) -> Result<Self> {
        Self::new(0, -m)
    }

    pub fn trace(&self) -> i64 {
        self.t
    }

    pub fn norm_param(&self) -> i64 {
        self.n
    }

    pub fn discriminant(&self) -> i64 {
        self.t * self.t - 4 * self.n
    }

    pub fn is_imaginary(&self) -> bool {
        self.discriminant() < 0
    }

    /// Minimal polynomial `x² − t x + n` evaluated modulo `p`.
    pub fn minpoly_mod(&self, x: i64, p: i64) -> i64 {
        (x * x - self.t * x + self.n).rem_euclid(p)
    }

    pub fn elem(&self, x: Rat, y: Rat) -> QuadElem {
        QuadElem { order: *self, x, y }
    }

    pub fn int_elem(&self, x: i64, y: i64) -> QuadElem {
        self.elem(Rat::from_integer(x.into()), Rat::from_integer(y.into()))
    }

    pub fn omega(&self) -> QuadElem {
        self.int_elem(0, 1)
    }

    pub fn describe(&self) -> String {
        if self.t == 0 {
            format!("Z[sqrt({})]", -self.n)
        } else {
            format!("Z[w], w^2 = {}w - {}", self.t, self.n)
        }
    }

    pub fn to_text(&self) -> String {
        let mut d = textfmt::Document::default();
        d.push(
            "order",
            Value::Map(vec![
                (Key::Ident("t".into()), Value::Int(self.t)),
                (Key::Ident("n".into()), Value::Int(self.n)),
            ]),
        );
        d.to_text()
    }

    pub fn from_text(src: &str) -> Result<Self> {
        let doc = textfmt::parse(src)?;
        let (v, off) = doc
            .get("order")
            .ok_or_else(|| Error::parse_at(src, src.len(), "missing key \"order\""))?;
        let Value::Map(kv) = v else {
            return Err(Error::parse_at(src, off, "order must be a map {t = .., n = ..}"));
        };
        let mut t = None;
        let mut n = None;
        for (k, v) in kv {
            match (k, v) {
                (Key::Ident(k), Value::Int(x)) if k == "t" => t = Some(*x),
                (Key::Ident(k), Value::Int(x)) if k == "n" => n = Some(*x),
                _ => return Err(Error::parse_at(src, off, "order entries are t = <int>, n = <int>")),
            }
        }
        match (t, n) {
            (Some(t), Some(n)) => Self::new(t, n),
            _ => Err(Error::parse_at(src, off, "order needs both t and n")),
        }
    }
}

impl fmt::Display for QuadOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

/// `x + yω` in the fraction field of a [`QuadOrder`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadElem {
    pub order: QuadOrder,
    pub x: Rat,
    pub y: Rat,
}

impl QuadElem {
    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn is_integral(&self) -> bool {
        self.x.is_integer() && self.y.is_integer()
    }

    pub fn add(&self, o: &QuadElem) -> QuadElem {
        self.order.elem(&self.x + &o.x, &self.y + &o.y)
    }

    pub fn sub(&self, o: &QuadElem) -> QuadElem {
        self.order.elem(&self.x - &o.x, &self.y - &o.y)
    }

    pub fn neg(&self) -> QuadElem {
        self.order.elem(-&self.x, -&self.y)
    }

    pub fn mul(&self, o: &QuadElem) -> QuadElem {
        let (t, n) = (Rat::from_integer(self.order.t.into()), Rat::from_integer(self.order.n.into()));
        let yy = &self.y * &o.y;
        let x = &self.x * &o.x - &n * &yy;
        let y = &self.x * &o.y + &o.x * &self.y + &t * &yy;
        self.order.elem(x, y)
    }

    pub fn scale(&self, r: &Rat) -> QuadElem {
        self.order.elem(&self.x * r, &self.y * r)
    }

    pub fn norm(&self) -> Rat {
        let (t, n) = (Rat::from_integer(self.order.t.into()), Rat::from_integer(self.order.n.into()));
        &self.x * &self.x + t * &self.x * &self.y + n * &self.y * &self.y
    }

    pub fn conj(&self) -> QuadElem {
        let t = Rat::from_integer(self.order.t.into());
        self.order.elem(&self.x + t * &self.y, -&self.y)
    }

    pub fn inv(&self) -> Result<QuadElem> {
        if self.is_zero() {
            return Err(Error::ZeroDivisorInput);
        }
        let nm = self.norm();
        Ok(self.conj().scale(&(Rat::one() / nm)))
    }

    pub fn div(&self, o: &QuadElem) -> Result<QuadElem> {
        Ok(self.mul(&o.inv()?))
    }

    /// Integer coordinates, if integral.
    pub fn int_coords(&self) -> Option<(BigInt, BigInt)> {
        self.is_integral()
            .then(|| (self.x.numer().clone(), self.y.numer().clone()))
    }
}

fn fmt_rat(r: &Rat) -> String {
    r.to_string()
}

impl fmt::Display for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (x, y) = (&self.x, &self.y);
        if y.is_zero() {
            return f.write_str(&fmt_rat(x));
        }
        let yw = if y.is_one() {
            "w".to_string()
        } else if (-y).is_one() {
            "-w".to_string()
        } else {
            format!("{}w", fmt_rat(y))
        };
        if x.is_zero() {
            f.write_str(&yw)
        } else if y.is_negative() {
            write!(f, "{} - {}", fmt_rat(x), yw.trim_start_matches('-'))
        } else {
            write!(f, "{} + {}", fmt_rat(x), yw)
        }
    }
}

impl Coeff for QuadElem {
    fn c_add(&self, o: &Self) -> Result<Self> {
        Ok(self.add(o))
    }
    fn c_mul(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(o))
    }
    fn c_neg(&self) -> Self {
        self.neg()
    }
    fn c_is_zero(&self) -> bool {
        self.is_zero()
    }
    fn c_zero(&self) -> Self {
        self.order.int_elem(0, 0)
    }
    fn c_one(&self) -> Self {
        self.order.int_elem(1, 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_in_z_sqrt_minus_3() {
        let o = QuadOrder::sqrt(-3).unwrap();
        let w = o.omega();
        assert_eq!(w.mul(&w), o.int_elem(-3, 0));
        let a = o.int_elem(1, 1);
        assert_eq!(a.norm(), Rat::from_integer(4.into()));
        assert_eq!(a.mul(&a.inv().unwrap()), o.int_elem(1, 0));
        assert!(QuadOrder::new(0, -4).is_err());
    }

    #[test]
    fn order_spec_round_trip() {
        let o = QuadOrder::from_text("order = {t = 0, n = 3}").unwrap();
        assert_eq!(o, QuadOrder::sqrt(-3).unwrap());
        assert_eq!(QuadOrder::from_text(&o.to_text()).unwrap(), o);
        assert!(matches!(QuadOrder::from_text("order = {t = 0}"), Err(Error::Parse { .. })));
    }
}
