use super::ff::{Fe, FiniteField};
use crate::error::{Error, Result};
use std::fmt;
use std::sync::Arc;

/// Precision marker for exactly known series (Laurent polynomials).
pub const EXACT: i64 = 1 << 40;

fn clamp(p: i64) -> i64 {
    p.min(EXACT)
}

/// A Laurent series over a small finite field known modulo `T^prec`.
///
/// Coefficients are stored from the valuation on, with trailing zeros
/// trimmed. The zero series has `val == prec` and no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncSeries {
    field: Arc<FiniteField>,
    val: i64,
    coeffs: Vec<Fe>,
    prec: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesOp {
    Add,
    Mul,
    InvOfUnit,
}

/// Binary/unary series arithmetic with the precision contract of [`TruncSeries`].
pub fn series_arith(a: &TruncSeries, b: &TruncSeries, op: SeriesOp) -> Result<TruncSeries> {
    match op {
        SeriesOp::Add => a.add(b),
        SeriesOp::Mul => a.mul(b),
        SeriesOp::InvOfUnit => a.inv_of_unit(),
    }
}

impl TruncSeries {
    /// Builds `sum coeffs[i] T^(start+i)` known modulo `T^prec`.
    pub fn from_coeffs(field: &Arc<FiniteField>, start: i64, coeffs: &[Fe], prec: i64) -> Self {
        let prec = clamp(prec);
        let mut lo = 0;
        while lo < coeffs.len() && coeffs[lo].0 == 0 {
            lo += 1;
        }
        let val = start + lo as i64;
        if val >= prec || lo == coeffs.len() {
            return Self::zero(field, prec);
        }
        let keep = ((prec - val) as usize).min(coeffs.len() - lo);
        let mut c: Vec<Fe> = coeffs[lo..lo + keep].to_vec();
        while c.last().is_some_and(|x| x.0 == 0) {
            c.pop();
        }
        if c.is_empty() {
            return Self::zero(field, prec);
        }
        TruncSeries {
            field: field.clone(),
            val,
            coeffs: c,
            prec,
        }
    }

    pub fn from_terms(field: &Arc<FiniteField>, terms: &[(i64, Fe)], prec: i64) -> Self {
        if terms.is_empty() {
            return Self::zero(field, prec);
        }
        let lo = terms.iter().map(|t| t.0).min().unwrap();
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let mut c = vec![Fe(0); (hi - lo + 1) as usize];
        for &(e, x) in terms {
            let slot = &mut c[(e - lo) as usize];
            *slot = field.add(*slot, x);
        }
        Self::from_coeffs(field, lo, &c, prec)
    }

    pub fn zero(field: &Arc<FiniteField>, prec: i64) -> Self {
        let prec = clamp(prec);
        TruncSeries {
            field: field.clone(),
            val: prec,
            coeffs: Vec::new(),
            prec,
        }
    }

    pub fn monomial(field: &Arc<FiniteField>, c: Fe, exp: i64, prec: i64) -> Self {
        Self::from_coeffs(field, exp, &[c], prec)
    }

    pub fn constant(field: &Arc<FiniteField>, c: Fe, prec: i64) -> Self {
        Self::monomial(field, c, 0, prec)
    }

    pub fn one(field: &Arc<FiniteField>, prec: i64) -> Self {
        Self::constant(field, Fe(1), prec)
    }

    pub fn from_int(field: &Arc<FiniteField>, n: i64, prec: i64) -> Self {
        Self::constant(field, field.from_int(n), prec)
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn precision(&self) -> i64 {
        self.prec
    }

    pub fn is_exact(&self) -> bool {
        self.prec >= EXACT / 2
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Valuation of a nonzero series.
    pub fn valuation(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.val)
    }

    /// Valuation, or the precision for a zero series (a lower bound for the true valuation).
    pub fn valuation_bound(&self) -> i64 {
        self.val
    }

    /// Exponent one past the last stored nonzero coefficient.
    pub fn degree_end(&self) -> i64 {
        self.val + self.coeffs.len() as i64
    }

    /// Coefficient of `T^i`, or `None` if `i` lies beyond the precision.
    pub fn try_coeff(&self, i: i64) -> Option<Fe> {
        (i < self.prec).then(|| self.coeff(i))
    }

    /// Coefficient of `T^i`; zero above the stored range.
    pub fn coeff(&self, i: i64) -> Fe {
        if i < self.val {
            return Fe(0);
        }
        self.coeffs.get((i - self.val) as usize).copied().unwrap_or(Fe(0))
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, Fe)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| c.0 != 0)
            .map(move |(i, &c)| (self.val + i as i64, c))
    }

    fn same_field(&self, o: &TruncSeries) -> Result<()> {
        if self.field != o.field {
            return Err(Error::field_mismatch(&self.field, &o.field));
        }
        Ok(())
    }

    pub fn add(&self, o: &TruncSeries) -> Result<TruncSeries> {
        self.same_field(o)?;
        let prec = self.prec.min(o.prec);
        if self.is_zero() {
            return Ok(o.truncate(prec));
        }
        if o.is_zero() {
            return Ok(self.truncate(prec));
        }
        let lo = self.val.min(o.val);
        let hi = self.degree_end().max(o.degree_end()).min(prec);
        if hi <= lo {
            return Ok(Self::zero(&self.field, prec));
        }
        let f = &self.field;
        let c: Vec<Fe> = (lo..hi).map(|i| f.add(self.coeff(i), o.coeff(i))).collect();
        Ok(Self::from_coeffs(f, lo, &c, prec))
    }

    pub fn neg(&self) -> TruncSeries {
        let f = &self.field;
        TruncSeries {
            field: f.clone(),
            val: self.val,
            coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect(),
            prec: self.prec,
        }
    }

    pub fn sub(&self, o: &TruncSeries) -> Result<TruncSeries> {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &TruncSeries) -> Result<TruncSeries> {
        self.same_field(o)?;
        let prec = clamp((self.prec + o.val).min(o.prec + self.val));
        if self.is_zero() || o.is_zero() {
            return Ok(Self::zero(&self.field, prec));
        }
        let val = self.val + o.val;
        let full = self.coeffs.len() + o.coeffs.len() - 1;
        let len = full.min((prec - val).max(0) as usize);
        let f = &self.field;
        let mut c = vec![Fe(0); len];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.0 == 0 || i >= len {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                c[i + j] = f.add(c[i + j], f.mul(a, b));
            }
        }
        Ok(Self::from_coeffs(f, val, &c, prec))
    }

    pub fn scale(&self, c: Fe) -> TruncSeries {
        let f = &self.field;
        let coeffs: Vec<Fe> = self.coeffs.iter().map(|&x| f.mul(x, c)).collect();
        Self::from_coeffs(f, self.val, &coeffs, self.prec)
    }

    /// Multiplication by `T^k`.
    pub fn shift(&self, k: i64) -> TruncSeries {
        let prec = if self.is_exact() { EXACT } else { self.prec + k };
        Self::from_coeffs(&self.field, self.val + k, &self.coeffs, prec)
    }

    pub fn truncate(&self, prec: i64) -> TruncSeries {
        if prec >= self.prec {
            return self.clone();
        }
        Self::from_coeffs(&self.field, self.val, &self.coeffs, prec)
    }

    /// Lowers the stated precision to `prec`; fails if that would claim more
    /// than is known.
    pub fn with_precision(&self, prec: i64) -> Result<TruncSeries> {
        if prec > self.prec {
            return Err(Error::PrecisionUnderflow(format!(
                "series known modulo T^{} cannot be lifted to T^{}",
                self.prec, prec
            )));
        }
        Ok(self.truncate(prec))
    }

    /// Drops the precision marker: treats the stored coefficients as exact.
    pub fn to_exact(&self) -> TruncSeries {
        Self::from_coeffs(&self.field, self.val, &self.coeffs, EXACT)
    }

    pub fn inv_of_unit(&self) -> Result<TruncSeries> {
        if self.is_zero() || self.val != 0 {
            return Err(Error::NotAUnit);
        }
        self.inv()
    }

    /// Inverse of a nonzero series `T^v u`: valuation `-v`, precision `prec - 2v`.
    pub fn inv(&self) -> Result<TruncSeries> {
        if self.is_zero() {
            return Err(Error::NotAUnit);
        }
        let f = &self.field;
        let v = self.val;
        let u0inv = f.inv(self.coeffs[0]).expect("leading coefficient nonzero");
        if self.coeffs.len() == 1 {
            let prec = if self.is_exact() { EXACT } else { self.prec - 2 * v };
            return Ok(Self::monomial(f, u0inv, -v, prec));
        }
        if self.is_exact() {
            return Err(Error::PrecisionExhausted(
                "inverse of an exact non-monomial series has no finite expansion".into(),
            ));
        }
        let rel = (self.prec - v) as usize;
        let mut b = Vec::with_capacity(rel);
        b.push(u0inv);
        for n in 1..rel {
            let mut s = Fe(0);
            for k in 1..=n.min(self.coeffs.len() - 1) {
                s = f.add(s, f.mul(self.coeffs[k], b[n - k]));
            }
            b.push(f.neg(f.mul(u0inv, s)));
        }
        Ok(Self::from_coeffs(f, -v, &b, self.prec - 2 * v))
    }

    /// Inverse computed to relative precision `rel` (usable on exact inputs).
    pub fn inv_to(&self, prec: i64) -> Result<TruncSeries> {
        if self.is_zero() {
            return Err(Error::NotAUnit);
        }
        let v = self.val;
        self.truncate(prec + 2 * v).inv()
    }

    pub fn div(&self, o: &TruncSeries) -> Result<TruncSeries> {
        self.mul(&o.inv()?)
    }

    pub fn pow(&self, n: u32) -> Result<TruncSeries> {
        let mut acc = Self::one(&self.field, EXACT);
        for _ in 0..n {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Equality of the coefficients below the smaller of the two precisions.
    pub fn eq_to_precision(&self, o: &TruncSeries) -> bool {
        if self.field != o.field {
            return false;
        }
        let p = self.prec.min(o.prec);
        self.truncate(p).coeffs_eq(&o.truncate(p))
    }

    fn coeffs_eq(&self, o: &TruncSeries) -> bool {
        (self.is_zero() && o.is_zero()) || (self.val == o.val && self.coeffs == o.coeffs)
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (e, c) in self.terms() {
            let cs = self.field.format(c);
            let mono = match e {
                0 => String::new(),
                1 => "T".to_string(),
                _ => format!("T^{e}"),
            };
            parts.push(match (cs.as_str(), mono.is_empty()) {
                (_, true) => cs,
                ("1", false) => mono,
                (_, false) => format!("{cs}*{mono}"),
            });
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        if !self.is_exact() {
            parts.push(format!("O(T^{})", self.prec));
        }
        f.write_str(&parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Arc<FiniteField> {
        FiniteField::prime(2).unwrap()
    }

    #[test]
    fn characteristic_two_cancellation() {
        let f = f2();
        let a = TruncSeries::from_coeffs(&f, 0, &[Fe(1), Fe(1)], 8);
        let z = series_arith(&a, &a, SeriesOp::Add).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.precision(), 8);
    }

    #[test]
    fn monomial_product() {
        let f = f2();
        let a = TruncSeries::monomial(&f, Fe(1), 2, 10);
        let b = TruncSeries::monomial(&f, Fe(1), 3, 10);
        let c = series_arith(&a, &b, SeriesOp::Mul).unwrap();
        assert_eq!(c.valuation(), Some(5));
        assert_eq!(c.terms().collect::<Vec<_>>(), vec![(5, Fe(1))]);
    }

    #[test]
    fn geometric_inverse() {
        let f = f2();
        let a = TruncSeries::from_coeffs(&f, 0, &[Fe(1), Fe(1)], 4);
        let b = series_arith(&a, &a, SeriesOp::InvOfUnit).unwrap();
        assert_eq!(b, TruncSeries::from_coeffs(&f, 0, &[Fe(1); 4], 4));
        let t = TruncSeries::monomial(&f, Fe(1), 1, 4);
        assert_eq!(t.inv_of_unit(), Err(Error::NotAUnit));
    }

    #[test]
    fn laurent_inverse_precision() {
        let f = f2();
        let t2 = TruncSeries::from_coeffs(&f, 2, &[Fe(1), Fe(1)], 10);
        let inv = t2.inv().unwrap();
        assert_eq!(inv.valuation(), Some(-2));
        assert_eq!(inv.precision(), 6);
        let one = inv.mul(&t2).unwrap();
        assert!(one.eq_to_precision(&TruncSeries::one(&f, EXACT)));
    }

    #[test]
    fn field_mismatch() {
        let a = TruncSeries::one(&f2(), 4);
        let b = TruncSeries::one(&FiniteField::by_name("F4").unwrap(), 4);
        assert!(matches!(a.add(&b), Err(Error::FieldMismatch(..))));
    }
}
