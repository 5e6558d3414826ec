use super::series::TruncSeries;
use crate::error::Result;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;

/// Coefficient ring operations needed by [`Poly`].
pub trait Coeff: Clone + fmt::Debug + fmt::Display + PartialEq {
    fn c_add(&self, o: &Self) -> Result<Self>;
    fn c_mul(&self, o: &Self) -> Result<Self>;
    fn c_neg(&self) -> Self;
    fn c_is_zero(&self) -> bool;
    /// A zero in the same ring (same field, precision, order) as `self`.
    fn c_zero(&self) -> Self;
    fn c_one(&self) -> Self;
}

impl Coeff for BigRational {
    fn c_add(&self, o: &Self) -> Result<Self> {
        Ok(self + o)
    }
    fn c_mul(&self, o: &Self) -> Result<Self> {
        Ok(self * o)
    }
    fn c_neg(&self) -> Self {
        -self
    }
    fn c_is_zero(&self) -> bool {
        self.is_zero()
    }
    fn c_zero(&self) -> Self {
        BigRational::zero()
    }
    fn c_one(&self) -> Self {
        BigRational::one()
    }
}

impl Coeff for BigInt {
    fn c_add(&self, o: &Self) -> Result<Self> {
        Ok(self + o)
    }
    fn c_mul(&self, o: &Self) -> Result<Self> {
        Ok(self * o)
    }
    fn c_neg(&self) -> Self {
        -self
    }
    fn c_is_zero(&self) -> bool {
        self.is_zero()
    }
    fn c_zero(&self) -> Self {
        BigInt::zero()
    }
    fn c_one(&self) -> Self {
        BigInt::one()
    }
}

impl Coeff for TruncSeries {
    fn c_add(&self, o: &Self) -> Result<Self> {
        TruncSeries::add(self, o)
    }
    fn c_mul(&self, o: &Self) -> Result<Self> {
        TruncSeries::mul(self, o)
    }
    fn c_neg(&self) -> Self {
        TruncSeries::neg(self)
    }
    fn c_is_zero(&self) -> bool {
        TruncSeries::is_zero(self)
    }
    fn c_zero(&self) -> Self {
        TruncSeries::zero(self.field(), super::series::EXACT)
    }
    fn c_one(&self) -> Self {
        TruncSeries::one(self.field(), super::series::EXACT)
    }
}

/// Dense univariate polynomial; `coeffs[i]` multiplies `X^i`.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<C> {
    coeffs: Vec<C>,
}

impl<C: Coeff> Poly<C> {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.c_is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: C) -> Self {
        Self::new(vec![c])
    }

    /// `c X^k`.
    pub fn monomial(c: C, k: usize) -> Self {
        let mut v = vec![c.c_zero(); k];
        v.push(c);
        Self::new(v)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Option<&C> {
        self.coeffs.get(i)
    }

    pub fn leading(&self) -> Option<&C> {
        self.coeffs.last()
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        let (long, short) = if self.coeffs.len() >= o.coeffs.len() {
            (self, o)
        } else {
            (o, self)
        };
        let mut out = long.coeffs.clone();
        for (i, c) in short.coeffs.iter().enumerate() {
            out[i] = out[i].c_add(c)?;
        }
        Ok(Self::new(out))
    }

    pub fn neg(&self) -> Self {
        Poly {
            coeffs: self.coeffs.iter().map(|c| c.c_neg()).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.is_zero() || o.is_zero() {
            return Ok(Self::zero());
        }
        let z = self.coeffs[0].c_zero();
        let mut out = vec![z; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.c_is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].c_add(&a.c_mul(b)?)?;
            }
        }
        Ok(Self::new(out))
    }

    pub fn scale(&self, c: &C) -> Result<Self> {
        let v = self.coeffs.iter().map(|x| x.c_mul(c)).collect::<Result<Vec<_>>>()?;
        Ok(Self::new(v))
    }

    pub fn map<D: Coeff>(&self, mut f: impl FnMut(&C) -> Result<D>) -> Result<Poly<D>> {
        Ok(Poly::new(self.coeffs.iter().map(&mut f).collect::<Result<Vec<_>>>()?))
    }

    /// Horner evaluation.
    pub fn eval(&self, a: &C) -> Result<C> {
        let mut it = self.coeffs.iter().rev();
        let Some(lead) = it.next() else {
            return Ok(a.c_zero());
        };
        let mut acc = lead.clone();
        for c in it {
            acc = acc.c_mul(a)?.c_add(c)?;
        }
        Ok(acc)
    }

    /// Power-sum evaluation, used as a cross-check of [`Poly::eval`].
    pub fn eval_naive(&self, a: &C) -> Result<C> {
        let mut acc = a.c_zero();
        let mut pw = a.c_one();
        for c in &self.coeffs {
            acc = acc.c_add(&c.c_mul(&pw)?)?;
            pw = pw.c_mul(a)?;
        }
        Ok(acc)
    }

    pub fn format_in(&self, var: &str) -> String {
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.c_is_zero() {
                continue;
            }
            let cs = c.to_string();
            let cs = if cs.contains(' ') {
                format!("({cs})")
            } else {
                cs
            };
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            parts.push(match (cs.as_str(), mono.is_empty()) {
                (_, true) => cs,
                ("1", false) => mono,
                ("-1", false) => format!("-{mono}"),
                (_, false) => format!("{cs}*{mono}"),
            });
        }
        let mut out = String::new();
        for (i, t) in parts.iter().enumerate() {
            match (i, t.strip_prefix('-')) {
                (0, _) => out.push_str(t),
                (_, Some(rest)) => {
                    out.push_str(" - ");
                    out.push_str(rest);
                }
                _ => {
                    out.push_str(" + ");
                    out.push_str(t);
                }
            }
        }
        if out.is_empty() {
            "0".into()
        } else {
            out
        }
    }
}

impl<C: Coeff> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_in("X"))
    }
}

/// Horner evaluation `f(a)`.
pub fn poly_eval<C: Coeff>(f: &Poly<C>, a: &C) -> Result<C> {
    f.eval(a)
}

/// Bivariate polynomial with a rectangular grid: `grid[i][j]` multiplies `X^i Y^j`.
#[derive(Clone, Debug, PartialEq)]
pub struct BiPoly<C> {
    grid: Vec<Vec<C>>,
}

impl<C: Coeff> BiPoly<C> {
    /// `grid` must be rectangular.
    pub fn new(grid: Vec<Vec<C>>) -> Self {
        debug_assert!(grid.windows(2).all(|w| w[0].len() == w[1].len()));
        BiPoly { grid }
    }

    /// Outer product `f(X) g(Y)` on a `(dx+1) × (dy+1)` grid.
    pub fn product(f: &Poly<C>, g: &Poly<C>, dx: usize, dy: usize, zero: &C) -> Result<Self> {
        let mut grid = vec![vec![zero.c_zero(); dy + 1]; dx + 1];
        for (i, a) in f.coeffs().iter().enumerate() {
            for (j, b) in g.coeffs().iter().enumerate() {
                grid[i][j] = a.c_mul(b)?;
            }
        }
        Ok(BiPoly { grid })
    }

    pub fn grid(&self) -> &[Vec<C>] {
        &self.grid
    }

    pub fn eval(&self, x: &C, y: &C) -> Result<C> {
        let mut acc = x.c_zero();
        for row in self.grid.iter().rev() {
            let inner = Poly::new(row.clone()).eval(y)?;
            acc = acc.c_mul(x)?.c_add(&inner)?;
        }
        Ok(acc)
    }
}
