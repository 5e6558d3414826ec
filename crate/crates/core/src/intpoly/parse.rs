//! Polynomial and ideal literals: `(X^2 + X)/T^2`, `C(X,3)`, `X(X - w)`,
//! `(T^2, T^3)`, `[2, 1, 1]`.

use super::{DomainHandle, IvPoly};
use crate::error::{Error, Result};
use crate::exactalg::rat::binomial_poly;
use crate::exactalg::{Coeff, FiniteField, Poly, Rat, TruncSeries, EXACT};
use crate::latorder::{LatIdeal, QuadElem, QuadOrder};
use crate::psring::SemigroupRingSpec;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>> {
    let b = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let s = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            out.push((Tok::Num(src[s..i].parse().expect("digits")), s));
        } else if c.is_ascii_alphabetic() {
            // identifiers are single letters, so `wX` reads as `w X`
            out.push((Tok::Ident(c.to_string()), i));
            i += 1;
        } else if "+-*/^(),[]".contains(c) {
            out.push((Tok::Op(c), i));
            i += 1;
        } else {
            return Err(Error::parse_at(src, i, format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
enum Node {
    Num(BigInt),
    X,
    Const(char, usize),
    Binom(Box<Node>, usize),
    Add(Box<Node>, Box<Node>),
    Sub(Box<Node>, Box<Node>),
    Mul(Box<Node>, Box<Node>),
    Div(Box<Node>, Box<Node>, usize),
    Neg(Box<Node>),
    Pow(Box<Node>, i64, usize),
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Result<Self> {
        Ok(Parser {
            src,
            toks: lex(src)?,
            pos: 0,
        })
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.src.len(), |t| t.1)
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::parse_at(self.src, self.offset(), msg.into())
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected '{c}'")))
        }
    }

    fn at_end(&self) -> bool {
        self.pos == self.toks.len()
    }

    fn expr(&mut self) -> Result<Node> {
        let mut lhs = if self.eat('-') {
            Node::Neg(Box::new(self.term()?))
        } else {
            self.term()?
        };
        loop {
            if self.eat('+') {
                lhs = Node::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Node::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(self.peek(), Some(Tok::Num(_) | Tok::Ident(_) | Tok::Op('(')))
    }

    fn term(&mut self) -> Result<Node> {
        let mut lhs = self.power()?;
        loop {
            if self.eat('*') {
                lhs = Node::Mul(Box::new(lhs), Box::new(self.power()?));
            } else if self.peek() == Some(&Tok::Op('/')) {
                let at = self.offset();
                self.pos += 1;
                lhs = Node::Div(Box::new(lhs), Box::new(self.power()?), at);
            } else if self.starts_atom() {
                lhs = Node::Mul(Box::new(lhs), Box::new(self.power()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn power(&mut self) -> Result<Node> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Op('^')) {
            let at = self.offset();
            self.pos += 1;
            let neg = self.eat('-');
            let Some(Tok::Num(n)) = self.peek().cloned() else {
                return Err(self.err("expected an integer exponent"));
            };
            self.pos += 1;
            let n = n.to_i64().filter(|&n| n <= 4096).ok_or_else(|| self.err("exponent too large"))?;
            return Ok(Node::Pow(Box::new(base), if neg { -n } else { n }, at));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Node> {
        let at = self.offset();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Node::Num(n))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                match s.as_str() {
                    "X" => Ok(Node::X),
                    "C" => {
                        self.expect('(')?;
                        let arg = self.expr()?;
                        self.expect(',')?;
                        let Some(Tok::Num(k)) = self.peek().cloned() else {
                            return Err(self.err("expected the binomial degree"));
                        };
                        self.pos += 1;
                        self.expect(')')?;
                        let k = k.to_usize().filter(|&k| k <= 64).ok_or_else(|| self.err("degree too large"))?;
                        Ok(Node::Binom(Box::new(arg), k))
                    }
                    "T" | "g" | "w" => Ok(Node::Const(s.chars().next().unwrap(), at)),
                    _ => Err(Error::parse_at(self.src, at, format!("unknown symbol {s:?}"))),
                }
            }
            _ => Err(self.err("expected a term")),
        }
    }
}

/// Coefficient fields the literal syntax evaluates into.
trait LitField: Coeff {
    type Ctx;
    fn from_rat(ctx: &Self::Ctx, r: &Rat) -> std::result::Result<Self, String>;
    fn named(ctx: &Self::Ctx, c: char) -> Option<Self>;
    fn inverse(&self, ctx: &Self::Ctx) -> std::result::Result<Self, String>;
}

impl LitField for Rat {
    type Ctx = ();
    fn from_rat(_: &(), r: &Rat) -> std::result::Result<Self, String> {
        Ok(r.clone())
    }
    fn named(_: &(), _: char) -> Option<Self> {
        None
    }
    fn inverse(&self, _: &()) -> std::result::Result<Self, String> {
        if self.is_zero() {
            Err("division by zero".into())
        } else {
            Ok(self.recip())
        }
    }
}

struct SeriesCtx {
    field: Arc<FiniteField>,
    prec: i64,
}

impl LitField for TruncSeries {
    type Ctx = SeriesCtx;
    fn from_rat(ctx: &Self::Ctx, r: &Rat) -> std::result::Result<Self, String> {
        let f = &ctx.field;
        let p = BigInt::from(f.characteristic());
        if r.denom().is_multiple_of(&p) {
            return Err(format!("{r} has no image in characteristic {p}"));
        }
        let n = |x: &BigInt| x.mod_floor(&p).to_i64().unwrap();
        let den = f.inv(f.from_int(n(r.denom()))).expect("unit");
        Ok(TruncSeries::constant(f, f.mul(f.from_int(n(r.numer())), den), EXACT))
    }
    fn named(ctx: &Self::Ctx, c: char) -> Option<Self> {
        let f = &ctx.field;
        match c {
            'T' => Some(TruncSeries::monomial(f, f.one(), 1, EXACT)),
            'g' if f.degree() == 2 => Some(TruncSeries::constant(f, f.generator(), EXACT)),
            _ => None,
        }
    }
    fn inverse(&self, ctx: &Self::Ctx) -> std::result::Result<Self, String> {
        if self.is_zero() {
            return Err("division by zero".into());
        }
        match self.inv() {
            Ok(x) => Ok(x),
            Err(_) => self.inv_to(ctx.prec).map_err(|e| e.to_string()),
        }
    }
}

impl LitField for QuadElem {
    type Ctx = QuadOrder;
    fn from_rat(o: &QuadOrder, r: &Rat) -> std::result::Result<Self, String> {
        Ok(o.elem(r.clone(), Rat::zero()))
    }
    fn named(o: &QuadOrder, c: char) -> Option<Self> {
        (c == 'w').then(|| o.omega())
    }
    fn inverse(&self, _: &QuadOrder) -> std::result::Result<Self, String> {
        self.inv().map_err(|e| e.to_string())
    }
}

fn eval<C: LitField>(src: &str, n: &Node, ctx: &C::Ctx) -> Result<Poly<C>> {
    let one = C::from_rat(ctx, &Rat::one()).map_err(|m| Error::parse_at(src, 0, m))?;
    let lift = |r: &Rat, at: usize| C::from_rat(ctx, r).map_err(|m| Error::parse_at(src, at, m));
    Ok(match n {
        Node::Num(k) => Poly::constant(lift(&Rat::from_integer(k.clone()), 0)?),
        Node::X => Poly::monomial(one, 1),
        Node::Const(c, at) => Poly::constant(
            C::named(ctx, *c).ok_or_else(|| Error::parse_at(src, *at, format!("{c:?} is not defined in this domain")))?,
        ),
        Node::Binom(arg, k) => {
            let inner = eval::<C>(src, arg, ctx)?;
            let b = binomial_poly(*k);
            let mut acc = Poly::zero();
            for c in b.coeffs().iter().rev() {
                acc = acc.mul(&inner)?.add(&Poly::constant(lift(c, 0)?))?;
            }
            acc
        }
        Node::Add(a, b) => eval::<C>(src, a, ctx)?.add(&eval::<C>(src, b, ctx)?)?,
        Node::Sub(a, b) => eval::<C>(src, a, ctx)?.sub(&eval::<C>(src, b, ctx)?)?,
        Node::Mul(a, b) => eval::<C>(src, a, ctx)?.mul(&eval::<C>(src, b, ctx)?)?,
        Node::Neg(a) => eval::<C>(src, a, ctx)?.neg(),
        Node::Div(a, b, at) => {
            let num = eval::<C>(src, a, ctx)?;
            let den = eval::<C>(src, b, ctx)?;
            let c = constant_of(src, &den, *at)?;
            let inv = c.inverse(ctx).map_err(|m| Error::parse_at(src, *at, m))?;
            num.scale(&inv)?
        }
        Node::Pow(a, k, at) => {
            let base = eval::<C>(src, a, ctx)?;
            let (base, k) = if *k < 0 {
                let c = constant_of(src, &base, *at)?;
                let inv = c.inverse(ctx).map_err(|m| Error::parse_at(src, *at, m))?;
                (Poly::constant(inv), (-*k) as u64)
            } else {
                (base, *k as u64)
            };
            let mut acc = Poly::constant(one);
            for _ in 0..k {
                acc = acc.mul(&base)?;
            }
            acc
        }
    })
}

fn constant_of<C: Coeff>(src: &str, p: &Poly<C>, at: usize) -> Result<C> {
    match p.degree() {
        None => Err(Error::parse_at(src, at, "division by zero")),
        Some(0) => Ok(p.coeffs()[0].clone()),
        Some(_) => Err(Error::parse_at(src, at, "can only divide by a constant")),
    }
}

fn parse_node(src: &str) -> Result<Node> {
    let mut p = Parser::new(src)?;
    let n = p.expr()?;
    if !p.at_end() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(n)
}

fn series_ctx(spec: &SemigroupRingSpec, prec: i64) -> SeriesCtx {
    SeriesCtx {
        field: spec.field().clone(),
        prec,
    }
}

/// Parses a polynomial in `X` over the quotient field of `dom`.
pub fn parse_poly(dom: &DomainHandle, src: &str) -> Result<IvPoly> {
    parse_poly_at(dom, src, None)
}

/// As [`parse_poly`]; divisions by non-monomial series are expanded to
/// absolute precision `prec` (default: the domain's stated precision).
pub fn parse_poly_at(dom: &DomainHandle, src: &str, prec: Option<i64>) -> Result<IvPoly> {
    let n = parse_node(src)?;
    Ok(match dom {
        DomainHandle::Integers | DomainHandle::LocalizedIntegers(_) => IvPoly::Rational(eval::<Rat>(src, &n, &())?),
        DomainHandle::DvrSeries(spec) | DomainHandle::SemigroupRing(spec) => {
            let prec = prec.unwrap_or_else(|| spec.default_precision(0));
            IvPoly::Series(eval::<TruncSeries>(src, &n, &series_ctx(spec, prec))?)
        }
        DomainHandle::QuadOrder(o) => IvPoly::Quadratic(eval::<QuadElem>(src, &n, o)?),
    })
}

/// Splits `(a, b, ...)` into its top-level comma separated parts.
fn split_list(src: &str) -> Result<Vec<(usize, &str)>> {
    let t = src.trim_end();
    let start = src.len() - src.trim_start().len();
    let inner = t[start..]
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| Error::parse_at(src, start, "expected a list like (a, b)"))?;
    let base = start + 1;
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut from = 0;
    for (i, c) in inner.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push((base + from, &inner[from..i]));
                from = i + 1;
            }
            _ => {}
        }
    }
    parts.push((base + from, &inner[from..]));
    Ok(parts)
}

fn constant_parts<C: LitField>(src: &str, ctx: &C::Ctx) -> Result<Vec<C>> {
    split_list(src)?
        .into_iter()
        .map(|(off, part)| {
            let n = parse_node(part).map_err(|e| shift_error(e, src, off))?;
            let p = eval::<C>(part, &n, ctx).map_err(|e| shift_error(e, src, off))?;
            match p.degree() {
                None => Ok(C::from_rat(ctx, &Rat::zero()).map_err(|m| Error::parse_at(src, off, m))?),
                Some(0) => Ok(p.coeffs()[0].clone()),
                Some(_) => Err(Error::parse_at(
                    src,
                    off + part.find('X').unwrap_or(0),
                    "ideal generators must not involve X",
                )),
            }
        })
        .collect()
}

fn shift_error(e: Error, src: &str, off: usize) -> Error {
    match e {
        Error::Parse { line: 1, column, message } => Error::parse_at(src, off + column - 1, message),
        other => other,
    }
}

/// Generators of a series ideal literal such as `(T^2, T^3)`.
pub fn parse_series_list(spec: &SemigroupRingSpec, src: &str, prec: i64) -> Result<Vec<TruncSeries>> {
    constant_parts::<TruncSeries>(src, &series_ctx(spec, prec))
}

/// Generators of a quadratic ideal literal such as `(2, 1 + w)`.
pub fn parse_quad_list(order: QuadOrder, src: &str) -> Result<Vec<QuadElem>> {
    constant_parts::<QuadElem>(src, &order)
}

/// Lattice ideal literal `[a, b, c]`, optionally preceded by a rational
/// scale as in `1/2 [2, 1, 1]`, or a generator list `(2, 1 + w)`.
pub fn parse_lat_ideal(order: QuadOrder, src: &str) -> Result<LatIdeal> {
    let Some(open) = src.find('[') else {
        return LatIdeal::from_generators(order, &parse_quad_list(order, src)?);
    };
    let scale = match src[..open].trim() {
        "" => Rat::one(),
        s => {
            let n = parse_node(s)?;
            let p = eval::<Rat>(s, &n, &())?;
            constant_of(src, &p, 0)?
        }
    };
    let close = src
        .rfind(']')
        .ok_or_else(|| Error::parse_at(src, src.len(), "expected ']'"))?;
    if !src[close + 1..].trim().is_empty() {
        return Err(Error::parse_at(src, close + 1, "unexpected trailing input"));
    }
    let nums: Vec<i64> = src[open + 1..close]
        .split(',')
        .map(|s| {
            let t = s.trim();
            let off = open + 1 + (s.as_ptr() as usize - src[open + 1..].as_ptr() as usize);
            t.parse::<i64>()
                .map_err(|_| Error::parse_at(src, off, format!("expected an integer, found {t:?}")))
        })
        .collect::<Result<_>>()?;
    let [a, b, c] = nums[..] else {
        return Err(Error::parse_at(src, open, "expected three entries [a, b, c]"));
    };
    if a <= 0 || c <= 0 || scale.is_negative() {
        return Err(Error::parse_at(src, open, "entries a and c and the scale must be positive"));
    }
    LatIdeal::from_triple(order, a, b, c, scale)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_literals() {
        let z = DomainHandle::Integers;
        let f = parse_poly(&z, "C(X,3)").unwrap();
        assert_eq!(f, IvPoly::Rational(binomial_poly(3)));
        let g = parse_poly(&z, "X(X-1)(X-2)/6").unwrap();
        assert_eq!(f, g);
        let h = parse_poly(&z, "-X^2 + 2*X").unwrap();
        assert_eq!(h.to_string(), "-X^2 + 2*X");
    }

    #[test]
    fn series_literals() {
        let d = DomainHandle::by_name("F2_TF4").unwrap();
        let f = parse_poly(&d, "(X^2+X)/T").unwrap();
        let IvPoly::Series(p) = &f else { panic!() };
        assert_eq!(p.coeffs()[1].valuation(), Some(-1));
        assert!(parse_poly(&d, "g X + T^-1").is_ok());
        let e = parse_poly(&d, "X / (X + 1)").unwrap_err();
        assert!(matches!(e, Error::Parse { column: 3, .. }), "{e:?}");
        let e = parse_poly(&DomainHandle::by_name("F2_DVR").unwrap(), "C(X,2)").unwrap_err();
        assert!(e.to_string().contains("characteristic 2"));
    }

    #[test]
    fn ideal_literals() {
        let spec = SemigroupRingSpec::f2_semi23();
        let g = parse_series_list(&spec, "(T^2, T^3)", 32).unwrap();
        assert_eq!(g.len(), 2);
        let e = parse_series_list(&spec, "(T^2, T^3 + X)", 32).unwrap_err();
        assert!(matches!(e, Error::Parse { column: 13, .. }), "{e:?}");
        let o = QuadOrder::sqrt(-3).unwrap();
        let p = parse_lat_ideal(o, "(2, 1 + w)").unwrap();
        assert_eq!(parse_lat_ideal(o, "[2, 1, 1]").unwrap(), p);
        let half = parse_lat_ideal(o, "1/2 [4, 2, 2]").unwrap();
        assert_eq!(half, p);
    }
}
