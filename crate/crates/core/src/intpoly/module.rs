use super::{DomainHandle, IvPoly};
use crate::error::{Error, Result};
use crate::exactalg::zlinalg::IntHnf;
use crate::exactalg::{ff_solve, Fe, FfMatrix, Poly, Rat, TruncSeries, EXACT};
use crate::exactalg::rat::vp_int;
use crate::latorder::QuadElem;
use crate::psring::{coords, SemigroupRingSpec};
use crate::verdict::Verdict;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::fmt;
use std::sync::Arc;

/// Resources for a span computation: the largest degree considered and
/// the T-adic precision of the scalars.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ModuleWindow {
    pub max_degree: usize,
    pub precision: i64,
}

/// `f = Σ scalar_i · gens[index_i] + tail_part`, where `tail_part` (series
/// only) has every coefficient in the declared tail `T^N k'[[T]]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Combination {
    pub terms: Vec<(IvPoly, usize)>,
    pub tail_part: Option<IvPoly>,
}

impl fmt::Display for Combination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() && self.tail_part.is_none() {
            return f.write_str("0");
        }
        let mut parts: Vec<String> = self.terms.iter().map(|(s, i)| format!("({s})·g{i}")).collect();
        if let Some(t) = &self.tail_part {
            parts.push(format!("[{t}]"));
        }
        f.write_str(&parts.join(" + "))
    }
}

impl Combination {
    /// Like `Display`, with each generator written out.
    pub fn display_with(&self, gens: &[IvPoly]) -> String {
        let mut parts: Vec<String> = self
            .terms
            .iter()
            .map(|(s, i)| match gens.get(*i) {
                Some(g) => format!("({s})·({g})"),
                None => format!("({s})·g{i}"),
            })
            .collect();
        if let Some(t) = &self.tail_part {
            parts.push(format!("[{t}]"));
        }
        if parts.is_empty() {
            return "0".into();
        }
        parts.join(" + ")
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Membership {
    pub verdict: Verdict,
    pub combination: Option<Combination>,
}

impl Membership {
    fn yes(c: Combination) -> Self {
        Membership {
            verdict: Verdict::yes().with_witness(c.to_string()),
            combination: Some(c),
        }
    }

    fn without(verdict: Verdict) -> Self {
        Membership {
            verdict,
            combination: None,
        }
    }
}

/// Decides whether `f` lies in the `scalars`-module spanned by `gens`.
pub fn module_member(f: &IvPoly, gens: &[IvPoly], scalars: &DomainHandle, window: ModuleWindow) -> Result<Membership> {
    module_member_with_tail(f, gens, scalars, window, None)
}

/// As [`module_member`], for a series module known to contain every
/// polynomial with coefficients in `T^tail k'[[T]]`; `No` is then exact.
pub fn module_member_with_tail(
    f: &IvPoly,
    gens: &[IvPoly],
    scalars: &DomainHandle,
    window: ModuleWindow,
    tail: Option<i64>,
) -> Result<Membership> {
    let too_big = |g: &IvPoly| g.degree().is_some_and(|d| d > window.max_degree);
    if too_big(f) || gens.iter().any(too_big) {
        return Ok(Membership::without(Verdict::unknown(format!(
            "degree exceeds the window {}",
            window.max_degree
        ))));
    }
    if f.is_zero() {
        return Ok(Membership::yes(Combination {
            terms: vec![],
            tail_part: None,
        }));
    }
    let n = window.max_degree + 1;
    match scalars {
        DomainHandle::Integers | DomainHandle::LocalizedIntegers(_) => {
            let f = f.as_rational()?;
            let gs = gens.iter().map(|g| g.as_rational()).collect::<Result<Vec<_>>>()?;
            let local = match scalars {
                DomainHandle::LocalizedIntegers(p) => Some(*p),
                _ => None,
            };
            let rows: Vec<Vec<Rat>> = gs.iter().map(|g| rat_vector(g, n)).collect();
            let (verdict, combo) = lattice_solve(&rows, &rat_vector(f, n), local)?;
            Ok(match combo {
                Some(c) => Membership::yes(Combination {
                    terms: c
                        .into_iter()
                        .enumerate()
                        .filter(|(_, x)| !x.is_zero())
                        .map(|(i, x)| (IvPoly::Rational(Poly::constant(x)), i))
                        .collect(),
                    tail_part: None,
                }),
                None => Membership::without(verdict),
            })
        }
        DomainHandle::QuadOrder(o) => {
            let f = f.as_quadratic()?;
            let gs = gens.iter().map(|g| g.as_quadratic()).collect::<Result<Vec<_>>>()?;
            let w = Poly::constant(o.omega());
            let mut rows = Vec::new();
            for g in &gs {
                rows.push(quad_vector(g, n));
                rows.push(quad_vector(&g.mul(&w)?, n));
            }
            let (verdict, combo) = lattice_solve(&rows, &quad_vector(f, n), None)?;
            Ok(match combo {
                Some(c) => Membership::yes(Combination {
                    terms: c
                        .chunks(2)
                        .enumerate()
                        .filter(|(_, x)| !x[0].is_zero() || !x[1].is_zero())
                        .map(|(i, x)| (IvPoly::Quadratic(Poly::constant(o.elem(x[0].clone(), x[1].clone()))), i))
                        .collect(),
                    tail_part: None,
                }),
                None => Membership::without(verdict),
            })
        }
        DomainHandle::DvrSeries(spec) | DomainHandle::SemigroupRing(spec) => {
            let f = f.as_series()?;
            let gs = gens.iter().map(|g| g.as_series()).collect::<Result<Vec<_>>>()?;
            series_solve(spec, f, &gs, window, tail)
        }
    }
}

fn rat_vector(f: &Poly<Rat>, n: usize) -> Vec<Rat> {
    (0..n).map(|k| f.coeff(k).cloned().unwrap_or_else(Rat::zero)).collect()
}

fn quad_vector(f: &Poly<QuadElem>, n: usize) -> Vec<Rat> {
    (0..n)
        .flat_map(|k| match f.coeff(k) {
            Some(c) => [c.x.clone(), c.y.clone()],
            None => [Rat::zero(), Rat::zero()],
        })
        .collect()
}

/// Membership in the ℤ-span (or ℤ_(p)-span) of `rows`.
fn lattice_solve(rows: &[Vec<Rat>], v: &[Rat], local: Option<u64>) -> Result<(Verdict, Option<Vec<Rat>>)> {
    let den = rows
        .iter()
        .flatten()
        .chain(v)
        .fold(BigInt::one(), |d, x| d.lcm(x.denom()));
    let scale = |xs: &[Rat]| -> Vec<BigInt> {
        xs.iter()
            .map(|x| (x * Rat::from_integer(den.clone())).to_integer())
            .collect()
    };
    let ints: Vec<Vec<BigInt>> = rows.iter().map(|r| scale(r)).collect();
    let hnf = IntHnf::new(&ints, v.len());
    let Some((coeffs, combo)) = hnf.solve_rational(&scale(v)) else {
        return Ok((Verdict::no("not in the rational span of the generators"), None));
    };
    let bad = coeffs.iter().position(|c| match local {
        Some(p) => vp_int(c.denom(), p) != Some(0),
        None => !c.is_integer(),
    });
    match bad {
        Some(i) => Ok((
            Verdict::no(format!(
                "coordinate {} on the Hermite basis row {i} is not an admissible scalar",
                coeffs[i]
            )),
            None,
        )),
        None => Ok((Verdict::yes(), Some(combo))),
    }
}

fn series_solve(
    spec: &Arc<SemigroupRingSpec>,
    f: &Poly<TruncSeries>,
    gens: &[&Poly<TruncSeries>],
    window: ModuleWindow,
    tail: Option<i64>,
) -> Result<Membership> {
    let field = spec.field();
    let e = spec.ext_degree();
    let hi = tail.unwrap_or(window.precision);
    let n = window.max_degree + 1;
    let minval = |g: &Poly<TruncSeries>| g.coeffs().iter().filter_map(|c| c.valuation()).min();
    let lo = gens
        .iter()
        .filter_map(|g| minval(g))
        .chain(minval(f))
        .min()
        .unwrap_or(hi)
        .min(hi);
    let short = std::iter::once(f)
        .chain(gens.iter().copied())
        .flat_map(|g| g.coeffs())
        .find(|c| c.precision() < hi);
    if let Some(c) = short {
        return Ok(Membership::without(
            Verdict::unknown(format!("coefficient {c} is not known modulo T^{hi}")).at_precision(c.precision()),
        ));
    }
    let vector = |g: &Poly<TruncSeries>| -> Vec<Fe> {
        (0..n)
            .flat_map(|k| {
                let z = TruncSeries::zero(field, EXACT);
                coords(g.coeff(k).unwrap_or(&z), lo, hi, e)
            })
            .collect()
    };
    // candidate columns: β T^j · g_i with valuation below hi
    let mut cols: Vec<(usize, TruncSeries)> = Vec::new();
    let mut vecs: Vec<Vec<Fe>> = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        let Some(v) = minval(g) else { continue };
        for j in 0..(hi - v).max(0) {
            for b in spec.level_basis(j) {
                let m = TruncSeries::monomial(field, b, j, EXACT);
                let bg = g.scale(&m)?;
                vecs.push(vector(&bg));
                cols.push((i, m));
            }
        }
    }
    let rows = n * ((hi - lo).max(0) as usize) * e;
    let mut mat = FfMatrix::zeros(spec.prime_field(), rows, vecs.len());
    for (j, v) in vecs.iter().enumerate() {
        for (r, x) in v.iter().enumerate() {
            if x.0 != 0 {
                mat.set(r, j, *x);
            }
        }
    }
    let sol = ff_solve(&mat, &[vector(f)])?;
    let Some(x) = &sol.solutions[0] else {
        let v = match tail {
            Some(t) => Verdict::no(format!("no combination modulo T^{t}")),
            None => Verdict::unknown(format!("no combination with scalars below T^{hi}")),
        };
        return Ok(Membership::without(v.at_precision(hi)));
    };
    let prime = spec.prime_field();
    let mut scalars: Vec<TruncSeries> = vec![TruncSeries::zero(field, EXACT); gens.len()];
    for ((i, m), c) in cols.iter().zip(x) {
        if c.0 != 0 {
            let c = field.from_int(prime.prime_coords(*c)[0] as i64);
            scalars[*i] = scalars[*i].add(&m.scale(c))?;
        }
    }
    let mut sum = Poly::zero();
    for (s, g) in scalars.iter().zip(gens) {
        if !s.is_zero() {
            sum = sum.add(&g.scale(s)?)?;
        }
    }
    let residual = f.sub(&sum)?;
    let terms: Vec<(IvPoly, usize)> = scalars
        .into_iter()
        .enumerate()
        .filter(|(_, s)| !s.is_zero())
        .map(|(i, s)| (IvPoly::Series(Poly::constant(s)), i))
        .collect();
    let exact_zero = residual.coeffs().iter().all(|c| c.is_zero() && c.is_exact());
    if exact_zero {
        return Ok(Membership::yes(Combination { terms, tail_part: None }));
    }
    match tail {
        Some(t) if residual.coeffs().iter().all(|c| c.valuation_bound() >= t) => Ok(Membership::yes(Combination {
            terms,
            tail_part: Some(IvPoly::Series(residual)),
        })),
        _ => Ok(Membership::without(
            Verdict::unknown(format!("combination agrees only modulo T^{hi}")).at_precision(hi),
        )),
    }
}

/// Expands a combination; used to re-verify certificates.
pub fn expand(comb: &Combination, gens: &[IvPoly]) -> Result<IvPoly> {
    let mut acc: Option<IvPoly> = comb.tail_part.clone();
    for (s, i) in &comb.terms {
        let g = gens
            .get(*i)
            .ok_or_else(|| Error::InvalidArgument(format!("generator {i} out of range")))?;
        let t = s.mul(g)?;
        acc = Some(match acc {
            Some(a) => a.add(&t)?,
            None => t,
        });
    }
    acc.ok_or_else(|| Error::InvalidArgument("empty combination".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat::binomial_poly;

    fn w(d: usize) -> ModuleWindow {
        ModuleWindow {
            max_degree: d,
            precision: 16,
        }
    }

    #[test]
    fn integer_spans() {
        let z = DomainHandle::Integers;
        let g = vec![IvPoly::Rational(binomial_poly(2))];
        let f = z.parse_poly("X(X-1)").unwrap();
        let m = module_member(&f, &g, &z, w(2)).unwrap();
        assert!(m.verdict.is_yes());
        assert_eq!(expand(m.combination.as_ref().unwrap(), &g).unwrap(), f);
        let h = z.parse_poly("X(X-1)/4").unwrap();
        assert!(module_member(&h, &g, &z, w(2)).unwrap().verdict.is_no());
        let z3 = DomainHandle::LocalizedIntegers(3);
        assert!(module_member(&h, &g, &z3, w(2)).unwrap().verdict.is_yes());
        let zero = z.parse_poly("0").unwrap();
        assert!(module_member(&zero, &g, &z, w(2)).unwrap().verdict.is_yes());
    }

    #[test]
    fn dvr_certificate() {
        let d = DomainHandle::by_name("F2_DVR").unwrap();
        let g = vec![d.parse_poly("T (X^2+X)/T").unwrap()];
        let f = d.parse_poly("X^2+X").unwrap();
        let m = module_member(&f, &g, &d, w(2)).unwrap();
        assert!(m.verdict.is_yes(), "{m:?}");
        assert!(module_member(&d.parse_poly("X").unwrap(), &g, &d, w(2)).unwrap().verdict.is_unknown());
    }

    #[test]
    fn quadratic_spans() {
        let o = DomainHandle::by_name("Z[sqrt(-3)]").unwrap();
        let g = vec![o.parse_poly("2X").unwrap(), o.parse_poly("(1+w)X").unwrap()];
        let f = o.parse_poly("(1-w)X").unwrap();
        let m = module_member(&f, &g, &o, w(1)).unwrap();
        assert!(m.verdict.is_yes());
        assert_eq!(expand(m.combination.as_ref().unwrap(), &g).unwrap(), f);
        assert!(module_member(&o.parse_poly("X").unwrap(), &g, &o, w(1)).unwrap().verdict.is_no());
    }
}
