use super::member::{denominator_bound, int_member, interpolation_points, series_eval_points, Uniformizer};
use super::{DomainHandle, IvPoly, Target};
use crate::error::{Error, Result};
use crate::exactalg::rat::{binomial_poly, falling_factorial, legendre};
use crate::exactalg::{Echelon, Fe, Poly, Rat, TruncSeries, EXACT};
use crate::psring::{coords, from_coords, FracIdeal, SemigroupRingSpec};
use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BasisKind {
    /// One generator per degree; a basis of `Int(D)≤d` as a D-module.
    Regular,
    /// A prime-field basis of `Int(D, I)≤d` modulo `T^tail k'[[T]][X]`.
    TruncatedLinear,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GradedBasis {
    pub domain: DomainHandle,
    pub degree: usize,
    pub kind: BasisKind,
    /// `by_degree[k]` lists the generators of exact degree `k`.
    pub by_degree: Vec<Vec<IvPoly>>,
    /// For truncated bases: every polynomial with coefficients in
    /// `T^tail k'[[T]]` belongs to the module and is left implicit.
    pub tail: Option<i64>,
    pub precision: Option<i64>,
    pub target: String,
}

impl GradedBasis {
    pub fn generators(&self) -> impl Iterator<Item = &IvPoly> {
        self.by_degree.iter().flatten()
    }

    pub fn len(&self) -> usize {
        self.by_degree.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// `Int(D)≤d`.
pub fn graded_basis(dom: &DomainHandle, d: usize) -> Result<GradedBasis> {
    graded_basis_for(dom, d, &Target::Ring, None)
}

/// `Int(D, target)≤d`; `prec` is the working precision of series domains.
pub fn graded_basis_for(dom: &DomainHandle, d: usize, target: &Target, prec: Option<i64>) -> Result<GradedBasis> {
    let ring = matches!(target, Target::Ring);
    let regular = |by_degree: Vec<IvPoly>, precision| GradedBasis {
        domain: dom.clone(),
        degree: d,
        kind: BasisKind::Regular,
        by_degree: by_degree.into_iter().map(|f| vec![f]).collect(),
        tail: None,
        precision,
        target: target.describe(),
    };
    let out = match dom {
        DomainHandle::Integers if ring => regular((0..=d).map(|k| IvPoly::Rational(binomial_poly(k))).collect(), None),
        DomainHandle::LocalizedIntegers(p) if ring => regular(
            (0..=d)
                .map(|k| {
                    let den = BigInt::from(*p).pow(legendre(k as u64, *p));
                    IvPoly::Rational(falling_factorial(k).scale(&Rat::new(BigInt::one(), den)).unwrap())
                })
                .collect(),
            None,
        ),
        DomainHandle::DvrSeries(spec) if ring => regular(
            dvr_basis(spec, d)?.into_iter().map(IvPoly::Series).collect(),
            None,
        ),
        DomainHandle::DvrSeries(spec) | DomainHandle::SemigroupRing(spec) => {
            let module = match target {
                Target::Ring => FracIdeal::unit(spec),
                Target::Series(i) if i.spec() == spec => i.clone(),
                _ => return Err(Error::InvalidArgument(format!("target {} does not fit {dom}", target.describe()))),
            };
            let prec = prec.unwrap_or_else(|| spec.default_precision(d));
            let (polys, tail) = series_window(spec, d, &module, prec)?;
            let mut by_degree = vec![Vec::new(); d + 1];
            for f in polys {
                by_degree[f.degree().unwrap_or(0)].push(IvPoly::Series(f));
            }
            GradedBasis {
                domain: dom.clone(),
                degree: d,
                kind: BasisKind::TruncatedLinear,
                by_degree,
                tail: Some(tail),
                precision: Some(prec),
                target: target.describe(),
            }
        }
        DomainHandle::QuadOrder(_) => {
            return Err(Error::UnsupportedDomain("graded bases are not computed for quadratic orders".into()))
        }
        _ => {
            return Err(Error::UnsupportedDomain(format!(
                "bases of Int({dom}, {}) are not computed",
                target.describe()
            )))
        }
    };
    for f in out.generators() {
        let v = int_member(dom, f, target)?;
        if !v.is_yes() {
            return Err(Error::NotIntegerValued(format!("basis element {f}: {v}")));
        }
    }
    Ok(out)
}

/// `Π_{j<k} (X - a_j) / T^{w_k}` over the digit enumeration `a_j`.
fn dvr_basis(spec: &Arc<SemigroupRingSpec>, d: usize) -> Result<Vec<Poly<TruncSeries>>> {
    let f = spec.field();
    let pts = interpolation_points(spec, d + 1);
    let one = TruncSeries::one(f, EXACT);
    let mut out = Vec::with_capacity(d + 1);
    let mut prod = Poly::constant(one.clone());
    for k in 0..=d {
        let mut w = 0;
        for j in 0..k {
            w += pts[k].sub(&pts[j])?.valuation().expect("points are distinct");
        }
        let inv = TruncSeries::monomial(f, f.one(), -w, EXACT);
        out.push(prod.scale(&inv)?);
        prod = prod.mul(&Poly::new(vec![pts[k].neg(), one.clone()]))?;
    }
    Ok(out)
}

/// Prime-field basis of `Int(D, I)≤d / T^N k'[[T]][X]≤d` with `N` the tail of
/// `I`, in reduced echelon form with the highest degree leading.
pub(crate) fn series_window(
    spec: &Arc<SemigroupRingSpec>,
    d: usize,
    module: &FracIdeal,
    prec: i64,
) -> Result<(Vec<Poly<TruncSeries>>, i64)> {
    let field = spec.field();
    let prime = spec.prime_field();
    let e = spec.ext_degree();
    let (lo, tail) = (module.lo(), module.tail());
    if prec < tail {
        return Err(Error::PrecisionExhausted(format!(
            "precision {prec} is below the tail T^{tail} of {}",
            module.describe()
        )));
    }
    let b = denominator_bound(&DomainHandle::SemigroupRing(spec.clone()), d)?.at(Uniformizer::T);
    let low = lo - b;
    let width = ((tail - low) as usize) * e;
    let ncols = (d + 1) * width;
    let col = |k: usize, i: i64, t: usize| (d - k) * width + ((i - low) as usize) * e + t;
    let mut target = Echelon::new(prime, width);
    let off = ((lo - low) as usize) * e;
    for r in &module.staircase().rows {
        let mut v = vec![Fe(0); width];
        v[off..off + r.len()].copy_from_slice(r);
        target.insert(v);
    }
    let betas = spec.full_basis();
    let mut constraints = Echelon::new(prime, ncols);
    for a in series_eval_points(spec, d, -low, tail)? {
        let mut powers = vec![TruncSeries::one(field, EXACT)];
        for k in 1..=d {
            let next = powers[k - 1].mul(&a)?;
            powers.push(next);
        }
        let mut images = vec![Vec::new(); ncols];
        for (k, ak) in powers.iter().enumerate() {
            for i in low..tail {
                for (t, &beta) in betas.iter().enumerate() {
                    let mut v = coords(&ak.scale(beta).shift(i), low, tail, e);
                    target.reduce(&mut v);
                    images[col(k, i, t)] = v;
                }
            }
        }
        for q in 0..width {
            let row: Vec<Fe> = images.iter().map(|v| v[q]).collect();
            if row.iter().any(|x| x.0 != 0) {
                constraints.insert(row);
            }
        }
        if constraints.is_full() {
            break;
        }
    }
    let kernel = Echelon::from_rows(prime, ncols, constraints.nullspace());
    let polys = kernel
        .rows_sorted()
        .into_iter()
        .map(|v| {
            let coeffs: Vec<TruncSeries> = (0..=d)
                .map(|k| {
                    let s = col(k, low, 0);
                    from_coords(field, low, &v[s..s + width], e, EXACT)
                })
                .collect();
            Poly::new(coeffs)
        })
        .collect();
    Ok((polys, tail))
}
