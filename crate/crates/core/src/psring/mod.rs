//! Local subrings of `k'[[T]]` cut out by a numerical semigroup and
//! subfield constraints, with fractional-ideal arithmetic.

mod ideal;
mod spec;

pub use ideal::{coords, from_coords, ideal_colon, v_closure_fg, Closure, FracIdeal, Staircase};
pub use spec::{semigroup_conductor, Level, SemigroupRingSpec};

use crate::error::{Error, Result};
use crate::exactalg::{Echelon, Fe, TruncSeries, EXACT};
use crate::verdict::Verdict;
use serde::Serialize;
use std::sync::Arc;

/// Decides `s ∈ D` from the coefficients known so far.
pub fn ring_contains(spec: &SemigroupRingSpec, s: &TruncSeries) -> Result<Verdict> {
    if s.field() != spec.field() {
        return Err(Error::field_mismatch(s.field(), spec.field()));
    }
    for (i, c) in s.terms() {
        if i >= spec.conductor() {
            break;
        }
        if !spec.coeff_allowed(i, c) {
            return Ok(Verdict::no(format!(
                "coefficient {} of T^{i} is not allowed (exponent {i})",
                s.field().format(c)
            )));
        }
    }
    if s.precision() < spec.conductor() {
        return Ok(Verdict::unknown(format!(
            "precision {} below the conductor exponent {}",
            s.precision(),
            spec.conductor()
        ))
        .at_precision(s.precision()));
    }
    Ok(Verdict::yes().at_precision(s.precision()))
}

/// An element of `D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingElement {
    series: TruncSeries,
    spec: Arc<SemigroupRingSpec>,
}

impl RingElement {
    pub fn new(spec: &Arc<SemigroupRingSpec>, series: TruncSeries) -> Result<Self> {
        let v = ring_contains(spec, &series)?;
        if v.is_no() {
            return Err(Error::InvalidArgument(format!(
                "{series} is not in {}: {}",
                spec.describe(),
                v.witness.unwrap_or_default()
            )));
        }
        Ok(RingElement {
            series,
            spec: spec.clone(),
        })
    }

    pub fn series(&self) -> &TruncSeries {
        &self.series
    }

    pub fn spec(&self) -> &Arc<SemigroupRingSpec> {
        &self.spec
    }
}

/// `(aD :_D bD) = {x ∈ D : x b ∈ a D}`.
pub fn conductor_ideal(a: &RingElement, b: &RingElement) -> Result<FracIdeal> {
    let spec = a.spec();
    if a.series.is_zero() {
        return Err(Error::ZeroDivisorInput);
    }
    let d = FracIdeal::unit(spec);
    if b.series.is_zero() {
        return Ok(d);
    }
    let ad = FracIdeal::principal(spec, &a.series)?;
    let bd = FracIdeal::principal(spec, &b.series)?;
    ad.colon(&bd)?.intersect(&d)
}

/// Representatives of `D / (J ∩ D)`.
#[derive(Clone, Debug)]
pub struct QuotientEnum {
    pub modulus: FracIdeal,
    /// Prime-field basis of a complement of `J ∩ D` in `D`, made of monomials.
    pub basis: Vec<TruncSeries>,
    pub reps: Vec<RingElement>,
    pub codimension: usize,
}

/// Largest quotient that will be enumerated.
pub const MAX_REPS: usize = 1 << 20;

pub fn quotient_reps(j: &FracIdeal) -> Result<QuotientEnum> {
    let spec = j.spec().clone();
    let jd = j.intersect(&FracIdeal::unit(&spec))?;
    let e = spec.ext_degree();
    let w = spec.conductor().max(jd.tail());
    let ncols = (w as usize) * e;
    let mut ech = Echelon::new(spec.prime_field(), ncols);
    let st = jd.staircase();
    for r in &st.rows {
        let mut v = vec![Fe(0); ncols];
        let off = (st.lo as usize) * e;
        v[off..off + r.len()].copy_from_slice(r);
        ech.insert(v);
    }
    for c in (st.tail as usize) * e..ncols {
        let mut v = vec![Fe(0); ncols];
        v[c] = Fe(1);
        ech.insert(v);
    }
    let mut basis = Vec::new();
    for i in 0..w {
        for b in spec.level_basis(i) {
            let m = TruncSeries::monomial(spec.field(), b, i, EXACT);
            if ech.insert(coords(&m, 0, w, e)) {
                basis.push(m);
            }
        }
    }
    let p = spec.field().characteristic() as usize;
    let count = p
        .checked_pow(basis.len() as u32)
        .filter(|&n| n <= MAX_REPS)
        .ok_or_else(|| {
            Error::ResourceLimit(format!(
                "quotient has {}^{} elements",
                p,
                basis.len()
            ))
        })?;
    let prime = spec.prime_field();
    let mut reps = Vec::with_capacity(count);
    for n in 0..count {
        let mut x = TruncSeries::zero(spec.field(), EXACT);
        let mut k = n;
        for b in &basis {
            let digit = (k % p) as u16;
            k /= p;
            if digit != 0 {
                x = x.add(&b.scale(prime.from_int(digit as i64)))?;
            }
        }
        reps.push(RingElement {
            series: x,
            spec: spec.clone(),
        });
    }
    Ok(QuotientEnum {
        modulus: jd,
        codimension: basis.len(),
        basis,
        reps,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TMaxProfile {
    pub maximal_ideal: String,
    pub v_closure: String,
    pub principal: bool,
    pub generator_count: usize,
}

/// Whether the maximal ideal `M` is a t-ideal (hence t-maximal), and whether it is principal.
pub fn is_t_maximal_local(spec: &Arc<SemigroupRingSpec>) -> Result<(Verdict, TMaxProfile)> {
    let m = FracIdeal::maximal(spec);
    let mv = m.v_closure()?;
    let count = m.min_generator_count()?;
    let verdict = Verdict::decide(mv == m && !mv.is_unit_ideal(), || format!("M_v = {mv}"));
    Ok((
        verdict,
        TMaxProfile {
            maximal_ideal: m.describe(),
            v_closure: mv.describe(),
            principal: count == 1,
            generator_count: count,
        },
    ))
}

/// A random exact element of `D` supported below `T^span`; never zero.
pub fn random_element(spec: &SemigroupRingSpec, rng: &mut impl rand::Rng, span: i64) -> TruncSeries {
    let f = spec.field();
    let p = f.characteristic() as i64;
    loop {
        let mut x = TruncSeries::zero(spec.field(), EXACT);
        for i in 0..span {
            for b in spec.level_basis(i) {
                let c = f.from_int(rng.gen_range(0..p));
                if c.0 != 0 {
                    let m = TruncSeries::monomial(f, f.mul(b, c), i, EXACT);
                    x = x.add(&m).expect("same field");
                }
            }
        }
        if !x.is_zero() {
            return x;
        }
    }
}

/// A random nonzero ideal of `D` with one to three generators.
pub fn random_ideal(spec: &Arc<SemigroupRingSpec>, rng: &mut impl rand::Rng) -> FracIdeal {
    let k = rng.gen_range(1..=3);
    let gens: Vec<TruncSeries> = (0..k)
        .map(|_| {
            let shift = rng.gen_range(0..6);
            random_element(spec, rng, 4).shift(shift)
        })
        .filter(|g| ring_contains(spec, g).is_ok_and(|v| v.is_yes()))
        .collect();
    match FracIdeal::from_generators(spec, &gens) {
        Ok(i) => i,
        Err(_) => FracIdeal::maximal(spec),
    }
}
