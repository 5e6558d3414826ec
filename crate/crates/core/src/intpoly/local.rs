use super::basis::graded_basis;
use super::member::int_member;
use super::module::{module_member, ModuleWindow};
use super::{DomainHandle, IvPoly, Target};
use crate::error::{Error, Result};
use crate::exactalg::rat::{common_denominator, vp_int};
use crate::exactalg::zlinalg::IntHnf;
use crate::exactalg::{Poly, Rat};
use crate::verdict::Verdict;
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// A multiplicative subset of `ℤ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MultSet {
    /// `{1}`.
    Trivial,
    /// `ℤ ∖ (p)`.
    PrimeComplement(u64),
}

const MAX_DEGREE: usize = 16;

/// Checks `Int(S⁻¹D) = S⁻¹ Int(D)` in degree at most `d`.
pub fn localization_check(dom: &DomainHandle, s: MultSet, d: usize) -> Result<Verdict> {
    if *dom != DomainHandle::Integers {
        return Err(Error::UnsupportedDomain(format!("localization checks need D = Z, not {dom}")));
    }
    if d > MAX_DEGREE {
        return Err(Error::InvalidArgument(format!("degree {d} exceeds {MAX_DEGREE}")));
    }
    let local = match s {
        MultSet::Trivial => DomainHandle::Integers,
        MultSet::PrimeComplement(p) => DomainHandle::localized(p)?,
    };
    let global = graded_basis(dom, d)?;
    let window = ModuleWindow {
        max_degree: d,
        precision: 0,
    };
    // S⁻¹Int(D) ⊆ Int(S⁻¹D): the generators suffice since Int(S⁻¹D) is an S⁻¹D-module
    for f in global.generators() {
        let v = int_member(&local, f, &Target::Ring)?;
        if !v.is_yes() {
            return Ok(Verdict::no(format!("{f} is not in Int({local})")).at_degree(d));
        }
    }
    // Int(S⁻¹D) ⊆ S⁻¹Int(D): each local generator is s⁻¹ g with g in the span of Int(D)≤d
    let gens: Vec<IvPoly> = global.generators().cloned().collect();
    let mut used = Vec::new();
    for h in graded_basis(&local, d)?.generators() {
        let hr = h.as_rational()?;
        let s = match s {
            MultSet::Trivial => BigInt::one(),
            MultSet::PrimeComplement(p) => prime_to(&common_denominator(hr), p),
        };
        let g = IvPoly::Rational(hr.scale(&Rat::from_integer(s.clone()))?);
        let m = module_member(&g, &gens, dom, window)?;
        if !m.verdict.is_yes() {
            return Ok(Verdict::no(format!("{s}·({h}) is not in the span of Int(Z)≤{d}")).at_degree(d));
        }
        if !s.is_one() {
            used.push(s.to_string());
        }
    }
    let note = if used.is_empty() {
        "both bases agree".to_string()
    } else {
        format!("denominators cleared by {}", used.join(", "))
    };
    Ok(Verdict::yes().with_witness(note).at_degree(d))
}

fn prime_to(n: &BigInt, p: u64) -> BigInt {
    let k = vp_int(n, p).unwrap_or(0);
    n / BigInt::from(p).pow(k)
}

/// Checks `(Int(ℤ_(p)))_(q) = (ℤ_(p))_(q)[X]` in degree at most `d`, reading
/// the iterated localization as inverting every nonzero integer.
pub fn interchange_check(dom: &DomainHandle, p: u64, q: u64, d: usize) -> Result<Verdict> {
    if p == q {
        return Err(Error::EqualPrimes);
    }
    if *dom != DomainHandle::Integers {
        return Err(Error::UnsupportedDomain(format!("interchange checks need D = Z, not {dom}")));
    }
    if d > MAX_DEGREE {
        return Err(Error::InvalidArgument(format!("degree {d} exceeds {MAX_DEGREE}")));
    }
    DomainHandle::localized(q)?;
    let basis = graded_basis(&DomainHandle::localized(p)?, d)?;
    // left to right: clearing the p-power denominator, a unit after localizing, lands in ℚ[X]
    let mut rows = Vec::new();
    for h in basis.generators() {
        let hr = h.as_rational()?;
        let u = common_denominator(hr);
        let cleared = hr.scale(&Rat::from_integer(u.clone()))?;
        if cleared.coeffs().iter().any(|c| !c.is_integer()) {
            return Ok(Verdict::no(format!("{u}·({h}) has non-integral coefficients")).at_degree(d));
        }
        rows.push(row(&cleared, d + 1));
    }
    // right to left: each X^k is a rational combination of the local basis
    let hnf = IntHnf::new(&rows, d + 1);
    for k in 0..=d {
        let mut e = vec![BigInt::zero(); d + 1];
        e[k] = BigInt::one();
        if hnf.solve_rational(&e).is_none() {
            return Ok(Verdict::no(format!("X^{k} is not in the localized span")).at_degree(d));
        }
    }
    Ok(Verdict::yes()
        .with_witness(format!("ranks agree: {} = {}", hnf.rank(), d + 1))
        .at_degree(d))
}

fn row(f: &Poly<Rat>, n: usize) -> Vec<BigInt> {
    (0..n)
        .map(|k| f.coeff(k).map_or_else(BigInt::zero, |c| c.to_integer()))
        .collect()
}
