//! Integer-valued polynomials over the concrete domains: membership
//! oracles, graded bases, module membership and the instance checks built
//! on them.

mod basis;
mod local;
mod member;
mod module;
mod padic;
pub mod parse;
mod theta;

pub use basis::{graded_basis, graded_basis_for, BasisKind, GradedBasis};
pub use local::{interchange_check, localization_check, MultSet};
pub use member::{
    denominator_bound, int_member, int_member_at, interpolation_points, DenominatorBound, Uniformizer,
};
pub use module::{expand, module_member, module_member_with_tail, Combination, Membership, ModuleWindow};
pub use padic::{mpalpha_member, PadicAlgebraic};
pub use theta::{theta_check_bivariate, PrimeWindow, ThetaReport};

use crate::error::{Error, Result};
use crate::exactalg::{Poly, Rat, TruncSeries};
use crate::latorder::{LatIdeal, QuadElem, QuadOrder};
use crate::psring::{FracIdeal, SemigroupRingSpec};
use num_bigint::BigInt;
use std::fmt;
use std::sync::Arc;

/// The domain `D` of `Int(D)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DomainHandle {
    Integers,
    LocalizedIntegers(u64),
    DvrSeries(Arc<SemigroupRingSpec>),
    SemigroupRing(Arc<SemigroupRingSpec>),
    QuadOrder(QuadOrder),
}

impl DomainHandle {
    pub fn localized(p: u64) -> Result<Self> {
        if !crate::exactalg::ff::is_prime_u64(p) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        Ok(DomainHandle::LocalizedIntegers(p))
    }

    /// Series domain; the tag follows whether the semigroup is all of ℕ.
    pub fn series(spec: SemigroupRingSpec) -> Self {
        let spec = Arc::new(spec);
        if spec.is_dvr() {
            DomainHandle::DvrSeries(spec)
        } else {
            DomainHandle::SemigroupRing(spec)
        }
    }

    /// Built-in names: `Z`, `Z_(p)`, `F2_SEMI23`, `F2_TF4`, `F2_DVR`,
    /// `Z[sqrt(m)]`.
    pub fn by_name(name: &str) -> Result<Self> {
        let n = name.trim();
        match n {
            "Z" => return Ok(DomainHandle::Integers),
            "F2_SEMI23" => return Ok(Self::series(SemigroupRingSpec::f2_semi23())),
            "F2_TF4" => return Ok(Self::series(SemigroupRingSpec::f2_tf4())),
            "F2_DVR" => return Ok(Self::series(SemigroupRingSpec::f2_dvr())),
            _ => {}
        }
        if let Some(p) = n.strip_prefix("Z_(").and_then(|s| s.strip_suffix(')')) {
            let p = p
                .parse::<u64>()
                .map_err(|_| Error::InvalidArgument(format!("bad prime in {n:?}")))?;
            return Self::localized(p);
        }
        if let Some(m) = n.strip_prefix("Z[sqrt(").and_then(|s| s.strip_suffix(")]")) {
            let m = m
                .parse::<i64>()
                .map_err(|_| Error::InvalidArgument(format!("bad radicand in {n:?}")))?;
            return Ok(DomainHandle::QuadOrder(QuadOrder::sqrt(m)?));
        }
        Err(Error::InvalidArgument(format!("unknown domain {n:?}")))
    }

    pub fn name(&self) -> String {
        match self {
            DomainHandle::Integers => "Z".into(),
            DomainHandle::LocalizedIntegers(p) => format!("Z_({p})"),
            DomainHandle::DvrSeries(s) | DomainHandle::SemigroupRing(s) => s.describe(),
            DomainHandle::QuadOrder(o) => o.describe(),
        }
    }

    pub fn series_spec(&self) -> Option<&Arc<SemigroupRingSpec>> {
        match self {
            DomainHandle::DvrSeries(s) | DomainHandle::SemigroupRing(s) => Some(s),
            _ => None,
        }
    }

    /// Parses a polynomial literal with this domain's constants.
    pub fn parse_poly(&self, src: &str) -> Result<IvPoly> {
        parse::parse_poly(self, src)
    }
}

impl fmt::Display for DomainHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// A polynomial over the quotient field of a [`DomainHandle`].
#[derive(Clone, Debug, PartialEq)]
pub enum IvPoly {
    Rational(Poly<Rat>),
    Series(Poly<TruncSeries>),
    Quadratic(Poly<QuadElem>),
}

impl IvPoly {
    pub fn degree(&self) -> Option<usize> {
        match self {
            IvPoly::Rational(f) => f.degree(),
            IvPoly::Series(f) => f.degree(),
            IvPoly::Quadratic(f) => f.degree(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.degree().is_none()
    }

    pub fn as_rational(&self) -> Result<&Poly<Rat>> {
        match self {
            IvPoly::Rational(f) => Ok(f),
            _ => Err(Error::InvalidArgument("expected a polynomial over Q".into())),
        }
    }

    pub fn as_series(&self) -> Result<&Poly<TruncSeries>> {
        match self {
            IvPoly::Series(f) => Ok(f),
            _ => Err(Error::InvalidArgument("expected a polynomial over a series field".into())),
        }
    }

    pub fn as_quadratic(&self) -> Result<&Poly<QuadElem>> {
        match self {
            IvPoly::Quadratic(f) => Ok(f),
            _ => Err(Error::InvalidArgument("expected a polynomial over a quadratic field".into())),
        }
    }

    fn zip(
        &self,
        o: &IvPoly,
        r: impl Fn(&Poly<Rat>, &Poly<Rat>) -> Result<Poly<Rat>>,
        s: impl Fn(&Poly<TruncSeries>, &Poly<TruncSeries>) -> Result<Poly<TruncSeries>>,
        q: impl Fn(&Poly<QuadElem>, &Poly<QuadElem>) -> Result<Poly<QuadElem>>,
    ) -> Result<IvPoly> {
        Ok(match (self, o) {
            (IvPoly::Rational(a), IvPoly::Rational(b)) => IvPoly::Rational(r(a, b)?),
            (IvPoly::Series(a), IvPoly::Series(b)) => IvPoly::Series(s(a, b)?),
            (IvPoly::Quadratic(a), IvPoly::Quadratic(b)) => IvPoly::Quadratic(q(a, b)?),
            _ => return Err(Error::InvalidArgument("polynomials over different fields".into())),
        })
    }

    pub fn add(&self, o: &IvPoly) -> Result<IvPoly> {
        self.zip(o, |a, b| a.add(b), |a, b| a.add(b), |a, b| a.add(b))
    }

    pub fn sub(&self, o: &IvPoly) -> Result<IvPoly> {
        self.zip(o, |a, b| a.sub(b), |a, b| a.sub(b), |a, b| a.sub(b))
    }

    pub fn mul(&self, o: &IvPoly) -> Result<IvPoly> {
        self.zip(o, |a, b| a.mul(b), |a, b| a.mul(b), |a, b| a.mul(b))
    }

    /// Truncates series coefficients to absolute precision `prec`.
    pub fn truncated(&self, prec: i64) -> IvPoly {
        match self {
            IvPoly::Series(f) => IvPoly::Series(
                f.map(|c| Ok(c.truncate(prec)))
                    .expect("truncation is infallible"),
            ),
            other => other.clone(),
        }
    }
}

impl fmt::Display for IvPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IvPoly::Rational(p) => write!(f, "{p}"),
            IvPoly::Series(p) => write!(f, "{p}"),
            IvPoly::Quadratic(p) => write!(f, "{p}"),
        }
    }
}

/// Where the values `f(D)` are required to land.
#[derive(Clone, Debug, PartialEq)]
pub enum Target {
    /// `D` itself.
    Ring,
    /// `nℤ` (or `nℤ_(p)`).
    IntegerIdeal(BigInt),
    /// `ℤ_(q)` as an extension of `ℤ`.
    LocalizedAt(u64),
    /// A D-submodule of `k'((T))`: an ideal, a fractional ideal or an
    /// overring such as `k'[[T]]`.
    Series(FracIdeal),
    /// A fractional ideal of a quadratic order.
    Lattice(LatIdeal),
}

impl Target {
    /// The overring `k'[[T]]` of a series domain.
    pub fn integral_closure(spec: &Arc<SemigroupRingSpec>) -> Target {
        Target::Series(FracIdeal::power_of_t(spec, 0))
    }

    pub fn describe(&self) -> String {
        match self {
            Target::Ring => "D".into(),
            Target::IntegerIdeal(n) => format!("{n}D"),
            Target::LocalizedAt(q) => format!("Z_({q})"),
            Target::Series(i) => i.describe(),
            Target::Lattice(i) => i.describe(),
        }
    }
}
