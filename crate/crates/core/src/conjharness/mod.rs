//! Premise checks and certificate search for non-flatness of `Int(D)` over
//! `F₂[[T²,T³]]` and `F₂ + T·F₄[[T]]`.

mod evidence;

pub use evidence::{
    check_monotone, run_ladder, EvidenceLedger, EvidenceRecord, MonotoneViolation, RunOptions, SearchOutcome,
    Statement, DEFAULT_LADDER, SCHEMA_VERSION,
};

use crate::error::{Error, Result};
use crate::intpoly::{
    expand, graded_basis_for, Membership, int_member_at, module_member_with_tail, parse::parse_poly_at, Combination,
    DomainHandle, IvPoly, ModuleWindow, Target,
};
use crate::exactalg::Poly;
use crate::psring::{ideal_colon, FracIdeal, SemigroupRingSpec};
use crate::verdict::Verdict;
use serde::Serialize;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

/// The domains the harness knows about.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum DomainId {
    #[serde(rename = "F2_SEMI23")]
    F2Semi23,
    #[serde(rename = "F2_TF4")]
    F2Tf4,
    /// `F₂[[T]]`, used as a control.
    #[serde(rename = "F2_DVR")]
    F2Dvr,
}

impl DomainId {
    pub fn spec(self) -> SemigroupRingSpec {
        match self {
            DomainId::F2Semi23 => SemigroupRingSpec::f2_semi23(),
            DomainId::F2Tf4 => SemigroupRingSpec::f2_tf4(),
            DomainId::F2Dvr => SemigroupRingSpec::f2_dvr(),
        }
    }

    pub fn handle(self) -> DomainHandle {
        DomainHandle::series(self.spec())
    }

    /// Exponent `k` with `M = T^k·D'`.
    pub fn shift(self) -> i64 {
        match self {
            DomainId::F2Semi23 => 2,
            DomainId::F2Tf4 | DomainId::F2Dvr => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            DomainId::F2Semi23 => "F2_SEMI23",
            DomainId::F2Tf4 => "F2_TF4",
            DomainId::F2Dvr => "F2_DVR",
        }
    }
}

impl fmt::Display for DomainId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DomainId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "F2_SEMI23" => Ok(DomainId::F2Semi23),
            "F2_TF4" => Ok(DomainId::F2Tf4),
            "F2_DVR" => Ok(DomainId::F2Dvr),
            other => Err(Error::InvalidArgument(format!(
                "unknown domain id {other:?} (expected F2_SEMI23, F2_TF4 or F2_DVR)"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PremiseItem {
    pub name: String,
    pub verdict: Verdict,
    pub detail: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ChainStatus {
    Verified,
    Failed,
    Unresolved,
    /// `M` is principal, so `M⁻¹` is not a ring and the chain does not start.
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChainReport {
    pub domain: DomainId,
    pub precision: i64,
    pub items: Vec<PremiseItem>,
    pub status: ChainStatus,
    pub note: Option<String>,
}

impl ChainReport {
    pub fn verified(&self) -> bool {
        self.status == ChainStatus::Verified
    }
}

fn item(name: &str, verdict: Verdict, detail: impl Into<String>) -> PremiseItem {
    PremiseItem {
        name: name.into(),
        verdict,
        detail: detail.into(),
    }
}

fn target_literal(k: i64) -> String {
    match k {
        1 => "(X^2 + X)/T".into(),
        k => format!("(X^2 + X)/T^{k}"),
    }
}

/// Checks the four premises: `M` is finitely generated, `M⁻¹ = D'` is an
/// overring, `(X²+X)/T^k ∈ Int(D, D')` and `X²+X ∈ Int(D)`.
pub fn verify_chain(id: DomainId, precision: i64) -> Result<ChainReport> {
    if precision < 1 {
        return Err(Error::InvalidArgument("precision must be positive".into()));
    }
    let dom = id.handle();
    let spec = dom.series_spec().expect("series domain").clone();
    let m = FracIdeal::maximal(&spec);
    let d = FracIdeal::unit(&spec);
    let dprime = FracIdeal::power_of_t(&spec, 0);
    let mut items = Vec::new();

    let gens: Vec<String> = m.generators().iter().map(|g| g.to_string()).collect();
    let count = m.min_generator_count()?;
    items.push(item(
        "M finitely generated",
        Verdict::yes().with_witness(format!("M = ({})", gens.join(", "))),
        format!("{count} minimal generators"),
    ));

    let inv = ideal_colon(&d, &m)?;
    let ring = inv.mul(&inv)? == inv;
    if !ring {
        let note = format!(
            "M = {} is principal and M^-1 = {} is not closed under multiplication",
            m.describe(),
            inv.describe()
        );
        items.push(item("M^-1 = D' is an overring", Verdict::no(note.clone()), inv.describe()));
        return Ok(ChainReport {
            domain: id,
            precision,
            items,
            status: ChainStatus::NotApplicable,
            note: Some(note),
        });
    }
    items.push(item(
        "M^-1 = D' is an overring",
        Verdict::decide(inv == dprime, || format!("M^-1 = {inv}, expected {dprime}")),
        inv.describe(),
    ));

    let k = id.shift();
    let f = parse_poly_at(&dom, &target_literal(k), Some(precision))?;
    let v3 = int_member_at(&dom, &f, &Target::Series(dprime.clone()), precision)?;
    items.push(item(&format!("{} in Int(D, D')", target_literal(k)), v3, format!("precision {precision}")));

    let g = parse_poly_at(&dom, "X^2 + X", Some(precision))?;
    let v4 = int_member_at(&dom, &g, &Target::Ring, precision)?;
    items.push(item("X^2 + X in Int(D)", v4, format!("precision {precision}")));

    let status = if items.iter().any(|i| i.verdict.is_no()) {
        ChainStatus::Failed
    } else if items.iter().any(|i| i.verdict.is_unknown()) {
        ChainStatus::Unresolved
    } else {
        ChainStatus::Verified
    };
    Ok(ChainReport {
        domain: id,
        precision,
        items,
        status,
        note: None,
    })
}

/// The outcome of one certificate search, before it is stamped into an
/// [`EvidenceRecord`].
#[derive(Clone, Debug, PartialEq)]
pub struct Search {
    pub statement: Statement,
    pub target: String,
    pub outcome: SearchOutcome,
    pub verdict: Verdict,
    pub certificate: Option<String>,
    pub reverified: Option<bool>,
    pub family_size: usize,
}

/// Generators of `Int(D)≤d` and the exponent `N` with
/// `T^N k'[[T]][X]≤d ⊆ Int(D)` implicitly included, if any.
fn int_window(id: DomainId, d: usize, p: i64) -> Result<(Vec<IvPoly>, Option<i64>)> {
    let b = graded_basis_for(&id.handle(), d, &Target::Ring, Some(p))?;
    Ok((b.generators().cloned().collect(), b.tail))
}

/// Checks that `comb` expands to `target` exactly, with the tail part in
/// `T^tail k'[[T]][X]`, at precision `prec`.
fn reverify(target: &IvPoly, comb: &Combination, family: &[IvPoly], tail: Option<i64>, prec: i64) -> Result<bool> {
    let lhs = expand(comb, family)?.truncated(prec);
    let diff = lhs.sub(&target.truncated(prec))?;
    let zero = diff.as_series()?.coeffs().iter().all(|c| c.is_zero());
    let tail_ok = match (&comb.tail_part, tail) {
        (None, _) => true,
        (Some(t), Some(n)) => t
            .as_series()?
            .coeffs()
            .iter()
            .all(|c| c.valuation().is_none_or(|v| v >= n)),
        (Some(_), None) => false,
    };
    Ok(zero && tail_ok)
}

/// Searches for `target ∈ M·Int(D)≤d`, i.e. for a refutation of the
/// non-membership statement at this window.
pub fn search_certificate(id: DomainId, target: &str, d: usize, p: i64) -> Result<Search> {
    if id != DomainId::F2Dvr {
        let chain = verify_chain(id, p)?;
        if !chain.verified() {
            return Err(Error::PremisesNotVerified(format!("{id}: {:?}", chain.status)));
        }
    }
    let dom = id.handle();
    let spec = dom.series_spec().expect("series domain").clone();
    let f = parse_poly_at(&dom, target, Some(p))?;
    if f.degree().is_some_and(|k| k > d) {
        return Err(Error::InvalidArgument(format!("target degree exceeds the window {d}")));
    }
    let m = FracIdeal::maximal(&spec);
    let (basis, tail) = int_window(id, d, p)?;
    let mut family = Vec::new();
    for g in m.generating_set() {
        let c = IvPoly::Series(Poly::constant(g));
        for b in &basis {
            family.push(c.mul(b)?);
        }
    }
    // M·T^N k'[[T]] = T^(N + lo(M)) k'[[T]]
    let mtail = tail.map(|n| n + m.lo());
    let window = ModuleWindow {
        max_degree: d,
        precision: p,
    };
    let mem = module_member_with_tail(&f, &family, &dom, window, mtail)?;
    Ok(finish(Statement::Statement1, target, &f, mem, &family, mtail, p))
}

fn finish(
    statement: Statement,
    target: &str,
    f: &IvPoly,
    mem: Membership,
    family: &[IvPoly],
    tail: Option<i64>,
    p: i64,
) -> Search {
    match mem.combination {
        Some(comb) => {
            let ok = reverify(f, &comb, family, tail, 2 * p).unwrap_or(false);
            Search {
                statement,
                target: target.into(),
                outcome: SearchOutcome::CertificateFound,
                verdict: mem.verdict,
                certificate: Some(comb.display_with(family)),
                reverified: Some(ok),
                family_size: family.len(),
            }
        }
        None => {
            let evidence = match (&mem.verdict.witness, &mem.verdict.exhausted) {
                (Some(w), _) => format!("no certificate in the window: {w}"),
                (None, Some(e)) => format!("no certificate found: {e}"),
                _ => "no certificate found".into(),
            };
            Search {
                statement,
                target: target.into(),
                outcome: if mem.verdict.is_unknown() {
                    SearchOutcome::Inconclusive
                } else {
                    SearchOutcome::NoCertificate
                },
                verdict: Verdict::unknown(evidence),
                certificate: None,
                reverified: None,
                family_size: family.len(),
            }
        }
    }
}

/// Searches for `(X²+X)/T^k ∈ D'·Int(D)≤d` directly, with `D'`-scalars.
pub fn search_statement2(id: DomainId, d: usize, p: i64) -> Result<Search> {
    if id == DomainId::F2Dvr {
        return Err(Error::UnsupportedDomain("the second statement concerns non-principal M".into()));
    }
    let chain = verify_chain(id, p)?;
    if !chain.verified() {
        return Err(Error::PremisesNotVerified(format!("{id}: {:?}", chain.status)));
    }
    let dom = id.handle();
    let spec = dom.series_spec().expect("series domain").clone();
    let target = target_literal(id.shift());
    let f = parse_poly_at(&dom, &target, Some(p))?;
    let (basis, tail) = int_window(id, d, p)?;
    let overring = DomainHandle::DvrSeries(Arc::new(SemigroupRingSpec::dvr(spec.field().clone())));
    let window = ModuleWindow {
        max_degree: d,
        precision: p,
    };
    let mem = module_member_with_tail(&f, &basis, &overring, window, tail)?;
    Ok(finish(Statement::Statement2, &target, &f, mem, &basis, tail, p))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chains() {
        for id in [DomainId::F2Semi23, DomainId::F2Tf4] {
            let r = verify_chain(id, 16).unwrap();
            assert_eq!(r.status, ChainStatus::Verified, "{id}: {r:?}");
            assert_eq!(r.items.len(), 4);
        }
        let r = verify_chain(DomainId::F2Dvr, 16).unwrap();
        assert_eq!(r.status, ChainStatus::NotApplicable);
    }

    #[test]
    fn dvr_control_finds_certificate() {
        let s = search_certificate(DomainId::F2Dvr, "X^2 + X", 2, 8).unwrap();
        assert_eq!(s.outcome, SearchOutcome::CertificateFound);
        assert_eq!(s.reverified, Some(true));
        assert!(s.verdict.is_yes());
    }

    #[test]
    fn semi23_has_no_small_certificate() {
        let s = search_certificate(DomainId::F2Semi23, "X^2 + X", 4, 16).unwrap();
        assert_eq!(s.outcome, SearchOutcome::NoCertificate, "{s:?}");
        assert!(s.verdict.is_unknown());
        let s2 = search_statement2(DomainId::F2Semi23, 4, 16).unwrap();
        assert_eq!(s2.outcome, SearchOutcome::NoCertificate, "{s2:?}");
    }

    // (X^2 + X)/T^2 = T·b + c with b, c of degree 8
    #[test]
    fn semi23_certificate_appears_at_degree_eight() {
        let s = search_certificate(DomainId::F2Semi23, "X^2 + X", 8, 32).unwrap();
        assert_eq!(s.outcome, SearchOutcome::CertificateFound, "{s:?}");
        assert_eq!(s.reverified, Some(true));
        let s2 = search_statement2(DomainId::F2Semi23, 8, 32).unwrap();
        assert_eq!(s2.outcome, SearchOutcome::CertificateFound, "{s2:?}");
    }

    // X^2 + X = T·b + gT·c with b, c of degree 4 in Int(F2 + T F4[[T]])
    #[test]
    fn tf4_certificate_appears_at_degree_four() {
        let s = search_certificate(DomainId::F2Tf4, "X^2 + X", 2, 8).unwrap();
        assert_eq!(s.outcome, SearchOutcome::NoCertificate, "{s:?}");
        let s = search_certificate(DomainId::F2Tf4, "X^2 + X", 4, 16).unwrap();
        assert_eq!(s.outcome, SearchOutcome::CertificateFound, "{s:?}");
        assert_eq!(s.reverified, Some(true));
        let s2 = search_statement2(DomainId::F2Tf4, 4, 16).unwrap();
        assert_eq!(s2.outcome, SearchOutcome::CertificateFound, "{s2:?}");
        assert_eq!(s2.reverified, Some(true));
    }

    #[test]
    fn members_of_the_module_are_found() {
        // T^2·X lies in M·Int(D) for F2[[T^2,T^3]]
        let s = search_certificate(DomainId::F2Semi23, "T^2 X", 2, 8).unwrap();
        assert_eq!(s.outcome, SearchOutcome::CertificateFound);
        assert_eq!(s.reverified, Some(true));
    }
}
