//! Command-line front end.

mod report;
pub mod suite;

pub use report::{emit_report, exit_code, OutputMode, Record, Status};
pub use suite::{run_suite, SuiteName, SuiteReport};

use crate::conjharness::{
    check_monotone, run_ladder, search_certificate, search_statement2, verify_chain, ChainStatus, DomainId,
    EvidenceLedger, EvidenceRecord, RunOptions, SearchOutcome, DEFAULT_LADDER,
};
use crate::error::{Error, Result};
use crate::exactalg::rat::common_denominator;
use crate::intpoly::parse::{parse_lat_ideal, parse_poly_at, parse_quad_list, parse_series_list};
use crate::intpoly::{
    graded_basis_for, int_member, int_member_at, interchange_check, localization_check, mpalpha_member,
    theta_check_bivariate, DomainHandle, IvPoly, MultSet, PadicAlgebraic, Target,
};
use crate::latorder::{
    lat_conductor, prime_profile_bounded, profile_primes, LatIdeal, PrimeProfile, QuadOrder, DEFAULT_SEARCH_BOUND,
};
use crate::psring::{conductor_ideal, FracIdeal, RingElement, SemigroupRingSpec};
use crate::verdict::{Outcome, Verdict};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::io::Write;
use std::path::Path;
use std::sync::Arc;

pub const MAX_DEGREE: usize = 16;
pub const MAX_PRECISION: i64 = 256;
pub const MAX_PRIME: u64 = 97 * 97;

/// Environment variable overriding the default working precision.
pub const PRECISION_ENV: &str = "IVP_PRECISION";

#[derive(Debug, Parser)]
#[command(name = "intstar", version, about = "Integer-valued polynomials, star operations and conductor ideals")]
pub struct RunConfig {
    /// Output mode.
    #[arg(long, value_enum, default_value_t = OutputMode::Text, global = true)]
    pub format: OutputMode,
    /// Seed for randomized suites; echoed in every report.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide f ∈ Int(D, target).
    Member {
        #[arg(long)]
        domain: String,
        #[arg(long)]
        poly: String,
        /// `D` (default), `D'`, an integer n, `Z_(q)`, or an ideal literal.
        #[arg(long, default_value = "D")]
        target: String,
        #[arg(long)]
        prec: Option<i64>,
    },
    /// Basis of Int(D)≤d.
    Basis {
        #[arg(long)]
        domain: String,
        #[arg(long)]
        deg: usize,
        #[arg(long, default_value = "D")]
        target: String,
        #[arg(long)]
        prec: Option<i64>,
    },
    /// Ideal operations: v, t, inverse, colon, mul, add, conductor.
    Closure(ClosureArgs),
    /// Prime profile of one prime, or of all primes up to a norm bound.
    Profile {
        #[arg(long)]
        domain: String,
        #[arg(long, conflicts_with = "norm_bound")]
        ideal: Option<String>,
        #[arg(long)]
        norm_bound: Option<u64>,
        /// Height bound of the Ass witness search.
        #[arg(long, default_value_t = DEFAULT_SEARCH_BOUND)]
        bound: i64,
    },
    /// Int(S⁻¹ℤ) = S⁻¹Int(ℤ) at bounded degree.
    Localize {
        #[arg(long, default_value = "Z")]
        domain: String,
        /// S = ℤ ∖ (p); omitted means S = {1}.
        #[arg(long)]
        prime: Option<u64>,
        #[arg(long)]
        deg: usize,
    },
    /// (Int(ℤ_(p)))_(q) = (ℤ_(p))_(q)[X] at bounded degree.
    Interchange {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        deg: usize,
    },
    /// Decide f ∈ m_{p,α}.
    Mpalpha {
        #[arg(long)]
        p: u64,
        /// Minimal polynomial coefficients, constant term first: `-17,0,1`.
        #[arg(long, default_value = "0,1", allow_hyphen_values = true)]
        minpoly: String,
        /// Approximate root to start Hensel lifting from.
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        root: i64,
        #[arg(long)]
        poly: String,
        #[arg(long, default_value_t = 32)]
        prec: u32,
    },
    /// θ for ℤ in two variables up to bidegree (d, d).
    Theta {
        #[arg(long)]
        deg: usize,
    },
    /// Non-flatness harness.
    #[command(subcommand)]
    Conjecture(ConjectureCommand),
    /// Named property suites.
    Suite {
        #[arg(long, value_enum)]
        name: SuiteName,
        #[arg(long, default_value_t = 100)]
        count: usize,
    },
}

#[derive(Debug, Args)]
pub struct ClosureArgs {
    #[arg(long)]
    pub domain: String,
    #[arg(long, value_enum)]
    pub op: IdealOp,
    /// Ideal literal: `(T^2, T^3)`, `(2, 1 + w)` or `[a, b, c]`.
    #[arg(long)]
    pub ideal: Option<String>,
    /// Second ideal for colon, mul and add.
    #[arg(long)]
    pub other: Option<String>,
    /// Elements a, b of the conductor (aD :_D bD).
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<String>,
    #[arg(long)]
    pub prec: Option<i64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum IdealOp {
    V,
    T,
    Inverse,
    Colon,
    Mul,
    Add,
    Conductor,
}

impl IdealOp {
    pub fn name(self) -> String {
        self.to_possible_value().map_or_else(String::new, |v| v.get_name().to_string())
    }
}

#[derive(Debug, Subcommand)]
pub enum ConjectureCommand {
    /// Check the four premises.
    Verify {
        #[arg(long)]
        domain: DomainId,
        #[arg(long)]
        prec: Option<i64>,
    },
    /// Search for a certificate of target ∈ M·Int(D)≤d.
    Search {
        #[arg(long)]
        domain: DomainId,
        #[arg(long, default_value = "X^2 + X")]
        target: String,
        #[arg(long, required_unless_present = "ladder")]
        deg: Option<usize>,
        #[arg(long, required_unless_present = "ladder")]
        prec: Option<i64>,
        /// Run the default ladder (2,8), (4,16), (6,24) with both statements.
        #[arg(long)]
        ladder: bool,
        /// Append the records to this json-lines evidence file.
        #[arg(long)]
        ledger: Option<std::path::PathBuf>,
        /// Zero wall times and timestamps.
        #[arg(long)]
        deterministic: bool,
    },
}

impl clap::builder::ValueParserFactory for DomainId {
    type Parser = clap::builder::ValueParser;

    fn value_parser() -> Self::Parser {
        clap::builder::ValueParser::new(|s: &str| s.parse::<DomainId>().map_err(|e| e.to_string()))
    }
}

fn usage(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

fn check_degree(d: usize) -> Result<usize> {
    if d > MAX_DEGREE {
        return Err(usage(format!("degree {d} exceeds {MAX_DEGREE}")));
    }
    Ok(d)
}

fn check_prime(p: u64) -> Result<u64> {
    if p > MAX_PRIME {
        return Err(usage(format!("prime {p} exceeds {MAX_PRIME}")));
    }
    if !crate::exactalg::ff::is_prime_u64(p) {
        return Err(usage(format!("{p} is not prime")));
    }
    Ok(p)
}

/// `--prec`, else `IVP_PRECISION`, else `None`.
fn precision(arg: Option<i64>) -> Result<Option<i64>> {
    let p = match arg {
        Some(p) => Some(p),
        None => match std::env::var(PRECISION_ENV) {
            Ok(s) => Some(
                s.trim()
                    .parse::<i64>()
                    .map_err(|_| usage(format!("{PRECISION_ENV}={s:?} is not an integer")))?,
            ),
            Err(_) => None,
        },
    };
    if let Some(p) = p {
        if !(1..=MAX_PRECISION).contains(&p) {
            return Err(usage(format!("precision {p} outside 1..={MAX_PRECISION}")));
        }
    }
    Ok(p)
}

/// A built-in domain name or a path to a spec file.
pub fn resolve_domain(s: &str) -> Result<DomainHandle> {
    let path = Path::new(s);
    if path.is_file() {
        let src = std::fs::read_to_string(path)?;
        let is_order = crate::textfmt::parse(&src).is_ok_and(|d| d.get("order").is_some());
        return if is_order {
            Ok(DomainHandle::QuadOrder(QuadOrder::from_text(&src)?))
        } else {
            Ok(DomainHandle::series(SemigroupRingSpec::from_text(&src)?))
        };
    }
    DomainHandle::by_name(s)
}

fn series_ideal(spec: &Arc<SemigroupRingSpec>, src: &str, prec: i64) -> Result<FracIdeal> {
    FracIdeal::from_generators(spec, &parse_series_list(spec, src, prec)?)
}

fn resolve_target(dom: &DomainHandle, s: &str, prec: i64) -> Result<Target> {
    let s = s.trim();
    if s == "D" {
        return Ok(Target::Ring);
    }
    match dom {
        DomainHandle::DvrSeries(spec) | DomainHandle::SemigroupRing(spec) => {
            if s == "D'" {
                Ok(Target::integral_closure(spec))
            } else {
                Ok(Target::Series(series_ideal(spec, s, prec)?))
            }
        }
        DomainHandle::Integers | DomainHandle::LocalizedIntegers(_) => {
            if let Some(q) = s.strip_prefix("Z_(").and_then(|r| r.strip_suffix(')')) {
                let q = q.parse::<u64>().map_err(|_| usage(format!("bad prime in {s:?}")))?;
                return Ok(Target::LocalizedAt(check_prime(q)?));
            }
            let n = s
                .parse::<num_bigint::BigInt>()
                .map_err(|_| usage(format!("target {s:?} is not D, Z_(q) or an integer")))?;
            Ok(Target::IntegerIdeal(n))
        }
        DomainHandle::QuadOrder(o) => Ok(Target::Lattice(parse_lat_ideal(*o, s)?)),
    }
}

fn status_of(v: &Verdict) -> Status {
    match v.outcome {
        Outcome::Yes => Status::Pass,
        Outcome::No => Status::Fail,
        Outcome::Unknown => Status::Unknown,
    }
}

fn verdict_record(command: &str, subject: String, v: &Verdict, extra: Value) -> Record {
    let mut data = json!({ "verdict": v });
    if let (Value::Object(m), Value::Object(e)) = (&mut data, extra) {
        m.extend(e);
    }
    Record::new(command, subject, v.to_string(), status_of(v), data)
}

fn info_record(command: &str, subject: String, result: String, data: Value) -> Record {
    Record::new(command, subject, result, Status::Pass, data)
}

/// Runs one configuration and returns its records.
pub fn dispatch(config: &RunConfig) -> Result<Vec<Record>> {
    match &config.command {
        Command::Member {
            domain,
            poly,
            target,
            prec,
        } => {
            let dom = resolve_domain(domain)?;
            let prec = precision(*prec)?;
            let p = prec.unwrap_or_else(|| dom.series_spec().map_or(64, |s| s.default_precision(0)));
            let f = parse_poly_at(&dom, poly, prec)?;
            check_degree(f.degree().unwrap_or(0))?;
            let t = resolve_target(&dom, target, p)?;
            let v = match prec {
                Some(p) if dom.series_spec().is_some() => int_member_at(&dom, &f, &t, p)?,
                _ => int_member(&dom, &f, &t)?,
            };
            Ok(vec![verdict_record(
                "member",
                format!("{f} in Int({dom}, {})", t.describe()),
                &v,
                json!({ "domain": dom.name(), "poly": f.to_string(), "target": t.describe() }),
            )])
        }
        Command::Basis {
            domain,
            deg,
            target,
            prec,
        } => {
            let dom = resolve_domain(domain)?;
            let d = check_degree(*deg)?;
            let prec = precision(*prec)?;
            let p = prec.unwrap_or_else(|| dom.series_spec().map_or(64, |s| s.default_precision(d)));
            let t = resolve_target(&dom, target, p)?;
            let b = graded_basis_for(&dom, d, &t, prec)?;
            let gens: Vec<String> = b.generators().map(|g| g.to_string()).collect();
            let denominators: Vec<String> = b
                .generators()
                .map(|g| match g {
                    IvPoly::Rational(f) => common_denominator(f).to_string(),
                    _ => String::new(),
                })
                .collect();
            let mut out = Vec::new();
            for (k, layer) in b.by_degree.iter().enumerate() {
                for g in layer {
                    out.push(info_record("basis", format!("degree {k}"), g.to_string(), json!({ "degree": k })));
                }
            }
            out.push(info_record(
                "basis",
                format!("Int({dom}, {})≤{d}", t.describe()),
                format!("{} generators ({:?})", gens.len(), b.kind),
                json!({
                    "domain": dom.name(),
                    "degree": d,
                    "kind": format!("{:?}", b.kind),
                    "generators": gens,
                    "denominators": denominators,
                    "tail": b.tail,
                    "precision": b.precision,
                }),
            ));
            Ok(out)
        }
        Command::Closure(a) => closure(a),
        Command::Profile {
            domain,
            ideal,
            norm_bound,
            bound,
        } => {
            let DomainHandle::QuadOrder(o) = resolve_domain(domain)? else {
                return Err(Error::UnsupportedDomain("profiles are computed for quadratic orders".into()));
            };
            if !(1..=200).contains(bound) {
                return Err(usage("search bound must lie in 1..=200"));
            }
            let profiles = match (ideal, norm_bound) {
                (Some(i), _) => vec![prime_profile_bounded(&parse_lat_ideal(o, i)?, *bound)?],
                (None, Some(n)) if *n <= 10_000 => profile_primes(o, *n)?,
                (None, Some(n)) => return Err(usage(format!("norm bound {n} exceeds 10000"))),
                (None, None) => return Err(usage("profile needs --ideal or --norm-bound")),
            };
            Ok(profiles.iter().map(profile_record).collect())
        }
        Command::Localize { domain, prime, deg } => {
            let dom = resolve_domain(domain)?;
            let s = match prime {
                Some(p) => MultSet::PrimeComplement(check_prime(*p)?),
                None => MultSet::Trivial,
            };
            let v = localization_check(&dom, s, check_degree(*deg)?)?;
            Ok(vec![verdict_record("localize", format!("{dom}, {s:?}, d = {deg}"), &v, json!({}))])
        }
        Command::Interchange { p, q, deg } => {
            let v = interchange_check(&DomainHandle::Integers, check_prime(*p)?, check_prime(*q)?, check_degree(*deg)?)?;
            Ok(vec![verdict_record("interchange", format!("p = {p}, q = {q}, d = {deg}"), &v, json!({}))])
        }
        Command::Mpalpha {
            p,
            minpoly,
            root,
            poly,
            prec,
        } => {
            let p = check_prime(*p)?;
            let coeffs = minpoly
                .split(',')
                .map(|c| c.trim().parse::<i64>().map_err(|_| usage(format!("bad coefficient {c:?}"))))
                .collect::<Result<Vec<_>>>()?;
            let alpha = PadicAlgebraic::hensel(p, &coeffs, *root, *prec)?;
            let f = parse_poly_at(&DomainHandle::Integers, poly, None)?;
            let v = mpalpha_member(p, &alpha, &f, *prec)?;
            Ok(vec![verdict_record(
                "mpalpha",
                format!("{f} in m_({p}, {alpha})"),
                &v,
                json!({ "alpha": alpha.to_string() }),
            )])
        }
        Command::Theta { deg } => {
            let r = theta_check_bivariate(check_degree(*deg)?)?;
            Ok(vec![verdict_record(
                "theta",
                format!("bidegree ({deg}, {deg})"),
                &r.verdict,
                json!({ "report": r }),
            )])
        }
        Command::Conjecture(c) => conjecture(c),
        Command::Suite { name, count } => {
            if *count > 100_000 {
                return Err(usage("count exceeds 100000"));
            }
            let r = run_suite(*name, config.seed, *count)?;
            let status = if !r.violations.is_empty() {
                Status::Fail
            } else if r.unknown > 0 {
                Status::Unknown
            } else {
                Status::Pass
            };
            let result = format!("{} cases, {} violations, {} unknown", r.cases, r.violations.len(), r.unknown);
            Ok(vec![Record::new("suite", format!("{name:?}"), result, status, json!({ "report": r }))])
        }
    }
}

fn profile_record(prof: &PrimeProfile) -> Record {
    let rows: Vec<String> = prof.rows().iter().map(|(k, v)| format!("{k}: {}", v.outcome)).collect();
    let violations = prof.diagram_violations();
    let status = if violations.is_empty() { Status::Pass } else { Status::Fail };
    Record::new(
        "profile",
        format!("{} in {}", prof.prime, prof.order),
        rows.join(", "),
        status,
        json!({ "profile": prof, "diagram_violations": violations }),
    )
}

fn closure(a: &ClosureArgs) -> Result<Vec<Record>> {
    let dom = resolve_domain(&a.domain)?;
    let need = |x: &Option<String>, flag: &str| x.clone().ok_or_else(|| usage(format!("--op {} needs --{flag}", a.op.name())));
    let (subject, result) = match &dom {
        DomainHandle::DvrSeries(spec) | DomainHandle::SemigroupRing(spec) => {
            let p = precision(a.prec)?.unwrap_or_else(|| spec.default_precision(0));
            if a.op == IdealOp::Conductor {
                let parse = |s: String| -> Result<RingElement> {
                    let xs = parse_series_list(spec, &format!("({s})"), p)?;
                    RingElement::new(spec, xs[0].clone())
                };
                let (x, y) = (parse(need(&a.a, "a")?)?, parse(need(&a.b, "b")?)?);
                let c = conductor_ideal(&x, &y)?;
                (format!("({}D :_D {}D)", x.series(), y.series()), c.describe())
            } else {
                let i = series_ideal(spec, &need(&a.ideal, "ideal")?, p)?;
                let out = match a.op {
                    IdealOp::V | IdealOp::T => i.v_closure()?,
                    IdealOp::Inverse => i.inverse()?,
                    IdealOp::Colon | IdealOp::Mul | IdealOp::Add => {
                        let j = series_ideal(spec, &need(&a.other, "other")?, p)?;
                        match a.op {
                            IdealOp::Colon => i.colon(&j)?,
                            IdealOp::Mul => i.mul(&j)?,
                            _ => i.add(&j)?,
                        }
                    }
                    IdealOp::Conductor => unreachable!(),
                };
                (format!("{} of {}", a.op.name(), i.describe()), out.describe())
            }
        }
        DomainHandle::QuadOrder(o) => {
            if a.op == IdealOp::Conductor {
                let parse = |s: String| -> Result<crate::latorder::QuadElem> {
                    Ok(parse_quad_list(*o, &format!("({s})"))?.remove(0))
                };
                let (x, y) = (parse(need(&a.a, "a")?)?, parse(need(&a.b, "b")?)?);
                let c = lat_conductor(&x, &y)?;
                (format!("conductor in {o}"), c.describe())
            } else {
                let i = parse_lat_ideal(*o, &need(&a.ideal, "ideal")?)?;
                let out: LatIdeal = match a.op {
                    IdealOp::V => i.v_closure()?,
                    IdealOp::T => i.t_closure()?,
                    IdealOp::Inverse => i.inverse()?,
                    IdealOp::Colon | IdealOp::Mul | IdealOp::Add => {
                        let j = parse_lat_ideal(*o, &need(&a.other, "other")?)?;
                        match a.op {
                            IdealOp::Colon => i.colon(&j)?,
                            IdealOp::Mul => i.mul(&j)?,
                            _ => i.add(&j)?,
                        }
                    }
                    IdealOp::Conductor => unreachable!(),
                };
                (format!("{} of {}", a.op.name(), i.describe()), out.describe())
            }
        }
        _ => return Err(Error::UnsupportedDomain(format!("ideal operations need a series or quadratic domain, not {dom}"))),
    };
    Ok(vec![info_record("closure", subject, result.clone(), json!({ "ideal": result }))])
}

fn evidence_record(r: &EvidenceRecord) -> Record {
    let status = match (r.statement, r.outcome) {
        (_, Some(SearchOutcome::Inconclusive)) => Status::Unknown,
        (_, Some(_)) => Status::Pass,
        (_, None) => status_of(&r.verdict),
    };
    let result = match (r.outcome, &r.certificate) {
        (Some(SearchOutcome::CertificateFound), Some(c)) => format!("CertificateFound: {c}"),
        (Some(o), _) => format!("{o:?}: {}", r.verdict),
        (None, _) => r.verdict.to_string(),
    };
    Record::new(
        "conjecture",
        format!("{} {:?} (d = {}, p = {})", r.domain, r.statement, r.degree, r.precision),
        result,
        status,
        serde_json::to_value(r).expect("records serialize"),
    )
}

fn conjecture(c: &ConjectureCommand) -> Result<Vec<Record>> {
    match c {
        ConjectureCommand::Verify { domain, prec } => {
            let p = precision(*prec)?.unwrap_or(16);
            let r = verify_chain(*domain, p)?;
            let mut out: Vec<Record> = r
                .items
                .iter()
                .map(|i| verdict_record("conjecture", format!("{domain}: {}", i.name), &i.verdict, json!({ "detail": i.detail })))
                .collect();
            let status = match r.status {
                ChainStatus::Verified => Status::Pass,
                ChainStatus::Unresolved => Status::Unknown,
                ChainStatus::Failed | ChainStatus::NotApplicable => Status::Fail,
            };
            out.push(Record::new(
                "conjecture",
                format!("{domain} premises"),
                format!("{:?}", r.status),
                status,
                serde_json::to_value(&r).expect("reports serialize"),
            ));
            Ok(out)
        }
        ConjectureCommand::Search {
            domain,
            target,
            deg,
            prec,
            ladder,
            ledger,
            deterministic,
        } => {
            let opts = RunOptions {
                deterministic: *deterministic,
            };
            let records = if *ladder {
                let recs = run_ladder(*domain, target, &DEFAULT_LADDER, opts)?;
                let violations = check_monotone(&recs);
                if !violations.is_empty() {
                    return Err(Error::InvalidArgument(format!("ladder is not monotone: {violations:?}")));
                }
                recs
            } else {
                let d = check_degree(deg.expect("required by clap"))?;
                let p = precision(*prec)?.expect("required by clap");
                let started = std::time::Instant::now();
                let s = search_certificate(*domain, target, d, p)?;
                let mut recs = vec![EvidenceRecord::from_search(*domain, s, d, p, opts, started)];
                if *domain != DomainId::F2Dvr {
                    let started = std::time::Instant::now();
                    let s = search_statement2(*domain, d, p)?;
                    recs.push(EvidenceRecord::from_search(*domain, s, d, p, opts, started));
                }
                recs
            };
            if let Some(path) = ledger {
                EvidenceLedger::new(path).append(&records)?;
            }
            Ok(records.iter().map(evidence_record).collect())
        }
    }
}

/// Maps an error to its exit status.
pub fn error_exit_code(e: &Error) -> i32 {
    match e {
        Error::PrecisionExhausted(_) | Error::PrecisionUnderflow(_) | Error::ResourceLimit(_) => 2,
        Error::PremisesNotVerified(_) | Error::NotPrime(_) => 1,
        _ => 3,
    }
}

/// Parses `args`, runs them and writes the report; returns the exit status.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    match dispatch(&config) {
        Ok(records) => {
            if let Err(e) = emit_report(out, &records, config.format, config.seed) {
                let _ = writeln!(err, "error: {e}");
                return 3;
            }
            exit_code(&records)
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            error_exit_code(&e)
        }
    }
}
