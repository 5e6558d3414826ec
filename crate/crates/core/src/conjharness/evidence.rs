use super::{search_certificate, search_statement2, verify_chain, DomainId, Search};
use crate::error::{Error, Result};
use crate::verdict::Verdict;
use serde::{Deserialize, Serialize};
use std::fs::OpenOptions;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::time::{Instant, SystemTime, UNIX_EPOCH};

pub const SCHEMA_VERSION: u32 = 1;

/// `(degree, precision)` rungs run by default.
pub const DEFAULT_LADDER: [(usize, i64); 3] = [(2, 8), (4, 16), (6, 24)];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Statement {
    Premises,
    /// `X²+X ∉ M·Int(D)`.
    Statement1,
    /// `Int(D, D') ≠ D'·Int(D)`.
    Statement2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SearchOutcome {
    CertificateFound,
    /// No combination exists in the window.
    NoCertificate,
    /// The window itself could not be decided.
    Inconclusive,
}

/// One line of the evidence ledger.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvidenceRecord {
    pub schema_version: u32,
    pub domain: String,
    pub target: String,
    pub statement: Statement,
    pub degree: usize,
    pub precision: i64,
    pub outcome: Option<SearchOutcome>,
    pub verdict: Verdict,
    pub certificate: Option<String>,
    /// Re-expansion of the certificate at twice the precision.
    pub reverified: Option<bool>,
    pub family_size: Option<usize>,
    pub wall_time_ms: u64,
    pub tool_version: String,
    pub timestamp: u64,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RunOptions {
    /// Zero the wall time and timestamp so that runs compare byte for byte.
    pub deterministic: bool,
}

fn stamp(opts: RunOptions, started: Instant) -> (u64, u64) {
    if opts.deterministic {
        return (0, 0);
    }
    let now = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
    (started.elapsed().as_millis() as u64, now)
}

impl EvidenceRecord {
    pub fn from_search(id: DomainId, s: Search, d: usize, p: i64, opts: RunOptions, started: Instant) -> Self {
        let (wall, ts) = stamp(opts, started);
        EvidenceRecord {
            schema_version: SCHEMA_VERSION,
            domain: id.name().into(),
            target: s.target,
            statement: s.statement,
            degree: d,
            precision: p,
            outcome: Some(s.outcome),
            verdict: s.verdict,
            certificate: s.certificate,
            reverified: s.reverified,
            family_size: Some(s.family_size),
            wall_time_ms: wall,
            tool_version: env!("CARGO_PKG_VERSION").into(),
            timestamp: ts,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }
}

/// Premise check followed by both searches at every rung of `ladder`.
/// The control domain gets no premise record and no second statement.
pub fn run_ladder(id: DomainId, target: &str, ladder: &[(usize, i64)], opts: RunOptions) -> Result<Vec<EvidenceRecord>> {
    let mut out = Vec::new();
    for &(d, p) in ladder {
        if id != DomainId::F2Dvr {
            let started = Instant::now();
            let chain = verify_chain(id, p)?;
            let verdict = chain
                .items
                .iter()
                .fold(Verdict::yes(), |acc, i| acc.and(i.verdict.clone()));
            let (wall, ts) = stamp(opts, started);
            out.push(EvidenceRecord {
                schema_version: SCHEMA_VERSION,
                domain: id.name().into(),
                target: target.into(),
                statement: Statement::Premises,
                degree: d,
                precision: p,
                outcome: None,
                verdict,
                certificate: None,
                reverified: None,
                family_size: None,
                wall_time_ms: wall,
                tool_version: env!("CARGO_PKG_VERSION").into(),
                timestamp: ts,
            });
        }
        let started = Instant::now();
        let s = search_certificate(id, target, d, p)?;
        out.push(EvidenceRecord::from_search(id, s, d, p, opts, started));
        if id != DomainId::F2Dvr {
            let started = Instant::now();
            let s = search_statement2(id, d, p)?;
            out.push(EvidenceRecord::from_search(id, s, d, p, opts, started));
        }
    }
    Ok(out)
}

/// A certificate at `(d, p)` that disappeared at a larger window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonotoneViolation {
    pub domain: String,
    pub target: String,
    pub found_at: (usize, i64),
    pub lost_at: (usize, i64),
}

pub fn check_monotone(records: &[EvidenceRecord]) -> Vec<MonotoneViolation> {
    let mut out = Vec::new();
    for a in records {
        if a.outcome != Some(SearchOutcome::CertificateFound) {
            continue;
        }
        for b in records {
            let same = a.domain == b.domain && a.target == b.target && a.statement == b.statement;
            if same
                && b.degree >= a.degree
                && b.precision >= a.precision
                && b.outcome == Some(SearchOutcome::NoCertificate)
            {
                out.push(MonotoneViolation {
                    domain: a.domain.clone(),
                    target: a.target.clone(),
                    found_at: (a.degree, a.precision),
                    lost_at: (b.degree, b.precision),
                });
            }
        }
    }
    out
}

/// Append-only JSON-lines file of [`EvidenceRecord`]s.
#[derive(Clone, Debug)]
pub struct EvidenceLedger {
    path: PathBuf,
}

impl EvidenceLedger {
    pub fn new(path: impl AsRef<Path>) -> Self {
        EvidenceLedger {
            path: path.as_ref().to_path_buf(),
        }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn append(&self, records: &[EvidenceRecord]) -> Result<()> {
        let mut f = OpenOptions::new().create(true).append(true).open(&self.path)?;
        for r in records {
            writeln!(f, "{}", r.to_json())?;
        }
        Ok(())
    }

    /// All records; a missing file is an empty ledger.
    pub fn load(&self) -> Result<Vec<EvidenceRecord>> {
        let f = match std::fs::File::open(&self.path) {
            Ok(f) => f,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
            Err(e) => return Err(e.into()),
        };
        let mut out = Vec::new();
        for (i, line) in BufReader::new(f).lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let r: EvidenceRecord = serde_json::from_str(&line).map_err(|e| Error::Parse {
                line: i + 1,
                column: e.column(),
                message: e.to_string(),
            })?;
            if r.schema_version > SCHEMA_VERSION {
                return Err(Error::Parse {
                    line: i + 1,
                    column: 1,
                    message: format!("schema version {} is newer than {SCHEMA_VERSION}", r.schema_version),
                });
            }
            out.push(r);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ledger_round_trip_and_monotonicity() {
        let dir = tempfile::tempdir().unwrap();
        let ledger = EvidenceLedger::new(dir.path().join("evidence.jsonl"));
        assert!(ledger.load().unwrap().is_empty());
        let opts = RunOptions { deterministic: true };
        let recs = run_ladder(DomainId::F2Dvr, "X^2 + X", &DEFAULT_LADDER[..2], opts).unwrap();
        ledger.append(&recs).unwrap();
        ledger.append(&recs).unwrap();
        let back = ledger.load().unwrap();
        assert_eq!(back.len(), 2 * recs.len());
        assert_eq!(&back[..recs.len()], &recs[..]);
        assert!(check_monotone(&back).is_empty());

        let mut flipped = recs[0].clone();
        flipped.degree = 9;
        flipped.outcome = Some(SearchOutcome::NoCertificate);
        assert_eq!(check_monotone(&[recs[0].clone(), flipped]).len(), 1);
    }

    #[test]
    fn newer_schema_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("e.jsonl");
        let opts = RunOptions { deterministic: true };
        let mut r = run_ladder(DomainId::F2Dvr, "X^2 + X", &[(2, 8)], opts).unwrap().remove(0);
        r.schema_version = SCHEMA_VERSION + 1;
        std::fs::write(&path, r.to_json() + "\n").unwrap();
        let e = EvidenceLedger::new(&path).load().unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, .. }));
    }
}
