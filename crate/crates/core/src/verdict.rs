use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Outcome {
    Yes,
    No,
    Unknown,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Yes => "Yes",
            Outcome::No => "No",
            Outcome::Unknown => "Unknown",
        })
    }
}

/// Three-valued answer. A `No` carries a witness, an `Unknown` names the
/// resource that ran out.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub outcome: Outcome,
    pub witness: Option<String>,
    pub exhausted: Option<String>,
    pub precision: Option<i64>,
    pub degree: Option<usize>,
}

impl Verdict {
    pub fn yes() -> Self {
        Verdict {
            outcome: Outcome::Yes,
            witness: None,
            exhausted: None,
            precision: None,
            degree: None,
        }
    }

    pub fn no(witness: impl Into<String>) -> Self {
        Verdict {
            outcome: Outcome::No,
            witness: Some(witness.into()),
            ..Verdict::yes()
        }
    }

    pub fn unknown(exhausted: impl Into<String>) -> Self {
        Verdict {
            outcome: Outcome::Unknown,
            exhausted: Some(exhausted.into()),
            ..Verdict::yes()
        }
    }

    /// `Yes` when `holds`, otherwise `No` with the lazily built witness.
    pub fn decide(holds: bool, witness: impl FnOnce() -> String) -> Self {
        if holds {
            Verdict::yes()
        } else {
            Verdict::no(witness())
        }
    }

    pub fn with_witness(mut self, w: impl Into<String>) -> Self {
        self.witness = Some(w.into());
        self
    }

    pub fn at_precision(mut self, p: i64) -> Self {
        self.precision = Some(p);
        self
    }

    pub fn at_degree(mut self, d: usize) -> Self {
        self.degree = Some(d);
        self
    }

    pub fn is_yes(&self) -> bool {
        self.outcome == Outcome::Yes
    }

    pub fn is_no(&self) -> bool {
        self.outcome == Outcome::No
    }

    pub fn is_unknown(&self) -> bool {
        self.outcome == Outcome::Unknown
    }

    /// Conjunction: the first `No` wins, then the first `Unknown`.
    pub fn and(self, other: Verdict) -> Verdict {
        match (self.outcome, other.outcome) {
            (Outcome::No, _) => self,
            (_, Outcome::No) => other,
            (Outcome::Unknown, _) => self,
            (_, Outcome::Unknown) => other,
            _ => self,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.outcome)?;
        if let Some(w) = &self.witness {
            write!(f, " ({w})")?;
        }
        if let Some(e) = &self.exhausted {
            write!(f, " [exhausted: {e}]")?;
        }
        Ok(())
    }
}
