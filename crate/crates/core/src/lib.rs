//! Integer-valued polynomials, star operations and conductor ideals over
//! concrete small domains.

pub mod cli;
pub mod conjharness;
pub mod error;
pub mod exactalg;
pub mod intpoly;
pub mod latorder;
pub mod psring;
pub mod textfmt;
pub mod verdict;

pub use error::{Error, Result};
pub use verdict::{Outcome, Verdict};
