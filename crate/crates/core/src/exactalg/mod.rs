//! Exact arithmetic: rationals, small finite fields, truncated Laurent
//! series, dense polynomials and linear algebra.

pub mod ff;
pub mod linalg;
pub mod poly;
pub mod rat;
pub mod series;
pub mod zlinalg;

pub use ff::{Fe, FiniteField};
pub use linalg::{ff_solve, Echelon, FfMatrix, FfSolution};
pub use poly::{poly_eval, BiPoly, Coeff, Poly};
pub use rat::Rat;
pub use series::{series_arith, SeriesOp, TruncSeries, EXACT};
