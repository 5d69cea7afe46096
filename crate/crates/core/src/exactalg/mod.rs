//! Exact arithmetic: rationals, polynomials in `t`, coupling series graded by
//! weight, and multivariate Laurent tails.

mod coupling;
mod scalar;
mod tpoly;
mod xseries;

pub use coupling::{lower_trunc, CouplingMonomial, CouplingSeriesOf, EXACT};
pub use scalar::{binomial, catalan, factorial, int, parse_rat, rat, Rat, Scalar};
pub use tpoly::TPolyOf;
pub use xseries::{Var, XMono, XSeriesOf};
