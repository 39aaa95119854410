//! Exact field, polynomial and truncated Laurent-series arithmetic.

mod poly;
mod ratfunc;
mod scalar;
mod series;

pub use poly::{euclid_gcd, primitive_part, rational_gcd, Poly};
pub use ratfunc::RatFunc;
pub use scalar::{format_rational, parse_rational, rat, Rational, Scalar};
pub use series::Laurent;
