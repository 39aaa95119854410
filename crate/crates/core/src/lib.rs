//! Exact continued fractions of the Mahler functions
//! `g(x) = x⁻¹ ∏ P(x^(−dᵗ))` over ℚ and ℚ(t).

pub mod algebra;
pub mod contfrac;
pub mod error;
pub mod exponent;
pub mod hankel;
pub mod mahler;
pub mod recurrence;
pub mod scan;

pub use algebra::{parse_rational, rat, Laurent, Poly, RatFunc, Rational, Scalar};
pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/series.md")]
    mod series {}
    #[doc = include_str!("../../../book/src/continued-fractions.md")]
    mod continued_fractions {}
    #[doc = include_str!("../../../book/src/mahler.md")]
    mod mahler {}
    #[doc = include_str!("../../../book/src/recurrences.md")]
    mod recurrences {}
    #[doc = include_str!("../../../book/src/hankel.md")]
    mod hankel {}
    #[doc = include_str!("../../../book/src/exponents.md")]
    mod exponents {}
    #[doc = include_str!("../../../book/src/scans.md")]
    mod scans {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
