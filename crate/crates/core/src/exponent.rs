//! Irrationality exponents of `g(b)`.
//!
//! If `a₁ … a_{n₀}` are linear and `a_{n₀+1}` has degree `c ≥ 2`, then
//! `μ(g(b)) ≥ 2 + (c − 1)/n₀` for every integer `|b| > 1` with `g(b) ≠ 0`.
//! The approximations behind that bound are the convergent `p_{n₀}/q_{n₀}`
//! pushed through the functional equation `k` times and evaluated at `b`.
//! When no β vanishes within the horizon the exponent is 2, but only
//! conditionally: a later zero would change the answer.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::algebra::{Poly, Rational, Scalar};
use crate::contfrac::{cf_expand, convergent, to_modified, CfEnd, NextDegree, RawCf};
use crate::error::{Error, Result};
use crate::hankel::HankelProfile;
use crate::mahler::{eval_g, MahlerParams, RationalInterval};
use crate::recurrence::{classify, Verdict};

/// Precision (in coefficients of `g`) above which the search gives up.
pub const MAX_PRECISION: usize = 4096;

/// Coefficients of `g` that comfortably determine `n` partial quotients when
/// they are linear (`2n + 2` is the bare minimum).
pub fn required_precision(n: usize) -> usize {
    2 * n + 6
}

/// `(n₀, c)` from the quotient degrees of an expansion.
pub fn first_nonlinear_in<F: Scalar>(cf: &RawCf<F>) -> Result<(usize, usize)> {
    for (i, a) in cf.quotients.iter().enumerate().skip(1) {
        let deg = a.degree().unwrap_or(0);
        if deg > 1 {
            return Ok((i - 1, deg));
        }
    }
    let index = cf.quotients.len();
    match cf.end {
        CfEnd::Complete => Err(Error::NotFound(index - 1)),
        CfEnd::Terminated => Err(Error::PossiblyRational { index }),
        CfEnd::Exhausted {
            next_degree: NextDegree::Exact(c),
            ..
        } if c > 1 => Ok((index - 1, c)),
        CfEnd::Exhausted { next_degree, .. } => Err(Error::PrecisionExhausted(format!(
            "quotient {index} has degree at least {}",
            next_degree.lower_bound()
        ))),
    }
}

/// Expands `g` with growing precision until quotient `m` is known.
fn expand_through<F: Scalar>(params: &MahlerParams<F>, m: usize) -> Result<RawCf<F>> {
    let mut n = required_precision(m);
    loop {
        let cf = cf_expand(&params.g_series(n), m)?;
        let have = cf.quotients.len() - 1;
        match cf.end {
            CfEnd::Complete | CfEnd::Terminated => return Ok(cf),
            CfEnd::Exhausted { next_degree, .. } => {
                if let NextDegree::Exact(_) = next_degree {
                    if have + 1 == m {
                        return Ok(cf);
                    }
                }
                if n >= MAX_PRECISION {
                    // the remainder vanished on everything we computed
                    return Err(Error::PossiblyRational { index: have + 1 });
                }
                n = (2 * n).min(MAX_PRECISION);
            }
        }
    }
}

/// `(n₀, c)` for parameters already classified: `n₀ = m − 1` where `βₘ = 0`,
/// and `c` is measured by expanding `g` across the breakdown.
pub fn find_first_nonlinear<F: Scalar>(
    params: &MahlerParams<F>,
    verdict: Verdict,
) -> Result<(usize, usize)> {
    match verdict {
        Verdict::BadlyApproximableUpTo(n) => Err(Error::NotFound(n)),
        Verdict::NonlinearAt(m) => {
            let cf = expand_through(params, m)?;
            let (n0, c) = first_nonlinear_in(&cf)?;
            if n0 + 1 != m {
                return Err(Error::AssertionFailed(format!(
                    "recurrence puts the first nonlinear quotient at {m}, expansion at {}",
                    n0 + 1
                )));
            }
            Ok((n0, c))
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ExponentReport {
    /// `μ ≥ 2 + (c − 1)/n₀`.
    AtLeast {
        n0: usize,
        c: usize,
        lower_bound: Rational,
    },
    /// All quotients linear through `horizon`: `μ = 2` unless a later one is not.
    ConditionalTwo { horizon: usize },
}

impl ExponentReport {
    pub fn lower_bound(&self) -> Rational {
        match self {
            ExponentReport::AtLeast { lower_bound, .. } => lower_bound.clone(),
            ExponentReport::ConditionalTwo { .. } => Rational::from_integer(2.into()),
        }
    }

    pub fn is_conditional(&self) -> bool {
        matches!(self, ExponentReport::ConditionalTwo { .. })
    }
}

impl fmt::Display for ExponentReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use crate::algebra::format_rational;
        match self {
            ExponentReport::AtLeast { n0, c, lower_bound } => {
                write!(
                    f,
                    "mu >= {} (n0 = {n0}, c = {c})",
                    format_rational(lower_bound)
                )
            }
            ExponentReport::ConditionalTwo { horizon } => {
                write!(
                    f,
                    "mu = 2 if every quotient is linear; verified through horizon {horizon}"
                )
            }
        }
    }
}

fn report(n0: usize, c: usize) -> ExponentReport {
    let lower_bound = Rational::from_integer(2.into()) + Rational::new((c - 1).into(), n0.into());
    ExponentReport::AtLeast { n0, c, lower_bound }
}

/// Lower bound on `μ(g(b))` from the first `terms` partial quotients.
///
/// ```
/// use mahlercf::{rat, exponent::lower_bound, mahler::MahlerParams};
/// let p = MahlerParams::new(3, vec![rat(2, 1), rat(1, 1)]).unwrap();
/// assert_eq!(lower_bound(&p, 30).unwrap().lower_bound(), rat(12, 5));
/// ```
pub fn lower_bound<F: Scalar>(params: &MahlerParams<F>, terms: usize) -> Result<ExponentReport> {
    let found = match classify(params, terms) {
        Ok(cls) => find_first_nonlinear(params, cls.verdict),
        Err(Error::UnsupportedDegree(_)) => {
            let cf = expand_through(params, terms)?;
            first_nonlinear_in(&cf).and_then(|(n0, c)| {
                if n0 < terms {
                    Ok((n0, c))
                } else {
                    Err(Error::NotFound(terms))
                }
            })
        }
        Err(e) => Err(e),
    };
    match found {
        Ok((n0, c)) => Ok(report(n0, c)),
        Err(Error::NotFound(_)) => Ok(ExponentReport::ConditionalTwo { horizon: terms }),
        Err(e) => Err(e),
    }
}

/// One rational approximation `a/b` of `g(arg)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Approximant {
    pub k: u32,
    pub a: BigInt,
    pub b: BigInt,
    /// `a/b` in lowest terms.
    pub reduced: Rational,
    /// Encloses `|g(arg) − a/b|`.
    pub err: RationalInterval,
    /// `−log|g(arg) − a/b| / log b`, from the upper end of `err`.
    pub exponent: f64,
}

fn lcm_of_denominators<'a>(it: impl Iterator<Item = &'a Rational>) -> BigInt {
    it.fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

fn to_integer_poly(p: &Poly<Rational>, l: &BigInt) -> Vec<BigInt> {
    p.coeffs()
        .iter()
        .map(|c| (c * Rational::from_integer(l.clone())).to_integer())
        .collect()
}

fn eval_int(coeffs: &[BigInt], x: &BigInt) -> BigInt {
    coeffs
        .iter()
        .rev()
        .fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// `log₂ |r|` for nonzero `r`, to double precision.
pub fn log2_abs(r: &Rational) -> f64 {
    fn log2_int(n: &BigInt) -> f64 {
        let bits = n.bits();
        let shift = bits.saturating_sub(60);
        let top: BigInt = n.abs() >> shift;
        let m: u64 = top.try_into().expect("fits after shifting");
        (m as f64).log2() + shift as f64
    }
    log2_int(r.numer()) - log2_int(r.denom())
}

/// The sequence `a_k/b_k` for `k ≤ k_max` built from the convergent
/// `p_{n₀}/q_{n₀}`, with certified errors.
pub fn approximants(
    params: &MahlerParams<Rational>,
    arg: &BigInt,
    n0: usize,
    k_max: u32,
) -> Result<Vec<Approximant>> {
    if arg.abs() <= BigInt::one() {
        return Err(Error::ArgumentTooSmall(format!(
            "|b| must exceed 1, got {arg}"
        )));
    }
    let coarse = Rational::new(1.into(), BigInt::from(1u8) << 16);
    match eval_g(params, arg, &coarse) {
        Err(Error::ZeroFactor { .. }) => return Err(Error::ZeroValue),
        Err(e) => return Err(e),
        Ok(_) => {}
    }
    let cf = to_modified(&expand_through(params, n0 + 1)?);
    let conv = convergent(&cf, n0)?;
    let l = lcm_of_denominators(conv.p.coeffs().iter().chain(conv.q.coeffs()));
    let p_int = to_integer_poly(&conv.p, &l);
    let q_int = to_integer_poly(&conv.q, &l);
    let ps = params.p_star();
    let dd = lcm_of_denominators(ps.coeffs().iter());
    let p_tilde = to_integer_poly(&ps, &dd);

    let d = params.d();
    let mut out = Vec::new();
    let mut x = arg.clone(); // arg^(d^k)
    let mut prod = BigInt::one(); // ∏_{t<k} P̃(arg^(dᵗ))
    let mut dk = BigInt::one(); // D^k
    for k in 0..=k_max {
        let mut a = eval_int(&p_int, &x) * &prod;
        let mut b = eval_int(&q_int, &x) * &dk;
        if b.is_zero() {
            return Err(Error::AssertionFailed(format!("b_{k} vanished")));
        }
        if b.is_negative() {
            a = -a;
            b = -b;
        }
        let reduced = Rational::new(a.clone(), b.clone());
        let b_rat = Rational::from_integer(b.clone());
        let eps = <Rational as Scalar>::one()
            / (&b_rat * &b_rat * &b_rat * Rational::from_integer(1024.into()));
        let g = eval_g(params, arg, &eps)?;
        let err = g.shift(&reduced).abs();
        let exponent = if Scalar::is_zero(&err.hi) {
            f64::INFINITY
        } else {
            -log2_abs(&err.hi) / log2_abs(&b_rat)
        };
        out.push(Approximant {
            k,
            a,
            b,
            reduced,
            err,
            exponent,
        });
        prod *= eval_int(&p_tilde, &x);
        dk *= &dd;
        x = num_traits::pow(x, d);
    }
    Ok(out)
}

/// Finite-window estimate of the upper bound `(1 + ρ)·min(ρ², d)` where
/// `ρ = limsup s_{i+1}/sᵢ`. Heuristic by nature: a limsup is not observable.
#[derive(Clone, Debug, PartialEq)]
pub struct BhwyReport {
    pub rho_hat: Rational,
    pub bound: Rational,
    pub window: usize,
    pub heuristic: bool,
}

pub fn bhwy_upper_bound<F: Scalar>(
    profile: &HankelProfile<F>,
    d: usize,
    window: usize,
) -> Result<BhwyReport> {
    let s = &profile.s;
    if window == 0 || s.len() < window + 2 {
        return Err(Error::InsufficientData(format!(
            "need {} nonzero indices, have {}",
            window + 2,
            s.len()
        )));
    }
    let rho_hat = s
        .windows(2)
        .skip(s.len() - 1 - window)
        .map(|w| Rational::new(w[1].into(), w[0].into()))
        .max()
        .unwrap();
    let sq = &rho_hat * &rho_hat;
    let dr = Rational::from_integer(d.into());
    let bound = (<Rational as Scalar>::one() + &rho_hat) * if sq < dr { sq } else { dr };
    Ok(BhwyReport {
        rho_hat,
        bound,
        window,
        heuristic: true,
    })
}
