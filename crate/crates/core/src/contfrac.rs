//! Continued fractions of Laurent series.
//!
//! [`cf_expand`] produces the raw expansion `f = [a₀; a₁, a₂, …]`.
//! [`to_modified`] renormalises it to the form
//!
//! ```text
//! f = â₀ + β₁/(â₁ + β₂/(â₂ + …))
//! ```
//!
//! with monic `âₙ` and nonzero `βₙ`, which is the form every other module
//! works with. Writing `ρₙ` for the leading coefficient of the raw
//! denominator `qₙ`, the two are related by `âₙ₊₁ = aₙ₊₁·ρₙ/ρₙ₊₁` and
//! `βₙ₊₁ = ρₙ₋₁/ρₙ₊₁` (with `ρ₋₁ = ρ₀ = 1`).

use crate::algebra::{Laurent, Poly, Scalar};
use crate::error::{Error, Result};

/// What the degree of the first uncomputed quotient is known to be.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NextDegree {
    Exact(usize),
    AtLeast(usize),
}

impl NextDegree {
    pub fn lower_bound(self) -> usize {
        match self {
            NextDegree::Exact(c) | NextDegree::AtLeast(c) => c,
        }
    }
}

/// How an expansion stopped.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CfEnd {
    /// The requested number of quotients was produced.
    Complete,
    /// A remainder was exactly zero: the input is a rational function.
    Terminated,
    /// Precision ran out before quotient `index` could be computed.
    Exhausted {
        index: usize,
        next_degree: NextDegree,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct RawCf<F> {
    /// `a₀, a₁, …`; every entry past the first has degree ≥ 1.
    pub quotients: Vec<Poly<F>>,
    pub end: CfEnd,
}

impl<F: Scalar> RawCf<F> {
    /// Degrees of `a₁, a₂, …` (the polynomial part `a₀` is skipped).
    pub fn degrees(&self) -> Vec<usize> {
        self.quotients[1..]
            .iter()
            .map(|a| a.degree().unwrap_or(0))
            .collect()
    }
}

/// Expands `f` into at most `max_terms` partial quotients after `a₀`.
///
/// Running out of precision is not an error: it is recorded in
/// [`RawCf::end`] along with what is known about the next quotient's degree.
/// An exact (finite) input is expanded by the Euclidean algorithm and always
/// terminates.
pub fn cf_expand<F: Scalar>(f: &Laurent<F>, max_terms: usize) -> Result<RawCf<F>> {
    if f.is_exact() {
        let (num, den) = exact_as_ratio(f);
        return Ok(expand_ratio(&num, &den, max_terms));
    }
    // The zero-filled truncation A/x^N has the same remainders as f on their
    // known range, so its Euclidean expansion gives the same quotients while
    // the known precision P lasts. A remainder R/R' of valuation −m is
    // invertible to a nonnegative precision iff P ≥ 2m, and the inverse is
    // then known down to x^(−(P − 2m)).
    let (a0, _) = f.poly_split()?;
    let mut known = f.prec().expect("truncated series");
    let (num, den) = truncated_as_ratio(f, known);
    let mut prev = den;
    let mut cur = num.div_rem(&prev).1;
    let mut quotients = vec![a0];
    while quotients.len() <= max_terms {
        let index = quotients.len();
        let at_least = |known: i64| RawCf {
            quotients: quotients.clone(),
            end: CfEnd::Exhausted {
                index,
                next_degree: NextDegree::AtLeast((known + 1) as usize),
            },
        };
        let Some(dc) = cur.degree() else {
            return Ok(at_least(known));
        };
        let m = (prev.degree().expect("nonzero") - dc) as i64;
        if m > known {
            return Ok(at_least(known));
        }
        if known < 2 * m {
            return Ok(RawCf {
                quotients,
                end: CfEnd::Exhausted {
                    index,
                    next_degree: NextDegree::Exact(m as usize),
                },
            });
        }
        let (a, r) = prev.div_rem(&cur);
        quotients.push(a);
        known -= 2 * m;
        prev = std::mem::replace(&mut cur, r);
    }
    Ok(RawCf {
        quotients,
        end: CfEnd::Complete,
    })
}

/// Writes `f` with its unknown tail set to zero as `num / x^n`, where `f` is
/// known down to `x^(−n)`, `n ≥ 0`.
fn truncated_as_ratio<F: Scalar>(f: &Laurent<F>, n: i64) -> (Poly<F>, Poly<F>) {
    let k = n as usize;
    if f.is_zero_known() {
        return (Poly::zero(), Poly::monomial(F::one(), k));
    }
    let mut num = vec![F::zero(); (f.top() + n).max(0) as usize + 1];
    for (i, c) in f.coeffs().iter().enumerate() {
        num[(f.top() - i as i64 + n) as usize] = c.clone();
    }
    (Poly::new(num), Poly::monomial(F::one(), k))
}

/// Writes a finite Laurent series as `num / x^k`.
fn exact_as_ratio<F: Scalar>(f: &Laurent<F>) -> (Poly<F>, Poly<F>) {
    if f.is_zero_known() {
        return (Poly::zero(), Poly::one());
    }
    let low = f.top() - f.coeffs().len() as i64 + 1;
    let k = (-low).max(0) as usize;
    let shift = |e: i64| (e + k as i64) as usize;
    let mut num = vec![F::zero(); shift(f.top()) + 1];
    for (i, c) in f.coeffs().iter().enumerate() {
        num[shift(f.top() - i as i64)] = c.clone();
    }
    (Poly::new(num), Poly::monomial(F::one(), k))
}

/// Euclidean expansion of `num / den`. Panics if `den` is zero.
pub fn expand_ratio<F: Scalar>(num: &Poly<F>, den: &Poly<F>, max_terms: usize) -> RawCf<F> {
    let (a0, mut r) = num.div_rem(den);
    let mut prev = den.clone();
    let mut quotients = vec![a0];
    while quotients.len() <= max_terms {
        if r.is_zero() {
            return RawCf {
                quotients,
                end: CfEnd::Terminated,
            };
        }
        let (a, next) = prev.div_rem(&r);
        quotients.push(a);
        prev = r;
        r = next;
    }
    let end = if r.is_zero() {
        CfEnd::Terminated
    } else {
        CfEnd::Complete
    };
    RawCf { quotients, end }
}

/// Continued fraction with monic partial quotients and scalar weights.
#[derive(Clone, Debug, PartialEq)]
pub struct ModifiedCf<F> {
    /// `â₀, â₁, …`; `â₀` may be zero, the rest are monic.
    pub a_hat: Vec<Poly<F>>,
    /// `β₀, β₁, …` with `β₀ = 1`.
    pub beta: Vec<F>,
    /// `ρ₀, ρ₁, …`, leading coefficients of the raw denominators.
    pub rho: Vec<F>,
    pub end: CfEnd,
}

impl<F: Scalar> ModifiedCf<F> {
    /// Number of quotients after `â₀`.
    pub fn terms(&self) -> usize {
        self.a_hat.len() - 1
    }

    /// `αₙ` of a linear quotient `âₙ = x + αₙ`.
    pub fn alpha(&self, n: usize) -> Option<F> {
        let a = self.a_hat.get(n)?;
        (a.degree() == Some(1)).then(|| a.coeff(0))
    }

    pub fn beta(&self, n: usize) -> Option<&F> {
        self.beta.get(n)
    }

    /// Whether `â₁ … âₙ` are all linear.
    pub fn linear_through(&self, n: usize) -> bool {
        n <= self.terms() && self.a_hat[1..=n].iter().all(|a| a.degree() == Some(1))
    }
}

pub fn to_modified<F: Scalar>(cf: &RawCf<F>) -> ModifiedCf<F> {
    let mut a_hat = vec![cf.quotients[0].clone()];
    let mut beta = vec![F::one()];
    let mut rho = vec![F::one()];
    let mut rho_prev = F::one(); // ρ₋₁
    for a in &cf.quotients[1..] {
        let lead = a.lead().expect("partial quotients are nonzero").clone();
        let rho_n = rho.last().unwrap().clone();
        let rho_next = rho_n.clone() * lead.clone();
        beta.push(rho_prev / rho_next.clone());
        a_hat.push(a.monic());
        rho_prev = rho_n;
        rho.push(rho_next);
    }
    ModifiedCf {
        a_hat,
        beta,
        rho,
        end: cf.end,
    }
}

/// Inverse of [`to_modified`]: recovers `ρ` from the `β` and rescales.
pub fn reconstruct_raw<F: Scalar>(m: &ModifiedCf<F>) -> RawCf<F> {
    let mut quotients = vec![m.a_hat[0].clone()];
    let mut rho_prev = F::one();
    let mut rho = F::one();
    for n in 1..m.a_hat.len() {
        let rho_next = rho_prev / m.beta[n].clone();
        let lead = rho_next.clone() / rho.clone();
        quotients.push(m.a_hat[n].scale(&lead));
        rho_prev = rho;
        rho = rho_next;
    }
    RawCf {
        quotients,
        end: m.end,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Convergent<F> {
    pub p: Poly<F>,
    pub q: Poly<F>,
    pub index: usize,
}

/// All convergents `p₀/q₀, …, pₙ/qₙ` of a modified continued fraction.
pub fn convergents<F: Scalar>(cf: &ModifiedCf<F>) -> Vec<Convergent<F>> {
    let mut out = Vec::with_capacity(cf.a_hat.len());
    let (mut p_prev, mut q_prev) = (Poly::one(), Poly::zero());
    let (mut p, mut q) = (cf.a_hat[0].clone(), Poly::one());
    out.push(Convergent {
        p: p.clone(),
        q: q.clone(),
        index: 0,
    });
    for n in 1..cf.a_hat.len() {
        let a = &cf.a_hat[n];
        let b = &cf.beta[n];
        let p_next = &(a * &p) + &p_prev.scale(b);
        let q_next = &(a * &q) + &q_prev.scale(b);
        p_prev = std::mem::replace(&mut p, p_next);
        q_prev = std::mem::replace(&mut q, q_next);
        out.push(Convergent {
            p: p.clone(),
            q: q.clone(),
            index: n,
        });
    }
    out
}

pub fn convergent<F: Scalar>(cf: &ModifiedCf<F>, n: usize) -> Result<Convergent<F>> {
    if n >= cf.a_hat.len() {
        return Err(Error::IndexOutOfRange {
            index: n,
            len: cf.a_hat.len(),
        });
    }
    let truncated = ModifiedCf {
        a_hat: cf.a_hat[..=n].to_vec(),
        beta: cf.beta[..=n].to_vec(),
        rho: cf.rho[..=n].to_vec(),
        end: cf.end,
    };
    Ok(convergents(&truncated).pop().unwrap())
}

/// Which generalised continuant: `K⁰` (denominator-like, starts `0, 1`) or
/// `K¹` (numerator-like, starts `1, 0`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Continuant {
    K0,
    K1,
}

/// `Kₙ = aₙ·Kₙ₋₁ + βₙ·Kₙ₋₂` over the given slices.
pub fn continuant<F: Scalar>(kind: Continuant, a: &[Poly<F>], beta: &[F]) -> Poly<F> {
    assert_eq!(a.len(), beta.len(), "continuant slices differ in length");
    let (mut prev, mut cur) = match kind {
        Continuant::K0 => (Poly::zero(), Poly::one()),
        Continuant::K1 => (Poly::one(), Poly::zero()),
    };
    for (an, bn) in a.iter().zip(beta) {
        let next = &(an * &cur) + &prev.scale(bn);
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// Rate of approximation `c`, defined by `val(f − p/q) = −2·deg q − c`.
///
/// For the n-th convergent of `f` this is the degree of `aₙ₊₁`.
pub fn approx_rate<F: Scalar>(f: &Laurent<F>, p: &Poly<F>, q: &Poly<F>) -> Result<i64> {
    let dq = q
        .degree()
        .ok_or_else(|| Error::InvalidParams("zero denominator".into()))? as i64;
    let diff = f.mul_poly(q).sub(&Laurent::from_poly(p));
    let v = match diff.val() {
        Ok(Some(v)) => v,
        Ok(None) => return Err(Error::ExactMatch),
        Err(_) => {
            return Err(Error::PrecisionExhausted(format!(
                "q·f − p vanishes on the known range (down to x^{})",
                -diff.prec().unwrap_or(0)
            )))
        }
    };
    let c = -dq - v;
    if c <= 0 {
        return Err(Error::NotApproximating);
    }
    Ok(c)
}

/// Legendre-type criterion: a reduced `p/q` is a convergent of `f` iff
/// `val(f − p/q) < −2·deg q`.
pub fn is_convergent<F: Scalar>(f: &Laurent<F>, p: &Poly<F>, q: &Poly<F>) -> Result<bool> {
    if !p.is_zero() && !p.is_coprime(q) && !(p.is_zero() && q.degree() == Some(0)) {
        return Ok(false);
    }
    match approx_rate(f, p, q) {
        Ok(_) | Err(Error::ExactMatch) => Ok(true),
        Err(Error::NotApproximating) => Ok(false),
        Err(e) => Err(e),
    }
}
