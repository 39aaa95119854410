//! Closed recurrences for the coefficients `αₙ, βₙ` of
//! `g(x) = β₁/(x + α₁ + β₂/(x + α₂ + …))` when `d = 2` and `d = 3`, and the
//! vanishing-β classifier built on them.
//!
//! A vanishing `βₘ` means the m-th partial quotient of `g` is not linear, so
//! the first zero is where the recurrence stops.

use std::fmt;

use crate::algebra::{Poly, Scalar};
use crate::contfrac::{continuant, Continuant, ModifiedCf};
use crate::error::{Error, Result};
use crate::mahler::MahlerParams;

/// `α₁, α₂, …` and `β₁, β₂, …`, stored from index 1.
#[derive(Clone, Debug, PartialEq)]
pub struct CoeffSeq<F> {
    alpha: Vec<F>,
    beta: Vec<F>,
    /// First `m` with `βₘ = 0`.
    pub stop: Option<usize>,
}

impl<F: Scalar> CoeffSeq<F> {
    fn empty() -> Self {
        CoeffSeq {
            alpha: Vec::new(),
            beta: Vec::new(),
            stop: None,
        }
    }

    /// `αₙ`, if it was computed.
    pub fn alpha(&self, n: usize) -> Option<&F> {
        n.checked_sub(1).and_then(|i| self.alpha.get(i))
    }

    pub fn beta(&self, n: usize) -> Option<&F> {
        n.checked_sub(1).and_then(|i| self.beta.get(i))
    }

    pub fn alphas(&self) -> &[F] {
        &self.alpha
    }

    pub fn betas(&self) -> &[F] {
        &self.beta
    }

    /// Number of β computed (the last one is zero when `stop` is set).
    pub fn len(&self) -> usize {
        self.beta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.beta.is_empty()
    }

    fn push_beta(&mut self, b: F) -> bool {
        let zero = b.is_zero();
        self.beta.push(b);
        if zero {
            self.stop = Some(self.beta.len());
        }
        !zero
    }

    fn b(&self, n: usize) -> F {
        self.beta[n - 1].clone()
    }

    fn a(&self, n: usize) -> F {
        self.alpha[n - 1].clone()
    }

    /// Reads `(αₙ, βₙ)` off a modified continued fraction for as long as its
    /// quotients are linear, up to index `n`.
    pub fn from_modified(cf: &ModifiedCf<F>, n: usize) -> Self {
        let mut out = CoeffSeq::empty();
        for k in 1..=n.min(cf.terms()) {
            match cf.alpha(k) {
                Some(a) => {
                    out.alpha.push(a);
                    out.beta.push(cf.beta[k].clone());
                }
                None => break,
            }
        }
        out
    }
}

/// Coefficients for `d = 2`, `P(x) = 1 + ux`, through index `n`.
///
/// ```
/// use mahlercf::{rat, recurrence::recur_d2};
/// let s = recur_d2(&rat(2, 1), 4);
/// assert_eq!(s.betas(), &[rat(1, 1), rat(2, 1), rat(-1, 1), rat(7, 1)]);
/// assert_eq!(recur_d2(&rat(1, 1), 10).stop, Some(2));
/// ```
pub fn recur_d2<F: Scalar>(u: &F, n: usize) -> CoeffSeq<F> {
    let mut s = CoeffSeq::empty();
    let u2 = u.clone() * u.clone();
    for m in 1..=n {
        // α alternates −u, u
        s.alpha
            .push(if m % 2 == 1 { -u.clone() } else { u.clone() });
        let b = match m {
            1 => F::one(),
            2 => u2.clone() - u.clone(),
            _ if m % 2 == 1 => {
                // m = 2k + 3
                let k = (m - 3) / 2;
                -(s.b(k + 2) / s.b(2 * k + 2))
            }
            _ => {
                // m = 2k + 4
                let k = (m - 4) / 2;
                s.a(k + 2) + u2.clone() - s.b(2 * k + 3)
            }
        };
        if !s.push_beta(b) {
            break;
        }
    }
    s
}

/// Coefficients for `d = 3`, `P(x) = 1 + ux + vx²`, through index `n`.
///
/// β is always computed before the α that would divide by it, so a zero β
/// ends the sequence cleanly.
pub fn recur_d3<F: Scalar>(u: &F, v: &F, n: usize) -> CoeffSeq<F> {
    let mut s = CoeffSeq::empty();
    if n == 0 {
        return s;
    }
    let u2 = u.clone() * u.clone();
    s.alpha.push(-u.clone());
    s.beta.push(F::one());
    if n == 1 {
        return s;
    }
    if !s.push_beta(u2.clone() - v.clone()) {
        return s;
    }
    let w = v.clone() - u2.clone(); // = −β₂ ≠ 0
    let one = F::one();
    let two = F::from_int(2);
    s.alpha
        .push(u.clone() * (two * v.clone() - one.clone() - u2.clone()) / w.clone());
    if n == 2 {
        return s;
    }
    s.alpha.push(-(u.clone() * (v.clone() - one)) / w.clone());
    let v3 = v.clone() * v.clone() * v.clone();
    let num3 = u2.clone() + u2.clone() * u2.clone() + v3 - F::from_int(3) * u2.clone() * v.clone();
    if !s.push_beta(num3 / (w.clone() * w)) {
        return s;
    }
    let uv = u.clone() * v.clone();
    let mut m = 3;
    let mut k = 0;
    while m < n {
        // index 3k + 4
        let b4 = s.b(k + 2) / (s.b(3 * k + 3) * s.b(3 * k + 2));
        s.alpha.push(-u.clone());
        if !s.push_beta(b4.clone()) {
            return s;
        }
        m += 1;
        if m == n {
            break;
        }
        // index 3k + 5
        let b5 = u2.clone() - v.clone() - b4.clone();
        if !s.push_beta(b5.clone()) {
            return s;
        }
        let a5 = u.clone() - (s.a(k + 2) + uv.clone() - s.a(3 * k + 2) * b4) / b5;
        s.alpha.push(a5.clone());
        m += 1;
        if m == n {
            break;
        }
        // index 3k + 6
        let a6 = u.clone() - a5.clone();
        let b6 = v.clone() - a5 * a6.clone();
        s.alpha.push(a6);
        if !s.push_beta(b6) {
            return s;
        }
        m += 1;
        k += 1;
    }
    s
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// No β vanished through this index: the first that many quotients are linear.
    BadlyApproximableUpTo(usize),
    /// `βₘ = 0`: the m-th partial quotient is not linear.
    NonlinearAt(usize),
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::BadlyApproximableUpTo(n) => write!(f, "badly approximable through {n} terms"),
            Verdict::NonlinearAt(m) => write!(f, "partial quotient {m} is not linear"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Classification<F> {
    pub verdict: Verdict,
    pub terms: CoeffSeq<F>,
    pub params: MahlerParams<F>,
}

/// Runs the recurrence matching `params.d()` through `n` terms.
pub fn classify<F: Scalar>(params: &MahlerParams<F>, n: usize) -> Result<Classification<F>> {
    let terms = match params.d() {
        2 => recur_d2(&params.u()[0], n),
        3 => recur_d3(&params.u()[0], &params.u()[1], n),
        d => return Err(Error::UnsupportedDegree(d)),
    };
    let verdict = match terms.stop {
        Some(m) => Verdict::NonlinearAt(m),
        None => Verdict::BadlyApproximableUpTo(n),
    };
    Ok(Classification {
        verdict,
        terms,
        params: params.clone(),
    })
}

/// The three block identities relating consecutive runs of `d` or `2d`
/// quotients of a badly approximable `g` to `P*`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockIdentity {
    /// `K¹_d(block k) = β_{dk+1}·P*`.
    Single,
    /// `K¹_{2d}(blocks k, k+1) = β_{dk+1}·(xᵈ + α_{k+2})·P*`.
    DoubleNumerator,
    /// `K⁰_{2d}(blocks k, k+1) = β_{k+2} + (xᵈ + α_{k+2})·K⁰_d(block k)`.
    DoubleDenominator,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BlockFailure {
    /// A quotient needed by the check is not linear.
    Nonlinear {
        index: usize,
    },
    Identity {
        which: BlockIdentity,
        k: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropositionReport {
    pub k_max: usize,
    pub checks: usize,
    pub first_failure: Option<BlockFailure>,
}

impl PropositionReport {
    pub fn holds(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// Checks the block identities for `0 ≤ k ≤ k_max` (the double-block ones
/// from `k = 1`) on the continued fraction of `g`.
pub fn verify_propositions<F: Scalar>(
    params: &MahlerParams<F>,
    cf: &ModifiedCf<F>,
    k_max: usize,
) -> Result<PropositionReport> {
    let d = params.d();
    let needed = d * (k_max + 2);
    let mut report = PropositionReport {
        k_max,
        checks: 0,
        first_failure: None,
    };
    let avail = needed.min(cf.terms());
    if let Some(index) = (1..=avail).find(|&i| cf.a_hat[i].degree() != Some(1)) {
        report.first_failure = Some(BlockFailure::Nonlinear { index });
        return Ok(report);
    }
    if cf.terms() < needed {
        return Err(Error::InsufficientTerms {
            needed,
            have: cf.terms(),
        });
    }
    let ps = params.p_star();
    let block =
        |lo: usize, hi: usize, kind| continuant(kind, &cf.a_hat[lo..=hi], &cf.beta[lo..=hi]);
    let xd = Poly::monomial(F::one(), d);
    for k in 0..=k_max {
        let first = d * k + 1;
        let b_first = &cf.beta[first];
        let mut fail = |which| {
            report
                .first_failure
                .get_or_insert(BlockFailure::Identity { which, k });
        };
        if block(first, d * (k + 1), Continuant::K1) != ps.scale(b_first) {
            fail(BlockIdentity::Single);
        }
        if k >= 1 {
            let shifted = &xd + &Poly::constant(cf.alpha(k + 2).unwrap());
            let rhs1 = (&shifted * &ps).scale(b_first);
            if block(first, d * (k + 2), Continuant::K1) != rhs1 {
                fail(BlockIdentity::DoubleNumerator);
            }
            let rhs2 = &Poly::constant(cf.beta[k + 2].clone())
                + &(&shifted * &block(first, d * (k + 1), Continuant::K0));
            if block(first, d * (k + 2), Continuant::K0) != rhs2 {
                fail(BlockIdentity::DoubleDenominator);
            }
            report.checks += 2;
        }
        report.checks += 1;
        if report.first_failure.is_some() {
            break;
        }
    }
    Ok(report)
}
