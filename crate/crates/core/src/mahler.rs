//! The products `f(x) = ∏ P(x^(−dᵗ))` and `g(x) = x⁻¹ f(x)`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::algebra::{Laurent, Poly, Rational, Scalar};
use crate::error::{Error, Result};

/// `P(x) = 1 + u₁x + … + u_{d−1}x^{d−1}` together with the exponent base `d`.
#[derive(Clone, Debug, PartialEq)]
pub struct MahlerParams<F> {
    d: usize,
    u: Vec<F>,
}

impl<F: Scalar> MahlerParams<F> {
    pub fn new(d: usize, u: Vec<F>) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidParams(format!(
                "d must be at least 2, got {d}"
            )));
        }
        if u.len() != d - 1 {
            return Err(Error::InvalidParams(format!(
                "d = {d} needs {} coefficients, got {}",
                d - 1,
                u.len()
            )));
        }
        Ok(MahlerParams { d, u })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// `u₁, …, u_{d−1}`.
    pub fn u(&self) -> &[F] {
        &self.u
    }

    pub fn p(&self) -> Poly<F> {
        let mut c = vec![F::one()];
        c.extend(self.u.iter().cloned());
        Poly::new(c)
    }

    /// `P*(x) = x^{d−1} P(1/x)`, monic of degree `d − 1`.
    pub fn p_star(&self) -> Poly<F> {
        let mut c: Vec<F> = self.u.iter().rev().cloned().collect();
        c.push(F::one());
        Poly::new(c)
    }

    fn is_trivial(&self) -> bool {
        self.u.iter().all(|c| c.is_zero())
    }

    /// Coefficients `c₀ … c_{n−1}` of the power series `∏ P(yᵈᵗ)`.
    pub fn fhat_coeffs(&self, n: usize) -> Vec<F> {
        let mut c = vec![F::zero(); n];
        if n == 0 {
            return c;
        }
        c[0] = F::one();
        let mut step = 1usize;
        while step < n {
            // multiply by P(y^step) in place, high degrees first
            for i in (step..n).rev() {
                let mut acc = c[i].clone();
                for (j, uj) in self.u.iter().enumerate() {
                    let shift = (j + 1) * step;
                    if shift > i {
                        break;
                    }
                    if !uj.is_zero() && !c[i - shift].is_zero() {
                        acc = acc + uj.clone() * c[i - shift].clone();
                    }
                }
                c[i] = acc;
            }
            step = match step.checked_mul(self.d) {
                Some(s) => s,
                None => break,
            };
        }
        c
    }

    /// `f(x) = ∏ P(x^(−dᵗ))`, known down to `x^(−n+1)`.
    pub fn f_series(&self, n: usize) -> Laurent<F> {
        assert!(n >= 1, "need at least one coefficient");
        if self.is_trivial() {
            return Laurent::one();
        }
        Laurent::truncated(0, self.fhat_coeffs(n), n as i64 - 1)
    }

    /// `g(x) = x⁻¹ f(x)`, known down to `x^(−n)`.
    ///
    /// ```
    /// use mahlercf::{rat, mahler::MahlerParams};
    /// let g = MahlerParams::new(2, vec![rat(2, 1)]).unwrap().g_series(4);
    /// assert_eq!(g.to_string(), "x^-1 + 2*x^-2 + 2*x^-3 + 4*x^-4 + O(x^-5)");
    /// ```
    pub fn g_series(&self, n: usize) -> Laurent<F> {
        assert!(n >= 1, "need at least one coefficient");
        if self.is_trivial() {
            return Laurent::monomial(F::one(), -1);
        }
        Laurent::truncated(-1, self.fhat_coeffs(n), n as i64)
    }

    /// Checks `P*(x)·g(xᵈ) = g(x)` on every exponent certified by `g_series(n)`.
    pub fn check_functional_eq(&self, n: usize) -> FunctionalEqReport {
        let g = self.g_series(n);
        let lhs = g.substitute_power(self.d as u32).mul_poly(&self.p_star());
        let depth = lhs.prec().unwrap_or(n as i64).max(1);
        let rhs = self.g_series(depth as usize);
        let mut first_mismatch = None;
        for e in (-depth..=self.d as i64).rev() {
            if lhs.coeff(e) != rhs.coeff(e) {
                first_mismatch = Some(e);
                break;
            }
        }
        FunctionalEqReport {
            depth,
            first_mismatch,
        }
    }

    /// Image of a convergent `p/q` under `k` applications of the functional
    /// equation: `(∏_{t<k} P*(x^{dᵗ})·p(x^{dᵏ}), q(x^{dᵏ}))`.
    pub fn lift_convergent(&self, p: &Poly<F>, q: &Poly<F>, k: u32) -> (Poly<F>, Poly<F>) {
        let dk = self.d.pow(k);
        let mut num = p.compose_power(dk);
        let ps = self.p_star();
        for t in 0..k {
            num = &num * &ps.compose_power(self.d.pow(t));
        }
        (num, q.compose_power(dk))
    }
}

impl<F: Scalar> fmt::Display for MahlerParams<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d={}, u=(", self.d)?;
        for (i, c) in self.u.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionalEqReport {
    /// Exponents from `x^d` down to `x^(−depth)` were compared.
    pub depth: i64,
    pub first_mismatch: Option<i64>,
}

impl FunctionalEqReport {
    pub fn holds(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

/// Closed interval with rational endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalInterval {
    pub lo: Rational,
    pub hi: Rational,
}

impl RationalInterval {
    pub fn new(a: Rational, b: Rational) -> Self {
        if a <= b {
            RationalInterval { lo: a, hi: b }
        } else {
            RationalInterval { lo: b, hi: a }
        }
    }

    pub fn point(r: Rational) -> Self {
        RationalInterval {
            lo: r.clone(),
            hi: r,
        }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, r: &Rational) -> bool {
        &self.lo <= r && r <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(&Rational::zero())
    }

    pub fn is_within(&self, other: &RationalInterval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    /// `{x − r : x ∈ self}`.
    pub fn shift(&self, r: &Rational) -> Self {
        RationalInterval {
            lo: &self.lo - r,
            hi: &self.hi - r,
        }
    }

    /// Enclosure of `{|x| : x ∈ self}`.
    pub fn abs(&self) -> Self {
        if Signed::is_negative(&self.lo) && self.hi.is_positive() {
            let m = self.lo.abs().max(self.hi.clone());
            RationalInterval {
                lo: Rational::zero(),
                hi: m,
            }
        } else {
            RationalInterval::new(self.lo.abs(), self.hi.abs())
        }
    }
}

impl fmt::Display for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use crate::algebra::format_rational;
        write!(
            f,
            "[{}, {}]",
            format_rational(&self.lo),
            format_rational(&self.hi)
        )
    }
}

/// Encloses `g(b)` in an interval of width at most `eps`.
///
/// The first `T` factors are multiplied exactly. With `U = Σ|uᵢ|` and `T`
/// chosen so that `s = 2U|b|^(−d^T) < 1/4`, every later factor lies within
/// `U|b|^(−dᵗ)` of 1 and those deviations sum to at most `s`, so the tail
/// product lies in `[1 − 2s, 1/(1 − 2s)]`.
pub fn eval_g(
    params: &MahlerParams<Rational>,
    b: &BigInt,
    eps: &Rational,
) -> Result<RationalInterval> {
    if b.abs() <= BigInt::from(1) {
        return Err(Error::ArgumentTooSmall(format!(
            "|b| must exceed 1, got {b}"
        )));
    }
    if !eps.is_positive() {
        return Err(Error::InvalidParams("eps must be positive".into()));
    }
    let b = Rational::from_integer(b.clone());
    let babs = b.abs();
    let big_u: Rational = params
        .u
        .iter()
        .map(|c| c.abs())
        .fold(Rational::zero(), |a, c| a + c);
    let one = Rational::from_integer(1.into());
    let quarter = Rational::new(1.into(), 4.into());
    let p = params.p();

    let mut partial = one.clone() / b.clone();
    let mut y = one.clone() / b.clone(); // b^(−dᵗ)
    let mut y_abs = one.clone() / babs; // |b|^(−dᵗ)
    let mut t = 0u32;
    loop {
        let s = Rational::from_integer(2.into()) * &big_u * &y_abs;
        if s < quarter {
            let spread = Rational::from_integer(2.into()) * &s;
            let lo_f = &one - &spread;
            let hi_f = &one / &lo_f;
            let iv = RationalInterval::new(&partial * &lo_f, &partial * &hi_f);
            if partial.is_zero() || iv.width() <= *eps {
                return Ok(iv);
            }
        }
        let factor = p.eval(&y);
        if factor.is_zero() {
            return Err(Error::ZeroFactor { t });
        }
        partial *= factor;
        y = pow_rat(&y, params.d);
        y_abs = pow_rat(&y_abs, params.d);
        t += 1;
    }
}

fn pow_rat(r: &Rational, k: usize) -> Rational {
    num_traits::pow::pow(r.clone(), k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, RatFunc};

    fn params(d: usize, u: &[i64]) -> MahlerParams<Rational> {
        MahlerParams::new(d, u.iter().map(|&c| rat(c, 1)).collect()).unwrap()
    }

    #[test]
    fn validation() {
        assert!(MahlerParams::<Rational>::new(1, vec![]).is_err());
        assert!(MahlerParams::new(3, vec![rat(1, 1)]).is_err());
    }

    #[test]
    fn symbolic_d2_series() {
        let u = RatFunc::t();
        let g = MahlerParams::new(2, vec![u.clone()]).unwrap().g_series(6);
        let u2 = u.clone() * u.clone();
        let want = [
            RatFunc::one(),
            u.clone(),
            u.clone(),
            u2.clone(),
            u.clone(),
            u2,
        ];
        assert_eq!(g.window(-1, -6).unwrap(), want.to_vec());
        assert_eq!(g.prec(), Some(6));
    }

    #[test]
    fn trivial_product_is_exact() {
        let g = params(2, &[0]).g_series(10);
        assert!(g.is_exact());
        assert_eq!(g, Laurent::monomial(rat(1, 1), -1));
    }

    #[test]
    fn p_star_shapes() {
        assert_eq!(params(2, &[5]).p_star(), Poly::from_ints(&[5, 1]));
        assert_eq!(params(3, &[2, 7]).p_star(), Poly::from_ints(&[7, 2, 1]));
        assert_eq!(
            params(4, &[0, 0, 0]).p_star(),
            Poly::from_ints(&[0, 0, 0, 1])
        );
    }

    #[test]
    fn functional_equation_on_examples() {
        assert!(params(2, &[-1]).check_functional_eq(64).holds());
        assert!(params(3, &[5, 7]).check_functional_eq(81).holds());
        assert!(params(5, &[3, -1, 0, 2]).check_functional_eq(125).holds());
    }

    #[test]
    fn truncation_consistency() {
        let p = params(3, &[2, -3]);
        let short = p.g_series(30);
        let long = p.g_series(90);
        assert_eq!(short.window(-1, -30), long.window(-1, -30));
    }

    #[test]
    fn square_of_the_one_zero_product() {
        // f_(2,1) = f_(1,0)², hence g_(2,1) = x·g_(1,0)²
        let a = params(3, &[1, 0]).g_series(201);
        let b = params(3, &[2, 1]).g_series(200);
        let sq = a.mul(&a).mul_poly(&Poly::x());
        assert!(sq.prec().unwrap() >= 200);
        assert_eq!(sq.window(-1, -200), b.window(-1, -200));
    }

    #[test]
    fn lifting_convergents() {
        let u = RatFunc::t();
        let one = RatFunc::one();
        let p = MahlerParams::new(2, vec![u.clone()]).unwrap();
        let x_minus_u = Poly::new(vec![-u.clone(), one.clone()]);
        let (p2, q2) = p.lift_convergent(&Poly::one(), &x_minus_u, 1);
        assert_eq!(p2, Poly::new(vec![u.clone(), one.clone()]));
        assert_eq!(
            q2,
            Poly::new(vec![-u.clone(), RatFunc::zero(), one.clone()])
        );
        let (p4, q4) = p.lift_convergent(&p2, &q2, 1);
        let x2_plus_u = Poly::new(vec![u.clone(), RatFunc::zero(), one.clone()]);
        assert_eq!(p4, &p2 * &x2_plus_u);
        assert_eq!(q4, q2.compose_power(2));
        assert_eq!(p.lift_convergent(&p2, &q2, 0), (p2, q2));
    }

    #[test]
    fn evaluation_at_two() {
        let eps = rat(1, 1 << 40);
        let two = BigInt::from(2);
        let iv = eval_g(&params(2, &[0]), &two, &eps).unwrap();
        assert!(iv.contains(&rat(1, 2)));
        let iv = eval_g(&params(2, &[1]), &two, &eps).unwrap();
        assert!(iv.contains(&rat(1, 1)));
        assert!(iv.width() <= eps);
        assert!(matches!(
            eval_g(&params(2, &[1]), &BigInt::from(-1), &eps),
            Err(Error::ArgumentTooSmall(_))
        ));
        // P(1/2) = 1 - 2·(1/2) = 0
        assert_eq!(
            eval_g(&params(2, &[-2]), &two, &eps),
            Err(Error::ZeroFactor { t: 0 })
        );
    }

    #[test]
    fn evaluation_against_partial_product() {
        let p = params(2, &[-1]);
        let eps = Rational::new(1.into(), BigInt::from(1u8) << 64);
        let iv = eval_g(&p, &BigInt::from(2), &eps).unwrap();
        // exact product over t ≤ 6 with a crude hand bound on the rest
        let mut v = rat(1, 2);
        for t in 0..=6u32 {
            v *= rat(1, 1) - Rational::new(1.into(), BigInt::from(1u8) << (1u32 << t));
        }
        let tail = Rational::new(1.into(), BigInt::from(1u8) << 127);
        assert!(iv.lo >= &v - &tail && iv.hi <= &v + &tail);
        let finer = eval_g(&p, &BigInt::from(2), &(eps.clone() * rat(1, 4))).unwrap();
        assert!(finer.is_within(&iv) || finer.width() <= iv.width());
    }
}
