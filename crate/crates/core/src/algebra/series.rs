//! Truncated Laurent series in descending powers of `x`.
//!
//! A [`Laurent`] stores the coefficients it knows together with a precision
//! marker `N`: every coefficient of `x^e` with `e ≥ −N` is exactly known and
//! nothing below is claimed. An exact series (`prec() == None`) is a finite
//! sum whose omitted coefficients are all zero.
//!
//! Arithmetic propagates the marker conservatively, so a result never reports
//! a coefficient that its inputs did not determine.

use std::fmt;

use super::poly::Poly;
use super::scalar::Scalar;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct Laurent<F> {
    /// exponent of `coeffs[0]`
    top: i64,
    /// descending exponents; first and last entries nonzero
    coeffs: Vec<F>,
    /// `Some(n)`: known for exponents `≥ −n`; `None`: exact
    prec: Option<i64>,
}

impl<F: Scalar> Laurent<F> {
    fn build(top: i64, mut coeffs: Vec<F>, prec: Option<i64>) -> Self {
        if let Some(n) = prec {
            // drop what lies below the known range
            let keep = (top + n + 1).max(0) as usize;
            coeffs.truncate(keep);
        }
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        let lead = coeffs.iter().position(|c| !c.is_zero());
        match lead {
            None => Laurent {
                top: 0,
                coeffs: Vec::new(),
                prec,
            },
            Some(k) => {
                coeffs.drain(..k);
                Laurent {
                    top: top - k as i64,
                    coeffs,
                    prec,
                }
            }
        }
    }

    /// Exact finite series `Σ coeffs[i]·x^(top−i)`.
    pub fn exact(top: i64, coeffs: Vec<F>) -> Self {
        Self::build(top, coeffs, None)
    }

    /// Series `Σ coeffs[i]·x^(top−i) + O(x^(−prec−1))`.
    pub fn truncated(top: i64, coeffs: Vec<F>, prec: i64) -> Self {
        Self::build(top, coeffs, Some(prec))
    }

    pub fn zero() -> Self {
        Self::build(0, Vec::new(), None)
    }

    pub fn one() -> Self {
        Self::monomial(F::one(), 0)
    }

    pub fn monomial(c: F, exp: i64) -> Self {
        Self::exact(exp, vec![c])
    }

    pub fn from_poly(p: &Poly<F>) -> Self {
        match p.degree() {
            None => Self::zero(),
            Some(d) => Self::exact(d as i64, p.coeffs().iter().rev().cloned().collect()),
        }
    }

    pub fn prec(&self) -> Option<i64> {
        self.prec
    }

    pub fn is_exact(&self) -> bool {
        self.prec.is_none()
    }

    /// True for the exact zero series.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty() && self.prec.is_none()
    }

    /// No nonzero coefficient inside the known range.
    pub fn is_zero_known(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Exponent of the first stored coefficient; meaningless when nothing is stored.
    pub fn top(&self) -> i64 {
        self.top
    }

    /// Stored coefficients in descending exponent order starting at [`Self::top`].
    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    /// Coefficient of `x^e`, or `None` if it lies outside the known range.
    pub fn coeff(&self, e: i64) -> Option<F> {
        if self.prec.is_some_and(|n| e < -n) {
            return None;
        }
        Some(self.stored(e))
    }

    fn stored(&self, e: i64) -> F {
        let i = self.top - e;
        if self.coeffs.is_empty() || i < 0 || i as usize >= self.coeffs.len() {
            F::zero()
        } else {
            self.coeffs[i as usize].clone()
        }
    }

    fn lowest_stored(&self) -> i64 {
        self.top - self.coeffs.len() as i64 + 1
    }

    /// Largest exponent with a nonzero coefficient; `Ok(None)` is −∞ (the exact zero series).
    pub fn val(&self) -> Result<Option<i64>> {
        if !self.coeffs.is_empty() {
            Ok(Some(self.top))
        } else if self.prec.is_none() {
            Ok(None)
        } else {
            Err(Error::IndeterminateValuation)
        }
    }

    /// Upper bound for the valuation that is always available.
    fn val_bound(&self) -> Option<i64> {
        match (self.coeffs.is_empty(), self.prec) {
            (false, _) => Some(self.top),
            (true, Some(n)) => Some(-n - 1),
            (true, None) => None,
        }
    }

    /// Lowers the precision to `n` (no-op if already coarser).
    pub fn with_prec(&self, n: i64) -> Self {
        let p = self.prec.map_or(n, |m| m.min(n));
        Self::build(self.top, self.coeffs.clone(), Some(p))
    }

    fn combine(&self, other: &Self, sign: bool) -> Self {
        let prec = match (self.prec, other.prec) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        let parts = [self, other];
        let nonempty: Vec<_> = parts.iter().filter(|s| !s.coeffs.is_empty()).collect();
        if nonempty.is_empty() {
            return Self::build(0, Vec::new(), prec);
        }
        let hi = nonempty.iter().map(|s| s.top).max().unwrap();
        let mut lo = nonempty.iter().map(|s| s.lowest_stored()).min().unwrap();
        if let Some(n) = prec {
            lo = lo.max(-n);
        }
        if lo > hi {
            return Self::build(0, Vec::new(), prec);
        }
        let coeffs = (lo..=hi)
            .rev()
            .map(|e| {
                let b = other.stored(e);
                if sign {
                    self.stored(e) + b
                } else {
                    self.stored(e) - b
                }
            })
            .collect();
        Self::build(hi, coeffs, prec)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, true)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, false)
    }

    pub fn neg(&self) -> Self {
        Laurent {
            top: self.top,
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
            prec: self.prec,
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::build(
            self.top,
            self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(),
            self.prec,
        )
    }

    /// Product; the result is known down to `x^(−min(N_f − val g, N_g − val f))`.
    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let bound_f = self.val_bound().unwrap();
        let bound_g = other.val_bound().unwrap();
        let prec = match (self.prec, other.prec) {
            (None, None) => None,
            (Some(nf), None) => Some(nf - bound_g),
            (None, Some(ng)) => Some(ng - bound_f),
            (Some(nf), Some(ng)) => Some((nf - bound_g).min(ng - bound_f)),
        };
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::build(0, Vec::new(), prec);
        }
        let top = self.top + other.top;
        let len_full = self.coeffs.len() + other.coeffs.len() - 1;
        let len = match prec {
            Some(n) => ((top + n + 1).max(0) as usize).min(len_full),
            None => len_full,
        };
        let mut out = vec![F::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i >= len {
                break;
            }
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(len - i) {
                if !b.is_zero() {
                    out[i + j] = out[i + j].clone() + a.clone() * b.clone();
                }
            }
        }
        Self::build(top, out, prec)
    }

    pub fn mul_poly(&self, p: &Poly<F>) -> Self {
        self.mul(&Self::from_poly(p))
    }

    /// Multiplicative inverse. With `m = val f` the result is known down to
    /// `x^(−(N + 2m))`.
    ///
    /// An exact series is only invertible here if it is a monomial; otherwise
    /// use [`Self::invert_to`].
    pub fn invert(&self) -> Result<Self> {
        let m = match self.val() {
            Ok(Some(m)) => m,
            Ok(None) => return Err(Error::ZeroLeadingCoefficient),
            Err(e) => return Err(e),
        };
        let Some(n) = self.prec else {
            if self.coeffs.len() == 1 {
                return Ok(Self::monomial(F::one() / self.coeffs[0].clone(), -m));
            }
            return Err(Error::PrecisionExhausted(
                "inverse of an exact non-monomial series needs a target precision".into(),
            ));
        };
        let prec_out = n + 2 * m;
        if prec_out < m {
            return Err(Error::PrecisionExhausted(format!(
                "inverting a series known to x^{} with valuation {m}",
                -n
            )));
        }
        let len = (n + m + 1) as usize;
        let lead_inv = F::one() / self.coeffs[0].clone();
        let mut d: Vec<F> = Vec::with_capacity(len);
        d.push(lead_inv.clone());
        for i in 1..len {
            let mut acc = F::zero();
            for j in 1..=i.min(self.coeffs.len() - 1) {
                let c = &self.coeffs[j];
                if !c.is_zero() && !d[i - j].is_zero() {
                    acc = acc + c.clone() * d[i - j].clone();
                }
            }
            d.push(-(acc * lead_inv.clone()));
        }
        Ok(Self::build(-m, d, Some(prec_out)))
    }

    /// Inverse known down to `x^(−prec)` (or coarser if the input limits it).
    pub fn invert_to(&self, prec: i64) -> Result<Self> {
        let m = self.val()?.ok_or(Error::ZeroLeadingCoefficient)?;
        self.with_prec(prec - 2 * m).invert()
    }

    /// Splits into the polynomial part (nonnegative exponents) and the rest.
    pub fn poly_split(&self) -> Result<(Poly<F>, Self)> {
        if self.prec.is_some_and(|n| n < 0) {
            return Err(Error::PrecisionExhausted(
                "constant coefficient is not known".into(),
            ));
        }
        if self.coeffs.is_empty() || self.top < 0 {
            return Ok((Poly::zero(), self.clone()));
        }
        let poly = Poly::new((0..=self.top).map(|e| self.stored(e)).collect());
        let split = (self.top + 1) as usize;
        let rest = if split < self.coeffs.len() {
            self.coeffs[split..].to_vec()
        } else {
            Vec::new()
        };
        Ok((poly, Self::build(-1, rest, self.prec)))
    }

    /// `f(x^k)`.
    pub fn substitute_power(&self, k: u32) -> Self {
        assert!(k >= 1);
        let k = k as i64;
        let prec = self.prec.map(|n| n * k);
        if self.coeffs.is_empty() {
            return Self::build(0, Vec::new(), prec);
        }
        let mut out = vec![F::zero(); (self.coeffs.len() - 1) * k as usize + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i * k as usize] = c.clone();
        }
        Self::build(self.top * k, out, prec)
    }

    /// All known coefficients of `x^hi, x^(hi−1), …, x^lo`; `None` if any of them is unknown.
    pub fn window(&self, hi: i64, lo: i64) -> Option<Vec<F>> {
        (lo..=hi).rev().map(|e| self.coeff(e)).collect()
    }
}

impl<F: Scalar> fmt::Display for Laurent<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = self.top - i as i64;
            let neg = c.is_negative();
            let mag = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let coef = if mag.needs_parens() {
                format!("({mag})")
            } else {
                mag.to_string()
            };
            match (e, mag.is_one()) {
                (0, _) => write!(f, "{coef}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{coef}*x")?,
                (_, true) => write!(f, "x^{e}")?,
                (_, false) => write!(f, "{coef}*x^{e}")?,
            }
        }
        match self.prec {
            Some(n) if first => write!(f, "O(x^{})", -n - 1),
            Some(n) => write!(f, " + O(x^{})", -n - 1),
            None if first => write!(f, "0"),
            None => Ok(()),
        }
    }
}
