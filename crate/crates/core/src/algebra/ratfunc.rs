//! ℚ(t): reduced quotients of rational polynomials in one indeterminate.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;

use super::poly::{fmt_poly, primitive_part, Poly};
use super::scalar::{Rational, Scalar};
use crate::error::{Error, Result};

/// `num / den` with `gcd(num, den) = 1` and `den` monic.
#[derive(Clone, Debug, PartialEq)]
pub struct RatFunc {
    num: Poly<Rational>,
    den: Poly<Rational>,
}

impl RatFunc {
    /// Panics if `den` is zero.
    pub fn new(num: Poly<Rational>, den: Poly<Rational>) -> Self {
        assert!(!den.is_zero(), "zero denominator in rational function");
        if num.is_zero() {
            return RatFunc {
                num,
                den: Poly::one(),
            };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.degree() == Some(0) {
            (num, den)
        } else {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        };
        let l = den.lead().unwrap().clone();
        if l.is_one() {
            RatFunc { num, den }
        } else {
            let inv = Rational::one() / l;
            RatFunc {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    /// The indeterminate `t`.
    pub fn t() -> Self {
        RatFunc {
            num: Poly::x(),
            den: Poly::one(),
        }
    }

    pub fn from_poly(p: Poly<Rational>) -> Self {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn numer(&self) -> &Poly<Rational> {
        &self.num
    }

    pub fn denom(&self) -> &Poly<Rational> {
        &self.den
    }

    /// `deg num − deg den`; `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        self.num
            .degree()
            .map(|n| n as i64 - self.den.degree().unwrap() as i64)
    }

    /// Numerator and denominator as primitive integer polynomials
    /// (`num/den = e/d`, up to a common rational factor folded into `e`).
    pub fn integer_parts(&self) -> (Vec<BigInt>, Vec<BigInt>) {
        (primitive_part(&self.num), primitive_part(&self.den))
    }

    pub fn eval(&self, at: &Rational) -> Option<Rational> {
        let d = self.den.eval(at);
        if Scalar::is_zero(&d) {
            None
        } else {
            Some(self.num.eval(at) / d)
        }
    }
}

impl Scalar for RatFunc {
    fn zero() -> Self {
        RatFunc::from_poly(Poly::zero())
    }
    fn one() -> Self {
        RatFunc::from_poly(Poly::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn from_rational(r: &Rational) -> Self {
        RatFunc::from_poly(Poly::constant(r.clone()))
    }
    fn needs_parens(&self) -> bool {
        true
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: RatFunc) -> RatFunc {
        if self.den == rhs.den {
            return RatFunc::new(&self.num + &rhs.num, self.den);
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RatFunc::new(num, &self.den * &rhs.den)
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: RatFunc) -> RatFunc {
        self + (-rhs)
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: RatFunc) -> RatFunc {
        if self.num.is_zero() || rhs.num.is_zero() {
            return Scalar::zero();
        }
        // cross-cancel first so the products stay small
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let n1 = self.num.div_rem(&g1).0;
        let d2 = rhs.den.div_rem(&g1).0;
        let n2 = rhs.num.div_rem(&g2).0;
        let d1 = self.den.div_rem(&g2).0;
        RatFunc::new(&n1 * &n2, &d1 * &d2)
    }
}

impl Div for RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: RatFunc) -> RatFunc {
        assert!(!rhs.num.is_zero(), "division by zero rational function");
        let inv = RatFunc::new(rhs.den, rhs.num);
        self * inv
    }
}

/// Prints `num` alone when the denominator is 1, else `(num)/(den)`, in `t`.
impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) {
            return fmt_poly(self.num.coeffs(), "t", f);
        }
        write!(f, "(")?;
        fmt_poly(self.num.coeffs(), "t", f)?;
        write!(f, ")/(")?;
        fmt_poly(self.den.coeffs(), "t", f)?;
        write!(f, ")")
    }
}

/// Reads a polynomial in `t` with rational coefficients, e.g. `t^2 - 3/2*t + 1`
/// or `-t^3+2t`.
fn parse_poly_t(src: &str) -> Result<Poly<Rational>> {
    let s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::Parse(format!("invalid polynomial literal {src:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    let mut terms = Vec::new();
    let mut start = 0;
    let bytes = s.as_bytes();
    for i in 1..bytes.len() {
        if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^' && bytes[i - 1] != b'*' {
            terms.push(&s[start..i]);
            start = i;
        }
    }
    terms.push(&s[start..]);
    let mut coeffs: Vec<Rational> = Vec::new();
    for term in terms {
        let (sign, body) = match term.as_bytes().first() {
            Some(b'-') => (-1, &term[1..]),
            Some(b'+') => (1, &term[1..]),
            _ => (1, term),
        };
        if body.is_empty() {
            return Err(bad());
        }
        let (coef, power) = match body.find('t') {
            None => (super::scalar::parse_rational(strip_parens(body))?, 0usize),
            Some(pos) => {
                let c = body[..pos].trim_end_matches('*');
                let coef = if c.is_empty() {
                    Rational::one()
                } else {
                    super::scalar::parse_rational(strip_parens(c))?
                };
                let rest = &body[pos + 1..];
                let power = if rest.is_empty() {
                    1
                } else {
                    rest.strip_prefix('^')
                        .and_then(|p| p.parse::<usize>().ok())
                        .ok_or_else(bad)?
                };
                (coef, power)
            }
        };
        if coeffs.len() <= power {
            coeffs.resize(power + 1, Rational::from_integer(0.into()));
        }
        coeffs[power] = coeffs[power].clone() + coef * Rational::from_integer(sign.into());
    }
    Ok(Poly::new(coeffs))
}

/// Removes one pair of parentheses if it encloses the whole string.
fn strip_parens(s: &str) -> &str {
    let s = s.trim();
    if !(s.starts_with('(') && s.ends_with(')')) {
        return s;
    }
    let mut depth = 0i32;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 && i + 1 < s.len() {
                    return s;
                }
            }
            _ => {}
        }
    }
    &s[1..s.len() - 1]
}

/// Accepts `num(t)/den(t)` with each side optionally parenthesised, a bare
/// polynomial in `t`, or a plain rational literal.
impl FromStr for RatFunc {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        // the fraction bar is a top-level '/' right after a closing parenthesis
        let mut depth = 0i32;
        let mut split = None;
        for (i, ch) in s.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                '/' if depth == 0 && s[..i].trim_end().ends_with(')') => split = Some(i),
                _ => {}
            }
        }
        match split {
            Some(i) => {
                let num = parse_poly_t(strip_parens(&s[..i]))?;
                let den = parse_poly_t(strip_parens(&s[i + 1..]))?;
                if den.is_zero() {
                    return Err(Error::Parse(format!("zero denominator in {s:?}")));
                }
                Ok(RatFunc::new(num, den))
            }
            None => Ok(RatFunc::from_poly(parse_poly_t(strip_parens(s))?)),
        }
    }
}
