//! Parameter scans for `d = 3` and the finite-horizon verification suites.
//!
//! Every integer point where some β vanishes within 30 terms, for
//! `|u|, |v| < 1000`, is expected to lie on one of three families:
//! `(±u, u²)`, `(±s³, −s²(s²+1))` and `(±2, 1)`. [`scan_grid`] reruns that
//! experiment on a smaller square.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{rat, Rational, Scalar};
use crate::error::{Error, Result};
use crate::recurrence::{recur_d2, recur_d3, CoeffSeq};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Family {
    Square,
    Cubic,
    Special,
    None,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Square => "SQUARE",
            Family::Cubic => "CUBIC",
            Family::Special => "SPECIAL",
            Family::None => "NONE",
        })
    }
}

/// Exact membership in the known non-badly-approximable families.
/// `(0, 0)` lies on the first two and is reported as [`Family::Square`].
pub fn family_detect(u: i64, v: i64) -> Family {
    let (u, v) = (u as i128, v as i128);
    if v == u * u {
        return Family::Square;
    }
    let s = icbrt(u.abs());
    if s * s * s == u.abs() && v == -(s * s) * (s * s + 1) {
        return Family::Cubic;
    }
    if u.abs() == 2 && v == 1 {
        return Family::Special;
    }
    Family::None
}

fn icbrt(n: i128) -> i128 {
    let mut s = (n as f64).cbrt().round() as i128;
    while s * s * s > n {
        s -= 1;
    }
    while (s + 1) * (s + 1) * (s + 1) <= n {
        s += 1;
    }
    s
}

/// Points where `g` is a rational function: `(0, 0)` gives `x⁻¹` and
/// `(±1, 1)` give `1/(x ∓ 1)`. They show up in scans as `beta_zero` at 2.
pub fn is_rational_point(u: i64, v: i64) -> bool {
    v == u * u && u.abs() <= 1
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanVerdict {
    Ok,
    BetaZero,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanRecord {
    pub u: i64,
    pub v: i64,
    pub verdict: ScanVerdict,
    pub stop_index: Option<usize>,
    pub family: Family,
    pub terms: usize,
}

pub fn scan_point(u: i64, v: i64, terms: usize) -> ScanRecord {
    let s = recur_d3(&rat(u, 1), &rat(v, 1), terms);
    ScanRecord {
        u,
        v,
        verdict: if s.stop.is_some() {
            ScanVerdict::BetaZero
        } else {
            ScanVerdict::Ok
        },
        stop_index: s.stop,
        family: family_detect(u, v),
        terms,
    }
}

/// All `(u, v) ∈ [−r, r]²` in lexicographic order. `jobs = 0` lets rayon pick.
pub fn scan_grid(r: i64, terms: usize, jobs: usize) -> Result<Vec<ScanRecord>> {
    if r < 1 {
        return Err(Error::InvalidParams(format!(
            "range must be at least 1, got {r}"
        )));
    }
    if terms < 2 {
        return Err(Error::InvalidParams(format!(
            "terms must be at least 2, got {terms}"
        )));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::InvalidParams(e.to_string()))?;
    let rows: Vec<Vec<ScanRecord>> = pool.install(|| {
        (-r..=r)
            .into_par_iter()
            .map(|u| (-r..=r).map(|v| scan_point(u, v, terms)).collect())
            .collect()
    });
    Ok(rows.into_iter().flatten().collect())
}

/// Outcome of a finite-horizon suite. Nothing here is a proof.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub cases: usize,
    pub horizon: usize,
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} cases, verified through horizon {}",
            self.name, self.cases, self.horizon
        )
    }
}

fn expect_no_stop(label: String, s: &CoeffSeq<Rational>) -> Result<()> {
    match s.stop {
        None => Ok(()),
        Some(m) => Err(Error::AssertionFailed(format!("{label}: beta_{m} = 0"))),
    }
}

/// `d = 2`, `P = 1 + ux`: no β vanishes for `u ∉ {0, 1}`.
pub fn verify_linear(us: &[Rational], horizon: usize) -> Result<SuiteReport> {
    let cases: Vec<&Rational> = us
        .iter()
        .filter(|u| !Scalar::is_zero(*u) && !Scalar::is_one(*u))
        .collect();
    cases
        .par_iter()
        .try_for_each(|u| expect_no_stop(format!("u = {u}"), &recur_d2(*u, horizon)))?;
    Ok(SuiteReport {
        name: "linear",
        cases: cases.len(),
        horizon,
    })
}

/// `d = 3` on the axes: `(u, 0)` and `(0, v)` with the coordinate nonzero.
pub fn verify_axes(values: &[Rational], horizon: usize) -> Result<SuiteReport> {
    let zero = rat(0, 1);
    let cases: Vec<(Rational, Rational)> = values
        .iter()
        .filter(|c| !Scalar::is_zero(*c))
        .flat_map(|c| [(c.clone(), zero.clone()), (zero.clone(), c.clone())])
        .collect();
    cases.par_iter().try_for_each(|(u, v)| {
        expect_no_stop(format!("(u, v) = ({u}, {v})"), &recur_d3(u, v, horizon))
    })?;
    Ok(SuiteReport {
        name: "axes",
        cases: cases.len(),
        horizon,
    })
}

/// Whether `(u, v)` satisfies `u² ≥ 6` and `v ≥ max(3u² − 1, 2u² + 8)`.
pub fn in_envelope_region(u: &Rational, v: &Rational) -> bool {
    let u2 = u * u;
    u2 >= rat(6, 1) && *v >= &u2 * rat(3, 1) - rat(1, 1) && *v >= &u2 * rat(2, 1) + rat(8, 1)
}

/// Checks the block bounds on `α, β` through `terms` indices. For `u < 0`
/// the α are negated first (`g_(−u,v)(x) = −g_(u,v)(−x)`).
pub fn check_envelope(u: &Rational, v: &Rational, terms: usize) -> Result<()> {
    let s = recur_d3(u, v, terms);
    let witness = |idx: usize, what: &str, val: &Rational| {
        Error::AssertionFailed(format!(
            "(u, v) = ({u}, {v}): {what}_{idx} = {val} outside its bound"
        ))
    };
    if let Some(m) = s.stop {
        return Err(Error::AssertionFailed(format!(
            "(u, v) = ({u}, {v}): beta_{m} = 0"
        )));
    }
    let neg = u < &rat(0, 1);
    let ua = if neg { -u.clone() } else { u.clone() };
    let alpha = |n: usize| {
        let a = s.alpha(n).unwrap().clone();
        if neg {
            -a
        } else {
            a
        }
    };
    let u2 = &ua * &ua;
    let one = rat(1, 1);
    let within = |x: &Rational, lo: Rational, hi: Rational| lo <= *x && *x <= hi;
    let mut k = 0;
    while 3 * k + 3 <= terms {
        let (i1, i2, i3) = (3 * k + 1, 3 * k + 2, 3 * k + 3);
        let a2 = alpha(i2);
        if !within(&a2, &ua * rat(2, 1), &ua * rat(3, 1)) {
            return Err(witness(i2, "alpha", &a2));
        }
        let a3 = alpha(i3);
        if !within(&a3, -(&ua * rat(2, 1)), -ua.clone()) {
            return Err(witness(i3, "alpha", &a3));
        }
        let b1 = s.beta(i1).unwrap();
        if !within(b1, -one.clone(), one.clone()) {
            return Err(witness(i1, "beta", b1));
        }
        let b2 = s.beta(i2).unwrap();
        if !within(b2, &u2 - v - &one, &u2 - v + &one) {
            return Err(witness(i2, "beta", b2));
        }
        let b3 = s.beta(i3).unwrap();
        if !within(b3, v + &u2 * rat(2, 1), v + &u2 * rat(6, 1)) {
            return Err(witness(i3, "beta", b3));
        }
        k += 1;
    }
    Ok(())
}

pub fn verify_envelope(samples: &[(Rational, Rational)], terms: usize) -> Result<SuiteReport> {
    if let Some((u, v)) = samples.iter().find(|(u, v)| !in_envelope_region(u, v)) {
        return Err(Error::InvalidParams(format!(
            "({u}, {v}) is outside the region u^2 >= 6, v >= max(3u^2 - 1, 2u^2 + 8)"
        )));
    }
    samples
        .par_iter()
        .try_for_each(|(u, v)| check_envelope(u, v, terms))?;
    Ok(SuiteReport {
        name: "envelope",
        cases: samples.len(),
        horizon: terms,
    })
}
