//! Hankel determinants `Hₙ = det[c_{i+j}]_{0≤i,j<n}` of the power series
//! `f̂(y) = Σ cₙ yⁿ = ∏ P(y^{dᵗ})`, computed directly and read off the
//! continued fraction of `g(x) = x⁻¹ f̂(1/x)`.
//!
//! On the continued fraction side, with `sᵢ = deg qᵢ` and `kⱼ = deg aⱼ₊₁ − 1`,
//!
//! ```text
//! H_{sᵢ} = (−1)^ε · v₀^{sᵢ} · v₁^{sᵢ−s₁} ⋯ v_{i−1}^{sᵢ−s_{i−1}},   ε = Σ kⱼ(kⱼ+1)/2
//! ```
//!
//! and every other `Hₙ` vanishes. The weights are `v₀ = β₁` and `vⱼ = −βⱼ₊₁`
//! for `j ≥ 1`; that sign mapping was calibrated against direct determinants.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::algebra::{Laurent, Rational, Scalar};
use crate::contfrac::{cf_expand, convergents, to_modified, CfEnd, ModifiedCf};
use crate::error::{Error, Result};

/// Exact `n × n` Hankel determinant of `c₀ … c_{2n−2}`.
///
/// The entries are scaled to integers and eliminated fraction-free.
///
/// ```
/// use mahlercf::{rat, hankel::hankel_det};
/// // c = (1, u, u) with u = 3
/// assert_eq!(hankel_det(&[rat(1, 1), rat(3, 1), rat(3, 1)], 2).unwrap(), rat(-6, 1));
/// ```
pub fn hankel_det(c: &[Rational], n: usize) -> Result<Rational> {
    if n == 0 {
        return Ok(<Rational as Scalar>::one());
    }
    if c.len() < 2 * n - 1 {
        return Err(Error::InsufficientCoefficients {
            needed: 2 * n - 1,
            have: c.len(),
        });
    }
    let entries = &c[..2 * n - 1];
    let l = entries
        .iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let m: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (&entries[i + j] * Rational::from_integer(l.clone())).to_integer())
                .collect()
        })
        .collect();
    let det = bareiss(m);
    Ok(Rational::new(det, num_traits::pow(l, n)))
}

/// Fraction-free Gaussian elimination with row pivoting.
pub fn bareiss(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m.last().map_or_else(BigInt::one, |row| row[n - 1].clone());
    if sign < 0 {
        -det
    } else {
        det
    }
}

/// Hankel determinants up to some order as predicted by a continued fraction.
#[derive(Clone, Debug, PartialEq)]
pub struct HankelProfile<F> {
    /// `s₁ < s₂ < …`, degrees of the convergent denominators.
    pub s: Vec<usize>,
    /// `H_{sᵢ}`.
    pub h: BTreeMap<usize, F>,
    /// `n ≤ certified_to` with `Hₙ = 0`.
    pub zero_set: Vec<usize>,
    /// Every `Hₙ` with `n ≤ certified_to` is determined by this profile.
    pub certified_to: usize,
}

impl<F: Scalar> HankelProfile<F> {
    pub fn value(&self, n: usize) -> Option<F> {
        if n > self.certified_to {
            return None;
        }
        Some(self.h.get(&n).cloned().unwrap_or_else(F::zero))
    }
}

/// Evaluates the determinant formula for every `sᵢ ≤ n_max` covered by `cf`,
/// which must be the continued fraction of `x⁻¹ f̂(1/x)`.
pub fn hankel_from_cf<F: Scalar>(cf: &ModifiedCf<F>, n_max: usize) -> HankelProfile<F> {
    let mut s = Vec::new();
    let mut h = BTreeMap::new();
    let mut v: Vec<F> = Vec::new();
    let mut degs: Vec<usize> = vec![0];
    let mut eps = 0usize;
    let mut total = 0usize;
    let mut last_k = 0usize;
    for i in 1..=cf.terms() {
        let deg = cf.a_hat[i].degree().unwrap_or(0);
        let k = deg - 1;
        let w = if i == 1 {
            cf.beta[1].clone()
        } else {
            -cf.beta[i].clone()
        };
        v.push(w);
        eps += k * (k + 1) / 2;
        total += deg;
        last_k = total;
        if total > n_max {
            break;
        }
        let mut val = if eps % 2 == 1 { -F::one() } else { F::one() };
        for (j, vj) in v.iter().enumerate() {
            for _ in 0..(total - degs[j]) {
                val = val * vj.clone();
            }
        }
        degs.push(total);
        s.push(total);
        h.insert(total, val);
    }
    let reach = match cf.end {
        _ if last_k > n_max => n_max,
        CfEnd::Terminated => n_max,
        CfEnd::Complete => last_k,
        CfEnd::Exhausted { next_degree, .. } => last_k + next_degree.lower_bound() - 1,
    };
    let certified_to = reach.min(n_max);
    let present: BTreeSet<usize> = s.iter().copied().collect();
    let zero_set = (1..=certified_to)
        .filter(|n| !present.contains(n))
        .collect();
    HankelProfile {
        s,
        h,
        zero_set,
        certified_to,
    }
}

/// Degrees `deg q ≤ n_max` of reduced convergents `p/q` of `g`.
pub fn hankel_nonzero_degrees<F: Scalar>(g: &Laurent<F>, n_max: usize) -> Result<BTreeSet<usize>> {
    let raw = cf_expand(g, n_max)?;
    let m = to_modified(&raw);
    let mut out = BTreeSet::new();
    let mut top = 0;
    for c in convergents(&m).iter().skip(1) {
        let dq = c.q.degree().unwrap_or(0);
        top = dq;
        if dq > n_max {
            return Ok(out);
        }
        if c.p.is_coprime(&c.q) {
            out.insert(dq);
        }
    }
    let reach = match raw.end {
        CfEnd::Terminated => usize::MAX,
        CfEnd::Complete => top,
        CfEnd::Exhausted { next_degree, .. } => top + next_degree.lower_bound() - 1,
    };
    if reach < n_max {
        return Err(Error::PrecisionExhausted(format!(
            "convergent degrees are only known through {reach}"
        )));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::mahler::MahlerParams;

    // cofactor expansion along the first row
    fn naive_det(m: &[Vec<Rational>]) -> Rational {
        let n = m.len();
        if n == 0 {
            return <Rational as Scalar>::one();
        }
        let mut acc = <Rational as Scalar>::zero();
        for j in 0..n {
            let minor: Vec<Vec<Rational>> = m[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|(c, _)| *c != j)
                        .map(|(_, x)| x.clone())
                        .collect()
                })
                .collect();
            let term = &m[0][j] * naive_det(&minor);
            acc = if j % 2 == 0 { acc + term } else { acc - term };
        }
        acc
    }

    fn hankel_matrix(c: &[Rational], n: usize) -> Vec<Vec<Rational>> {
        (0..n)
            .map(|i| (0..n).map(|j| c[i + j].clone()).collect())
            .collect()
    }

    fn params(d: usize, u: &[i64]) -> MahlerParams<Rational> {
        MahlerParams::new(d, u.iter().map(|&x| rat(x, 1)).collect()).unwrap()
    }

    #[test]
    fn small_determinants() {
        assert_eq!(hankel_det(&[rat(1, 1)], 1).unwrap(), rat(1, 1));
        assert_eq!(
            hankel_det(&[rat(1, 1), rat(0, 1), rat(0, 1)], 2).unwrap(),
            rat(0, 1)
        );
        assert!(matches!(
            hankel_det(&[rat(1, 1)], 2),
            Err(Error::InsufficientCoefficients { needed: 3, have: 1 })
        ));
    }

    #[test]
    fn bareiss_matches_cofactors() {
        let c: Vec<Rational> = (0..11).map(|i| rat((i * i) % 7 - 3, 1 + i % 4)).collect();
        for n in 1..=6 {
            assert_eq!(
                hankel_det(&c, n).unwrap(),
                naive_det(&hankel_matrix(&c, n)),
                "n = {n}"
            );
        }
    }

    fn check_against_direct(p: &MahlerParams<Rational>, n_max: usize) {
        let c = p.fhat_coeffs(2 * n_max);
        let g = p.g_series(4 * n_max + 8);
        let cf = to_modified(&cf_expand(&g, 2 * n_max).unwrap());
        let prof = hankel_from_cf(&cf, n_max);
        assert_eq!(prof.certified_to, n_max, "{p}");
        let nonzero = hankel_nonzero_degrees(&g, n_max).unwrap();
        for n in 1..=n_max {
            let direct = hankel_det(&c, n).unwrap();
            assert_eq!(prof.value(n).unwrap(), direct, "{p}, n = {n}");
            assert_eq!(
                nonzero.contains(&n),
                !Scalar::is_zero(&direct),
                "{p}, n = {n}"
            );
        }
    }

    #[test]
    fn formula_matches_direct_determinants() {
        check_against_direct(&params(2, &[2]), 8);
        check_against_direct(&params(2, &[-3]), 10);
        check_against_direct(&params(3, &[2, 1]), 12);
        check_against_direct(&params(3, &[1, -2]), 12);
        check_against_direct(&params(3, &[3, 9]), 10);
        check_against_direct(&params(4, &[1, 1, 1]), 12);
    }

    #[test]
    fn gaps_for_nonlinear_quotients() {
        let p = params(3, &[2, 1]);
        let g = p.g_series(40);
        let set = hankel_nonzero_degrees(&g, 12).unwrap();
        assert!((1..=5).all(|n| set.contains(&n)));
        assert!(!set.contains(&6));
        // g = 1/(x − 1) for (1, 1)
        let g = params(3, &[1, 1]).g_series(20);
        assert_eq!(hankel_nonzero_degrees(&g, 5).unwrap(), BTreeSet::from([1]));
        let exact = params(2, &[0]).g_series(20);
        assert_eq!(
            hankel_nonzero_degrees(&exact, 8).unwrap(),
            BTreeSet::from([1])
        );
    }
}
