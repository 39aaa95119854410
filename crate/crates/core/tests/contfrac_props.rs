use mahlercf::contfrac::{
    approx_rate, cf_expand, continuant, convergents, expand_ratio, is_convergent, reconstruct_raw,
    to_modified, CfEnd, Continuant, ModifiedCf, NextDegree, RawCf,
};
use mahlercf::{rat, Error, Laurent, Poly, Rational, Scalar};
use proptest::prelude::*;

fn small_rat() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=20).prop_map(|(n, d)| rat(n, d))
}

fn nonzero_rat() -> impl Strategy<Value = Rational> {
    small_rat().prop_filter("nonzero", |r| !Scalar::is_zero(r))
}

/// `Σ_{k≥1} c_k x^(−k)` known through `x^(−20)`.
fn series20() -> impl Strategy<Value = Laurent<Rational>> {
    (nonzero_rat(), prop::collection::vec(small_rat(), 19)).prop_map(|(lead, rest)| {
        let mut c = vec![lead];
        c.extend(rest);
        Laurent::truncated(-1, c, 20)
    })
}

fn monic(deg: usize) -> impl Strategy<Value = Poly<Rational>> {
    prop::collection::vec(small_rat(), deg).prop_map(|mut c| {
        c.push(rat(1, 1));
        Poly::new(c)
    })
}

fn modified_cf(len: usize) -> impl Strategy<Value = ModifiedCf<Rational>> {
    let quotients = prop::collection::vec((1usize..=3).prop_flat_map(monic), len);
    let betas = prop::collection::vec(nonzero_rat(), len);
    (small_rat(), quotients, betas).prop_map(|(a0, qs, bs)| {
        let mut a_hat = vec![Poly::constant(a0)];
        a_hat.extend(qs);
        let mut beta = vec![rat(1, 1)];
        beta.extend(bs);
        let rho = vec![rat(1, 1); beta.len()];
        ModifiedCf {
            a_hat,
            beta,
            rho,
            end: CfEnd::Complete,
        }
    })
}

fn series_of(p: &Poly<Rational>, q: &Poly<Rational>, prec: i64) -> Laurent<Rational> {
    Laurent::from_poly(p)
        .mul(&Laurent::from_poly(q).invert_to(prec + 64).unwrap())
        .with_prec(prec)
}

fn reduce(p: &Poly<Rational>, q: &Poly<Rational>) -> (Poly<Rational>, Poly<Rational>) {
    let g = p.gcd(q);
    (p.div_rem(&g).0, q.div_rem(&g).0)
}

/// Expansion by repeated series inversion, kept as an independent route.
fn expand_by_inversion(f: &Laurent<Rational>, max_terms: usize) -> RawCf<Rational> {
    let (a0, mut rem) = f.poly_split().unwrap();
    let mut quotients = vec![a0];
    while quotients.len() <= max_terms {
        let index = quotients.len();
        let val = match rem.val() {
            Ok(Some(v)) => v,
            Ok(None) => {
                return RawCf {
                    quotients,
                    end: CfEnd::Terminated,
                }
            }
            Err(_) => {
                let next_degree = NextDegree::AtLeast(rem.prec().unwrap() as usize + 1);
                return RawCf {
                    quotients,
                    end: CfEnd::Exhausted { index, next_degree },
                };
            }
        };
        let inv = match rem.invert() {
            Ok(inv) if inv.prec().is_none_or(|n| n >= 0) => inv,
            Ok(_) | Err(Error::PrecisionExhausted(_)) => {
                let next_degree = NextDegree::Exact((-val) as usize);
                return RawCf {
                    quotients,
                    end: CfEnd::Exhausted { index, next_degree },
                };
            }
            Err(e) => panic!("{e}"),
        };
        let (a, r) = inv.poly_split().unwrap();
        quotients.push(a);
        rem = r;
    }
    RawCf {
        quotients,
        end: CfEnd::Complete,
    }
}

/// Sparse series, so that nonlinear quotients and early exhaustion are common.
fn sparse_series() -> impl Strategy<Value = Laurent<Rational>> {
    (
        -2i64..=1,
        prop::collection::vec(prop_oneof![3 => Just(0i64), 1 => -3i64..=3], 1..16),
        0i64..=16,
    )
        .prop_map(|(top, c, extra)| {
            let len = c.len() as i64;
            let c: Vec<Rational> = c.into_iter().map(|x| rat(x, 1)).collect();
            Laurent::truncated(top, c, (len - top - 1 + extra).max(0))
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn convergents_reproduce_certified_coefficients(f in series20()) {
        let raw = cf_expand(&f, 20).unwrap();
        prop_assert_eq!(reconstruct_raw(&to_modified(&raw)), raw.clone());
        let m = to_modified(&raw);
        let last = convergents(&m).pop().unwrap();
        let dq = last.q.degree().unwrap() as i64;
        let reach = match raw.end {
            CfEnd::Exhausted { next_degree, .. } => 2 * dq + next_degree.lower_bound() as i64 - 1,
            CfEnd::Complete => 2 * dq,
            CfEnd::Terminated => 20,
        };
        let depth = reach.min(20);
        // f − p/q = O(x^(−depth−1)) is the same as q·f − p = O(x^(deg q − depth − 1))
        let diff = f.mul_poly(&last.q).sub(&Laurent::from_poly(&last.p));
        for e in dq - depth..=dq {
            prop_assert_eq!(diff.coeff(e), Some(rat(0, 1)), "exponent {}", e);
        }
        if depth < 20 {
            let small = series_of(&last.p, &last.q, depth.min(8));
            for e in -depth.min(8)..=0 {
                prop_assert_eq!(small.coeff(e), f.coeff(e), "exponent {}", e);
            }
        }
    }

    #[test]
    fn rational_input_terminates(p in prop::collection::vec(-5i64..=5, 1..4), q in prop::collection::vec(-5i64..=5, 4..6)) {
        let p = Poly::<Rational>::from_ints(&p);
        let q = Poly::<Rational>::from_ints(&q);
        prop_assume!(!p.is_zero() && q.degree() > p.degree());
        let raw = expand_ratio(&p, &q, 20);
        prop_assert_eq!(raw.end, CfEnd::Terminated);
        let last = convergents(&to_modified(&raw)).pop().unwrap();
        prop_assert_eq!(&last.p * &q, &p * &last.q);
    }

    #[test]
    fn euclid_agrees_with_inversion(f in prop_oneof![series20(), sparse_series()], n in 1usize..=20) {
        prop_assert_eq!(cf_expand(&f, n).unwrap(), expand_by_inversion(&f, n));
    }

    #[test]
    fn determinant_identity(cf in modified_cf(8)) {
        let c = convergents(&cf);
        let mut prod = rat(1, 1);
        for n in 0..8 {
            prod *= cf.beta[n + 1].clone();
            let sign = if n % 2 == 0 { rat(1, 1) } else { rat(-1, 1) };
            let det = &(&c[n + 1].p * &c[n].q) + &(&c[n].p * &c[n + 1].q).scale(&rat(-1, 1));
            prop_assert_eq!(det, Poly::constant(sign * prod.clone()));
            prop_assert!(c[n + 1].p.is_coprime(&c[n + 1].q));
        }
    }

    #[test]
    fn denominator_degrees_add_up(cf in modified_cf(8)) {
        let mut total = 0;
        for (n, conv) in convergents(&cf).iter().enumerate().skip(1) {
            total += cf.a_hat[n].degree().unwrap();
            prop_assert_eq!(conv.q.degree(), Some(total));
        }
    }

    #[test]
    fn blocks_compose(cf in modified_cf(16), n in 0usize..=8, m in 0usize..=8) {
        let c = convergents(&cf);
        let (p_prev, q_prev) = if n == 0 {
            (Poly::one(), Poly::zero())
        } else {
            (c[n - 1].p.clone(), c[n - 1].q.clone())
        };
        let a = &cf.a_hat[n + 1..=n + m];
        let b = &cf.beta[n + 1..=n + m];
        let k0 = continuant(Continuant::K0, a, b);
        let k1 = continuant(Continuant::K1, a, b);
        prop_assert_eq!(&(&k0 * &c[n].p) + &(&k1 * &p_prev), c[n + m].p.clone());
        prop_assert_eq!(&(&k0 * &c[n].q) + &(&k1 * &q_prev), c[n + m].q.clone());
    }

    #[test]
    fn continuant_degrees(cf in modified_cf(8), lo in 1usize..=4, len in 1usize..=4) {
        let a = &cf.a_hat[lo..lo + len];
        let b = &cf.beta[lo..lo + len];
        let all: usize = a.iter().map(|p| p.degree().unwrap()).sum();
        let tail: usize = a[1..].iter().map(|p| p.degree().unwrap()).sum();
        prop_assert_eq!(continuant(Continuant::K0, a, b).degree(), Some(all));
        prop_assert_eq!(continuant(Continuant::K1, a, b).degree(), Some(tail));
    }

    #[test]
    fn convergent_criterion_both_ways(f in series20(), r in prop::collection::vec(-2i64..=2, 1..3), s in prop::collection::vec(-2i64..=2, 1..3)) {
        let raw = cf_expand(&f, 6).unwrap();
        let conv = convergents(&to_modified(&raw));
        for c in conv.iter().skip(1) {
            if 2 * c.q.degree().unwrap() + 2 <= 20 {
                prop_assert!(is_convergent(&f, &c.p, &c.q).unwrap());
            }
        }
        // perturb a convergent and its predecessor; anything that still
        // beats 1/q^2 must be one of the convergents
        let r = Poly::<Rational>::from_ints(&r);
        let s = Poly::<Rational>::from_ints(&s);
        for w in conv.windows(2).skip(1) {
            for (p, q) in [
                (&w[1].p + &r, &w[1].q + &s),
                (&w[1].p + &w[0].p, &w[1].q + &w[0].q),
                (&w[1].p + &(&w[0].p * &r), &w[1].q + &(&w[0].q * &r)),
            ] {
                if q.is_zero() {
                    continue;
                }
                let (p, q) = reduce(&p, &q);
                if 2 * q.degree().unwrap() + 4 > 20 {
                    continue;
                }
                let good = approx_rate(&f, &p, &q).is_ok();
                let listed = conv.iter().any(|c| &c.p * &q == &p * &c.q);
                prop_assert_eq!(good, listed, "p = {}, q = {}", p, q);
            }
        }
    }
}
