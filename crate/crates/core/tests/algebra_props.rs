use mahlercf::{rat, Laurent, Poly, RatFunc, Rational, Scalar};
use proptest::prelude::*;

fn small_rat() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=20).prop_map(|(n, d)| rat(n, d))
}

fn nonzero_rat() -> impl Strategy<Value = Rational> {
    small_rat().prop_filter("nonzero", |r| !Scalar::is_zero(r))
}

/// Exact series with a nonzero leading coefficient.
fn exact_series() -> impl Strategy<Value = Laurent<Rational>> {
    (
        -4i64..=4,
        nonzero_rat(),
        prop::collection::vec(small_rat(), 0..6),
    )
        .prop_map(|(top, lead, rest)| {
            let mut c = vec![lead];
            c.extend(rest);
            Laurent::exact(top, c)
        })
}

/// A long truncated series together with a coarser copy of it.
fn nested_pair() -> impl Strategy<Value = (Laurent<Rational>, Laurent<Rational>)> {
    (
        -3i64..=3,
        nonzero_rat(),
        prop::collection::vec(small_rat(), 40),
        4i64..=10,
    )
        .prop_map(|(top, lead, rest, n)| {
            let mut c = vec![lead];
            c.extend(rest);
            let fine = Laurent::truncated(top, c, 3 * n);
            let coarse = fine.with_prec(n);
            (fine, coarse)
        })
}

fn poly_t() -> impl Strategy<Value = Poly<Rational>> {
    prop::collection::vec(-4i64..=4, 1..4).prop_map(|c| Poly::from_ints(&c))
}

fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (poly_t(), poly_t().prop_filter("nonzero", |p| !p.is_zero()))
        .prop_map(|(n, d)| RatFunc::new(n, d))
}

fn known_range(f: &Laurent<Rational>) -> std::ops::RangeInclusive<i64> {
    let lo = -f.prec().expect("truncated");
    lo..=f.top().max(lo)
}

fn assert_coprime(r: &RatFunc) {
    assert!(
        r.numer().is_coprime(r.denom()) || r.numer().is_zero(),
        "{r} not reduced"
    );
}

proptest! {
    #[test]
    fn valuation_is_additive(f in exact_series(), g in exact_series()) {
        let vf = f.val().unwrap().unwrap();
        let vg = g.val().unwrap().unwrap();
        prop_assert_eq!(f.mul(&g).val().unwrap(), Some(vf + vg));
    }

    #[test]
    fn valuation_of_sum(f in exact_series(), g in exact_series()) {
        let vf = f.val().unwrap().unwrap();
        let vg = g.val().unwrap().unwrap();
        match f.add(&g).val().unwrap() {
            None => prop_assert_eq!(vf, vg),
            Some(v) => {
                prop_assert!(v <= vf.max(vg));
                if vf != vg {
                    prop_assert_eq!(v, vf.max(vg));
                }
            }
        }
    }

    #[test]
    fn inverse_multiplies_to_one((_, f) in nested_pair()) {
        let inv = f.invert().unwrap();
        let prod = f.mul(&inv);
        for e in known_range(&prod) {
            let want = if e == 0 { rat(1, 1) } else { rat(0, 1) };
            prop_assert_eq!(prod.coeff(e).unwrap(), want, "exponent {}", e);
        }
    }

    #[test]
    fn precision_claims_are_sound((fine, coarse) in nested_pair(), (fine2, coarse2) in nested_pair()) {
        let checks = [
            (coarse.invert().unwrap(), fine.invert().unwrap()),
            (coarse.mul(&coarse2), fine.mul(&fine2)),
            (coarse.add(&coarse2), fine.add(&fine2)),
            (coarse.substitute_power(3), fine.substitute_power(3)),
        ];
        for (lo, hi) in checks {
            for e in known_range(&lo) {
                prop_assert_eq!(lo.coeff(e), hi.coeff(e), "exponent {}", e);
            }
        }
    }

    #[test]
    fn ratfunc_stays_reduced(a in ratfunc(), b in ratfunc()) {
        assert_coprime(&a);
        assert_coprime(&(a.clone() + b.clone()));
        assert_coprime(&(a.clone() - b.clone()));
        assert_coprime(&(a.clone() * b.clone()));
        if !b.numer().is_zero() {
            assert_coprime(&(a.clone() / b.clone()));
        }
    }

    #[test]
    fn ratfunc_display_round_trips(a in ratfunc()) {
        let back: RatFunc = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn poly_division(a in prop::collection::vec(-9i64..=9, 1..7), b in prop::collection::vec(-9i64..=9, 1..4)) {
        let a = Poly::<Rational>::from_ints(&a);
        let b = Poly::<Rational>::from_ints(&b);
        prop_assume!(!b.is_zero());
        let (q, r) = a.div_rem(&b);
        prop_assert_eq!(&(&q * &b) + &r, a.clone());
        prop_assert!(r.is_zero() || r.degree() < b.degree());
        let g = a.gcd(&b);
        prop_assert!(a.div_rem(&g).1.is_zero() && b.div_rem(&g).1.is_zero());
    }
}
