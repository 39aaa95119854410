use mahlercf::contfrac::{cf_expand, to_modified};
use mahlercf::mahler::MahlerParams;
use mahlercf::recurrence::{recur_d2, recur_d3, CoeffSeq};
use mahlercf::{rat, RatFunc, Rational, Scalar};
use proptest::prelude::*;

fn small_rat() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=20).prop_map(|(n, d)| rat(n, d))
}

fn from_expansion(p: &MahlerParams<Rational>, n: usize) -> CoeffSeq<Rational> {
    let raw = cf_expand(&p.g_series(60), n).unwrap();
    CoeffSeq::from_modified(&to_modified(&raw), n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn d2_recurrence_matches_expansion(u in small_rat()) {
        let s = recur_d2(&u, 20);
        prop_assume!(s.stop.is_none());
        let e = from_expansion(&MahlerParams::new(2, vec![u.clone()]).unwrap(), 20);
        prop_assert_eq!(s.alphas(), e.alphas());
        prop_assert_eq!(s.betas(), e.betas());
        for k in 0..10 {
            prop_assert_eq!(s.alpha(2 * k + 1).unwrap(), &-u.clone());
            prop_assert_eq!(s.alpha(2 * k + 2).unwrap(), &u);
        }
    }

    #[test]
    fn d3_recurrence_matches_expansion(u in small_rat(), v in small_rat()) {
        let s = recur_d3(&u, &v, 20);
        prop_assume!(s.stop.is_none());
        let e = from_expansion(&MahlerParams::new(3, vec![u.clone(), v.clone()]).unwrap(), 20);
        prop_assert_eq!(s.alphas(), e.alphas());
        prop_assert_eq!(s.betas(), e.betas());
    }

    #[test]
    fn d3_block_relations(u in small_rat(), v in small_rat()) {
        let s = recur_d3(&u, &v, 45);
        prop_assume!(s.stop.is_none());
        let (a, b) = (|n| s.alpha(n).unwrap().clone(), |n| s.beta(n).unwrap().clone());
        for k in 0..=13 {
            prop_assert_eq!(a(3 * k + 4), -u.clone());
            prop_assert_eq!(a(3 * k + 5) + a(3 * k + 6), u.clone());
            prop_assert_eq!(a(3 * k + 5) * a(3 * k + 6) + b(3 * k + 6), v.clone());
            prop_assert_eq!(b(k + 2), b(3 * k + 2) * b(3 * k + 3) * b(3 * k + 4));
        }
    }
}

fn is_unit(r: &Rational) -> bool {
    Scalar::is_one(r) || Scalar::is_one(&-r.clone())
}

#[test]
fn symbolic_d2_units() {
    let s = recur_d2(&RatFunc::t(), 16);
    assert_eq!(s.stop, None);
    for n in 3..=16 {
        let b = s.beta(n).unwrap();
        for p in [b.numer(), b.denom()] {
            assert!(is_unit(&p.lead().unwrap().clone()), "beta_{n} = {b}");
            assert!(is_unit(&p.coeff(0)), "beta_{n} = {b}");
        }
    }
}

#[test]
fn symbolic_d3_degrees() {
    let s = recur_d3(&RatFunc::zero(), &RatFunc::t(), 24);
    assert_eq!(s.stop, None);
    for k in 1..8 {
        assert!(
            s.beta(3 * k + 1).unwrap().degree().unwrap() <= -1,
            "k = {k}"
        );
        assert_eq!(s.beta(3 * k + 2).unwrap().degree(), Some(1), "k = {k}");
        assert_eq!(s.beta(3 * k + 3).unwrap().degree(), Some(1), "k = {k}");
    }
}
