use std::collections::BTreeSet;

use mahlercf::contfrac::{cf_expand, to_modified};
use mahlercf::hankel::{hankel_det, hankel_from_cf, hankel_nonzero_degrees};
use mahlercf::mahler::MahlerParams;
use mahlercf::recurrence::{classify, Verdict};
use mahlercf::{rat, Rational, Scalar};
use proptest::prelude::*;

fn params() -> impl Strategy<Value = MahlerParams<Rational>> {
    (2usize..=4)
        .prop_flat_map(|d| {
            prop::collection::vec((-4i64..=4, 1i64..=3).prop_map(|(n, q)| rat(n, q)), d - 1)
                .prop_map(move |u| (d, u))
        })
        .prop_map(|(d, u)| MahlerParams::new(d, u).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn three_way_agreement(p in params()) {
        let n_max = 12;
        let c = p.fhat_coeffs(2 * n_max);
        let mut prec = 4 * n_max + 8;
        let (profile, nonzero) = loop {
            let g = p.g_series(prec);
            let cf = to_modified(&cf_expand(&g, 2 * n_max).unwrap());
            let prof = hankel_from_cf(&cf, n_max);
            if prof.certified_to >= n_max {
                break (prof, hankel_nonzero_degrees(&g, n_max).unwrap());
            }
            prec *= 2;
            prop_assert!(prec <= 4096, "{} never certified", p);
        };
        for n in 1..=n_max {
            let direct = hankel_det(&c, n).unwrap();
            prop_assert_eq!(nonzero.contains(&n), !Scalar::is_zero(&direct), "{}, n = {}", p, n);
            prop_assert_eq!(profile.value(n).unwrap(), direct, "{}, n = {}", p, n);
        }
        if let Ok(cls) = classify(&p, n_max) {
            if let Verdict::BadlyApproximableUpTo(n) = cls.verdict {
                prop_assert_eq!(nonzero, (1..=n).collect::<BTreeSet<_>>());
            }
        }
    }
}
