use proptest::prelude::*;

use quasijordan::export::{parse_points_csv, parse_points_json, points_csv, points_json};
use quasijordan::quasiadd::{check_identities, from_integral, qadd, qadd_integral, qadd_repeated, qadd_repeated_closed, star_compatible, to_integral};
use quasijordan::scheme::{preset, PointKey};
use quasijordan::{GoldenInt, GoldenRat};

fn golden() -> impl Strategy<Value = GoldenInt> {
    (-10_000i64..10_000, -10_000i64..10_000).prop_map(|(a, b)| GoldenInt::new(a, b))
}

fn golden_rat() -> impl Strategy<Value = GoldenRat> {
    (-500i64..500, 1i64..40, -500i64..500, 1i64..40).prop_map(|(a, b, c, d)| GoldenRat::from_parts(a, b, c, d))
}

fn point(rank: usize) -> impl Strategy<Value = PointKey> {
    proptest::collection::vec(golden(), rank)
}

proptest! {
    #[test]
    fn star_is_a_ring_involution(x in golden(), y in golden()) {
        prop_assert_eq!((&x + &y).star(), &x.star() + &y.star());
        prop_assert_eq!((&x * &y).star(), &x.star() * &y.star());
        prop_assert_eq!(x.star().star(), x.clone());
        prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
    }

    #[test]
    fn golden_text_round_trips(x in golden(), q in golden_rat()) {
        prop_assert_eq!(x.to_string().parse::<GoldenInt>().unwrap(), x);
        prop_assert_eq!(q.to_string().parse::<GoldenRat>().unwrap(), q);
    }

    #[test]
    fn exact_sign_matches_floats_away_from_zero(q in golden_rat()) {
        let f = q.to_f64();
        prop_assume!(f.abs() > 1e-9);
        prop_assert_eq!(q.sign(), if f > 0.0 { 1 } else { -1 });
    }

    #[test]
    fn field_inverse(q in golden_rat()) {
        prop_assume!(q.sign() != 0);
        prop_assert_eq!(&q * &q.inverse().unwrap(), GoldenRat::one());
    }

    #[test]
    fn quasiaddition_identities_hold(x in point(3), y in point(3), u in point(3)) {
        prop_assert!(check_identities(&x, &y, &u).is_empty());
        prop_assert!(star_compatible(&x, &y));
        prop_assert_eq!(from_integral(&qadd_integral(&to_integral(&x), &to_integral(&y))), qadd(&x, &y));
    }

    #[test]
    fn repeated_quasiaddition_closed_form(x in point(1), y in point(1), k in 1u32..=10) {
        prop_assert_eq!(qadd_repeated(&y, &x, k).unwrap(), qadd_repeated_closed(&y, &x, k));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn exports_round_trip(name in prop::sample::select(vec!["fibonacci-palindromic", "fibonacci", "penrose", "z6", "z6-icosian"]), r in 1i64..4) {
        let s = preset(name).unwrap();
        let radius = GoldenRat::from_int(r);
        let pts = s.enumerate(&radius).unwrap();
        prop_assert_eq!(parse_points_csv(s.lattice, &points_csv(s.lattice, &pts).unwrap()).unwrap(), pts.clone());
        let (file, back) = parse_points_json(&points_json(&s, &radius, &pts).unwrap()).unwrap();
        prop_assert_eq!(file.count, pts.len());
        prop_assert_eq!(back, pts);
    }
}
