use num_bigint::BigInt;
use num_traits::{One, Zero};
use orbitdensity_core::attraction::{coa_cover, CoverConfig};
use orbitdensity_core::density::{count_ratio, density_report, half, visit_set};
use orbitdensity_core::folner::{FolnerSequence, FolnerSet};
use orbitdensity_core::scan::{RangeScan, Sequential};
use orbitdensity_core::setclass::{max_gap, pw_syndetic_witness, IntegerSet};
use orbitdensity_core::shift::{metric, Alphabet, Cylinder, SymbolicPoint, Word};
use orbitdensity_core::Rational;
use proptest::prelude::*;

fn point_strategy(size: u16) -> impl Strategy<Value = SymbolicPoint> {
    let symbols = prop::collection::vec(0..size as u8, 1..7);
    let patches = prop::collection::btree_map(-12i64..12, 0..size as u8, 0..4);
    (symbols, -5i64..5, patches).prop_map(move |(w, phase, patches)| {
        let alphabet = Alphabet::new(size).unwrap();
        let base = SymbolicPoint::periodic(alphabet, &Word::new(w).unwrap(), phase).unwrap();
        base.mutate(&patches.into_iter().collect::<Vec<_>>()).unwrap()
    })
}

fn set_strategy() -> impl Strategy<Value = IntegerSet> {
    let leaf = prop_oneof![
        prop::collection::vec(-60i64..60, 0..8).prop_map(IntegerSet::finite),
        (1u64..8, -10i64..10).prop_map(|(m, r)| IntegerSet::progression(m, r).unwrap()),
        (-50i64..50, 0i64..40).prop_map(|(lo, w)| IntegerSet::interval(Some(lo), Some(lo + w))),
        Just(IntegerSet::naturals()),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.union(b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.intersect(b)),
            inner.clone().prop_map(IntegerSet::complement),
            inner.clone().prop_map(IntegerSet::negate),
            (inner, -20i64..20).prop_map(|(a, g)| a.translate(g)),
        ]
    })
}

fn folner_strategy() -> impl Strategy<Value = FolnerSequence> {
    prop_oneof![
        Just(FolnerSequence::standard()),
        Just(FolnerSequence::from_fn("sliding", |n| {
            let n = n as i64;
            FolnerSet::interval(n / 2, n + 3)
        })),
        Just(FolnerSequence::from_fn("gappy", |n| {
            FolnerSet::from_elements((0..=n as i64).filter(|i| i % 3 != 1).map(|i| i - 4)).unwrap()
        })),
        Just(FolnerSequence::example53_f()),
        Just(FolnerSequence::example53_h()),
        (-30i64..30).prop_map(|g| FolnerSequence::standard().translate(g)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn metric_is_symmetric_and_ultrametric(
        x in point_strategy(2),
        y in point_strategy(2),
        z in point_strategy(2),
        r in 0u32..20,
    ) {
        let dxy = metric(&x, &y, r).unwrap();
        prop_assert_eq!(dxy, metric(&y, &x, r).unwrap());
        let dyz = metric(&y, &z, r).unwrap();
        let dxz = metric(&x, &z, r).unwrap();
        prop_assert!(dxz.exponent >= dxy.exponent.min(dyz.exponent));
        prop_assert_eq!(metric(&x, &x, r).unwrap().is_exact(), false);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn boolean_laws_hold_pointwise(a in set_strategy(), b in set_strategy(), g in -30i64..30) {
        let not_union = a.clone().union(b.clone()).complement();
        let meet_of_nots = a.clone().complement().intersect(b.clone().complement());
        let shifted_union = a.clone().union(b.clone()).translate(g);
        let union_of_shifted = a.clone().translate(g).union(b.clone().translate(g));
        let twice = a.clone().complement().complement();
        let negated_twice = a.clone().negate().negate();
        for i in -10_000i64..=10_000 {
            prop_assert_eq!(not_union.member(i), meet_of_nots.member(i));
            prop_assert_eq!(shifted_union.member(i), union_of_shifted.member(i));
            prop_assert_eq!(twice.member(i), a.member(i));
            prop_assert_eq!(negated_twice.member(i), a.member(i));
        }
    }

    #[test]
    fn complement_duality_and_subadditivity(
        a in set_strategy(),
        b in set_strategy(),
        f in folner_strategy(),
        n in 0u64..80,
    ) {
        let r = count_ratio(&a, &f, n);
        prop_assert_eq!(&r + count_ratio(&a.clone().complement(), &f, n), Rational::one());
        prop_assert!(r >= Rational::zero() && r <= Rational::one());
        let joint = count_ratio(&a.clone().union(b.clone()), &f, n);
        prop_assert!(joint <= r + count_ratio(&b, &f, n));
    }

    #[test]
    fn translation_count_identity(a in set_strategy(), f in folner_strategy(), g in -40i64..40, n in 0u64..60) {
        // |A ∩ (F_n + g)| = |(A - g) ∩ F_n|
        let moved = f.translate(g);
        prop_assert_eq!(count_ratio(&a, &moved, n), count_ratio(&a.clone().translate(-g), &f, n));
    }

    #[test]
    fn headlines_are_ordered(a in set_strategy(), f in folner_strategy(), horizon in 1u64..60) {
        let report = density_report(&a, &f, horizon, &half()).unwrap();
        prop_assert!(report.headline_lower <= report.headline_upper);
        for idx in report.achieving_indices(&Rational::zero()) {
            prop_assert_eq!(&report.ratios[idx as usize].1, &report.headline_upper);
        }
    }

    #[test]
    fn syndetic_sets_are_piecewise_syndetic(a in set_strategy(), lo in -100i64..0, width in 1i64..200) {
        let hi = lo + width;
        if let Some(b) = max_gap(&a, lo, hi).unwrap() {
            let first = (lo..=hi).find(|&i| a.member(i)).unwrap();
            let last = (lo..=hi).rev().find(|&i| a.member(i)).unwrap();
            let span = pw_syndetic_witness(&a, b, (last - first + 1) as u64, first, last).unwrap();
            prop_assert_eq!(span.map(|s| (s.start, s.end)), Some((first, last)));
        }
    }

    #[test]
    fn resolution_refinement(x in point_strategy(2), f in folner_strategy(), k in 0u32..3, tol_pct in 5i64..60) {
        let tol = Rational::new(BigInt::from(tol_pct), BigInt::from(100));
        let coarse = coa_cover(&x, &f, &CoverConfig::new(k, 40, tol.clone())).unwrap();
        let fine = coa_cover(&x, &f, &CoverConfig::new(k + 1, 40, tol)).unwrap();
        for e in &fine.kept {
            let inner = Word::new(e.word.symbols()[1..e.word.len() - 1].to_vec()).unwrap();
            prop_assert!(coarse.keeps(&inner), "{} kept at k+1 but {} dropped at k", e.word, inner);
        }
    }

    #[test]
    fn rolling_window_codes_match_direct(x in point_strategy(3), offset in -5i64..5, len in 1usize..9, lo in -50i64..50) {
        let codes = Sequential.window_codes(&x, offset, len, lo, lo + 40);
        for (g, c) in (lo..=lo + 40).zip(codes) {
            prop_assert_eq!(c, x.window(g + offset, len).unwrap().code(x.alphabet()));
        }
    }

    #[test]
    fn cover_matches_per_word_densities(x in point_strategy(2), f in folner_strategy(), k in 0u32..2, horizon in 1u64..40) {
        let tol = Rational::new(BigInt::from(1), BigInt::from(10));
        let cover = coa_cover(&x, &f, &CoverConfig::new(k, horizon, tol.clone())).unwrap();
        let len = 2 * k as usize + 1;
        let mut expected = Vec::new();
        for code in 0..(1u64 << len) {
            let word = Word::from_code(code, len, Alphabet::BINARY);
            let rep = density_report(&visit_set(&x, &Cylinder::centered(word.clone())), &f, horizon, &half()).unwrap();
            if rep.headline_upper > tol {
                expected.push((word, rep.headline_upper, rep.headline_lower));
            }
        }
        let got: Vec<_> = cover.kept.iter().map(|e| (e.word.clone(), e.upper.clone(), e.lower.clone())).collect();
        prop_assert_eq!(got, expected);
    }
}
