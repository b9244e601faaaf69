//! Values below were fixed by brute-force enumeration before the scan engine existed.

use num_bigint::BigInt;
use orbitdensity_core::attraction::{coa_cover, cover_shift_consistent, CoverConfig};
use orbitdensity_core::chaos::asymptotic_tail;
use orbitdensity_core::density::{density_report, half, sojourn, visit_set};
use orbitdensity_core::folner::FolnerSequence;
use orbitdensity_core::setclass::{example52_sets, example53_support, max_gap, max_run, IntegerSet};
use orbitdensity_core::shift::{word_a, Alphabet, Cylinder, MetricValue, SymbolicPoint, Word};
use orbitdensity_core::Rational;

fn r(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

fn cyl(w: &str, at: i64) -> Cylinder {
    Cylinder::new(Word::parse(w).unwrap(), at)
}

fn words(c: &orbitdensity_core::attraction::CoACover) -> Vec<String> {
    c.kept.iter().map(|e| e.word.to_string()).collect()
}

#[test]
fn block_words_have_factorial_lengths() {
    let lengths: Vec<usize> = (1..=7).map(|n| word_a(n).unwrap().len()).collect();
    assert_eq!(lengths, [2, 6, 24, 120, 720, 5040, 40320]);
    assert_eq!(word_a(2).unwrap().to_string(), "010000");
}

#[test]
fn example51_point_windows() {
    let x = SymbolicPoint::example51();
    assert_eq!(x.window(-2, 4).unwrap().to_string(), "1001");
    assert_eq!(x.window(0, 6).unwrap().to_string(), "010000");
    assert_eq!(x.window(2, 4).unwrap().to_string(), "0000");
    for n in 1..=6 {
        let a = word_a(n).unwrap();
        let len = a.len() as i64;
        assert_eq!(x.window(-len, 2 * a.len()).unwrap(), a.reversed().concat(&a));
    }
}

#[test]
fn example51_cover_and_sojourn() {
    let x = SymbolicPoint::example51();
    let std = FolnerSequence::standard();
    let c = coa_cover(&x, &std, &CoverConfig::new(2, 5040, r(1, 20))).unwrap();
    assert_eq!(words(&c), ["00000", "11111"]);
    assert_eq!(c.union_sojourn.headline_lower, r(5001, 5041));
    assert!(cover_shift_consistent(&c, &x, 5040).is_empty());
    let s = sojourn(&x, &[cyl("000", -1), cyl("111", -1)], &std, 720).unwrap();
    assert_eq!(s.headline_lower, r(703, 721));
    let c1 = coa_cover(&x, &std, &CoverConfig::new(1, 720, r(1, 10))).unwrap();
    assert_eq!(words(&c1), ["000", "111"]);
}

#[test]
fn example52_tables() {
    let (a, b, c) = example52_sets();
    for s in [&a, &b, &c] {
        assert_eq!(max_gap(s, 1, 100_000).unwrap(), Some(10));
    }
    let ladder = [1_000i64, 10_000, 100_000];
    let runs = |s: &IntegerSet| ladder.map(|h| max_run(s, 1, h).unwrap());
    assert_eq!(runs(&a), [21, 31, 41]);
    assert_eq!(runs(&b), [3, 4, 5]);
    assert_eq!(runs(&c), [878, 8967, 89956]);
    let first = |s: IntegerSet| (1..=100_000).find(|&i| s.member(i));
    assert_eq!(first(a.clone().intersect(b.clone())), Some(19));
    assert_eq!(first(b.clone().intersect(c.clone())), Some(29));
    assert_eq!(first(a.clone().intersect(c.clone())), Some(18));
    assert_eq!(first(a.clone().intersect(b.clone()).intersect(c.clone())), None);
    for n in 1..=4u32 {
        let p = 10i64.pow(n);
        let n = i64::from(n);
        assert!(max_run(&a, 1, p + 10 * n).unwrap() >= 10 * n as u64);
        assert!(max_run(&b, 1, p + 11 * n).unwrap() >= n as u64);
    }
    for n in 1..=3u32 {
        let p = 10i64.pow(n);
        let bound = 10 * p - p - 12 * i64::from(n);
        assert!(max_run(&c, 1, 10 * p).unwrap() as i64 >= bound);
    }
}

#[test]
fn example53_support_and_covers() {
    let z = SymbolicPoint::indicator(example53_support());
    let head: String = (0..12).map(|i| char::from(b'0' + z.eval(i))).collect();
    assert_eq!(head, "101100111000");
    let s = example53_support();
    assert!(s.member(120) && !s.member(121));

    let cases = [
        (1, FolnerSequence::example53_f(), "111", (29, 31), (7, 8)),
        (1, FolnerSequence::example53_h(), "000", (29, 31), (7, 8)),
        (2, FolnerSequence::example53_f(), "11111", (27, 31), (3, 4)),
        (2, FolnerSequence::example53_h(), "00000", (27, 31), (3, 4)),
    ];
    for (k, f, word, up, lo) in cases {
        let c = coa_cover(&z, &f, &CoverConfig::new(k, 60, r(3, 10))).unwrap();
        assert_eq!(words(&c), [word]);
        assert_eq!(c.kept[0].upper, r(up.0, up.1));
        assert_eq!(c.kept[0].lower, r(lo.0, lo.1));
    }
    // At a low tolerance the boundary words of the blocks survive too.
    let low = coa_cover(&z, &FolnerSequence::example53_f(), &CoverConfig::new(1, 60, r(1, 20))).unwrap();
    assert_eq!(words(&low), ["011", "110", "111"]);

    let ones = sojourn(&z, &[cyl("1", 0)], &FolnerSequence::example53_f(), 40).unwrap();
    assert!(ones.ratios.iter().all(|(_, q)| *q == r(1, 1)));
    let zeros = sojourn(&z, &[cyl("0", 0)], &FolnerSequence::example53_f(), 40).unwrap();
    assert!(zeros.ratios.iter().all(|(_, q)| *q == r(0, 1)));

    let visits = visit_set(&z, &cyl("1", 0));
    let runs: Vec<u64> = [200, 500, 1000].iter().map(|&h| max_run(&visits, 0, h).unwrap()).collect();
    assert_eq!(runs, [14, 22, 31]);
}

#[test]
fn naturals_alternate_along_interleaved_blocks() {
    let n0 = IntegerSet::naturals();
    let rep = density_report(&n0, &FolnerSequence::example53_f(), 41, &half()).unwrap();
    assert_eq!((rep.headline_upper, rep.headline_lower), (r(1, 1), r(0, 1)));
}

#[test]
fn mutation_tail_agrees_off_the_patch() {
    let z = SymbolicPoint::indicator(example53_support());
    let y = z.mutate(&[(1, 1)]).unwrap();
    assert_eq!(asymptotic_tail(&z, &y, 2, 100, 1).unwrap().0, MetricValue::upper_bound(2));
    let zero = SymbolicPoint::constant(Alphabet::BINARY, 0).unwrap();
    assert_eq!(zero.mutate(&[(0, 1)]).unwrap().eval(0), 1);
}
