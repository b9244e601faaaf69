//! Scripted end-to-end verification of the three constructions.
//!
//! Each check prints one `PASS` or `FAIL` line with its evidence. Expected
//! values were fixed by brute-force enumeration.

use num_bigint::BigInt;
use orbitdensity_core::attraction::{coa_cover_with, cover_in_orbit, cover_shift_consistent, CoACover, CoverConfig};
use orbitdensity_core::chaos::{f_chaotic_witness, li_yorke_verdict, ChaosVerdict, LiYorkeParams};
use orbitdensity_core::density::{half, sojourn_with};
use orbitdensity_core::folner::{defect, radius, FolnerSequence};
use orbitdensity_core::scan::RangeScan;
use orbitdensity_core::setclass::{example52_sets, example53_support, mask_with, max_gap_in, max_run_in, IntegerSet};
use orbitdensity_core::shift::{word_a, Alphabet, Cylinder, Dyadic, MetricValue, SymbolicPoint, Word};
use orbitdensity_core::Rational;

use crate::report::rational;

struct Log {
    text: String,
    passed: bool,
}

impl Log {
    fn new(title: &str) -> Self {
        Log { text: format!("# {title}\n"), passed: true }
    }

    fn check(&mut self, ok: bool, name: &str, evidence: impl AsRef<str>) {
        self.passed &= ok;
        let tag = if ok { "PASS" } else { "FAIL" };
        self.text += &format!("{tag} {name}: {}\n", evidence.as_ref());
    }

    fn finish(mut self) -> (String, bool) {
        self.text += if self.passed { "all checks passed\n" } else { "some checks failed\n" };
        (self.text, self.passed)
    }
}

fn r(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

fn kept(c: &CoACover) -> Vec<String> {
    c.kept.iter().map(|e| e.word.to_string()).collect()
}

fn constant(s: u8) -> SymbolicPoint {
    SymbolicPoint::constant(Alphabet::BINARY, s).expect("binary symbol")
}

/// Proximal within `|g| <= near` at `2^-near_exp`, and distance 1 beyond every tail index.
fn liyorke_evidence(
    log: &mut Log,
    name: &str,
    x: &SymbolicPoint,
    y: &SymbolicPoint,
    expect: bool,
) -> Option<ChaosVerdict> {
    let params = LiYorkeParams::new(10_000, 6, Dyadic(6), vec![10, 100, 1000]);
    let v = match li_yorke_verdict(x, y, &params) {
        Ok(v) => v,
        Err(e) => {
            log.check(false, name, e.to_string());
            return None;
        }
    };
    let near = v.proximal_evidence.iter().find(|(g, d)| g.unsigned_abs() <= 200 && d.at_most(Dyadic(6)));
    let tails: Vec<String> =
        v.tail_sup.iter().map(|t| format!("n={} g={} d={}", t.index, t.witness, t.value)).collect();
    let ok = if expect {
        v.liyorke && near.is_some() && v.tail_sup.iter().all(|t| t.value == MetricValue::ONE)
    } else {
        !v.liyorke
    };
    let near = near.map_or("none".to_string(), |(g, d)| format!("g={g} d={d}"));
    log.check(ok, name, format!("liyorke={} proximal {near}; tails {}", v.liyorke, tails.join(", ")));
    Some(v)
}

pub fn example51(scan: &dyn RangeScan) -> (String, bool) {
    let mut log = Log::new("example 5.1: a center of attraction that is not S-generic");
    let lengths: Vec<usize> = (1..=7).map(|n| word_a(n).map_or(0, |w| w.len())).collect();
    log.check(lengths == [2, 6, 24, 120, 720, 5040, 40320], "|A_n| = (n+1)!", format!("{lengths:?}"));

    let x = SymbolicPoint::example51();
    let nested = (1..=6).all(|n| {
        let a = word_a(n).expect("n <= 10");
        x.window(-(a.len() as i64), 2 * a.len()).ok() == Some(a.reversed().concat(&a))
    });
    log.check(nested, "x carries reverse(A_n) A_n around 0", "n = 1..6");

    let std = FolnerSequence::standard();
    match coa_cover_with(scan, &x, &std, &CoverConfig::new(2, 5040, r(1, 20))) {
        Ok(c) => {
            log.check(kept(&c) == ["00000", "11111"], "cover k=2 N=5040 tol=1/20", format!("{:?}", kept(&c)));
            let lower = &c.union_sojourn.headline_lower;
            log.check(*lower >= r(9, 10), "union sojourn lower >= 9/10", rational(lower));
            let violations = cover_shift_consistent(&c, &x, 5040);
            log.check(
                violations.is_empty(),
                "cover closed under the shift",
                format!("{} violations", violations.len()),
            );
            log.check(cover_in_orbit(&c, &x, 5040), "kept words occur in the orbit", "|g| <= 5040");
        }
        Err(e) => log.check(false, "cover k=2 N=5040 tol=1/20", e.to_string()),
    }
    match coa_cover_with(scan, &x, &std, &CoverConfig::new(1, 720, r(1, 10))) {
        Ok(c) => {
            let central = x.central_word(1);
            log.check(
                !c.keeps(&central),
                "not S-generic at k=1 N=720 tol=1/10",
                format!("central word {central}, kept {:?}", kept(&c)),
            );
        }
        Err(e) => log.check(false, "not S-generic at k=1 N=720 tol=1/10", e.to_string()),
    }
    let region =
        [Cylinder::new(Word::parse("000").expect("word"), -1), Cylinder::new(Word::parse("111").expect("word"), -1)];
    match sojourn_with(scan, &x, &region, &std, 720, &half()) {
        Ok(s) => log.check(
            s.headline_lower == r(703, 721),
            "sojourn of [000]@-1 ∪ [111]@-1 at N=720",
            rational(&s.headline_lower),
        ),
        Err(e) => log.check(false, "sojourn at N=720", e.to_string()),
    }
    liyorke_evidence(&mut log, "Li-Yorke pair (x, 0^inf)", &x, &constant(0), true);
    match f_chaotic_witness(&x, &constant(0), 10_000, 6, 8) {
        Ok(w) => log.check(
            w.all_nonempty(),
            "F-chaotic witness lists",
            format!("|l|={} |r|={} |s|={} |t|={}", w.l_seq.len(), w.r_seq.len(), w.s_seq.len(), w.t_seq.len()),
        ),
        Err(e) => log.check(false, "F-chaotic witness lists", e.to_string()),
    }
    log.finish()
}

pub fn example52(scan: &dyn RangeScan) -> (String, bool) {
    let mut log = Log::new("example 5.2: three thick syndetic sets with empty intersection");
    let (a, b, c) = example52_sets();
    let mask = |s: &IntegerSet, lo: i64, hi: i64| mask_with(scan, s, lo, hi).expect("lo <= hi");
    let triple = a.clone().intersect(b.clone()).intersect(c.clone());
    let hits = mask(&triple, 1, 100_000).count();
    log.check(hits == 0, "A∩B∩C ∩ [1, 10^5] empty", format!("{hits} members"));
    let sym = a.clone().symmetrize().intersect(b.clone().symmetrize()).intersect(c.clone().symmetrize());
    let hits = mask(&sym, -100_000, 100_000).count();
    log.check(hits == 0, "A*∩B*∩C* ∩ [-10^5, 10^5] empty", format!("{hits} members"));
    for (name, s) in [("A", &a), ("B", &b), ("C", &c)] {
        let m = mask(s, 1, 100_000);
        let gap = max_gap_in(&m);
        log.check(gap.is_some_and(|g| g <= 10), &format!("max_gap({name}) <= 10 on [1, 10^5]"), format!("{gap:?}"));
    }
    let ladder = [1_000i64, 10_000, 100_000];
    for (name, s, want) in [("A", &a, [21u64, 31, 41]), ("B", &b, [3, 4, 5]), ("C", &c, [878, 8967, 89956])] {
        let runs = ladder.map(|h| max_run_in(&mask(s, 1, h)));
        let growing = runs.windows(2).all(|w| w[0] < w[1]);
        log.check(runs == want && growing, &format!("max_run({name}) grows on 10^3, 10^4, 10^5"), format!("{runs:?}"));
    }
    for n in 1..=4i64 {
        let p = 10i64.pow(n as u32);
        let ra = max_run_in(&mask(&a, 1, p + 10 * n));
        let rb = max_run_in(&mask(&b, 1, p + 11 * n));
        log.check(
            ra >= 10 * n as u64 && rb >= n as u64,
            &format!("runs at n={n}"),
            format!("A {ra} >= {}, B {rb} >= {n}", 10 * n),
        );
    }
    let first = |s: IntegerSet| mask(&s, 1, 100_000).members().next();
    let pairs = [
        ("A∩B", first(a.clone().intersect(b.clone())), 19),
        ("B∩C", first(b.clone().intersect(c.clone())), 29),
        ("A∩C", first(a.clone().intersect(c.clone())), 18),
    ];
    for (name, got, want) in pairs {
        log.check(got == Some(want), &format!("min({name})"), format!("{got:?}"));
    }
    log.finish()
}

pub fn example53(scan: &dyn RangeScan) -> (String, bool) {
    let mut log = Log::new("example 5.3: centers of attraction depend on the Følner sequence");
    let support = example53_support();
    let z = SymbolicPoint::indicator(support.clone());
    let head: String = (0..12).map(|i| char::from(b'0' + z.eval(i))).collect();
    log.check(head == "101100111000", "z on [0, 11]", &head);

    let f = FolnerSequence::example53_f();
    let h = FolnerSequence::example53_h();
    for (k, seq, want) in [(1, &f, "111"), (1, &h, "000"), (2, &f, "11111"), (2, &h, "00000")] {
        let name = format!("cover along {} at k={k}", seq.label());
        match coa_cover_with(scan, &z, seq, &CoverConfig::new(k, 60, r(3, 10))) {
            Ok(c) => {
                let in_orbit = cover_in_orbit(&c, &z, radius(seq, 60));
                log.check(kept(&c) == [want] && in_orbit, &name, format!("{:?}, in orbit {in_orbit}", kept(&c)));
            }
            Err(e) => log.check(false, &name, e.to_string()),
        }
    }
    let one = [Cylinder::new(Word::parse("1").expect("word"), 0)];
    match sojourn_with(scan, &z, &one, &f, 60, &half()) {
        Ok(s) => {
            let all_one = s.ratios.iter().all(|(_, q)| *q == r(1, 1));
            log.check(all_one, "sojourn of [1]@0 along F is 1 at every index", format!("N = {}", s.horizon()));
        }
        Err(e) => log.check(false, "sojourn of [1]@0 along F", e.to_string()),
    }
    for seq in [&f, &h] {
        let ok = (0..=80u64).all(|n| {
            let size = seq.set(n).len() as i64;
            (-5i64..=5).all(|g| defect(seq, g, n) <= r(2 * g.abs(), size))
        });
        log.check(
            ok,
            &format!("defect along {} <= 2|h|/|F_n|", seq.label()),
            format!("defect(h=1, n=80) = {}", rational(&defect(seq, 1, 80))),
        );
    }
    let runs = [200i64, 500, 1000].map(|hz| max_run_in(&mask_with(scan, &support, 0, hz).expect("0 <= hz")));
    log.check(
        runs == [14, 22, 31],
        "visits to [1]@0 are thick",
        format!("max runs on [0, 200], [0, 500], [0, 1000]: {runs:?}"),
    );
    liyorke_evidence(&mut log, "Li-Yorke pair (z, 1^inf)", &z, &constant(1), true);
    liyorke_evidence(&mut log, "(0^inf, 1^inf) is not Li-Yorke", &constant(0), &constant(1), false);
    log.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use orbitdensity_core::scan::Sequential;

    #[test]
    fn example52_passes() {
        let (text, ok) = example52(&Sequential);
        assert!(ok, "{text}");
        assert!(!text.contains("FAIL"));
    }

    #[test]
    fn example53_passes() {
        let (text, ok) = example53(&Sequential);
        assert!(ok, "{text}");
    }
}
