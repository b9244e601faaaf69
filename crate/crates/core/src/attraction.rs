//! Cylinder covers of the minimal center of attraction.
//!
//! A point `y` belongs to the minimal center of attraction of `x` along `F`
//! exactly when every neighborhood of `y` is visited by the orbit of `x` with
//! positive upper density. The radius-`2^-k` neighborhoods are the centered
//! cylinders of words of length `2k+1`, so at resolution `k` the center is
//! approximated by the words whose visit sets have headline upper density
//! above a tolerance.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::density::{check_fraction, half, headline_start, DensityReport, Plan, Step};
use crate::folner::FolnerSequence;
use crate::scan::{rolling_codes, RangeScan, Sequential};
use crate::shift::{Alphabet, SymbolicPoint, Word};
use crate::{Error, Rational, Result};

/// Largest `k` for which every binary word of length `2k+1` is tabulated.
pub const FULL_TABULATION_MAX_K: u32 = 7;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverConfig {
    /// `k`: words have length `2k+1`.
    pub resolution: u32,
    pub horizon: u64,
    pub tol: Rational,
    pub headline_fraction: Rational,
}

impl CoverConfig {
    pub fn new(resolution: u32, horizon: u64, tol: Rational) -> Self {
        CoverConfig { resolution, horizon, tol, headline_fraction: half() }
    }

    pub fn word_len(&self) -> usize {
        2 * self.resolution as usize + 1
    }

    fn validate(&self, alphabet: Alphabet) -> Result<()> {
        if self.horizon == 0 {
            return Err(Error::ZeroHorizon);
        }
        if self.tol <= Rational::zero() || self.tol >= Rational::one() {
            return Err(Error::InvalidTolerance);
        }
        check_fraction(&self.headline_fraction)?;
        if alphabet.word_count(self.word_len()).is_none() {
            return Err(Error::WindowTooWide { alphabet: alphabet.size(), len: self.word_len() });
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverEntry {
    pub word: Word,
    pub upper: Rational,
    pub lower: Rational,
}

/// Kept words at one resolution with their headline densities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoACover {
    pub resolution: u32,
    pub tol: Rational,
    pub horizon: u64,
    pub headline_fraction: Rational,
    /// Sorted by word.
    pub kept: Vec<CoverEntry>,
    /// Sojourn of the union of the kept cylinders.
    pub union_sojourn: DensityReport,
    /// Words whose densities were computed: all `2^(2k+1)` binary words for
    /// `k <= 7`, otherwise the words actually visited.
    pub tabulated_words: u64,
    pub point: String,
    pub folner: String,
}

impl CoACover {
    pub fn kept_words(&self) -> BTreeSet<Word> {
        self.kept.iter().map(|e| e.word.clone()).collect()
    }

    pub fn keeps(&self, word: &Word) -> bool {
        self.kept.iter().any(|e| &e.word == word)
    }
}

#[derive(Clone, Copy)]
struct Frac {
    num: u64,
    den: u64,
}

impl Frac {
    fn gt(self, other: Frac) -> bool {
        u128::from(self.num) * u128::from(other.den) > u128::from(other.num) * u128::from(self.den)
    }

    fn to_rational(self) -> Rational {
        Rational::new(BigInt::from(self.num), BigInt::from(self.den))
    }
}

struct WordStat {
    code: u64,
    upper: Frac,
    lower: Option<Frac>,
    present: u64,
}

/// Dense ids for window codes: a table when the code space is small, a map otherwise.
enum Ids {
    Table(Vec<u32>),
    Map(BTreeMap<u64, u32>),
}

impl Ids {
    const DENSE_LIMIT: u64 = 1 << 20;
    const NONE: u32 = u32::MAX;

    fn new(code_space: u64) -> Self {
        if code_space <= Self::DENSE_LIMIT {
            Ids::Table(alloc::vec![Self::NONE; code_space as usize])
        } else {
            Ids::Map(BTreeMap::new())
        }
    }

    fn get(&self, code: u64) -> Option<usize> {
        match self {
            Ids::Table(t) => t.get(code as usize).filter(|&&id| id != Self::NONE).map(|&id| id as usize),
            Ids::Map(m) => m.get(&code).map(|&id| id as usize),
        }
    }

    fn get_or_insert(&mut self, code: u64, next: usize) -> usize {
        let slot = match self {
            Ids::Table(t) => &mut t[code as usize],
            Ids::Map(m) => m.entry(code).or_insert(Self::NONE),
        };
        if *slot == Self::NONE {
            *slot = next as u32;
        }
        *slot as usize
    }
}

/// Walks `F_0 .. F_N`, handing each index the window codes entering and leaving `F_n`.
struct CodeWalk<'a> {
    scan: &'a dyn RangeScan,
    x: &'a SymbolicPoint,
    plan: Plan,
    hull_codes: Vec<u64>,
    resolution: u32,
}

/// Window codes entering and leaving the current `F_n`.
struct Change {
    reset: bool,
    added: Vec<u64>,
    removed: Vec<u64>,
}

impl<'a> CodeWalk<'a> {
    fn new(scan: &'a dyn RangeScan, x: &'a SymbolicPoint, folner: &FolnerSequence, horizon: u64, k: u32) -> Self {
        let plan = Plan::new(folner, horizon);
        let len = 2 * k as usize + 1;
        let hull_codes = match plan.hull {
            Some((lo, hi)) => scan.window_codes(x, -i64::from(k), len, lo, hi),
            None => Vec::new(),
        };
        CodeWalk { scan, x, plan, hull_codes, resolution: k }
    }

    fn codes(&self, runs: &[(i64, i64)], out: &mut Vec<u64>) {
        out.clear();
        for &(a, b) in runs {
            match self.plan.hull {
                Some((lo, _)) => out.extend_from_slice(&self.hull_codes[(a - lo) as usize..=(b - lo) as usize]),
                None => {
                    let k = self.resolution;
                    out.extend(self.scan.window_codes(self.x, -i64::from(k), 2 * k as usize + 1, a, b));
                }
            }
        }
    }

    fn for_each(&self, mut visit: impl FnMut(u64, u64, &Change)) {
        let mut change = Change { reset: true, added: Vec::new(), removed: Vec::new() };
        for (n, set) in self.plan.sets.iter().enumerate() {
            match self.plan.step(n) {
                Step::Reset => {
                    change.reset = true;
                    self.codes(set.runs(), &mut change.added);
                    change.removed.clear();
                }
                Step::Delta { added, removed } => {
                    change.reset = false;
                    self.codes(&added, &mut change.added);
                    self.codes(&removed, &mut change.removed);
                }
            }
            visit(n as u64, set.len(), &change);
        }
    }
}

pub fn coa_cover(x: &SymbolicPoint, folner: &FolnerSequence, config: &CoverConfig) -> Result<CoACover> {
    coa_cover_with(&Sequential, x, folner, config)
}

/// Computes the density of every visited centered cylinder of length `2k+1`
/// and keeps the words with headline upper density above `tol`.
pub fn coa_cover_with(
    scan: &dyn RangeScan,
    x: &SymbolicPoint,
    folner: &FolnerSequence,
    config: &CoverConfig,
) -> Result<CoACover> {
    let alphabet = x.alphabet();
    config.validate(alphabet)?;
    let code_space = alphabet
        .word_count(config.word_len())
        .ok_or(Error::WindowTooWide { alphabet: alphabet.size(), len: config.word_len() })?;
    let horizon = config.horizon;
    let start = headline_start(horizon, &config.headline_fraction);
    let window_len = horizon - start + 1;
    let walk = CodeWalk::new(scan, x, folner, horizon, config.resolution);

    let mut ids = Ids::new(code_space);
    let mut stats: Vec<WordStat> = Vec::new();
    let mut counts: Vec<u64> = Vec::new();
    // Ids with a nonzero count; `listed` marks membership.
    let mut active: Vec<usize> = Vec::new();
    let mut listed: Vec<bool> = Vec::new();
    walk.for_each(|n, size, change| {
        if change.reset {
            for &id in &active {
                counts[id] = 0;
                listed[id] = false;
            }
            active.clear();
        }
        for &code in &change.removed {
            let id = ids.get(code).expect("removed windows were added earlier");
            counts[id] -= 1;
        }
        for &code in &change.added {
            let id = ids.get_or_insert(code, stats.len());
            if id == stats.len() {
                stats.push(WordStat { code, upper: Frac { num: 0, den: 1 }, lower: None, present: 0 });
                counts.push(0);
                listed.push(false);
            }
            counts[id] += 1;
            if !listed[id] {
                listed[id] = true;
                active.push(id);
            }
        }
        active.retain(|&id| {
            let keep = counts[id] > 0;
            listed[id] = keep;
            keep
        });
        if n >= start {
            for &id in &active {
                let r = Frac { num: counts[id], den: size };
                let s = &mut stats[id];
                if r.gt(s.upper) {
                    s.upper = r;
                }
                if s.lower.is_none_or(|lo| lo.gt(r)) {
                    s.lower = Some(r);
                }
                s.present += 1;
            }
        }
    });

    let mut kept_codes = BTreeSet::new();
    let mut kept = Vec::new();
    for s in &stats {
        let upper = s.upper.to_rational();
        if upper > config.tol {
            let lower = match s.lower {
                Some(lo) if s.present == window_len => lo.to_rational(),
                _ => Rational::zero(),
            };
            kept_codes.insert(s.code);
            kept.push(CoverEntry { word: Word::from_code(s.code, config.word_len(), alphabet), upper, lower });
        }
    }
    kept.sort_by(|a, b| a.word.cmp(&b.word));

    let mut union_counts = Vec::with_capacity(horizon as usize + 1);
    let mut inside = 0u64;
    walk.for_each(|_, size, change| {
        let hits = |codes: &[u64]| codes.iter().filter(|code| kept_codes.contains(code)).count() as u64;
        if change.reset {
            inside = 0;
        }
        inside = inside + hits(&change.added) - hits(&change.removed);
        union_counts.push((inside, size));
    });
    let words: Vec<String> = kept.iter().map(|e| alloc::format!("[{}]@-{}", e.word, config.resolution)).collect();
    let union_sojourn = DensityReport::from_counts(
        &union_counts,
        &config.headline_fraction,
        folner.label(),
        alloc::format!("visits({}, union{{{}}})", x.provenance(), words.join(", ")),
    )?;

    let tabulated_words = if alphabet == Alphabet::BINARY && config.resolution <= FULL_TABULATION_MAX_K {
        1u64 << config.word_len()
    } else {
        stats.len() as u64
    };
    Ok(CoACover {
        resolution: config.resolution,
        tol: config.tol.clone(),
        horizon,
        headline_fraction: config.headline_fraction.clone(),
        kept,
        union_sojourn,
        tabulated_words,
        point: alloc::format!("{}", x.provenance()),
        folner: folner.label().into(),
    })
}

/// Kept words with no occurrence at `g ∈ [-N, N]` whose shift-by-one window is also kept.
///
/// A cover of an invariant set is closed under the follower relation; each
/// returned word is a violation.
pub fn cover_shift_consistent(cover: &CoACover, x: &SymbolicPoint, horizon: u64) -> Vec<Word> {
    let k = i64::from(cover.resolution);
    let len = 2 * cover.resolution as usize + 1;
    let h = horizon.min(i64::MAX as u64 / 2) as i64;
    let alphabet = x.alphabet();
    let kept: BTreeSet<u64> = cover.kept.iter().map(|e| e.word.code(alphabet)).collect();
    let codes = rolling_codes(x, -k, len, -h, h + 1);
    let mut followed = BTreeSet::new();
    for pair in codes.windows(2) {
        if kept.contains(&pair[0]) && kept.contains(&pair[1]) {
            followed.insert(pair[0]);
        }
    }
    cover.kept.iter().filter(|e| !followed.contains(&e.word.code(alphabet))).map(|e| e.word.clone()).collect()
}

/// Whether every kept word occurs as a centered window of `x` at some `|g| <= radius`.
///
/// Pass [`crate::folner::radius`] to cover every position the cover scanned.
pub fn cover_in_orbit(cover: &CoACover, x: &SymbolicPoint, radius: u64) -> bool {
    let k = i64::from(cover.resolution);
    let len = 2 * cover.resolution as usize + 1;
    let h = radius.min(i64::MAX as u64 / 2) as i64;
    let seen: BTreeSet<u64> = rolling_codes(x, -k, len, -h, h).into_iter().collect();
    cover.kept.iter().all(|e| e.word.len() == len && seen.contains(&e.word.code(x.alphabet())))
}

/// Necessary condition at resolution `k` for `x` to lie in its own center:
/// the central word of `x` is kept.
pub fn s_generic_probe(x: &SymbolicPoint, folner: &FolnerSequence, config: &CoverConfig) -> Result<bool> {
    let cover = coa_cover(x, folner, config)?;
    Ok(cover.keeps(&x.central_word(config.resolution)))
}

pub fn covers_equal(a: &CoACover, b: &CoACover) -> Result<bool> {
    if a.resolution != b.resolution {
        return Err(Error::ResolutionMismatch { left: a.resolution, right: b.resolution });
    }
    Ok(a.kept_words() == b.kept_words())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setclass::example53_support;

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(BigInt::from(p), BigInt::from(q))
    }

    fn words(list: &[&str]) -> BTreeSet<Word> {
        list.iter().map(|s| Word::parse(s).unwrap()).collect()
    }

    fn alt() -> SymbolicPoint {
        SymbolicPoint::periodic(Alphabet::BINARY, &Word::parse("01").unwrap(), 0).unwrap()
    }

    fn z() -> SymbolicPoint {
        SymbolicPoint::indicator(example53_support())
    }

    #[test]
    fn periodic_cover() {
        let c = coa_cover(&alt(), &FolnerSequence::standard(), &CoverConfig::new(1, 100, r(3, 10))).unwrap();
        assert_eq!(c.kept_words(), words(&["010", "101"]));
        for e in &c.kept {
            assert!((&e.upper - r(1, 2)) <= r(1, 100) && (r(1, 2) - &e.lower) <= r(1, 100));
        }
        assert_eq!(c.union_sojourn.headline_lower, r(1, 1));
        assert_eq!(c.tabulated_words, 8);
        assert!(cover_shift_consistent(&c, &alt(), 100).is_empty());
        assert!(cover_in_orbit(&c, &alt(), 100));
    }

    #[test]
    fn interleaved_covers() {
        let cfg = CoverConfig::new(1, 60, r(3, 10));
        let f = coa_cover(&z(), &FolnerSequence::example53_f(), &cfg).unwrap();
        let h = coa_cover(&z(), &FolnerSequence::example53_h(), &cfg).unwrap();
        assert_eq!(f.kept_words(), words(&["111"]));
        assert_eq!(h.kept_words(), words(&["000"]));
        // Brute-force headline pair.
        assert_eq!((f.kept[0].upper.clone(), f.kept[0].lower.clone()), (r(29, 31), r(7, 8)));
        assert!(!covers_equal(&f, &h).unwrap());
        assert!(covers_equal(&f, &f).unwrap());
        assert!(cover_in_orbit(&f, &z(), 60));
    }

    #[test]
    fn follower_closure() {
        let mut c = coa_cover(&alt(), &FolnerSequence::standard(), &CoverConfig::new(1, 50, r(3, 10))).unwrap();
        c.kept.retain(|e| e.word != Word::parse("101").unwrap());
        assert_eq!(cover_shift_consistent(&c, &alt(), 50), [Word::parse("010").unwrap()]);
    }

    #[test]
    fn injected_word_is_not_in_orbit() {
        let mut c = coa_cover(&alt(), &FolnerSequence::standard(), &CoverConfig::new(1, 50, r(3, 10))).unwrap();
        c.kept.push(CoverEntry { word: Word::parse("000").unwrap(), upper: r(1, 2), lower: r(0, 1) });
        assert!(!cover_in_orbit(&c, &alt(), 50));
    }

    #[test]
    fn generic_probes() {
        assert!(s_generic_probe(&alt(), &FolnerSequence::standard(), &CoverConfig::new(1, 100, r(3, 10))).unwrap());
        // The central word of z is 010, while its cover along F keeps only 111.
        assert_eq!(z().central_word(1), Word::parse("010").unwrap());
        assert!(!s_generic_probe(&z(), &FolnerSequence::example53_f(), &CoverConfig::new(1, 60, r(3, 10))).unwrap());
        assert!(!s_generic_probe(
            &SymbolicPoint::example51(),
            &FolnerSequence::standard(),
            &CoverConfig::new(1, 720, r(1, 10))
        )
        .unwrap());
    }

    #[test]
    fn config_validation() {
        let f = FolnerSequence::standard();
        for tol in [r(0, 1), r(1, 1), r(-1, 2)] {
            assert_eq!(coa_cover(&alt(), &f, &CoverConfig::new(1, 10, tol)).unwrap_err(), Error::InvalidTolerance);
        }
        assert_eq!(coa_cover(&alt(), &f, &CoverConfig::new(1, 0, r(1, 2))).unwrap_err(), Error::ZeroHorizon);
        assert!(matches!(
            coa_cover(&alt(), &f, &CoverConfig::new(40, 10, r(1, 2))).unwrap_err(),
            Error::WindowTooWide { .. }
        ));
        let a = coa_cover(&alt(), &f, &CoverConfig::new(1, 10, r(1, 4))).unwrap();
        let b = coa_cover(&alt(), &f, &CoverConfig::new(2, 10, r(1, 4))).unwrap();
        assert_eq!(covers_equal(&a, &b).unwrap_err(), Error::ResolutionMismatch { left: 1, right: 2 });
    }
}
