//! Decidable subsets of `Z` and finite-horizon combinatorial classifiers.
//!
//! Syndeticity, thickness and their relatives are tail properties. The
//! classifiers here only report evidence on a window `[lo, hi]`: gap bounds,
//! run lengths and explicit witness intervals.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::expr::Expr;
use crate::scan::{RangeMask, RangeScan, Sequential};
use crate::{Error, Result};

/// Number of consecutive family indices checked for monotonicity on construction.
pub const FAMILY_PROBE: u64 = 64;

/// `⋃_{n >= from} [start(n), end(n)]` with strictly increasing, disjoint intervals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalFamily {
    from: u64,
    start: Expr,
    end: Expr,
}

impl IntervalFamily {
    /// Checks `start(n) <= end(n) < start(n+1)` for the first [`FAMILY_PROBE`] indices.
    /// Membership assumes the pattern continues beyond them.
    pub fn new(from: u64, start: Expr, end: Expr) -> Result<Self> {
        for n in from..from.saturating_add(FAMILY_PROBE) {
            let (s, e, next) = (start.eval(n), end.eval(n), start.eval(n + 1));
            if s > e {
                return Err(Error::InvalidFamily(alloc::format!("start({n}) = {s} exceeds end({n}) = {e}")));
            }
            if next <= e {
                return Err(Error::InvalidFamily(alloc::format!(
                    "start({}) = {next} does not pass end({n}) = {e}",
                    n + 1
                )));
            }
        }
        Ok(IntervalFamily { from, start, end })
    }

    pub fn from_index(&self) -> u64 {
        self.from
    }

    pub fn start(&self) -> &Expr {
        &self.start
    }

    pub fn end(&self) -> &Expr {
        &self.end
    }

    /// The index of the interval holding `i`, if any.
    pub fn locate(&self, i: i64) -> Option<u64> {
        let starts_after = |n: u64| self.start.cmp_at(n, i) == Ordering::Greater;
        if starts_after(self.from) {
            return None;
        }
        // Gallop for an index whose interval starts after i, then bisect.
        let mut lo = self.from;
        let mut step: u64 = 1;
        let mut hi = loop {
            let probe = lo.saturating_add(step);
            if probe == lo {
                return None;
            }
            if starts_after(probe) {
                break probe;
            }
            lo = probe;
            step = step.saturating_mul(2);
        };
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if starts_after(mid) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        (self.end.cmp_at(lo, i) != Ordering::Less).then_some(lo)
    }
}

/// A named membership predicate.
#[derive(Clone)]
pub struct Predicate {
    label: String,
    test: Arc<dyn Fn(i64) -> bool + Send + Sync>,
}

impl Predicate {
    pub fn new<F>(label: impl Into<String>, test: F) -> Self
    where
        F: Fn(i64) -> bool + Send + Sync + 'static,
    {
        Predicate { label: label.into(), test: Arc::new(test) }
    }

    pub fn label(&self) -> &str {
        &self.label
    }
}

impl fmt::Debug for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Predicate").field(&self.label).finish()
    }
}

/// Expression tree for a decidable subset of `Z`.
#[derive(Clone, Debug)]
pub enum IntegerSet {
    /// Sorted, deduplicated.
    Finite(Vec<i64>),
    /// `{i : i ≡ residue (mod modulus)}`, `residue < modulus`.
    Progression {
        modulus: u64,
        residue: u64,
    },
    /// Closed interval; `None` ends are unbounded.
    Interval {
        lo: Option<i64>,
        hi: Option<i64>,
    },
    Family(IntervalFamily),
    Union(Vec<IntegerSet>),
    Intersection(Vec<IntegerSet>),
    Complement(Box<IntegerSet>),
    /// `S + g`.
    Translate(Box<IntegerSet>, i64),
    /// `-S`.
    Negate(Box<IntegerSet>),
    Predicate(Predicate),
}

impl IntegerSet {
    pub fn finite(elements: impl IntoIterator<Item = i64>) -> Self {
        let mut v: Vec<i64> = elements.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        IntegerSet::Finite(v)
    }

    pub fn empty() -> Self {
        IntegerSet::Finite(Vec::new())
    }

    pub fn all() -> Self {
        IntegerSet::Interval { lo: None, hi: None }
    }

    /// `{0, 1, 2, ...}`.
    pub fn naturals() -> Self {
        IntegerSet::Interval { lo: Some(0), hi: None }
    }

    /// `{1, 2, 3, ...}`.
    pub fn positives() -> Self {
        IntegerSet::Interval { lo: Some(1), hi: None }
    }

    pub fn interval(lo: Option<i64>, hi: Option<i64>) -> Self {
        IntegerSet::Interval { lo, hi }
    }

    /// `m Z + r`; the residue is reduced mod `m`.
    pub fn progression(modulus: u64, residue: i64) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::ZeroModulus);
        }
        let residue = i128::from(residue).rem_euclid(i128::from(modulus)) as u64;
        Ok(IntegerSet::Progression { modulus, residue })
    }

    pub fn family(family: IntervalFamily) -> Self {
        IntegerSet::Family(family)
    }

    pub fn predicate<F>(label: impl Into<String>, test: F) -> Self
    where
        F: Fn(i64) -> bool + Send + Sync + 'static,
    {
        IntegerSet::Predicate(Predicate::new(label, test))
    }

    pub fn union(self, other: IntegerSet) -> Self {
        IntegerSet::Union(alloc::vec![self, other])
    }

    pub fn intersect(self, other: IntegerSet) -> Self {
        IntegerSet::Intersection(alloc::vec![self, other])
    }

    pub fn complement(self) -> Self {
        IntegerSet::Complement(Box::new(self))
    }

    pub fn translate(self, g: i64) -> Self {
        IntegerSet::Translate(Box::new(self), g)
    }

    pub fn negate(self) -> Self {
        IntegerSet::Negate(Box::new(self))
    }

    /// `S ∪ (-S)`.
    pub fn symmetrize(self) -> Self {
        let mirrored = self.clone().negate();
        self.union(mirrored)
    }

    pub fn member(&self, i: i64) -> bool {
        match self {
            IntegerSet::Finite(v) => v.binary_search(&i).is_ok(),
            IntegerSet::Progression { modulus, residue } => {
                i128::from(i).rem_euclid(i128::from(*modulus)) as u64 == *residue
            }
            IntegerSet::Interval { lo, hi } => lo.is_none_or(|lo| i >= lo) && hi.is_none_or(|hi| i <= hi),
            IntegerSet::Family(f) => f.locate(i).is_some(),
            IntegerSet::Union(parts) => parts.iter().any(|s| s.member(i)),
            IntegerSet::Intersection(parts) => parts.iter().all(|s| s.member(i)),
            IntegerSet::Complement(s) => !s.member(i),
            IntegerSet::Translate(s, g) => i.checked_sub(*g).is_some_and(|j| s.member(j)),
            IntegerSet::Negate(s) => i.checked_neg().is_some_and(|j| s.member(j)),
            IntegerSet::Predicate(p) => (p.test)(i),
        }
    }
}

impl fmt::Display for IntegerSet {
    /// Canonical textual rendering used in reports.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn list(f: &mut fmt::Formatter<'_>, name: &str, parts: &[IntegerSet]) -> fmt::Result {
            write!(f, "{name}(")?;
            for (n, p) in parts.iter().enumerate() {
                if n > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{p}")?;
            }
            f.write_str(")")
        }
        match self {
            IntegerSet::Finite(v) => {
                f.write_str("{")?;
                for (n, e) in v.iter().enumerate() {
                    if n > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{e}")?;
                }
                f.write_str("}")
            }
            IntegerSet::Progression { modulus, residue } => write!(f, "{modulus}Z+{residue}"),
            IntegerSet::Interval { lo, hi } => {
                match lo {
                    Some(lo) => write!(f, "[{lo}, ")?,
                    None => f.write_str("(-inf, ")?,
                }
                match hi {
                    Some(hi) => write!(f, "{hi}]"),
                    None => f.write_str("+inf)"),
                }
            }
            IntegerSet::Family(fam) => {
                write!(f, "family(n>={}: [{}, {}])", fam.from, fam.start, fam.end)
            }
            IntegerSet::Union(parts) => list(f, "union", parts),
            IntegerSet::Intersection(parts) => list(f, "intersection", parts),
            IntegerSet::Complement(s) => write!(f, "complement({s})"),
            IntegerSet::Translate(s, g) => write!(f, "translate({s}, {g})"),
            IntegerSet::Negate(s) => write!(f, "negate({s})"),
            IntegerSet::Predicate(p) => f.write_str(&p.label),
        }
    }
}

/// The three sets of the triple-intersection construction, on the positive integers:
///
/// - `A = ⋃ A_n ∪ 10N`, `A_n = [10^n, 10^n + 10n - 1]`
/// - `B = ⋃ B_n ∪ (10N - 1)`, `B_n = [10^n + 10n, 10^n + 11n - 1]`
/// - `C = ⋃ C_n ∪ (10N - 2)`, `C_n = [10^n + 11n, 10^(n+1) - 1]`
///
/// Each is syndetic (gaps at most 10) and thick, yet `A ∩ B ∩ C = ∅`.
/// `B_n` is taken as a contiguous block so that `B` contains runs of length `n`.
pub fn example52_sets() -> (IntegerSet, IntegerSet, IntegerSet) {
    let n = || Expr::Index;
    let c = |v: i64| Expr::constant(v);
    let ten_n = || Expr::pow(10);
    let family =
        |start: Expr, end: Expr| IntegerSet::family(IntervalFamily::new(1, start, end).expect("monotone family"));
    let tail = |residue: i64| {
        IntegerSet::progression(10, residue).expect("nonzero modulus").intersect(IntegerSet::positives())
    };

    let a = family(ten_n(), ten_n().add(c(10).mul(n())).sub(c(1))).union(tail(0));
    let b = family(ten_n().add(c(10).mul(n())), ten_n().add(c(11).mul(n())).sub(c(1))).union(tail(-1));
    let cc = family(ten_n().add(c(11).mul(n())), c(10).mul(ten_n()).sub(c(1))).union(tail(-2));
    (a, b, cc)
}

/// `⋃_n F_n` for the interleaved blocks `R_k = [k(k+1), k(k+1)+k]` and their mirrors.
/// Membership inverts `a_k = k(k+1)` with an integer square root.
pub fn example53_support() -> IntegerSet {
    IntegerSet::predicate("example53_support", example53_member)
}

fn example53_member(i: i64) -> bool {
    let m = i.unsigned_abs();
    // Largest k with k(k+1) <= m: k = floor((sqrt(4m+1) - 1) / 2).
    let k = (num_integer::Roots::sqrt(&(4 * u128::from(m) + 1)) - 1) / 2;
    m as u128 <= k * (k + 1) + k
}

fn check_range(lo: i64, hi: i64) -> Result<()> {
    if lo > hi {
        Err(Error::InvalidRange { lo, hi })
    } else {
        Ok(())
    }
}

/// Largest difference between consecutive elements of `S ∩ [lo, hi]`;
/// `None` when there are fewer than two elements.
pub fn max_gap(set: &IntegerSet, lo: i64, hi: i64) -> Result<Option<u64>> {
    check_range(lo, hi)?;
    Ok(max_gap_in(&Sequential.mask(set, lo, hi)))
}

pub fn max_gap_in(mask: &RangeMask) -> Option<u64> {
    let mut prev: Option<i64> = None;
    let mut best: Option<u64> = None;
    for i in mask.members() {
        if let Some(p) = prev {
            let gap = (i - p) as u64;
            best = Some(best.map_or(gap, |b| b.max(gap)));
        }
        prev = Some(i);
    }
    best
}

/// Length of the longest block of consecutive integers inside `S ∩ [lo, hi]`.
pub fn max_run(set: &IntegerSet, lo: i64, hi: i64) -> Result<u64> {
    check_range(lo, hi)?;
    Ok(max_run_in(&Sequential.mask(set, lo, hi)))
}

pub fn max_run_in(mask: &RangeMask) -> u64 {
    let (mut best, mut cur) = (0u64, 0u64);
    for &b in mask.bits() {
        cur = if b { cur + 1 } else { 0 };
        best = best.max(cur);
    }
    best
}

/// A closed interval `[start, end]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Span {
    pub start: i64,
    pub end: i64,
}

/// First interval `[t, t+L-1] ⊆ [lo, hi]` on which every subinterval of length
/// `min(b, L)` meets `S`, i.e. the gaps of `S` there are at most `b`.
pub fn pw_syndetic_witness(set: &IntegerSet, gap: u64, len: u64, lo: i64, hi: i64) -> Result<Option<Span>> {
    check_range(lo, hi)?;
    if gap == 0 || len == 0 {
        return Err(Error::ZeroLength);
    }
    Ok(pw_syndetic_witness_in(&Sequential.mask(set, lo, hi), gap, len))
}

pub fn pw_syndetic_witness_in(mask: &RangeMask, gap: u64, len: u64) -> Option<Span> {
    let bits = mask.bits();
    let total = bits.len() as u64;
    if len > total || gap == 0 || len == 0 {
        return None;
    }
    let hole = gap.min(len) as usize;
    let len = len as usize;
    // bad[j]: the hole-length block starting at j misses S entirely.
    let mut bad_prefix = Vec::with_capacity(bits.len() + 1);
    bad_prefix.push(0u32);
    let mut empty_run = 0usize;
    let mut bad_at = alloc::vec![false; bits.len()];
    for (j, &b) in bits.iter().enumerate() {
        empty_run = if b { 0 } else { empty_run + 1 };
        if empty_run >= hole {
            bad_at[j + 1 - hole] = true;
        }
    }
    for &b in &bad_at {
        bad_prefix.push(bad_prefix.last().copied().unwrap_or(0) + u32::from(b));
    }
    (0..=bits.len() - len)
        .find(|&t| bad_prefix[t + len - hole + 1] == bad_prefix[t])
        .map(|t| Span { start: mask.lo() + t as i64, end: mask.lo() + (t + len) as i64 - 1 })
}

/// Largest difference between consecutive starts of length-`L` runs of `S`
/// inside `[lo, hi]`; `None` with fewer than two such starts.
pub fn thickly_syndetic_gaps(set: &IntegerSet, len: u64, lo: i64, hi: i64) -> Result<Option<u64>> {
    check_range(lo, hi)?;
    if len == 0 {
        return Err(Error::ZeroLength);
    }
    Ok(thickly_syndetic_gaps_in(&Sequential.mask(set, lo, hi), len))
}

pub fn thickly_syndetic_gaps_in(mask: &RangeMask, len: u64) -> Option<u64> {
    let mut run = 0u64;
    let mut prev: Option<i64> = None;
    let mut best: Option<u64> = None;
    for (off, &b) in mask.bits().iter().enumerate() {
        run = if b { run + 1 } else { 0 };
        if run >= len {
            let start = mask.lo() + off as i64 + 1 - len as i64;
            if let Some(p) = prev {
                let gap = (start - p) as u64;
                best = Some(best.map_or(gap, |g| g.max(gap)));
            }
            prev = Some(start);
        }
    }
    best
}

/// Scans `[lo, hi]` with an explicit scanner.
pub fn mask_with(scan: &dyn RangeScan, set: &IntegerSet, lo: i64, hi: i64) -> Result<RangeMask> {
    check_range(lo, hi)?;
    Ok(scan.mask(set, lo, hi))
}
