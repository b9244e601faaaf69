//! Følner sequences in `(Z, +)`.
//!
//! A sequence is a pure generator `n -> F_n` of nonempty finite sets. The
//! Følner property is never assumed; [`defect`] measures it.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;

use crate::expr::Expr;
use crate::Rational;

/// A nonempty finite subset of `Z` stored as sorted, disjoint, non-adjacent closed runs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FolnerSet {
    runs: Vec<(i64, i64)>,
}

impl FolnerSet {
    /// `[lo, hi]`, with the ends swapped if given in reverse.
    pub fn interval(lo: i64, hi: i64) -> Self {
        FolnerSet { runs: alloc::vec![(lo.min(hi), lo.max(hi))] }
    }

    /// `None` when `elements` is empty.
    pub fn from_elements(elements: impl IntoIterator<Item = i64>) -> Option<Self> {
        let mut v: Vec<i64> = elements.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        let mut runs: Vec<(i64, i64)> = Vec::new();
        for e in v {
            match runs.last_mut() {
                Some((_, hi)) if *hi + 1 == e => *hi = e,
                _ => runs.push((e, e)),
            }
        }
        (!runs.is_empty()).then_some(FolnerSet { runs })
    }

    pub fn runs(&self) -> &[(i64, i64)] {
        &self.runs
    }

    pub fn len(&self) -> u64 {
        self.runs.iter().map(|(lo, hi)| (hi - lo) as u64 + 1).sum()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn min(&self) -> i64 {
        self.runs[0].0
    }

    pub fn max(&self) -> i64 {
        self.runs[self.runs.len() - 1].1
    }

    pub fn contains(&self, i: i64) -> bool {
        self.runs.iter().any(|&(lo, hi)| lo <= i && i <= hi)
    }

    /// Elements in increasing order.
    pub fn elements(&self) -> impl Iterator<Item = i64> + '_ {
        self.runs.iter().flat_map(|&(lo, hi)| lo..=hi)
    }

    pub fn translate(&self, g: i64) -> Self {
        FolnerSet { runs: self.runs.iter().map(|&(lo, hi)| (lo + g, hi + g)).collect() }
    }

    pub fn intersection_len(&self, other: &FolnerSet) -> u64 {
        let (mut i, mut j, mut total) = (0, 0, 0u64);
        while i < self.runs.len() && j < other.runs.len() {
            let (a0, a1) = self.runs[i];
            let (b0, b1) = other.runs[j];
            let (lo, hi) = (a0.max(b0), a1.min(b1));
            if lo <= hi {
                total += (hi - lo) as u64 + 1;
            }
            if a1 < b1 {
                i += 1;
            } else {
                j += 1;
            }
        }
        total
    }

    /// Runs of `self \ other`.
    pub fn difference(&self, other: &FolnerSet) -> Vec<(i64, i64)> {
        let mut out = Vec::new();
        let mut j = 0;
        for &(lo, hi) in &self.runs {
            while j < other.runs.len() && other.runs[j].1 < lo {
                j += 1;
            }
            let (mut cur, mut k) = (lo, j);
            loop {
                match other.runs.get(k) {
                    Some(&(olo, ohi)) if olo <= hi => {
                        if olo > cur {
                            out.push((cur, olo - 1));
                        }
                        if ohi >= hi {
                            break;
                        }
                        cur = cur.max(ohi + 1);
                        k += 1;
                    }
                    _ => {
                        out.push((cur, hi));
                        break;
                    }
                }
            }
        }
        out
    }

    pub fn symmetric_difference_len(&self, other: &FolnerSet) -> u64 {
        self.len() + other.len() - 2 * self.intersection_len(other)
    }
}

type Generator = Arc<dyn Fn(u64) -> FolnerSet + Send + Sync>;

/// An indexed family `n -> F_n` of nonempty finite subsets of `Z`.
#[derive(Clone)]
pub struct FolnerSequence {
    label: String,
    generator: Generator,
}

impl fmt::Debug for FolnerSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("FolnerSequence").field(&self.label).finish()
    }
}

impl FolnerSequence {
    pub fn from_fn<F>(label: impl Into<String>, generator: F) -> Self
    where
        F: Fn(u64) -> FolnerSet + Send + Sync + 'static,
    {
        FolnerSequence { label: label.into(), generator: Arc::new(generator) }
    }

    /// `F_n = {-n, ..., n}`.
    pub fn standard() -> Self {
        Self::from_fn("standard", |n| {
            let n = n as i64;
            FolnerSet::interval(-n, n)
        })
    }

    /// `F_{2k} = R_k = [a_k, a_k + k]`, `F_{2k+1} = R'_k = -R_k`, with `a_k = k(k+1)`.
    pub fn example53_f() -> Self {
        Self::from_fn("example53_F", |n| interleaved_block(n, |k| k * (k + 1)))
    }

    /// `H_{2k} = G_k = [b_k, b_k + k]`, `H_{2k+1} = G'_k = -G_k`, with `b_k = k(k+2) + 1`.
    pub fn example53_h() -> Self {
        Self::from_fn("example53_H", |n| interleaved_block(n, |k| k * (k + 2) + 1))
    }

    /// `F_n = [start(n), end(n)]` for closed-form endpoints.
    ///
    /// Endpoints are clamped into `i64`; a reversed pair is read as `[end, start]`.
    pub fn interval_family(label: impl Into<String>, start: Expr, end: Expr) -> Self {
        let clamp = |v: BigInt| -> i64 {
            i64::try_from(&v).unwrap_or(if v.sign() == num_bigint::Sign::Minus { i64::MIN } else { i64::MAX })
        };
        Self::from_fn(label, move |n| FolnerSet::interval(clamp(start.eval(n)), clamp(end.eval(n))))
    }

    /// `(F + g)_n = F_n + g`.
    pub fn translate(&self, g: i64) -> Self {
        let base = self.generator.clone();
        Self::from_fn(alloc::format!("translate({}, {g})", self.label), move |n| base(n).translate(g))
    }

    pub fn set(&self, n: u64) -> FolnerSet {
        (self.generator)(n)
    }

    pub fn label(&self) -> &str {
        &self.label
    }
}

fn interleaved_block(n: u64, first: impl Fn(i64) -> i64) -> FolnerSet {
    let k = (n / 2) as i64;
    let a = first(k);
    if n.is_multiple_of(2) {
        FolnerSet::interval(a, a + k)
    } else {
        FolnerSet::interval(-a - k, -a)
    }
}

/// `|(h + F_n) △ F_n| / |F_n|`, exactly.
pub fn defect(folner: &FolnerSequence, h: i64, n: u64) -> Rational {
    let set = folner.set(n);
    let diff = set.translate(h).symmetric_difference_len(&set);
    Rational::new(BigInt::from(diff), BigInt::from(set.len()))
}

/// `[|F_0|, ..., |F_N|]`.
pub fn sizes(folner: &FolnerSequence, horizon: u64) -> Vec<u64> {
    (0..=horizon).map(|n| folner.set(n).len()).collect()
}

/// Largest `|i|` over `i ∈ F_0 ∪ ... ∪ F_N`.
pub fn radius(folner: &FolnerSequence, horizon: u64) -> u64 {
    (0..=horizon)
        .map(|n| {
            let f = folner.set(n);
            f.min().unsigned_abs().max(f.max().unsigned_abs())
        })
        .max()
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(BigInt::from(p), BigInt::from(q))
    }

    fn elems(f: &FolnerSequence, n: u64) -> Vec<i64> {
        f.set(n).elements().collect()
    }

    #[test]
    fn standard_sets() {
        let f = FolnerSequence::standard();
        assert_eq!(elems(&f, 0), [0]);
        assert_eq!(elems(&f, 3), [-3, -2, -1, 0, 1, 2, 3]);
        assert_eq!(f.set(10).len(), 21);
        assert_eq!(sizes(&f, 4), [1, 3, 5, 7, 9]);
    }

    #[test]
    fn interleaved_sets() {
        let f = FolnerSequence::example53_f();
        assert_eq!(elems(&f, 2), [2, 3]);
        assert_eq!(elems(&f, 4), [6, 7, 8]);
        assert_eq!(elems(&f, 3), [-3, -2]);
        // R'_0 = {0} = R_0.
        assert_eq!(elems(&f, 1), [0]);
        let h = FolnerSequence::example53_h();
        assert_eq!(elems(&h, 2), [4, 5]);
        assert_eq!(elems(&h, 1), [-1]);
        assert_eq!(sizes(&f, 5), [1, 1, 2, 2, 3, 3]);
        assert_eq!(radius(&f, 5), 8);
        assert_eq!(radius(&FolnerSequence::standard(), 7), 7);
        for k in 0..40u64 {
            assert_eq!(f.set(2 * k).len(), k + 1);
            assert_eq!(f.set(2 * k + 1).len(), k + 1);
        }
    }

    #[test]
    fn translation() {
        let f = FolnerSequence::standard().translate(5);
        assert_eq!(elems(&f, 3), (2..=8).collect::<Vec<_>>());
        let g = FolnerSequence::example53_f().translate(-2);
        assert_eq!(elems(&g, 2), [0, 1]);
        let same = FolnerSequence::example53_h().translate(0);
        assert!((0..30).all(|n| same.set(n) == FolnerSequence::example53_h().set(n)));
    }

    #[test]
    fn defects() {
        let std = FolnerSequence::standard();
        assert_eq!(defect(&std, 2, 5), r(4, 11));
        assert_eq!(defect(&FolnerSequence::example53_f(), 3, 20), r(6, 11));
        assert_eq!(defect(&FolnerSequence::example53_h(), 0, 17), r(0, 1));
        // Shifting a block past itself saturates at 2.
        assert_eq!(defect(&std, 7, 1), r(2, 1));
    }

    #[test]
    fn runs_from_elements() {
        let s = FolnerSet::from_elements([5, 1, 2, 3, 7, 6, 10]).unwrap();
        assert_eq!(s.runs(), [(1, 3), (5, 7), (10, 10)]);
        assert_eq!(s.len(), 7);
        assert!(FolnerSet::from_elements([]).is_none());
        let t = s.translate(1);
        assert_eq!(s.symmetric_difference_len(&t), 6);
        assert_eq!(s.difference(&t), [(1, 1), (5, 5), (10, 10)]);
        assert_eq!(t.difference(&s), [(4, 4), (8, 8), (11, 11)]);
        let wide = FolnerSet::interval(-5, 20);
        assert_eq!(wide.difference(&s), [(-5, 0), (4, 4), (8, 9), (11, 20)]);
        assert!(s.difference(&wide).is_empty());
        assert_eq!(s.difference(&FolnerSet::interval(100, 200)), s.runs());
    }

    #[test]
    fn closed_form_family() {
        let f = FolnerSequence::interval_family(
            "squares",
            Expr::Index.mul(Expr::Index),
            Expr::Index.mul(Expr::Index).add(Expr::Index),
        );
        assert_eq!(elems(&f, 3), [9, 10, 11, 12]);
    }
}
