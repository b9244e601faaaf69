//! Exact densities along a Følner sequence.
//!
//! For a sequence `(F_n)`, the upper and lower densities of `A` are the
//! limsup and liminf of `r_n = |A ∩ F_n| / |F_n|`. At a finite horizon `N` a
//! [`DensityReport`] keeps every `r_n` exactly and estimates both limits from
//! the tail window `[ceil((1 - f) N), N]`, where `f` is the headline fraction.

use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::folner::{FolnerSequence, FolnerSet};
use crate::scan::{RangeScan, Sequential};
use crate::setclass::IntegerSet;
use crate::shift::{Cylinder, SymbolicPoint};
use crate::{Error, Rational, Result};

/// Tail envelope row: extremes of `r_n` over `n ∈ [from, N]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Envelope {
    pub from: u64,
    pub upper: Rational,
    pub lower: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensityReport {
    /// `(n, r_n)` for `n = 0..=N`.
    pub ratios: Vec<(u64, Rational)>,
    pub headline_upper: Rational,
    pub headline_lower: Rational,
    /// Inclusive index range the headline values are taken over.
    pub headline_window: (u64, u64),
    /// Rows at `from = floor(j N / 4)`, `j = 0..4`.
    pub envelope: Vec<Envelope>,
    pub folner_label: String,
    pub set_description: String,
}

impl DensityReport {
    /// Builds a report from `(|A ∩ F_n|, |F_n|)` pairs for `n = 0..=N`.
    pub fn from_counts(
        counts: &[(u64, u64)],
        headline_fraction: &Rational,
        folner_label: impl Into<String>,
        set_description: impl Into<String>,
    ) -> Result<Self> {
        check_fraction(headline_fraction)?;
        let horizon = counts.len().checked_sub(1).ok_or(Error::ZeroHorizon)? as u64;
        let ratios: Vec<(u64, Rational)> = counts
            .iter()
            .enumerate()
            .map(|(n, &(c, s))| (n as u64, Rational::new(BigInt::from(c), BigInt::from(s))))
            .collect();
        let start = headline_start(horizon, headline_fraction);
        let (headline_upper, headline_lower) = extremes(&ratios[start as usize..]);
        let envelope = (0..4u64)
            .map(|j| {
                let from = j * horizon / 4;
                let (upper, lower) = extremes(&ratios[from as usize..]);
                Envelope { from, upper, lower }
            })
            .collect();
        Ok(DensityReport {
            ratios,
            headline_upper,
            headline_lower,
            headline_window: (start, horizon),
            envelope,
            folner_label: folner_label.into(),
            set_description: set_description.into(),
        })
    }

    pub fn horizon(&self) -> u64 {
        self.headline_window.1
    }

    /// Indices with `|r_n - headline_upper| <= eps`, increasing.
    ///
    /// Early ratios above the headline are excluded so the indices carry a
    /// subsequence converging to the upper density estimate.
    pub fn achieving_indices(&self, eps: &Rational) -> Vec<u64> {
        let floor = &self.headline_upper - eps;
        let ceiling = &self.headline_upper + eps;
        self.ratios.iter().filter(|(_, r)| *r >= floor && *r <= ceiling).map(|(n, _)| *n).collect()
    }

    /// The common headline value when upper and lower agree.
    pub fn density(&self) -> Option<&Rational> {
        (self.headline_upper == self.headline_lower).then_some(&self.headline_upper)
    }
}

fn extremes(ratios: &[(u64, Rational)]) -> (Rational, Rational) {
    let mut it = ratios.iter().map(|(_, r)| r);
    let first = it.next().cloned().unwrap_or_else(Rational::zero);
    it.fold((first.clone(), first), |(hi, lo), r| {
        (if *r > hi { r.clone() } else { hi }, if *r < lo { r.clone() } else { lo })
    })
}

pub(crate) fn check_fraction(f: &Rational) -> Result<()> {
    if *f > Rational::zero() && *f <= Rational::one() {
        Ok(())
    } else {
        Err(Error::InvalidFraction)
    }
}

/// `ceil((1 - f) N)`.
pub fn headline_start(horizon: u64, fraction: &Rational) -> u64 {
    let start = ((Rational::one() - fraction) * Rational::from_integer(BigInt::from(horizon))).ceil();
    u64::try_from(start.to_integer()).unwrap_or(0).min(horizon)
}

/// The default headline fraction, `1/2`.
pub fn half() -> Rational {
    Rational::new(BigInt::from(1), BigInt::from(2))
}

/// Materialized `F_0 .. F_N` and the scan strategy for them.
pub(crate) struct Plan {
    pub sets: Vec<FolnerSet>,
    /// Scan one contiguous hull instead of each run when the runs cover it densely enough.
    pub hull: Option<(i64, i64)>,
}

/// How `F_n` is reached from `F_{n-1}`.
pub(crate) enum Step {
    /// Start over from the runs of `F_n`.
    Reset,
    /// Add and remove these runs; used when `|F_n Δ F_{n-1}| < |F_n|`.
    Delta { added: Vec<(i64, i64)>, removed: Vec<(i64, i64)> },
}

impl Plan {
    pub fn new(folner: &FolnerSequence, horizon: u64) -> Self {
        let sets: Vec<FolnerSet> = (0..=horizon).map(|n| folner.set(n)).collect();
        let total: u128 = sets.iter().map(|s| u128::from(s.len())).sum();
        let lo = sets.iter().map(FolnerSet::min).min().unwrap_or(0);
        let hi = sets.iter().map(FolnerSet::max).max().unwrap_or(0);
        let span = (i128::from(hi) - i128::from(lo) + 1) as u128;
        let hull = (span <= 2 * total + 4096).then_some((lo, hi));
        Plan { sets, hull }
    }

    pub fn step(&self, n: usize) -> Step {
        if n == 0 {
            return Step::Reset;
        }
        let (prev, cur) = (&self.sets[n - 1], &self.sets[n]);
        if cur.symmetric_difference_len(prev) < cur.len() {
            Step::Delta { added: cur.difference(prev), removed: prev.difference(cur) }
        } else {
            Step::Reset
        }
    }
}

/// `(|A ∩ F_n|, |F_n|)` for `n = 0..=N`.
pub fn counts_along(scan: &dyn RangeScan, set: &IntegerSet, folner: &FolnerSequence, horizon: u64) -> Vec<(u64, u64)> {
    let plan = Plan::new(folner, horizon);
    match plan.hull {
        Some((lo, hi)) => {
            let mask = scan.mask(set, lo, hi);
            let mut prefix = Vec::with_capacity(mask.len() + 1);
            prefix.push(0u64);
            for &b in mask.bits() {
                prefix.push(prefix[prefix.len() - 1] + u64::from(b));
            }
            plan.sets
                .iter()
                .map(|s| {
                    let c =
                        s.runs().iter().map(|&(a, b)| prefix[(b - lo) as usize + 1] - prefix[(a - lo) as usize]).sum();
                    (c, s.len())
                })
                .collect()
        }
        None => plan
            .sets
            .iter()
            .map(|s| {
                let c = s.runs().iter().map(|&(a, b)| scan.mask(set, a, b).count()).sum();
                (c, s.len())
            })
            .collect(),
    }
}

/// `|A ∩ F_n| / |F_n|`.
pub fn count_ratio(set: &IntegerSet, folner: &FolnerSequence, n: u64) -> Rational {
    let f = folner.set(n);
    let hits = f.elements().filter(|&i| set.member(i)).count();
    Rational::new(BigInt::from(hits), BigInt::from(f.len()))
}

pub fn density_report(
    set: &IntegerSet,
    folner: &FolnerSequence,
    horizon: u64,
    headline_fraction: &Rational,
) -> Result<DensityReport> {
    density_report_with(&Sequential, set, folner, horizon, headline_fraction)
}

pub fn density_report_with(
    scan: &dyn RangeScan,
    set: &IntegerSet,
    folner: &FolnerSequence,
    horizon: u64,
    headline_fraction: &Rational,
) -> Result<DensityReport> {
    if horizon == 0 {
        return Err(Error::ZeroHorizon);
    }
    check_fraction(headline_fraction)?;
    let counts = counts_along(scan, set, folner, horizon);
    DensityReport::from_counts(&counts, headline_fraction, folner.label(), alloc::format!("{set}"))
}

/// Indices `n <= N` whose ratio is within `eps` of the headline upper density
/// (headline fraction 1/2): a finite prefix of a subsequence realizing the upper density.
pub fn achieving_subsequence(
    set: &IntegerSet,
    folner: &FolnerSequence,
    horizon: u64,
    eps: &Rational,
) -> Result<Vec<u64>> {
    let report = density_report(set, folner, horizon, &half())?;
    Ok(report.achieving_indices(eps))
}

/// `N(x, U) = {g : shift(x, g) ∈ U}`, evaluated lazily.
pub fn visit_set(x: &SymbolicPoint, cylinder: &Cylinder) -> IntegerSet {
    let label = alloc::format!("visits({}, {})", x.provenance(), cylinder);
    let (x, cylinder) = (x.clone(), cylinder.clone());
    IntegerSet::predicate(label, move |g| cylinder.contains_shifted(&x, g))
}

/// Density report of the union of the visit sets of `region`.
pub fn sojourn(x: &SymbolicPoint, region: &[Cylinder], folner: &FolnerSequence, horizon: u64) -> Result<DensityReport> {
    sojourn_with(&Sequential, x, region, folner, horizon, &half())
}

pub fn sojourn_with(
    scan: &dyn RangeScan,
    x: &SymbolicPoint,
    region: &[Cylinder],
    folner: &FolnerSequence,
    horizon: u64,
    headline_fraction: &Rational,
) -> Result<DensityReport> {
    if region.is_empty() {
        return Err(Error::EmptyRegion);
    }
    let visits = IntegerSet::Union(region.iter().map(|c| visit_set(x, c)).collect());
    density_report_with(scan, &visits, folner, horizon, headline_fraction)
}
