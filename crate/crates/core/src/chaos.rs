//! Finite-horizon witnesses for proximality, asymptoticity, Li-Yorke and
//! F-chaotic pairs, sensitivity, almost periodicity, topological ergodicity
//! and tuple sensitivity.
//!
//! Every scan over `g` visits `0, 1, -1, 2, -2, ...` and keeps the first
//! witness it meets, so ties go to the smaller `|g|` and then to positive `g`.
//! Limits are never asserted: "lim > 0" clauses are reported as a certified
//! lower bound over the realized witnesses.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::scan::rolling_codes;
use crate::scan::RangeMask;
use crate::setclass::max_gap_in;
use crate::shift::{metric_shifted, Cylinder, Dyadic, MetricValue, Symbol, SymbolicPoint, Word};
use crate::{Error, Result};

/// Most targets accepted by [`tuple_sensitivity_witness`].
pub const MAX_TARGETS: usize = 5;

/// `0, 1, -1, 2, -2, ..., h, -h`.
fn scan_order(horizon: u64) -> impl Iterator<Item = i64> {
    let h = horizon.min(i64::MAX as u64) as i64;
    core::iter::once(0).chain((1..=h).flat_map(|g| [g, -g]))
}

fn check_alphabets(x: &SymbolicPoint, y: &SymbolicPoint) -> Result<()> {
    if x.alphabet() != y.alphabet() {
        return Err(Error::AlphabetMismatch { left: x.alphabet().size(), right: y.alphabet().size() });
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProximalSearch {
    pub min: MetricValue,
    /// Strict improvements in scan order; values strictly decreasing.
    pub witnesses: Vec<(i64, MetricValue)>,
}

/// Smallest certified `d(g x, g y)` over `|g| <= horizon`.
pub fn proximal_search(x: &SymbolicPoint, y: &SymbolicPoint, horizon: u64, resolution: u32) -> Result<ProximalSearch> {
    check_alphabets(x, y)?;
    if horizon == 0 {
        return Err(Error::ZeroHorizon);
    }
    let floor = MetricValue::upper_bound(resolution + 1);
    let mut witnesses: Vec<(i64, MetricValue)> = Vec::new();
    for g in scan_order(horizon) {
        let d = metric_shifted(x, y, g, g, resolution);
        if witnesses.last().is_none_or(|&(_, best)| d < best) {
            witnesses.push((g, d));
            if d == floor {
                break;
            }
        }
    }
    let min = witnesses[witnesses.len() - 1].1;
    Ok(ProximalSearch { min, witnesses })
}

/// Largest certified `d(g x, g y)` over `n < |g| <= horizon`, with its first realizing `g`.
pub fn asymptotic_tail(
    x: &SymbolicPoint,
    y: &SymbolicPoint,
    index: u64,
    horizon: u64,
    resolution: u32,
) -> Result<(MetricValue, i64)> {
    check_alphabets(x, y)?;
    if index >= horizon {
        return Err(Error::TailIndexTooLarge { index, horizon });
    }
    let h = horizon.min(i64::MAX as u64) as i64;
    let mut best: Option<(MetricValue, i64)> = None;
    for g in (index as i64 + 1..=h).flat_map(|g| [g, -g]) {
        let d = metric_shifted(x, y, g, g, resolution);
        if best.is_none_or(|(b, _)| d > b) {
            best = Some((d, g));
            if d == MetricValue::ONE {
                break;
            }
        }
    }
    Ok(best.expect("the tail range is nonempty"))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiYorkeParams {
    pub horizon: u64,
    pub resolution: u32,
    pub proximal_threshold: Dyadic,
    pub tail_indices: Vec<u64>,
    /// Lower bound the tail must certify at every index.
    pub tail_floor: Dyadic,
}

impl LiYorkeParams {
    pub fn new(horizon: u64, resolution: u32, proximal_threshold: Dyadic, tail_indices: Vec<u64>) -> Self {
        LiYorkeParams { horizon, resolution, proximal_threshold, tail_indices, tail_floor: Dyadic(1) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TailSup {
    pub index: u64,
    pub value: MetricValue,
    pub witness: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChaosVerdict {
    pub proximal_evidence: Vec<(i64, MetricValue)>,
    pub proximal_min: MetricValue,
    pub tail_sup: Vec<TailSup>,
    pub liyorke: bool,
    pub parameters: LiYorkeParams,
}

/// Proximal at the threshold and certified far apart beyond every tail index.
pub fn li_yorke_verdict(x: &SymbolicPoint, y: &SymbolicPoint, params: &LiYorkeParams) -> Result<ChaosVerdict> {
    let prox = proximal_search(x, y, params.horizon, params.resolution)?;
    let mut tail_sup = Vec::with_capacity(params.tail_indices.len());
    for &index in &params.tail_indices {
        let (value, witness) = asymptotic_tail(x, y, index, params.horizon, params.resolution)?;
        tail_sup.push(TailSup { index, value, witness });
    }
    let liyorke =
        prox.min.at_most(params.proximal_threshold) && tail_sup.iter().all(|t| t.value.at_least(params.tail_floor));
    Ok(ChaosVerdict {
        proximal_evidence: prox.witnesses,
        proximal_min: prox.min,
        tail_sup,
        liyorke,
        parameters: params.clone(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FChaoticWitness {
    /// `d(l x, y)` strictly decreasing, distance 1 excluded.
    pub l_seq: Vec<(i64, MetricValue)>,
    /// Per shell of `|g|`, the first `g` maximizing a certified `d(g x, y)`.
    pub r_seq: Vec<(i64, MetricValue)>,
    /// As `l_seq` for `d(s x, s y)`.
    pub s_seq: Vec<(i64, MetricValue)>,
    /// As `r_seq` for `d(t x, t y)`.
    pub t_seq: Vec<(i64, MetricValue)>,
    pub horizon: u64,
    pub resolution: u32,
    pub shells: u64,
}

impl FChaoticWitness {
    /// Infimum of the realized `r` distances: the certified positive bound.
    pub fn r_bound(&self) -> Option<MetricValue> {
        self.r_seq.iter().map(|w| w.1).min()
    }

    pub fn t_bound(&self) -> Option<MetricValue> {
        self.t_seq.iter().map(|w| w.1).min()
    }

    pub fn l_inf(&self) -> Option<MetricValue> {
        self.l_seq.last().map(|w| w.1)
    }

    pub fn s_inf(&self) -> Option<MetricValue> {
        self.s_seq.last().map(|w| w.1)
    }

    pub fn all_nonempty(&self) -> bool {
        !(self.l_seq.is_empty() || self.r_seq.is_empty() || self.s_seq.is_empty() || self.t_seq.is_empty())
    }
}

fn improvements(horizon: u64, d: impl Fn(i64) -> MetricValue) -> Vec<(i64, MetricValue)> {
    let mut out: Vec<(i64, MetricValue)> = Vec::new();
    for g in scan_order(horizon) {
        let v = d(g);
        if v != MetricValue::ONE && out.last().is_none_or(|&(_, best)| v < best) {
            out.push((g, v));
        }
    }
    out
}

/// Shell `j` of `shells` covers `floor((j-1)H/c) < |g| <= floor(jH/c)`; shell 1 also holds `g = 0`.
fn shell_maxima(horizon: u64, shells: u64, d: impl Fn(i64) -> MetricValue) -> Vec<(i64, MetricValue)> {
    let h = u128::from(horizon);
    let c = u128::from(shells);
    let mut out = Vec::new();
    for j in 1..=c {
        let lo = (h * (j - 1) / c) as i64;
        let hi = (h * j / c) as i64;
        let start = if j == 1 { 0 } else { lo + 1 };
        if start > hi {
            continue;
        }
        let mut best: Option<(i64, MetricValue)> = None;
        let candidates = (start..=hi).flat_map(|g| if g == 0 { [Some(0), None] } else { [Some(g), Some(-g)] });
        for g in candidates.flatten() {
            let v = d(g);
            if v.is_exact() && best.is_none_or(|(_, b)| v > b) {
                best = Some((g, v));
            }
        }
        out.extend(best);
    }
    out
}

/// Witness lists for the four clauses of an F-chaotic pair.
///
/// An empty list means the clause was not realized at this horizon.
pub fn f_chaotic_witness(
    x: &SymbolicPoint,
    y: &SymbolicPoint,
    horizon: u64,
    resolution: u32,
    shells: u64,
) -> Result<FChaoticWitness> {
    check_alphabets(x, y)?;
    if horizon == 0 || shells == 0 {
        return Err(Error::ZeroHorizon);
    }
    let to_y = |g: i64| metric_shifted(x, y, g, 0, resolution);
    let pair = |g: i64| metric_shifted(x, y, g, g, resolution);
    Ok(FChaoticWitness {
        l_seq: improvements(horizon, to_y),
        r_seq: shell_maxima(horizon, shells, to_y),
        s_seq: improvements(horizon, pair),
        t_seq: shell_maxima(horizon, shells, pair),
        horizon,
        resolution,
        shells,
    })
}

#[derive(Clone, Debug)]
pub struct SensitivityWitness {
    pub patch: (i64, Symbol),
    pub y: SymbolicPoint,
    /// `d(x, y)` at resolution `k`; always `UpperBound(2^-(k+1))`.
    pub closeness: MetricValue,
    pub g: i64,
    pub separation: MetricValue,
}

/// Flips the symbol at `j = k+1`: `y` stays within `2^-k` of `x` while `g = j`
/// separates the orbits by the full distance 1.
pub fn sensitivity_probe(x: &SymbolicPoint, resolution: u32, eps: Dyadic, horizon: u64) -> Result<SensitivityWitness> {
    let j = u64::from(resolution) + 1;
    if j > horizon {
        return Err(Error::NoAdmissibleIndex { resolution, horizon });
    }
    let j = j as i64;
    let size = x.alphabet().size();
    let symbol = ((u16::from(x.eval(j)) + 1) % size) as Symbol;
    let y = x.mutate(&[(j, symbol)])?;
    let closeness = metric_shifted(x, &y, 0, 0, resolution);
    let separation = metric_shifted(x, &y, j, j, 0);
    debug_assert!(separation.at_least(eps));
    Ok(SensitivityWitness { patch: (j, symbol), y, closeness, g: j, separation })
}

/// For each word of length `2k+1` centered in the orbit within `[-H, H]`,
/// the largest gap between its consecutive visits there.
pub fn almost_periodic_probe(x: &SymbolicPoint, resolution: u32, horizon: u64) -> Result<BTreeMap<Word, Option<u64>>> {
    let len = 2 * resolution as usize + 1;
    if x.alphabet().word_count(len).is_none() {
        return Err(Error::WindowTooWide { alphabet: x.alphabet().size(), len });
    }
    let h = horizon.min(i64::MAX as u64 / 2) as i64;
    let codes = rolling_codes(x, -i64::from(resolution), len, -h, h);
    let mut last: BTreeMap<u64, (i64, Option<u64>)> = BTreeMap::new();
    for (g, code) in (-h..=h).zip(codes) {
        last.entry(code)
            .and_modify(|(prev, gap)| {
                let d = (g - *prev) as u64;
                *gap = Some(gap.map_or(d, |b| b.max(d)));
                *prev = g;
            })
            .or_insert((g, None));
    }
    Ok(last.into_iter().map(|(code, (_, gap))| (Word::from_code(code, len, x.alphabet()), gap)).collect())
}

/// Largest gap on `[-H/2, H/2]` of the orbit sample
/// `{g : g x^h ∈ U and x^(g+h) ∈ V for some |h| <= H}` of `N(U, V)`.
///
/// Only an under-approximation: the true return-time set quantifies over all points.
pub fn ergodicity_probe(x: &SymbolicPoint, u: &Cylinder, v: &Cylinder, horizon: u64) -> Option<u64> {
    let h = horizon.min(i64::MAX as u64 / 4) as i64;
    let in_u: Vec<i64> = (-h..=h).filter(|&g| u.contains_shifted(x, g)).collect();
    if in_u.is_empty() {
        return None;
    }
    let lo = -h - h / 2;
    let hi = h + h / 2;
    let in_v: Vec<bool> = (lo..=hi).map(|g| v.contains_shifted(x, g)).collect();
    let half = h / 2;
    let bits = (-half..=half).map(|g| in_u.iter().any(|&a| in_v[(a + g - lo) as usize])).collect();
    max_gap_in(&RangeMask::from_parts(-half, bits))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpliceMode {
    /// Any finite mutation of the center is allowed.
    Unrestricted,
    /// Each mutated window must already occur in the center's orbit segment.
    OrbitClosure,
}

#[derive(Clone, Debug)]
pub struct TupleWitness {
    pub g: i64,
    /// Patches turning the center into each `y_i`; empty for the identity.
    pub mutations: Vec<Vec<(i64, Symbol)>>,
    pub points: Vec<SymbolicPoint>,
    pub mode: SpliceMode,
}

/// Searches for `y_i` near `center` and one `g` with `g y_i` near `target_i`
/// for every `i`, by splicing each target's central window into the center at `g`.
///
/// "Near" means agreement on `[-k, k]`. Admissible `g` keep every patch
/// outside `[-k, k]`.
pub fn tuple_sensitivity_witness(
    center: &SymbolicPoint,
    targets: &[SymbolicPoint],
    resolution: u32,
    horizon: u64,
    mode: SpliceMode,
) -> Result<Option<TupleWitness>> {
    if targets.is_empty() {
        return Err(Error::NoTargets);
    }
    if targets.len() > MAX_TARGETS {
        return Err(Error::TooManyTargets(targets.len()));
    }
    for t in targets {
        check_alphabets(center, t)?;
    }
    let k = i64::from(resolution);
    let alphabet = center.alphabet();
    let wide = 4 * resolution as usize + 1;
    let h = horizon.min(i64::MAX as u64 / 4) as i64;
    let seen: BTreeSet<u64> = match mode {
        SpliceMode::Unrestricted => BTreeSet::new(),
        SpliceMode::OrbitClosure => {
            if alphabet.word_count(wide).is_none() {
                return Err(Error::WindowTooWide { alphabet: alphabet.size(), len: wide });
            }
            rolling_codes(center, -2 * k, wide, -h, h).into_iter().collect()
        }
    };
    let windows: Vec<Word> = targets.iter().map(|t| t.central_word(resolution)).collect();
    'scan: for g in scan_order(h as u64) {
        let mut mutations = Vec::with_capacity(targets.len());
        for w in &windows {
            let patches: Vec<(i64, Symbol)> = (-k..=k)
                .zip(w.symbols())
                .filter(|&(j, &s)| center.eval(g + j) != s)
                .map(|(j, &s)| (g + j, s))
                .collect();
            if patches.iter().any(|&(i, _)| -k <= i && i <= k) {
                continue 'scan;
            }
            mutations.push(patches);
        }
        let points = mutations.iter().map(|p| center.mutate(p)).collect::<Result<Vec<_>>>()?;
        if mode == SpliceMode::OrbitClosure {
            let all_seen = mutations
                .iter()
                .zip(&points)
                .all(|(p, y)| p.is_empty() || seen.contains(&y.window_code(g - 2 * k, wide)));
            if !all_seen {
                continue;
            }
        }
        return Ok(Some(TupleWitness { g, mutations, points, mode }));
    }
    Ok(None)
}
