//! Range scans: membership masks and window codes over integer ranges.
//!
//! Every scan-heavy routine takes a [`RangeScan`]. [`Sequential`] is the
//! reference implementation; other implementations must return exactly the
//! same values.

use alloc::vec::Vec;

use crate::setclass::IntegerSet;
use crate::shift::SymbolicPoint;

/// Membership of a set on `[lo, lo + len)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RangeMask {
    lo: i64,
    bits: Vec<bool>,
}

impl RangeMask {
    pub fn from_parts(lo: i64, bits: Vec<bool>) -> Self {
        RangeMask { lo, bits }
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// Inclusive upper end; `lo - 1` when empty.
    pub fn hi(&self) -> i64 {
        self.lo + self.bits.len() as i64 - 1
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// Membership of `i`; `false` outside the range.
    pub fn get(&self, i: i64) -> bool {
        i.checked_sub(self.lo)
            .and_then(|off| usize::try_from(off).ok())
            .and_then(|off| self.bits.get(off).copied())
            .unwrap_or(false)
    }

    pub fn count(&self) -> u64 {
        self.bits.iter().filter(|&&b| b).count() as u64
    }

    pub fn members(&self) -> impl Iterator<Item = i64> + '_ {
        self.bits.iter().enumerate().filter(|(_, &b)| b).map(move |(off, _)| self.lo + off as i64)
    }
}

pub trait RangeScan {
    /// Membership of `set` on `[lo, hi]`; empty when `hi < lo`.
    fn mask(&self, set: &IntegerSet, lo: i64, hi: i64) -> RangeMask;

    /// `x.window_code(g + offset, len)` for every `g` in `[lo, hi]`.
    fn window_codes(&self, x: &SymbolicPoint, offset: i64, len: usize, lo: i64, hi: i64) -> Vec<u64>;
}

/// Single-threaded reference scan.
#[derive(Clone, Copy, Debug, Default)]
pub struct Sequential;

impl RangeScan for Sequential {
    fn mask(&self, set: &IntegerSet, lo: i64, hi: i64) -> RangeMask {
        let bits = if hi < lo { Vec::new() } else { (lo..=hi).map(|i| set.member(i)).collect() };
        RangeMask { lo, bits }
    }

    fn window_codes(&self, x: &SymbolicPoint, offset: i64, len: usize, lo: i64, hi: i64) -> Vec<u64> {
        if hi < lo {
            return Vec::new();
        }
        rolling_codes(x, offset, len, lo, hi)
    }
}

/// Window codes for consecutive positions, shifting one symbol in per step.
pub fn rolling_codes(x: &SymbolicPoint, offset: i64, len: usize, lo: i64, hi: i64) -> Vec<u64> {
    if hi < lo || len == 0 {
        return Vec::new();
    }
    let base = u64::from(x.alphabet().size());
    // When base^len overflows, wrapping arithmetic already reduces mod 2^64.
    let modulus = x.alphabet().word_count(len);
    let mut out = Vec::with_capacity((hi - lo + 1) as usize);
    let mut code = x.window_code(lo.saturating_add(offset), len);
    out.push(code);
    let mut g = lo;
    while g < hi {
        g += 1;
        let incoming = u64::from(x.eval(g.saturating_add(offset).saturating_add(len as i64 - 1)));
        code = code.wrapping_mul(base).wrapping_add(incoming);
        if let Some(m) = modulus {
            code %= m;
        }
        out.push(code);
    }
    out
}
