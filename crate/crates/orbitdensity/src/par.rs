//! Multi-threaded range scans.
//!
//! The range is cut into contiguous chunks, each chunk is scanned on its own
//! thread and the pieces are concatenated in order, so the output equals the
//! sequential scan exactly for any thread count.

use orbitdensity_core::scan::{rolling_codes, RangeMask, RangeScan, Sequential};
use orbitdensity_core::setclass::IntegerSet;
use orbitdensity_core::shift::SymbolicPoint;

/// Ranges shorter than this are scanned on the calling thread.
const MIN_CHUNK: u64 = 4096;

#[derive(Clone, Copy, Debug)]
pub struct Threaded {
    threads: usize,
}

impl Threaded {
    pub fn new(threads: usize) -> Self {
        Threaded { threads: threads.max(1) }
    }

    pub fn threads(&self) -> usize {
        self.threads
    }

    /// Inclusive chunk bounds covering `[lo, hi]`; a single chunk when parallelism would not pay.
    fn chunks(&self, lo: i64, hi: i64) -> Vec<(i64, i64)> {
        let len = (i128::from(hi) - i128::from(lo) + 1) as u64;
        let parts = (self.threads as u64).min(len / MIN_CHUNK).max(1);
        let step = len.div_ceil(parts);
        let mut out = Vec::with_capacity(parts as usize);
        let mut start = lo;
        while start <= hi {
            let end = start.saturating_add(step as i64 - 1).min(hi);
            out.push((start, end));
            if end == hi {
                break;
            }
            start = end + 1;
        }
        out
    }

    fn run<T: Send>(&self, lo: i64, hi: i64, work: impl Fn(i64, i64) -> Vec<T> + Sync) -> Vec<T> {
        let chunks = self.chunks(lo, hi);
        if chunks.len() == 1 {
            return work(lo, hi);
        }
        let pieces: Vec<Vec<T>> = std::thread::scope(|s| {
            let work = &work;
            let handles: Vec<_> = chunks.iter().map(|&(a, b)| s.spawn(move || work(a, b))).collect();
            handles.into_iter().map(|h| h.join().expect("scan worker panicked")).collect()
        });
        pieces.into_iter().flatten().collect()
    }
}

impl RangeScan for Threaded {
    fn mask(&self, set: &IntegerSet, lo: i64, hi: i64) -> RangeMask {
        if hi < lo {
            return Sequential.mask(set, lo, hi);
        }
        let bits = self.run(lo, hi, |a, b| (a..=b).map(|i| set.member(i)).collect());
        RangeMask::from_parts(lo, bits)
    }

    fn window_codes(&self, x: &SymbolicPoint, offset: i64, len: usize, lo: i64, hi: i64) -> Vec<u64> {
        if hi < lo {
            return Vec::new();
        }
        self.run(lo, hi, |a, b| rolling_codes(x, offset, len, a, b))
    }
}

/// A scanner for `threads` workers: the reference scan for one, [`Threaded`] otherwise.
pub fn scanner(threads: usize) -> Box<dyn RangeScan + Sync> {
    if threads <= 1 {
        Box::new(Sequential)
    } else {
        Box::new(Threaded::new(threads))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use orbitdensity_core::setclass::example52_sets;

    #[test]
    fn chunks_tile_the_range() {
        let t = Threaded::new(4);
        let c = t.chunks(-10_000, 10_000);
        assert_eq!(c.len(), 4);
        assert_eq!(c[0].0, -10_000);
        assert_eq!(c[3].1, 10_000);
        assert!(c.windows(2).all(|w| w[0].1 + 1 == w[1].0));
        assert_eq!(t.chunks(0, 10), [(0, 10)]);
    }

    #[test]
    fn matches_sequential() {
        let (a, _, _) = example52_sets();
        for threads in [2, 3, 7] {
            let t = Threaded::new(threads);
            assert_eq!(t.mask(&a, -5, 50_000), Sequential.mask(&a, -5, 50_000));
            let x = SymbolicPoint::word_enumeration();
            assert_eq!(t.window_codes(&x, -3, 7, -100, 40_000), Sequential.window_codes(&x, -3, 7, -100, 40_000));
        }
    }
}
