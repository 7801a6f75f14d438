//! Execution policy for the data-parallel engines.
//!
//! Every engine that fans out work takes an [`Exec`]. Results never depend on
//! the policy or on the worker count: work is split into a fixed list of
//! items and results are gathered in item order before any merge.

/// How an engine runs its outer loop.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    /// Rayon work-stealing. Without the `parallel` feature this runs
    /// sequentially.
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

impl Exec {
    /// `(0..n).map(f)` collected in index order.
    pub fn map_range<R, F>(self, n: usize, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(usize) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                use rayon::prelude::*;
                (0..n).into_par_iter().map(f).collect()
            }
            _ => (0..n).map(f).collect(),
        }
    }

    /// Parallel sort when available; the result is identical either way.
    pub fn sort_unstable<T: Ord + Send>(self, v: &mut [T]) {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                use rayon::prelude::*;
                v.par_sort_unstable()
            }
            _ => v.sort_unstable(),
        }
    }
}

/// Caps the global worker pool. `0` leaves rayon's default.
pub fn init_threads(threads: usize) {
    #[cfg(feature = "parallel")]
    if threads > 0 {
        // A second initialisation is harmless: the first pool stays.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    #[cfg(not(feature = "parallel"))]
    let _ = threads;
}

/// Splits `0..len` into at most `parts` contiguous chunks of near-equal size.
pub(crate) fn chunks(len: usize, parts: usize) -> Vec<std::ops::Range<usize>> {
    let parts = parts.clamp(1, len.max(1));
    let base = len / parts;
    let extra = len % parts;
    let mut out = Vec::with_capacity(parts);
    let mut start = 0;
    for p in 0..parts {
        let size = base + usize::from(p < extra);
        out.push(start..start + size);
        start += size;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_range_preserves_order() {
        let seq = Exec::Sequential.map_range(100, |i| i * i);
        let par = Exec::Parallel.map_range(100, |i| i * i);
        assert_eq!(seq, par);
    }

    #[test]
    fn chunks_cover_range() {
        for len in [0, 1, 7, 64, 1000] {
            for parts in [1, 3, 8, 2000] {
                let cs = chunks(len, parts);
                let total: usize = cs.iter().map(|r| r.len()).sum();
                assert_eq!(total, len);
                for w in cs.windows(2) {
                    assert_eq!(w[0].end, w[1].start);
                }
            }
        }
    }
}
