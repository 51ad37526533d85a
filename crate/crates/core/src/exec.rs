//! Sequential / parallel execution switch shared by the enumeration loops.

use std::ops::Range;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// How data-parallel loops are executed.
///
/// Without the `parallel` feature, `Parallel` silently runs sequentially.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Exec {
    Sequential,
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

/// Work items per chunk in [`Exec::map_chunks`].
pub(crate) const CHUNK: u64 = 1 << 12;

impl Exec {
    /// Splits `0..len` into fixed chunks, applies `f` to each and returns the
    /// partial results in chunk order. Chunk boundaries do not depend on the
    /// thread pool, so a sequential fold over the output is deterministic.
    pub fn map_chunks<T, F>(self, len: u64, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(Range<u64>) -> T + Sync + Send,
    {
        let chunks = usize::try_from(len.div_ceil(CHUNK)).expect("chunk count fits usize");
        let run = |i: usize| {
            let start = i as u64 * CHUNK;
            f(start..(start + CHUNK).min(len))
        };
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => (0..chunks).into_par_iter().map(run).collect(),
            _ => (0..chunks).map(run).collect(),
        }
    }

    /// Order-preserving map over a slice.
    pub fn map_slice<T, U, F>(self, items: &[T], f: F) -> Vec<U>
    where
        T: Sync,
        U: Send,
        F: Fn(&T) -> U + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => items.par_iter().map(f).collect(),
            _ => items.iter().map(f).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chunks_cover_range_in_order() {
        for exec in [Exec::Sequential, Exec::Parallel] {
            let parts = exec.map_chunks(3 * CHUNK + 5, |r| (r.start, r.end));
            assert_eq!(parts.len(), 4);
            assert_eq!(parts[0].0, 0);
            assert_eq!(parts[3].1, 3 * CHUNK + 5);
            for w in parts.windows(2) {
                assert_eq!(w[0].1, w[1].0);
            }
        }
        assert!(Exec::Parallel.map_chunks(0, |r| r).is_empty());
    }
}
