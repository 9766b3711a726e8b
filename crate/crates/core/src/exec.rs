//! Execution strategy for the data-parallel loops (subset sums, quasi-tree
//! enumeration, connectivity and minor searches, verification sweeps).
//!
//! With the `parallel` feature the [`Execution::Parallel`] strategy fans out over
//! rayon's pool; without it, every strategy runs sequentially. Results never
//! depend on the strategy: all reductions used here are commutative and every
//! collected vector keeps input order.

use std::ops::Range;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Execution {
    Sequential,
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

impl Execution {
    /// Fold every index of `range` into a per-worker accumulator, then merge.
    pub fn fold_range<T, ID, F, R>(self, range: Range<u64>, identity: ID, fold: F, reduce: R) -> T
    where
        T: Send,
        ID: Fn() -> T + Sync + Send,
        F: Fn(T, u64) -> T + Sync + Send,
        R: Fn(T, T) -> T + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => range
                .into_par_iter()
                .fold(&identity, &fold)
                .reduce(&identity, &reduce),
            _ => reduce(identity(), range.fold(identity(), fold)),
        }
    }

    /// Map every index of `range`, keeping order.
    pub fn map_range<T, F>(self, range: Range<u64>, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(u64) -> T + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => range.into_par_iter().map(f).collect(),
            _ => range.map(f).collect(),
        }
    }

    /// Map every item of `items`, keeping order.
    pub fn map<I, T, F>(self, items: &[I], f: F) -> Vec<T>
    where
        I: Sync,
        T: Send,
        F: Fn(&I) -> T + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => items.par_iter().map(f).collect(),
            _ => items.iter().map(f).collect(),
        }
    }

    /// First index in `range` (lowest) satisfying `pred`.
    pub fn find_first<F>(self, range: Range<u64>, pred: F) -> Option<u64>
    where
        F: Fn(u64) -> bool + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => range.into_par_iter().find_first(|&i| pred(i)),
            _ => range.into_iter().find(|&i| pred(i)),
        }
    }
}

/// Cap the global worker pool. Has no effect without the `parallel` feature or
/// when the pool was already initialised.
pub fn configure_threads(threads: usize) -> bool {
    #[cfg(feature = "parallel")]
    {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads.max(1))
            .build_global()
            .is_ok()
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = threads;
        false
    }
}
