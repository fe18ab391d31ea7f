//! Data-parallel kernels. With the `parallel` feature (on by default) work is
//! spread over the rayon pool; without it, or with [`Strategy::Sequential`],
//! the same closures run on the calling thread.
//!
//! Reductions must be associative and commutative. Order-preserving maps
//! return results in input order regardless of scheduling.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    Sequential,
    #[default]
    Parallel,
}

impl Strategy {
    /// Whether this strategy actually runs on the thread pool in this build.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Strategy::Parallel
    }
}

pub fn map_reduce<T, R, I, M, F>(strategy: Strategy, items: &[T], identity: I, map: M, reduce: F) -> R
where
    T: Sync,
    R: Send,
    I: Fn() -> R + Sync + Send,
    M: Fn(&T) -> R + Sync + Send,
    F: Fn(R, R) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if strategy.is_parallel() {
        use rayon::prelude::*;
        return items.par_iter().map(map).reduce(identity, reduce);
    }
    let _ = strategy;
    items.iter().map(map).fold(identity(), reduce)
}

pub fn map_collect<T, R, M>(strategy: Strategy, items: &[T], map: M) -> Vec<R>
where
    T: Sync,
    R: Send,
    M: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if strategy.is_parallel() {
        use rayon::prelude::*;
        return items.par_iter().map(map).collect();
    }
    let _ = strategy;
    items.iter().map(map).collect()
}

/// Sizes the global pool. Only effective before the pool is first used.
pub fn configure_workers(workers: usize) -> Result<()> {
    if workers == 0 {
        return Err(Error::InvalidParameter("worker count must be at least 1".into()));
    }
    #[cfg(feature = "parallel")]
    {
        // A second call fails because the pool already exists; that is harmless.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build_global();
    }
    Ok(())
}

pub fn available_workers() -> usize {
    std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
}
