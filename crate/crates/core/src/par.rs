//! Execution policy for the data-parallel parts of the crate.
//!
//! With the `parallel` feature off, [`Exec::Parallel`] silently runs
//! sequentially, so callers never need their own `cfg` switches.

use serde::Serialize;

use crate::error::{Error, Result};

/// Environment variable capping the worker count.
pub const THREADS_ENV: &str = "SPREADLAB_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    /// True when work is actually spread over threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }
}

/// Order-preserving map.
pub fn map<T, R, F>(exec: Exec, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

/// Runs `f` on a pool of at most `threads` workers (`None`: the global pool).
pub fn with_threads<R, F>(threads: Option<usize>, f: F) -> Result<R>
where
    R: Send,
    F: FnOnce() -> R + Send,
{
    match threads {
        Some(0) => Err(Error::OutOfRange("thread count must be positive".into())),
        #[cfg(feature = "parallel")]
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .map(|pool| pool.install(f))
            .map_err(|e| Error::Precondition(format!("cannot build thread pool: {e}"))),
        _ => Ok(f()),
    }
}

/// Parses a thread cap as given in [`THREADS_ENV`].
pub fn parse_threads(value: &str) -> Result<usize> {
    match value.trim().parse::<usize>() {
        Ok(k) if k > 0 => Ok(k),
        _ => Err(Error::OutOfRange(format!(
            "{THREADS_ENV} must be a positive integer, got `{value}`"
        ))),
    }
}

/// Reads [`THREADS_ENV`]; unset means no cap.
pub fn threads_from_env() -> Result<Option<usize>> {
    std::env::var(THREADS_ENV).ok().map(|v| parse_threads(&v)).transpose()
}
