// SPDX-License-Identifier: Apache-2.0

//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature (default) the batch entry points fan out over
//! rayon's global pool. Without it, or when [`Execution::Sequential`] is
//! requested explicitly, they run as plain iterator chains. Output order is
//! always the input order, so results are identical either way.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// How a batch operation should be scheduled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    /// Uses rayon when compiled with the `parallel` feature, otherwise the
    /// same as `Sequential`.
    #[default]
    Parallel,
}

impl Execution {
    /// True when this mode actually runs on more than one thread.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

/// `items.iter().map(f).collect()` under the given schedule.
pub fn map<T, R, F>(exec: Execution, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

/// `(0..len).map(f).collect()` under the given schedule.
pub fn map_range<R, F>(exec: Execution, len: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return (0..len).into_par_iter().map(f).collect();
    }
    let _ = exec;
    (0..len).map(f).collect()
}

/// Fallible [`map_range`]; returns the first error in index order.
pub fn try_map_range<R, E, F>(exec: Execution, len: usize, f: F) -> Result<Vec<R>, E>
where
    R: Send,
    E: Send,
    F: Fn(usize) -> Result<R, E> + Sync + Send,
{
    map_range(exec, len, f).into_iter().collect()
}

/// Maximum of `f` over `items` (`0.0` for an empty slice). `f` must not
/// return NaN.
pub fn max_by<T, F>(exec: Execution, items: &[T], f: F) -> f64
where
    T: Sync,
    F: Fn(&T) -> f64 + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return items.par_iter().map(f).reduce(|| 0.0, f64::max);
    }
    let _ = exec;
    items.iter().map(f).fold(0.0, f64::max)
}
