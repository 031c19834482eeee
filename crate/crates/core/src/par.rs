//! Data-parallel mapping with a sequential fallback.
//!
//! With the `parallel` feature (on by default) the helpers below run on the
//! rayon global pool; without it they are plain iterator maps. Results are
//! always returned in input order, so callers stay deterministic either way.

/// How a batch operation should be executed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ExecMode {
    Sequential,
    /// Falls back to sequential when the `parallel` feature is disabled.
    #[default]
    Parallel,
}

impl ExecMode {
    pub fn is_parallel_available() -> bool {
        cfg!(feature = "parallel")
    }
}

/// Below this many items a per-record map is not worth a pool dispatch.
pub(crate) const PAR_THRESHOLD: usize = 64;

pub fn map_slice<T, U, F>(items: &[T], mode: ExecMode, f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    match mode {
        #[cfg(feature = "parallel")]
        ExecMode::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
        _ => items.iter().map(f).collect(),
    }
}

pub fn map_range<U, F>(n: usize, mode: ExecMode, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    match mode {
        #[cfg(feature = "parallel")]
        ExecMode::Parallel => {
            use rayon::prelude::*;
            (0..n).into_par_iter().map(f).collect()
        }
        _ => (0..n).map(f).collect(),
    }
}

/// Parallel only when there is enough work.
pub(crate) fn auto(n: usize) -> ExecMode {
    if n >= PAR_THRESHOLD {
        ExecMode::Parallel
    } else {
        ExecMode::Sequential
    }
}
