//! Ordered data-parallel map with a sequential fallback.
//!
//! Results always come back in input order, so output does not depend on the
//! executor or the number of worker threads.

use std::ops::Range;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Exec {
    Sequential,
    /// Rayon when the `parallel` feature is enabled, sequential otherwise.
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
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match self {
            Exec::Sequential => items.iter().map(f).collect(),
            Exec::Parallel => par_map(items, f),
        }
    }

    pub fn map_range<R, F>(self, range: Range<u64>, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(u64) -> R + Sync + Send,
    {
        match self {
            Exec::Sequential => range.map(f).collect(),
            Exec::Parallel => par_map_range(range, f),
        }
    }
}

#[cfg(feature = "parallel")]
fn par_map<T: Sync, R: Send, F: Fn(&T) -> R + Sync + Send>(items: &[T], f: F) -> Vec<R> {
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn par_map<T: Sync, R: Send, F: Fn(&T) -> R + Sync + Send>(items: &[T], f: F) -> Vec<R> {
    items.iter().map(f).collect()
}

#[cfg(feature = "parallel")]
fn par_map_range<R: Send, F: Fn(u64) -> R + Sync + Send>(range: Range<u64>, f: F) -> Vec<R> {
    use rayon::prelude::*;
    range.into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn par_map_range<R: Send, F: Fn(u64) -> R + Sync + Send>(range: Range<u64>, f: F) -> Vec<R> {
    range.map(f).collect()
}
