//! Levelwise parallelism. Level computations are independent, so they map
//! cleanly over a data-parallel pool; the `parallel` feature (on by default)
//! backs this with rayon, and without it the same API runs sequentially.

/// Caps the worker pool at `n` threads. Effective once, before first use
/// of the pool; silently keeps the existing pool otherwise. No-op in the
/// sequential build.
#[cfg(feature = "parallel")]
pub fn configure_threads(n: usize) {
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global();
}

#[cfg(not(feature = "parallel"))]
pub fn configure_threads(_n: usize) {}

#[cfg(feature = "parallel")]
pub fn map_levels<T, F>(levels: std::ops::RangeInclusive<u32>, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u32) -> T + Sync + Send,
{
    use rayon::prelude::*;
    levels.into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_levels<T, F>(levels: std::ops::RangeInclusive<u32>, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u32) -> T + Sync + Send,
{
    levels.map(f).collect()
}

/// Maps a computation over an indexed batch of items.
#[cfg(feature = "parallel")]
pub fn map_items<I, T, F>(items: Vec<I>, f: F) -> Vec<T>
where
    I: Send,
    T: Send,
    F: Fn(I) -> T + Sync + Send,
{
    use rayon::prelude::*;
    items.into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_items<I, T, F>(items: Vec<I>, f: F) -> Vec<T>
where
    I: Send,
    T: Send,
    F: Fn(I) -> T + Sync + Send,
{
    items.into_iter().map(f).collect()
}
