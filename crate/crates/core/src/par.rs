//! Data-parallel helpers. With the default `parallel` feature the batch
//! operations fan out over rayon; without it they run sequentially with the
//! same semantics. Results always come back in input order, so reductions
//! over them stay deterministic either way.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Map over a slice, in parallel when the `parallel` feature is enabled.
#[cfg(feature = "parallel")]
pub fn par_map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn par_map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}

/// Cap the global worker pool. `None` leaves the default (all cores); under
/// the sequential build this is a no-op. Returns whether the setting took
/// effect (the pool can only be configured once per process).
#[cfg(feature = "parallel")]
pub fn configure_workers(workers: Option<usize>) -> bool {
    match workers {
        Some(count) => rayon::ThreadPoolBuilder::new()
            .num_threads(count)
            .build_global()
            .is_ok(),
        None => true,
    }
}

#[cfg(not(feature = "parallel"))]
pub fn configure_workers(_workers: Option<usize>) -> bool {
    true
}
