//! Data-parallel execution helpers.
//!
//! Every bulk operation in the crate maps an index range through a pure
//! function and collects the results *in index order*, so the output is
//! bit-identical regardless of worker count. With the default `parallel`
//! feature the work is spread over rayon; without it the same helper runs
//! sequentially. `map_indexed_seq` is always sequential and is kept public
//! so benchmarks and tests can compare the two paths directly.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Map `0..n` through `f`, collecting results in index order.
#[cfg(feature = "parallel")]
pub fn map_indexed<T: Send, F: Fn(usize) -> T + Sync + Send>(n: usize, f: F) -> Vec<T> {
    (0..n).into_par_iter().map(f).collect()
}

/// Map `0..n` through `f`, collecting results in index order.
#[cfg(not(feature = "parallel"))]
pub fn map_indexed<T: Send, F: Fn(usize) -> T + Sync + Send>(n: usize, f: F) -> Vec<T> {
    (0..n).map(f).collect()
}

/// Sequential reference implementation of [`map_indexed`].
pub fn map_indexed_seq<T, F: Fn(usize) -> T>(n: usize, f: F) -> Vec<T> {
    (0..n).map(f).collect()
}

/// Cap the global worker pool at `n` threads. Call once, before any parallel
/// work; later calls (or calls after the pool is already running) are ignored.
/// A no-op when the `parallel` feature is disabled or `n == 0`.
pub fn configure_threads(n: usize) {
    #[cfg(feature = "parallel")]
    {
        if n > 0 {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = n;
    }
}
