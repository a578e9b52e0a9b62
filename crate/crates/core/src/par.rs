//! Data-parallel helpers. With the `parallel` feature these run on rayon;
//! without it they degrade to plain sequential iterators with identical output.

use std::ops::Range;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Maps `f` over `range`, preserving order.
pub(crate) fn map_range<R, F>(range: Range<usize>, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        range.into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        range.map(f).collect()
    }
}

/// Maps `f` over `items` with per-worker scratch state, returning the minimum.
pub(crate) fn chunked_min<T, S, R, I, F>(items: &[T], init: I, f: F) -> Option<R>
where
    T: Sync,
    R: Ord + Send,
    I: Fn() -> S + Sync + Send,
    F: Fn(&mut S, &T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map_init(&init, |s, t| f(s, t)).min()
    }
    #[cfg(not(feature = "parallel"))]
    {
        let mut s = init();
        items.iter().map(|t| f(&mut s, t)).min()
    }
}

/// Sets the worker count for subsequent parallel sections. Only the first call
/// in a process takes effect; later calls and sequential builds are no-ops.
pub fn configure_threads(threads: usize) {
    #[cfg(feature = "parallel")]
    {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads.max(1))
            .build_global();
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = threads;
    }
}
