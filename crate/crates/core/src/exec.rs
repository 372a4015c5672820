//! Data-parallel map with a sequential fallback.

/// Whether the crate was built with the `parallel` feature.
pub const PARALLEL_AVAILABLE: bool = cfg!(feature = "parallel");

/// Map `f` over `items`, preserving order. Runs on the rayon pool when
/// `parallel` is set and the feature is enabled.
pub fn par_map<T, R, F>(items: &[T], parallel: bool, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    #[cfg(not(feature = "parallel"))]
    let _ = parallel;
    items.iter().map(f).collect()
}
