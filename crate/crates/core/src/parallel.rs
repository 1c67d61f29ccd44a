//! Order-preserving map over replicate indices.
//!
//! With the `parallel` feature the work is spread over a rayon pool; without
//! it, or with `workers == 1`, it runs on the calling thread. Output order is
//! always the index order, so any fold over the result is worker-independent.

/// Whether the crate was built with rayon support.
pub const fn parallel_enabled() -> bool {
    cfg!(feature = "parallel")
}

/// Evaluates `f(0), …, f(count - 1)`. `workers == 0` means one worker per
/// available core.
pub fn map_indexed<T, F>(count: u64, workers: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if workers != 1 {
            return map_parallel(count, workers, f);
        }
    }
    #[cfg(not(feature = "parallel"))]
    let _ = workers;
    (0..count).map(f).collect()
}

#[cfg(feature = "parallel")]
fn map_parallel<T, F>(count: u64, workers: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync + Send,
{
    use rayon::prelude::*;

    let run = || (0..count).into_par_iter().map(&f).collect();
    if workers == 0 {
        return run();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
        Ok(pool) => pool.install(run),
        Err(_) => (0..count).map(&f).collect(),
    }
}
