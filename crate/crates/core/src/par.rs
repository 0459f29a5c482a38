//! Switch between rayon-backed and sequential execution.
//!
//! With the `parallel` feature disabled every helper runs on the calling
//! thread and [`Execution::Parallel`] degrades to sequential execution.

/// How data-parallel inner loops are executed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    /// True when loops will actually be spread over a thread pool.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

/// Caps the global worker pool. Has no effect without the `parallel`
/// feature or once the pool has been initialised.
pub fn set_thread_cap(threads: usize) -> bool {
    #[cfg(feature = "parallel")]
    {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads.max(1))
            .build_global()
            .is_ok()
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = threads;
        false
    }
}

/// Maps `f` over `0..n`, collecting results in index order.
pub(crate) fn map_range<T, F>(exec: Execution, n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return (0..n).into_par_iter().map(f).collect();
    }
    let _ = exec;
    (0..n).map(f).collect()
}

/// Splits `0..n` into ranges of at least `min_chunk` items, runs `f` on each
/// range into its own buffer, and concatenates the buffers in range order.
/// Errors short circuit.
pub(crate) fn try_collect_ranges<U, E, F>(
    exec: Execution,
    n: usize,
    min_chunk: usize,
    f: F,
) -> Result<Vec<U>, E>
where
    U: Send,
    E: Send,
    F: Fn(std::ops::Range<usize>, &mut Vec<U>) -> Result<(), E> + Sync + Send,
{
    let min_chunk = min_chunk.max(1);
    #[cfg(feature = "parallel")]
    if exec.is_parallel() && n > min_chunk && rayon::current_num_threads() > 1 {
        use rayon::prelude::*;
        let chunks = n.div_ceil(min_chunk);
        let pieces: Vec<Vec<U>> = (0..chunks)
            .into_par_iter()
            .map(|c| {
                let mut out = Vec::new();
                let range = c * min_chunk..((c + 1) * min_chunk).min(n);
                f(range, &mut out).map(|_| out)
            })
            .collect::<Result<_, E>>()?;
        return Ok(pieces.into_iter().flatten().collect());
    }
    let _ = exec;
    let mut out = Vec::new();
    f(0..n, &mut out)?;
    Ok(out)
}
