//! Chunked execution for the enumeration searches. The chunk list is fixed
//! by the problem instance, never by the worker count, and chunk results are
//! merged in chunk order, so sequential and parallel runs produce identical
//! output bytes.

/// How to run a chunked computation. Without the "parallel" feature `Par`
/// degrades to sequential execution.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Exec {
    Seq,
    #[default]
    Par,
}

/// Maps `f` over the chunks, preserving chunk order in the result.
pub fn run_chunks<C, T, F>(chunks: Vec<C>, exec: Exec, f: F) -> Vec<T>
where
    C: Send,
    T: Send,
    F: Fn(C) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if exec == Exec::Par {
            use rayon::prelude::*;
            return chunks.into_par_iter().map(f).collect();
        }
    }
    let _ = exec;
    chunks.into_iter().map(f).collect()
}

/// Caps the global worker pool (first call wins; later calls are ignored).
/// A no-op without the "parallel" feature.
pub fn set_parallelism(threads: usize) {
    #[cfg(feature = "parallel")]
    {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
    #[cfg(not(feature = "parallel"))]
    let _ = threads;
}
