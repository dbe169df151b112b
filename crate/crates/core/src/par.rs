//! Data-parallel map with a sequential fallback.

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ExecMode {
    Sequential,
    #[default]
    Parallel,
}

impl ExecMode {
    /// `Parallel` only when the crate was built with the `parallel` feature.
    pub fn effective(self) -> ExecMode {
        if cfg!(feature = "parallel") {
            self
        } else {
            ExecMode::Sequential
        }
    }
}

/// `f(0), …, f(count − 1)` in index order.
pub fn map_indexed<T, F>(mode: ExecMode, count: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync + Send,
{
    match mode.effective() {
        ExecMode::Sequential => (0..count).map(f).collect(),
        ExecMode::Parallel => parallel_map(count, f),
    }
}

#[cfg(feature = "parallel")]
fn parallel_map<T: Send, F: Fn(u64) -> T + Sync + Send>(count: u64, f: F) -> Vec<T> {
    use rayon::prelude::*;
    (0..count).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn parallel_map<T: Send, F: Fn(u64) -> T + Sync + Send>(count: u64, f: F) -> Vec<T> {
    (0..count).map(f).collect()
}
