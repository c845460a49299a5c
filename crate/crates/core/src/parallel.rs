//! Order-preserving parallel map with a single-threaded escape hatch.

use std::sync::OnceLock;

use rayon::prelude::*;

/// Setting this variable to anything but `0` or an empty string forces all
/// internal loops to run sequentially.
pub const SINGLE_THREAD_ENV: &str = "RSPAN_SINGLE_THREAD";

pub fn single_threaded() -> bool {
    static FLAG: OnceLock<bool> = OnceLock::new();
    *FLAG.get_or_init(|| std::env::var(SINGLE_THREAD_ENV).is_ok_and(|v| !v.is_empty() && v != "0"))
}

/// `(0..count).map(f)` in index order, evaluated in parallel unless disabled.
pub fn map_indices<T, F>(count: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    if single_threaded() || count < 2 {
        (0..count).map(f).collect()
    } else {
        (0..count).into_par_iter().map(f).collect()
    }
}
