//! Index-parallel map that falls back to a plain loop when the `parallel`
//! feature is off or the caller opts out at runtime. Output order always
//! matches index order.

pub fn map_indexed<T, F>(n: usize, parallel: bool, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel {
        use rayon::prelude::*;
        return (0..n).into_par_iter().map(f).collect();
    }
    let _ = parallel;
    (0..n).map(f).collect()
}

/// Whether `map_indexed` can actually run on the thread pool.
pub const fn available() -> bool {
    cfg!(feature = "parallel")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_paths_agree_in_order() {
        let a = map_indexed(1000, true, |i| i * i);
        let b = map_indexed(1000, false, |i| i * i);
        assert_eq!(a, b);
        assert_eq!(a[31], 961);
    }
}
