//! Data-parallel helpers.
//!
//! Independent work items (bath seeds, batch states, tomography records) go
//! through [`map_collect`], which fans out over rayon when the `parallel`
//! feature is enabled and degrades to a plain sequential map otherwise.
//! Output order always matches input order, so results are deterministic
//! either way. [`map_collect_seq`] is the always-sequential path, kept
//! public so benchmarks can compare the two directly.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[cfg(feature = "parallel")]
pub fn map_collect<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    items.into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_collect<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    items.into_iter().map(f).collect()
}

/// Sequential reference path, independent of the `parallel` feature.
pub fn map_collect_seq<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    F: Fn(T) -> U,
{
    items.into_iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_and_sequential_agree_and_preserve_order() {
        let items: Vec<u64> = (0..64).collect();
        let f = |x: u64| x * x + 1;
        assert_eq!(map_collect(items.clone(), f), map_collect_seq(items, f));
    }
}
