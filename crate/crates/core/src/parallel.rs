//! Thin switching layer between rayon and sequential iteration.
//!
//! With the `parallel` feature (default) the helpers fan work out over the
//! global rayon pool; without it they degrade to plain iterator loops. Every
//! call site folds with an associative-commutative operation or reassembles
//! results by index, so the outcome is identical either way.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Map `f` over `items`, preserving order.
pub fn map_collect<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.into_iter().map(f).collect()
    }
}

/// Map `f` over `items` and reduce with the associative-commutative `fold`.
pub fn map_reduce<T, U, F, R>(items: Vec<T>, f: F, fold: R) -> Option<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
    R: Fn(U, U) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.into_par_iter().map(f).reduce_with(fold)
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.into_iter().map(f).reduce(fold)
    }
}

/// Run `f` on every index and return the result from the lowest index that
/// yields `Some`, independent of completion order.
pub fn first_some_by_index<T, U, F>(items: Vec<T>, f: F) -> Option<(usize, U)>
where
    T: Send,
    U: Send,
    F: Fn(&T) -> Option<U> + Sync + Send,
{
    let hits = map_collect(items, |item| f(&item));
    hits.into_iter()
        .enumerate()
        .find_map(|(i, hit)| hit.map(|u| (i, u)))
}
