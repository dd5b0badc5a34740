//! Thin switch between rayon and sequential execution.
//!
//! Every helper produces identical results in both modes: maps are
//! element-wise, and reductions sum fixed-size blocks left to right before
//! combining the block totals in index order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

const BLOCK: usize = 512;

/// `(0..n).map(f).collect()`, possibly in parallel.
pub(crate) fn map<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

/// Apply `f` to every element with its index.
pub(crate) fn for_each_mut<T, F>(data: &mut [T], f: F)
where
    T: Send,
    F: Fn(usize, &mut T) + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        data.par_iter_mut().enumerate().for_each(|(i, x)| f(i, x));
    }
    #[cfg(not(feature = "parallel"))]
    {
        data.iter_mut().enumerate().for_each(|(i, x)| f(i, x));
    }
}

/// Deterministic blocked sum of `f(i)` over `0..n`.
pub(crate) fn sum<F>(n: usize, f: F) -> f64
where
    F: Fn(usize) -> f64 + Sync + Send,
{
    let blocks = n.div_ceil(BLOCK);
    let partial = map(blocks, |b| {
        let end = ((b + 1) * BLOCK).min(n);
        (b * BLOCK..end).fold(0.0, |acc, i| acc + f(i))
    });
    partial.into_iter().fold(0.0, |acc, x| acc + x)
}

/// Deterministic blocked maximum of `f(i)` over `0..n` (0 for empty ranges).
pub(crate) fn max<F>(n: usize, f: F) -> f64
where
    F: Fn(usize) -> f64 + Sync + Send,
{
    let blocks = n.div_ceil(BLOCK);
    let partial = map(blocks, |b| {
        let end = ((b + 1) * BLOCK).min(n);
        (b * BLOCK..end).fold(0.0_f64, |acc, i| acc.max(f(i)))
    });
    partial.into_iter().fold(0.0, f64::max)
}
