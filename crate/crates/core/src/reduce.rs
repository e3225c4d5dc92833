//! Deterministic summation.
//!
//! A sum is defined as a pairwise tree over fixed-size chunks: every chunk
//! is reduced pairwise, then the chunk totals are reduced pairwise. The
//! parallel and sequential paths evaluate the same tree, so results are
//! bit-identical for any worker count.

use std::ops::Add;

use num_traits::Zero;
use rayon::prelude::*;

pub const CHUNK: usize = 4096;

pub fn pairwise_sum<T: Copy + Zero + Add<Output = T>>(xs: &[T]) -> T {
    if xs.len() <= 8 {
        return xs.iter().fold(T::zero(), |a, &b| a + b);
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

pub fn tree_sum<T: Copy + Zero + Add<Output = T>>(xs: &[T]) -> T {
    let partial: Vec<T> = xs.chunks(CHUNK).map(pairwise_sum).collect();
    pairwise_sum(&partial)
}

pub fn par_tree_sum<T: Copy + Zero + Add<Output = T> + Send + Sync>(xs: &[T]) -> T {
    let partial: Vec<T> = xs.par_chunks(CHUNK).map(pairwise_sum).collect();
    pairwise_sum(&partial)
}

/// Rounding bound for [`tree_sum`] of values whose magnitudes sum to `abs_sum`.
pub fn rounding_bound(len: usize, abs_sum: f64) -> f64 {
    let depth = (len.max(2) as f64).log2().ceil() + 8.0;
    2.0 * depth * f64::EPSILON * abs_sum
}
