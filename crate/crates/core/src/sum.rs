//! Order-fixed floating-point summation.
//!
//! Parallel reductions in this crate first produce one partial result per
//! fixed chunk (a grid row), then combine the partials with
//! [`pairwise_sum`]. The combination order depends only on the input length,
//! never on the number of threads, so results are bit-identical across
//! thread counts.

/// Below this length the slice is summed left to right.
const NAIVE_THRESHOLD: usize = 32;

/// Recursive pairwise summation, error `O(ε log n)`.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    if values.len() <= NAIVE_THRESHOLD {
        return values.iter().fold(0.0, |acc, v| acc + v);
    }
    let (left, right) = values.split_at(values.len() / 2);
    pairwise_sum(left) + pairwise_sum(right)
}
