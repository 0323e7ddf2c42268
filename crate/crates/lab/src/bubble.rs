//! Bubble sort passes and the permutation statistic used to compare them
//! with promotion on chains.

use promotion_core::Labeling;

/// One left-to-right pass: for `i = 1..n-1`, swap entries `i` and `i+1` when
/// they are out of order. The largest entry ends up last.
pub fn bubble_sort_pass(perm: &[usize]) -> Vec<usize> {
    let mut out = perm.to_vec();
    for i in 1..out.len() {
        if out[i - 1] > out[i] {
            out.swap(i - 1, i);
        }
    }
    out
}

/// `σ̂(L) = σ(L)^{-1}` where `σ(L) = L(x_1) .. L(x_n)` reads the labels along
/// the chain `x_1 < .. < x_n` (element ids `0..n`).
pub fn sigma_hat(l: &Labeling) -> Vec<usize> {
    l.inverse().into_iter().map(|x| x + 1).collect()
}
