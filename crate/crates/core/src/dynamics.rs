//! Extended promotion and the quantities derived from iterating it.
//!
//! For a labeling `L`, the promotion chain starts at `L^{-1}(1)` and repeatedly
//! steps to the element above with the smallest label until it reaches a
//! maximal element. Promotion then decrements every label off the chain,
//! slides each chain element's label down from its successor and puts `n` on
//! the top of the chain. On linear extensions this is classical promotion.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::labeling::Labeling;
use crate::poset::Poset;
use crate::set::ElementSet;

/// One application of promotion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PromotionTrace {
    pub input: Labeling,
    /// `v_1 < v_2 < .. < v_m`, starting at the element labeled 1.
    pub chain: Vec<usize>,
    pub output: Labeling,
}

/// Frozen elements: the longest top-label suffix that is an upper order ideal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FrozenReport {
    pub frozen: ElementSet,
    pub count: usize,
}

/// The element above `x` with the smallest label, or `None` when `x` is maximal.
pub fn l_successor(p: &Poset, l: &Labeling, x: usize) -> Result<Option<usize>> {
    p.check_labeling(l)?;
    p.check_element(x)?;
    Ok(successor(p, l.labels(), x))
}

#[inline]
fn successor(p: &Poset, labels: &[usize], x: usize) -> Option<usize> {
    p.above(x).iter().min_by_key(|&y| labels[y])
}

/// Writes the promotion chain of `labels` into `chain` (cleared first).
pub(crate) fn promotion_chain_into(p: &Poset, labels: &[usize], chain: &mut Vec<usize>) {
    chain.clear();
    if labels.is_empty() {
        return;
    }
    let mut v = labels.iter().position(|&l| l == 1).expect("label 1");
    chain.push(v);
    while let Some(next) = successor(p, labels, v) {
        chain.push(next);
        v = next;
    }
}

/// Promotes `labels` into `out`; `chain` is scratch space and holds the
/// promotion chain afterwards.
pub(crate) fn promote_into(p: &Poset, labels: &[usize], out: &mut [usize], chain: &mut Vec<usize>) {
    promotion_chain_into(p, labels, chain);
    for (o, &v) in out.iter_mut().zip(labels) {
        *o = v - 1;
    }
    for w in chain.windows(2) {
        out[w[0]] = labels[w[1]] - 1;
    }
    if let Some(&top) = chain.last() {
        out[top] = labels.len();
    }
}

pub fn promote(p: &Poset, l: &Labeling) -> Result<PromotionTrace> {
    p.check_labeling(l)?;
    let mut chain = Vec::with_capacity(p.len());
    let mut out = vec![0; p.len()];
    promote_into(p, l.labels(), &mut out, &mut chain);
    Ok(PromotionTrace {
        input: l.clone(),
        chain,
        output: Labeling::from_vec_unchecked(out),
    })
}

/// `∂^steps(l)`.
pub fn iterate(p: &Poset, l: &Labeling, steps: usize) -> Result<Labeling> {
    p.check_labeling(l)?;
    let mut cur = l.labels().to_vec();
    let mut next = vec![0; cur.len()];
    let mut chain = Vec::new();
    for _ in 0..steps {
        promote_into(p, &cur, &mut next, &mut chain);
        std::mem::swap(&mut cur, &mut next);
    }
    Ok(Labeling::from_vec_unchecked(cur))
}

/// `[l, ∂(l), .., ∂^steps(l)]`.
pub fn orbit(p: &Poset, l: &Labeling, steps: usize) -> Result<Vec<Labeling>> {
    p.check_labeling(l)?;
    let mut out = Vec::with_capacity(steps + 1);
    out.push(l.clone());
    for _ in 0..steps {
        let next = promote(p, out.last().unwrap())?.output;
        out.push(next);
    }
    Ok(out)
}

/// Toggle `τ_i` for `1 <= i <= n - 1`: fixes `l` when the element labeled `i`
/// lies below the element labeled `i + 1`, and swaps the two labels otherwise.
pub fn toggle(p: &Poset, l: &Labeling, i: usize) -> Result<Labeling> {
    p.check_labeling(l)?;
    let n = p.len();
    if i == 0 || i >= n {
        return Err(Error::ToggleIndex {
            index: i,
            max: n.saturating_sub(1),
        });
    }
    let mut labels = l.labels().to_vec();
    toggle_in_place(p, &mut labels, i);
    Ok(Labeling::from_vec_unchecked(labels))
}

fn toggle_in_place(p: &Poset, labels: &mut [usize], i: usize) {
    let a = labels.iter().position(|&v| v == i).expect("label i");
    let b = labels.iter().position(|&v| v == i + 1).expect("label i+1");
    if !p.lt(a, b) {
        labels.swap(a, b);
    }
}

/// `τ_{n-1} ∘ .. ∘ τ_1` applied to `l`.
pub fn promote_via_toggles(p: &Poset, l: &Labeling) -> Result<Labeling> {
    p.check_labeling(l)?;
    let mut labels = l.labels().to_vec();
    for i in 1..p.len() {
        toggle_in_place(p, &mut labels, i);
    }
    Ok(Labeling::from_vec_unchecked(labels))
}

pub fn frozen_report(p: &Poset, l: &Labeling) -> Result<FrozenReport> {
    p.check_labeling(l)?;
    Ok(frozen_of(p, l.labels()))
}

pub(crate) fn frozen_of(p: &Poset, labels: &[usize]) -> FrozenReport {
    let n = labels.len();
    let mut inverse = vec![0; n];
    for (x, &v) in labels.iter().enumerate() {
        inverse[v - 1] = x;
    }
    let mut frozen = ElementSet::EMPTY;
    for j in (1..=n).rev() {
        let x = inverse[j - 1];
        // frozen is already an upper set, so adding x keeps it one iff
        // everything above x is frozen.
        if !p.above(x).is_subset(frozen) {
            break;
        }
        frozen.insert(x);
    }
    FrozenReport {
        frozen,
        count: frozen.len(),
    }
}

/// Smallest `γ` with `∂^γ(l)` a linear extension.
pub fn sorting_time(p: &Poset, l: &Labeling) -> Result<usize> {
    p.check_labeling(l)?;
    Ok(sorting_time_of(p, l.labels()))
}

pub(crate) fn sorting_time_of(p: &Poset, labels: &[usize]) -> usize {
    let mut cur = labels.to_vec();
    let mut next = vec![0; cur.len()];
    let mut chain = Vec::new();
    let mut steps = 0;
    while !p.is_sorted(&cur) {
        promote_into(p, &cur, &mut next, &mut chain);
        std::mem::swap(&mut cur, &mut next);
        steps += 1;
        debug_assert!(steps < cur.len().max(1));
    }
    steps
}

/// `∂^{n-k-2}(l)` is not a linear extension; false whenever `n <= k + 1`.
pub fn is_k_untangled(p: &Poset, l: &Labeling, k: usize) -> Result<bool> {
    p.check_labeling(l)?;
    Ok(is_k_untangled_of(p, l.labels(), k))
}

pub(crate) fn is_k_untangled_of(p: &Poset, labels: &[usize], k: usize) -> bool {
    let n = labels.len();
    n >= k + 2 && sorting_time_of(p, labels) > n - k - 2
}

pub fn is_tangled(p: &Poset, l: &Labeling) -> Result<bool> {
    is_k_untangled(p, l, 0)
}
