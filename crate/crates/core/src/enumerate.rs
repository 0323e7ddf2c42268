//! Exhaustive counters over all `n!` labelings and the structural counts they
//! are checked against.
//!
//! Sweeps walk labelings in lexicographic order of their label arrays. The
//! permutation space is cut into fixed-size blocks of consecutive ranks, the
//! blocks are folded in parallel and the partial results are combined in
//! block order, so every result is independent of the worker count.

use std::collections::HashMap;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::dynamics::{self, frozen_of, is_k_untangled_of, promote_into, sorting_time_of};
use crate::error::{Error, Result};
use crate::labeling::Labeling;
use crate::poset::Poset;
use crate::scalar::{self, CountScalar};
use crate::set::ElementSet;

/// Default guard on the size of exhaustive sweeps.
pub const DEFAULT_CAP: usize = 9;

const BLOCK: u64 = 2520;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SweepConfig {
    /// Largest `n` an exhaustive operation accepts.
    pub cap: usize,
    /// Worker threads; `None` uses the global rayon pool.
    pub jobs: Option<usize>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            cap: DEFAULT_CAP,
            jobs: None,
        }
    }
}

impl SweepConfig {
    pub fn with_cap(cap: usize) -> Self {
        SweepConfig { cap, jobs: None }
    }

    pub fn check(&self, n: usize) -> Result<()> {
        if n > self.cap {
            Err(Error::CapExceeded { n, cap: self.cap })
        } else {
            Ok(())
        }
    }

    fn run<R: Send>(&self, f: impl FnOnce() -> R + Send) -> R {
        match self.jobs {
            Some(jobs) => rayon::ThreadPoolBuilder::new()
                .num_threads(jobs.max(1))
                .build()
                .expect("thread pool")
                .install(f),
            None => f(),
        }
    }
}

pub(crate) fn factorial_u64(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Advances `a` to the next permutation in lexicographic order.
pub fn next_permutation(a: &mut [usize]) -> bool {
    let Some(i) = (1..a.len()).rev().find(|&i| a[i - 1] < a[i]) else {
        return false;
    };
    let j = (i..a.len()).rev().find(|&j| a[j] > a[i - 1]).unwrap();
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// The label array of lexicographic rank `rank` among labelings of size `n`.
pub fn unrank_labeling(n: usize, mut rank: u64) -> Vec<usize> {
    let mut pool: Vec<usize> = (1..=n).collect();
    let mut out = Vec::with_capacity(n);
    for i in (0..n).rev() {
        let f = factorial_u64(i);
        let idx = (rank / f) as usize;
        rank %= f;
        out.push(pool.remove(idx));
    }
    out
}

/// Lexicographic rank of a label array.
pub fn rank_labeling(labels: &[usize]) -> u64 {
    let n = labels.len();
    let mut rank = 0;
    for i in 0..n {
        let smaller_after = labels[i + 1..].iter().filter(|&&v| v < labels[i]).count() as u64;
        rank += smaller_after * factorial_u64(n - 1 - i);
    }
    rank
}

/// Folds `f` over every labeling of size `n`.
///
/// `fold` sees label arrays in lexicographic order within a block; block
/// results are merged left to right with `combine`.
pub fn fold_labelings<A, I, F, C>(
    n: usize,
    cfg: &SweepConfig,
    identity: I,
    fold: F,
    combine: C,
) -> Result<A>
where
    A: Send,
    I: Fn() -> A + Sync + Send,
    F: Fn(A, &[usize]) -> A + Sync + Send,
    C: Fn(A, A) -> A + Sync + Send,
{
    cfg.check(n)?;
    let total = factorial_u64(n);
    let blocks = total.div_ceil(BLOCK);
    let parts: Vec<A> = cfg.run(|| {
        (0..blocks)
            .into_par_iter()
            .map(|b| {
                let start = b * BLOCK;
                let len = BLOCK.min(total - start);
                let mut labels = unrank_labeling(n, start);
                let mut acc = identity();
                for i in 0..len {
                    acc = fold(acc, &labels);
                    if i + 1 < len {
                        next_permutation(&mut labels);
                    }
                }
                acc
            })
            .collect()
    });
    Ok(parts.into_iter().fold(identity(), combine))
}

fn count_where<C: CountScalar>(
    n: usize,
    cfg: &SweepConfig,
    pred: impl Fn(&[usize]) -> bool + Sync + Send,
) -> Result<C> {
    let hits = fold_labelings(n, cfg, || 0u64, |acc, l| acc + pred(l) as u64, |a, b| a + b)?;
    scalar::from_u64(hits)
}

fn first_where(
    n: usize,
    cfg: &SweepConfig,
    pred: impl Fn(&[usize]) -> bool + Sync + Send,
) -> Result<Option<Labeling>> {
    let found = fold_labelings(
        n,
        cfg,
        || None,
        |acc: Option<Vec<usize>>, l| acc.or_else(|| pred(l).then(|| l.to_vec())),
        |a, b| a.or(b),
    )?;
    Ok(found.map(Labeling::from_vec_unchecked))
}

/// Every labeling (in lexicographic order) satisfying `pred`.
pub fn collect_labelings(
    p: &Poset,
    cfg: &SweepConfig,
    pred: impl Fn(&Poset, &[usize]) -> bool + Sync + Send,
) -> Result<Vec<Labeling>> {
    let found = fold_labelings(
        p.len(),
        cfg,
        Vec::new,
        |mut acc: Vec<Vec<usize>>, l| {
            if pred(p, l) {
                acc.push(l.to_vec());
            }
            acc
        },
        |mut a, b| {
            a.extend(b);
            a
        },
    )?;
    Ok(found
        .into_iter()
        .map(Labeling::from_vec_unchecked)
        .collect())
}

/// `|𝓛(P)|` by dynamic programming over lower order ideals.
pub fn count_linear_extensions<C: CountScalar>(p: &Poset) -> Result<C> {
    fn extend<C: CountScalar>(
        p: &Poset,
        placed: ElementSet,
        memo: &mut HashMap<ElementSet, C>,
    ) -> Result<C> {
        if placed.len() == p.len() {
            return Ok(C::one());
        }
        if let Some(c) = memo.get(&placed) {
            return Ok(c.clone());
        }
        let mut total = C::zero();
        for x in placed.complement(p.len()).iter() {
            if p.below(x).is_subset(placed) {
                let rest = extend(p, placed.with(x), memo)?;
                total = scalar::checked_add(&total, &rest)?;
            }
        }
        memo.insert(placed, total.clone());
        Ok(total)
    }
    // e(P) = multinomial(n; n_1, ..., n_r) · Π e(P_i) over connected components.
    let components = p.connected_components();
    if components.len() == 1 {
        return extend(p, ElementSet::EMPTY, &mut HashMap::new());
    }
    let mut total = C::one();
    let mut placed = 0;
    for c in &components {
        for j in 1..=c.poset.len() {
            let widened = scalar::checked_mul(&total, &scalar::from_usize(placed + j)?)?;
            total = widened / scalar::from_usize(j)?;
        }
        placed += c.poset.len();
        let inner: C = extend(&c.poset, ElementSet::EMPTY, &mut HashMap::new())?;
        total = scalar::checked_mul(&total, &inner)?;
    }
    Ok(total)
}

/// Number of labelings `L` with `∂^{n-k-2}(L)` not a linear extension.
pub fn count_k_untangled<C: CountScalar>(p: &Poset, k: usize, cfg: &SweepConfig) -> Result<C> {
    count_where(p.len(), cfg, |l| is_k_untangled_of(p, l, k))
}

pub fn count_tangled<C: CountScalar>(p: &Poset, cfg: &SweepConfig) -> Result<C> {
    count_k_untangled(p, 0, cfg)
}

/// Every tangled labeling, in lexicographic order.
pub fn tangled_labelings(p: &Poset, cfg: &SweepConfig) -> Result<Vec<Labeling>> {
    collect_labelings(p, cfg, |p, l| is_k_untangled_of(p, l, 0))
}

/// Lexicographically first k-untangled labeling, found by exhaustive search.
pub fn find_k_untangled(p: &Poset, k: usize, cfg: &SweepConfig) -> Result<Option<Labeling>> {
    first_where(p.len(), cfg, |l| is_k_untangled_of(p, l, k))
}

/// Decides whether `p` has a k-untangled labeling from its lower order
/// ideals: one exists iff some ideal of size `k + 2` is not an antichain.
///
/// When it exists, the returned witness puts `n` and `n - 1` on a comparable
/// pair `x < y` of the first such ideal, the labels `n-k-1..=n-2` on the rest
/// of the ideal and `1..=n-k-2` on the complement (each in increasing id
/// order). The first `n - k - 2` promotions only shift the ideal's labels
/// down, leaving `y` below `x` in label order.
pub fn has_k_untangled(p: &Poset, k: usize) -> Result<Option<Labeling>> {
    let n = p.len();
    if n < k + 2 {
        return Err(Error::Domain(format!(
            "k-untangled existence needs 0 <= k <= n - 2, got k = {k}, n = {n}"
        )));
    }
    let Some(ideal) = p
        .lower_ideals_of_size(k + 2)?
        .into_iter()
        .find(|i| !i.is_antichain)
    else {
        return Ok(None);
    };
    let q = ideal.elements;
    let (x, y) = q
        .iter()
        .find_map(|x| p.above(x).intersection(q).first().map(|y| (x, y)))
        .expect("ideal is not an antichain");
    let mut labels = vec![0; n];
    labels[x] = n;
    labels[y] = n - 1;
    let rest = q.without(x).without(y);
    for (offset, z) in rest.iter().enumerate() {
        labels[z] = n - k - 1 + offset;
    }
    for (offset, z) in q.complement(n).iter().enumerate() {
        labels[z] = 1 + offset;
    }
    Ok(Some(Labeling::from_vec_unchecked(labels)))
}

/// Elements all of whose strict upper bounds carry larger labels.
pub fn golden_elements(p: &Poset, l: &Labeling) -> Result<ElementSet> {
    p.check_labeling(l)?;
    Ok((0..p.len())
        .filter(|&x| p.above(x).iter().all(|y| l.label(y) > l.label(x)))
        .collect())
}

/// All chains of elements of `allowed` that contain `x`, each listed in
/// increasing order; sorted lexicographically.
pub fn chains_through_within(p: &Poset, x: usize, allowed: ElementSet) -> Vec<Vec<usize>> {
    // Chains strictly below (or above) `x`, grown one extreme at a time.
    fn grow(
        p: &Poset,
        from: usize,
        allowed: ElementSet,
        down: bool,
        acc: &mut Vec<Vec<usize>>,
        cur: &mut Vec<usize>,
    ) {
        acc.push(cur.clone());
        let next = if down { p.below(from) } else { p.above(from) };
        for z in next.intersection(allowed).iter() {
            cur.push(z);
            grow(p, z, allowed, down, acc, cur);
            cur.pop();
        }
    }
    let mut downs = Vec::new();
    grow(p, x, allowed, true, &mut downs, &mut Vec::new());
    let mut ups = Vec::new();
    grow(p, x, allowed, false, &mut ups, &mut Vec::new());
    let mut chains = Vec::with_capacity(downs.len() * ups.len());
    for d in &downs {
        for u in &ups {
            let mut c: Vec<usize> = d.iter().rev().copied().collect();
            c.push(x);
            c.extend(u);
            chains.push(c);
        }
    }
    chains.sort();
    chains
}

/// L-golden chains containing `x`.
pub fn golden_chains_through(p: &Poset, l: &Labeling, x: usize) -> Result<Vec<Vec<usize>>> {
    p.check_element(x)?;
    let golden = golden_elements(p, l)?;
    if !golden.contains(x) {
        return Ok(Vec::new());
    }
    Ok(chains_through_within(p, x, golden))
}

/// `∂^{-1}(l)`, one labeling per L-golden chain through `L^{-1}(n)`; empty
/// unless `L^{-1}(n)` is maximal. Sorted lexicographically.
pub fn preimages(p: &Poset, l: &Labeling) -> Result<Vec<Labeling>> {
    p.check_labeling(l)?;
    let n = p.len();
    if n == 0 {
        return Ok(vec![l.clone()]);
    }
    let top = l.element_with_label(n);
    if !p.is_maximal(top) {
        return Ok(Vec::new());
    }
    let mut out: Vec<Labeling> = golden_chains_through(p, l, top)?
        .into_iter()
        .map(|chain| {
            let mut labels: Vec<usize> = l.labels().iter().map(|&v| v + 1).collect();
            for w in chain.windows(2) {
                labels[w[1]] = l.label(w[0]) + 1;
            }
            labels[chain[0]] = 1;
            Labeling::from_vec_unchecked(labels)
        })
        .collect();
    out.sort();
    Ok(out)
}

/// How many labelings promote onto each labeling, keyed by label array.
/// Labelings outside the image are absent.
pub fn image_multiplicities(p: &Poset, cfg: &SweepConfig) -> Result<HashMap<Vec<usize>, u64>> {
    let n = p.len();
    fold_labelings(
        n,
        cfg,
        HashMap::new,
        |mut acc, l| {
            let mut out = vec![0; n];
            promote_into(p, l, &mut out, &mut Vec::new());
            *acc.entry(out).or_insert(0) += 1;
            acc
        },
        |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        },
    )
}

/// Sortable-label count evaluated two ways.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SortableCount<C> {
    /// `Σ_{x maximal} (chains through x) · |𝓛(P \ {x})|`.
    pub formula: C,
    /// `#{L : ∂(L) ∈ 𝓛(P)}` by exhaustive sweep.
    pub brute_force: C,
}

impl<C: PartialEq> SortableCount<C> {
    pub fn agree(&self) -> bool {
        self.formula == self.brute_force
    }
}

pub fn sortable_formula<C: CountScalar>(p: &Poset) -> Result<C> {
    let mut total = C::zero();
    for x in p.maximal_elements().iter() {
        let chains: C = p.chains_through(x)?;
        let (rest, _) = p.delete(x)?;
        let ext: C = count_linear_extensions(&rest)?;
        total = scalar::checked_add(&total, &scalar::checked_mul(&chains, &ext)?)?;
    }
    Ok(total)
}

pub fn count_sortable_brute_force<C: CountScalar>(p: &Poset, cfg: &SweepConfig) -> Result<C> {
    let n = p.len();
    count_where(n, cfg, |l| {
        let mut out = vec![0; n];
        promote_into(p, l, &mut out, &mut Vec::new());
        p.is_sorted(&out)
    })
}

pub fn count_sortable<C: CountScalar>(p: &Poset, cfg: &SweepConfig) -> Result<SortableCount<C>> {
    Ok(SortableCount {
        formula: sortable_formula(p)?,
        brute_force: count_sortable_brute_force(p, cfg)?,
    })
}

/// `a_k = #{L : ∂^k(L) ∈ 𝓛(P)}` for `0 <= k < n`, and its first differences.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SortingProfile<C> {
    pub a: Vec<C>,
    pub a_hat: Vec<C>,
}

impl<C: CountScalar> SortingProfile<C> {
    /// Builds the profile from `hist[t]` = number of labelings with sorting time `t`.
    pub fn from_histogram(hist: &[u64]) -> Result<Self> {
        let mut a = Vec::with_capacity(hist.len());
        let mut a_hat = Vec::with_capacity(hist.len());
        let mut running = C::zero();
        for &h in hist {
            let h: C = scalar::from_u64(h)?;
            running = scalar::checked_add(&running, &h)?;
            a.push(running.clone());
            a_hat.push(h);
        }
        Ok(SortingProfile { a, a_hat })
    }

    /// Exact mean number of promotions needed to sort a uniformly random labeling.
    pub fn mean_sorting_time_exact(&self) -> Result<Ratio<C>> {
        let mut weighted = C::zero();
        for (k, h) in self.a_hat.iter().enumerate() {
            weighted =
                scalar::checked_add(&weighted, &scalar::checked_mul(h, &scalar::from_usize(k)?)?)?;
        }
        let total = self.a.last().cloned().unwrap_or_else(C::one);
        Ok(Ratio::new(weighted, total))
    }

    pub fn mean_sorting_time(&self) -> f64 {
        let total = self.a.last().and_then(|t| t.to_f64()).unwrap_or(1.0);
        let weighted: f64 = self
            .a_hat
            .iter()
            .enumerate()
            .map(|(k, h)| k as f64 * h.to_f64().unwrap_or(f64::NAN))
            .sum();
        weighted / total
    }
}

/// `hist[t]` = number of labelings with sorting time `t`, for `t < max(n, 1)`.
pub fn sorting_time_histogram(p: &Poset, cfg: &SweepConfig) -> Result<Vec<u64>> {
    let len = p.len().max(1);
    fold_labelings(
        p.len(),
        cfg,
        || vec![0u64; len],
        |mut acc, l| {
            acc[sorting_time_of(p, l)] += 1;
            acc
        },
        |mut a, b| {
            a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
            a
        },
    )
}

pub fn sorting_profile<C: CountScalar>(p: &Poset, cfg: &SweepConfig) -> Result<SortingProfile<C>> {
    SortingProfile::from_histogram(&sorting_time_histogram(p, cfg)?)
}

/// Sorting times of every labeling, indexed by lexicographic rank.
///
/// Built by following each orbit until it meets a labeling whose time is
/// already known, so every labeling is promoted at most once.
#[derive(Clone, Debug)]
pub struct SortingTimeTable {
    n: usize,
    times: Vec<u8>,
}

impl SortingTimeTable {
    const UNKNOWN: u8 = u8::MAX;

    pub fn build(p: &Poset, cfg: &SweepConfig) -> Result<Self> {
        let n = p.len();
        cfg.check(n)?;
        let total = factorial_u64(n) as usize;
        let mut times = vec![Self::UNKNOWN; total];
        let mut labels: Vec<usize> = (1..=n).collect();
        let mut path: Vec<usize> = Vec::new();
        let mut chain = Vec::new();
        for start in 0..total {
            if times[start] == Self::UNKNOWN {
                path.clear();
                let mut cur = labels.clone();
                let mut rank = start;
                let base = loop {
                    if times[rank] != Self::UNKNOWN {
                        break times[rank];
                    }
                    if p.is_sorted(&cur) {
                        times[rank] = 0;
                        break 0;
                    }
                    path.push(rank);
                    let mut next = vec![0; n];
                    promote_into(p, &cur, &mut next, &mut chain);
                    cur = next;
                    rank = rank_labeling(&cur) as usize;
                };
                for (depth, &r) in path.iter().rev().enumerate() {
                    times[r] = base + depth as u8 + 1;
                }
            }
            next_permutation(&mut labels);
        }
        Ok(SortingTimeTable { n, times })
    }

    pub fn sorting_time(&self, l: &Labeling) -> Result<usize> {
        if l.len() != self.n {
            return Err(Error::Dimension {
                expected: self.n,
                actual: l.len(),
            });
        }
        Ok(self.times[rank_labeling(l.labels()) as usize] as usize)
    }

    pub fn histogram(&self) -> Vec<u64> {
        let mut hist = vec![0u64; self.n.max(1)];
        for &t in &self.times {
            hist[t as usize] += 1;
        }
        hist
    }

    pub fn profile<C: CountScalar>(&self) -> Result<SortingProfile<C>> {
        SortingProfile::from_histogram(&self.histogram())
    }
}

/// Sizes of frozen sets along the orbit `L, ∂(L), .., ∂^{n-1}(L)`.
pub fn frozen_counts_along_orbit(p: &Poset, l: &Labeling) -> Result<Vec<usize>> {
    let orbit = dynamics::orbit(p, l, p.len().saturating_sub(1))?;
    Ok(orbit
        .iter()
        .map(|m| frozen_of(p, m.labels()).count)
        .collect())
}
