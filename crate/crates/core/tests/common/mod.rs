#![allow(dead_code)]

use proptest::prelude::*;

use promotion_core::{InflatedTreeSpec, Labeling, Poset, RootedTree};

/// Random poset on `lo..=hi` elements: each pair `i < j` is related with
/// probability one half, then closed transitively.
pub fn poset(lo: usize, hi: usize) -> impl Strategy<Value = Poset> {
    (lo..=hi).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(move |bits| {
            let mut pairs = Vec::new();
            let mut it = bits.into_iter();
            for i in 0..n {
                for j in i + 1..n {
                    if it.next().unwrap() {
                        pairs.push((i, j));
                    }
                }
            }
            Poset::new(n, &pairs).unwrap()
        })
    })
}

pub fn labeling(n: usize) -> impl Strategy<Value = Labeling> {
    Just((1..=n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Labeling::new(v).unwrap())
}

pub fn poset_and_labeling(lo: usize, hi: usize) -> impl Strategy<Value = (Poset, Labeling)> {
    poset(lo, hi).prop_flat_map(|p| {
        let n = p.len();
        (Just(p), labeling(n))
    })
}

/// Inflated tree with chain fibers and at most `max_size` elements.
pub fn tree_spec(max_size: usize) -> impl Strategy<Value = InflatedTreeSpec> {
    (1..=max_size.min(5))
        .prop_flat_map(move |m| {
            (
                prop::collection::vec(any::<prop::sample::Index>(), m),
                prop::collection::vec(1..=3usize, m),
            )
        })
        .prop_filter("too many elements", move |(_, fibers)| {
            fibers.iter().sum::<usize>() <= max_size
        })
        .prop_map(|(picks, fibers)| {
            let parents = (0..fibers.len())
                .map(|v| {
                    if v == 0 {
                        None
                    } else {
                        Some(picks[v].index(v))
                    }
                })
                .collect();
            InflatedTreeSpec::new(RootedTree::new(parents).unwrap(), fibers).unwrap()
        })
}

pub fn all_labelings(n: usize) -> impl Iterator<Item = Labeling> {
    (0..(1..=n as u64).product::<u64>())
        .map(move |r| Labeling::new(promotion_core::enumerate::unrank_labeling(n, r)).unwrap())
}
