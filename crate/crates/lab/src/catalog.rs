//! The fixed test catalog: chains, antichains, grids, inflated stars and
//! trees, and seeded random posets.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use promotion_core::{InflatedForestSpec, InflatedTreeSpec, Poset};

use crate::error::Result;
use crate::generate::{inflated_tree, random_poset};

/// Seed of the first catalog random poset; the others follow consecutively.
pub const CATALOG_SEED: u64 = 1000;
pub const CATALOG_RANDOM: usize = 50;

#[derive(Clone, Debug, PartialEq)]
pub struct Entry {
    pub name: String,
    pub poset: Poset,
    /// Present when the poset is a realized inflated forest.
    pub spec: Option<InflatedForestSpec>,
}

impl Entry {
    pub fn new(name: impl Into<String>, poset: Poset) -> Self {
        Entry {
            name: name.into(),
            poset,
            spec: None,
        }
    }

    pub fn inflated(name: impl Into<String>, trees: Vec<InflatedTreeSpec>) -> Result<Self> {
        let spec = InflatedForestSpec { trees };
        let poset = promotion_core::realize(&spec)?.poset;
        Ok(Entry {
            name: name.into(),
            poset,
            spec: Some(spec),
        })
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }
}

fn inflations() -> Result<Vec<Entry>> {
    let point = |n| InflatedTreeSpec::point(n);
    Ok(vec![
        Entry::inflated(
            "star root 1 over (2,1)",
            vec![inflated_tree(&[-1, 0, 0], &[1, 2, 1])?],
        )?,
        Entry::inflated(
            "star root 2 over (1,1,1)",
            vec![inflated_tree(&[-1, 0, 0, 0], &[2, 1, 1, 1])?],
        )?,
        Entry::inflated(
            "star root 1 over (2,2)",
            vec![inflated_tree(&[-1, 0, 0], &[1, 2, 2])?],
        )?,
        Entry::inflated(
            "star root 1 over (3,1,1)",
            vec![inflated_tree(&[-1, 0, 0, 0], &[1, 3, 1, 1])?],
        )?,
        Entry::inflated(
            "tree root->{a,b}, b->{c,d}, |a|=2",
            vec![inflated_tree(&[-1, 0, 0, 2, 2], &[1, 2, 1, 1, 1])?],
        )?,
        Entry::inflated(
            "tree fibers (1,1,2,1,1)",
            vec![inflated_tree(&[-1, 0, 0, 1, 1], &[1, 1, 2, 1, 1])?],
        )?,
        Entry::inflated(
            "tree with unary root",
            vec![inflated_tree(&[-1, 0, 1, 1], &[2, 1, 1, 1])?],
        )?,
        Entry::inflated(
            "binary tree on 7",
            vec![inflated_tree(&[-1, 0, 0, 1, 1, 2, 2], &[1; 7])?],
        )?,
        Entry::inflated("forest 2-chain + 2-chain", vec![point(2)?, point(2)?])?,
        Entry::inflated("forest 2-chain + point", vec![point(2)?, point(1)?])?,
        Entry::inflated(
            "forest star (1,1) + 3-chain",
            vec![inflated_tree(&[-1, 0, 0], &[1, 1, 1])?, point(3)?],
        )?,
        Entry::inflated(
            "forest star (2,1) + 2-chain + point",
            vec![
                inflated_tree(&[-1, 0, 0], &[1, 2, 1])?,
                point(2)?,
                point(1)?,
            ],
        )?,
    ])
}

/// `count` random posets with `2 <= n <= max_n`, seeds `seed..seed + count`.
/// Each seed also fixes the size and the relation density.
pub fn random_entries(count: usize, max_n: usize, seed: u64) -> Result<Vec<Entry>> {
    (0..count as u64)
        .map(|i| {
            let s = seed + i;
            let mut rng = ChaCha8Rng::seed_from_u64(s);
            let n = rng.gen_range(2..=max_n.max(2));
            let twentieths = rng.gen_range(3..=15u32);
            let density = f64::from(twentieths) / 20.0;
            let poset = random_poset(n, density, s)?;
            Ok(Entry::new(
                format!("random n={n} density={density} seed={s}"),
                poset,
            ))
        })
        .collect()
}

/// Every catalog poset, up to 7 elements, in a fixed order.
pub fn catalog() -> Result<Vec<Entry>> {
    let mut entries = Vec::new();
    for n in 1..=7 {
        entries.push(Entry::new(format!("chain {n}"), Poset::chain(n)?));
    }
    for n in 1..=7 {
        entries.push(Entry::new(format!("antichain {n}"), Poset::antichain(n)?));
    }
    for dims in [[2, 2], [2, 3], [3, 2]] {
        entries.push(Entry::new(
            format!("grid {}x{}", dims[0], dims[1]),
            Poset::product_of_chains(&dims)?,
        ));
    }
    entries.extend(inflations()?);
    entries.extend(random_entries(CATALOG_RANDOM, 6, CATALOG_SEED)?);
    Ok(entries)
}

pub fn up_to(entries: &[Entry], cap: usize) -> Vec<Entry> {
    entries.iter().filter(|e| e.len() <= cap).cloned().collect()
}
