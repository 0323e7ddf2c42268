//! Poset families.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use promotion_core::{realize, InflatedForestSpec, InflatedTreeSpec, Poset, RootedTree};

use crate::error::{LabError, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    Chain(usize),
    Antichain(usize),
    Product(Vec<usize>),
    /// Parent array with `-1` at the root; every fiber is a single element.
    Tree(Vec<i64>),
    Inflated(InflatedForestSpec),
    Random {
        n: usize,
        density: f64,
        seed: u64,
    },
}

pub fn generate(family: &Family) -> Result<Poset> {
    Ok(match family {
        Family::Chain(n) => Poset::chain(*n)?,
        Family::Antichain(n) => Poset::antichain(*n)?,
        Family::Product(dims) => Poset::product_of_chains(dims)?,
        Family::Tree(parents) => RootedTree::from_signed(parents)?.to_poset()?,
        Family::Inflated(spec) => realize(spec)?.poset,
        Family::Random { n, density, seed } => random_poset(*n, *density, *seed)?,
    })
}

/// Each pair `i < j` is related independently with probability `density`,
/// then the relation is closed transitively. Same arguments, same poset.
pub fn random_poset(n: usize, density: f64, seed: u64) -> Result<Poset> {
    if !(0.0..=1.0).contains(&density) {
        return Err(LabError::Usage(format!(
            "density {density} is not in [0, 1]"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                pairs.push((i, j));
            }
        }
    }
    Ok(Poset::new(n, &pairs)?)
}

/// A single inflated tree with one-element fibers except where given.
pub fn inflated_tree(parents: &[i64], fibers: &[usize]) -> Result<InflatedTreeSpec> {
    Ok(InflatedTreeSpec::new(
        RootedTree::from_signed(parents)?,
        fibers.to_vec(),
    )?)
}
