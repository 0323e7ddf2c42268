//! Extended promotion on labelings of finite posets.
//!
//! Elements of a poset on `n` elements are the ids `0..n`; a labeling assigns
//! each element a distinct label in `1..=n`. Counting functions are generic
//! over the integer type used for results; [`Count`] and [`Fraction`] are the
//! arbitrary-precision defaults.

pub mod closed_forms;
pub mod dynamics;
pub mod enumerate;
pub mod error;
pub mod labeling;
pub mod poset;
pub mod scalar;
pub mod set;

pub use closed_forms::{
    leaf_coefficients, realize, realize_tree, reduce, tangled_count_forest,
    tangled_count_from_components, tangled_count_star, tangled_count_tree,
    tangled_count_unique_min, InflatedForestSpec, InflatedTreeSpec, LeafPathCoefficients,
    Realization, Reduction, RootedTree,
};
pub use dynamics::{
    frozen_report, is_k_untangled, is_tangled, iterate, l_successor, orbit, promote,
    promote_via_toggles, sorting_time, toggle, FrozenReport, PromotionTrace,
};
pub use enumerate::{
    count_k_untangled, count_linear_extensions, count_sortable, count_sortable_brute_force,
    count_tangled, find_k_untangled, golden_chains_through, golden_elements, has_k_untangled,
    preimages, sortable_formula, sorting_profile, sorting_time_histogram, tangled_labelings,
    SortableCount, SortingProfile, SortingTimeTable, SweepConfig, DEFAULT_CAP,
};
pub use error::{Error, Result};
pub use labeling::{standardize, Labeling};
pub use poset::{Component, OrderIdeal, Poset};
pub use scalar::CountScalar;
pub use set::{ElementSet, MAX_ELEMENTS};

/// Exact count type.
pub type Count = num_bigint::BigUint;
/// Exact non-negative rational, used for mean sorting times.
pub type Fraction = num_rational::Ratio<Count>;
