mod common;

use proptest::prelude::*;

use common::{all_labelings, poset};
use promotion_core::{
    count_k_untangled, count_linear_extensions, count_sortable, find_k_untangled,
    golden_chains_through, has_k_untangled, is_k_untangled, is_tangled, preimages, promote,
    sorting_profile, sorting_time, Labeling, Poset, SortingProfile, SortingTimeTable, SweepConfig,
};

fn cfg() -> SweepConfig {
    SweepConfig::default()
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn tangled_labelings_put_n_on_a_minimal_element(p in poset(1, 6)) {
        let n = p.len();
        for l in all_labelings(n) {
            if is_tangled(&p, &l).unwrap() {
                prop_assert!(p.is_minimal(l.element_with_label(n)), "{:?}", l);
            }
        }
    }

    #[test]
    fn untangled_existence_matches_ideal_criterion(p in poset(2, 6)) {
        let n = p.len();
        for k in 0..=n - 2 {
            let ideal = p
                .lower_ideals_of_size(k + 2)
                .unwrap()
                .iter()
                .any(|i| !p.is_antichain(i.elements));
            let searched = find_k_untangled(&p, k, &cfg()).unwrap();
            let built = has_k_untangled(&p, k).unwrap();
            prop_assert_eq!(searched.is_some(), ideal, "k = {}", k);
            prop_assert_eq!(built.is_some(), ideal, "k = {}", k);
            if let Some(w) = built {
                prop_assert!(is_k_untangled(&p, &w, k).unwrap());
            }
        }
    }

    #[test]
    fn k_untangled_counts_are_sorting_time_tails(p in poset(2, 6)) {
        let n = p.len();
        let times: Vec<usize> = all_labelings(n).map(|l| sorting_time(&p, &l).unwrap()).collect();
        let mut previous = 0;
        for k in 0..=n - 2 {
            let count: u64 = count_k_untangled(&p, k, &cfg()).unwrap();
            let tail = times.iter().filter(|&&t| t > n - k - 2).count() as u64;
            prop_assert_eq!(count, tail);
            prop_assert!(count >= previous);
            previous = count;
        }
    }

    #[test]
    fn preimages_invert_promotion(p in poset(1, 6)) {
        let n = p.len();
        let mut images = std::collections::HashMap::<Labeling, usize>::new();
        for l in all_labelings(n) {
            *images.entry(promote(&p, &l).unwrap().output).or_default() += 1;
        }
        let mut total = 0;
        for l in all_labelings(n) {
            let pre = preimages(&p, &l).unwrap();
            let top = l.element_with_label(n);
            prop_assert_eq!(!pre.is_empty(), p.is_maximal(top));
            if p.is_maximal(top) {
                prop_assert_eq!(pre.len(), golden_chains_through(&p, &l, top).unwrap().len());
            }
            prop_assert_eq!(pre.len(), images.get(&l).copied().unwrap_or(0));
            for (i, q) in pre.iter().enumerate() {
                prop_assert_eq!(&promote(&p, q).unwrap().output, &l);
                prop_assert!(pre[..i].iter().all(|r| r != q));
            }
            total += pre.len();
        }
        prop_assert_eq!(total as u64, factorial(n));
    }

    #[test]
    fn sortable_formula_matches_sweep(p in poset(1, 7)) {
        let s = count_sortable::<u64>(&p, &cfg()).unwrap();
        prop_assert_eq!(s.formula, s.brute_force);
    }

    #[test]
    fn linear_extension_count_matches_sweep(p in poset(0, 7)) {
        let brute = all_labelings(p.len()).filter(|l| p.is_linear_extension(l).unwrap()).count();
        prop_assert_eq!(count_linear_extensions::<u64>(&p).unwrap(), brute as u64);
    }

    #[test]
    fn profile_invariants(p in poset(1, 6)) {
        let n = p.len();
        let prof: SortingProfile<u64> = sorting_profile(&p, &cfg()).unwrap();
        prop_assert_eq!(prof.a.len(), n);
        prop_assert!(prof.a.windows(2).all(|w| w[0] <= w[1]));
        prop_assert_eq!(*prof.a.last().unwrap(), factorial(n));
        prop_assert_eq!(prof.a_hat.iter().sum::<u64>(), factorial(n));
        prop_assert_eq!(prof.a[0], count_linear_extensions::<u64>(&p).unwrap());
        if n > 1 {
            prop_assert_eq!(prof.a[1], count_sortable::<u64>(&p, &cfg()).unwrap().formula);
        }
        let table = SortingTimeTable::build(&p, &cfg()).unwrap();
        prop_assert_eq!(table.profile::<u64>().unwrap(), prof);
    }
}

#[test]
fn antichains_have_no_untangled_labelings() {
    for n in 2..=6 {
        let p = Poset::antichain(n).unwrap();
        for k in 0..=n - 2 {
            assert_eq!(count_k_untangled::<u64>(&p, k, &cfg()).unwrap(), 0);
            assert_eq!(has_k_untangled(&p, k).unwrap(), None);
        }
    }
}
