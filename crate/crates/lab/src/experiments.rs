//! Verification suites and conjecture scans over posets.
//!
//! Every check that depends on promotion takes the promotion map as a
//! parameter, so a deliberately broken map can be fed in to make sure the
//! suite notices.

use std::collections::HashMap;
use std::time::Instant;

use rayon::prelude::*;

use promotion_core::enumerate::next_permutation;
use promotion_core::scalar::factorial;
use promotion_core::{
    count_linear_extensions, frozen_report, golden_chains_through, has_k_untangled, preimages,
    promote, sortable_formula, sorting_profile, tangled_count_forest, tangled_count_unique_min,
    toggle, Count, Labeling, Poset, SortingProfile, SweepConfig,
};

use crate::bubble::{bubble_sort_pass, sigma_hat};
use crate::catalog::Entry;
use crate::error::Result;
use crate::report::{Check, ExperimentReport, Status, Witness};

/// A promotion map `L -> ∂(L)` on labelings of a poset.
pub type Promoter = dyn Fn(&Poset, &Labeling) -> Labeling + Sync;

pub fn core_promote(p: &Poset, l: &Labeling) -> Labeling {
    promote(p, l).expect("labeling matches poset").output
}

fn all_labelings(n: usize) -> impl Iterator<Item = Labeling> {
    let mut next = Some((1..=n).collect::<Vec<_>>());
    std::iter::from_fn(move || {
        let cur = next.take()?;
        let mut succ = cur.clone();
        if next_permutation(&mut succ) {
            next = Some(succ);
        }
        Some(Labeling::new(cur).expect("permutation"))
    })
}

fn orbit_with(p: &Poset, l: &Labeling, steps: usize, f: &Promoter) -> Vec<Labeling> {
    let mut out = vec![l.clone()];
    for _ in 0..steps {
        let next = f(p, out.last().unwrap());
        out.push(next);
    }
    out
}

fn sorted(p: &Poset, l: &Labeling) -> bool {
    p.is_linear_extension(l).expect("labeling matches poset")
}

/// Sorting time under `f`, or `n` if `n - 1` steps do not sort `l`.
fn sorting_time_with(p: &Poset, l: &Labeling, f: &Promoter) -> usize {
    let n = p.len();
    let mut cur = l.clone();
    for gamma in 0..n.max(1) {
        if sorted(p, &cur) {
            return gamma;
        }
        cur = f(p, &cur);
    }
    n.max(1)
}

fn components(p: &Poset) -> Vec<usize> {
    let mut comp = vec![0; p.len()];
    for (i, c) in p.connected_components().iter().enumerate() {
        for &x in &c.elements {
            comp[x] = i;
        }
    }
    comp
}

fn join<T: std::fmt::Display>(values: &[T]) -> String {
    values
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

/// Which parts of the catalog each family of checks covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyScope {
    /// Largest poset for the dynamics, untangling and closed-form checks.
    pub cap: usize,
    /// Largest poset for the preimage checks.
    pub preimage_cap: usize,
    /// Largest poset for the sortable-count check.
    pub sortable_cap: usize,
}

impl VerifyScope {
    pub fn new(cap: usize) -> Self {
        VerifyScope {
            cap,
            preimage_cap: cap.min(5),
            sortable_cap: cap,
        }
    }

    fn largest(&self) -> usize {
        self.cap.max(self.preimage_cap).max(self.sortable_cap)
    }
}

pub const VERIFY_CHECKS: [&str; 12] = [
    "toggle-equivalence",
    "termination",
    "frozen-monotonicity",
    "top-label-freeze",
    "component-locality",
    "tangled-frozen-counts",
    "linear-extensions-permuted",
    "ideal-criterion",
    "tangled-minimality",
    "preimages",
    "sortable-formula",
    "closed-form-tangled",
];

/// All checks on a single poset, in [`VERIFY_CHECKS`] order. Checks outside
/// the scope for this poset's size are omitted.
pub fn verify_entry(entry: &Entry, scope: VerifyScope, f: &Promoter) -> Result<Vec<Check>> {
    let p = &entry.poset;
    let n = p.len();
    let mut checks = Vec::new();
    let new = |name: &str| Check::new(name, entry.name.clone());
    let wit = |l: &Labeling, note: String| Some(Witness::new(p, Some(l), note));

    if n <= scope.cap {
        let mut toggles = new("toggle-equivalence");
        let mut termination = new("termination");
        let mut monotone = new("frozen-monotonicity");
        let mut freeze = new("top-label-freeze");
        let mut locality = new("component-locality");
        let mut remark = new("tangled-frozen-counts");
        let mut minimal = new("tangled-minimality");
        let comp = components(p);
        let mut max_time = 0;
        let mut extensions = Vec::new();

        for l in all_labelings(n) {
            let image = f(p, &l);
            let mut via = l.clone();
            for i in 1..n {
                via = toggle(p, &via, i)?;
            }
            toggles.expect(
                via == image,
                || {
                    format!(
                        "toggles give {:?}, promotion gives {:?}",
                        via.labels(),
                        image.labels()
                    )
                },
                || wit(&l, String::new()),
            );

            let orbit = orbit_with(p, &l, n, f);
            let end = &orbit[n.saturating_sub(1)];
            termination.expect(
                sorted(p, end),
                || {
                    format!(
                        "{} promotions leave {:?} unsorted",
                        n.saturating_sub(1),
                        end.labels()
                    )
                },
                || wit(&l, String::new()),
            );

            let frozen: Vec<_> = orbit
                .iter()
                .map(|cur| frozen_report(p, cur))
                .collect::<promotion_core::Result<_>>()?;
            for gamma in 0..n {
                if !sorted(p, &orbit[gamma]) {
                    let (a, b) = (frozen[gamma].frozen, frozen[gamma + 1].frozen);
                    monotone.expect(
                        a.is_subset(b) && a != b,
                        || format!("frozen set does not grow at step {gamma}: {a:?} then {b:?}"),
                        || wit(&l, format!("step {gamma}")),
                    );
                }
            }
            for (gamma, cur) in orbit.iter().enumerate() {
                let top = cur.elements_with_labels_in(n + 1 - gamma, n);
                freeze.expect(
                    top.is_subset(frozen[gamma].frozen),
                    || format!("top {gamma} labels not frozen after {gamma} steps"),
                    || wit(&l, format!("step {gamma}")),
                );
                for j in 1..=n - gamma {
                    let (from, to) = (l.element_with_label(j + gamma), cur.element_with_label(j));
                    locality.expect(
                        comp[from] == comp[to],
                        || {
                            format!(
                                "label {} moved from element {from} to {to} in another component",
                                j + gamma
                            )
                        },
                        || wit(&l, format!("step {gamma}, label {j}")),
                    );
                }
            }

            let time = sorting_time_with(p, &l, f);
            max_time = max_time.max(time);
            if n >= 2 {
                let tangled = time > n - 2;
                let counts_match = (0..=n - 2).all(|g| frozen[g].count == g);
                remark.expect(
                    tangled == counts_match,
                    || {
                        format!(
                            "tangled = {tangled} but frozen counts {:?}",
                            frozen.iter().map(|r| r.count).collect::<Vec<_>>()
                        )
                    },
                    || wit(&l, String::new()),
                );
                if tangled {
                    minimal.expect(
                        p.is_minimal(l.element_with_label(n)),
                        || "label n is not on a minimal element".into(),
                        || wit(&l, String::new()),
                    );
                }
            }
            if sorted(p, &l) {
                extensions.push(l);
            }
        }

        let mut permuted = new("linear-extensions-permuted");
        let mut images: Vec<Labeling> = extensions.iter().map(|l| f(p, l)).collect();
        images.sort();
        extensions.sort();
        permuted.expect(
            images == extensions,
            || "promotion does not permute the linear extensions".into(),
            || Some(Witness::new(p, None, String::new())),
        );

        let mut ideals = new("ideal-criterion");
        for k in 0..=n.saturating_sub(2) {
            if n < 2 {
                break;
            }
            let searched = max_time > n - k - 2;
            let ideal = p
                .lower_ideals_of_size(k + 2)?
                .iter()
                .any(|i| !p.is_antichain(i.elements));
            ideals.expect(
                searched == ideal,
                || {
                    format!(
                        "k = {k}: exhaustive search says {searched}, ideal criterion says {ideal}"
                    )
                },
                || Some(Witness::new(p, None, format!("k = {k}"))),
            );
            if let Some(w) = has_k_untangled(p, k)? {
                let t = sorting_time_with(p, &w, f);
                ideals.expect(
                    t > n - k - 2,
                    || format!("k = {k}: constructed witness sorts in {t} steps"),
                    || wit(&w, format!("k = {k}")),
                );
            }
        }
        ideals.set("max_sorting_time", max_time);

        checks.extend([
            toggles,
            termination,
            monotone,
            freeze,
            locality,
            remark,
            permuted,
            ideals,
            minimal,
        ]);
    }

    if n <= scope.preimage_cap {
        let mut pre = new("preimages");
        let mut mult: HashMap<Labeling, usize> = HashMap::new();
        for l in all_labelings(n) {
            *mult.entry(f(p, &l)).or_default() += 1;
        }
        let mut total = 0u64;
        for l in all_labelings(n) {
            let found = preimages(p, &l)?;
            let top = l.element_with_label(n);
            let golden = if p.is_maximal(top) {
                golden_chains_through(p, &l, top)?.len()
            } else {
                0
            };
            let brute = mult.get(&l).copied().unwrap_or(0);
            pre.expect(
                found.len() == golden && found.len() == brute,
                || {
                    format!(
                        "{} preimages, {golden} golden chains, {brute} by inversion",
                        found.len()
                    )
                },
                || wit(&l, String::new()),
            );
            for q in &found {
                let back = f(p, q);
                pre.expect(
                    back == l,
                    || format!("preimage {:?} maps to {:?}", q.labels(), back.labels()),
                    || wit(q, format!("claimed preimage of {:?}", l.labels())),
                );
            }
            total += found.len() as u64;
        }
        let expected: u64 = (1..=n as u64).product();
        pre.expect(
            total == expected,
            || format!("preimage counts sum to {total}, expected {expected}"),
            || Some(Witness::new(p, None, String::new())),
        );
        checks.push(pre);
    }

    if n <= scope.sortable_cap {
        let formula: Count = sortable_formula(p)?;
        let brute = all_labelings(n).filter(|l| sorted(p, &f(p, l))).count();
        let mut s = new("sortable-formula")
            .value("formula", &formula)
            .value("brute_force", brute);
        s.expect(
            formula == Count::from(brute),
            || format!("formula {formula} vs brute force {brute}"),
            || Some(Witness::new(p, None, String::new())),
        );
        checks.push(s);
    }

    if n <= scope.cap && n >= 2 {
        let brute = all_labelings(n)
            .filter(|l| sorting_time_with(p, l, f) > n - 2)
            .count();
        let mut formulas = Vec::new();
        if let Some(spec) = &entry.spec {
            formulas.push(("forest", tangled_count_forest::<Count>(spec)?));
        }
        let comps = p.connected_components();
        if comps.iter().all(|c| c.poset.minimal_elements().len() == 1) {
            formulas.push((
                "unique-min",
                tangled_count_unique_min::<Count>(n, comps.len())?,
            ));
        }
        if !formulas.is_empty() {
            let mut c = new("closed-form-tangled").value("brute_force", brute);
            for (name, value) in &formulas {
                c.set(name, value);
                c.expect(
                    *value == Count::from(brute),
                    || format!("{name} formula {value} vs brute force {brute}"),
                    || Some(Witness::new(p, None, String::new())),
                );
            }
            checks.push(c);
        }
    }
    Ok(checks)
}

/// Folds per-poset checks into one check per name, keeping the first failure
/// in catalog order.
fn summarize(name: &str, per_entry: &[Vec<Check>], subject: &str) -> Check {
    let mut out = Check::new(name, subject);
    let mut posets = 0u64;
    for c in per_entry.iter().flatten().filter(|c| c.name == name) {
        posets += 1;
        out.cases += c.cases;
        if c.status == Status::Fail && out.status != Status::Fail {
            let witness = c.witness.clone();
            out.fail(format!("{}: {}", c.subject, c.detail), witness);
        }
    }
    if posets == 0 {
        return Check::skipped(name, subject, "no poset in scope");
    }
    out.value("posets", posets)
}

pub fn verify_all_with(
    entries: &[Entry],
    scope: VerifyScope,
    f: &Promoter,
) -> Result<ExperimentReport> {
    let start = Instant::now();
    let in_scope: Vec<&Entry> = entries
        .iter()
        .filter(|e| e.len() <= scope.largest())
        .collect();
    let per_entry = in_scope
        .par_iter()
        .map(|e| verify_entry(e, scope, f))
        .collect::<Result<Vec<_>>>()?;
    let mut report = ExperimentReport::new("verify")
        .param("cap", scope.cap)
        .param("preimage_cap", scope.preimage_cap)
        .param("sortable_cap", scope.sortable_cap)
        .param("posets", in_scope.len());
    for name in VERIFY_CHECKS {
        report.push(summarize(name, &per_entry, "catalog"));
    }
    report.set_elapsed(start.elapsed());
    Ok(report)
}

pub fn verify_all(entries: &[Entry], scope: VerifyScope) -> Result<ExperimentReport> {
    verify_all_with(entries, scope, &core_promote)
}

/// Re-runs one named check on a witness poset.
pub fn rerun(
    name: &str,
    witness: &Witness,
    scope: VerifyScope,
    f: &Promoter,
) -> Result<Option<Check>> {
    let entry = Entry::new("witness", witness.poset.clone());
    Ok(verify_entry(&entry, scope, f)?
        .into_iter()
        .find(|c| c.name == name))
}

/// `σ̂(∂L) = B(σ̂(L))` for every labeling of the `n`-chain.
pub fn check_bubble_equivalence(n: usize, cfg: &SweepConfig) -> Result<ExperimentReport> {
    let start = Instant::now();
    let mut report = ExperimentReport::new("bubble-check").param("n", n);
    let subject = format!("chain {n}");
    if cfg.check(n).is_err() {
        report.push(Check::skipped(
            "bubble-equivalence",
            subject,
            format!("n = {n} exceeds cap {}", cfg.cap),
        ));
        return Ok(report);
    }
    let p = Poset::chain(n)?;
    let mut c = Check::new("bubble-equivalence", subject);
    for l in all_labelings(n) {
        let lhs = sigma_hat(&core_promote(&p, &l));
        let rhs = bubble_sort_pass(&sigma_hat(&l));
        c.expect(
            lhs == rhs,
            || format!("σ̂(∂L) = {lhs:?} but B(σ̂(L)) = {rhs:?}"),
            || Some(Witness::new(&p, Some(&l), String::new())),
        );
    }
    report.push(c);
    report.set_elapsed(start.elapsed());
    Ok(report)
}

/// `a_k(chain n) = (k+1)^{n-k-1} (k+1)!` for `1 <= k <= n-1`, and `a_0 = 1`.
pub fn chain_ak(n: usize, k: usize) -> Result<Count> {
    if k == 0 {
        return Ok(Count::from(1u32));
    }
    let base = Count::from(k + 1);
    Ok(num_pow(&base, n - k - 1) * factorial::<Count>(k + 1)?)
}

fn num_pow(base: &Count, exp: usize) -> Count {
    (0..exp).fold(Count::from(1u32), |acc, _| acc * base)
}

pub fn check_chain_ak(n: usize, cfg: &SweepConfig) -> Result<ExperimentReport> {
    let start = Instant::now();
    let mut report = ExperimentReport::new("chain-profile").param("n", n);
    let subject = format!("chain {n}");
    if cfg.check(n).is_err() || n == 0 {
        report.push(Check::skipped(
            "chain-a_k",
            subject,
            format!("n = {n} outside 1..={}", cfg.cap),
        ));
        return Ok(report);
    }
    let prof: SortingProfile<Count> = sorting_profile(&Poset::chain(n)?, cfg)?;
    let expected = (0..n).map(|k| chain_ak(n, k)).collect::<Result<Vec<_>>>()?;
    let mut c = Check::new("chain-a_k", subject)
        .value("a", join(&prof.a))
        .value("expected", join(&expected));
    for k in 0..n {
        c.expect(
            prof.a[k] == expected[k],
            || {
                format!(
                    "a_{k} = {} but the formula gives {}",
                    prof.a[k], expected[k]
                )
            },
            || None,
        );
    }
    report.push(c);
    report.set_elapsed(start.elapsed());
    Ok(report)
}

/// Nondecreasing up to some peak, nonincreasing afterwards.
pub fn is_unimodal<T: PartialOrd>(seq: &[T]) -> bool {
    let mut i = 1;
    while i < seq.len() && seq[i - 1] <= seq[i] {
        i += 1;
    }
    while i < seq.len() && seq[i - 1] >= seq[i] {
        i += 1;
    }
    i >= seq.len()
}

/// `a_{i-1} a_{i+1} <= a_i^2` for every interior index; the first failing
/// index otherwise.
pub fn log_concavity_violation(a: &[Count]) -> Option<usize> {
    (1..a.len().saturating_sub(1)).find(|&i| &a[i - 1] * &a[i + 1] > &a[i] * &a[i])
}

pub const SCAN_CHECKS: [&str; 3] = ["tangled-bound", "a_hat-unimodal", "a-log-concave"];

/// For each poset within the cap: tangled count at most `(n-1)!`, `â`
/// unimodal and `a` log-concave. These are empirical verdicts on the posets
/// examined. Posets over the cap get skipped checks.
pub fn scan_conjectures(entries: &[Entry], cfg: &SweepConfig) -> Result<ExperimentReport> {
    let start = Instant::now();
    let per_entry = entries
        .par_iter()
        .map(|e| scan_entry(e, cfg))
        .collect::<Result<Vec<_>>>()?;
    let mut report = ExperimentReport::new("scan-conjectures")
        .param("cap", cfg.cap)
        .param("posets", entries.len());
    for checks in per_entry {
        for c in checks {
            report.push(c);
        }
    }
    report.set_elapsed(start.elapsed());
    Ok(report)
}

fn scan_entry(entry: &Entry, cfg: &SweepConfig) -> Result<Vec<Check>> {
    let p = &entry.poset;
    let n = p.len();
    if cfg.check(n).is_err() {
        let reason = format!("n = {n} exceeds cap {}", cfg.cap);
        return Ok(SCAN_CHECKS
            .iter()
            .map(|name| Check::skipped(*name, entry.name.clone(), reason.clone()))
            .collect());
    }
    let prof: SortingProfile<Count> = sorting_profile(p, cfg)?;
    let witness = || Some(Witness::new(p, None, String::new()));
    let tangled = if n >= 2 {
        prof.a_hat[n - 1].clone()
    } else {
        Count::from(0u32)
    };
    let bound = factorial::<Count>(n.saturating_sub(1))?;
    let mut t = Check::new("tangled-bound", entry.name.clone())
        .value("tangled", &tangled)
        .value("bound", &bound);
    t.expect(
        tangled <= bound,
        || format!("{tangled} tangled labelings exceed (n-1)! = {bound}"),
        witness,
    );

    let mut u = Check::new("a_hat-unimodal", entry.name.clone()).value("a_hat", join(&prof.a_hat));
    u.expect(
        is_unimodal(&prof.a_hat),
        || "â is not unimodal".into(),
        witness,
    );

    let mut lc = Check::new("a-log-concave", entry.name.clone()).value("a", join(&prof.a));
    let violation = log_concavity_violation(&prof.a);
    lc.expect(
        violation.is_none(),
        || format!("a_{{i-1}} a_{{i+1}} > a_i^2 at i = {}", violation.unwrap()),
        witness,
    );
    Ok(vec![t, u, lc])
}

/// Sorting profile with its exact and approximate mean sorting time.
pub fn profile_report(name: &str, p: &Poset, cfg: &SweepConfig) -> Result<ExperimentReport> {
    let start = Instant::now();
    let prof: SortingProfile<Count> = sorting_profile(p, cfg)?;
    let mean = prof.mean_sorting_time_exact()?;
    let mut report = ExperimentReport::new("profile").param("n", p.len());
    let mut c = Check::new("sorting-profile", name)
        .value("a", join(&prof.a))
        .value("a_hat", join(&prof.a_hat))
        .value("mean_sorting_time", &mean)
        .value(
            "mean_sorting_time_approx",
            format!("{:.6}", prof.mean_sorting_time()),
        );
    let ext: Count = count_linear_extensions(p)?;
    c.expect(
        prof.a.first().map_or(true, |a0| *a0 == ext),
        || format!("a_0 = {} but there are {ext} linear extensions", prof.a[0]),
        || Some(Witness::new(p, None, String::new())),
    );
    report.push(c);
    report.set_elapsed(start.elapsed());
    Ok(report)
}
