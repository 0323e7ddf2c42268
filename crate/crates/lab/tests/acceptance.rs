//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use promotion_core::{
    count_sortable, count_tangled, realize, tangled_count_forest, tangled_count_star,
    tangled_count_tree, tangled_count_unique_min, tangled_labelings, InflatedForestSpec,
    InflatedTreeSpec, Poset, RootedTree, SortingProfile, SweepConfig,
};
use promotion_lab::catalog::{catalog, random_entries};
use promotion_lab::experiments::{
    check_bubble_equivalence, check_chain_ak, scan_conjectures, verify_all, VerifyScope,
    SCAN_CHECKS,
};
use promotion_lab::{ExperimentReport, Status};

type Outcome = Result<String, String>;

fn cfg() -> SweepConfig {
    SweepConfig::default()
}

fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn tangled(p: &Poset) -> u64 {
    count_tangled(p, &cfg()).expect("within cap")
}

fn forest(trees: Vec<InflatedTreeSpec>) -> InflatedForestSpec {
    InflatedForestSpec { trees }
}

fn tree(parents: &[i64], fibers: &[usize]) -> InflatedTreeSpec {
    InflatedTreeSpec::new(RootedTree::from_signed(parents).unwrap(), fibers.to_vec()).unwrap()
}

fn chain_tangled_counts() -> Outcome {
    let start = Instant::now();
    let mut got = Vec::new();
    for n in 2..=7 {
        let t = tangled(&Poset::chain(n).unwrap());
        ensure(t == factorial(n as u64 - 1), || {
            format!(
                "chain {n}: {t} tangled, expected {}",
                factorial(n as u64 - 1)
            )
        })?;
        got.push(t);
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || {
        format!("took {elapsed:?}, budget 60 s")
    })?;
    Ok(format!("n = 2..7 -> {got:?} in {elapsed:.2?}"))
}

fn forest_reduction() -> Outcome {
    let point = |n| InflatedTreeSpec::point(n).unwrap();
    let mut parts = Vec::new();
    for (name, spec, expected) in [
        ("2-chain + 2-chain", forest(vec![point(2), point(2)]), 4u64),
        ("2-chain + point", forest(vec![point(2), point(1)]), 1),
    ] {
        let formula: u64 = tangled_count_forest(&spec).unwrap();
        let brute = tangled(&realize(&spec).unwrap().poset);
        ensure(formula == expected && brute == expected, || {
            format!("{name}: formula {formula}, brute force {brute}, expected {expected}")
        })?;
        parts.push(format!("{name} -> {brute}"));
    }
    Ok(parts.join(", "))
}

fn inflated_star() -> Outcome {
    let star: u64 = tangled_count_star(1, &[2, 1]).unwrap();
    let spec = tree(&[-1, 0, 0], &[1, 2, 1]);
    let brute = tangled(&realize(&forest(vec![spec])).unwrap().poset);
    ensure(star == 3 && brute == 3, || {
        format!("star formula {star}, brute force {brute}, expected 3")
    })?;
    Ok(format!(
        "formula {star} = brute force {brute} over 24 labelings"
    ))
}

fn inflated_tree() -> Outcome {
    let start = Instant::now();
    let spec = tree(&[-1, 0, 0, 2, 2], &[1, 2, 1, 1, 1]);
    let formula: u64 = tangled_count_tree(&spec).unwrap();
    let brute = tangled(&realize(&forest(vec![spec])).unwrap().poset);
    let elapsed = start.elapsed();
    ensure(formula == 30 && brute == 30, || {
        format!("formula {formula}, brute force {brute}, expected 30")
    })?;
    ensure(elapsed < Duration::from_secs(5), || {
        format!("took {elapsed:?}, budget 5 s")
    })?;
    Ok(format!(
        "5!/4 = {formula} = brute force {brute} over 720 labelings in {elapsed:.2?}"
    ))
}

fn unique_minimum() -> Outcome {
    let grid = Poset::product_of_chains(&[2, 2]).unwrap();
    let brute = tangled(&grid);
    let formula: u64 = tangled_count_unique_min(4, 1).unwrap();
    ensure(brute == 6 && formula == 6, || {
        format!("2x2 grid: brute force {brute}, formula {formula}, expected 6")
    })?;
    Ok(format!("2x2 grid -> {brute} = (4-1)(4-2)!"))
}

fn chain_profiles() -> Outcome {
    for n in 1..=7 {
        let r = check_chain_ak(n, &cfg()).unwrap();
        ensure(r.passed() && r.count(Status::Pass) == 1, || {
            format!("chain {n}: {}", r.to_text())
        })?;
    }
    for (n, expected) in [(3, vec![1u64, 4, 6]), (4, vec![1, 8, 18, 24])] {
        let prof: SortingProfile<u64> =
            promotion_core::sorting_profile(&Poset::chain(n).unwrap(), &cfg()).unwrap();
        ensure(prof.a == expected, || {
            format!("chain {n}: a = {:?}, expected {expected:?}", prof.a)
        })?;
    }
    Ok("a_k = (k+1)^(n-k-1) (k+1)! for n <= 7; (1,4,6) and (1,8,18,24)".into())
}

fn verify_checks(report: &ExperimentReport, names: &[&str]) -> Outcome {
    let mut parts = Vec::new();
    for name in names {
        let c = report
            .find(name)
            .next()
            .ok_or_else(|| format!("{name} missing"))?;
        ensure(c.status == Status::Pass && c.cases > 0, || {
            let witness = c
                .witness
                .as_ref()
                .map(|w| serde_json::to_string(w).unwrap())
                .unwrap_or_default();
            format!("{name}: {:?} {} {witness}", c.status, c.detail)
        })?;
        parts.push(format!(
            "{name}: {} cases on {} posets",
            c.cases, c.values["posets"]
        ));
    }
    Ok(parts.join("; "))
}

fn tangled_minimality() -> Outcome {
    let point = |n| InflatedTreeSpec::point(n).unwrap();
    let mut posets: Vec<Poset> = (2..=7).map(|n| Poset::chain(n).unwrap()).collect();
    for spec in [
        forest(vec![point(2), point(2)]),
        forest(vec![point(2), point(1)]),
        forest(vec![tree(&[-1, 0, 0], &[1, 2, 1])]),
        forest(vec![tree(&[-1, 0, 0, 2, 2], &[1, 2, 1, 1, 1])]),
    ] {
        posets.push(realize(&spec).unwrap().poset);
    }
    posets.push(Poset::product_of_chains(&[2, 2]).unwrap());
    let mut seen = 0;
    for p in &posets {
        for l in tangled_labelings(p, &cfg()).unwrap() {
            let top = l.element_with_label(p.len());
            ensure(p.is_minimal(top), || {
                format!("{p:?} with {:?}: label n on non-minimal {top}", l.labels())
            })?;
            seen += 1;
        }
    }
    Ok(format!(
        "{seen} tangled labelings on {} posets, label n always minimal",
        posets.len()
    ))
}

fn sortable_counts(report: &ExperimentReport) -> Outcome {
    let catalog_part = verify_checks(report, &["sortable-formula"])?;
    for (n, expected) in [(3, 4u64), (4, 8)] {
        let s = count_sortable::<u64>(&Poset::chain(n).unwrap(), &cfg()).unwrap();
        ensure(s.formula == expected && s.brute_force == expected, || {
            format!(
                "chain {n}: formula {}, brute force {}, expected {expected}",
                s.formula, s.brute_force
            )
        })?;
    }
    Ok(format!("{catalog_part}; chains 3, 4 -> 4, 8"))
}

fn bubble_equivalence() -> Outcome {
    let mut cases = 0;
    for n in 1..=6 {
        let r = check_bubble_equivalence(n, &cfg()).unwrap();
        ensure(r.passed() && r.count(Status::Pass) == 1, || r.to_text())?;
        cases += r.checks[0].cases;
    }
    Ok(format!("{cases} labelings of chains 1..6"))
}

fn conjecture_scan() -> Outcome {
    let mut entries = catalog().unwrap();
    let catalog_len = entries.len();
    entries.extend(random_entries(200, 6, 0).unwrap());
    let r = scan_conjectures(&entries, &SweepConfig::with_cap(7)).unwrap();
    let (pass, fail, skip) = (
        r.count(Status::Pass),
        r.count(Status::Fail),
        r.count(Status::Skipped),
    );
    let per_property: Vec<String> = SCAN_CHECKS
        .iter()
        .map(|name| {
            let failed = r.find(name).filter(|c| c.status == Status::Fail).count();
            format!("{name} fails on {failed}")
        })
        .collect();
    ensure(fail == 0 && skip == 0, || {
        let first = r
            .failures()
            .next()
            .map(|c| format!("{} [{}] {:?}", c.name, c.subject, c.values))
            .unwrap_or_default();
        format!(
            "{fail} counterexamples, {skip} skipped over {} posets ({}); first: {first}",
            entries.len(),
            per_property.join(", ")
        )
    })?;
    Ok(format!(
        "{} posets ({catalog_len} catalog + 200 random), {pass} checks, 0 counterexamples",
        entries.len()
    ))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let scope = VerifyScope {
        cap: 6,
        preimage_cap: 5,
        sortable_cap: 7,
    };
    let verify = verify_all(&catalog().unwrap(), scope).unwrap();

    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("chain tangled counts", Box::new(chain_tangled_counts)),
        ("forest reduction", Box::new(forest_reduction)),
        ("inflated star", Box::new(inflated_star)),
        ("inflated tree", Box::new(inflated_tree)),
        ("unique-minimum posets", Box::new(unique_minimum)),
        ("chain profiles", Box::new(chain_profiles)),
        (
            "toggle equivalence",
            Box::new(|| verify_checks(&verify, &["toggle-equivalence"])),
        ),
        (
            "termination",
            Box::new(|| verify_checks(&verify, &["termination"])),
        ),
        (
            "frozen monotonicity and top-label freeze",
            Box::new(|| verify_checks(&verify, &["frozen-monotonicity", "top-label-freeze"])),
        ),
        (
            "untangling ideal criterion",
            Box::new(|| verify_checks(&verify, &["ideal-criterion"])),
        ),
        ("tangled minimality", Box::new(tangled_minimality)),
        (
            "preimages",
            Box::new(|| verify_checks(&verify, &["preimages"])),
        ),
        ("sortable counts", Box::new(|| sortable_counts(&verify))),
        ("bubble equivalence", Box::new(bubble_equivalence)),
        ("conjecture scan", Box::new(conjecture_scan)),
    ];

    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS  {:>2}. {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {:>2}. {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed in {:.2?}",
        criteria.len() - failed,
        start.elapsed()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
