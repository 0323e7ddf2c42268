use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use promotion_core::{
    count_k_untangled, count_linear_extensions, count_sortable, count_tangled, promote, realize,
    sorting_time, tangled_count_forest, tangled_count_star, tangled_count_tree,
    tangled_count_unique_min, Count, InflatedForestSpec, InflatedTreeSpec, Poset, RootedTree,
    SortableCount, SweepConfig, DEFAULT_CAP,
};
use promotion_lab::catalog::{catalog, random_entries};
use promotion_lab::experiments::{
    check_bubble_equivalence, check_chain_ak, profile_report, scan_conjectures, verify_all,
    VerifyScope,
};
use promotion_lab::generate::{generate, Family};
use promotion_lab::{io, Check, ExperimentReport, LabError, Result, Witness};

const VERIFY_CAP: usize = 6;
const SCAN_CAP: usize = 7;
const SCAN_MAX_N: usize = 6;

#[derive(Parser)]
#[command(
    name = "promosort",
    version,
    about = "Extended promotion on labelings of finite posets"
)]
struct Cli {
    /// Largest poset size for exhaustive sweeps.
    #[arg(long, global = true)]
    cap: Option<usize>,
    /// Base seed for random posets.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads (defaults to the number of CPUs).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Write the report (or generated poset) here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Apply promotion to a labeling.
    Promote {
        poset: PathBuf,
        /// Inline (`3,1,2`) or a JSON file.
        labeling: String,
        #[arg(long, default_value_t = 1)]
        steps: usize,
        /// Show the promotion chain and frozen set of every step.
        #[arg(long)]
        trace: bool,
    },
    /// Number of promotions needed to reach a linear extension.
    SortTime { poset: PathBuf, labeling: String },
    /// Sorting profile a_k, â_k and the mean sorting time.
    Profile { poset: PathBuf },
    /// Exhaustive counts.
    Count {
        #[command(subcommand)]
        what: CountCmd,
    },
    /// Closed-form tangled counts.
    Formula {
        #[command(subcommand)]
        kind: FormulaCmd,
    },
    /// Print a poset from a family as JSON.
    Generate {
        #[command(subcommand)]
        family: FamilyCmd,
    },
    /// Run every verification check over the catalog.
    Verify,
    /// Check the tangled bound, unimodality and log-concavity on the catalog
    /// and on seeded random posets.
    ScanConjectures {
        /// Number of random posets.
        #[arg(long, default_value_t = 200)]
        seeds: usize,
    },
    /// Compare promotion on the n-chain with a bubble sort pass.
    BubbleCheck { n: usize },
    /// Compare the chain sorting profile with its closed form.
    ChainProfile { n: usize },
}

#[derive(Subcommand)]
enum CountCmd {
    Tangled {
        poset: PathBuf,
    },
    KUntangled {
        poset: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Formula and exhaustive count of labelings sorted by one promotion.
    Sortable {
        poset: PathBuf,
    },
    Linext {
        poset: PathBuf,
    },
}

#[derive(Subcommand)]
enum FormulaCmd {
    /// Spec file holding a single tree.
    Tree {
        spec: PathBuf,
        /// Also count by exhaustive sweep.
        #[arg(long)]
        check: bool,
    },
    Forest {
        spec: PathBuf,
        #[arg(long)]
        check: bool,
    },
    Star {
        #[arg(long)]
        root_fiber: usize,
        /// Comma separated, e.g. `2,1`.
        #[arg(long)]
        leaf_fibers: String,
        #[arg(long)]
        check: bool,
    },
    UniqueMin {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
    },
}

#[derive(Subcommand)]
enum FamilyCmd {
    Chain {
        n: usize,
    },
    Antichain {
        n: usize,
    },
    /// Comma separated chain lengths, e.g. `2,2`.
    Product {
        dims: String,
    },
    /// Comma separated parent array with -1 at the root.
    Tree {
        #[arg(allow_hyphen_values = true)]
        parents: String,
    },
    Inflated {
        spec: PathBuf,
    },
    /// Uses the global --seed.
    Random {
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
    },
}

enum Output {
    Report(ExperimentReport),
    Poset(Poset),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build_global()
            .expect("thread pool configured once");
    }
    match run(&cli).and_then(|out| emit(&cli, out)) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn emit(cli: &Cli, out: Output) -> Result<u8> {
    let (text, code) = match &out {
        Output::Poset(p) => (serde_json::to_string(p).expect("serializable") + "\n", 0),
        Output::Report(r) => match cli.format {
            Format::Text => (r.to_text(), r.exit_code()),
            Format::Structured => (r.to_json(), r.exit_code()),
        },
    };
    match &cli.out {
        Some(path) => {
            io::write_text(path, &text)?;
            if let Output::Report(r) = &out {
                for w in r.write_witnesses(path)? {
                    eprintln!("witness written to {}", w.display());
                }
            }
        }
        None => print!("{text}"),
    }
    Ok(code)
}

fn sweep(cli: &Cli) -> SweepConfig {
    SweepConfig::with_cap(cli.cap.unwrap_or(DEFAULT_CAP))
}

fn name_of(path: &Path) -> String {
    path.display().to_string()
}

fn single(title: &str, params: &[(&str, String)], check: Check) -> ExperimentReport {
    let mut r = ExperimentReport::new(title);
    for (k, v) in params {
        r = r.param(k, v);
    }
    r.push(check);
    r
}

fn run(cli: &Cli) -> Result<Output> {
    Ok(Output::Report(match &cli.command {
        Command::Promote {
            poset,
            labeling,
            steps,
            trace,
        } => {
            let p = io::read_poset(poset)?;
            let mut l = io::parse_labeling(labeling)?;
            let mut c =
                Check::new("promote", name_of(poset)).value("input", format!("{:?}", l.labels()));
            if *trace {
                let f = promotion_core::frozen_report(&p, &l)?;
                c.set("step_00_frozen", format!("{:?}", f.frozen));
                for s in 1..=*steps {
                    let t = promote(&p, &l)?;
                    c.set(&format!("step_{s:02}_chain"), format!("{:?}", t.chain));
                    c.set(
                        &format!("step_{s:02}_output"),
                        format!("{:?}", t.output.labels()),
                    );
                    l = t.output;
                    let f = promotion_core::frozen_report(&p, &l)?;
                    c.set(&format!("step_{s:02}_frozen"), format!("{:?}", f.frozen));
                }
            } else {
                l = promotion_core::iterate(&p, &l, *steps)?;
            }
            c.set("output", format!("{:?}", l.labels()));
            c.set("linear_extension", p.is_linear_extension(&l)?);
            single("promote", &[("steps", steps.to_string())], c)
        }
        Command::SortTime { poset, labeling } => {
            let p = io::read_poset(poset)?;
            let l = io::parse_labeling(labeling)?;
            let t = sorting_time(&p, &l)?;
            let c = Check::new("sort-time", name_of(poset))
                .value("labeling", format!("{:?}", l.labels()))
                .value("sorting_time", t)
                .value("tangled", p.len() >= 2 && t + 2 > p.len());
            single("sort-time", &[], c)
        }
        Command::Profile { poset } => {
            let p = io::read_poset(poset)?;
            profile_report(&name_of(poset), &p, &sweep(cli))?
        }
        Command::Count { what } => count(cli, what)?,
        Command::Formula { kind } => formula(cli, kind)?,
        Command::Generate { family } => {
            let family = match family {
                FamilyCmd::Chain { n } => Family::Chain(*n),
                FamilyCmd::Antichain { n } => Family::Antichain(*n),
                FamilyCmd::Product { dims } => Family::Product(io::parse_list(dims)?),
                FamilyCmd::Tree { parents } => Family::Tree(io::parse_signed_list(parents)?),
                FamilyCmd::Inflated { spec } => Family::Inflated(io::read_spec(spec)?),
                FamilyCmd::Random { n, density } => Family::Random {
                    n: *n,
                    density: *density,
                    seed: cli.seed,
                },
            };
            return Ok(Output::Poset(generate(&family)?));
        }
        Command::Verify => {
            let scope = VerifyScope::new(cli.cap.unwrap_or(VERIFY_CAP));
            verify_all(&catalog()?, scope)?
        }
        Command::ScanConjectures { seeds } => {
            let mut entries = catalog()?;
            entries.extend(random_entries(*seeds, SCAN_MAX_N, cli.seed)?);
            let r = scan_conjectures(
                &entries,
                &SweepConfig::with_cap(cli.cap.unwrap_or(SCAN_CAP)),
            )?;
            r.param("random_posets", seeds).param("seed", cli.seed)
        }
        Command::BubbleCheck { n } => check_bubble_equivalence(*n, &sweep(cli))?,
        Command::ChainProfile { n } => check_chain_ak(*n, &sweep(cli))?,
    }))
}

fn count(cli: &Cli, what: &CountCmd) -> Result<ExperimentReport> {
    let cfg = sweep(cli);
    Ok(match what {
        CountCmd::Tangled { poset } => {
            let p = io::read_poset(poset)?;
            let t: Count = count_tangled(&p, &cfg)?;
            single(
                "count tangled",
                &[],
                Check::new("tangled", name_of(poset)).value("count", t),
            )
        }
        CountCmd::KUntangled { poset, k } => {
            let p = io::read_poset(poset)?;
            let t: Count = count_k_untangled(&p, *k, &cfg)?;
            single(
                "count k-untangled",
                &[("k", k.to_string())],
                Check::new("k-untangled", name_of(poset)).value("count", t),
            )
        }
        CountCmd::Sortable { poset } => {
            let p = io::read_poset(poset)?;
            let s: SortableCount<Count> = count_sortable(&p, &cfg)?;
            let mut c = Check::new("sortable", name_of(poset))
                .value("formula", &s.formula)
                .value("brute_force", &s.brute_force);
            c.expect(
                s.agree(),
                || format!("formula {} vs brute force {}", s.formula, s.brute_force),
                || Some(Witness::new(&p, None, String::new())),
            );
            single("count sortable", &[], c)
        }
        CountCmd::Linext { poset } => {
            let p = io::read_poset(poset)?;
            let e: Count = count_linear_extensions(&p)?;
            single(
                "count linext",
                &[],
                Check::new("linear-extensions", name_of(poset)).value("count", e),
            )
        }
    })
}

fn formula_check(
    cli: &Cli,
    name: &str,
    subject: String,
    value: Count,
    spec: Option<&InflatedForestSpec>,
) -> Result<ExperimentReport> {
    let mut c = Check::new(name, subject).value("formula", &value);
    if let Some(spec) = spec {
        let p = realize(spec)?.poset;
        let brute: Count = count_tangled(&p, &sweep(cli))?;
        c.set("brute_force", &brute);
        c.expect(
            brute == value,
            || format!("formula {value} vs brute force {brute}"),
            || Some(Witness::new(&p, None, String::new())),
        );
    }
    Ok(single("formula", &[], c))
}

fn formula(cli: &Cli, kind: &FormulaCmd) -> Result<ExperimentReport> {
    match kind {
        FormulaCmd::Tree { spec, check } => {
            let forest = io::read_spec(spec)?;
            let [tree] = &forest.trees[..] else {
                return Err(LabError::Usage(format!(
                    "{} holds {} trees; use `formula forest`",
                    spec.display(),
                    forest.trees.len()
                )));
            };
            let value: Count = tangled_count_tree(tree)?;
            formula_check(cli, "tree", name_of(spec), value, check.then_some(&forest))
        }
        FormulaCmd::Forest { spec, check } => {
            let forest = io::read_spec(spec)?;
            let value: Count = tangled_count_forest(&forest)?;
            formula_check(
                cli,
                "forest",
                name_of(spec),
                value,
                check.then_some(&forest),
            )
        }
        FormulaCmd::Star {
            root_fiber,
            leaf_fibers,
            check,
        } => {
            let leaves = io::parse_list(leaf_fibers)?;
            let value: Count = tangled_count_star(*root_fiber, &leaves)?;
            let fibers = std::iter::once(*root_fiber)
                .chain(leaves.iter().copied())
                .collect();
            let forest = InflatedForestSpec {
                trees: vec![InflatedTreeSpec::new(
                    RootedTree::star(leaves.len()),
                    fibers,
                )?],
            };
            let subject = format!("root {root_fiber} over ({leaf_fibers})");
            formula_check(cli, "star", subject, value, check.then_some(&forest))
        }
        FormulaCmd::UniqueMin { n, r } => {
            let value: Count = tangled_count_unique_min(*n, *r)?;
            formula_check(cli, "unique-min", format!("n = {n}, r = {r}"), value, None)
        }
    }
}
