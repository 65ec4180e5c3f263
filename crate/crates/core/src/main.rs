use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use poset_cech::document::{
    canonical_value, diagram_skeleton, parse_poset, parse_presheaf, poset_value, presheaf_value,
    serialize_poset, skeleton,
};
use poset_cech::homology::{acyclicity_check, simplicial_homology, OrderComplex};
use poset_cech::random::{random_poset, random_presheaf, DiagramParams};
use poset_cech::{
    cech_cohomology, cech_ordered_complex, compare_report, criterion, enumerate_cuts,
    full_complex_truncated, topos_cohomology, CanonicalGroup, ComparisonReport, CriterionOptions,
    Error, Poset, Presheaf, Shortcut, Subset,
};

#[derive(Parser)]
#[command(
    name = "poset-cech",
    version,
    about = "Čech and topos cohomology of presheaves on finite posets"
)]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a poset document and summarize it.
    Validate { poset: PathBuf },
    /// List the cuts ⟨X⁻, X⁻⁺⟩ with nonempty lower section.
    Cuts { poset: PathBuf },
    /// Decide whether Čech and topos cohomology agree for every presheaf.
    Criterion {
        poset: PathBuf,
        /// Check every cut by homology, skipping all fast paths.
        #[arg(long)]
        no_shortcut: bool,
    },
    /// Emit a presheaf template with null placeholders.
    Skeleton {
        poset: PathBuf,
        /// Key the template by elements (a diagram generating a sheaf).
        #[arg(long)]
        diagram: bool,
    },
    /// Čech cohomology of the canonical covering.
    Cech {
        poset: PathBuf,
        presheaf: PathBuf,
        #[arg(long)]
        degrees: Option<Degrees>,
        /// Use the ordered Čech complex for this total order.
        #[arg(long)]
        order: Option<String>,
    },
    /// Topos cohomology of the generated sheaf.
    Topos {
        poset: PathBuf,
        presheaf: PathBuf,
        #[arg(long)]
        degrees: Option<Degrees>,
    },
    /// Compare Čech and topos cohomology through the canonical maps λ_n.
    Compare {
        poset: PathBuf,
        presheaf: PathBuf,
        #[arg(long)]
        degrees: Option<Degrees>,
        /// Total order for the ordered Čech complex used by --oracle.
        #[arg(long)]
        order: Option<String>,
        /// Recompute every group by independent complexes and check agreement.
        #[arg(long)]
        oracle: bool,
    },
    /// Integer homology of the order complex.
    Homology {
        poset: PathBuf,
        #[arg(long)]
        degrees: Option<Degrees>,
    },
    /// Check on random posets that criterion PASS implies agreement.
    Fuzz {
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 8)]
        max_size: usize,
        /// Presheaves per passing poset.
        #[arg(long, default_value_t = 5)]
        presheaves: usize,
        #[arg(long, default_value_t = 2)]
        max_generators: usize,
        #[arg(long)]
        seed: u64,
        /// Directory for a reproduction bundle.
        #[arg(long, default_value = "fuzz-repro")]
        out: PathBuf,
    },
    /// Print a random poset document.
    RandomPoset {
        #[arg(long)]
        size: usize,
        #[arg(long, default_value_t = 0.4)]
        density: f64,
        #[arg(long)]
        seed: u64,
    },
}

/// An inclusive degree range `A..B`, or a single degree.
#[derive(Clone, Copy, Debug)]
struct Degrees {
    from: usize,
    to: usize,
}

impl FromStr for Degrees {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| format!("`{s}` is not a degree range like 0..3"))
        };
        let (from, to) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
            None => (parse(s)?, parse(s)?),
        };
        if from > to {
            return Err(format!("empty degree range `{s}`"));
        }
        Ok(Degrees { from, to })
    }
}

fn range(d: Option<Degrees>, default_top: usize) -> (usize, usize) {
    d.map_or((0, default_top), |d| (d.from, d.to))
}

enum Failure {
    Input(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotChainMap(_) | Error::NonzeroComposite(_) => Failure::Internal(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

type Outcome = Result<bool, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_poset(path: &Path) -> Result<Poset, Failure> {
    parse_poset(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_presheaf(base: &Poset, path: &Path) -> Result<Presheaf, Failure> {
    parse_presheaf(base, &read(path)?)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn names(p: &Poset, s: &Subset) -> Vec<String> {
    let mut v: Vec<String> = s.iter().map(|i| p.name(i).to_string()).collect();
    v.sort();
    v
}

fn print_json(v: &Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(v).expect("values serialize")
    );
}

fn validate(json_out: bool, path: &Path) -> Outcome {
    let p = load_poset(path)?;
    let covers = p.covers().len();
    let chain = p.longest_chain_length() + 1;
    if json_out {
        print_json(
            &json!({"elements": p.len(), "cover_relations": covers, "longest_chain": chain}),
        );
    } else {
        println!(
            "{} elements, {covers} cover relations, longest chain {chain}",
            p.len()
        );
    }
    Ok(true)
}

fn cuts(json_out: bool, path: &Path) -> Outcome {
    let p = load_poset(path)?;
    let cuts = enumerate_cuts(&p)?;
    if json_out {
        let list: Vec<Value> = cuts
            .iter()
            .map(|c| {
                let w = Subset::from_indices(p.len(), c.witness.iter().copied()).expect("valid indices");
                json!({"lower": names(&p, &c.lower), "upper": names(&p, &c.upper), "witness": names(&p, &w)})
            })
            .collect();
        print_json(&Value::Array(list));
    } else {
        println!("{} cuts", cuts.len());
        for c in &cuts {
            let w =
                Subset::from_indices(p.len(), c.witness.iter().copied()).expect("valid indices");
            println!("  {}  from X = {}", c.render(&p), p.render(&w));
        }
    }
    Ok(true)
}

fn shortcut_name(s: Shortcut) -> &'static str {
    match s {
        Shortcut::None => "none",
        Shortcut::LeastElement => "least-element",
        Shortcut::Semilattice => "semilattice",
        Shortcut::DirectedComponents => "directed-components",
    }
}

fn run_criterion(json_out: bool, path: &Path, no_shortcut: bool) -> Outcome {
    let p = load_poset(path)?;
    let r = criterion(
        &p,
        CriterionOptions {
            shortcuts: !no_shortcut,
        },
    )?;
    if json_out {
        let failures: Vec<Value> = r
            .failures
            .iter()
            .map(|f| {
                json!({
                    "lower": names(&p, &f.cut.lower),
                    "upper": names(&p, &f.cut.upper),
                    "degree": f.degree,
                    "group": canonical_value(&f.group),
                })
            })
            .collect();
        print_json(&json!({
            "verdict": if r.passed() { "PASS" } else { "FAIL" },
            "cuts_examined": r.cuts_examined,
            "shortcut": shortcut_name(r.shortcut),
            "failures": failures,
        }));
    } else if r.passed() {
        println!(
            "PASS: {} cuts examined, every upper section is acyclic (shortcut: {})",
            r.cuts_examined,
            shortcut_name(r.shortcut)
        );
    } else {
        println!(
            "FAIL: {} of {} cuts have an upper section that is not acyclic",
            r.failures.len(),
            r.cuts_examined
        );
        for f in &r.failures {
            println!("  {}: H_{} = {}", f.cut.render(&p), f.degree, f.group);
        }
    }
    Ok(r.passed())
}

fn run_skeleton(path: &Path, diagram: bool) -> Outcome {
    let p = load_poset(path)?;
    let base = Value::String(path.display().to_string());
    let doc = if diagram {
        diagram_skeleton(&p, base)
    } else {
        skeleton(&p, base)?
    };
    print_json(&doc);
    Ok(true)
}

fn parse_order(p: &Poset, order: Option<&str>) -> Result<Vec<usize>, Failure> {
    let Some(order) = order else {
        return Ok((0..p.len()).collect());
    };
    let idx: Vec<usize> = order
        .split(',')
        .map(|n| {
            p.index_of(n.trim())
                .ok_or_else(|| Failure::Input(Error::UnknownElement(n.trim().into()).to_string()))
        })
        .collect::<Result<_, _>>()?;
    let mut sorted = idx.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != p.len() || idx.len() != p.len() {
        return Err(Failure::Input(
            Error::InvalidOrder("--order must list every element exactly once".into()).to_string(),
        ));
    }
    Ok(idx)
}

fn print_groups(json_out: bool, label: &str, groups: &[(usize, CanonicalGroup)]) {
    if json_out {
        let list: Vec<Value> = groups
            .iter()
            .map(|(n, g)| json!({"degree": n, "group": canonical_value(g)}))
            .collect();
        print_json(&json!({ label: list }));
    } else {
        for (n, g) in groups {
            println!("{label} H^{n} = {g}");
        }
    }
}

fn cech(
    json_out: bool,
    poset: &Path,
    presheaf: &Path,
    degrees: Option<Degrees>,
    order: Option<&str>,
) -> Outcome {
    let p = load_poset(poset)?;
    let f = load_presheaf(&p, presheaf)?;
    let (a, b) = range(degrees, f.cover().node_poset().longest_chain_length());
    let groups = match order {
        Some(_) => {
            let c = cech_ordered_complex(&f, &parse_order(&p, order)?)?;
            (a..=b)
                .map(|n| Ok((n, c.homology(n)?.canonical_form())))
                .collect::<Result<Vec<_>, Error>>()?
        }
        None => (a..=b)
            .map(|n| Ok((n, cech_cohomology(&f, n)?)))
            .collect::<Result<Vec<_>, Error>>()?,
    };
    print_groups(json_out, "cech", &groups);
    Ok(true)
}

fn topos(json_out: bool, poset: &Path, presheaf: &Path, degrees: Option<Degrees>) -> Outcome {
    let p = load_poset(poset)?;
    let f = load_presheaf(&p, presheaf)?;
    let (a, b) = range(degrees, p.longest_chain_length());
    let groups = (a..=b)
        .map(|n| Ok((n, topos_cohomology(&f, n)?)))
        .collect::<Result<Vec<_>, Error>>()?;
    print_groups(json_out, "topos", &groups);
    Ok(true)
}

/// Recomputes both sides through the ordered Čech complex and the full
/// cochain complexes; returns the disagreements.
fn oracle(f: &Presheaf, report: &ComparisonReport, order: &[usize]) -> Result<Vec<String>, Error> {
    let mut problems = Vec::new();
    let ordered = cech_ordered_complex(f, order)?;
    let cap = report.cap;
    let full_cech = full_complex_truncated(f.diagram(), cap)?;
    let full_topos = full_complex_truncated(&f.on_elements()?, cap)?;
    for d in &report.degrees {
        let n = d.degree;
        let checks = [
            (
                "ordered Čech complex",
                &d.cech,
                ordered.homology(n)?.canonical_form(),
            ),
            (
                "full Čech complex",
                &d.cech,
                full_cech.homology(n)?.canonical_form(),
            ),
            (
                "full topos complex",
                &d.topos,
                full_topos.homology(n)?.canonical_form(),
            ),
        ];
        for (route, expected, got) in checks {
            if expected != &got {
                problems.push(format!(
                    "degree {n}: {route} gives {got}, expected {expected}"
                ));
            }
        }
    }
    Ok(problems)
}

fn compare(
    json_out: bool,
    poset: &Path,
    presheaf: &Path,
    degrees: Option<Degrees>,
    order: Option<&str>,
    with_oracle: bool,
) -> Outcome {
    let p = load_poset(poset)?;
    let f = load_presheaf(&p, presheaf)?;
    let order = parse_order(&p, order)?;
    let (a, b) = range(degrees, f.cover().node_poset().longest_chain_length());
    let report = compare_report(&f, Some(b))?;
    let oracle_problems = if with_oracle {
        Some(oracle(&f, &report, &order)?)
    } else {
        None
    };
    let shown: Vec<_> = report.degrees.iter().filter(|d| d.degree >= a).collect();
    let all_iso = shown.iter().all(|d| d.iso);
    if json_out {
        let mut rows = Vec::new();
        for d in &shown {
            rows.push(json!({
                "degree": d.degree,
                "cech": canonical_value(&d.cech),
                "topos": canonical_value(&d.topos),
                "iso": d.iso,
                "kernel": canonical_value(&d.map.kernel()?.canonical_form()),
                "cokernel": canonical_value(&d.map.cokernel().canonical_form()),
            }));
        }
        let mut out = json!({"cap": report.cap, "degrees": rows, "all_iso": all_iso});
        if let Some(problems) = &oracle_problems {
            out["oracle"] = json!(problems);
        }
        print_json(&out);
    } else {
        println!("{:<8}{:<20}{:<20}λ_n", "degree", "Čech", "topos");
        for d in &shown {
            let verdict = if d.iso {
                "iso".to_string()
            } else {
                format!(
                    "not iso (kernel {}, cokernel {})",
                    d.map.kernel()?.canonical_form(),
                    d.map.cokernel().canonical_form()
                )
            };
            println!(
                "{:<8}{:<20}{:<20}{verdict}",
                d.degree,
                d.cech.to_string(),
                d.topos.to_string()
            );
        }
        if all_iso {
            println!("all λ_n are isomorphisms in degrees {a}..{b}");
        } else {
            let bad: Vec<String> = shown
                .iter()
                .filter(|d| !d.iso)
                .map(|d| d.degree.to_string())
                .collect();
            println!("λ_n is not an isomorphism in degrees {}", bad.join(", "));
        }
        if let Some(problems) = &oracle_problems {
            if problems.is_empty() {
                println!("oracle: ordered Čech complex and full complexes agree");
            }
        }
    }
    if let Some(problems) = oracle_problems {
        if !problems.is_empty() {
            for msg in &problems {
                eprintln!("oracle mismatch: {msg}");
            }
            return Err(Failure::Internal("oracle routes disagree".into()));
        }
    }
    Ok(all_iso)
}

fn homology(json_out: bool, path: &Path, degrees: Option<Degrees>) -> Outcome {
    let p = load_poset(path)?;
    let (a, b) = range(degrees, p.longest_chain_length());
    let k = OrderComplex::new(&p, Some(b + 1));
    let groups: Vec<(usize, CanonicalGroup)> =
        (a..=b).map(|n| (n, simplicial_homology(&k, n))).collect();
    let acyclic = acyclicity_check(&p, None).is_acyclic();
    if json_out {
        let list: Vec<Value> = groups
            .iter()
            .map(|(n, g)| json!({"degree": n, "group": canonical_value(g)}))
            .collect();
        print_json(&json!({"homology": list, "acyclic": acyclic}));
    } else {
        for (n, g) in &groups {
            println!("H_{n} = {g}");
        }
        println!("{}", if acyclic { "acyclic" } else { "not acyclic" });
    }
    Ok(true)
}

struct FuzzCase {
    size: usize,
    density: f64,
    poset_seed: u64,
    presheaf_seeds: Vec<u64>,
}

struct Violation {
    poset: Poset,
    presheaf: Presheaf,
    report: ComparisonReport,
}

fn total_generators(f: &Presheaf) -> usize {
    f.diagram().values().iter().map(|g| g.generators()).sum()
}

/// Smallest violating presheaf found by shrinking the generation
/// parameters and scanning seeds on the same poset.
fn minimize(poset: &Poset, first: Violation, params: &DiagramParams) -> Result<Violation, Error> {
    let cover = poset.intersection_poset()?;
    let mut best = first;
    for g in 1..=params.max_generators {
        for e in 1..=params.max_entry {
            for torsion in [false, true] {
                let smaller = DiagramParams {
                    max_generators: g,
                    max_entry: e,
                    torsion,
                    constant: false,
                };
                for seed in 0..64 {
                    let f = random_presheaf(&cover, &smaller, seed);
                    if total_generators(&f) >= total_generators(&best.presheaf) {
                        continue;
                    }
                    let report = compare_report(&f, None)?;
                    if !report.all_iso() {
                        best = Violation {
                            poset: poset.clone(),
                            presheaf: f,
                            report,
                        };
                    }
                }
            }
        }
    }
    Ok(best)
}

fn write_bundle(dir: &Path, v: &Violation) -> std::io::Result<()> {
    fs::create_dir_all(dir)?;
    fs::write(dir.join("poset.json"), serialize_poset(&v.poset) + "\n")?;
    let doc = presheaf_value(&v.presheaf, Value::String("poset.json".into()));
    fs::write(
        dir.join("presheaf.json"),
        serde_json::to_string_pretty(&doc).expect("values serialize") + "\n",
    )?;
    let mut text = String::from("degree  Čech  topos  iso\n");
    for d in &v.report.degrees {
        text += &format!("{}  {}  {}  {}\n", d.degree, d.cech, d.topos, d.iso);
    }
    fs::write(dir.join("report.txt"), text)
}

fn fuzz(
    json_out: bool,
    count: usize,
    max_size: usize,
    presheaves: usize,
    max_generators: usize,
    seed: u64,
    out: &Path,
) -> Outcome {
    if max_size == 0 || max_size > 12 {
        return Err(Failure::Input("--max-size must be between 1 and 12".into()));
    }
    let params = DiagramParams {
        max_generators,
        ..DiagramParams::small()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cases: Vec<FuzzCase> = (0..count)
        .map(|_| FuzzCase {
            size: rng.gen_range(1..=max_size),
            density: rng.gen_range(0.1..0.9),
            poset_seed: rng.gen(),
            presheaf_seeds: (0..presheaves).map(|_| rng.gen()).collect(),
        })
        .collect();
    let results: Vec<(bool, usize, Option<Violation>)> = cases
        .par_iter()
        .map(|c| -> Result<_, Error> {
            let p = random_poset(c.size, c.density, c.poset_seed);
            if !criterion(&p, CriterionOptions::default())?.passed() {
                return Ok((false, 0, None));
            }
            let cover = p.intersection_poset()?;
            for (k, &s) in c.presheaf_seeds.iter().enumerate() {
                let f = random_presheaf(&cover, &params, s);
                let report = compare_report(&f, None)?;
                if !report.all_iso() {
                    return Ok((
                        true,
                        k + 1,
                        Some(Violation {
                            poset: p,
                            presheaf: f,
                            report,
                        }),
                    ));
                }
            }
            Ok((true, c.presheaf_seeds.len(), None))
        })
        .collect::<Result<_, Error>>()?;
    let passing = results.iter().filter(|r| r.0).count();
    let checked: usize = results.iter().map(|r| r.1).sum();
    let first = results.into_iter().find_map(|r| r.2);
    let violations = usize::from(first.is_some());
    let mut bundle = None;
    if let Some(v) = first {
        let poset = v.poset.clone();
        let small = minimize(&poset, v, &params)?;
        write_bundle(out, &small).map_err(|e| Failure::Input(format!("{}: {e}", out.display())))?;
        bundle = Some(out.display().to_string());
    }
    if json_out {
        print_json(&json!({
            "seed": seed,
            "posets": count,
            "criterion_pass": passing,
            "criterion_fail": count - passing,
            "presheaves_checked": checked,
            "violations": violations,
            "bundle": bundle,
        }));
    } else {
        println!(
            "seed {seed}: {count} posets, {passing} pass the criterion, {} fail; {checked} presheaves compared, {violations} violations",
            count - passing
        );
        if let Some(b) = bundle {
            println!("reproduction bundle written to {b}");
        }
    }
    Ok(violations == 0)
}

fn random_poset_cmd(json_out: bool, size: usize, density: f64, seed: u64) -> Outcome {
    if size == 0 {
        return Err(Failure::Input("--size must be at least 1".into()));
    }
    if !(0.0..=1.0).contains(&density) {
        return Err(Failure::Input("--density must lie in [0, 1]".into()));
    }
    let p = random_poset(size, density, seed);
    if json_out {
        println!(
            "{}",
            serde_json::to_string(&poset_value(&p)).expect("values serialize")
        );
    } else {
        println!("{}", serialize_poset(&p));
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let j = cli.json;
    let outcome = match &cli.command {
        Command::Validate { poset } => validate(j, poset),
        Command::Cuts { poset } => cuts(j, poset),
        Command::Criterion { poset, no_shortcut } => run_criterion(j, poset, *no_shortcut),
        Command::Skeleton { poset, diagram } => run_skeleton(poset, *diagram),
        Command::Cech {
            poset,
            presheaf,
            degrees,
            order,
        } => cech(j, poset, presheaf, *degrees, order.as_deref()),
        Command::Topos {
            poset,
            presheaf,
            degrees,
        } => topos(j, poset, presheaf, *degrees),
        Command::Compare {
            poset,
            presheaf,
            degrees,
            order,
            oracle,
        } => compare(j, poset, presheaf, *degrees, order.as_deref(), *oracle),
        Command::Homology { poset, degrees } => homology(j, poset, *degrees),
        Command::Fuzz {
            count,
            max_size,
            presheaves,
            max_generators,
            seed,
            out,
        } => fuzz(
            j,
            *count,
            *max_size,
            *presheaves,
            *max_generators,
            *seed,
            out,
        ),
        Command::RandomPoset {
            size,
            density,
            seed,
        } => random_poset_cmd(j, *size, *density, *seed),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
