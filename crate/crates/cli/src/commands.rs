use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use ens_core::boxgen::{fixture, GenerateRequest, GeneratorRegistry, FIXTURE_NAMES};
use ens_core::comm::strategy_behaviors;
use ens_core::format::{self, BehaviorJson, DecompositionJson, FunctionalJson, TermJson};
use ens_core::lo::{
    build_exclusivity_graph, find_violating_clique_with_limit, parse_event, verify_clique,
    CliqueOutcome, CliqueWitness,
};
use ens_core::polytope::{
    critical_visibility, decompose_into_vertices, extremality_certificate, membership,
    EnumeratorRegistry, Limits, MembershipResult,
};
use ens_core::rational;
use ens_core::{canonical_form, Behavior, Scenario};
use serde::{Deserialize, Serialize};

use crate::report::{pretty, read_behavior, write_file};
use crate::Guards;

pub fn validate(path: &Path) -> Result<bool> {
    let b = read_behavior(path)?;
    let report = b.validate();
    if report.is_ok() {
        println!("ok: valid behavior in scenario {}", b.scenario());
        Ok(true)
    } else {
        println!("invalid behavior in scenario {}", b.scenario());
        println!("{report}");
        Ok(false)
    }
}

pub fn extremal(path: &Path, perturbation_out: Option<&Path>) -> Result<bool> {
    let b = read_behavior(path)?;
    let cert = extremality_certificate(&b)?;
    if !cert.verify(&b) {
        bail!("extremality certificate failed its own check");
    }
    match &cert.perturbation {
        None => {
            println!(
                "extremal: the behavior is a vertex ({} zeros)",
                b.zero_count()
            );
            Ok(true)
        }
        Some(v) => {
            let nonzero = v.iter().filter(|c| **c != rational::zero()).count();
            println!("not extremal: perturbation direction with {nonzero} nonzero entries");
            if let Some(out) = perturbation_out {
                let direction = Behavior::new(b.scenario(), v.clone())?;
                write_file(out, &pretty(&BehaviorJson::from(&direction)))?;
                println!("perturbation written to {}", out.display());
            }
            Ok(false)
        }
    }
}

#[derive(Serialize, Deserialize)]
pub struct LabeledBox {
    pub label: String,
    pub behavior: BehaviorJson,
}

#[derive(Serialize, Deserialize)]
pub struct BoxList {
    pub format: u32,
    pub generator: String,
    pub boxes: Vec<LabeledBox>,
}

#[derive(Serialize)]
struct ClassEntry {
    local: bool,
    full_output: bool,
    zeros: usize,
    behavior: BehaviorJson,
}

#[derive(Serialize)]
struct Database {
    format: u32,
    scenario: Scenario,
    strategy: String,
    class_count: usize,
    nonlocal_class_count: usize,
    classes: Vec<ClassEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    vertices: Option<Vec<BehaviorJson>>,
}

fn read_seeds(path: &Path) -> Result<Vec<Behavior>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    if let Ok(list) = serde_json::from_str::<BoxList>(&text) {
        return list
            .boxes
            .iter()
            .map(|b| Behavior::try_from(&b.behavior).map_err(Into::into))
            .collect();
    }
    Ok(vec![format::parse_behavior(&text)?])
}

pub fn enumerate(
    scenario: &str,
    strategy: &str,
    seeds: Option<&Path>,
    out: Option<&Path>,
    all_vertices: bool,
    guards: &Guards,
) -> Result<bool> {
    let s: Scenario = scenario.parse()?;
    let seeds = match seeds {
        Some(p) => read_seeds(p)?,
        None => Vec::new(),
    };
    let limits = Limits {
        max_rays: guards.max_rays,
        ..Limits::default()
    };
    let registry = EnumeratorRegistry::default();
    let enumerator = registry.get(strategy)?;
    let enumeration = enumerator.classes(s, &seeds, &limits)?;
    let vertices = if all_vertices {
        Some(enumerator.vertices(s, &seeds, &limits)?)
    } else {
        None
    };
    let nonlocal = enumeration.nonlocal_classes();
    let full = nonlocal.iter().filter(|b| b.is_full_output()).count();
    println!("scenario {s}, strategy {}", enumerator.name());
    println!("classes: {}", enumeration.classes.len());
    println!("nonlocal classes: {}", nonlocal.len());
    println!("full-output nonlocal classes: {full}");
    if let Some(v) = &vertices {
        println!("vertices: {}", v.len());
    }
    if let Some(out) = out {
        let db = Database {
            format: format::DATABASE_FORMAT_VERSION,
            scenario: s,
            strategy: enumerator.name().to_string(),
            class_count: enumeration.classes.len(),
            nonlocal_class_count: nonlocal.len(),
            classes: enumeration
                .classes
                .iter()
                .map(|b| ClassEntry {
                    local: ens_core::polytope::is_deterministic(b),
                    full_output: b.is_full_output(),
                    zeros: b.zero_count(),
                    behavior: BehaviorJson::from(b),
                })
                .collect(),
            vertices: vertices.map(|v| v.iter().map(BehaviorJson::from).collect()),
        };
        write_file(out, &pretty(&db))?;
        println!("database written to {}", out.display());
    }
    Ok(true)
}

fn print_clique(w: &CliqueWitness) {
    for (e, p) in w.events.iter().zip(&w.weights) {
        println!("  {e}  {}", rational::format(p));
    }
}

pub fn lo2(path: &Path, k: usize, events: Option<&Path>, guards: &Guards) -> Result<bool> {
    let b = read_behavior(path)?;
    let graph = build_exclusivity_graph(&b, k, guards.max_graph_vertices)?;
    println!("exclusivity graph: k = {k}, {} vertices", graph.len());
    if let Some(events) = events {
        let text =
            fs::read_to_string(events).with_context(|| format!("reading {}", events.display()))?;
        let parsed = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| parse_event(l, b.scenario(), k))
            .collect::<ens_core::Result<Vec<_>>>()?;
        let w = verify_clique(&graph, &parsed)?;
        println!(
            "clique of {} events, total weight {}",
            w.len(),
            rational::format(&w.total_weight)
        );
        print_clique(&w);
        return Ok(w.is_violation());
    }
    match find_violating_clique_with_limit(&graph, guards.max_clique_nodes)? {
        CliqueOutcome::Violation(w) => {
            println!(
                "violation: {} events, total weight {}",
                w.len(),
                rational::format(&w.total_weight)
            );
            print_clique(&w);
            Ok(true)
        }
        CliqueOutcome::NoViolation { maximum } => {
            println!(
                "no violation: maximum clique weight {}",
                rational::format(&maximum.total_weight)
            );
            Ok(false)
        }
    }
}

#[derive(Serialize)]
struct Level {
    d: usize,
    inside: bool,
    visibility: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<FunctionalJson>,
}

#[derive(Serialize)]
struct CommReport {
    scenario: Scenario,
    d_max: usize,
    min_dit: Option<usize>,
    levels: Vec<Level>,
}

pub fn commcheck(
    path: &Path,
    d_max: usize,
    witness_out: Option<&Path>,
    json: bool,
    guards: &Guards,
) -> Result<bool> {
    let b = read_behavior(path)?;
    b.ensure_valid()?;
    if d_max == 0 {
        bail!("--d-max must be at least 1");
    }
    let mut levels = Vec::new();
    let mut min_dit = None;
    for d in 1..=d_max {
        let vertices = strategy_behaviors(b.scenario(), d, guards.max_strategies)?;
        let result = membership(&b, &vertices)?;
        let inside = result.is_inside();
        let visibility = if inside {
            rational::one()
        } else {
            critical_visibility(&b, &vertices)?
        };
        let witness = match result {
            MembershipResult::Outside { functional, bound } => {
                Some(FunctionalJson::new(&functional, &bound))
            }
            MembershipResult::Inside { .. } => None,
        };
        levels.push(Level {
            d,
            inside,
            visibility: rational::format(&visibility),
            witness,
        });
        if inside {
            min_dit = Some(d);
            break;
        }
    }
    if let Some(out) = witness_out {
        match levels.iter().rev().find_map(|l| l.witness.as_ref()) {
            Some(w) => write_file(out, &pretty(w))?,
            None => println!("no separating functional: simulable without communication"),
        }
    }
    let report = CommReport {
        scenario: b.scenario(),
        d_max,
        min_dit,
        levels,
    };
    if json {
        print!("{}", pretty(&report));
    } else {
        for l in &report.levels {
            let verdict = if l.inside { "inside" } else { "outside" };
            println!(
                "d = {}: {verdict}, critical visibility {}",
                l.d, l.visibility
            );
        }
        match min_dit {
            Some(d) => println!("min_dit: {d}"),
            None => println!("min_dit: above {d_max}"),
        }
    }
    Ok(min_dit.is_some())
}

/// Fixture whose class contains `b`, if any.
fn fixture_class(b: &Behavior, canon: &[(&'static str, Behavior)]) -> Result<Option<&'static str>> {
    let c = canonical_form(b)?;
    Ok(canon.iter().find(|(_, f)| *f == c).map(|(n, _)| *n))
}

pub fn decompose(path: &Path, out: Option<&Path>) -> Result<bool> {
    let b = read_behavior(path)?;
    let d = decompose_into_vertices(&b)?;
    let canon = FIXTURE_NAMES
        .iter()
        .filter_map(|&n| {
            fixture(n)
                .filter(|f| f.scenario() == b.scenario())
                .map(|f| (n, f))
        })
        .map(|(n, f)| Ok((n, canonical_form(&f)?)))
        .collect::<Result<Vec<_>>>()?;
    println!("{} terms, verified", d.terms.len());
    for (w, v) in &d.terms {
        let class = match fixture_class(v, &canon)? {
            Some(name) => format!(", class of {name}"),
            None => String::new(),
        };
        println!(
            "  {}  vertex with {} zeros{class}",
            rational::format(w),
            v.zero_count()
        );
    }
    if let Some(out) = out {
        let json = DecompositionJson {
            terms: d
                .terms
                .iter()
                .map(|(w, v)| TermJson {
                    weight: rational::format(w),
                    vertex: BehaviorJson::from(v),
                })
                .collect(),
        };
        write_file(out, &pretty(&json))?;
        println!("decomposition written to {}", out.display());
    }
    Ok(true)
}

pub fn generate(
    generator: &str,
    scenario: Option<&str>,
    coprime_only: bool,
    name: Option<String>,
    out_dir: Option<&Path>,
) -> Result<bool> {
    let request = GenerateRequest {
        scenario: scenario.map(str::parse).transpose()?,
        coprime_only,
        name,
    };
    let registry = GeneratorRegistry::default();
    let boxes = registry.get(generator)?.generate(&request)?;
    match out_dir {
        Some(dir) => {
            fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            for (i, g) in boxes.iter().enumerate() {
                let path = dir.join(format!("{i:03}.txt"));
                let text = format!("# {}\n{}", g.label, format::to_text(&g.behavior));
                write_file(&path, &text)?;
            }
            println!("{} boxes written to {}", boxes.len(), dir.display());
        }
        None => {
            let list = BoxList {
                format: format::DATABASE_FORMAT_VERSION,
                generator: generator.to_string(),
                boxes: boxes
                    .iter()
                    .map(|g| LabeledBox {
                        label: g.label.clone(),
                        behavior: BehaviorJson::from(&g.behavior),
                    })
                    .collect(),
            };
            print!("{}", pretty(&list));
        }
    }
    Ok(true)
}
