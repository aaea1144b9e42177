//! Regression corpus: one JSON file per entry naming a graph file, a particle
//! count and the values expected for it.

use std::fmt::Debug;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context};
use graphconf::abrams::{build_ordered_with, build_unordered_with, BuildOptions};
use graphconf::bundle::{classify_order, verify_order_with, VerifyOptions};
use graphconf::homology::homology_z;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::{
    bundle_failure, complex_failure, host_graph, read_graph, Failure, EXIT_BUDGET, EXIT_MISMATCH,
};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusEntry {
    pub name: String,
    /// Relative to the corpus directory.
    pub graph: PathBuf,
    pub n: usize,
    #[serde(default)]
    pub expected: Expected,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expected {
    pub order: Option<u8>,
    pub stable_order: Option<u8>,
    pub case: Option<String>,
    pub planarity: Option<String>,
    pub w1_nonzero: Option<bool>,
    pub sq1_nonzero: Option<bool>,
    pub consistent: Option<bool>,
    pub homology: Option<ExpectedHomology>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectedHomology {
    #[serde(default)]
    pub ordered: bool,
    #[serde(default = "yes")]
    pub subdivide: bool,
    pub cell_counts: Option<Vec<usize>>,
    pub euler_characteristic: Option<i64>,
    pub betti: Option<Vec<usize>>,
    pub torsion: Option<Vec<Vec<u64>>>,
    pub betti_mod2: Option<Vec<usize>>,
}

fn yes() -> bool {
    true
}

#[derive(Debug, Serialize, PartialEq, Eq, PartialOrd, Ord)]
#[serde(rename_all = "lowercase")]
enum Status {
    Pass,
    Budget,
    Mismatch,
}

#[derive(Debug, Serialize)]
struct Outcome {
    name: String,
    status: Status,
    mismatches: Vec<String>,
}

impl CorpusEntry {
    fn validate(&self) -> anyhow::Result<()> {
        if self.n == 0 {
            bail!("n must be at least 1");
        }
        for (field, value) in [
            ("order", self.expected.order),
            ("stable_order", self.expected.stable_order),
        ] {
            if let Some(v) = value {
                if ![1, 2, 4].contains(&v) {
                    bail!("{field} must be 1, 2 or 4, found {v}");
                }
            }
        }
        Ok(())
    }

    fn needs_evidence(&self) -> bool {
        let e = &self.expected;
        e.w1_nonzero.is_some() || e.sq1_nonzero.is_some() || e.consistent.is_some()
    }
}

pub fn load(dir: &Path) -> anyhow::Result<Vec<(CorpusEntry, PathBuf)>> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .with_context(|| format!("reading corpus directory {}", dir.display()))?
        .map(|entry| entry.map(|e| e.path()))
        .collect::<Result<_, _>>()?;
    files.retain(|p| p.extension().is_some_and(|e| e == "json"));
    let mut entries = Vec::new();
    for path in files {
        let text =
            fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
        let entry: CorpusEntry =
            serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
        entry
            .validate()
            .with_context(|| format!("in {}", path.display()))?;
        let graph = dir.join(&entry.graph);
        if !graph.is_file() {
            return Err(anyhow!(
                "{}: graph file {} not found",
                path.display(),
                graph.display()
            ));
        }
        entries.push((entry, graph));
    }
    entries.sort_by(|a, b| a.0.name.cmp(&b.0.name));
    Ok(entries)
}

fn check<T: PartialEq + Debug>(out: &mut Vec<String>, field: &str, expected: &Option<T>, got: T) {
    if let Some(want) = expected {
        if *want != got {
            out.push(format!("{field}: expected {want:?}, got {got:?}"));
        }
    }
}

fn label<T: Serialize>(v: T) -> String {
    serde_json::to_value(v)
        .ok()
        .and_then(|v| v.as_str().map(str::to_owned))
        .unwrap_or_default()
}

fn run_entry(entry: &CorpusEntry, graph: &Path, budget: usize) -> Result<Vec<String>, Failure> {
    let g = read_graph(graph)?;
    let e = &entry.expected;
    let mut out = Vec::new();

    let report = if entry.needs_evidence() {
        verify_order_with(
            &g,
            entry.n,
            VerifyOptions {
                cell_budget: budget,
            },
        )
    } else {
        classify_order(&g, entry.n)
    }
    .map_err(bundle_failure)?;
    check(&mut out, "order", &e.order, report.order);
    check(
        &mut out,
        "stable_order",
        &e.stable_order,
        report.stable_order,
    );
    check(&mut out, "case", &e.case, label(report.case));
    check(&mut out, "planarity", &e.planarity, label(report.planarity));
    if entry.needs_evidence() {
        let Some(ev) = &report.evidence else {
            return Err(Failure::new(
                EXIT_BUDGET,
                anyhow!("evidence exceeds {budget} cells"),
            ));
        };
        check(&mut out, "w1_nonzero", &e.w1_nonzero, ev.w1_nonzero);
        check(&mut out, "sq1_nonzero", &e.sq1_nonzero, ev.sq1_nonzero);
        check(&mut out, "consistent", &e.consistent, ev.consistent);
    }

    if let Some(h) = &e.homology {
        let (host, _) = host_graph(&g, entry.n, !h.subdivide)?;
        let opts = BuildOptions {
            allow_insufficient: true,
            cell_budget: budget,
        };
        let c = if h.ordered {
            build_ordered_with(&host, entry.n, opts)
        } else {
            build_unordered_with(&host, entry.n, opts)
        }
        .map_err(complex_failure)?;
        let result = homology_z(&c);
        let degrees = 0..result.degrees.len();
        check(&mut out, "cell_counts", &h.cell_counts, c.cell_counts());
        check(
            &mut out,
            "euler_characteristic",
            &h.euler_characteristic,
            c.euler_characteristic(),
        );
        check(
            &mut out,
            "betti",
            &h.betti,
            degrees.clone().map(|d| result.betti(d)).collect(),
        );
        check(
            &mut out,
            "torsion",
            &h.torsion,
            degrees.clone().map(|d| result.torsion(d)).collect(),
        );
        check(
            &mut out,
            "betti_mod2",
            &h.betti_mod2,
            degrees.map(|d| result.betti_mod2(d)).collect(),
        );
    }
    Ok(out)
}

pub fn verify(dir: &Path, budget: usize, quiet: bool) -> Result<(), Failure> {
    let entries = load(dir)?;
    if entries.is_empty() && !quiet {
        eprintln!("warning: no corpus entries in {}", dir.display());
    }
    let mut outcomes = Vec::new();
    for (entry, graph) in &entries {
        let outcome = match run_entry(entry, graph, budget) {
            Ok(mismatches) if mismatches.is_empty() => Outcome {
                name: entry.name.clone(),
                status: Status::Pass,
                mismatches,
            },
            Ok(mismatches) => Outcome {
                name: entry.name.clone(),
                status: Status::Mismatch,
                mismatches,
            },
            Err(f) if f.code == EXIT_BUDGET => Outcome {
                name: entry.name.clone(),
                status: Status::Budget,
                mismatches: vec![format!("{:#}", f.error)],
            },
            Err(f) => {
                return Err(Failure::new(
                    f.code,
                    f.error.context(format!("entry {}", entry.name)),
                ));
            }
        };
        if !quiet {
            match outcome.status {
                Status::Pass => eprintln!("PASS    {}", outcome.name),
                Status::Budget => eprintln!(
                    "BUDGET  {}: {}",
                    outcome.name,
                    outcome.mismatches.join("; ")
                ),
                Status::Mismatch => eprintln!(
                    "FAIL    {}: {}",
                    outcome.name,
                    outcome.mismatches.join("; ")
                ),
            }
        }
        outcomes.push(outcome);
    }
    let passed = outcomes.iter().filter(|o| o.status == Status::Pass).count();
    println!(
        "{}",
        serde_json::to_string_pretty(&json!({
            "entries": outcomes,
            "passed": passed,
            "failed": outcomes.len() - passed,
        }))?
    );
    if !quiet {
        eprintln!("{passed}/{} entries pass", outcomes.len());
    }
    match outcomes.iter().map(|o| &o.status).max() {
        Some(Status::Mismatch) => Err(Failure::new(
            EXIT_MISMATCH,
            anyhow!("corpus verification failed"),
        )),
        Some(Status::Budget) => Err(Failure::new(
            EXIT_BUDGET,
            anyhow!("some entries exceed the cell budget"),
        )),
        _ => Ok(()),
    }
}
