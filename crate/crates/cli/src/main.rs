//! `graphconf` command-line front end.
//!
//! JSON goes to stdout, human-readable summaries to stderr.

mod corpus;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand};
use graphconf::abrams::DEFAULT_CELL_BUDGET;
use graphconf::abrams::{
    build_ordered_with, build_unordered_with, BuildOptions, ComplexError, CubeComplex,
};
use graphconf::bundle::{classify_order, verify_order_with, BundleError, VerifyOptions};
use graphconf::graph::{is_sufficiently_subdivided, subdivide, Graph, GraphError};
use graphconf::homology::homology_z;
use serde_json::json;

pub const EXIT_INPUT: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_MISMATCH: u8 = 3;
pub const EXIT_BUDGET: u8 = 4;

#[derive(Parser)]
#[command(name = "graphconf", version)]
#[command(about = "Configuration spaces of particles on graphs: complexes, homology, bundle order")]
struct Cli {
    /// Print only JSON; suppress the summary on stderr.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Edge-list file.
    #[arg(long)]
    graph: PathBuf,

    /// Number of particles.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    n: u64,
}

impl Input {
    fn n(&self) -> usize {
        self.n as usize
    }
}

#[derive(Args)]
struct ComplexFlags {
    /// Ordered configurations.
    #[arg(long, conflicts_with = "unordered")]
    ordered: bool,

    /// Unordered configurations (the default).
    #[arg(long)]
    unordered: bool,

    /// Use the graph as given instead of subdividing it first.
    #[arg(long)]
    no_subdivide: bool,

    /// Maximum number of cells.
    #[arg(long, default_value_t = DEFAULT_CELL_BUDGET)]
    budget: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Order and stable order of the canonical bundle.
    Classify {
        #[command(flatten)]
        input: Input,
    },
    /// Integral and mod-2 homology of the discrete configuration complex.
    Homology {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        flags: ComplexFlags,
    },
    /// Classification with w1 and Sq1 evidence from the discrete model.
    Bundle {
        #[command(flatten)]
        input: Input,
        /// Maximum number of cells.
        #[arg(long, default_value_t = DEFAULT_CELL_BUDGET)]
        budget: usize,
    },
    /// Sufficiently subdivided edge list for the given particle count.
    Subdivide {
        #[command(flatten)]
        input: Input,
    },
    /// Cells and boundary matrices of the discrete configuration complex.
    ExportComplex {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        flags: ComplexFlags,
    },
    /// Check every entry of a corpus directory against its expectations.
    Verify {
        corpus: PathBuf,
        /// Maximum number of cells per entry.
        #[arg(long, default_value_t = DEFAULT_CELL_BUDGET)]
        budget: usize,
    },
}

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub error: anyhow::Error,
}

impl Failure {
    pub fn new(code: u8, error: anyhow::Error) -> Self {
        Self { code, error }
    }
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Self::new(EXIT_INPUT, e.into())
    }
}

pub fn complex_failure(e: ComplexError) -> Failure {
    match e {
        ComplexError::BudgetExceeded { .. } => Failure::new(EXIT_BUDGET, e.into()),
        ComplexError::ZeroParticles => Failure::new(EXIT_USAGE, e.into()),
        _ => Failure::new(EXIT_INPUT, e.into()),
    }
}

pub fn bundle_failure(e: BundleError) -> Failure {
    match e {
        BundleError::Complex(c) => complex_failure(c),
        BundleError::ZeroParticles => Failure::new(EXIT_USAGE, e.into()),
        _ => Failure::new(EXIT_INPUT, e.into()),
    }
}

pub fn read_graph(path: &Path) -> Result<Graph, Failure> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let g = Graph::parse_edge_list(&text).with_context(|| format!("parsing {}", path.display()))?;
    Ok(g)
}

fn print_json(value: &impl serde::Serialize) -> Result<(), Failure> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

struct Ui {
    quiet: bool,
}

impl Ui {
    fn note(&self, msg: impl AsRef<str>) {
        if !self.quiet {
            eprintln!("{}", msg.as_ref());
        }
    }
}

/// The host graph for a complex: subdivided unless suppressed.
pub fn host_graph(g: &Graph, n: usize, no_subdivide: bool) -> Result<(Graph, bool), Failure> {
    if no_subdivide {
        let ok = is_sufficiently_subdivided(g, n).ok;
        return Ok((g.clone(), ok));
    }
    match subdivide(g, n) {
        Ok(s) => Ok((s, true)),
        Err(GraphError::EmptyConfiguration { .. }) => Ok((g.clone(), false)),
        Err(e) => Err(Failure::new(EXIT_USAGE, e.into())),
    }
}

fn build_complex(
    input: &Input,
    flags: &ComplexFlags,
) -> Result<(CubeComplex, bool, bool), Failure> {
    let g = read_graph(&input.graph)?;
    let (host, sufficient) = host_graph(&g, input.n(), flags.no_subdivide)?;
    let opts = BuildOptions {
        allow_insufficient: true,
        cell_budget: flags.budget,
    };
    let c = if flags.ordered {
        build_ordered_with(&host, input.n(), opts)
    } else {
        build_unordered_with(&host, input.n(), opts)
    }
    .map_err(complex_failure)?;
    Ok((c, sufficient, !flags.no_subdivide))
}

fn run(cli: Cli) -> Result<(), Failure> {
    let ui = Ui { quiet: cli.json };
    match cli.command {
        Command::Classify { input } => {
            let g = read_graph(&input.graph)?;
            let report = classify_order(&g, input.n()).map_err(bundle_failure)?;
            print_json(&report)?;
            ui.note(format!(
                "order {} (stable order {}), case {}",
                report.order,
                report.stable_order,
                serde_json::to_value(report.case)?
                    .as_str()
                    .unwrap_or_default()
            ));
        }
        Command::Homology { input, flags } => {
            let (c, sufficient, subdivided) = build_complex(&input, &flags)?;
            let h = homology_z(&c);
            if !sufficient {
                ui.note("warning: host graph is not sufficiently subdivided for this n");
            }
            print_json(&json!({
                "n": input.n(),
                "ordered": c.is_ordered(),
                "subdivided": subdivided,
                "sufficient": sufficient,
                "cell_counts": c.cell_counts(),
                "euler_characteristic": c.euler_characteristic(),
                "homology": h,
            }))?;
            for d in &h.degrees {
                let torsion: Vec<String> = d.torsion.iter().map(|t| format!(" + Z/{t}")).collect();
                ui.note(format!(
                    "H{} = Z^{}{}  (F2 rank {})",
                    d.degree,
                    d.betti,
                    torsion.concat(),
                    d.betti_mod2
                ));
            }
        }
        Command::Bundle { input, budget } => {
            let g = read_graph(&input.graph)?;
            let report = verify_order_with(
                &g,
                input.n(),
                VerifyOptions {
                    cell_budget: budget,
                },
            )
            .map_err(bundle_failure)?;
            print_json(&report)?;
            match &report.evidence {
                Some(e) => ui.note(format!(
                    "order {}: w1 {}, Sq1 w1 {}, {}",
                    report.order,
                    if e.w1_nonzero { "nonzero" } else { "zero" },
                    if e.sq1_nonzero { "nonzero" } else { "zero" },
                    if e.consistent {
                        "consistent"
                    } else {
                        "INCONSISTENT"
                    }
                )),
                None => {
                    return Err(Failure::new(
                        EXIT_BUDGET,
                        anyhow!(
                            "order {}; evidence omitted: complex exceeds {budget} cells",
                            report.order
                        ),
                    ))
                }
            }
        }
        Command::Subdivide { input } => {
            let g = read_graph(&input.graph)?;
            let s = subdivide(&g, input.n()).map_err(|e| Failure::new(EXIT_USAGE, e.into()))?;
            print!("{}", s.to_edge_list());
            ui.note(format!(
                "{} vertices, {} edges, sufficient for n = {}: {}",
                s.vertex_count(),
                s.edge_count(),
                input.n(),
                is_sufficiently_subdivided(&s, input.n()).ok
            ));
        }
        Command::ExportComplex { input, flags } => {
            let (c, _, _) = build_complex(&input, &flags)?;
            print_json(&c.export())?;
            ui.note(format!("cell counts {:?}", c.cell_counts()));
        }
        Command::Verify { corpus, budget } => corpus::verify(&corpus, budget, cli.json)?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}
