//! Discrete configuration complexes of a graph.
//!
//! A cell is a choice of `n` vertices and edges of the host graph whose
//! closures are pairwise disjoint; its dimension is the number of edges. The
//! ordered complex uses `n`-tuples, the unordered complex canonical sets.
//! Faces of a cell replace one of its edges by the edge's head or tail, with
//! sign `(-1)^i` on the `i`-th edge slot (head positive, tail negative).

use std::collections::HashMap;
use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::graph::{is_sufficiently_subdivided, EdgeId, Graph, SufficiencyReport, VertexId};
use crate::matrix::SparseMatrix;

/// Default cap on the total number of cells in a complex.
pub const DEFAULT_CELL_BUDGET: usize = 5_000_000;

/// Vertices sort before edges, each by ascending id.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Occupant {
    Vertex(VertexId),
    Edge(EdgeId),
}

impl Occupant {
    pub fn is_edge(&self) -> bool {
        matches!(self, Occupant::Edge(_))
    }
}

impl fmt::Display for Occupant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Occupant::Vertex(v) => write!(f, "v{v}"),
            Occupant::Edge(e) => write!(f, "e{e}"),
        }
    }
}

impl Serialize for Occupant {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

pub type Cell = Vec<Occupant>;

pub fn cell_dimension(cell: &[Occupant]) -> usize {
    cell.iter().filter(|o| o.is_edge()).count()
}

#[derive(Debug, Error)]
pub enum ComplexError {
    #[error("particle count must be at least 1")]
    ZeroParticles,
    #[error("host graph must be simple (no loops or parallel edges)")]
    NotSimple,
    #[error("graph is not sufficiently subdivided for {} particles", .0.n)]
    Insufficient(SufficiencyReport),
    #[error("complex exceeds the budget of {limit} cells")]
    BudgetExceeded { limit: usize },
}

#[derive(Clone, Copy, Debug)]
pub struct BuildOptions {
    /// Build even when the graph fails the sufficiency check.
    pub allow_insufficient: bool,
    pub cell_budget: usize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        Self {
            allow_insufficient: false,
            cell_budget: DEFAULT_CELL_BUDGET,
        }
    }
}

/// A cube complex with integer boundary operators. `boundary(d)` maps
/// `d`-chains to `(d-1)`-chains; `boundary(0)` is the zero map.
#[derive(Clone, Debug)]
pub struct CubeComplex {
    graph: Graph,
    n: usize,
    ordered: bool,
    cells: Vec<Vec<Cell>>,
    index: Vec<HashMap<Cell, usize>>,
    boundaries: Vec<SparseMatrix>,
}

fn closure(g: &Graph, o: Occupant) -> [VertexId; 2] {
    match o {
        Occupant::Vertex(v) => [v, v],
        Occupant::Edge(e) => {
            let edge = g.edge(e);
            [edge.tail, edge.head]
        }
    }
}

fn occupants(g: &Graph) -> Vec<Occupant> {
    (0..g.vertex_count())
        .map(Occupant::Vertex)
        .chain((0..g.edge_count()).map(Occupant::Edge))
        .collect()
}

struct Enumerator<'a> {
    g: &'a Graph,
    all: Vec<Occupant>,
    n: usize,
    ordered: bool,
    used: Vec<bool>,
    taken: Vec<bool>,
    current: Vec<Occupant>,
    out: Vec<Cell>,
    budget: usize,
}

impl Enumerator<'_> {
    fn fits(&self, o: Occupant) -> bool {
        let [a, b] = closure(self.g, o);
        !self.used[a] && !self.used[b]
    }

    fn mark(&mut self, o: Occupant, value: bool) {
        let [a, b] = closure(self.g, o);
        self.used[a] = value;
        self.used[b] = value;
    }

    fn run(&mut self, from: usize) -> Result<(), ComplexError> {
        if self.current.len() == self.n {
            if self.out.len() >= self.budget {
                return Err(ComplexError::BudgetExceeded { limit: self.budget });
            }
            self.out.push(self.current.clone());
            return Ok(());
        }
        let start = if self.ordered { 0 } else { from };
        for i in start..self.all.len() {
            let o = self.all[i];
            if self.taken[i] || !self.fits(o) {
                continue;
            }
            self.taken[i] = true;
            self.mark(o, true);
            self.current.push(o);
            self.run(i + 1)?;
            self.current.pop();
            self.mark(o, false);
            self.taken[i] = false;
        }
        Ok(())
    }
}

/// All cells in lexicographic order, grouped by dimension.
fn enumerate_cells(
    g: &Graph,
    n: usize,
    ordered: bool,
    budget: usize,
) -> Result<Vec<Vec<Cell>>, ComplexError> {
    let all = occupants(g);
    let mut e = Enumerator {
        g,
        taken: vec![false; all.len()],
        all,
        n,
        ordered,
        used: vec![false; g.vertex_count()],
        current: Vec::with_capacity(n),
        out: Vec::new(),
        budget,
    };
    e.run(0)?;
    let top = e.out.iter().map(|c| cell_dimension(c)).max().unwrap_or(0);
    let mut by_dim = vec![Vec::new(); top + 1];
    for cell in e.out {
        by_dim[cell_dimension(&cell)].push(cell);
    }
    Ok(by_dim)
}

impl CubeComplex {
    fn build(g: &Graph, n: usize, ordered: bool, opts: BuildOptions) -> Result<Self, ComplexError> {
        if n == 0 {
            return Err(ComplexError::ZeroParticles);
        }
        if !g.is_simple() {
            return Err(ComplexError::NotSimple);
        }
        if !opts.allow_insufficient {
            let report = is_sufficiently_subdivided(g, n);
            if !report.ok {
                return Err(ComplexError::Insufficient(report));
            }
        }
        let cells = enumerate_cells(g, n, ordered, opts.cell_budget)?;
        let index: Vec<HashMap<Cell, usize>> = cells
            .iter()
            .map(|list| {
                list.iter()
                    .cloned()
                    .enumerate()
                    .map(|(i, c)| (c, i))
                    .collect()
            })
            .collect();

        let mut boundaries = vec![SparseMatrix::zeros(0, cells[0].len())];
        for d in 1..cells.len() {
            let columns = cells[d]
                .iter()
                .map(|cell| {
                    let mut col = Vec::with_capacity(2 * d);
                    let slots = cell.iter().enumerate().filter_map(|(p, o)| match o {
                        Occupant::Edge(e) => Some((p, *e)),
                        Occupant::Vertex(_) => None,
                    });
                    for (i, (pos, e)) in slots.enumerate() {
                        let sign = if i % 2 == 0 { 1 } else { -1 };
                        let edge = g.edge(e);
                        for (end, coef) in [(edge.head, sign), (edge.tail, -sign)] {
                            let mut face = cell.clone();
                            face[pos] = Occupant::Vertex(end);
                            if !ordered {
                                face.sort_unstable();
                            }
                            let row = index[d - 1][&face];
                            col.push((row, coef));
                        }
                    }
                    col
                })
                .collect();
            boundaries.push(SparseMatrix::from_columns(cells[d - 1].len(), columns));
        }

        Ok(Self {
            graph: g.clone(),
            n,
            ordered,
            cells,
            index,
            boundaries,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn particles(&self) -> usize {
        self.n
    }

    pub fn is_ordered(&self) -> bool {
        self.ordered
    }

    /// Highest dimension with at least one cell slot (0 for an empty complex).
    pub fn top_dimension(&self) -> usize {
        self.cells.len() - 1
    }

    pub fn cells(&self, d: usize) -> &[Cell] {
        self.cells.get(d).map_or(&[], Vec::as_slice)
    }

    pub fn cell_count(&self, d: usize) -> usize {
        self.cells(d).len()
    }

    pub fn cell_counts(&self) -> Vec<usize> {
        self.cells.iter().map(Vec::len).collect()
    }

    pub fn total_cells(&self) -> usize {
        self.cells.iter().map(Vec::len).sum()
    }

    /// The boundary map out of dimension `d`. Dimensions above the top give
    /// an empty matrix with the right row count.
    pub fn boundary(&self, d: usize) -> SparseMatrix {
        match self.boundaries.get(d) {
            Some(m) => m.clone(),
            None => SparseMatrix::zeros(self.cell_count(d.saturating_sub(1)), 0),
        }
    }

    pub fn boundary_ref(&self, d: usize) -> Option<&SparseMatrix> {
        self.boundaries.get(d)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.cells
            .iter()
            .enumerate()
            .map(|(d, c)| {
                if d % 2 == 0 {
                    c.len() as i64
                } else {
                    -(c.len() as i64)
                }
            })
            .sum()
    }

    /// Index of `cell` within its dimension, if it is a cell of this complex.
    /// Unordered cells must be given in canonical (sorted) order.
    pub fn cell_lookup(&self, cell: &[Occupant]) -> Option<usize> {
        if cell.len() != self.n {
            return None;
        }
        self.index.get(cell_dimension(cell))?.get(cell).copied()
    }

    /// For a 1-cell, its `(tail, head)` 0-cells: moving the particle on the
    /// edge from tail to head.
    pub fn edge_endpoints(&self, one_cell: usize) -> (usize, usize) {
        let col = self.boundaries[1].column(one_cell);
        let head = col.iter().find(|&&(_, v)| v == 1).expect("head face").0;
        let tail = col.iter().find(|&&(_, v)| v == -1).expect("tail face").0;
        (tail, head)
    }

    pub fn export(&self) -> ComplexExport<'_> {
        ComplexExport {
            ordered: self.ordered,
            n: self.n,
            cell_counts: self.cell_counts(),
            cells: &self.cells,
            boundaries: (1..self.boundaries.len())
                .map(|d| BoundaryExport {
                    dimension: d,
                    rows: self.boundaries[d].rows(),
                    cols: self.boundaries[d].cols(),
                    triplets: self.boundaries[d].triplets().collect(),
                })
                .collect(),
        }
    }
}

/// JSON export. Occupants serialize as `"v<id>"` or `"e<id>"`; boundary
/// triplets are `[row, col, value]` with rows indexing `(d-1)`-cells.
#[derive(Serialize)]
pub struct ComplexExport<'a> {
    pub ordered: bool,
    pub n: usize,
    pub cell_counts: Vec<usize>,
    pub cells: &'a [Vec<Cell>],
    pub boundaries: Vec<BoundaryExport>,
}

#[derive(Serialize)]
pub struct BoundaryExport {
    pub dimension: usize,
    pub rows: usize,
    pub cols: usize,
    pub triplets: Vec<(usize, usize, i64)>,
}

pub fn build_unordered(g: &Graph, n: usize) -> Result<CubeComplex, ComplexError> {
    build_unordered_with(g, n, BuildOptions::default())
}

pub fn build_unordered_with(
    g: &Graph,
    n: usize,
    opts: BuildOptions,
) -> Result<CubeComplex, ComplexError> {
    CubeComplex::build(g, n, false, opts)
}

pub fn build_ordered(g: &Graph, n: usize) -> Result<CubeComplex, ComplexError> {
    build_ordered_with(g, n, BuildOptions::default())
}

pub fn build_ordered_with(
    g: &Graph,
    n: usize,
    opts: BuildOptions,
) -> Result<CubeComplex, ComplexError> {
    CubeComplex::build(g, n, true, opts)
}
