//! Label transport in the unordered complex and the resulting permutation
//! holonomy of the covering by the ordered complex.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use serde::Serialize;

use super::BundleError;
use crate::abrams::{CubeComplex, Occupant};
use crate::graph::VertexId;
use crate::homology::Cochain;

/// A permutation of `0..n` given by its images.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self((0..n).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Self {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            assert!(
                i < images.len() && !seen[i],
                "not a permutation: {images:?}"
            );
            seen[i] = true;
        }
        Self(images)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn after(&self, first: &Permutation) -> Permutation {
        Permutation(first.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Permutation(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Cycle lengths in decreasing order, fixed points included.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut seen = vec![false; self.0.len()];
        let mut lengths = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut at = start;
            while !seen[at] {
                seen[at] = true;
                at = self.0[at];
                len += 1;
            }
            lengths.push(len);
        }
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        lengths
    }

    pub fn is_odd(&self) -> bool {
        self.cycle_type().iter().map(|l| l - 1).sum::<usize>() % 2 == 1
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.0.len()];
        let mut wrote = false;
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] == start {
                continue;
            }
            write!(f, "(")?;
            let mut at = start;
            let mut first = true;
            while !seen[at] {
                seen[at] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{}", at + 1)?;
                first = false;
                at = self.0[at];
            }
            write!(f, ")")?;
            wrote = true;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SpanningTree {
    /// Breadth-first from the least 0-cell of each component.
    #[default]
    BreadthFirst,
    /// Depth-first from the greatest 0-cell of each component.
    DepthFirstFromLast,
}

/// Tree-transported particle labels on every 0-cell of the unordered complex,
/// and the permutation picked up along each non-tree 1-cell.
#[derive(Clone, Debug)]
pub struct HolonomyRep {
    n: usize,
    base_cells: Vec<usize>,
    in_tree: Vec<bool>,
    /// `labels[cell][i]` is the graph vertex carrying particle `i`.
    labels: Vec<Vec<VertexId>>,
    /// Keyed by non-tree 1-cell, for traversal from tail to head.
    holonomy: BTreeMap<usize, Permutation>,
    one_cells: usize,
    endpoints: Vec<(usize, usize)>,
    moves: Vec<(VertexId, VertexId)>,
}

fn vertices_of(cell: &[Occupant]) -> Vec<VertexId> {
    cell.iter()
        .map(|o| match o {
            Occupant::Vertex(v) => *v,
            Occupant::Edge(_) => unreachable!("0-cells hold only vertices"),
        })
        .collect()
}

impl HolonomyRep {
    pub fn particles(&self) -> usize {
        self.n
    }

    /// One base 0-cell per connected component, in increasing order of
    /// component discovery.
    pub fn base_cells(&self) -> &[usize] {
        &self.base_cells
    }

    pub fn tree(&self) -> Vec<usize> {
        (0..self.in_tree.len())
            .filter(|&i| self.in_tree[i])
            .collect()
    }

    pub fn is_tree_cell(&self, one_cell: usize) -> bool {
        self.in_tree[one_cell]
    }

    pub fn labels(&self, zero_cell: usize) -> &[VertexId] {
        &self.labels[zero_cell]
    }

    /// Non-tree 1-cells with their permutations (tail-to-head traversal).
    pub fn holonomies(&self) -> &BTreeMap<usize, Permutation> {
        &self.holonomy
    }

    /// Permutation picked up crossing `one_cell`, forwards (tail to head) or
    /// backwards. Tree cells carry the identity.
    pub fn along(&self, one_cell: usize, forward: bool) -> Permutation {
        match self.holonomy.get(&one_cell) {
            Some(p) if forward => p.clone(),
            Some(p) => p.inverse(),
            None => Permutation::identity(self.n),
        }
    }

    /// Composite permutation of an edge path given as `(1-cell, forward)` steps.
    pub fn path_holonomy(&self, steps: &[(usize, bool)]) -> Permutation {
        steps
            .iter()
            .fold(Permutation::identity(self.n), |acc, &(cell, fwd)| {
                self.along(cell, fwd).after(&acc)
            })
    }

    /// Relabels after moving the particle across the edge of `one_cell`.
    fn transport(&self, labels: &[VertexId], one_cell: usize, forward: bool) -> Vec<VertexId> {
        let (tail, head) = self.moves[one_cell];
        let (src, dst) = if forward { (tail, head) } else { (head, tail) };
        labels
            .iter()
            .map(|&v| if v == src { dst } else { v })
            .collect()
    }

    /// Checks that the stored labels are reproduced by transport along the
    /// tree and that every stored holonomy matches a direct recomputation.
    pub fn check_transport(&self) -> Result<(), String> {
        for cell in 0..self.one_cells {
            let (a, b) = self.endpoints[cell];
            let moved = self.transport(&self.labels[a], cell, true);
            let sigma = relabeling(&moved, &self.labels[b]);
            if self.in_tree[cell] && !sigma.is_identity() {
                return Err(format!("tree cell {cell} does not carry its labels"));
            }
            if !self.in_tree[cell] && self.holonomy[&cell] != sigma {
                return Err(format!("holonomy of cell {cell} is inconsistent"));
            }
        }
        Ok(())
    }
}

/// The permutation sending label `i` to the label in `target` sitting where
/// `moved` put particle `i`.
fn relabeling(moved: &[VertexId], target: &[VertexId]) -> Permutation {
    Permutation(
        moved
            .iter()
            .map(|v| target.iter().position(|t| t == v).expect("same vertex set"))
            .collect(),
    )
}

pub fn holonomy_rep(c: &CubeComplex) -> Result<HolonomyRep, BundleError> {
    holonomy_rep_with(c, SpanningTree::BreadthFirst)
}

pub fn holonomy_rep_with(
    c: &CubeComplex,
    strategy: SpanningTree,
) -> Result<HolonomyRep, BundleError> {
    if c.is_ordered() {
        return Err(BundleError::OrderedComplex);
    }
    let zero = c.cell_count(0);
    let one = c.cell_count(1);
    let endpoints: Vec<(usize, usize)> = (0..one).map(|e| c.edge_endpoints(e)).collect();
    let g = c.graph();
    let moves: Vec<(VertexId, VertexId)> = c
        .cells(1)
        .iter()
        .map(|cell| {
            let e = cell
                .iter()
                .find_map(|o| match o {
                    Occupant::Edge(e) => Some(*e),
                    Occupant::Vertex(_) => None,
                })
                .expect("1-cell has one edge");
            (g.edge(e).tail, g.edge(e).head)
        })
        .collect();

    let mut incident: Vec<Vec<(usize, bool)>> = vec![Vec::new(); zero];
    for (e, &(a, b)) in endpoints.iter().enumerate() {
        incident[a].push((e, true));
        incident[b].push((e, false));
    }

    let mut rep = HolonomyRep {
        n: c.particles(),
        base_cells: Vec::new(),
        in_tree: vec![false; one],
        labels: vec![Vec::new(); zero],
        holonomy: BTreeMap::new(),
        one_cells: one,
        endpoints,
        moves,
    };

    let mut visited = vec![false; zero];
    let roots: Vec<usize> = match strategy {
        SpanningTree::BreadthFirst => (0..zero).collect(),
        SpanningTree::DepthFirstFromLast => (0..zero).rev().collect(),
    };
    for root in roots {
        if visited[root] {
            continue;
        }
        rep.base_cells.push(root);
        visited[root] = true;
        rep.labels[root] = vertices_of(&c.cells(0)[root]);
        let mut frontier = VecDeque::from([root]);
        while let Some(at) = match strategy {
            SpanningTree::BreadthFirst => frontier.pop_front(),
            SpanningTree::DepthFirstFromLast => frontier.pop_back(),
        } {
            for &(e, forward) in &incident[at] {
                let other = if forward {
                    rep.endpoints[e].1
                } else {
                    rep.endpoints[e].0
                };
                if visited[other] {
                    continue;
                }
                visited[other] = true;
                rep.in_tree[e] = true;
                rep.labels[other] = rep.transport(&rep.labels[at], e, forward);
                frontier.push_back(other);
            }
        }
    }
    rep.base_cells.sort_unstable();

    for e in 0..one {
        if rep.in_tree[e] {
            continue;
        }
        let (a, b) = rep.endpoints[e];
        let moved = rep.transport(&rep.labels[a], e, true);
        rep.holonomy.insert(e, relabeling(&moved, &rep.labels[b]));
    }
    Ok(rep)
}

/// The first Stiefel-Whitney cocycle: the sign of the holonomy on each 1-cell.
pub fn w1_cocycle(h: &HolonomyRep, c: &CubeComplex) -> Result<Cochain, BundleError> {
    if c.is_ordered() {
        return Err(BundleError::OrderedComplex);
    }
    if c.cell_count(1) != h.one_cells || c.cell_count(0) != h.labels.len() || c.particles() != h.n {
        return Err(BundleError::Mismatch);
    }
    let values = (0..h.one_cells)
        .map(|e| h.holonomy.get(&e).is_some_and(Permutation::is_odd))
        .collect();
    Ok(Cochain { degree: 1, values })
}

/// The boundary loop of a 2-cell as `(1-cell, forward)` steps, starting at the
/// corner where both edges sit at their tails.
pub fn square_boundary(c: &CubeComplex, two_cell: usize) -> Vec<(usize, bool)> {
    let cell = &c.cells(2)[two_cell];
    let g = c.graph();
    let slots: Vec<usize> = (0..cell.len()).filter(|&p| cell[p].is_edge()).collect();
    let edge_at = |p: usize| match cell[p] {
        Occupant::Edge(e) => g.edge(e),
        Occupant::Vertex(_) => unreachable!(),
    };
    let (p1, p2) = (slots[0], slots[1]);
    let (e1, e2) = (edge_at(p1), edge_at(p2));
    let lookup = |moving: usize, fixed_vertex: VertexId| {
        let mut face = cell.clone();
        let fixed = if moving == p1 { p2 } else { p1 };
        face[fixed] = Occupant::Vertex(fixed_vertex);
        if !c.is_ordered() {
            face.sort_unstable();
        }
        c.cell_lookup(&face).expect("face of a cell is a cell")
    };
    vec![
        (lookup(p1, e2.tail), true),
        (lookup(p2, e1.head), true),
        (lookup(p1, e2.head), false),
        (lookup(p2, e1.tail), false),
    ]
}

/// Finds the 1-cell moving one particle from `from` to `to` in the
/// configuration `config`, with its traversal direction.
pub fn move_step(
    c: &CubeComplex,
    config: &[VertexId],
    from: VertexId,
    to: VertexId,
) -> Option<(usize, bool)> {
    let g = c.graph();
    let e = g
        .edges()
        .iter()
        .position(|e| (e.tail, e.head) == (from, to) || (e.tail, e.head) == (to, from))?;
    let mut cell: Vec<Occupant> = config
        .iter()
        .filter(|&&v| v != from)
        .map(|&v| Occupant::Vertex(v))
        .collect();
    cell.push(Occupant::Edge(e));
    cell.sort_unstable();
    let id = c.cell_lookup(&cell)?;
    Some((id, g.edge(e).tail == from))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abrams::build_unordered;
    use crate::graph::Graph;

    #[test]
    fn permutation_basics() {
        let p = Permutation::from_images(vec![1, 2, 0]);
        assert_eq!(p.cycle_type(), vec![3]);
        assert!(!p.is_odd());
        assert!(p.after(&p.inverse()).is_identity());
        assert_eq!(p.to_string(), "(1 2 3)");
        let t = Permutation::from_images(vec![1, 0, 2]);
        assert!(t.is_odd());
        assert_eq!(t.cycle_type(), vec![2, 1]);
        assert_eq!(Permutation::identity(2).to_string(), "()");
    }

    #[test]
    fn hexagon_generator_is_a_transposition() {
        let c = build_unordered(&Graph::star(3), 2).unwrap();
        let h = holonomy_rep(&c).unwrap();
        assert_eq!(h.holonomies().len(), 1);
        let sigma = h.holonomies().values().next().unwrap();
        assert_eq!(sigma.cycle_type(), vec![2]);
        assert_eq!(h.base_cells(), &[0]);
        h.check_transport().unwrap();
    }

    #[test]
    fn square_c4_three_particles_gives_a_three_cycle() {
        let c = build_unordered(&Graph::cycle(4), 3).unwrap();
        let h = holonomy_rep(&c).unwrap();
        assert_eq!(h.holonomies().len(), 1);
        assert_eq!(
            h.holonomies().values().next().unwrap().cycle_type(),
            vec![3]
        );
    }

    #[test]
    fn reversing_inverts() {
        let c = build_unordered(&Graph::cycle(5), 2).unwrap();
        let h = holonomy_rep(&c).unwrap();
        for (&e, p) in h.holonomies() {
            assert_eq!(h.along(e, false), p.inverse());
        }
    }

    #[test]
    fn forest_has_zero_w1() {
        let c = build_unordered(&Graph::path(4), 2).unwrap();
        let h = holonomy_rep(&c).unwrap();
        let w = w1_cocycle(&h, &c).unwrap();
        assert!(w.is_zero());
    }

    #[test]
    fn mismatched_inputs_are_rejected() {
        let c = build_unordered(&Graph::cycle(5), 2).unwrap();
        let other = build_unordered(&Graph::cycle(6), 2).unwrap();
        let h = holonomy_rep(&c).unwrap();
        assert!(matches!(w1_cocycle(&h, &other), Err(BundleError::Mismatch)));
        let ordered = crate::abrams::build_ordered(&Graph::cycle(5), 2).unwrap();
        assert!(matches!(
            holonomy_rep(&ordered),
            Err(BundleError::OrderedComplex)
        ));
    }
}
