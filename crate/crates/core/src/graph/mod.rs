//! Finite multigraphs and their homeomorphism-type analysis.

mod io;
mod subdivision;
mod topology;

pub use subdivision::{
    girth, is_sufficiently_subdivided, subdivide, subdivide_uniform, SufficiencyReport, Violation,
    ViolationKind,
};
pub use topology::{classify_space, topo_reduce, ComponentTag, TopoClass};

use thiserror::Error;

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("vertex {vertex} out of range (graph has {count} vertices)")]
    VertexOutOfRange { vertex: usize, count: usize },
    #[error("edgeless graph with {vertices} vertices cannot hold {n} particles")]
    EmptyConfiguration { vertices: usize, n: usize },
    #[error("particle count must be at least 1")]
    ZeroParticles,
}

/// An oriented edge. The orientation fixes cube-cell signs downstream.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub tail: VertexId,
    pub head: VertexId,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.tail == self.head
    }

    /// The endpoint opposite `v`; for a loop this is `v` itself.
    pub fn other(&self, v: VertexId) -> VertexId {
        if self.tail == v {
            self.head
        } else {
            self.tail
        }
    }
}

/// A finite multigraph with dense vertex ids `0..vertex_count` and edge ids
/// equal to positions in the edge list. Loops and parallel edges are allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<Edge>,
}

impl Graph {
    pub fn new(
        vertex_count: usize,
        edges: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> Result<Self, GraphError> {
        let edges: Vec<Edge> = edges
            .into_iter()
            .map(|(tail, head)| Edge { tail, head })
            .collect();
        for e in &edges {
            for v in [e.tail, e.head] {
                if v >= vertex_count {
                    return Err(GraphError::VertexOutOfRange {
                        vertex: v,
                        count: vertex_count,
                    });
                }
            }
        }
        Ok(Self {
            vertex_count,
            edges,
        })
    }

    pub fn empty(vertex_count: usize) -> Self {
        Self {
            vertex_count,
            edges: Vec::new(),
        }
    }

    pub fn path(vertices: usize) -> Self {
        let edges = (1..vertices).map(|i| (i - 1, i));
        Self::new(vertices, edges).expect("path ids are in range")
    }

    pub fn cycle(vertices: usize) -> Self {
        assert!(vertices >= 1, "a cycle needs at least one vertex");
        let edges = (0..vertices).map(|i| (i, (i + 1) % vertices));
        Self::new(vertices, edges).expect("cycle ids are in range")
    }

    pub fn complete(vertices: usize) -> Self {
        let mut edges = Vec::new();
        for i in 0..vertices {
            for j in i + 1..vertices {
                edges.push((i, j));
            }
        }
        Self::new(vertices, edges).expect("complete graph ids are in range")
    }

    /// K_{a,b} with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut edges = Vec::new();
        for i in 0..a {
            for j in 0..b {
                edges.push((i, a + j));
            }
        }
        Self::new(a + b, edges).expect("bipartite ids are in range")
    }

    /// The star with `arms` leaves; `star(3)` is the Y-graph with center 0.
    pub fn star(arms: usize) -> Self {
        Self::new(arms + 1, (1..=arms).map(|i| (0, i))).expect("star ids are in range")
    }

    pub fn petersen() -> Self {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Self::new(10, edges).expect("petersen ids are in range")
    }

    /// Disjoint union; vertices and edges of `other` are shifted after ours.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.vertex_count;
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|e| Edge {
            tail: e.tail + shift,
            head: e.head + shift,
        }));
        Graph {
            vertex_count: shift + other.vertex_count,
            edges,
        }
    }

    /// Copy without the listed edges; edge ids are renumbered densely.
    pub fn without_edges(&self, removed: &[EdgeId]) -> Graph {
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|(id, _)| !removed.contains(id))
            .map(|(_, e)| *e)
            .collect();
        Graph {
            vertex_count: self.vertex_count,
            edges,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> Edge {
        self.edges[id]
    }

    /// Incidence count at `v`; a loop contributes two.
    pub fn degree(&self, v: VertexId) -> Result<usize, GraphError> {
        if v >= self.vertex_count {
            return Err(GraphError::VertexOutOfRange {
                vertex: v,
                count: self.vertex_count,
            });
        }
        Ok(self.degrees()[v])
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count];
        for e in &self.edges {
            deg[e.tail] += 1;
            deg[e.head] += 1;
        }
        deg
    }

    /// Per vertex, the incident edge ids in id order. A loop is listed twice.
    pub fn incidences(&self) -> Vec<Vec<EdgeId>> {
        let mut inc = vec![Vec::new(); self.vertex_count];
        for (id, e) in self.edges.iter().enumerate() {
            inc[e.tail].push(id);
            inc[e.head].push(id);
        }
        inc
    }

    /// Component label per vertex, labels assigned in order of least vertex.
    pub fn components(&self) -> (usize, Vec<usize>) {
        let mut parent: Vec<usize> = (0..self.vertex_count).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for e in &self.edges {
            let (a, b) = (find(&mut parent, e.tail), find(&mut parent, e.head));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut label = vec![usize::MAX; self.vertex_count];
        let mut count = 0;
        for v in 0..self.vertex_count {
            let root = find(&mut parent, v);
            if label[root] == usize::MAX {
                label[root] = count;
                count += 1;
            }
            label[v] = label[root];
        }
        (count, label)
    }

    pub fn component_count(&self) -> usize {
        self.components().0
    }

    /// First Betti number E - V + C.
    pub fn cycle_rank(&self) -> usize {
        self.edges.len() + self.component_count() - self.vertex_count
    }

    pub fn is_simple(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.edges
            .iter()
            .all(|e| !e.is_loop() && seen.insert((e.tail.min(e.head), e.tail.max(e.head))))
    }

    /// Sorted degrees of vertices whose degree is not 2.
    pub fn essential_degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.degrees().into_iter().filter(|&d| d != 2).collect();
        d.sort_unstable();
        d
    }

    /// Underlying simple graph as sorted, deduplicated vertex pairs (loops dropped).
    pub fn simple_edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut pairs: Vec<(usize, usize)> = self
            .edges
            .iter()
            .filter(|e| !e.is_loop())
            .map(|e| (e.tail.min(e.head), e.tail.max(e.head)))
            .collect();
        pairs.sort_unstable();
        pairs.dedup();
        pairs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrees_of_named_graphs() {
        let y = Graph::star(3);
        assert_eq!(y.degree(0).unwrap(), 3);
        let k5 = Graph::complete(5);
        assert!((0..5).all(|v| k5.degree(v).unwrap() == 4));
        let looped = Graph::new(1, [(0, 0)]).unwrap();
        assert_eq!(looped.degree(0).unwrap(), 2);
        assert!(matches!(
            k5.degree(5),
            Err(GraphError::VertexOutOfRange {
                vertex: 5,
                count: 5
            })
        ));
    }

    #[test]
    fn degree_sum_is_twice_edge_count() {
        let g = Graph::new(3, [(0, 0), (0, 1), (0, 1), (1, 2), (2, 2)]).unwrap();
        assert_eq!(g.degrees().iter().sum::<usize>(), 2 * g.edge_count());
    }

    #[test]
    fn components_and_cycle_rank() {
        let g = Graph::cycle(4).disjoint_union(&Graph::empty(2));
        assert_eq!(g.component_count(), 3);
        assert_eq!(g.cycle_rank(), 1);
        assert_eq!(Graph::petersen().cycle_rank(), 6);
    }

    #[test]
    fn simplicity() {
        assert!(Graph::complete(4).is_simple());
        assert!(!Graph::new(2, [(0, 1), (1, 0)]).unwrap().is_simple());
        assert!(!Graph::cycle(1).is_simple());
    }
}
