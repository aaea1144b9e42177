//! Sufficient subdivision for the discrete configuration model.
//!
//! A graph is sufficiently subdivided for `n` particles when it has at least
//! `n` vertices, every chain between distinct vertices of degree other than 2
//! has at least `n - 1` edges, and every cycle has at least `n + 1` edges.

use std::collections::{HashSet, VecDeque};

use serde::Serialize;

use super::{EdgeId, Graph, GraphError, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    ShortPath,
    ShortLoop,
    TooFewVertices,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    /// Witness path or cycle as edge ids; empty for `TooFewVertices`.
    pub edges: Vec<EdgeId>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SufficiencyReport {
    pub n: usize,
    pub ok: bool,
    pub violations: Vec<Violation>,
}

/// Maximal chains whose interior vertices have degree 2 and whose two ends
/// are distinct vertices of degree other than 2. Circle components have none.
fn essential_chains(g: &Graph) -> Vec<Vec<EdgeId>> {
    let degrees = g.degrees();
    let incidences = g.incidences();
    let essential = |v: VertexId| degrees[v] != 2;

    let mut visited = vec![false; g.edge_count()];
    let mut chains = Vec::new();
    for start in 0..g.vertex_count() {
        if !essential(start) {
            continue;
        }
        for &first in &incidences[start] {
            if visited[first] {
                continue;
            }
            visited[first] = true;
            let mut chain = vec![first];
            let mut edge = first;
            let mut at = g.edge(first).other(start);
            while !essential(at) {
                let inc = &incidences[at];
                let next = if inc[0] == edge { inc[1] } else { inc[0] };
                visited[next] = true;
                chain.push(next);
                at = g.edge(next).other(at);
                edge = next;
            }
            if at != start {
                chains.push(chain);
            }
        }
    }
    chains
}

/// Shortest cycle through `edge`, as edge ids, or `None` if `edge` is a bridge.
fn shortest_cycle_through(
    g: &Graph,
    incidences: &[Vec<EdgeId>],
    edge: EdgeId,
) -> Option<Vec<EdgeId>> {
    let e = g.edge(edge);
    if e.is_loop() {
        return Some(vec![edge]);
    }
    let mut via: Vec<Option<EdgeId>> = vec![None; g.vertex_count()];
    let mut seen = vec![false; g.vertex_count()];
    seen[e.tail] = true;
    let mut queue = VecDeque::from([e.tail]);
    while let Some(v) = queue.pop_front() {
        if v == e.head {
            break;
        }
        for &f in &incidences[v] {
            if f == edge {
                continue;
            }
            let w = g.edge(f).other(v);
            if !seen[w] {
                seen[w] = true;
                via[w] = Some(f);
                queue.push_back(w);
            }
        }
    }
    if !seen[e.head] {
        return None;
    }
    let mut cycle = vec![edge];
    let mut at = e.head;
    while at != e.tail {
        let f = via[at].expect("bfs tree reaches head");
        cycle.push(f);
        at = g.edge(f).other(at);
    }
    Some(cycle)
}

/// Length of the shortest cycle, if any.
pub fn girth(g: &Graph) -> Option<usize> {
    let incidences = g.incidences();
    (0..g.edge_count())
        .filter_map(|e| shortest_cycle_through(g, &incidences, e).map(|c| c.len()))
        .min()
}

pub fn is_sufficiently_subdivided(g: &Graph, n: usize) -> SufficiencyReport {
    let mut violations = Vec::new();
    if g.vertex_count() < n {
        violations.push(Violation {
            kind: ViolationKind::TooFewVertices,
            edges: Vec::new(),
        });
    }
    for chain in essential_chains(g) {
        if chain.len() + 1 < n {
            violations.push(Violation {
                kind: ViolationKind::ShortPath,
                edges: chain,
            });
        }
    }
    let incidences = g.incidences();
    let mut reported: HashSet<Vec<EdgeId>> = HashSet::new();
    for e in 0..g.edge_count() {
        if let Some(cycle) = shortest_cycle_through(g, &incidences, e) {
            if cycle.len() < n + 1 {
                let mut key = cycle.clone();
                key.sort_unstable();
                if reported.insert(key) {
                    violations.push(Violation {
                        kind: ViolationKind::ShortLoop,
                        edges: cycle,
                    });
                }
            }
        }
    }
    SufficiencyReport {
        n,
        ok: violations.is_empty(),
        violations,
    }
}

/// Splits every edge into `parts` segments. Original vertices keep their ids;
/// new vertices are appended edge by edge, and orientation runs tail to head.
pub fn subdivide_uniform(g: &Graph, parts: usize) -> Graph {
    assert!(parts >= 1, "an edge splits into at least one segment");
    if parts == 1 {
        return g.clone();
    }
    let mut next = g.vertex_count();
    let mut edges = Vec::with_capacity(g.edge_count() * parts);
    for e in g.edges() {
        let mut prev = e.tail;
        for _ in 1..parts {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
        edges.push((prev, e.head));
    }
    Graph::new(next, edges).expect("subdivision ids are dense")
}

/// Smallest uniform subdivision that is simple and sufficiently subdivided
/// for `n` particles. A graph that already qualifies is returned unchanged.
pub fn subdivide(g: &Graph, n: usize) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(GraphError::ZeroParticles);
    }
    if g.edge_count() == 0 {
        if g.vertex_count() < n {
            return Err(GraphError::EmptyConfiguration {
                vertices: g.vertex_count(),
                n,
            });
        }
        return Ok(g.clone());
    }
    // Splitting into max(n + 1, 3) parts always suffices, so the search is finite.
    let max_parts = (n + 1).max(3);
    for parts in 1..=max_parts {
        let candidate = subdivide_uniform(g, parts);
        if candidate.is_simple() && is_sufficiently_subdivided(&candidate, n).ok {
            return Ok(candidate);
        }
    }
    unreachable!("a {max_parts}-fold subdivision is always sufficient")
}
