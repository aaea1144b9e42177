use serde::Serialize;

use super::{EdgeId, Graph, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ComponentTag {
    Point,
    Interval,
    Circle,
    Essential,
}

/// Homeomorphism type of a graph, component by component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TopoClass {
    pub components: Vec<ComponentTag>,
    pub in_l: bool,
    pub is_single_circle: bool,
    pub is_connected: bool,
}

impl TopoClass {
    pub fn has_circle_component(&self) -> bool {
        self.components.contains(&ComponentTag::Circle)
    }
}

struct ComponentStats {
    vertices: usize,
    edges: usize,
    max_degree: usize,
    all_degree_two: bool,
}

fn component_stats(g: &Graph) -> (Vec<usize>, Vec<ComponentStats>) {
    let (count, label) = g.components();
    let degrees = g.degrees();
    let mut stats: Vec<ComponentStats> = (0..count)
        .map(|_| ComponentStats {
            vertices: 0,
            edges: 0,
            max_degree: 0,
            all_degree_two: true,
        })
        .collect();
    for v in 0..g.vertex_count() {
        let s = &mut stats[label[v]];
        s.vertices += 1;
        s.max_degree = s.max_degree.max(degrees[v]);
        s.all_degree_two &= degrees[v] == 2;
    }
    for e in g.edges() {
        stats[label[e.tail]].edges += 1;
    }
    (label, stats)
}

fn tag(s: &ComponentStats) -> ComponentTag {
    if s.edges == 0 {
        ComponentTag::Point
    } else if s.all_degree_two {
        ComponentTag::Circle
    } else if s.edges + 1 == s.vertices && s.max_degree <= 2 {
        ComponentTag::Interval
    } else {
        ComponentTag::Essential
    }
}

pub fn classify_space(g: &Graph) -> TopoClass {
    let (_, stats) = component_stats(g);
    let components: Vec<ComponentTag> = stats.iter().map(tag).collect();
    let in_l = components
        .iter()
        .all(|t| matches!(t, ComponentTag::Point | ComponentTag::Interval));
    TopoClass {
        is_single_circle: components == [ComponentTag::Circle],
        is_connected: components.len() <= 1,
        in_l,
        components,
    }
}

/// Smooths every degree-2 vertex. Circle components collapse to a single
/// vertex carrying a loop; all other components keep exactly their vertices
/// of degree other than 2, joined by one edge per maximal chain.
pub fn topo_reduce(g: &Graph) -> Graph {
    let (label, stats) = component_stats(g);
    let degrees = g.degrees();
    let incidences = g.incidences();
    let circle: Vec<bool> = stats
        .iter()
        .map(|s| s.edges > 0 && s.all_degree_two)
        .collect();

    let mut circle_rep = vec![None; stats.len()];
    let mut kept = vec![false; g.vertex_count()];
    for v in 0..g.vertex_count() {
        let c = label[v];
        if circle[c] {
            if circle_rep[c].is_none() {
                circle_rep[c] = Some(v);
                kept[v] = true;
            }
        } else if degrees[v] != 2 {
            kept[v] = true;
        }
    }
    let mut new_id = vec![usize::MAX; g.vertex_count()];
    let mut next = 0;
    for v in 0..g.vertex_count() {
        if kept[v] {
            new_id[v] = next;
            next += 1;
        }
    }

    // Follows a chain from `at` through degree-2 vertices until a kept vertex.
    let walk = |mut edge: EdgeId, mut at: VertexId, visited: &mut [bool]| -> VertexId {
        while !kept[at] {
            let inc = &incidences[at];
            let next_edge = if inc[0] == edge { inc[1] } else { inc[0] };
            visited[next_edge] = true;
            at = g.edge(next_edge).other(at);
            edge = next_edge;
        }
        at
    };

    let mut visited = vec![false; g.edge_count()];
    let mut edges = Vec::new();
    for (id, e) in g.edges().iter().enumerate() {
        if visited[id] {
            continue;
        }
        let c = label[e.tail];
        if circle[c] {
            let rep = new_id[circle_rep[c].expect("circle has a representative")];
            edges.push((rep, rep));
            for (other, f) in g.edges().iter().enumerate() {
                if label[f.tail] == c {
                    visited[other] = true;
                }
            }
            continue;
        }
        visited[id] = true;
        let a = walk(id, e.tail, &mut visited);
        let b = walk(id, e.head, &mut visited);
        edges.push((new_id[a], new_id[b]));
    }
    Graph::new(next, edges).expect("reduced ids are dense")
}
