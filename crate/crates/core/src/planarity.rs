//! Exact planarity testing and Kuratowski certificates.
//!
//! The verdict comes from the Demoucron-Malgrange-Pertuiset path-addition
//! algorithm run on each biconnected block. Certificates are extracted
//! afterwards by greedy edge deletion down to a minimal nonplanar subgraph,
//! which is always a subdivision of K5 or K3,3.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::Serialize;

use crate::graph::{Graph, VertexId};

type Pair = (VertexId, VertexId);

fn key(a: VertexId, b: VertexId) -> Pair {
    (a.min(b), a.max(b))
}

/// Blocks of a simple graph as edge lists. Bridges form single-edge blocks.
fn biconnected_blocks(vertex_count: usize, edges: &[Pair]) -> Vec<Vec<Pair>> {
    let mut adj = vec![Vec::new(); vertex_count];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut disc = vec![usize::MAX; vertex_count];
    let mut low = vec![0; vertex_count];
    let mut time = 0;
    let mut edge_stack: Vec<Pair> = Vec::new();
    let mut blocks = Vec::new();

    for root in 0..vertex_count {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        // (vertex, parent, next neighbour index)
        let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        while let Some(&mut (v, parent, ref mut idx)) = stack.last_mut() {
            if *idx < adj[v].len() {
                let w = adj[v][*idx];
                *idx += 1;
                if disc[w] == usize::MAX {
                    edge_stack.push((v, w));
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    stack.push((w, v, 0));
                } else if w != parent && disc[w] < disc[v] {
                    edge_stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(u, _, _)) = stack.last() {
                    low[u] = low[u].min(low[v]);
                    if low[v] >= disc[u] {
                        let mut block = Vec::new();
                        while let Some(e) = edge_stack.pop() {
                            block.push(key(e.0, e.1));
                            if e == (u, v) {
                                break;
                            }
                        }
                        blocks.push(block);
                    }
                }
            }
        }
    }
    blocks
}

/// A cycle through the edge `a`-`b` of a 2-connected block, as a vertex sequence.
fn find_cycle(adj: &HashMap<VertexId, Vec<VertexId>>, a: VertexId, b: VertexId) -> Vec<VertexId> {
    let mut parent: HashMap<VertexId, VertexId> = HashMap::new();
    let mut queue = std::collections::VecDeque::from([a]);
    parent.insert(a, a);
    while let Some(v) = queue.pop_front() {
        for &w in &adj[&v] {
            if (v, w) == (a, b) || parent.contains_key(&w) {
                continue;
            }
            parent.insert(w, v);
            if w == b {
                let mut cycle = vec![b];
                let mut at = b;
                while at != a {
                    at = parent[&at];
                    cycle.push(at);
                }
                return cycle;
            }
            queue.push_back(w);
        }
    }
    unreachable!("every edge of a 2-connected block lies on a cycle")
}

struct Fragment {
    attachments: Vec<VertexId>,
    /// Internal vertices; empty for a chord.
    interior: HashSet<VertexId>,
    chord: Option<Pair>,
}

fn block_is_planar(block: &[Pair]) -> bool {
    if block.len() < 9 {
        // fewer than nine edges cannot contain a Kuratowski subdivision
        return true;
    }
    let mut adj: HashMap<VertexId, Vec<VertexId>> = HashMap::new();
    for &(a, b) in block {
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    for list in adj.values_mut() {
        list.sort_unstable();
    }
    let cycle = find_cycle(&adj, block[0].0, block[0].1);

    let mut embedded_vertices: HashSet<VertexId> = cycle.iter().copied().collect();
    let mut embedded_edges: HashSet<Pair> = HashSet::new();
    for i in 0..cycle.len() {
        embedded_edges.insert(key(cycle[i], cycle[(i + 1) % cycle.len()]));
    }
    let mut faces: Vec<Vec<VertexId>> = vec![cycle.clone(), cycle.iter().rev().copied().collect()];

    while embedded_edges.len() < block.len() {
        let fragments = fragments(&adj, block, &embedded_vertices, &embedded_edges);
        let mut choice: Option<(usize, usize)> = None;
        for (fi, frag) in fragments.iter().enumerate() {
            let admissible: Vec<usize> = faces
                .iter()
                .enumerate()
                .filter(|(_, f)| frag.attachments.iter().all(|a| f.contains(a)))
                .map(|(i, _)| i)
                .collect();
            match admissible.len() {
                0 => return false,
                1 => {
                    choice = Some((fi, admissible[0]));
                    break;
                }
                _ => {
                    if choice.is_none() {
                        choice = Some((fi, admissible[0]));
                    }
                }
            }
        }
        let (fi, face_idx) = choice.expect("unembedded edges leave at least one fragment");
        let path = fragment_path(&adj, &fragments[fi]);
        for w in path.windows(2) {
            embedded_edges.insert(key(w[0], w[1]));
        }
        embedded_vertices.extend(path.iter().copied());

        let face = faces.swap_remove(face_idx);
        let (a, b) = (path[0], *path.last().expect("path has two ends"));
        let ia = face
            .iter()
            .position(|&v| v == a)
            .expect("attachment on face");
        let rotated: Vec<VertexId> = face[ia..].iter().chain(&face[..ia]).copied().collect();
        let ib = rotated
            .iter()
            .position(|&v| v == b)
            .expect("attachment on face");
        let interior = &path[1..path.len() - 1];
        let mut first: Vec<VertexId> = rotated[..=ib].to_vec();
        first.extend(interior.iter().rev());
        let mut second: Vec<VertexId> = rotated[ib..].to_vec();
        second.push(a);
        second.extend(interior.iter());
        faces.push(first);
        faces.push(second);
    }
    true
}

fn fragments(
    adj: &HashMap<VertexId, Vec<VertexId>>,
    block: &[Pair],
    embedded_vertices: &HashSet<VertexId>,
    embedded_edges: &HashSet<Pair>,
) -> Vec<Fragment> {
    let mut out = Vec::new();
    for &(a, b) in block {
        if embedded_vertices.contains(&a)
            && embedded_vertices.contains(&b)
            && !embedded_edges.contains(&(a, b))
        {
            out.push(Fragment {
                attachments: vec![a, b],
                interior: HashSet::new(),
                chord: Some((a, b)),
            });
        }
    }
    let mut seen: HashSet<VertexId> = HashSet::new();
    let mut vertices: Vec<VertexId> = adj.keys().copied().collect();
    vertices.sort_unstable();
    for v in vertices {
        if embedded_vertices.contains(&v) || seen.contains(&v) {
            continue;
        }
        let mut interior = HashSet::new();
        let mut attachments = Vec::new();
        let mut stack = vec![v];
        seen.insert(v);
        while let Some(x) = stack.pop() {
            interior.insert(x);
            for &y in &adj[&x] {
                if embedded_vertices.contains(&y) {
                    if !attachments.contains(&y) {
                        attachments.push(y);
                    }
                } else if seen.insert(y) {
                    stack.push(y);
                }
            }
        }
        attachments.sort_unstable();
        out.push(Fragment {
            attachments,
            interior,
            chord: None,
        });
    }
    out
}

/// A path through the fragment joining two distinct attachment vertices.
fn fragment_path(adj: &HashMap<VertexId, Vec<VertexId>>, frag: &Fragment) -> Vec<VertexId> {
    if let Some((a, b)) = frag.chord {
        return vec![a, b];
    }
    let start = frag.attachments[0];
    let mut parent: HashMap<VertexId, VertexId> = HashMap::new();
    let mut queue = std::collections::VecDeque::new();
    for &w in &adj[&start] {
        if frag.interior.contains(&w) && !parent.contains_key(&w) {
            parent.insert(w, start);
            queue.push_back(w);
        }
    }
    while let Some(x) = queue.pop_front() {
        for &y in &adj[&x] {
            if frag.interior.contains(&y) {
                if let std::collections::hash_map::Entry::Vacant(slot) = parent.entry(y) {
                    slot.insert(x);
                    queue.push_back(y);
                }
            } else if y != start && frag.attachments.contains(&y) {
                let mut path = vec![y, x];
                let mut at = x;
                while parent[&at] != start {
                    at = parent[&at];
                    path.push(at);
                }
                path.push(start);
                path.reverse();
                return path;
            }
        }
    }
    unreachable!("a fragment of a 2-connected block has two distinct attachments")
}

fn simple_is_planar(vertex_count: usize, edges: &[Pair]) -> bool {
    biconnected_blocks(vertex_count, edges)
        .iter()
        .all(|b| block_is_planar(b))
}

/// Exact planarity of the underlying simple graph.
pub fn is_planar(g: &Graph) -> bool {
    simple_is_planar(g.vertex_count(), &g.simple_edges())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum KuratowskiKind {
    K5,
    K33,
}

/// A subdivision of K5 or K3,3 inside the input graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KuratowskiCertificate {
    pub kind: KuratowskiKind,
    /// Five vertices for K5; for K3,3 the first three form one side.
    pub branch_vertices: Vec<VertexId>,
    /// Vertex sequences joining pairs of branch vertices.
    pub branch_paths: Vec<Vec<VertexId>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KuratowskiSearch {
    Planar,
    Found(KuratowskiCertificate),
    /// The graph is nonplanar but the search budget ran out.
    Omitted,
}

impl KuratowskiSearch {
    pub fn certificate(&self) -> Option<&KuratowskiCertificate> {
        match self {
            KuratowskiSearch::Found(c) => Some(c),
            _ => None,
        }
    }
}

/// Default number of planarity tests the certificate search may run.
pub const DEFAULT_CERTIFICATE_BUDGET: usize = 4096;

pub fn find_kuratowski(g: &Graph) -> KuratowskiSearch {
    find_kuratowski_with_budget(g, DEFAULT_CERTIFICATE_BUDGET)
}

pub fn find_kuratowski_with_budget(g: &Graph, budget: usize) -> KuratowskiSearch {
    let n = g.vertex_count();
    let mut edges = g.simple_edges();
    if simple_is_planar(n, &edges) {
        return KuratowskiSearch::Planar;
    }
    if edges.len() > budget {
        return KuratowskiSearch::Omitted;
    }
    let mut i = 0;
    while i < edges.len() {
        let removed = edges.remove(i);
        if simple_is_planar(n, &edges) {
            edges.insert(i, removed);
            i += 1;
        }
    }
    let cert = certificate_from_minimal(n, &edges);
    debug_assert!(cert.validate(g).is_ok());
    KuratowskiSearch::Found(cert)
}

fn certificate_from_minimal(vertex_count: usize, edges: &[Pair]) -> KuratowskiCertificate {
    let mut adj = vec![Vec::new(); vertex_count];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    let branch: Vec<VertexId> = (0..vertex_count).filter(|&v| adj[v].len() >= 3).collect();
    let is_branch = |v: VertexId| adj[v].len() >= 3;

    let mut paths: Vec<Vec<VertexId>> = Vec::new();
    for &b in &branch {
        for &first in &adj[b] {
            let mut path = vec![b, first];
            let mut prev = b;
            let mut at = first;
            while !is_branch(at) {
                let next = if adj[at][0] == prev {
                    adj[at][1]
                } else {
                    adj[at][0]
                };
                prev = at;
                at = next;
                path.push(at);
            }
            if b < at {
                paths.push(path);
            }
        }
    }
    paths.sort();

    if branch.len() == 5 {
        return KuratowskiCertificate {
            kind: KuratowskiKind::K5,
            branch_vertices: branch,
            branch_paths: paths,
        };
    }
    // K3,3: the side of the least branch vertex is everything not adjacent to it.
    let root = branch[0];
    let across: HashSet<VertexId> = paths
        .iter()
        .filter_map(|p| {
            let (s, t) = (p[0], *p.last().unwrap());
            if s == root {
                Some(t)
            } else if t == root {
                Some(s)
            } else {
                None
            }
        })
        .collect();
    let mut side_a: Vec<VertexId> = branch
        .iter()
        .copied()
        .filter(|v| !across.contains(v))
        .collect();
    let mut side_b: Vec<VertexId> = across.into_iter().collect();
    side_a.sort_unstable();
    side_b.sort_unstable();
    side_a.extend(side_b);
    KuratowskiCertificate {
        kind: KuratowskiKind::K33,
        branch_vertices: side_a,
        branch_paths: paths,
    }
}

impl KuratowskiCertificate {
    /// Checks the certificate against `g`: every path step is an edge of `g`,
    /// paths are internally disjoint and avoid branch vertices, and the
    /// endpoints realize each pair of the K5 or K3,3 pattern exactly once.
    pub fn validate(&self, g: &Graph) -> Result<(), String> {
        let simple: HashSet<Pair> = g.simple_edges().into_iter().collect();
        let branch: HashSet<VertexId> = self.branch_vertices.iter().copied().collect();
        let (expected_branch, expected_paths) = match self.kind {
            KuratowskiKind::K5 => (5, 10),
            KuratowskiKind::K33 => (6, 9),
        };
        if branch.len() != expected_branch || self.branch_vertices.len() != expected_branch {
            return Err(format!(
                "expected {expected_branch} distinct branch vertices"
            ));
        }
        if self.branch_paths.len() != expected_paths {
            return Err(format!("expected {expected_paths} branch paths"));
        }
        let mut interior_seen: HashSet<VertexId> = HashSet::new();
        let mut pairs: BTreeMap<Pair, usize> = BTreeMap::new();
        for path in &self.branch_paths {
            if path.len() < 2 {
                return Err("branch path shorter than one edge".into());
            }
            for w in path.windows(2) {
                if !simple.contains(&key(w[0], w[1])) {
                    return Err(format!("{}-{} is not an edge", w[0], w[1]));
                }
            }
            let (s, t) = (path[0], path[path.len() - 1]);
            if !branch.contains(&s) || !branch.contains(&t) || s == t {
                return Err("branch path endpoints must be distinct branch vertices".into());
            }
            for &v in &path[1..path.len() - 1] {
                if branch.contains(&v) || !interior_seen.insert(v) {
                    return Err(format!("vertex {v} reused across branch paths"));
                }
            }
            *pairs.entry(key(s, t)).or_default() += 1;
        }
        let allowed = |a: VertexId, b: VertexId| match self.kind {
            KuratowskiKind::K5 => a != b,
            KuratowskiKind::K33 => {
                let side = |v| self.branch_vertices[..3].contains(&v);
                side(a) != side(b)
            }
        };
        for (&(a, b), &count) in &pairs {
            if count != 1 || !allowed(a, b) {
                return Err(format!(
                    "pair {a}-{b} does not fit the {:?} pattern",
                    self.kind
                ));
            }
        }
        if pairs.len() != expected_paths {
            return Err("branch pairs do not cover the pattern".into());
        }
        Ok(())
    }
}
