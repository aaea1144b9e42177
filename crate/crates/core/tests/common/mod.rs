#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use graphconf::abrams::Occupant;
use graphconf::graph::Graph;

pub struct Entry {
    pub name: &'static str,
    pub graph: Graph,
    pub n: usize,
}

fn entry(name: &'static str, graph: Graph, n: usize) -> Entry {
    Entry { name, graph, n }
}

pub fn theta() -> Graph {
    Graph::new(2, [(0, 1), (0, 1), (0, 1)]).unwrap()
}

pub fn lollipop() -> Graph {
    Graph::new(4, [(0, 1), (1, 2), (2, 0), (2, 3)]).unwrap()
}

pub fn self_loop() -> Graph {
    Graph::new(1, [(0, 0)]).unwrap()
}

/// Small (graph, n) pairs exercised by every property suite.
pub fn corpus() -> Vec<Entry> {
    vec![
        entry("c4-n2", Graph::cycle(4), 2),
        entry("c4-n3", Graph::cycle(4), 3),
        entry("c5-n2", Graph::cycle(5), 2),
        entry("c5-n3", Graph::cycle(5), 3),
        entry("c6-n3", Graph::cycle(6), 3),
        entry("k33-n2", Graph::complete_bipartite(3, 3), 2),
        entry("k4-n2", Graph::complete(4), 2),
        entry("k5-n2", Graph::complete(5), 2),
        entry(
            "k5-k1-n2",
            Graph::complete(5).disjoint_union(&Graph::empty(1)),
            2,
        ),
        entry("lollipop-n2", lollipop(), 2),
        entry("loop-n2", self_loop(), 2),
        entry("p4-n2", Graph::path(4), 2),
        entry("p5-n3", Graph::path(5), 3),
        entry("star4-n2", Graph::star(4), 2),
        entry("theta-n2", theta(), 2),
        entry(
            "y-c3-n2",
            Graph::star(3).disjoint_union(&Graph::cycle(3)),
            2,
        ),
        entry("y-n2", Graph::star(3), 2),
        entry("y-n3", Graph::star(3), 3),
    ]
}

fn closure(g: &Graph, o: Occupant) -> Vec<usize> {
    match o {
        Occupant::Vertex(v) => vec![v],
        Occupant::Edge(e) => vec![g.edge(e).tail, g.edge(e).head],
    }
}

fn combinations(items: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, items: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items {
            cur.push(i);
            go(i + 1, items, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, items, k, &mut Vec::new(), &mut out);
    out
}

pub fn permutations<T: Clone>(items: &[T]) -> Vec<Vec<T>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head.clone());
            out.push(tail);
        }
    }
    out
}

/// Every `n`-subset of vertices and edges with pairwise disjoint closures,
/// grouped by the number of edges it contains.
pub fn brute_force_cells(g: &Graph, n: usize) -> Vec<BTreeSet<Vec<Occupant>>> {
    let occupants: Vec<Occupant> = (0..g.vertex_count())
        .map(Occupant::Vertex)
        .chain((0..g.edge_count()).map(Occupant::Edge))
        .collect();
    let mut by_dim: Vec<BTreeSet<Vec<Occupant>>> = vec![BTreeSet::new(); n + 1];
    for combo in combinations(occupants.len(), n) {
        let mut used = HashSet::new();
        let disjoint = combo.iter().all(|&i| {
            closure(g, occupants[i])
                .into_iter()
                .collect::<HashSet<_>>()
                .into_iter()
                .all(|v| used.insert(v))
        });
        if disjoint {
            let cell: Vec<Occupant> = combo.iter().map(|&i| occupants[i]).collect();
            let dim = cell.iter().filter(|o| o.is_edge()).count();
            by_dim[dim].insert(cell);
        }
    }
    while by_dim.len() > 1 && by_dim.last().is_some_and(BTreeSet::is_empty) {
        by_dim.pop();
    }
    by_dim
}

/// Maximum matching by exhaustive search over edges.
pub fn matching_number(g: &Graph) -> usize {
    fn go(g: &Graph, from: usize, used: &mut Vec<bool>) -> usize {
        let mut best = 0;
        for e in from..g.edge_count() {
            let edge = g.edge(e);
            if edge.is_loop() || used[edge.tail] || used[edge.head] {
                continue;
            }
            used[edge.tail] = true;
            used[edge.head] = true;
            best = best.max(1 + go(g, e + 1, used));
            used[edge.tail] = false;
            used[edge.head] = false;
        }
        best
    }
    go(g, 0, &mut vec![false; g.vertex_count()])
}

/// Lengths of all simple cycles (including loops and 2-cycles of parallel edges).
pub fn all_cycle_lengths(g: &Graph) -> Vec<usize> {
    let inc = g.incidences();
    let mut lengths = Vec::new();
    for edge in g.edges() {
        if edge.is_loop() {
            lengths.push(1);
        }
    }
    // Cycles with least vertex `s`, found by DFS over vertices greater than `s`.
    #[allow(clippy::too_many_arguments)]
    fn dfs(
        g: &Graph,
        inc: &[Vec<usize>],
        s: usize,
        at: usize,
        first: usize,
        visited: &mut Vec<bool>,
        depth: usize,
        lengths: &mut Vec<usize>,
    ) {
        for &e in &inc[at] {
            let edge = g.edge(e);
            if edge.is_loop() {
                continue;
            }
            let w = edge.other(at);
            if w == s && depth >= 1 && e != first {
                // each cycle is met once per direction
                lengths.push(depth + 1);
            } else if w > s && !visited[w] {
                visited[w] = true;
                let f = if depth == 0 { e } else { first };
                dfs(g, inc, s, w, f, visited, depth + 1, lengths);
                visited[w] = false;
            }
        }
    }
    let mut doubled = Vec::new();
    for s in 0..g.vertex_count() {
        let mut visited = vec![false; g.vertex_count()];
        visited[s] = true;
        dfs(g, &inc, s, s, usize::MAX, &mut visited, 0, &mut doubled);
    }
    doubled.sort_unstable();
    lengths.extend(doubled.chunks(2).map(|c| c[0]));
    lengths
}

/// Lengths of all paths between distinct vertices of degree other than 2
/// whose interior vertices all have degree 2.
pub fn chain_lengths(g: &Graph) -> Vec<usize> {
    let deg = g.degrees();
    let inc = g.incidences();
    let mut out = Vec::new();
    for s in 0..g.vertex_count() {
        if deg[s] == 2 {
            continue;
        }
        for &e in &inc[s] {
            let mut prev = e;
            let mut at = g.edge(e).other(s);
            let mut len = 1;
            let mut steps = 0;
            while deg[at] == 2 && at != s && steps <= g.edge_count() {
                let next = inc[at].iter().copied().find(|&f| f != prev).unwrap_or(prev);
                prev = next;
                at = g.edge(next).other(at);
                len += 1;
                steps += 1;
            }
            if at != s && deg[at] != 2 {
                out.push(len);
            }
        }
    }
    out
}

pub fn sufficient_by_enumeration(g: &Graph, n: usize) -> bool {
    g.vertex_count() >= n
        && chain_lengths(g).iter().all(|&l| l + 1 >= n)
        && all_cycle_lengths(g).iter().all(|&l| l > n)
}

/// Planarity by trying every rotation system of each connected component.
/// Returns `None` when the search space exceeds `limit`.
pub fn planar_by_rotations(g: &Graph, limit: u64) -> Option<bool> {
    let edges = g.simple_edges();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); g.vertex_count()];
    for &(a, b) in &edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut space: u64 = 1;
    for a in &adj {
        for k in 2..a.len() as u64 {
            space = space.saturating_mul(k);
        }
    }
    if space > limit {
        return None;
    }
    let simple = Graph::new(g.vertex_count(), edges.iter().copied()).unwrap();
    let (count, labels) = simple.components();
    for comp in 0..count {
        let verts: Vec<usize> = (0..g.vertex_count())
            .filter(|&v| labels[v] == comp)
            .collect();
        let e = edges.iter().filter(|&&(a, _)| labels[a] == comp).count();
        if e < 3 {
            continue;
        }
        let choices: Vec<Vec<Vec<usize>>> = verts
            .iter()
            .map(|&v| {
                let (first, rest) = adj[v]
                    .split_first()
                    .map_or((None, &[][..]), |(f, r)| (Some(*f), r));
                permutations(rest)
                    .into_iter()
                    .map(|mut p| {
                        if let Some(f) = first {
                            p.insert(0, f);
                        }
                        p
                    })
                    .collect()
            })
            .collect();
        let mut rotation: Vec<Vec<usize>> = vec![Vec::new(); g.vertex_count()];
        let target = 2 + e as i64 - verts.len() as i64;
        if !search(&verts, &choices, 0, &mut rotation, target) {
            return Some(false);
        }
    }
    Some(true)
}

fn search(
    verts: &[usize],
    choices: &[Vec<Vec<usize>>],
    i: usize,
    rotation: &mut Vec<Vec<usize>>,
    target: i64,
) -> bool {
    if i == verts.len() {
        return count_faces(verts, rotation) == target;
    }
    for option in &choices[i] {
        rotation[verts[i]] = option.clone();
        if search(verts, choices, i + 1, rotation, target) {
            return true;
        }
    }
    false
}

fn count_faces(verts: &[usize], rotation: &[Vec<usize>]) -> i64 {
    let mut seen: HashSet<(usize, usize)> = HashSet::new();
    let mut faces = 0;
    for &u in verts {
        for &v in &rotation[u] {
            if seen.contains(&(u, v)) {
                continue;
            }
            faces += 1;
            let (mut a, mut b) = (u, v);
            while seen.insert((a, b)) {
                let rot = &rotation[b];
                let pos = rot.iter().position(|&x| x == a).unwrap();
                let next = rot[(pos + 1) % rot.len()];
                a = b;
                b = next;
            }
        }
    }
    faces
}

/// Smooths away degree-2 vertices of the subgraph spanned by `edges` and
/// reports whether the result is K5 or K3,3.
pub fn contracts_to_kuratowski(vertex_count: usize, edges: &[(usize, usize)]) -> bool {
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); vertex_count];
    for &(a, b) in edges {
        if a == b || !adj[a].insert(b) {
            return false;
        }
        adj[b].insert(a);
    }
    while let Some(v) = (0..vertex_count).find(|&v| adj[v].len() == 2) {
        let ends: Vec<usize> = adj[v].iter().copied().collect();
        let (a, b) = (ends[0], ends[1]);
        if adj[a].contains(&b) {
            return false;
        }
        adj[v].clear();
        adj[a].remove(&v);
        adj[b].remove(&v);
        adj[a].insert(b);
        adj[b].insert(a);
    }
    let live: Vec<usize> = (0..vertex_count).filter(|&v| !adj[v].is_empty()).collect();
    let degs: Vec<usize> = live.iter().map(|&v| adj[v].len()).collect();
    if live.len() == 5 && degs.iter().all(|&d| d == 4) {
        return true;
    }
    if live.len() == 6 && degs.iter().all(|&d| d == 3) {
        let mut side = vec![None; vertex_count];
        side[live[0]] = Some(false);
        let mut stack = vec![live[0]];
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                match side[w] {
                    None => {
                        side[w] = Some(!side[v].unwrap());
                        stack.push(w);
                    }
                    Some(s) if s == side[v].unwrap() => return false,
                    _ => {}
                }
            }
        }
        return live.iter().all(|&v| side[v].is_some());
    }
    false
}
