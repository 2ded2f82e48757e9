//! Weighted graphs, shortest-path distances and scatteredness checks.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};
use std::fmt::Write as _;

use crate::error::{parse_err, Error, Result};

/// Distance sentinel for vertex pairs in different components.
pub const INF: u64 = u64::MAX;

/// Undirected graph on vertices `0..n` with positive integer edge weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedGraph {
    n: usize,
    edges: Vec<(usize, usize, u64)>,
    adj: Vec<Vec<(usize, u64)>>,
}

impl WeightedGraph {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Graph("graph needs at least one vertex".into()));
        }
        Ok(WeightedGraph { n, edges: Vec::new(), adj: vec![Vec::new(); n] })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize, u64)]) -> Result<Self> {
        let mut g = WeightedGraph::new(n)?;
        for &(u, v, w) in edges {
            g.add_edge(u, v, w)?;
        }
        Ok(g)
    }

    /// Unit-weight graph from an edge list.
    pub fn unit(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = WeightedGraph::new(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v, 1)?;
        }
        Ok(g)
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        WeightedGraph::unit(n, &edges).expect("path")
    }

    pub fn cycle(n: usize) -> Self {
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        edges.push((n - 1, 0));
        WeightedGraph::unit(n, &edges).expect("cycle")
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        WeightedGraph::unit(n, &edges).expect("complete")
    }

    /// Star with centre 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Self {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        WeightedGraph::unit(leaves + 1, &edges).expect("star")
    }

    pub fn add_edge(&mut self, u: usize, v: usize, w: u64) -> Result<()> {
        if u >= self.n || v >= self.n {
            return Err(Error::Graph(format!("edge ({u},{v}) out of range for n={}", self.n)));
        }
        if u == v {
            return Err(Error::Graph(format!("self-loop at {u}")));
        }
        if w == 0 {
            return Err(Error::Graph(format!("edge ({u},{v}) has weight 0")));
        }
        if self.has_edge(u, v) {
            return Err(Error::Graph(format!("duplicate edge ({u},{v})")));
        }
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        self.edges.push((a, b, w));
        self.adj[u].push((v, w));
        self.adj[v].push((u, w));
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v, w)` with `u < v`, in insertion order.
    pub fn edges(&self) -> &[(usize, usize, u64)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[(usize, u64)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let (a, b) = if self.adj[u].len() <= self.adj[v].len() { (u, v) } else { (v, u) };
        self.adj[a].iter().any(|&(x, _)| x == b)
    }

    pub fn is_unit(&self) -> bool {
        self.edges.iter().all(|&(_, _, w)| w == 1)
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut comps = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut stack = vec![s];
            let mut comp = Vec::new();
            while let Some(v) = stack.pop() {
                comp.push(v);
                for &(u, _) in &self.adj[v] {
                    if !seen[u] {
                        seen[u] = true;
                        stack.push(u);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Subgraph induced by `vertices`, relabelled to `0..vertices.len()` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> WeightedGraph {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let mut g = WeightedGraph::new(vertices.len().max(1)).expect("nonempty");
        for &(u, v, w) in &self.edges {
            if index[u] != usize::MAX && index[v] != usize::MAX {
                g.add_edge(index[u], index[v], w).expect("induced edge");
            }
        }
        g
    }

    /// Graph with every vertex in `removed` deleted (edges dropped, ids kept).
    pub fn without_vertices(&self, removed: &[usize]) -> WeightedGraph {
        let gone: HashSet<usize> = removed.iter().copied().collect();
        let mut g = WeightedGraph::new(self.n).expect("nonempty");
        for &(u, v, w) in &self.edges {
            if !gone.contains(&u) && !gone.contains(&v) {
                g.add_edge(u, v, w).expect("subgraph edge");
            }
        }
        g
    }

    /// True iff the graph has no cycle, ignoring vertices listed in `removed`.
    pub fn is_forest_without(&self, removed: &[usize]) -> bool {
        let gone: HashSet<usize> = removed.iter().copied().collect();
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for &(u, v, _) in &self.edges {
            if gone.contains(&u) || gone.contains(&v) {
                continue;
            }
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a == b {
                return false;
            }
            parent[a] = b;
        }
        true
    }

    /// Single-source shortest paths; entries beyond `limit` may be reported as `INF`.
    pub fn dijkstra(&self, s: usize, limit: u64) -> Result<Vec<u64>> {
        let mut dist = vec![INF; self.n];
        dist[s] = 0;
        let mut heap = BinaryHeap::new();
        heap.push(Reverse((0u64, s)));
        while let Some(Reverse((du, u))) = heap.pop() {
            if du > dist[u] {
                continue;
            }
            for &(v, w) in &self.adj[u] {
                let nd = du.checked_add(w).ok_or(Error::Overflow(s, v))?;
                if nd == INF {
                    return Err(Error::Overflow(s, v));
                }
                if nd <= limit && nd < dist[v] {
                    dist[v] = nd;
                    heap.push(Reverse((nd, v)));
                }
            }
        }
        Ok(dist)
    }
}

/// Parse the DSS text format: `p dss <n> <m>` followed by `e <u> <v> [<w>]` lines.
pub fn parse_graph(text: &str) -> Result<WeightedGraph> {
    let mut graph: Option<WeightedGraph> = None;
    let mut declared_m = 0usize;
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks[0] {
            "p" => {
                if graph.is_some() {
                    return parse_err(line_no, "second header");
                }
                if toks.len() != 4 || toks[1] != "dss" {
                    return parse_err(line_no, "malformed header, expected `p dss <n> <m>`");
                }
                let n: usize = toks[2].parse().or_else(|_| parse_err(line_no, "bad vertex count"))?;
                declared_m = toks[3].parse().or_else(|_| parse_err(line_no, "bad edge count"))?;
                graph = Some(WeightedGraph::new(n).or_else(|e| parse_err(line_no, e.to_string()))?);
            }
            "e" => {
                let Some(g) = graph.as_mut() else {
                    return parse_err(line_no, "edge before header");
                };
                if toks.len() != 3 && toks.len() != 4 {
                    return parse_err(line_no, "expected `e <u> <v> [<w>]`");
                }
                let u: usize = toks[1].parse().or_else(|_| parse_err(line_no, "bad vertex id"))?;
                let v: usize = toks[2].parse().or_else(|_| parse_err(line_no, "bad vertex id"))?;
                if u == 0 || v == 0 || u > g.n() || v > g.n() {
                    return parse_err(line_no, format!("vertex id out of range 1..={}", g.n()));
                }
                let w: u64 = match toks.get(3) {
                    Some(t) => t.parse().or_else(|_| parse_err(line_no, "bad weight"))?,
                    None => 1,
                };
                if w < 1 {
                    return parse_err(line_no, "weight must be at least 1");
                }
                if u == v {
                    return parse_err(line_no, "self-loop");
                }
                if g.has_edge(u - 1, v - 1) {
                    return parse_err(line_no, format!("duplicate edge {u} {v}"));
                }
                g.add_edge(u - 1, v - 1, w).or_else(|e| parse_err(line_no, e.to_string()))?;
            }
            other => return parse_err(line_no, format!("unknown line type `{other}`")),
        }
    }
    let g = match graph {
        Some(g) => g,
        None => return parse_err(last_line.max(1), "missing header"),
    };
    if g.m() != declared_m {
        return parse_err(last_line.max(1), format!("header declares {declared_m} edges, found {}", g.m()));
    }
    Ok(g)
}

/// Serialize in the DSS format; unit weights are omitted.
pub fn write_graph(g: &WeightedGraph) -> String {
    let mut out = format!("p dss {} {}\n", g.n(), g.m());
    for &(u, v, w) in g.edges() {
        if w == 1 {
            writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
        } else {
            writeln!(out, "e {} {} {}", u + 1, v + 1, w).unwrap();
        }
    }
    out
}

/// Sorted duplicate-free vertex list.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(Vec::new())
    }

    pub fn members(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn insert(&mut self, v: usize) {
        if let Err(pos) = self.0.binary_search(&v) {
            self.0.insert(pos, v);
        }
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut v: Vec<usize> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }
}

impl From<Vec<usize>> for VertexSet {
    fn from(v: Vec<usize>) -> Self {
        v.into_iter().collect()
    }
}

impl<const N: usize> From<[usize; N]> for VertexSet {
    fn from(v: [usize; N]) -> Self {
        v.into_iter().collect()
    }
}

/// Parse a vertex set file: whitespace-separated 1-based ids, `c` comment lines.
pub fn parse_vertex_set(text: &str, n: usize) -> Result<VertexSet> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        for tok in line.split_whitespace() {
            let v: usize = tok.parse().or_else(|_| parse_err(idx + 1, format!("bad vertex id `{tok}`")))?;
            if v == 0 || v > n {
                return parse_err(idx + 1, format!("vertex id {v} out of range 1..={n}"));
            }
            out.push(v - 1);
        }
    }
    Ok(out.into_iter().collect())
}

pub fn write_vertex_set(k: &VertexSet) -> String {
    let ids: Vec<String> = k.members().iter().map(|v| (v + 1).to_string()).collect();
    format!("{}\n", ids.join(" "))
}

/// All-pairs shortest-path matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceOracle {
    n: usize,
    dist: Vec<u64>,
}

impl DistanceOracle {
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> u64 {
        self.dist[u * self.n + v]
    }

    pub fn row(&self, u: usize) -> &[u64] {
        &self.dist[u * self.n..(u + 1) * self.n]
    }

    /// First pair of `k` closer than `d`, as `(u, v, dist)`.
    pub fn first_violation(&self, k: &VertexSet, d: u64) -> Option<(usize, usize, u64)> {
        let m = k.members();
        for (i, &u) in m.iter().enumerate() {
            for &v in &m[i + 1..] {
                let duv = self.get(u, v);
                if duv < d {
                    return Some((u, v, duv));
                }
            }
        }
        None
    }

    pub fn is_scattered(&self, k: &VertexSet, d: u64) -> bool {
        self.first_violation(k, d).is_none()
    }
}

pub fn all_pairs_distances(g: &WeightedGraph) -> Result<DistanceOracle> {
    let n = g.n();
    let mut dist = Vec::with_capacity(n * n);
    for s in 0..n {
        dist.extend(g.dijkstra(s, INF - 1)?);
    }
    Ok(DistanceOracle { n, dist })
}

/// True iff all distinct members of `k` are pairwise at distance at least `d`.
pub fn is_scattered(g: &WeightedGraph, k: &VertexSet, d: u64) -> bool {
    scatter_violation(g, k, d).is_none()
}

/// First pair of `k` at distance below `d`, found with bounded Dijkstra runs.
pub fn scatter_violation(g: &WeightedGraph, k: &VertexSet, d: u64) -> Option<(usize, usize, u64)> {
    if k.len() <= 1 || d == 0 {
        return None;
    }
    for (i, &u) in k.members().iter().enumerate() {
        let dist = match g.dijkstra(u, d - 1) {
            Ok(dist) => dist,
            Err(_) => continue,
        };
        for &v in &k.members()[i + 1..] {
            if dist[v] < d {
                return Some((u, v, dist[v]));
            }
        }
    }
    None
}

/// Largest finite distance, `INF` if `n ≥ 2` and the graph is disconnected.
pub fn diameter(g: &WeightedGraph) -> Result<u64> {
    let apd = all_pairs_distances(g)?;
    Ok(diameter_of(&apd))
}

pub fn diameter_of(apd: &DistanceOracle) -> u64 {
    let mut best = 0;
    for u in 0..apd.n() {
        for &x in apd.row(u) {
            if x == INF {
                return INF;
            }
            best = best.max(x);
        }
    }
    best
}
