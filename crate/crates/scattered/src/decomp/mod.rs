//! Tree decompositions: validation, min-fill construction, nice form,
//! logarithmic-depth balancing and the PACE `.td` text format.

mod balance;
mod heuristic;
mod nice;

use std::collections::VecDeque;
use std::fmt::{self, Write as _};

pub use balance::{balance, depth_bound};
pub use heuristic::{decomposition_from_ordering, heuristic_decomposition, min_fill_ordering};
pub use nice::{make_nice, NiceDecomposition, NiceNode, NodeKind};

use crate::error::{parse_err, Error, Result};
use crate::graph_core::{VertexSet, WeightedGraph};

/// Bags on the nodes of a rooted tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeDecomposition {
    pub bags: Vec<VertexSet>,
    pub tree_edges: Vec<(usize, usize)>,
    pub root: usize,
}

/// First failed decomposition property, with witnesses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NotATree(String),
    VertexOutOfRange { node: usize, vertex: usize },
    VertexMissing(usize),
    EdgeUncovered(usize, usize),
    Disconnected { vertex: usize, nodes: Vec<usize> },
    NotNice { node: usize, reason: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotATree(s) => write!(f, "tree structure: {s}"),
            Violation::VertexOutOfRange { node, vertex } => write!(f, "bag {node} holds unknown vertex {vertex}"),
            Violation::VertexMissing(v) => write!(f, "vertex {v} is in no bag"),
            Violation::EdgeUncovered(u, v) => write!(f, "edge ({u},{v}) is in no bag"),
            Violation::Disconnected { vertex, nodes } => {
                write!(f, "bags holding vertex {vertex} are not connected: {nodes:?}")
            }
            Violation::NotNice { node, reason } => write!(f, "node {node} is not nice: {reason}"),
        }
    }
}

impl From<Violation> for Error {
    fn from(v: Violation) -> Self {
        Error::Decomposition(v.to_string())
    }
}

impl TreeDecomposition {
    /// Decomposition with a single bag holding every vertex.
    pub fn trivial(n: usize) -> Self {
        TreeDecomposition { bags: vec![(0..n).collect()], tree_edges: vec![], root: 0 }
    }

    /// Path decomposition from a bag sequence, rooted at the first bag.
    pub fn path(bags: Vec<VertexSet>) -> Self {
        let tree_edges = (1..bags.len()).map(|i| (i - 1, i)).collect();
        TreeDecomposition { bags, tree_edges, root: 0 }
    }

    pub fn width(&self) -> usize {
        self.bags.iter().map(|b| b.len()).max().unwrap_or(0).saturating_sub(1)
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.bags.len()];
        for &(a, b) in &self.tree_edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    /// Children lists when rooted at `root`; requires a tree.
    pub fn children(&self) -> Vec<Vec<usize>> {
        let adj = self.adjacency();
        let mut children = vec![Vec::new(); self.bags.len()];
        let mut seen = vec![false; self.bags.len()];
        let mut queue = VecDeque::from([self.root]);
        seen[self.root] = true;
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    children[x].push(y);
                    queue.push_back(y);
                }
            }
        }
        children
    }

    /// Longest root-to-leaf path, counted in edges.
    pub fn depth(&self) -> usize {
        let children = self.children();
        let mut best = 0;
        let mut stack = vec![(self.root, 0)];
        while let Some((x, h)) = stack.pop() {
            best = best.max(h);
            for &c in &children[x] {
                stack.push((c, h + 1));
            }
        }
        best
    }

    pub fn is_binary(&self) -> bool {
        self.children().iter().all(|c| c.len() <= 2)
    }
}

fn check_tree(num: usize, edges: &[(usize, usize)], root: usize) -> std::result::Result<(), Violation> {
    if num == 0 {
        return Err(Violation::NotATree("no bags".into()));
    }
    if root >= num {
        return Err(Violation::NotATree(format!("root {root} out of range")));
    }
    if edges.len() != num - 1 {
        return Err(Violation::NotATree(format!("{} bags but {} tree edges", num, edges.len())));
    }
    let mut adj = vec![Vec::new(); num];
    for &(a, b) in edges {
        if a >= num || b >= num || a == b {
            return Err(Violation::NotATree(format!("bad tree edge ({a},{b})")));
        }
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut seen = vec![false; num];
    let mut stack = vec![root];
    seen[root] = true;
    let mut count = 1;
    while let Some(x) = stack.pop() {
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                count += 1;
                stack.push(y);
            }
        }
    }
    if count != num {
        return Err(Violation::NotATree("tree edges do not connect all bags".into()));
    }
    Ok(())
}

/// Check the three decomposition properties; returns the width on success.
pub fn validate_decomposition(g: &WeightedGraph, td: &TreeDecomposition) -> std::result::Result<usize, Violation> {
    check_tree(td.bags.len(), &td.tree_edges, td.root)?;
    let n = g.n();
    let mut holders: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, bag) in td.bags.iter().enumerate() {
        for &v in bag.members() {
            if v >= n {
                return Err(Violation::VertexOutOfRange { node: i, vertex: v });
            }
            holders[v].push(i);
        }
    }
    if let Some(v) = (0..n).find(|&v| holders[v].is_empty()) {
        return Err(Violation::VertexMissing(v));
    }
    for &(u, v, _) in g.edges() {
        let (a, b) = if holders[u].len() <= holders[v].len() { (u, v) } else { (v, u) };
        if !holders[a].iter().any(|&i| td.bags[i].contains(b)) {
            return Err(Violation::EdgeUncovered(u, v));
        }
    }
    let adj = td.adjacency();
    let mut mark = vec![usize::MAX; td.bags.len()];
    for v in 0..n {
        let nodes = &holders[v];
        let mut stack = vec![nodes[0]];
        mark[nodes[0]] = v;
        let mut reached = 1;
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if mark[y] != v && td.bags[y].contains(v) {
                    mark[y] = v;
                    reached += 1;
                    stack.push(y);
                }
            }
        }
        if reached != nodes.len() {
            return Err(Violation::Disconnected { vertex: v, nodes: nodes.clone() });
        }
    }
    Ok(td.width())
}

/// Parse the PACE `.td` format; the first bag becomes the root.
pub fn parse_td(text: &str) -> Result<TreeDecomposition> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut bags: Vec<Option<VertexSet>> = Vec::new();
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        let num = |t: &str| -> Result<usize> { t.parse().or_else(|_| parse_err(line_no, format!("bad number `{t}`"))) };
        match toks[0] {
            "s" => {
                if toks.len() != 5 || toks[1] != "td" {
                    return parse_err(line_no, "expected `s td <bags> <width+1> <n>`");
                }
                let h = (num(toks[2])?, num(toks[3])?, num(toks[4])?);
                bags = vec![None; h.0];
                header = Some(h);
            }
            "b" => {
                let Some((nb, _, n)) = header else { return parse_err(line_no, "bag before header") };
                if toks.len() < 2 {
                    return parse_err(line_no, "bag line without id");
                }
                let id = num(toks[1])?;
                if id == 0 || id > nb {
                    return parse_err(line_no, format!("bag id {id} out of range"));
                }
                let mut vs = Vec::new();
                for t in &toks[2..] {
                    let v = num(t)?;
                    if v == 0 || v > n {
                        return parse_err(line_no, format!("vertex {v} out of range"));
                    }
                    vs.push(v - 1);
                }
                if bags[id - 1].is_some() {
                    return parse_err(line_no, format!("bag {id} declared twice"));
                }
                bags[id - 1] = Some(vs.into());
            }
            _ => {
                let Some((nb, _, _)) = header else { return parse_err(line_no, "edge before header") };
                if toks.len() != 2 {
                    return parse_err(line_no, "expected tree edge `<i> <j>`");
                }
                let (a, b) = (num(toks[0])?, num(toks[1])?);
                if a == 0 || b == 0 || a > nb || b > nb {
                    return parse_err(line_no, "tree edge endpoint out of range");
                }
                edges.push((a - 1, b - 1));
            }
        }
    }
    let Some((_, width1, _)) = header else { return parse_err(1, "missing header") };
    let bags: Vec<VertexSet> = bags
        .into_iter()
        .enumerate()
        .map(|(i, b)| b.ok_or_else(|| Error::Parse { line: 0, msg: format!("bag {} missing", i + 1) }))
        .collect::<Result<_>>()?;
    let td = TreeDecomposition { bags, tree_edges: edges, root: 0 };
    if td.bags.iter().map(|b| b.len()).max().unwrap_or(0) > width1 {
        return parse_err(1, "a bag exceeds the declared width");
    }
    Ok(td)
}

/// Serialize in the PACE `.td` format with the root written as bag 1.
pub fn write_td(td: &TreeDecomposition, n: usize) -> String {
    let k = td.bags.len();
    let mut order: Vec<usize> = (0..k).collect();
    order.swap(0, td.root);
    let mut id = vec![0; k];
    for (pos, &node) in order.iter().enumerate() {
        id[node] = pos + 1;
    }
    let width1 = td.bags.iter().map(|b| b.len()).max().unwrap_or(0);
    let mut out = format!("s td {k} {width1} {n}\n");
    for &node in &order {
        write!(out, "b {}", id[node]).unwrap();
        for v in td.bags[node].members() {
            write!(out, " {}", v + 1).unwrap();
        }
        out.push('\n');
    }
    for &(a, b) in &td.tree_edges {
        writeln!(out, "{} {}", id[a], id[b]).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vs<const N: usize>(a: [usize; N]) -> VertexSet {
        VertexSet::from(a)
    }

    #[test]
    fn single_edge_single_bag() {
        let g = WeightedGraph::path(2);
        let td = TreeDecomposition::trivial(2);
        assert_eq!(validate_decomposition(&g, &td), Ok(1));
    }

    #[test]
    fn uncovered_edge() {
        let g = WeightedGraph::path(3);
        let td = TreeDecomposition::path(vec![vs([0, 1]), vs([2])]);
        assert_eq!(validate_decomposition(&g, &td), Err(Violation::EdgeUncovered(1, 2)));
    }

    #[test]
    fn broken_connectivity() {
        let g = WeightedGraph::path(2);
        let td = TreeDecomposition::path(vec![vs([0, 1]), vs([1]), vs([0, 1])]);
        assert!(matches!(validate_decomposition(&g, &td), Err(Violation::Disconnected { vertex: 0, .. })));
    }

    #[test]
    fn missing_vertex_and_bad_tree() {
        let g = WeightedGraph::new(3).unwrap();
        let td = TreeDecomposition::path(vec![vs([0]), vs([1])]);
        assert_eq!(validate_decomposition(&g, &td), Err(Violation::VertexMissing(2)));
        let bad = TreeDecomposition { bags: vec![vs([0]), vs([1]), vs([2])], tree_edges: vec![(0, 1)], root: 0 };
        assert!(matches!(validate_decomposition(&g, &bad), Err(Violation::NotATree(_))));
    }

    #[test]
    fn td_format_roundtrip() {
        let td = TreeDecomposition {
            bags: vec![vs([0, 1]), vs([1, 2]), vs([2, 3])],
            tree_edges: vec![(0, 1), (1, 2)],
            root: 1,
        };
        let text = write_td(&td, 4);
        assert!(text.starts_with("s td 3 2 4\nb 1 2 3\n"));
        let back = parse_td(&text).unwrap();
        assert_eq!(back.bags[back.root], td.bags[td.root]);
        let g = WeightedGraph::path(4);
        assert_eq!(validate_decomposition(&g, &back), Ok(1));
    }

    #[test]
    fn td_format_errors() {
        assert!(parse_td("s td 1 2 2\nb 1 1 3\n").is_err());
        assert!(parse_td("b 1 1\n").is_err());
        assert!(parse_td("s td 2 2 2\nb 1 1 2\n").is_err());
    }
}
