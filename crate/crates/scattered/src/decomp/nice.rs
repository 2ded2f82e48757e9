use super::{check_tree, validate_decomposition, TreeDecomposition, Violation};
use crate::error::Result;
use crate::graph_core::{VertexSet, WeightedGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodeKind {
    Leaf,
    Introduce(usize),
    Forget(usize),
    Join,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NiceNode {
    pub kind: NodeKind,
    pub bag: VertexSet,
    pub children: Vec<usize>,
}

/// Rooted binary decomposition with leaf, introduce, forget and join nodes.
/// Children always precede their parent in `nodes`; the root bag is empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NiceDecomposition {
    pub nodes: Vec<NiceNode>,
    pub root: usize,
}

impl NiceDecomposition {
    pub fn width(&self) -> usize {
        self.nodes.iter().map(|x| x.bag.len()).max().unwrap_or(0).saturating_sub(1)
    }

    pub fn as_tree_decomposition(&self) -> TreeDecomposition {
        let mut tree_edges = Vec::new();
        for (i, node) in self.nodes.iter().enumerate() {
            for &c in &node.children {
                tree_edges.push((c, i));
            }
        }
        TreeDecomposition { bags: self.nodes.iter().map(|x| x.bag.clone()).collect(), tree_edges, root: self.root }
    }

    /// Node-kind discipline plus the three decomposition properties.
    pub fn validate(&self, g: &WeightedGraph) -> std::result::Result<usize, Violation> {
        for (i, node) in self.nodes.iter().enumerate() {
            let bad = |reason: &str| Err(Violation::NotNice { node: i, reason: reason.into() });
            if node.children.iter().any(|&c| c >= i) {
                return bad("child does not precede its parent");
            }
            match node.kind {
                NodeKind::Leaf => {
                    if !node.children.is_empty() || node.bag.len() != 1 {
                        return bad("leaf needs one vertex and no children");
                    }
                }
                NodeKind::Introduce(v) | NodeKind::Forget(v) => {
                    if node.children.len() != 1 {
                        return bad("introduce/forget needs one child");
                    }
                    let child = &self.nodes[node.children[0]].bag;
                    let ok = match node.kind {
                        NodeKind::Introduce(_) => {
                            !child.contains(v) && node.bag.contains(v) && child.len() + 1 == node.bag.len()
                                && child.members().iter().all(|&u| node.bag.contains(u))
                        }
                        _ => {
                            child.contains(v) && !node.bag.contains(v) && node.bag.len() + 1 == child.len()
                                && node.bag.members().iter().all(|&u| child.contains(u))
                        }
                    };
                    if !ok {
                        return bad("bag differs from child by more than the named vertex");
                    }
                }
                NodeKind::Join => {
                    if node.children.len() != 2
                        || node.children.iter().any(|&c| self.nodes[c].bag != node.bag)
                    {
                        return bad("join needs two children with identical bags");
                    }
                }
            }
        }
        if !self.nodes[self.root].bag.is_empty() {
            return Err(Violation::NotNice { node: self.root, reason: "root bag is not empty".into() });
        }
        validate_decomposition(g, &self.as_tree_decomposition())
    }
}

struct Builder {
    nodes: Vec<NiceNode>,
}

impl Builder {
    fn push(&mut self, kind: NodeKind, bag: VertexSet, children: Vec<usize>) -> usize {
        self.nodes.push(NiceNode { kind, bag, children });
        self.nodes.len() - 1
    }

    fn leaf_chain(&mut self, bag: &VertexSet) -> usize {
        let m = bag.members();
        let mut cur = VertexSet::from([m[0]]);
        let mut id = self.push(NodeKind::Leaf, cur.clone(), vec![]);
        for &v in &m[1..] {
            cur.insert(v);
            id = self.push(NodeKind::Introduce(v), cur.clone(), vec![id]);
        }
        id
    }

    /// Forget then introduce vertices to move from `from` (node `id`) to `to`.
    fn bridge(&mut self, mut id: usize, from: &VertexSet, to: &VertexSet) -> usize {
        let mut cur = from.clone();
        for &v in from.members() {
            if !to.contains(v) {
                cur = cur.members().iter().copied().filter(|&u| u != v).collect();
                id = self.push(NodeKind::Forget(v), cur.clone(), vec![id]);
            }
        }
        for &v in to.members() {
            if !from.contains(v) {
                cur.insert(v);
                id = self.push(NodeKind::Introduce(v), cur.clone(), vec![id]);
            }
        }
        id
    }
}

/// Drop empty bags by attaching their neighbours to one another.
fn without_empty_bags(td: &TreeDecomposition) -> TreeDecomposition {
    if td.bags.iter().all(|b| !b.is_empty()) || td.bags.iter().all(|b| b.is_empty()) {
        return td.clone();
    }
    let adj = td.adjacency();
    let keep: Vec<bool> = td.bags.iter().map(|b| !b.is_empty()).collect();
    let mut new_id = vec![usize::MAX; td.bags.len()];
    let mut bags = Vec::new();
    for (i, b) in td.bags.iter().enumerate() {
        if keep[i] {
            new_id[i] = bags.len();
            bags.push(b.clone());
        }
    }
    // Each maximal group of empty bags plus its kept neighbours becomes a star on one kept node.
    let mut tree_edges = Vec::new();
    let mut seen = vec![false; td.bags.len()];
    for (a, b) in td.tree_edges.iter().copied() {
        if keep[a] && keep[b] {
            tree_edges.push((new_id[a], new_id[b]));
        }
    }
    for s in 0..td.bags.len() {
        if keep[s] || seen[s] {
            continue;
        }
        let mut stack = vec![s];
        seen[s] = true;
        let mut border = Vec::new();
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if keep[y] {
                    border.push(new_id[y]);
                } else if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        border.sort_unstable();
        border.dedup();
        for w in border.windows(2) {
            tree_edges.push((w[0], w[1]));
        }
    }
    let root = if keep[td.root] { new_id[td.root] } else { 0 };
    TreeDecomposition { bags, tree_edges, root }
}

/// Convert to nice form of the same width, ending in an empty root bag.
pub fn make_nice(td: &TreeDecomposition) -> Result<NiceDecomposition> {
    check_tree(td.bags.len(), &td.tree_edges, td.root)?;
    let td = without_empty_bags(td);
    let mut b = Builder { nodes: Vec::new() };
    if td.bags.iter().all(|x| x.is_empty()) {
        return Err(Violation::NotATree("every bag is empty".into()).into());
    }
    let children = td.children();
    let mut order = Vec::with_capacity(td.bags.len());
    let mut stack = vec![td.root];
    while let Some(x) = stack.pop() {
        order.push(x);
        stack.extend(children[x].iter().copied());
    }
    let mut top = vec![usize::MAX; td.bags.len()];
    for &x in order.iter().rev() {
        let bag = &td.bags[x];
        let mut subs: Vec<usize> = children[x]
            .iter()
            .map(|&c| b.bridge(top[c], &td.bags[c], bag))
            .collect();
        top[x] = if subs.is_empty() {
            b.leaf_chain(bag)
        } else {
            let mut acc = subs.remove(0);
            for s in subs {
                acc = b.push(NodeKind::Join, bag.clone(), vec![acc, s]);
            }
            acc
        };
    }
    let root_bag = td.bags[td.root].clone();
    let root = b.bridge(top[td.root], &root_bag, &VertexSet::new());
    Ok(NiceDecomposition { nodes: b.nodes, root })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomp::heuristic_decomposition;

    #[test]
    fn single_bag_chain() {
        let nd = make_nice(&TreeDecomposition::trivial(2)).unwrap();
        let kinds: Vec<NodeKind> = nd.nodes.iter().map(|x| x.kind).collect();
        assert_eq!(
            kinds,
            vec![NodeKind::Leaf, NodeKind::Introduce(1), NodeKind::Forget(0), NodeKind::Forget(1)]
        );
        assert_eq!(nd.nodes[0].bag, VertexSet::from([0]));
        assert_eq!(nd.root, 3);
        assert_eq!(nd.validate(&WeightedGraph::path(2)), Ok(1));
    }

    #[test]
    fn p3_two_bags() {
        let td = TreeDecomposition::path(vec![VertexSet::from([0, 1]), VertexSet::from([1, 2])]);
        let nd = make_nice(&td).unwrap();
        assert!(nd.nodes.len() <= 10);
        assert!(nd.nodes.iter().all(|x| x.kind != NodeKind::Join));
        assert_eq!(nd.validate(&WeightedGraph::path(3)), Ok(1));
    }

    #[test]
    fn already_nice_input_keeps_width() {
        let g = WeightedGraph::cycle(6);
        let nd = make_nice(&heuristic_decomposition(&g)).unwrap();
        let again = make_nice(&nd.as_tree_decomposition()).unwrap();
        assert_eq!(again.validate(&g), Ok(nd.width()));
    }

    #[test]
    fn star_decomposition_gets_joins() {
        let g = WeightedGraph::star(3);
        let td = TreeDecomposition {
            bags: vec![VertexSet::from([0]), VertexSet::from([0, 1]), VertexSet::from([0, 2]), VertexSet::from([0, 3])],
            tree_edges: vec![(0, 1), (0, 2), (0, 3)],
            root: 0,
        };
        let nd = make_nice(&td).unwrap();
        assert_eq!(nd.nodes.iter().filter(|x| x.kind == NodeKind::Join).count(), 2);
        assert_eq!(nd.validate(&g), Ok(1));
    }

    #[test]
    fn empty_bags_are_dropped() {
        let g = WeightedGraph::new(2).unwrap();
        let td = TreeDecomposition {
            bags: vec![VertexSet::from([0]), VertexSet::new(), VertexSet::from([1])],
            tree_edges: vec![(0, 1), (1, 2)],
            root: 1,
        };
        assert_eq!(make_nice(&td).unwrap().validate(&g), Ok(0));
    }
}
