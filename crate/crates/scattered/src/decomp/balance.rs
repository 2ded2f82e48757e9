use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap, VecDeque};

use super::{validate_decomposition, TreeDecomposition};
use crate::error::Result;
use crate::graph_core::{VertexSet, WeightedGraph};

/// Depth guaranteed by [`balance`] for a graph on `n` vertices.
pub fn depth_bound(n: usize) -> usize {
    let mut lg = 0;
    while (1usize << lg) < n + 1 {
        lg += 1;
    }
    4 * lg + 4
}

/// Contract tree edges whose endpoint bag is contained in its neighbour's bag.
fn compress(td: &TreeDecomposition) -> (Vec<VertexSet>, Vec<BTreeSet<usize>>) {
    let k = td.bags.len();
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); k];
    for &(a, b) in &td.tree_edges {
        adj[a].insert(b);
        adj[b].insert(a);
    }
    let subset = |a: &VertexSet, b: &VertexSet| a.members().iter().all(|&v| b.contains(v));
    let mut alive = vec![true; k];
    let mut changed = true;
    while changed {
        changed = false;
        for x in 0..k {
            if !alive[x] {
                continue;
            }
            let target = adj[x].iter().copied().find(|&y| subset(&td.bags[x], &td.bags[y]));
            if let Some(y) = target {
                let nbrs: Vec<usize> = adj[x].iter().copied().collect();
                for z in nbrs {
                    adj[z].remove(&x);
                    if z != y {
                        adj[z].insert(y);
                        adj[y].insert(z);
                    }
                }
                adj[x].clear();
                alive[x] = false;
                changed = true;
            }
        }
    }
    let mut id = vec![usize::MAX; k];
    let mut bags = Vec::new();
    for x in 0..k {
        if alive[x] {
            id[x] = bags.len();
            bags.push(td.bags[x].clone());
        }
    }
    let mut out = vec![BTreeSet::new(); bags.len()];
    for x in 0..k {
        if alive[x] {
            for &y in &adj[x] {
                out[id[x]].insert(id[y]);
            }
        }
    }
    (bags, out)
}

struct Balancer<'a> {
    bags: &'a [VertexSet],
    adj: &'a [BTreeSet<usize>],
    in_part: Vec<bool>,
    out_bags: Vec<VertexSet>,
    out_edges: Vec<(usize, usize)>,
}

impl Balancer<'_> {
    fn component_from(&self, start: usize, banned: usize) -> Vec<usize> {
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for &y in &self.adj[x] {
                if y != banned && self.in_part[y] && seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Subtree sizes after rooting the current part at `part[0]`; returns (parent, size, order).
    fn rooted(&self, part: &[usize]) -> (Vec<usize>, Vec<usize>, Vec<usize>) {
        let k = self.bags.len();
        let mut parent = vec![usize::MAX; k];
        let mut order = vec![part[0]];
        parent[part[0]] = part[0];
        let mut i = 0;
        while i < order.len() {
            let x = order[i];
            i += 1;
            for &y in &self.adj[x] {
                if self.in_part[y] && parent[y] == usize::MAX {
                    parent[y] = x;
                    order.push(y);
                }
            }
        }
        let mut size = vec![0; k];
        for &x in order.iter().rev() {
            size[x] += 1;
            if parent[x] != x {
                size[parent[x]] += size[x];
            }
        }
        (parent, size, order)
    }

    fn centroid(&self, part: &[usize]) -> usize {
        let (parent, size, order) = self.rooted(part);
        let total = part.len();
        let mut best = (usize::MAX, part[0]);
        for &x in &order {
            let mut worst = total - size[x];
            for &y in &self.adj[x] {
                if self.in_part[y] && parent[y] == x {
                    worst = worst.max(size[y]);
                }
            }
            best = best.min((worst, x));
        }
        best.1
    }

    fn tree_path(&self, part: &[usize], a: usize, b: usize) -> Vec<usize> {
        let (parent, _, _) = self.rooted(&[a].iter().chain(part.iter()).copied().collect::<Vec<_>>());
        let mut path = vec![b];
        let mut x = b;
        while x != a {
            x = parent[x];
            path.push(x);
        }
        path
    }

    fn split_node(&self, part: &[usize], boundary: &[usize]) -> usize {
        let z = self.centroid(part);
        if boundary.len() < 2 {
            return z;
        }
        let path = self.tree_path(part, boundary[0], boundary[1]);
        if path.contains(&z) {
            return z;
        }
        let (parent, _, _) = self.rooted(&[z].iter().chain(part.iter()).copied().collect::<Vec<_>>());
        let on_path: BTreeSet<usize> = path.into_iter().collect();
        let mut x = boundary[0];
        let mut closest = x;
        while x != z {
            if on_path.contains(&x) {
                closest = x;
            }
            x = parent[x];
        }
        closest
    }

    fn emit(&mut self, bag: VertexSet, children: &[usize]) -> usize {
        let id = self.out_bags.len();
        self.out_bags.push(bag);
        for &c in children {
            self.out_edges.push((id, c));
        }
        id
    }

    /// Returns (new root node, number of original nodes covered).
    fn build(&mut self, part: Vec<usize>, boundary: Vec<usize>) -> (usize, usize) {
        let c = self.split_node(&part, &boundary);
        let mut bag: BTreeSet<usize> = self.bags[c].members().iter().copied().collect();
        for &b in &boundary {
            bag.extend(self.bags[b].members().iter().copied());
        }
        let bag: VertexSet = bag.into_iter().collect();
        if part.len() == 1 {
            return (self.emit(bag, &[]), 1);
        }
        let mut subparts = Vec::new();
        for &y in &self.adj[c] {
            if self.in_part[y] {
                subparts.push(self.component_from(y, c));
            }
        }
        for &x in &part {
            self.in_part[x] = false;
        }
        let mut built = Vec::new();
        for sub in subparts {
            for &x in &sub {
                self.in_part[x] = true;
            }
            let mut nb: Vec<usize> = self.adj[c].iter().copied().filter(|y| sub.binary_search(y).is_ok()).collect();
            nb.extend(boundary.iter().copied().filter(|b| sub.binary_search(b).is_ok()));
            nb.sort_unstable();
            nb.dedup();
            built.push(self.build(sub.clone(), nb));
            for &x in &sub {
                self.in_part[x] = false;
            }
        }
        for &x in &part {
            self.in_part[x] = true;
        }
        // Huffman grouping by covered size.
        let mut heap: BinaryHeap<Reverse<(usize, usize)>> = built.iter().map(|&(id, s)| Reverse((s, id))).collect();
        while heap.len() > 2 {
            let Reverse((s1, a)) = heap.pop().unwrap();
            let Reverse((s2, b)) = heap.pop().unwrap();
            let id = self.emit(bag.clone(), &[a, b]);
            heap.push(Reverse((s1 + s2, id)));
        }
        let kids: Vec<usize> = heap.into_iter().map(|Reverse((_, id))| id).collect();
        (self.emit(bag, &kids), part.len())
    }
}

/// Rebuild as a rooted binary decomposition of logarithmic depth.
///
/// The tree is split recursively at centroids; a part touching two earlier
/// splits is cut on the path between them, so every new bag is the union of at
/// most three input bags (width at most `3w + 2`).
pub fn balance(td: &TreeDecomposition, g: &WeightedGraph) -> Result<TreeDecomposition> {
    validate_decomposition(g, td)?;
    let (bags, adj) = compress(td);
    let mut b = Balancer {
        bags: &bags,
        adj: &adj,
        in_part: vec![true; bags.len()],
        out_bags: Vec::new(),
        out_edges: Vec::new(),
    };
    let all: Vec<usize> = (0..bags.len()).collect();
    let (root, _) = b.build(all, Vec::new());
    Ok(TreeDecomposition { bags: b.out_bags, tree_edges: b.out_edges, root })
}
