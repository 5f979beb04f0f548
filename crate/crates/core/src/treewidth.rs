//! Tree decompositions: greedy elimination heuristics, an exact solver for
//! small graphs, validation against the three decomposition axioms, and
//! conversion to nice form for the dynamic programs.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::digraph::UndirectedGraph;
use crate::error::{Error, Result};

/// Largest graph accepted by [`exact_treewidth_small`].
pub const EXACT_TREEWIDTH_MAX_VERTICES: usize = 14;

/// Bags on the nodes of a tree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeDecomposition {
    /// Sorted bag per node.
    pub bags: Vec<Vec<usize>>,
    /// Undirected tree edges between node indices.
    pub edges: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NotATree,
    VertexOutOfRange { node: usize, vertex: usize },
    UncoveredVertex(usize),
    UncoveredEdge(usize, usize),
    Incoherent(usize),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotATree => write!(f, "decomposition nodes do not form a tree"),
            Violation::VertexOutOfRange { node, vertex } => {
                write!(f, "node {node} holds unknown vertex {vertex}")
            }
            Violation::UncoveredVertex(v) => write!(f, "vertex {v} is in no bag"),
            Violation::UncoveredEdge(u, v) => write!(f, "edge {{{u},{v}}} is in no bag"),
            Violation::Incoherent(v) => write!(f, "bags holding vertex {v} are not connected"),
        }
    }
}

impl TreeDecomposition {
    /// Maximum bag size minus one (zero for an empty decomposition).
    pub fn width(&self) -> usize {
        self.bags
            .iter()
            .map(Vec::len)
            .max()
            .unwrap_or(1)
            .saturating_sub(1)
    }

    pub fn len(&self) -> usize {
        self.bags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bags.is_empty()
    }

    fn tree_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.bags.len()];
        for &(a, b) in &self.edges {
            if a < adj.len() && b < adj.len() {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        adj
    }

    /// Checks coverage of vertices and edges and the subtree property.
    pub fn validate(&self, g: &UndirectedGraph) -> std::result::Result<(), Vec<Violation>> {
        let mut out = Vec::new();
        let nodes = self.bags.len();
        let tree_ok = if nodes == 0 {
            self.edges.is_empty()
        } else {
            let adj = self.tree_adjacency();
            let in_range = self
                .edges
                .iter()
                .all(|&(a, b)| a < nodes && b < nodes && a != b);
            let mut seen = vec![false; nodes];
            let mut queue = VecDeque::from([0]);
            seen[0] = true;
            let mut count = 1;
            while let Some(u) = queue.pop_front() {
                for &w in &adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        count += 1;
                        queue.push_back(w);
                    }
                }
            }
            in_range && self.edges.len() == nodes - 1 && count == nodes
        };
        if !tree_ok {
            out.push(Violation::NotATree);
        }

        let n = g.n();
        let mut holders: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (i, bag) in self.bags.iter().enumerate() {
            for &v in bag {
                if v >= n {
                    out.push(Violation::VertexOutOfRange { node: i, vertex: v });
                } else {
                    holders[v].push(i);
                }
            }
        }
        for (v, h) in holders.iter().enumerate() {
            if h.is_empty() {
                out.push(Violation::UncoveredVertex(v));
            }
        }
        for (u, v) in g.edges() {
            let covered = holders[u]
                .iter()
                .any(|&i| self.bags[i].binary_search(&v).is_ok());
            if !covered {
                out.push(Violation::UncoveredEdge(u, v));
            }
        }
        if tree_ok {
            let adj = self.tree_adjacency();
            for (v, h) in holders.iter().enumerate() {
                if h.len() <= 1 {
                    continue;
                }
                let member: BTreeSet<usize> = h.iter().copied().collect();
                let mut seen = BTreeSet::from([h[0]]);
                let mut queue = VecDeque::from([h[0]]);
                while let Some(u) = queue.pop_front() {
                    for &w in &adj[u] {
                        if member.contains(&w) && seen.insert(w) {
                            queue.push_back(w);
                        }
                    }
                }
                if seen.len() != member.len() {
                    out.push(Violation::Incoherent(v));
                }
            }
        }
        if out.is_empty() {
            Ok(())
        } else {
            Err(out)
        }
    }

    /// Text export: one `node: v1 v2 ...` line per bag, then one `a b` line per
    /// tree edge.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (i, bag) in self.bags.iter().enumerate() {
            let _ = write!(s, "{i}:");
            for v in bag {
                let _ = write!(s, " {v}");
            }
            s.push('\n');
        }
        for &(a, b) in &self.edges {
            let _ = writeln!(s, "{a} {b}");
        }
        s
    }
}

fn validation_error(v: Vec<Violation>) -> Error {
    Error::InvalidDecomposition(
        v.iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join("; "),
    )
}

/// Elimination heuristic for [`greedy_decomposition`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    MinDegree,
    MinFill,
}

/// Greedy elimination order; ties go to the lowest vertex id.
pub fn elimination_ordering(g: &UndirectedGraph, strategy: Strategy) -> Vec<usize> {
    let n = g.n();
    let mut adj: Vec<BTreeSet<usize>> = (0..n)
        .map(|v| g.neighbors(v).iter().copied().collect())
        .collect();
    let mut alive = vec![true; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let mut best: Option<(usize, usize)> = None;
        for v in (0..n).filter(|&v| alive[v]) {
            let score = match strategy {
                Strategy::MinDegree => adj[v].len(),
                Strategy::MinFill => fill_in(&adj, v),
            };
            if best.is_none_or(|(s, _)| score < s) {
                best = Some((score, v));
            }
        }
        let (_, v) = best.expect("alive vertex");
        eliminate(&mut adj, v);
        alive[v] = false;
        order.push(v);
    }
    order
}

fn fill_in(adj: &[BTreeSet<usize>], v: usize) -> usize {
    let ns: Vec<usize> = adj[v].iter().copied().collect();
    let mut missing = 0;
    for (i, &a) in ns.iter().enumerate() {
        for &b in &ns[i + 1..] {
            if !adj[a].contains(&b) {
                missing += 1;
            }
        }
    }
    missing
}

fn eliminate(adj: &mut [BTreeSet<usize>], v: usize) {
    let ns: Vec<usize> = adj[v].iter().copied().collect();
    for &a in &ns {
        adj[a].remove(&v);
        for &b in &ns {
            if a != b {
                adj[a].insert(b);
            }
        }
    }
    adj[v].clear();
}

/// Decomposition induced by an elimination order: node `i` holds the `i`-th
/// eliminated vertex and its neighbours at elimination time.
pub fn decomposition_from_ordering(g: &UndirectedGraph, order: &[usize]) -> TreeDecomposition {
    let n = g.n();
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut adj: Vec<BTreeSet<usize>> = (0..n)
        .map(|v| g.neighbors(v).iter().copied().collect())
        .collect();
    let mut bags = Vec::with_capacity(n);
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    for (i, &v) in order.iter().enumerate() {
        let mut bag: Vec<usize> = adj[v].iter().copied().collect();
        let parent = bag.iter().map(|&w| pos[w]).min();
        bag.push(v);
        bag.sort_unstable();
        bags.push(bag);
        match parent {
            Some(p) => edges.push((i, p)),
            None if i + 1 < n => edges.push((i, i + 1)),
            None => {}
        }
        eliminate(&mut adj, v);
    }
    TreeDecomposition { bags, edges }
}

pub fn greedy_decomposition(g: &UndirectedGraph, strategy: Strategy) -> TreeDecomposition {
    decomposition_from_ordering(g, &elimination_ordering(g, strategy))
}

/// The narrower of the min-fill and min-degree decompositions (min-fill on
/// ties).
pub fn best_greedy_decomposition(g: &UndirectedGraph) -> TreeDecomposition {
    let fill = greedy_decomposition(g, Strategy::MinFill);
    let deg = greedy_decomposition(g, Strategy::MinDegree);
    if deg.width() < fill.width() {
        deg
    } else {
        fill
    }
}

/// Exact treewidth by dynamic programming over vertex subsets: the best
/// elimination order of a set `S` ends with some `v`, costing the number of
/// vertices outside `S` reachable from `v` through `S - v`.
pub fn exact_treewidth_small(g: &UndirectedGraph) -> Result<(usize, TreeDecomposition)> {
    let n = g.n();
    if n > EXACT_TREEWIDTH_MAX_VERTICES {
        return Err(Error::TooLarge {
            what: "exact treewidth input",
            size: n,
            max: EXACT_TREEWIDTH_MAX_VERTICES,
        });
    }
    if n == 0 {
        return Ok((
            0,
            TreeDecomposition {
                bags: Vec::new(),
                edges: Vec::new(),
            },
        ));
    }
    let adj: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | (1 << w)))
        .collect();
    let full: u32 = (1u32 << n) - 1;
    let q = |set: u32, v: usize| -> u32 {
        let mut comp = 1u32 << v;
        loop {
            let mut nb = 0u32;
            let mut bits = comp;
            while bits != 0 {
                let u = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                nb |= adj[u];
            }
            let grow = nb & set & !comp;
            if grow == 0 {
                return (nb & !set & !comp).count_ones();
            }
            comp |= grow;
        }
    };
    let size = 1usize << n;
    let mut best = vec![u32::MAX; size];
    let mut last = vec![0u8; size];
    best[0] = 0;
    for set in 1..=full {
        let mut bits = set;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let rest = set & !(1 << v);
            let cost = best[rest as usize].max(q(rest, v));
            if cost < best[set as usize] {
                best[set as usize] = cost;
                last[set as usize] = v as u8;
            }
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut set = full;
    while set != 0 {
        let v = last[set as usize] as usize;
        order.push(v);
        set &= !(1 << v);
    }
    order.reverse();
    let td = decomposition_from_ordering(g, &order);
    let width = best[full as usize] as usize;
    debug_assert_eq!(td.width(), width);
    Ok((width, td))
}

/// Upper bound on treewidth: exact on components small enough for
/// [`exact_treewidth_small`], best greedy width elsewhere.
pub fn treewidth_upper_bound(g: &UndirectedGraph) -> usize {
    g.components()
        .iter()
        .map(|comp| {
            let (sub, _) = g.induced_subgraph(comp);
            if sub.n() <= EXACT_TREEWIDTH_MAX_VERTICES {
                exact_treewidth_small(&sub)
                    .map(|(w, _)| w)
                    .unwrap_or(usize::MAX)
            } else {
                best_greedy_decomposition(&sub).width()
            }
        })
        .max()
        .unwrap_or(0)
}

/// Node kinds of a nice tree decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum NiceKind {
    /// Empty bag, no children.
    Leaf,
    /// Bag equals the child's bag plus the vertex.
    Introduce(usize),
    /// Bag equals the child's bag minus the vertex.
    Forget(usize),
    /// Two children with the same bag.
    Join,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NiceNode {
    pub kind: NiceKind,
    pub bag: Vec<usize>,
    pub children: Vec<usize>,
}

/// Rooted nice decomposition. Children always precede parents in `nodes`,
/// the root is the last node and has an empty bag.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NiceTreeDecomposition {
    pub nodes: Vec<NiceNode>,
}

impl NiceTreeDecomposition {
    pub fn root(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn width(&self) -> usize {
        self.nodes
            .iter()
            .map(|n| n.bag.len())
            .max()
            .unwrap_or(1)
            .saturating_sub(1)
    }

    /// Plain decomposition view, for validation.
    pub fn to_tree_decomposition(&self) -> TreeDecomposition {
        let bags = self.nodes.iter().map(|n| n.bag.clone()).collect();
        let edges = self
            .nodes
            .iter()
            .enumerate()
            .flat_map(|(i, n)| n.children.iter().map(move |&c| (c, i)))
            .collect();
        TreeDecomposition { bags, edges }
    }

    /// Checks the local shape rules of every node kind.
    pub fn check_shape(&self) -> Result<()> {
        let bad =
            |i: usize, why: &str| Err(Error::InvalidDecomposition(format!("node {i}: {why}")));
        for (i, node) in self.nodes.iter().enumerate() {
            if node.children.iter().any(|&c| c >= i) {
                return bad(i, "child index not below parent");
            }
            match node.kind {
                NiceKind::Leaf => {
                    if !node.children.is_empty() || !node.bag.is_empty() {
                        return bad(i, "leaf must be empty and childless");
                    }
                }
                NiceKind::Introduce(v) | NiceKind::Forget(v) => {
                    if node.children.len() != 1 {
                        return bad(i, "introduce/forget needs one child");
                    }
                    let child = &self.nodes[node.children[0]].bag;
                    let (big, small) = if matches!(node.kind, NiceKind::Introduce(_)) {
                        (&node.bag, child)
                    } else {
                        (child, &node.bag)
                    };
                    let mut expect = small.clone();
                    expect.push(v);
                    expect.sort_unstable();
                    if &expect != big || small.contains(&v) {
                        return bad(i, "bag does not differ by exactly the named vertex");
                    }
                }
                NiceKind::Join => {
                    if node.children.len() != 2
                        || node.children.iter().any(|&c| self.nodes[c].bag != node.bag)
                    {
                        return bad(i, "join needs two children with equal bags");
                    }
                }
            }
        }
        if self.nodes.last().is_none_or(|n| !n.bag.is_empty()) {
            return Err(Error::InvalidDecomposition("root bag must be empty".into()));
        }
        Ok(())
    }
}

struct NiceBuilder<'a> {
    td: &'a TreeDecomposition,
    adj: Vec<Vec<usize>>,
    nodes: Vec<NiceNode>,
}

impl NiceBuilder<'_> {
    fn push(&mut self, kind: NiceKind, bag: Vec<usize>, children: Vec<usize>) -> usize {
        self.nodes.push(NiceNode {
            kind,
            bag,
            children,
        });
        self.nodes.len() - 1
    }

    fn transition(&mut self, mut idx: usize, to: &[usize]) -> usize {
        let from = self.nodes[idx].bag.clone();
        let mut bag = from.clone();
        for &v in from.iter().filter(|v| to.binary_search(v).is_err()) {
            bag.retain(|&w| w != v);
            idx = self.push(NiceKind::Forget(v), bag.clone(), vec![idx]);
        }
        for &v in to.iter().filter(|v| from.binary_search(v).is_err()) {
            let pos = bag.binary_search(&v).unwrap_err();
            bag.insert(pos, v);
            idx = self.push(NiceKind::Introduce(v), bag.clone(), vec![idx]);
        }
        idx
    }

    fn build(&mut self, t: usize, parent: Option<usize>) -> usize {
        let bag = self.td.bags[t].clone();
        let kids: Vec<usize> = self.adj[t]
            .iter()
            .copied()
            .filter(|&c| Some(c) != parent)
            .collect();
        if kids.is_empty() {
            let leaf = self.push(NiceKind::Leaf, Vec::new(), Vec::new());
            return self.transition(leaf, &bag);
        }
        let mut current: Option<usize> = None;
        for c in kids {
            let sub = self.build(c, Some(t));
            let sub = self.transition(sub, &bag);
            current = Some(match current {
                None => sub,
                Some(prev) => self.push(NiceKind::Join, bag.clone(), vec![prev, sub]),
            });
        }
        current.expect("at least one child")
    }
}

/// Converts a valid decomposition of `g` into nice form, rooted at node 0.
pub fn make_nice(td: &TreeDecomposition, g: &UndirectedGraph) -> Result<NiceTreeDecomposition> {
    td.validate(g).map_err(validation_error)?;
    let mut builder = NiceBuilder {
        td,
        adj: td.tree_adjacency(),
        nodes: Vec::new(),
    };
    if td.bags.is_empty() {
        builder.push(NiceKind::Leaf, Vec::new(), Vec::new());
    } else {
        let top = builder.build(0, None);
        builder.transition(top, &[]);
    }
    Ok(NiceTreeDecomposition {
        nodes: builder.nodes,
    })
}

/// Greedy decomposition of `g` in nice form.
pub fn nice_decomposition(g: &UndirectedGraph) -> NiceTreeDecomposition {
    let td = best_greedy_decomposition(g);
    make_nice(&td, g).expect("greedy decompositions are valid")
}
