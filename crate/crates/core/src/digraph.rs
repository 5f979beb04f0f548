//! Digraphs, their underlying undirected graphs, out-trees, and the plain-text
//! instance format.
//!
//! Vertices are dense indices `0..n`. Every vertex carries the sorted list of
//! *origin* vertices it stands for: a freshly built digraph has `origins(v) ==
//! [v]`, and the contraction operations union the origin lists of the merged
//! endpoints. Pipelines use these records to map witnesses and vertex sets back
//! to the digraph they started from.
//!
//! A single-vertex out-tree has one leaf (its root has out-degree zero). This
//! matters for `k = 1` edge cases in every solver.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A simple digraph: no self-loops, no parallel arcs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    out: Vec<Vec<usize>>,
    inc: Vec<Vec<usize>>,
    origins: Vec<Vec<usize>>,
    arc_count: usize,
}

impl Digraph {
    /// Edgeless digraph on `n` vertices.
    pub fn new(n: usize) -> Self {
        Digraph {
            out: vec![Vec::new(); n],
            inc: vec![Vec::new(); n],
            origins: (0..n).map(|v| vec![v]).collect(),
            arc_count: 0,
        }
    }

    /// Builds a digraph from an arc list. Duplicates collapse; self-loops and
    /// out-of-range endpoints are rejected.
    pub fn from_arcs<I>(n: usize, arcs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut d = Digraph::new(n);
        for (u, v) in arcs {
            if u >= n || v >= n {
                return Err(Error::Precondition(format!(
                    "arc ({u},{v}) has an endpoint outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::Precondition(format!("self-loop at vertex {u}")));
            }
            d.insert_arc(u, v);
        }
        Ok(d)
    }

    fn insert_arc(&mut self, u: usize, v: usize) -> bool {
        match self.out[u].binary_search(&v) {
            Ok(_) => false,
            Err(pos) => {
                self.out[u].insert(pos, v);
                let ipos = self.inc[v].binary_search(&u).unwrap_err();
                self.inc[v].insert(ipos, u);
                self.arc_count += 1;
                true
            }
        }
    }

    /// Adds arc `(u,v)`; returns whether it was new.
    pub fn add_arc(&mut self, u: usize, v: usize) -> Result<bool> {
        let n = self.n();
        if u >= n || v >= n {
            return Err(Error::Precondition(format!(
                "arc ({u},{v}) has an endpoint outside 0..{n}"
            )));
        }
        if u == v {
            return Err(Error::Precondition(format!("self-loop at vertex {u}")));
        }
        Ok(self.insert_arc(u, v))
    }

    pub fn n(&self) -> usize {
        self.out.len()
    }

    pub fn m(&self) -> usize {
        self.arc_count
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.out[u].binary_search(&v).is_ok()
    }

    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        &self.inc[v]
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.inc[v].len()
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out[v].len()
    }

    /// All arcs in lexicographic order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(u, outs)| outs.iter().map(move |&v| (u, v)))
    }

    /// Original vertices merged into `v`.
    pub fn origins(&self, v: usize) -> &[usize] {
        &self.origins[v]
    }

    /// The live vertex whose origin list contains `original`, if any.
    pub fn vertex_with_origin(&self, original: usize) -> Option<usize> {
        self.origins
            .iter()
            .position(|o| o.binary_search(&original).is_ok())
    }

    /// Same digraph with origin records reset to the identity.
    pub fn rebased(&self) -> Self {
        let mut d = self.clone();
        d.origins = (0..d.n()).map(|v| vec![v]).collect();
        d
    }

    /// Contraction of the arc `(u,v)`: the merged vertex takes the in-arcs and
    /// out-arcs of both endpoints, loops and duplicates are dropped.
    ///
    /// The merged vertex is stored at index `u` (shifted down by one when
    /// `u > v`); every vertex above `v` shifts down by one.
    pub fn contract_arc_directed(&self, u: usize, v: usize) -> Result<Digraph> {
        if !self.has_arc(u, v) {
            return Err(Error::Precondition(format!(
                "cannot contract ({u},{v}): arc absent"
            )));
        }
        Ok(self.merge_vertices(u, v))
    }

    /// Identifies the endpoints of arc `(u,v)` into one vertex `uv` and removes
    /// loops and duplicate arcs. Index placement matches
    /// [`Digraph::contract_arc_directed`].
    pub fn identify_arc_endpoints(&self, u: usize, v: usize) -> Result<Digraph> {
        if !self.has_arc(u, v) {
            return Err(Error::Precondition(format!(
                "cannot identify endpoints of ({u},{v}): arc absent"
            )));
        }
        Ok(self.merge_vertices(u, v))
    }

    /// Index that vertex `w` of `self` receives after merging `keep` and
    /// `drop` (`w == drop` maps to the merged vertex).
    pub fn index_after_merge(keep: usize, drop: usize, w: usize) -> usize {
        let w = if w == drop { keep } else { w };
        if w > drop {
            w - 1
        } else {
            w
        }
    }

    fn merge_vertices(&self, keep: usize, drop: usize) -> Digraph {
        let n = self.n();
        let map = |w: usize| Digraph::index_after_merge(keep, drop, w);
        let mut d = Digraph::new(n - 1);
        for w in 0..n {
            if w == drop {
                continue;
            }
            let mut o = self.origins[w].clone();
            if w == keep {
                o.extend_from_slice(&self.origins[drop]);
                o.sort_unstable();
            }
            d.origins[map(w)] = o;
        }
        for (a, b) in self.arcs() {
            let (a, b) = (map(a), map(b));
            if a != b {
                d.insert_arc(a, b);
            }
        }
        d
    }

    /// Subdigraph induced by `vertices` (any order, duplicates ignored).
    /// Vertex `i` of the result is the `i`-th smallest listed vertex; origin
    /// records are carried over.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> (Digraph, Vec<usize>) {
        let mut keep: Vec<usize> = vertices.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let mut d = Digraph::new(keep.len());
        for (i, &v) in keep.iter().enumerate() {
            d.origins[i] = self.origins[v].clone();
            for &w in &self.out[v] {
                if index[w] != usize::MAX {
                    d.insert_arc(i, index[w]);
                }
            }
        }
        (d, keep)
    }

    /// Digraph with `removed` vertices deleted; see [`Digraph::induced_subgraph`].
    pub fn remove_vertices(&self, removed: &BTreeSet<usize>) -> (Digraph, Vec<usize>) {
        let keep: Vec<usize> = (0..self.n()).filter(|v| !removed.contains(v)).collect();
        self.induced_subgraph(&keep)
    }

    /// The underlying undirected graph: `{u,v}` is an edge iff `(u,v)` or
    /// `(v,u)` is an arc.
    pub fn underlying_graph(&self) -> UndirectedGraph {
        let mut g = UndirectedGraph::new(self.n());
        for (u, v) in self.arcs() {
            g.insert_edge(u, v);
        }
        g
    }

    /// Vertices reachable from `r` along arcs.
    pub fn reachable_from(&self, r: usize) -> Vec<bool> {
        let mut seen = vec![false; self.n()];
        let mut queue = VecDeque::from([r]);
        seen[r] = true;
        while let Some(u) = queue.pop_front() {
            for &w in &self.out[u] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    /// True when every vertex is reachable from `r`.
    pub fn all_reachable_from(&self, r: usize) -> bool {
        r < self.n() && self.reachable_from(r).into_iter().all(|b| b)
    }
}

/// Instance file content: a digraph and an optional root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedInstance {
    pub digraph: Digraph,
    pub root: Option<usize>,
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

/// Parses the instance format: a header `n m`, then `m` lines `u v` (arc
/// `u -> v`, 0-based), then an optional `root r` line. `#` starts a comment.
pub fn parse_instance(text: &str) -> Result<ParsedInstance> {
    let mut header: Option<(usize, usize)> = None;
    let mut arcs_seen = 0usize;
    let mut digraph = Digraph::new(0);
    let mut root = None;
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let Some((n, m)) = header else {
            if fields.len() != 2 {
                return Err(perr(line_no, "expected header \"n m\""));
            }
            let n = fields[0]
                .parse::<usize>()
                .map_err(|_| perr(line_no, format!("bad vertex count {:?}", fields[0])))?;
            let m = fields[1]
                .parse::<usize>()
                .map_err(|_| perr(line_no, format!("bad arc count {:?}", fields[1])))?;
            header = Some((n, m));
            digraph = Digraph::new(n);
            continue;
        };
        if fields[0] == "root" {
            if fields.len() != 2 {
                return Err(perr(line_no, "expected \"root r\""));
            }
            if root.is_some() {
                return Err(perr(line_no, "duplicate root line"));
            }
            let r = fields[1]
                .parse::<usize>()
                .map_err(|_| perr(line_no, format!("bad root {:?}", fields[1])))?;
            if r >= n {
                return Err(perr(line_no, format!("root {r} out of range 0..{n}")));
            }
            root = Some(r);
            continue;
        }
        if root.is_some() {
            return Err(perr(line_no, "arc line after root line"));
        }
        if fields.len() != 2 {
            return Err(perr(line_no, "expected arc \"u v\""));
        }
        let parse_v = |s: &str| -> Result<usize> {
            let v = s
                .parse::<usize>()
                .map_err(|_| perr(line_no, format!("bad vertex {s:?}")))?;
            if v >= n {
                return Err(perr(line_no, format!("vertex {v} out of range 0..{n}")));
            }
            Ok(v)
        };
        let u = parse_v(fields[0])?;
        let v = parse_v(fields[1])?;
        if u == v {
            return Err(perr(line_no, "self-loop"));
        }
        arcs_seen += 1;
        if arcs_seen > m {
            return Err(perr(line_no, format!("more than the declared {m} arcs")));
        }
        digraph.insert_arc(u, v);
    }
    let Some((_, m)) = header else {
        return Err(perr(last_line.max(1), "missing header"));
    };
    if arcs_seen != m {
        return Err(perr(
            last_line.max(1),
            format!("declared {m} arcs, found {arcs_seen}"),
        ));
    }
    Ok(ParsedInstance { digraph, root })
}

/// Parses an instance and drops the root line.
pub fn parse_digraph(text: &str) -> Result<Digraph> {
    parse_instance(text).map(|p| p.digraph)
}

/// Serializes with arcs in sorted order, so equal digraphs print identically.
pub fn serialize_instance(d: &Digraph, root: Option<usize>) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{} {}", d.n(), d.m());
    for (u, v) in d.arcs() {
        let _ = writeln!(s, "{u} {v}");
    }
    if let Some(r) = root {
        let _ = writeln!(s, "root {r}");
    }
    s
}

/// A simple undirected graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UndirectedGraph {
    adj: Vec<Vec<usize>>,
    edge_count: usize,
}

impl UndirectedGraph {
    pub fn new(n: usize) -> Self {
        UndirectedGraph {
            adj: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = UndirectedGraph::new(n);
        for (u, v) in edges {
            if u >= n || v >= n || u == v {
                return Err(Error::Precondition(format!("invalid edge {{{u},{v}}}")));
            }
            g.insert_edge(u, v);
        }
        Ok(g)
    }

    pub(crate) fn insert_edge(&mut self, u: usize, v: usize) -> bool {
        match self.adj[u].binary_search(&v) {
            Ok(_) => false,
            Err(pos) => {
                self.adj[u].insert(pos, v);
                let p2 = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(p2, u);
                self.edge_count += 1;
                true
            }
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(min, max)` pairs in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Subgraph induced by `vertices`, relabelled by sorted position.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> (UndirectedGraph, Vec<usize>) {
        let mut keep = vertices.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let mut g = UndirectedGraph::new(keep.len());
        for (i, &v) in keep.iter().enumerate() {
            for &w in &self.adj[v] {
                if index[w] != usize::MAX && index[w] > i {
                    g.insert_edge(i, index[w]);
                }
            }
        }
        (g, keep)
    }

    /// Unweighted distances from `source`; `None` for unreachable vertices.
    pub fn distances_from(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap_or(0);
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n()];
        let mut comps = Vec::new();
        for s in 0..self.n() {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }
}

/// BFS layering from a source.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BfsLayers {
    /// `layers[i]` holds the vertices at distance exactly `i`, sorted.
    pub layers: Vec<Vec<usize>>,
    /// Vertices with no path to the source, sorted.
    pub unreachable: Vec<usize>,
}

impl BfsLayers {
    /// Index of the deepest layer (`t` in `L_0..L_t`).
    pub fn depth(&self) -> usize {
        self.layers.len().saturating_sub(1)
    }
}

pub fn bfs_layers(g: &UndirectedGraph, r: usize) -> BfsLayers {
    let dist = g.distances_from(r);
    let depth = dist.iter().flatten().copied().max().unwrap_or(0);
    let mut layers = vec![Vec::new(); depth + 1];
    let mut unreachable = Vec::new();
    for (v, d) in dist.iter().enumerate() {
        match d {
            Some(d) => layers[*d].push(v),
            None => unreachable.push(v),
        }
    }
    BfsLayers {
        layers,
        unreachable,
    }
}

/// A digraph together with a root and a parameter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedInstance {
    pub digraph: Digraph,
    pub root: usize,
    pub k: usize,
}

impl RootedInstance {
    pub fn new(digraph: Digraph, root: usize, k: usize) -> Result<Self> {
        if root >= digraph.n() {
            return Err(Error::Precondition(format!(
                "root {root} is not a vertex of a digraph on {} vertices",
                digraph.n()
            )));
        }
        if k == 0 {
            return Err(Error::Precondition("k must be at least 1".into()));
        }
        Ok(RootedInstance { digraph, root, k })
    }

    /// Whether every vertex is reachable from the root.
    pub fn is_connected(&self) -> bool {
        self.digraph.all_reachable_from(self.root)
    }
}

/// An out-tree stored as a child -> parent map. An out-branching is an
/// out-tree that spans its host digraph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutTree {
    pub root: usize,
    pub parent: BTreeMap<usize, usize>,
}

/// Spanning out-tree.
pub type OutBranching = OutTree;

impl OutTree {
    /// The single-vertex tree `{root}`.
    pub fn singleton(root: usize) -> Self {
        OutTree {
            root,
            parent: BTreeMap::new(),
        }
    }

    /// Builds from `(parent, child)` arcs; fails if a child gets two parents
    /// or the root gets one. Structural validity is checked by
    /// [`OutTree::validate`].
    pub fn from_arcs<I>(root: usize, arcs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut parent = BTreeMap::new();
        for (p, c) in arcs {
            if c == root {
                return Err(Error::Precondition(format!("root {root} given parent {p}")));
            }
            if parent.insert(c, p).is_some() {
                return Err(Error::Precondition(format!("vertex {c} has two parents")));
            }
        }
        Ok(OutTree { root, parent })
    }

    pub fn vertices(&self) -> BTreeSet<usize> {
        let mut s: BTreeSet<usize> = self.parent.keys().copied().collect();
        s.insert(self.root);
        s
    }

    pub fn len(&self) -> usize {
        self.parent.len() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, v: usize) -> bool {
        v == self.root || self.parent.contains_key(&v)
    }

    /// Tree arcs `(parent, child)`, sorted by child.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parent.iter().map(|(&c, &p)| (p, c))
    }

    pub fn children(&self) -> BTreeMap<usize, Vec<usize>> {
        let mut ch: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in self.vertices() {
            ch.entry(v).or_default();
        }
        for (&c, &p) in &self.parent {
            ch.entry(p).or_default().push(c);
        }
        ch
    }

    /// Vertices with no child.
    pub fn leaves(&self) -> BTreeSet<usize> {
        let parents: BTreeSet<usize> = self.parent.values().copied().collect();
        self.vertices()
            .into_iter()
            .filter(|v| !parents.contains(v))
            .collect()
    }

    /// Vertices with at least one child.
    pub fn internal(&self) -> BTreeSet<usize> {
        self.parent.values().copied().collect()
    }

    pub fn leaf_count(&self) -> usize {
        self.leaves().len()
    }

    pub fn internal_count(&self) -> usize {
        self.internal().len()
    }

    /// Checks every tree invariant against the host digraph: arcs exist, the
    /// root has no parent, and every vertex reaches the root by parent links.
    pub fn validate(&self, d: &Digraph) -> Result<()> {
        if self.root >= d.n() {
            return Err(Error::Precondition(format!(
                "root {} not in digraph",
                self.root
            )));
        }
        if self.parent.contains_key(&self.root) {
            return Err(Error::Precondition("root has a parent".into()));
        }
        for (&c, &p) in &self.parent {
            if !d.has_arc(p, c) {
                return Err(Error::Precondition(format!(
                    "tree arc ({p},{c}) not in digraph"
                )));
            }
            if !self.contains(p) {
                return Err(Error::Precondition(format!(
                    "parent {p} of {c} not in tree"
                )));
            }
        }
        for &start in self.parent.keys() {
            let mut v = start;
            let mut steps = 0;
            while v != self.root {
                v = self.parent[&v];
                steps += 1;
                if steps > self.parent.len() {
                    return Err(Error::Precondition(format!("cycle through vertex {start}")));
                }
            }
        }
        Ok(())
    }

    /// Whether the tree covers all `n` vertices.
    pub fn is_spanning(&self, n: usize) -> bool {
        self.len() == n && self.vertices().iter().all(|&v| v < n)
    }

    /// Validates as an out-branching of `d`.
    pub fn validate_branching(&self, d: &Digraph) -> Result<()> {
        self.validate(d)?;
        if !self.is_spanning(d.n()) {
            return Err(Error::Precondition(format!(
                "out-tree has {} of {} vertices",
                self.len(),
                d.n()
            )));
        }
        Ok(())
    }

    /// Extends the tree to a spanning out-branching by breadth-first search:
    /// each uncovered vertex is attached below a covered in-neighbour. Existing
    /// arcs are kept, so no internal vertex becomes a leaf.
    pub fn grow_to_spanning(&self, d: &Digraph) -> Result<OutTree> {
        let mut grown = self.clone();
        let mut covered = vec![false; d.n()];
        let mut queue = VecDeque::new();
        for v in self.vertices() {
            if v >= d.n() {
                return Err(Error::Precondition(format!(
                    "tree vertex {v} not in digraph"
                )));
            }
            covered[v] = true;
            queue.push_back(v);
        }
        while let Some(u) = queue.pop_front() {
            for &w in d.out_neighbors(u) {
                if !covered[w] {
                    covered[w] = true;
                    grown.parent.insert(w, u);
                    queue.push_back(w);
                }
            }
        }
        if let Some(v) = covered.iter().position(|c| !c) {
            return Err(Error::Precondition(format!(
                "vertex {v} is not reachable from the tree"
            )));
        }
        Ok(grown)
    }

    /// Breadth-first `r`-out-branching.
    pub fn bfs_branching(d: &Digraph, r: usize) -> Result<OutTree> {
        OutTree::singleton(r).grow_to_spanning(d)
    }

    /// Relabels every vertex through `map`.
    pub fn map_vertices(&self, map: impl Fn(usize) -> usize) -> OutTree {
        OutTree {
            root: map(self.root),
            parent: self
                .parent
                .iter()
                .map(|(&c, &p)| (map(c), map(p)))
                .collect(),
        }
    }
}
