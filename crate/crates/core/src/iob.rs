//! k-Internal Out-Branching by layering.
//!
//! An `r`-out-branching with `k` internal vertices exists iff some `r`-out-tree
//! with `k` internal vertices has at most `2k-1` vertices (at most 2 when
//! `k = 1`). BFS layers of the underlying graph are grouped into `⌈√k⌉+1`
//! widely spaced parts; such a small tree meets some part `P_a` in at most
//! `⌈2√k⌉` vertices `Z`, so it survives in `D[V \ P_a ∪ Z]`. Each of those
//! sub-instances is solved by dynamic programming over a tree decomposition,
//! and a found tree is grown back into a spanning branching.

use std::collections::BTreeSet;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::digraph::{bfs_layers, Digraph, OutBranching, OutTree, UndirectedGraph};
use crate::dp::dp_max_internal_outtree;
use crate::error::{Error, Result};
use crate::treewidth::{best_greedy_decomposition, make_nice};

pub fn ceil_sqrt(x: usize) -> usize {
    let s = x.isqrt();
    if s * s == x {
        s
    } else {
        s + 1
    }
}

/// Largest vertex count a minimal out-tree with `k` internal vertices can have.
pub fn minimal_tree_size(k: usize) -> usize {
    (2 * k).saturating_sub(1).max(2)
}

/// Most vertices a kernel may return for parameter `k`.
pub fn kernel_size_bound(k: usize) -> usize {
    8 * k * k + 6 * k
}

/// A vertex-deleting kernel: returns the vertices to keep and the new
/// parameter. Implementations must preserve the answer.
pub trait Kernel {
    fn name(&self) -> &str;

    fn reduce(&self, d: &Digraph, k: usize) -> Result<(Vec<usize>, usize)>;

    /// Whether the output must respect [`kernel_size_bound`].
    fn bounded(&self) -> bool {
        true
    }
}

/// Identity kernel; exempt from the size bound.
#[derive(Debug, Clone, Copy, Default)]
pub struct Passthrough;

impl Kernel for Passthrough {
    fn name(&self) -> &str {
        "passthrough"
    }

    fn reduce(&self, d: &Digraph, k: usize) -> Result<(Vec<usize>, usize)> {
        Ok(((0..d.n()).collect(), k))
    }

    fn bounded(&self) -> bool {
        false
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelOutput {
    /// Induced subdigraph on the kept vertices; origins point into the input.
    pub digraph: Digraph,
    pub k: usize,
}

/// Runs `kernel` and checks its contract: vertex-deleting, `k' <= k`, and at
/// most `8k^2 + 6k` vertices for bounded kernels.
pub fn kernel_stage(kernel: &dyn Kernel, d: &Digraph, k: usize) -> Result<KernelOutput> {
    let (keep, k2) = kernel.reduce(d, k)?;
    let name = kernel.name();
    if keep.windows(2).any(|w| w[0] >= w[1]) || keep.last().is_some_and(|&v| v >= d.n()) {
        return Err(Error::KernelContract(format!(
            "{name}: kept vertices must be distinct, sorted and in range"
        )));
    }
    if k2 > k {
        return Err(Error::KernelContract(format!(
            "{name}: parameter grew from {k} to {k2}"
        )));
    }
    if kernel.bounded() && keep.len() > kernel_size_bound(k) {
        return Err(Error::KernelContract(format!(
            "{name}: {} vertices exceed the bound {}",
            keep.len(),
            kernel_size_bound(k)
        )));
    }
    let (digraph, _) = d.rebased().induced_subgraph(&keep);
    Ok(KernelOutput { digraph, k: k2 })
}

/// BFS layers grouped into parts `P_q = ∪_i L_{q + i·spacing}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayerPartition {
    pub layers: Vec<Vec<usize>>,
    pub parts: Vec<Vec<usize>>,
    pub spacing: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Partitioning {
    /// Depth at most `⌈√k⌉`: the whole digraph is the only sub-instance.
    SingleInstance,
    Layered(LayerPartition),
}

/// Layers `g` from `r`. Every vertex must be reachable.
pub fn build_partitions(g: &UndirectedGraph, r: usize, k: usize) -> Result<Partitioning> {
    if r >= g.n() {
        return Err(Error::Precondition(format!("root {r} is not a vertex")));
    }
    let bfs = bfs_layers(g, r);
    if !bfs.unreachable.is_empty() {
        return Err(Error::Precondition(format!(
            "{} vertices unreachable from {r}",
            bfs.unreachable.len()
        )));
    }
    let s = ceil_sqrt(k);
    if bfs.depth() <= s {
        return Ok(Partitioning::SingleInstance);
    }
    let spacing = s + 1;
    let mut parts = vec![Vec::new(); spacing];
    for (i, layer) in bfs.layers.iter().enumerate() {
        parts[i % spacing].extend(layer.iter().copied());
    }
    for p in &mut parts {
        p.sort_unstable();
    }
    Ok(Partitioning::Layered(LayerPartition {
        layers: bfs.layers,
        parts,
        spacing,
    }))
}

/// One member of the collection: `D[V \ P_a ∪ Z]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubInstance {
    pub digraph: Digraph,
    /// `vertices[i]` is the vertex of the parent digraph behind local vertex `i`.
    pub vertices: Vec<usize>,
    pub root: usize,
    pub k: usize,
    /// `(a, Z)`, or `None` for the single-instance case.
    pub provenance: Option<(usize, Vec<usize>)>,
}

fn binomial(n: usize, j: usize) -> u128 {
    if j > n {
        return 0;
    }
    let j = j.min(n - j);
    let mut acc: u128 = 1;
    for i in 0..j {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Lazily generated collection for one root.
#[derive(Debug, Clone)]
pub struct Collection<'a> {
    digraph: &'a Digraph,
    root: usize,
    k: usize,
    pub partitioning: Partitioning,
    /// `⌈2√k⌉`.
    pub subset_bound: usize,
    /// Closed-form number of sub-instances.
    pub count: u128,
}

impl<'a> Collection<'a> {
    /// Number of `Z` choices for part `p` under bound `b` (roots forced in).
    fn choices(part: &[usize], root: usize, b: usize) -> u128 {
        if part.contains(&root) {
            (0..b).map(|j| binomial(part.len() - 1, j)).sum()
        } else {
            (0..=b).map(|j| binomial(part.len(), j)).sum()
        }
    }

    fn make(&self, provenance: Option<(usize, Vec<usize>)>) -> SubInstance {
        let keep: Vec<usize> = match (&provenance, &self.partitioning) {
            (Some((a, z)), Partitioning::Layered(p)) => {
                let drop: BTreeSet<usize> = p.parts[*a].iter().copied().collect();
                let z: BTreeSet<usize> = z.iter().copied().collect();
                (0..self.digraph.n())
                    .filter(|v| !drop.contains(v) || z.contains(v))
                    .collect()
            }
            _ => (0..self.digraph.n()).collect(),
        };
        let (digraph, vertices) = self.digraph.induced_subgraph(&keep);
        let root = vertices.binary_search(&self.root).expect("root kept");
        SubInstance {
            digraph,
            vertices,
            root,
            k: self.k,
            provenance,
        }
    }

    /// Sub-instances in `(a, |Z|, Z)` lexicographic order.
    pub fn iter(&self) -> Box<dyn Iterator<Item = SubInstance> + '_> {
        match &self.partitioning {
            Partitioning::SingleInstance => Box::new(std::iter::once(self.make(None))),
            Partitioning::Layered(p) => {
                let b = self.subset_bound;
                let root = self.root;
                Box::new(p.parts.iter().enumerate().flat_map(move |(a, part)| {
                    let has_root = part.contains(&root);
                    let others: Vec<usize> = part.iter().copied().filter(|&v| v != root).collect();
                    let sizes = if has_root { 0..b } else { 0..b + 1 };
                    sizes.flat_map(move |j| {
                        others
                            .clone()
                            .into_iter()
                            .combinations(j)
                            .map(move |mut z| {
                                if has_root {
                                    z.push(root);
                                    z.sort_unstable();
                                }
                                self.make(Some((a, z)))
                            })
                    })
                }))
            }
        }
    }
}

/// Builds the collection for root `r`, failing if it would exceed `budget`
/// sub-instances.
pub fn generate_collection(
    d: &Digraph,
    k: usize,
    r: usize,
    budget: u128,
) -> Result<Collection<'_>> {
    if k == 0 {
        return Err(Error::Precondition("k must be at least 1".into()));
    }
    let partitioning = build_partitions(&d.underlying_graph(), r, k)?;
    let subset_bound = ceil_sqrt(4 * k);
    let count = match &partitioning {
        Partitioning::SingleInstance => 1,
        Partitioning::Layered(p) => p
            .parts
            .iter()
            .map(|part| Collection::choices(part, r, subset_bound))
            .sum(),
    };
    if count > budget {
        return Err(Error::Budget {
            what: "sub-instances",
            needed: count,
            limit: budget,
        });
    }
    Ok(Collection {
        digraph: d,
        root: r,
        k,
        partitioning,
        subset_bound,
        count,
    })
}

/// Grows an `r`-out-tree into a spanning `r`-out-branching that keeps every
/// arc of the tree, so no internal vertex is lost.
pub fn expand_minimal_tree(d: &Digraph, r: usize, t: &OutTree) -> Result<OutBranching> {
    if t.root != r {
        return Err(Error::Precondition(format!(
            "tree is rooted at {}, not {r}",
            t.root
        )));
    }
    t.validate(d)?;
    t.grow_to_spanning(d)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IobOptions {
    /// Cap on sub-instances per root.
    pub budget: u128,
    /// Sub-instances whose decomposition is wider fail with a budget error.
    pub max_width: usize,
}

impl Default for IobOptions {
    fn default() -> Self {
        IobOptions {
            budget: 1_000_000,
            max_width: 14,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IobStats {
    pub kernel: String,
    pub kernel_n: usize,
    pub k_effective: usize,
    pub roots_tried: usize,
    /// Sum of closed-form collection sizes over the roots tried.
    pub collection_size: u128,
    pub instances_solved: u64,
    pub max_width: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IobSolution {
    pub answer: bool,
    pub root: Option<usize>,
    pub witness: Option<OutBranching>,
    /// `(a, Z)` of the sub-instance that produced the witness, in input ids.
    pub provenance: Option<(usize, Vec<usize>)>,
    pub stats: IobStats,
}

/// Decides whether `d` has an out-branching with at least `k` internal
/// vertices, rooted at `root` when given, else at any vertex (ascending, first
/// yes wins). Sub-instances are visited in a fixed order, so results are
/// reproducible.
pub fn solve_iob(
    d: &Digraph,
    k: usize,
    root: Option<usize>,
    kernel: &dyn Kernel,
    opts: &IobOptions,
) -> Result<IobSolution> {
    if k == 0 {
        return Err(Error::Precondition("k must be at least 1".into()));
    }
    if let Some(r) = root {
        if r >= d.n() {
            return Err(Error::Precondition(format!("root {r} is not a vertex")));
        }
    }
    let kern = kernel_stage(kernel, d, k)?;
    let kd = &kern.digraph;
    let k2 = kern.k;
    let mut stats = IobStats {
        kernel: kernel.name().to_string(),
        kernel_n: kd.n(),
        k_effective: k2,
        ..IobStats::default()
    };
    let roots: Vec<usize> = match root {
        Some(r) => kd.vertex_with_origin(r).into_iter().collect(),
        None => (0..kd.n()).collect(),
    };
    let cap = minimal_tree_size(k2);
    for kr in roots {
        let r = kd.origins(kr)[0];
        stats.roots_tried += 1;
        if !d.all_reachable_from(r) || !kd.all_reachable_from(kr) {
            continue;
        }
        let coll = generate_collection(kd, k2, kr, opts.budget)?;
        stats.collection_size += coll.count;
        for sub in coll.iter() {
            stats.instances_solved += 1;
            let g = sub.digraph.underlying_graph();
            let td = best_greedy_decomposition(&g);
            stats.max_width = stats.max_width.max(td.width());
            if td.width() > opts.max_width {
                return Err(Error::Budget {
                    what: "decomposition width",
                    needed: td.width() as u128,
                    limit: opts.max_width as u128,
                });
            }
            let nice = make_nice(&td, &g)?;
            let best = dp_max_internal_outtree(&sub.digraph, sub.root, &nice, cap)?;
            if best.internal < k2 {
                continue;
            }
            let to_input = |v: usize| kd.origins(sub.vertices[v])[0];
            let tree = best.tree.map_vertices(to_input);
            let witness = expand_minimal_tree(d, r, &tree)?;
            witness.validate_branching(d)?;
            debug_assert!(witness.internal_count() >= k2);
            let provenance = sub.provenance.map(|(a, z)| {
                let z = z.into_iter().map(|v| kd.origins(v)[0]).collect();
                (a, z)
            });
            return Ok(IobSolution {
                answer: true,
                root: Some(r),
                witness: Some(witness),
                provenance,
                stats,
            });
        }
    }
    Ok(IobSolution {
        answer: false,
        root: None,
        witness: None,
        provenance: None,
        stats,
    })
}
