//! Brute-force ground truth for desk-scale instances.
//!
//! Arborescences are enumerated by binary branching on frontier arcs: either
//! the arc joins the tree or it is excluded for the rest of that branch. Every
//! spanning `r`-out-branching is produced exactly once. The matrix-tree count
//! is an independent second route to the number of arborescences.

use std::collections::BTreeSet;

use crate::digraph::{Digraph, OutTree};
use crate::error::{Error, Result};

/// Default cap on enumerated arborescences.
pub const DEFAULT_ENUM_LIMIT: u64 = 5_000_000;

struct Enumerator<'a, F> {
    d: &'a Digraph,
    limit: u64,
    emitted: u64,
    in_tree: Vec<bool>,
    tree_size: usize,
    parent: Vec<Option<usize>>,
    excluded: BTreeSet<(usize, usize)>,
    visit: F,
}

impl<F: FnMut(&OutTree)> Enumerator<'_, F> {
    fn frontier_arc(&self) -> Option<(usize, usize)> {
        (0..self.d.n())
            .filter(|&v| !self.in_tree[v])
            .flat_map(|v| self.d.in_neighbors(v).iter().map(move |&u| (u, v)))
            .find(|&(u, v)| self.in_tree[u] && !self.excluded.contains(&(u, v)))
    }

    /// Every non-tree vertex still reachable from the tree without excluded arcs.
    fn completable(&self) -> bool {
        let n = self.d.n();
        let mut seen = self.in_tree.clone();
        let mut stack: Vec<usize> = (0..n).filter(|&v| self.in_tree[v]).collect();
        while let Some(u) = stack.pop() {
            for &w in self.d.out_neighbors(u) {
                if !seen[w] && !self.excluded.contains(&(u, w)) {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    fn run(&mut self, root: usize) -> Result<()> {
        if self.tree_size == self.d.n() {
            self.emitted += 1;
            if self.emitted > self.limit {
                return Err(Error::Budget {
                    what: "arborescence enumeration",
                    needed: self.emitted as u128,
                    limit: self.limit as u128,
                });
            }
            let arcs = (0..self.d.n()).filter_map(|v| self.parent[v].map(|p| (p, v)));
            let t = OutTree::from_arcs(root, arcs)?;
            (self.visit)(&t);
            return Ok(());
        }
        let Some((u, v)) = self.frontier_arc() else {
            return Ok(());
        };
        self.in_tree[v] = true;
        self.parent[v] = Some(u);
        self.tree_size += 1;
        self.run(root)?;
        self.tree_size -= 1;
        self.parent[v] = None;
        self.in_tree[v] = false;

        self.excluded.insert((u, v));
        if self.completable() {
            self.run(root)?;
        }
        self.excluded.remove(&(u, v));
        Ok(())
    }
}

/// Calls `visit` on every spanning `r`-out-branching of `d`. Returns the
/// number visited, or a budget error once more than `limit` are produced.
pub fn for_each_arborescence<F: FnMut(&OutTree)>(
    d: &Digraph,
    r: usize,
    limit: u64,
    visit: F,
) -> Result<u64> {
    if r >= d.n() {
        return Err(Error::Precondition(format!("root {r} is not a vertex")));
    }
    let mut e = Enumerator {
        d,
        limit,
        emitted: 0,
        in_tree: vec![false; d.n()],
        tree_size: 1,
        parent: vec![None; d.n()],
        excluded: BTreeSet::new(),
        visit,
    };
    e.in_tree[r] = true;
    if !d.all_reachable_from(r) {
        return Ok(0);
    }
    e.run(r)?;
    Ok(e.emitted)
}

/// All spanning `r`-out-branchings, in enumeration order.
pub fn enum_arborescences(d: &Digraph, r: usize, limit: u64) -> Result<Vec<OutTree>> {
    let mut all = Vec::new();
    for_each_arborescence(d, r, limit, |t| all.push(t.clone()))?;
    Ok(all)
}

/// Number of spanning `r`-out-branchings by the directed matrix-tree theorem:
/// the determinant of the in-degree Laplacian with row and column `r`
/// removed.
pub fn count_arborescences_matrix_tree(d: &Digraph, r: usize) -> Result<u128> {
    let n = d.n();
    if r >= n {
        return Err(Error::Precondition(format!("root {r} is not a vertex")));
    }
    let idx: Vec<usize> = (0..n).filter(|&v| v != r).collect();
    let size = idx.len();
    let mut m = vec![vec![0i128; size]; size];
    for (i, &v) in idx.iter().enumerate() {
        m[i][i] = d.in_degree(v) as i128;
        for (j, &u) in idx.iter().enumerate() {
            if d.has_arc(u, v) {
                m[j][i] -= 1;
            }
        }
    }
    let det = bareiss_determinant(m);
    u128::try_from(det).map_err(|_| Error::Internal(format!("negative arborescence count {det}")))
}

/// Fraction-free Gaussian elimination.
fn bareiss_determinant(mut m: Vec<Vec<i128>>) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            let Some(swap) = (k + 1..n).find(|&i| m[i][k] != 0) else {
                return 0;
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

/// Maximum leaf count over spanning `r`-out-branchings, with a witness.
pub fn brute_max_leaves(d: &Digraph, r: usize) -> Result<Option<(usize, OutTree)>> {
    brute_best(d, r, OutTree::leaf_count)
}

/// Maximum internal-vertex count over spanning `r`-out-branchings.
pub fn brute_max_internal(d: &Digraph, r: usize) -> Result<Option<(usize, OutTree)>> {
    brute_best(d, r, OutTree::internal_count)
}

fn brute_best(
    d: &Digraph,
    r: usize,
    score: fn(&OutTree) -> usize,
) -> Result<Option<(usize, OutTree)>> {
    let mut best: Option<(usize, OutTree)> = None;
    for_each_arborescence(d, r, DEFAULT_ENUM_LIMIT, |t| {
        let s = score(t);
        if best.as_ref().is_none_or(|(b, _)| s > *b) {
            best = Some((s, t.clone()));
        }
    })?;
    Ok(best)
}

/// Largest number of internal vertices of an `r`-out-tree with at most
/// `size_cap` vertices, by enumerating vertex subsets containing `r` and the
/// arborescences of each induced subdigraph. Returns `(internal, size)` with
/// the smallest size among optimal trees.
pub fn brute_max_internal_outtree(
    d: &Digraph,
    r: usize,
    size_cap: usize,
) -> Result<(usize, usize, OutTree)> {
    let n = d.n();
    if r >= n {
        return Err(Error::Precondition(format!("root {r} is not a vertex")));
    }
    if n > 20 {
        return Err(Error::TooLarge {
            what: "subset enumeration",
            size: n,
            max: 20,
        });
    }
    let mut best = (0usize, 1usize, OutTree::singleton(r));
    let others: Vec<usize> = (0..n).filter(|&v| v != r).collect();
    for mask in 0u32..(1u32 << others.len()) {
        let count = mask.count_ones() as usize + 1;
        if count > size_cap {
            continue;
        }
        let mut verts = vec![r];
        verts.extend(
            others
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &v)| v),
        );
        let (sub, map) = d.induced_subgraph(&verts);
        let sub_root = map.binary_search(&r).expect("root kept");
        for_each_arborescence(&sub, sub_root, DEFAULT_ENUM_LIMIT, |t| {
            let internal = t.internal_count();
            if internal > best.0 || (internal == best.0 && t.len() < best.1) {
                best = (internal, t.len(), t.map_vertices(|v| map[v]));
            }
        })?;
    }
    Ok(best)
}

/// Longest directed simple path (arc count) by exhaustive DFS.
pub fn brute_longest_path(d: &Digraph) -> Result<(usize, Vec<usize>)> {
    const MAX: usize = 16;
    if d.n() > MAX {
        return Err(Error::TooLarge {
            what: "exhaustive path search",
            size: d.n(),
            max: MAX,
        });
    }
    fn dfs(
        d: &Digraph,
        v: usize,
        on: &mut Vec<bool>,
        path: &mut Vec<usize>,
        best: &mut Vec<usize>,
    ) {
        if path.len() > best.len() {
            *best = path.clone();
        }
        for &w in d.out_neighbors(v) {
            if !on[w] {
                on[w] = true;
                path.push(w);
                dfs(d, w, on, path, best);
                path.pop();
                on[w] = false;
            }
        }
    }
    let mut best: Vec<usize> = Vec::new();
    for s in 0..d.n() {
        let mut on = vec![false; d.n()];
        on[s] = true;
        let mut path = vec![s];
        dfs(d, s, &mut on, &mut path, &mut best);
    }
    Ok((best.len().saturating_sub(1), best))
}
