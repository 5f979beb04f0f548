//! Rooted reachability and cut analysis.
//!
//! A *cut vertex* here is rooted: a vertex `x != r` whose removal leaves some
//! vertex unreachable from `r`. It is not an undirected articulation point.
//! Detection is by single-vertex-removal reachability, `O(n (n + m))`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::digraph::Digraph;
use crate::error::{Error, Result};

/// Vertices reachable from `r` by directed paths avoiding the removed vertices
/// and arcs.
pub fn reachable(
    d: &Digraph,
    r: usize,
    removed_vertices: &BTreeSet<usize>,
    removed_arcs: &BTreeSet<(usize, usize)>,
) -> Result<BTreeSet<usize>> {
    if r >= d.n() {
        return Err(Error::Precondition(format!("root {r} is not a vertex")));
    }
    if removed_vertices.contains(&r) {
        return Err(Error::Precondition(format!("root {r} is removed")));
    }
    let seen = reach_mask(
        d,
        r,
        |v| removed_vertices.contains(&v),
        |u, v| removed_arcs.contains(&(u, v)),
    );
    Ok(seen
        .into_iter()
        .enumerate()
        .filter_map(|(v, s)| s.then_some(v))
        .collect())
}

fn reach_mask(
    d: &Digraph,
    r: usize,
    vertex_gone: impl Fn(usize) -> bool,
    arc_gone: impl Fn(usize, usize) -> bool,
) -> Vec<bool> {
    let mut seen = vec![false; d.n()];
    seen[r] = true;
    let mut queue = VecDeque::from([r]);
    while let Some(u) = queue.pop_front() {
        for &w in d.out_neighbors(u) {
            if !seen[w] && !vertex_gone(w) && !arc_gone(u, w) {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    seen
}

fn require_reachable(d: &Digraph, r: usize) -> Result<()> {
    if r >= d.n() {
        return Err(Error::Precondition(format!("root {r} is not a vertex")));
    }
    let seen = d.reachable_from(r);
    if let Some(v) = seen.iter().position(|s| !s) {
        return Err(Error::Precondition(format!(
            "vertex {v} is not reachable from root {r}"
        )));
    }
    Ok(())
}

/// Vertices left unreachable from `r` when `x` is deleted.
fn stranded_by_vertex(d: &Digraph, r: usize, x: usize) -> Vec<usize> {
    let seen = reach_mask(d, r, |v| v == x, |_, _| false);
    (0..d.n()).filter(|&v| v != x && !seen[v]).collect()
}

/// Number of vertices left unreachable from `r` when arc `(a,b)` is deleted.
fn stranded_by_arc(d: &Digraph, r: usize, a: usize, b: usize) -> usize {
    let seen = reach_mask(d, r, |_| false, |u, v| u == a && v == b);
    seen.iter().filter(|s| !**s).count()
}

/// True iff no single vertex other than `r` separates some vertex from `r`.
pub fn is_rooted_2connected(d: &Digraph, r: usize) -> Result<bool> {
    require_reachable(d, r)?;
    Ok((0..d.n())
        .filter(|&x| x != r)
        .all(|x| stranded_by_vertex(d, r, x).is_empty()))
}

/// Cut vertices with their cut-neighborhoods.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutProfile {
    pub cut_vertices: BTreeSet<usize>,
    /// `C(x)`: out-neighbors of `x` unreachable from the root once `x` is gone.
    pub cut_neighborhoods: BTreeMap<usize, BTreeSet<usize>>,
    /// Cut vertices with `|C(x)| >= 2`.
    pub s_geq2: BTreeSet<usize>,
    /// Cut vertices with `|C(x)| == 1`.
    pub s_eq1: BTreeSet<usize>,
}

impl CutProfile {
    pub fn is_empty(&self) -> bool {
        self.cut_vertices.is_empty()
    }

    /// `C[x] = C(x) ∪ {x}`.
    pub fn closed_neighborhood(&self, x: usize) -> BTreeSet<usize> {
        let mut s = self.cut_neighborhoods.get(&x).cloned().unwrap_or_default();
        s.insert(x);
        s
    }

    /// Arcs from `S_{>=2}` vertices to their cut-neighbors.
    pub fn a_c(&self) -> BTreeSet<(usize, usize)> {
        self.arcs_from(&self.s_geq2)
    }

    /// Arcs from `S_{=1}` vertices to their unique cut-neighbor.
    pub fn a_p(&self) -> BTreeSet<(usize, usize)> {
        self.arcs_from(&self.s_eq1)
    }

    fn arcs_from(&self, tails: &BTreeSet<usize>) -> BTreeSet<(usize, usize)> {
        tails
            .iter()
            .flat_map(|&x| self.cut_neighborhoods[&x].iter().map(move |&y| (x, y)))
            .collect()
    }
}

pub fn cut_profile(d: &Digraph, r: usize) -> Result<CutProfile> {
    require_reachable(d, r)?;
    let mut profile = CutProfile::default();
    for x in (0..d.n()).filter(|&x| x != r) {
        let stranded = stranded_by_vertex(d, r, x);
        if stranded.is_empty() {
            continue;
        }
        let stranded: BTreeSet<usize> = stranded.into_iter().collect();
        let cn: BTreeSet<usize> = d
            .out_neighbors(x)
            .iter()
            .copied()
            .filter(|w| stranded.contains(w))
            .collect();
        profile.cut_vertices.insert(x);
        if cn.len() >= 2 {
            profile.s_geq2.insert(x);
        } else {
            profile.s_eq1.insert(x);
        }
        profile.cut_neighborhoods.insert(x, cn);
    }
    Ok(profile)
}

/// Vertices with an in-neighbor that is not also an out-neighbor.
pub fn nice_vertices(d: &Digraph) -> BTreeSet<usize> {
    (0..d.n())
        .filter(|&v| d.in_neighbors(v).iter().any(|&u| !d.has_arc(v, u)))
        .collect()
}

/// Vertices with in-degree at least `threshold`.
pub fn high_indegree_vertices(d: &Digraph, threshold: usize) -> BTreeSet<usize> {
    (0..d.n())
        .filter(|&v| d.in_degree(v) >= threshold)
        .collect()
}

/// Arcs whose removal alone leaves at least two vertices unreachable from `r`.
pub fn arcs_disconnecting_two(d: &Digraph, r: usize) -> Result<BTreeSet<(usize, usize)>> {
    require_reachable(d, r)?;
    Ok(d.arcs()
        .filter(|&(a, b)| stranded_by_arc(d, r, a, b) >= 2)
        .collect())
}

/// First arc (lexicographic) stranding at least two vertices, if any.
pub(crate) fn first_arc_disconnecting_two(d: &Digraph, r: usize) -> Option<(usize, usize)> {
    d.arcs().find(|&(a, b)| stranded_by_arc(d, r, a, b) >= 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[usize]) -> BTreeSet<usize> {
        v.iter().copied().collect()
    }

    #[test]
    fn reachable_examples() {
        let path = Digraph::from_arcs(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(
            reachable(&path, 0, &set(&[1]), &BTreeSet::new()).unwrap(),
            set(&[0])
        );
        let tri = Digraph::from_arcs(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(
            reachable(&tri, 0, &BTreeSet::new(), &BTreeSet::new()).unwrap(),
            set(&[0, 1, 2])
        );
        let single = Digraph::from_arcs(2, [(0, 1)]).unwrap();
        let gone: BTreeSet<_> = [(0, 1)].into_iter().collect();
        assert_eq!(
            reachable(&single, 0, &BTreeSet::new(), &gone).unwrap(),
            set(&[0])
        );
        assert!(reachable(&single, 0, &set(&[0]), &BTreeSet::new()).is_err());
    }

    #[test]
    fn two_connectivity_examples() {
        let diamond = Digraph::from_arcs(4, [(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        assert!(is_rooted_2connected(&diamond, 0).unwrap());
        let path = Digraph::from_arcs(3, [(0, 1), (1, 2)]).unwrap();
        assert!(!is_rooted_2connected(&path, 0).unwrap());
        assert!(is_rooted_2connected(&Digraph::new(1), 0).unwrap());
        assert!(is_rooted_2connected(&path, 1).is_err());
    }

    #[test]
    fn cut_profile_examples() {
        let path = Digraph::from_arcs(3, [(0, 1), (1, 2)]).unwrap();
        let p = cut_profile(&path, 0).unwrap();
        assert_eq!(p.cut_vertices, set(&[1]));
        assert_eq!(p.cut_neighborhoods[&1], set(&[2]));
        assert_eq!(p.s_eq1, set(&[1]));

        let fork = Digraph::from_arcs(4, [(0, 1), (1, 2), (1, 3)]).unwrap();
        let p = cut_profile(&fork, 0).unwrap();
        assert_eq!(p.cut_vertices, set(&[1]));
        assert_eq!(p.cut_neighborhoods[&1], set(&[2, 3]));
        assert_eq!(p.s_geq2, set(&[1]));
        assert_eq!(p.a_c(), [(1, 2), (1, 3)].into_iter().collect());

        let diamond = Digraph::from_arcs(4, [(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        assert!(cut_profile(&diamond, 0).unwrap().is_empty());
    }

    #[test]
    fn nice_and_indegree_examples() {
        assert_eq!(
            nice_vertices(&Digraph::from_arcs(2, [(0, 1)]).unwrap()),
            set(&[1])
        );
        assert!(nice_vertices(&Digraph::from_arcs(2, [(0, 1), (1, 0)]).unwrap()).is_empty());
        assert_eq!(
            nice_vertices(&Digraph::from_arcs(3, [(0, 1), (1, 0), (2, 1)]).unwrap()),
            set(&[1])
        );

        let d = Digraph::from_arcs(4, [(0, 3), (1, 3), (2, 3)]).unwrap();
        assert_eq!(high_indegree_vertices(&d, 3), set(&[3]));
        let d = Digraph::from_arcs(3, [(0, 2), (1, 2)]).unwrap();
        assert!(high_indegree_vertices(&d, 3).is_empty());
        assert!(high_indegree_vertices(&Digraph::new(0), 3).is_empty());
    }

    #[test]
    fn disconnecting_arcs_examples() {
        let d = Digraph::from_arcs(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(
            arcs_disconnecting_two(&d, 0).unwrap(),
            [(0, 1), (1, 2)].into_iter().collect()
        );
        let d = Digraph::from_arcs(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(
            arcs_disconnecting_two(&d, 0).unwrap(),
            [(0, 1)].into_iter().collect()
        );
        let diamond = Digraph::from_arcs(4, [(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        assert!(arcs_disconnecting_two(&diamond, 0).unwrap().is_empty());
    }
}
