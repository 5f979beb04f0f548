//! k-Directed Path by ball cover.
//!
//! A path with `k` arcs is covered by `b` balls of radius `⌈k/b⌉` in the
//! underlying graph, centred on path vertices. Trying every `b`-subset of
//! centres and solving longest path exactly on the subdigraph induced by the
//! union of their balls therefore decides the problem.

use std::collections::{BTreeSet, HashSet};

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::digraph::{Digraph, UndirectedGraph};
use crate::dp::dp_longest_path;
use crate::error::{Error, Result};
use crate::treewidth::{best_greedy_decomposition, make_nice};

/// Vertices within undirected distance `radius` of `v`.
pub fn ball(g: &UndirectedGraph, v: usize, radius: usize) -> BTreeSet<usize> {
    g.distances_from(v)
        .into_iter()
        .enumerate()
        .filter_map(|(u, d)| d.filter(|&d| d <= radius).map(|_| u))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BallCoverConfig {
    pub b: usize,
    pub radius: usize,
}

impl BallCoverConfig {
    pub fn new(n: usize, k: usize, b: usize) -> Result<Self> {
        if b == 0 || b > n {
            return Err(Error::Precondition(format!(
                "ball count {b} outside 1..={n}"
            )));
        }
        Ok(BallCoverConfig {
            b,
            radius: k.div_ceil(b),
        })
    }

    /// Centres covering a path given as a vertex sequence: positions
    /// `ρ, 3ρ+1, 5ρ+2, ...` (clipped to the last vertex), padded with further
    /// vertices up to `b` when fewer are needed.
    pub fn cover_centres(&self, path: &[usize], n: usize) -> Vec<usize> {
        let rho = self.radius;
        let mut centres: BTreeSet<usize> = BTreeSet::new();
        if let Some(last) = path.len().checked_sub(1) {
            let mut pos = rho.min(last);
            loop {
                centres.insert(path[pos]);
                if pos + rho >= last {
                    break;
                }
                pos = (pos + 2 * rho + 1).min(last);
            }
        }
        for v in 0..n {
            if centres.len() >= self.b {
                break;
            }
            centres.insert(v);
        }
        centres.into_iter().collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct KpathOptions {
    /// Cap on the number of centre subsets.
    pub budget: u128,
    pub max_width: usize,
}

impl Default for KpathOptions {
    fn default() -> Self {
        KpathOptions {
            budget: 1_000_000,
            max_width: 14,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct KpathStats {
    pub radius: usize,
    pub subsets: u128,
    pub subsets_examined: u64,
    /// Subsets whose ball union had already been solved.
    pub duplicates_skipped: u64,
    pub max_width: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KpathSolution {
    pub answer: bool,
    /// A path with at least `k` arcs, as a vertex sequence.
    pub path: Option<Vec<usize>>,
    pub centres: Option<Vec<usize>>,
    pub stats: KpathStats,
}

pub fn subset_count(n: usize, b: usize) -> u128 {
    if b > n {
        return 0;
    }
    let b = b.min(n - b);
    (0..b).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Longest path in `D[f]`, mapped back to vertices of `d`.
fn longest_in(
    d: &Digraph,
    f: &[usize],
    opts: &KpathOptions,
    stats: &mut KpathStats,
) -> Result<Vec<usize>> {
    let (sub, map) = d.induced_subgraph(f);
    let g = sub.underlying_graph();
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
    let res = dp_longest_path(&sub, &nice)?;
    Ok(res.path.into_iter().map(|v| map[v]).collect())
}

/// Decides whether `d` has a directed path with at least `k` arcs, by trying
/// every set of `b` ball centres.
pub fn solve_kpath_ballcover(
    d: &Digraph,
    k: usize,
    b: usize,
    opts: &KpathOptions,
) -> Result<KpathSolution> {
    let cfg = BallCoverConfig::new(d.n(), k, b)?;
    let subsets = subset_count(d.n(), b);
    if subsets > opts.budget {
        return Err(Error::Budget {
            what: "centre subsets",
            needed: subsets,
            limit: opts.budget,
        });
    }
    let mut stats = KpathStats {
        radius: cfg.radius,
        subsets,
        ..KpathStats::default()
    };
    let g = d.underlying_graph();
    let balls: Vec<BTreeSet<usize>> = (0..d.n()).map(|v| ball(&g, v, cfg.radius)).collect();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    for centres in (0..d.n()).combinations(b) {
        stats.subsets_examined += 1;
        let f: Vec<usize> = centres
            .iter()
            .flat_map(|&c| balls[c].iter().copied())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        if f.len() < k + 1 {
            continue;
        }
        if !seen.insert(f.clone()) {
            stats.duplicates_skipped += 1;
            continue;
        }
        let path = longest_in(d, &f, opts, &mut stats)?;
        if path.len() > k {
            return Ok(KpathSolution {
                answer: true,
                path: Some(path),
                centres: Some(centres),
                stats,
            });
        }
    }
    Ok(KpathSolution {
        answer: false,
        path: None,
        centres: None,
        stats,
    })
}

/// Checks that `path` is a simple directed path of `d`.
pub fn validate_path(d: &Digraph, path: &[usize]) -> Result<()> {
    let mut seen = BTreeSet::new();
    for &v in path {
        if v >= d.n() || !seen.insert(v) {
            return Err(Error::Precondition(format!(
                "vertex {v} repeated or out of range"
            )));
        }
    }
    if let Some((u, v)) = path
        .iter()
        .tuple_windows()
        .find(|&(&u, &v)| !d.has_arc(u, v))
    {
        return Err(Error::Precondition(format!("arc ({u},{v}) not in digraph")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ball_examples() {
        let g = UndirectedGraph::from_edges(4, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(ball(&g, 1, 0), [1].into_iter().collect());
        assert_eq!(ball(&g, 1, 1), [0, 1, 2].into_iter().collect());
        assert_eq!(ball(&g, 0, 4), [0, 1, 2].into_iter().collect());
    }

    #[test]
    fn cycle_one_ball() {
        let c6 = Digraph::from_arcs(6, (0..6).map(|i| (i, (i + 1) % 6))).unwrap();
        let sol = solve_kpath_ballcover(&c6, 5, 1, &KpathOptions::default()).unwrap();
        assert!(sol.answer);
        let p = sol.path.unwrap();
        validate_path(&c6, &p).unwrap();
        assert_eq!(p.len(), 6);
    }

    #[test]
    fn short_dag_path() {
        let d = Digraph::from_arcs(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert!(
            !solve_kpath_ballcover(&d, 4, 2, &KpathOptions::default())
                .unwrap()
                .answer
        );
        assert!(
            solve_kpath_ballcover(&d, 3, 2, &KpathOptions::default())
                .unwrap()
                .answer
        );
    }

    #[test]
    fn invalid_ball_count() {
        let d = Digraph::new(3);
        assert!(solve_kpath_ballcover(&d, 1, 0, &KpathOptions::default()).is_err());
        assert!(solve_kpath_ballcover(&d, 1, 4, &KpathOptions::default()).is_err());
    }

    #[test]
    fn centres_cover_path() {
        let cfg = BallCoverConfig { b: 2, radius: 2 };
        let path = [9, 8, 7, 6, 5];
        assert_eq!(cfg.cover_centres(&path, 10), vec![0, 7]);
        let cfg = BallCoverConfig { b: 3, radius: 1 };
        assert_eq!(cfg.cover_centres(&[4, 5], 6), vec![0, 1, 5]);
    }

    #[test]
    fn subset_budget() {
        let d = Digraph::new(30);
        let err = solve_kpath_ballcover(
            &d,
            2,
            15,
            &KpathOptions {
                budget: 1000,
                max_width: 4,
            },
        )
        .unwrap_err();
        assert!(matches!(err, Error::Budget { .. }));
        assert_eq!(subset_count(5, 2), 10);
    }
}
