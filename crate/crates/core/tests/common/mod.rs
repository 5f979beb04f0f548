#![allow(dead_code)]

use outbranch::Digraph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Every ordered pair becomes an arc independently with probability `p`.
pub fn random_digraph(n: usize, p: f64, seed: u64) -> Digraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.gen_bool(p) {
                arcs.push((u, v));
            }
        }
    }
    Digraph::from_arcs(n, arcs).unwrap()
}

/// Seeded corpus of small digraphs with varying density.
pub fn small_corpus(count: usize, max_n: usize, seed: u64) -> Vec<Digraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=max_n);
            let p = [0.2, 0.3, 0.45, 0.6][rng.gen_range(0..4)];
            random_digraph(n, p, rng.gen())
        })
        .collect()
}

/// Random digraph where every vertex is reachable from vertex 0: a random
/// out-tree from 0 plus extra arcs.
pub fn rooted_connected_digraph(n: usize, extra_p: f64, seed: u64) -> Digraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut arcs = Vec::new();
    for v in 1..n {
        arcs.push((rng.gen_range(0..v), v));
    }
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.gen_bool(extra_p) {
                arcs.push((u, v));
            }
        }
    }
    Digraph::from_arcs(n, arcs).unwrap()
}

/// All 2^(n(n-1)) digraphs would be too many; this enumerates every
/// orientation of a simple graph, each edge being u->v, v->u or both.
pub fn all_orientations(n: usize, edges: &[(usize, usize)]) -> Vec<Digraph> {
    let mut out = Vec::new();
    let total = 3usize.pow(edges.len() as u32);
    for code in 0..total {
        let mut c = code;
        let mut arcs = Vec::new();
        for &(u, v) in edges {
            match c % 3 {
                0 => arcs.push((u, v)),
                1 => arcs.push((v, u)),
                _ => {
                    arcs.push((u, v));
                    arcs.push((v, u));
                }
            }
            c /= 3;
        }
        out.push(Digraph::from_arcs(n, arcs).unwrap());
    }
    out
}

/// Random rooted core on 3-5 vertices plus pendant out-leaves hung on core
/// vertices, total at most `max_n`. Core vertices often keep two entry arcs,
/// so cut vertices with several stranded out-neighbours survive contraction.
pub fn core_with_pendants(max_n: usize, seed: u64) -> Digraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let core = rng.gen_range(3..=5.min(max_n - 1));
    let mut arcs = Vec::new();
    for v in 1..core {
        arcs.push((rng.gen_range(0..v), v));
        if v > 1 && rng.gen_bool(0.7) {
            arcs.push((rng.gen_range(0..v), v));
        }
    }
    for u in 0..core {
        for v in 1..core {
            if u != v && rng.gen_bool(0.25) {
                arcs.push((u, v));
            }
        }
    }
    for leaf in core..max_n {
        if leaf > core && rng.gen_bool(0.2) {
            break;
        }
        arcs.push((rng.gen_range(0..core), leaf));
    }
    let n = arcs.iter().map(|&(u, v)| u.max(v)).max().unwrap_or(0) + 1;
    Digraph::from_arcs(n, arcs).unwrap()
}
