//! Instance generators, structural analysis, oracle audits and benchmarks.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::iob::{generate_collection, solve_iob, IobOptions, Passthrough};
use crate::kpath::{solve_kpath_ballcover, validate_path, KpathOptions};
use crate::lob::{reduce_lob, solve_lob, Guarantee, LobOptions, ReductionOutcome};
use crate::oracle::{brute_longest_path, brute_max_internal, brute_max_leaves};
use crate::treewidth::{treewidth_upper_bound, EXACT_TREEWIDTH_MAX_VERTICES};
use crate::UndirectedGraph;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum Family {
    Grid { rows: usize, cols: usize },
    RandomSparse { n: usize, m: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    #[serde(flatten)]
    pub family: Family,
    pub seed: u64,
    /// Probability that an edge becomes a 2-cycle.
    pub p2: f64,
}

impl GeneratorSpec {
    pub fn grid(rows: usize, cols: usize, seed: u64, p2: f64) -> Self {
        GeneratorSpec {
            family: Family::Grid { rows, cols },
            seed,
            p2,
        }
    }

    pub fn random_sparse(n: usize, m: usize, seed: u64, p2: f64) -> Self {
        GeneratorSpec {
            family: Family::RandomSparse { n, m },
            seed,
            p2,
        }
    }
}

fn orient(n: usize, edges: &[(usize, usize)], p2: f64, rng: &mut ChaCha8Rng) -> Result<Digraph> {
    let mut arcs = Vec::with_capacity(edges.len() * 2);
    for &(u, v) in edges {
        let (a, b) = if rng.gen_bool(0.5) { (u, v) } else { (v, u) };
        arcs.push((a, b));
        if rng.gen_bool(p2) {
            arcs.push((b, a));
        }
    }
    Digraph::from_arcs(n, arcs)
}

/// Builds the digraph described by `spec`; the seed fixes the output.
pub fn generate(spec: &GeneratorSpec) -> Result<Digraph> {
    if !(0.0..=1.0).contains(&spec.p2) {
        return Err(Error::Generator(format!(
            "p2 = {} is not a probability",
            spec.p2
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    match spec.family {
        Family::Grid { rows, cols } => {
            if rows == 0 || cols == 0 {
                return Err(Error::Generator(format!("grid {rows}x{cols} is empty")));
            }
            let id = |i: usize, j: usize| i * cols + j;
            let mut edges = Vec::new();
            for i in 0..rows {
                for j in 0..cols {
                    if j + 1 < cols {
                        edges.push((id(i, j), id(i, j + 1)));
                    }
                    if i + 1 < rows {
                        edges.push((id(i, j), id(i + 1, j)));
                    }
                }
            }
            orient(rows * cols, &edges, spec.p2, &mut rng)
        }
        Family::RandomSparse { n, m } => {
            let pairs = n * n.saturating_sub(1) / 2;
            if n == 0 || m > pairs {
                return Err(Error::Generator(format!(
                    "cannot place {m} edges on {n} vertices"
                )));
            }
            let all: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .collect();
            let picked = rand::seq::index::sample(&mut rng, all.len(), m);
            let mut edges: Vec<(usize, usize)> = picked.into_iter().map(|i| all[i]).collect();
            edges.sort_unstable();
            orient(n, &edges, spec.p2, &mut rng)
        }
    }
}

/// Exact treewidth when every component is small enough, else the greedy bound.
pub fn treewidth_estimate(g: &UndirectedGraph) -> (usize, bool) {
    let exact = g
        .components()
        .iter()
        .all(|c| c.len() <= EXACT_TREEWIDTH_MAX_VERTICES);
    (treewidth_upper_bound(g), exact)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalyzeReport {
    pub n: usize,
    pub m: usize,
    pub root: usize,
    pub k: usize,
    pub case2a_contractions: usize,
    pub reduced_n: usize,
    pub alpha: usize,
    pub beta: usize,
    pub s_geq2_size: usize,
    pub s_eq1_size: usize,
    pub guarantee: Guarantee,
    pub s_size: Option<usize>,
    pub s_bound: usize,
    /// Treewidth of `UG(D)`.
    pub tw_input: usize,
    /// Treewidth of `UG(D')`.
    pub tw_reduced: usize,
    /// Treewidth of `UG(D' - S)`.
    pub tw_after_removal: Option<usize>,
    /// Whether the treewidth figures are exact (otherwise greedy upper bounds).
    pub tw_exact: bool,
    /// `tw(UG(D')) / sqrt(|S|)`.
    pub ratio: Option<f64>,
}

/// Runs the leaf reduction on `(d, r, k)` and reports its structure together
/// with treewidth before and after removing the separator.
pub fn analyze(d: &Digraph, r: usize, k: usize) -> Result<AnalyzeReport> {
    let red = reduce_lob(d, r, k)?;
    let rep = red.outcome.report();
    let dp = red.reduced_digraph();
    let (tw_input, e1) = treewidth_estimate(&d.underlying_graph());
    let (tw_reduced, e2) = treewidth_estimate(&dp.underlying_graph());
    let mut exact = e1 && e2;
    let (s_size, tw_after_removal, ratio) = match &red.outcome {
        ReductionOutcome::GuaranteedYes(_) => (None, None, None),
        ReductionOutcome::Reduced { s, .. } => {
            let keep: Vec<usize> = (0..dp.n()).filter(|v| !s.contains(v)).collect();
            let (rest, _) = dp.induced_subgraph(&keep);
            let (tw, e3) = treewidth_estimate(&rest.underlying_graph());
            exact &= e3;
            let ratio = (!s.is_empty()).then(|| tw_reduced as f64 / (s.len() as f64).sqrt());
            (Some(s.len()), Some(tw), ratio)
        }
    };
    Ok(AnalyzeReport {
        n: d.n(),
        m: d.m(),
        root: r,
        k,
        case2a_contractions: rep.case2a_contractions,
        reduced_n: dp.n(),
        alpha: rep.alpha,
        beta: rep.beta,
        s_geq2_size: rep.s_geq2_size,
        s_eq1_size: rep.s_eq1_size,
        guarantee: rep.guarantee,
        s_size,
        s_bound: crate::lob::SEPARATOR_FACTOR * k,
        tw_input,
        tw_reduced,
        tw_after_removal,
        tw_exact: exact,
        ratio,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Problem {
    Lob,
    Iob,
    Kpath,
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Problem::Lob => "lob",
            Problem::Iob => "iob",
            Problem::Kpath => "kpath",
        })
    }
}

impl FromStr for Problem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lob" => Ok(Problem::Lob),
            "iob" => Ok(Problem::Iob),
            "kpath" => Ok(Problem::Kpath),
            _ => Err(Error::Precondition(format!("unknown problem {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub problem: Problem,
    pub k: usize,
    pub solver_answer: bool,
    pub oracle_answer: bool,
    /// Best leaf / internal count or longest path length found by brute force.
    pub oracle_value: Option<usize>,
    pub witness_valid: bool,
    pub agree: bool,
}

type BruteFn = fn(&Digraph, usize) -> Result<Option<(usize, crate::OutTree)>>;

/// Solves with the fast algorithm and with brute force and compares.
pub fn verify(
    d: &Digraph,
    problem: Problem,
    k: usize,
    root: Option<usize>,
    b: usize,
) -> Result<VerifyReport> {
    let roots: Vec<usize> = match root {
        Some(r) => vec![r],
        None => (0..d.n()).collect(),
    };
    let best_over_roots = |f: BruteFn| -> Result<Option<usize>> {
        let mut best = None;
        for &r in &roots {
            if let Some((v, _)) = f(d, r)? {
                best = best.max(Some(v));
            }
        }
        Ok(best)
    };
    let (solver_answer, witness_valid, oracle_value) = match problem {
        Problem::Lob => {
            let sol = solve_lob(d, k, root, &LobOptions::default())?;
            let valid = match &sol.witness {
                Some(w) => w.validate_branching(d).is_ok() && w.leaf_count() >= k,
                None => !sol.answer || sol.certificate.is_some(),
            };
            (sol.answer, valid, best_over_roots(brute_max_leaves)?)
        }
        Problem::Iob => {
            let sol = solve_iob(d, k, root, &Passthrough, &IobOptions::default())?;
            let valid = match &sol.witness {
                Some(w) => w.validate_branching(d).is_ok() && w.internal_count() >= k,
                None => !sol.answer,
            };
            (sol.answer, valid, best_over_roots(brute_max_internal)?)
        }
        Problem::Kpath => {
            let sol = solve_kpath_ballcover(d, k, b, &KpathOptions::default())?;
            let valid = match &sol.path {
                Some(p) => validate_path(d, p).is_ok() && p.len() > k,
                None => !sol.answer,
            };
            (sol.answer, valid, Some(brute_longest_path(d)?.0))
        }
    };
    let oracle_answer = oracle_value.is_some_and(|v| v >= k);
    Ok(VerifyReport {
        problem,
        k,
        solver_answer,
        oracle_answer,
        oracle_value,
        witness_valid,
        agree: solver_answer == oracle_answer && witness_valid,
    })
}

/// One benchmark entry: an instance family member and the problems to run on it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchCase {
    pub generator: GeneratorSpec,
    pub problems: Vec<Problem>,
    pub k: usize,
    /// Ball count for k-path.
    pub b: usize,
    pub root: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub family: String,
    pub seed: u64,
    pub p2: f64,
    pub n: usize,
    pub m: usize,
    pub problem: Problem,
    pub k: usize,
    pub status: String,
    pub answer: Option<bool>,
    pub width: Option<usize>,
    pub collection_size: Option<u128>,
    pub wall_ms: f64,
}

fn family_label(f: &Family) -> String {
    match f {
        Family::Grid { rows, cols } => format!("grid-{rows}x{cols}"),
        Family::RandomSparse { n, m } => format!("random-sparse-{n}-{m}"),
    }
}

type Outcome = (bool, Option<usize>, Option<u128>);

fn run_problem(d: &Digraph, case: &BenchCase, problem: Problem) -> Result<Outcome> {
    match problem {
        Problem::Lob => {
            let sol = solve_lob(d, case.k, case.root, &LobOptions::default())?;
            let width = sol.trace.iter().filter_map(|t| t.width).max();
            Ok((sol.answer, width, None))
        }
        Problem::Iob => {
            let sol = solve_iob(d, case.k, case.root, &Passthrough, &IobOptions::default())?;
            Ok((
                sol.answer,
                Some(sol.stats.max_width),
                Some(sol.stats.collection_size),
            ))
        }
        Problem::Kpath => {
            let sol = solve_kpath_ballcover(d, case.k, case.b, &KpathOptions::default())?;
            Ok((sol.answer, Some(sol.stats.max_width), None))
        }
    }
}

/// Runs every case and problem; one row each. Errors are recorded in the
/// `status` column and the run continues. With `deterministic`, timings are
/// zeroed so the output depends only on the suite.
pub fn bench(suite: &[BenchCase], deterministic: bool) -> Result<Vec<BenchRow>> {
    let mut rows = Vec::new();
    for case in suite {
        let d = generate(&case.generator)?;
        for &problem in &case.problems {
            let start = Instant::now();
            let res = run_problem(&d, case, problem);
            let wall_ms = if deterministic {
                0.0
            } else {
                start.elapsed().as_secs_f64() * 1e3
            };
            let (status, (answer, width, collection_size)) = match res {
                Ok((a, w, c)) => ("ok".to_string(), (Some(a), w, c)),
                Err(e) => (e.kind().to_string(), (None, None, None)),
            };
            rows.push(BenchRow {
                family: family_label(&case.generator.family),
                seed: case.generator.seed,
                p2: case.generator.p2,
                n: d.n(),
                m: d.m(),
                problem,
                k: case.k,
                status,
                answer,
                width,
                collection_size,
                wall_ms,
            });
        }
    }
    Ok(rows)
}

pub const BENCH_HEADER: [&str; 12] = [
    "family",
    "seed",
    "p2",
    "n",
    "m",
    "problem",
    "k",
    "status",
    "answer",
    "width",
    "collection_size",
    "wall_ms",
];

/// CSV with a header row even when `rows` is empty.
pub fn bench_csv(rows: &[BenchRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(BENCH_HEADER)
        .map_err(|e| Error::Io(e.to_string()))?;
    let opt = |x: Option<String>| x.unwrap_or_default();
    for r in rows {
        w.write_record([
            r.family.clone(),
            r.seed.to_string(),
            r.p2.to_string(),
            r.n.to_string(),
            r.m.to_string(),
            r.problem.to_string(),
            r.k.to_string(),
            r.status.clone(),
            opt(r.answer.map(|a| a.to_string())),
            opt(r.width.map(|a| a.to_string())),
            opt(r.collection_size.map(|a| a.to_string())),
            format!("{:.3}", r.wall_ms),
        ])
        .map_err(|e| Error::Io(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Internal(e.to_string()))
}

/// Closed-form collection size for the benchmark's IOB column.
pub fn iob_collection_size(d: &Digraph, k: usize, r: usize) -> Result<u128> {
    Ok(generate_collection(d, k, r, u128::MAX)?.count)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_2x2_bidirected() {
        let d = generate(&GeneratorSpec::grid(2, 2, 7, 1.0)).unwrap();
        assert_eq!((d.n(), d.m()), (4, 8));
    }

    #[test]
    fn generation_is_seeded() {
        let spec = GeneratorSpec::grid(4, 5, 3, 0.4);
        assert_eq!(generate(&spec).unwrap(), generate(&spec).unwrap());
        let sparse = GeneratorSpec::random_sparse(12, 20, 9, 0.2);
        let d = generate(&sparse).unwrap();
        assert_eq!(d.underlying_graph().edge_count(), 20);
        assert_eq!(d, generate(&sparse).unwrap());
    }

    #[test]
    fn grids_pass_euler_bound() {
        for rows in 1..6 {
            for cols in 1..6 {
                let d = generate(&GeneratorSpec::grid(rows, cols, 1, 0.5)).unwrap();
                let g = d.underlying_graph();
                if g.n() >= 3 {
                    assert!(g.edge_count() <= 3 * g.n() - 6);
                }
            }
        }
    }

    #[test]
    fn generator_errors() {
        assert!(generate(&GeneratorSpec::grid(0, 3, 1, 0.5)).is_err());
        assert!(generate(&GeneratorSpec::grid(2, 3, 1, 1.5)).is_err());
        assert!(generate(&GeneratorSpec::random_sparse(3, 4, 1, 0.5)).is_err());
    }

    #[test]
    fn analyze_bidirected_path() {
        let arcs = (0..4).flat_map(|i| [(i, i + 1), (i + 1, i)]);
        let d = Digraph::from_arcs(5, arcs).unwrap();
        let rep = analyze(&d, 0, 2).unwrap();
        assert_eq!((rep.alpha, rep.beta, rep.tw_input), (0, 0, 1));
    }

    #[test]
    fn analyze_grid_separator_bound() {
        let d = generate(&GeneratorSpec::grid(6, 6, 0, 1.0)).unwrap();
        let rep = analyze(&d, 0, 3).unwrap();
        if let Some(s) = rep.s_size {
            assert!(s <= 360);
            assert!(rep.tw_after_removal.unwrap() <= 3);
        }
    }

    #[test]
    fn empty_bench_is_header_only() {
        let csv = bench_csv(&bench(&[], true).unwrap()).unwrap();
        assert_eq!(csv.trim_end(), BENCH_HEADER.join(","));
    }

    #[test]
    fn bench_rows_and_collection_column() {
        let case = BenchCase {
            generator: GeneratorSpec::grid(3, 3, 5, 0.5),
            problems: vec![Problem::Lob, Problem::Iob, Problem::Kpath],
            k: 3,
            b: 2,
            root: Some(0),
        };
        let rows = bench(&[case.clone(), case], true).unwrap();
        assert_eq!(rows.len(), 6);
        let d = generate(&GeneratorSpec::grid(3, 3, 5, 0.5)).unwrap();
        for r in rows
            .iter()
            .filter(|r| r.problem == Problem::Iob && r.status == "ok")
        {
            if d.all_reachable_from(0) {
                assert_eq!(
                    r.collection_size,
                    Some(iob_collection_size(&d, 3, 0).unwrap())
                );
            }
        }
        let again = bench_csv(&rows).unwrap();
        assert_eq!(again.lines().count(), 7);
    }

    #[test]
    fn verify_agrees_on_small_cases() {
        let d = Digraph::from_arcs(4, [(0, 1), (1, 2), (2, 3), (0, 2)]).unwrap();
        for p in [Problem::Lob, Problem::Iob, Problem::Kpath] {
            for k in 1..=4 {
                let rep = verify(&d, p, k, None, 2).unwrap();
                assert!(rep.agree, "{rep:?}");
            }
        }
    }
}
