//! k-Leaf Out-Branching: the structural reduction and the solver built on it.
//!
//! [`reduce_lob`] either certifies that an `r`-out-branching with `k` leaves
//! exists, or returns an equivalent digraph `D'` together with a vertex set
//! `S`, `|S| <= 120k`, such that `UG(D' - S)` has treewidth at most 3. The
//! steps:
//!
//! 1. contract every arc whose removal strands two or more vertices
//!    ([`exhaust_case2a`]); this preserves the maximum leaf count;
//! 2. profile the remaining cut vertices; if `|S_{>=2}| >= k` the answer is
//!    yes, because forcing every cut arc gives each of those vertices two
//!    children;
//! 3. duplicate each `S_{>=2}` vertex ([`build_dup`]), which raises the
//!    optimum by exactly `|S_{>=2}|`;
//! 4. identify the endpoints of every pendant cut arc
//!    ([`contract_pendant_matching`]), giving a rooted 2-connected digraph;
//! 5. on that digraph, many in-degree-3 vertices or many nice vertices
//!    guarantee enough leaves; otherwise those vertices form the separator.
//!
//! [`solve_lob`] runs the reduction for each root and finishes with exact
//! dynamic programming over a tree decomposition of `UG(D')`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::connectivity::{
    cut_profile, first_arc_disconnecting_two, high_indegree_vertices, is_rooted_2connected,
    nice_vertices, CutProfile,
};
use crate::digraph::{Digraph, OutTree};
use crate::dp::dp_max_leaves;
use crate::error::{Error, Result};
use crate::treewidth::{best_greedy_decomposition, make_nice};

/// In-degree threshold defining `alpha`.
pub const HIGH_INDEGREE: usize = 3;
/// `alpha >= ALPHA_FACTOR * k` guarantees `k` leaves in a rooted 2-connected digraph.
pub const ALPHA_FACTOR: usize = 6;
/// `beta >= BETA_FACTOR * k` guarantees `k` leaves in a rooted 2-connected digraph.
pub const BETA_FACTOR: usize = 24;
/// Bound on the extracted separator: `|S| <= SEPARATOR_FACTOR * k`.
pub const SEPARATOR_FACTOR: usize = 120;
/// Bound on `tw(UG(D' - S))` for reduced instances.
pub const RESIDUAL_TREEWIDTH: usize = 3;

/// One Case-2a contraction, kept so witnesses can be lifted back.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractionStep {
    pub before: Digraph,
    pub before_root: usize,
    pub tail: usize,
    pub head: usize,
}

impl ContractionStep {
    /// Vertex of `before` that vertex `a` of the contracted digraph came from
    /// (the merged vertex maps to the tail).
    fn before_of(&self, a: usize) -> usize {
        let merged = Digraph::index_after_merge(self.tail, self.head, self.tail);
        if a == merged {
            self.tail
        } else if a < self.head {
            a
        } else {
            a + 1
        }
    }

    /// Lifts an out-branching of the contracted digraph to `before` without
    /// losing leaves: the merged vertex splits back into `tail -> head`, and
    /// each of its children hangs below `head` when that arc exists, else
    /// below `tail`.
    pub fn lift(&self, t: &OutTree) -> Result<OutTree> {
        let (x, y) = (self.tail, self.head);
        let b = &self.before;
        let merged = Digraph::index_after_merge(x, y, x);
        let mut arcs = vec![(x, y)];
        for (p, c) in t.arcs() {
            if c == merged {
                let pb = self.before_of(p);
                if !b.has_arc(pb, x) {
                    return Err(Error::Internal(format!(
                        "lifting contraction ({x},{y}): parent {pb} has no arc to {x}"
                    )));
                }
                arcs.push((pb, x));
            } else if p == merged {
                let cb = self.before_of(c);
                let tail = if b.has_arc(y, cb) { y } else { x };
                arcs.push((tail, cb));
            } else {
                arcs.push((self.before_of(p), self.before_of(c)));
            }
        }
        OutTree::from_arcs(self.before_of(t.root), arcs)
    }
}

/// Result of exhausting Case 2a.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Case2aReduction {
    pub digraph: Digraph,
    pub root: usize,
    pub steps: Vec<ContractionStep>,
}

impl Case2aReduction {
    /// Maps an out-branching of the reduced digraph back to the input.
    pub fn lift_branching(&self, t: &OutTree) -> Result<OutTree> {
        let mut cur = t.clone();
        for step in self.steps.iter().rev() {
            cur = step.lift(&cur)?;
        }
        Ok(cur)
    }
}

/// Contracts arcs that strand at least two vertices from `r` until none is
/// left. Arcs are picked in lexicographic order.
pub fn exhaust_case2a(d: &Digraph, r: usize) -> Result<Case2aReduction> {
    if r >= d.n() || !d.all_reachable_from(r) {
        return Err(Error::Precondition(format!(
            "some vertex is unreachable from root {r}"
        )));
    }
    let mut cur = d.clone();
    let mut root = r;
    let mut steps = Vec::new();
    while let Some((x, y)) = first_arc_disconnecting_two(&cur, root) {
        let next = cur.contract_arc_directed(x, y)?;
        let next_root = Digraph::index_after_merge(x, y, root);
        steps.push(ContractionStep {
            before: std::mem::replace(&mut cur, next),
            before_root: root,
            tail: x,
            head: y,
        });
        root = next_root;
    }
    Ok(Case2aReduction {
        digraph: cur,
        root,
        steps,
    })
}

/// Why an instance is known to be a yes-instance without solving it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Guarantee {
    None,
    /// At least `6k` vertices of in-degree >= 3 in a rooted 2-connected digraph.
    AlphaRule,
    /// At least `24k` nice vertices in a rooted 2-connected digraph.
    BetaRule,
    /// At least `k` cut vertices with two or more cut-neighbours.
    SGeq2Rule,
}

/// Outcome of the rooted 2-connected analysis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TwoConnectedOutcome {
    GuaranteedYes {
        rule: Guarantee,
        alpha: usize,
        beta: usize,
    },
    Separator {
        s: BTreeSet<usize>,
        alpha: usize,
        beta: usize,
    },
}

/// On a rooted 2-connected digraph: yes by the `alpha`/`beta` thresholds, or
/// the set of nice and in-degree->=3 vertices, whose removal leaves disjoint
/// bidirected paths (plus possibly one bidirected cycle through the root).
pub fn two_connected_analysis(d: &Digraph, r: usize, k: usize) -> Result<TwoConnectedOutcome> {
    if !is_rooted_2connected(d, r)? {
        return Err(Error::Precondition(format!(
            "digraph is not rooted 2-connected at {r}"
        )));
    }
    let high = high_indegree_vertices(d, HIGH_INDEGREE);
    let nice = nice_vertices(d);
    let (alpha, beta) = (high.len(), nice.len());
    if alpha >= ALPHA_FACTOR * k {
        return Ok(TwoConnectedOutcome::GuaranteedYes {
            rule: Guarantee::AlphaRule,
            alpha,
            beta,
        });
    }
    if beta >= BETA_FACTOR * k {
        return Ok(TwoConnectedOutcome::GuaranteedYes {
            rule: Guarantee::BetaRule,
            alpha,
            beta,
        });
    }
    let s = high.union(&nice).copied().collect();
    Ok(TwoConnectedOutcome::Separator { s, alpha, beta })
}

/// Rewires `t` so that it contains every arc of `a_c`: for a missing arc
/// `(x,y)`, `y`'s parent is replaced by `x`. The leaf count never drops.
pub fn force_cut_arcs(
    d: &Digraph,
    r: usize,
    t: &OutTree,
    a_c: &BTreeSet<(usize, usize)>,
) -> Result<OutTree> {
    t.validate_branching(d)?;
    if t.root != r {
        return Err(Error::Precondition(format!(
            "branching is rooted at {}, not {r}",
            t.root
        )));
    }
    let mut out = t.clone();
    for &(x, y) in a_c {
        if !d.has_arc(x, y) {
            return Err(Error::Precondition(format!(
                "cut arc ({x},{y}) not in digraph"
            )));
        }
        if out.parent.get(&y) == Some(&x) {
            continue;
        }
        let mut a = x;
        while a != out.root {
            if a == y {
                return Err(Error::Internal(format!(
                    "exchanging in ({x},{y}) would close a cycle"
                )));
            }
            a = out.parent[&a];
        }
        out.parent.insert(y, x);
    }
    out.validate_branching(d)?;
    Ok(out)
}

/// `D^dup`: every `S_{>=2}` vertex `x` gains an imaginary copy `x^i` with the
/// same in- and out-neighbours among the original vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DupDigraph {
    pub digraph: Digraph,
    /// Number of original vertices; imaginary copies follow them.
    pub original_n: usize,
    /// `x -> x^i`.
    pub copies: BTreeMap<usize, usize>,
}

impl DupDigraph {
    /// `ℓ`, the number of duplicated vertices.
    pub fn ell(&self) -> usize {
        self.copies.len()
    }

    fn original_of(&self) -> BTreeMap<usize, usize> {
        self.copies.iter().map(|(&x, &xi)| (xi, x)).collect()
    }

    /// Lifts an out-branching of the original digraph to `D^dup` by hanging
    /// each `x^i` as a leaf below the tree parent of `x`; gains `ℓ` leaves.
    pub fn lift_branching(&self, t: &OutTree) -> Result<OutTree> {
        let mut out = t.clone();
        for (&x, &xi) in &self.copies {
            let Some(&u) = t.parent.get(&x) else {
                return Err(Error::Precondition(format!(
                    "duplicated vertex {x} has no parent in the branching"
                )));
            };
            out.parent.insert(xi, u);
        }
        Ok(out)
    }

    /// Projects an out-branching of `D^dup` onto the original digraph, losing
    /// at most `ℓ` leaves: children of `x^i` move to `x` (after re-hanging
    /// `x` below `x^i`'s parent if `x` sat inside `x^i`'s subtree), then every
    /// imaginary vertex, now a leaf, is dropped.
    pub fn project_branching(&self, t: &OutTree) -> Result<OutTree> {
        let mut parent = t.parent.clone();
        for (&x, &xi) in &self.copies {
            let xi_parent = *parent.get(&xi).ok_or_else(|| {
                Error::Precondition(format!("imaginary vertex {xi} has no parent"))
            })?;
            let mut a = x;
            let mut below_copy = false;
            while let Some(&p) = parent.get(&a) {
                if p == xi {
                    below_copy = true;
                    break;
                }
                a = p;
            }
            if below_copy {
                parent.insert(x, xi_parent);
            }
            for c in parent
                .iter()
                .filter(|(_, &p)| p == xi)
                .map(|(&c, _)| c)
                .collect::<Vec<_>>()
            {
                parent.insert(c, x);
            }
        }
        let imaginary = self.original_of();
        parent.retain(|c, _| !imaginary.contains_key(c));
        if parent.values().any(|p| imaginary.contains_key(p)) {
            return Err(Error::Internal("imaginary vertex kept a child".into()));
        }
        Ok(OutTree {
            root: t.root,
            parent,
        })
    }
}

pub fn build_dup(d: &Digraph, s_geq2: &BTreeSet<usize>) -> Result<DupDigraph> {
    let n = d.n();
    let mut arcs: Vec<(usize, usize)> = d.arcs().collect();
    let mut copies = BTreeMap::new();
    for (i, &x) in s_geq2.iter().enumerate() {
        if x >= n {
            return Err(Error::Precondition(format!("vertex {x} not in digraph")));
        }
        let xi = n + i;
        copies.insert(x, xi);
        arcs.extend(d.in_neighbors(x).iter().map(|&u| (u, xi)));
        arcs.extend(d.out_neighbors(x).iter().map(|&v| (xi, v)));
    }
    let digraph = Digraph::from_arcs(n + copies.len(), arcs)?;
    Ok(DupDigraph {
        digraph,
        original_n: n,
        copies,
    })
}

/// `D^dup_c`: endpoints of each pendant cut arc identified. Origin records of
/// the result refer to vertices of the input digraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PendantContraction {
    pub digraph: Digraph,
    pub a_p: BTreeSet<(usize, usize)>,
}

impl PendantContraction {
    /// Expands an out-branching of the contracted digraph to one of `dup`
    /// with at least as many leaves: each merged pair `x -> y` is restored
    /// with `y` below `x`, and children go to `x` whenever possible.
    pub fn expand_branching(&self, dup: &Digraph, t: &OutTree) -> Result<OutTree> {
        let head_of: BTreeMap<usize, usize> = self.a_p.iter().copied().collect();
        let c = &self.digraph;
        // entry vertex (receives the tree arc) and all members of each vertex
        let entry = |v: usize| -> usize { c.origins(v)[0] };
        let pair = |v: usize| -> Option<(usize, usize)> {
            let o = c.origins(v);
            if o.len() != 2 {
                return None;
            }
            if head_of.get(&o[0]) == Some(&o[1]) {
                Some((o[0], o[1]))
            } else if head_of.get(&o[1]) == Some(&o[0]) {
                Some((o[1], o[0]))
            } else {
                None
            }
        };
        let into = |v: usize| -> usize { pair(v).map_or_else(|| entry(v), |(x, _)| x) };
        let mut arcs = Vec::new();
        for v in 0..c.n() {
            if let Some((x, y)) = pair(v) {
                arcs.push((x, y));
            } else if c.origins(v).len() != 1 {
                return Err(Error::Internal(format!(
                    "vertex {v} merges an unexpected set"
                )));
            }
        }
        for (p, ch) in t.arcs() {
            let head = into(ch);
            let tail = match pair(p) {
                None => entry(p),
                Some((x, y)) => {
                    if dup.has_arc(x, head) {
                        x
                    } else {
                        y
                    }
                }
            };
            if !dup.has_arc(tail, head) {
                return Err(Error::Internal(format!(
                    "no arc ({tail},{head}) to expand tree arc ({p},{ch})"
                )));
            }
            arcs.push((tail, head));
        }
        OutTree::from_arcs(into(t.root), arcs)
    }
}

/// Identifies the endpoints of every arc of `a_p`, which must be a matching.
pub fn contract_pendant_matching(
    d_dup: &Digraph,
    a_p: &BTreeSet<(usize, usize)>,
) -> Result<PendantContraction> {
    let mut touched = BTreeSet::new();
    for &(u, v) in a_p {
        if !touched.insert(u) || !touched.insert(v) {
            return Err(Error::Precondition(format!(
                "pendant arcs are not a matching (at arc ({u},{v}))"
            )));
        }
        if !d_dup.has_arc(u, v) {
            return Err(Error::Precondition(format!("pendant arc ({u},{v}) absent")));
        }
    }
    let mut cur = d_dup.rebased();
    for &(u, v) in a_p {
        let cu = cur.vertex_with_origin(u).expect("live origin");
        let cv = cur.vertex_with_origin(v).expect("live origin");
        cur = cur.identify_arc_endpoints(cu, cv)?;
    }
    Ok(PendantContraction {
        digraph: cur,
        a_p: a_p.clone(),
    })
}

/// Numbers gathered by one reduction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureReport {
    pub k: usize,
    /// Parameter used by the 2-connected analysis (`k + ℓ`).
    pub k_effective: usize,
    pub case2a_contractions: usize,
    pub reduced_n: usize,
    pub reduced_m: usize,
    pub alpha: usize,
    pub beta: usize,
    /// `ℓ = |S_{>=2}|`.
    pub s_geq2_size: usize,
    pub s_eq1_size: usize,
    pub a_c: Vec<(usize, usize)>,
    pub a_p: Vec<(usize, usize)>,
    /// Separator in `D^dup_c`, before expansion.
    pub s_prime_size: usize,
    /// Separator in `D^dup` after expanding merged vertices.
    pub s_star_size: usize,
    /// Separator `S ⊆ V(D')`.
    pub extracted_s: Vec<usize>,
    pub guarantee: Guarantee,
}

/// What [`reduce_lob`] concluded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReductionOutcome {
    GuaranteedYes(StructureReport),
    Reduced {
        s: BTreeSet<usize>,
        report: StructureReport,
    },
}

impl ReductionOutcome {
    pub fn report(&self) -> &StructureReport {
        match self {
            ReductionOutcome::GuaranteedYes(r) => r,
            ReductionOutcome::Reduced { report, .. } => report,
        }
    }
}

/// Reduction of one rooted instance, with the data needed to map witnesses
/// back to the input digraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LobReduction {
    /// `D'` and its root, after Case 2a.
    pub case2a: Case2aReduction,
    pub profile: CutProfile,
    pub outcome: ReductionOutcome,
}

impl LobReduction {
    pub fn reduced_digraph(&self) -> &Digraph {
        &self.case2a.digraph
    }

    pub fn reduced_root(&self) -> usize {
        self.case2a.root
    }
}

/// Runs the full reduction on a rooted instance in which every vertex is
/// reachable from `r`.
pub fn reduce_lob(d: &Digraph, r: usize, k: usize) -> Result<LobReduction> {
    if k == 0 {
        return Err(Error::Precondition("k must be at least 1".into()));
    }
    let case2a = exhaust_case2a(d, r)?;
    let dp = &case2a.digraph;
    let root = case2a.root;
    let profile = cut_profile(dp, root)?;
    let a_c = profile.a_c();
    let a_p = profile.a_p();
    let ell = profile.s_geq2.len();
    let mut report = StructureReport {
        k,
        k_effective: k + ell,
        case2a_contractions: case2a.steps.len(),
        reduced_n: dp.n(),
        reduced_m: dp.m(),
        alpha: 0,
        beta: 0,
        s_geq2_size: ell,
        s_eq1_size: profile.s_eq1.len(),
        a_c: a_c.iter().copied().collect(),
        a_p: a_p.iter().copied().collect(),
        s_prime_size: 0,
        s_star_size: 0,
        extracted_s: Vec::new(),
        guarantee: Guarantee::None,
    };
    if ell >= k {
        report.guarantee = Guarantee::SGeq2Rule;
        return Ok(LobReduction {
            case2a,
            profile,
            outcome: ReductionOutcome::GuaranteedYes(report),
        });
    }
    let dup = build_dup(dp, &profile.s_geq2)?;
    let dupc = contract_pendant_matching(&dup.digraph, &a_p)?;
    let croot = dupc
        .digraph
        .vertex_with_origin(root)
        .ok_or_else(|| Error::Internal("root lost in pendant contraction".into()))?;
    let analysis = two_connected_analysis(&dupc.digraph, croot, k + ell)?;
    let outcome = match analysis {
        TwoConnectedOutcome::GuaranteedYes { rule, alpha, beta } => {
            report.alpha = alpha;
            report.beta = beta;
            report.guarantee = rule;
            ReductionOutcome::GuaranteedYes(report)
        }
        TwoConnectedOutcome::Separator { s, alpha, beta } => {
            let s_star: BTreeSet<usize> = s
                .iter()
                .flat_map(|&v| dupc.digraph.origins(v).iter().copied())
                .collect();
            let s_final: BTreeSet<usize> = s_star
                .iter()
                .copied()
                .filter(|&v| v < dup.original_n)
                .collect();
            report.alpha = alpha;
            report.beta = beta;
            report.s_prime_size = s.len();
            report.s_star_size = s_star.len();
            report.extracted_s = s_final.iter().copied().collect();
            ReductionOutcome::Reduced { s: s_final, report }
        }
    };
    Ok(LobReduction {
        case2a,
        profile,
        outcome,
    })
}

/// Limits for [`solve_lob`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LobOptions {
    /// Reduced instances whose decomposition is wider fail with a budget error.
    pub max_width: usize,
    /// Witnesses for `alpha`/`beta` guarantees are computed only up to this width.
    pub witness_width: usize,
}

impl Default for LobOptions {
    fn default() -> Self {
        LobOptions {
            max_width: 14,
            witness_width: 10,
        }
    }
}

/// Per-root record in [`LobSolution::trace`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootTrace {
    pub root: usize,
    pub status: RootStatus,
    pub report: Option<StructureReport>,
    pub width: Option<usize>,
    pub max_leaves: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RootStatus {
    Unreachable,
    Guaranteed,
    Solved,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LobSolution {
    pub answer: bool,
    pub root: Option<usize>,
    pub witness: Option<OutTree>,
    /// Set when the answer came from a counting rule instead of a solved DP.
    pub certificate: Option<Guarantee>,
    pub trace: Vec<RootTrace>,
}

fn width_budget(what: &'static str, width: usize, limit: usize) -> Error {
    Error::Budget {
        what,
        needed: width as u128,
        limit: limit as u128,
    }
}

fn solve_root(
    d: &Digraph,
    r: usize,
    k: usize,
    opts: &LobOptions,
) -> Result<(RootTrace, Option<LobSolution>)> {
    let mut trace = RootTrace {
        root: r,
        status: RootStatus::Unreachable,
        report: None,
        width: None,
        max_leaves: None,
    };
    if !d.all_reachable_from(r) {
        return Ok((trace, None));
    }
    let red = reduce_lob(d, r, k)?;
    let dp_graph = red.reduced_digraph();
    let dp_root = red.reduced_root();
    trace.report = Some(red.outcome.report().clone());
    match &red.outcome {
        ReductionOutcome::GuaranteedYes(report) => {
            trace.status = RootStatus::Guaranteed;
            let witness = if report.guarantee == Guarantee::SGeq2Rule {
                let t = OutTree::bfs_branching(dp_graph, dp_root)?;
                let t = force_cut_arcs(dp_graph, dp_root, &t, &red.profile.a_c())?;
                Some(red.case2a.lift_branching(&t)?)
            } else {
                let g = dp_graph.underlying_graph();
                let td = best_greedy_decomposition(&g);
                trace.width = Some(td.width());
                if td.width() <= opts.witness_width {
                    let nice = make_nice(&td, &g)?;
                    let best = dp_max_leaves(dp_graph, dp_root, &nice)?.ok_or_else(|| {
                        Error::Internal("no branching in a connected instance".into())
                    })?;
                    trace.max_leaves = Some(best.leaves);
                    Some(red.case2a.lift_branching(&best.branching)?)
                } else {
                    None
                }
            };
            if let Some(w) = &witness {
                w.validate_branching(d)?;
                if w.leaf_count() < k {
                    return Err(Error::Internal(format!(
                        "{:?} promised {k} leaves but the witness has {}",
                        report.guarantee,
                        w.leaf_count()
                    )));
                }
            }
            let sol = LobSolution {
                answer: true,
                root: Some(r),
                witness,
                certificate: Some(report.guarantee),
                trace: Vec::new(),
            };
            Ok((trace, Some(sol)))
        }
        ReductionOutcome::Reduced { .. } => {
            trace.status = RootStatus::Solved;
            let g = dp_graph.underlying_graph();
            let td = best_greedy_decomposition(&g);
            trace.width = Some(td.width());
            if td.width() > opts.max_width {
                return Err(width_budget(
                    "decomposition width",
                    td.width(),
                    opts.max_width,
                ));
            }
            let nice = make_nice(&td, &g)?;
            let best = dp_max_leaves(dp_graph, dp_root, &nice)?
                .ok_or_else(|| Error::Internal("no branching in a connected instance".into()))?;
            trace.max_leaves = Some(best.leaves);
            if best.leaves < k {
                return Ok((trace, None));
            }
            let witness = red.case2a.lift_branching(&best.branching)?;
            witness.validate_branching(d)?;
            debug_assert!(witness.leaf_count() >= best.leaves);
            let sol = LobSolution {
                answer: true,
                root: Some(r),
                witness: Some(witness),
                certificate: None,
                trace: Vec::new(),
            };
            Ok((trace, Some(sol)))
        }
    }
}

/// Decides whether `d` has an out-branching with at least `k` leaves, rooted
/// at `root` when given, else at any vertex (tried in ascending order, first
/// yes wins).
pub fn solve_lob(
    d: &Digraph,
    k: usize,
    root: Option<usize>,
    opts: &LobOptions,
) -> Result<LobSolution> {
    if k == 0 {
        return Err(Error::Precondition("k must be at least 1".into()));
    }
    let roots: Vec<usize> = match root {
        Some(r) if r >= d.n() => {
            return Err(Error::Precondition(format!("root {r} is not a vertex")))
        }
        Some(r) => vec![r],
        None => (0..d.n()).collect(),
    };
    let mut trace = Vec::new();
    for r in roots {
        let (t, sol) = solve_root(d, r, k, opts)?;
        trace.push(t);
        if let Some(mut sol) = sol {
            sol.trace = trace;
            return Ok(sol);
        }
    }
    Ok(LobSolution {
        answer: false,
        root: None,
        witness: None,
        certificate: None,
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connectivity::arcs_disconnecting_two;

    fn set(v: &[usize]) -> BTreeSet<usize> {
        v.iter().copied().collect()
    }

    #[test]
    fn case2a_contracts_to_fixed_point() {
        // r=0 x=1 y=2 z=3 w=4
        let d = Digraph::from_arcs(5, [(0, 1), (1, 2), (2, 3), (2, 4)]).unwrap();
        let red = exhaust_case2a(&d, 0).unwrap();
        assert!(!red.steps.is_empty());
        assert!(arcs_disconnecting_two(&red.digraph, red.root)
            .unwrap()
            .is_empty());
        let star = &red.digraph;
        assert_eq!(star.n(), 3);
        assert_eq!(star.out_degree(red.root), 2);
    }

    #[test]
    fn case2a_leaves_2connected_alone() {
        let d = Digraph::from_arcs(4, [(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        let red = exhaust_case2a(&d, 0).unwrap();
        assert!(red.steps.is_empty());
        assert_eq!(red.digraph, d);
    }

    #[test]
    fn lifting_contractions_restores_a_branching() {
        let d = Digraph::from_arcs(5, [(0, 1), (1, 2), (2, 3), (2, 4)]).unwrap();
        let red = exhaust_case2a(&d, 0).unwrap();
        let t = OutTree::bfs_branching(&red.digraph, red.root).unwrap();
        let lifted = red.lift_branching(&t).unwrap();
        lifted.validate_branching(&d).unwrap();
        assert!(lifted.leaf_count() >= t.leaf_count());
    }

    #[test]
    fn two_connected_thresholds() {
        // Bidirected 4-cycle: no nice vertex, every in-degree 2.
        let arcs = (0..4).flat_map(|i| [(i, (i + 1) % 4), ((i + 1) % 4, i)]);
        let c4 = Digraph::from_arcs(4, arcs).unwrap();
        match two_connected_analysis(&c4, 0, 10).unwrap() {
            TwoConnectedOutcome::Separator { s, alpha, beta } => {
                assert!(s.is_empty());
                assert_eq!((alpha, beta), (0, 0));
            }
            other => panic!("unexpected {other:?}"),
        }
        let path = Digraph::from_arcs(3, [(0, 1), (1, 2)]).unwrap();
        assert!(two_connected_analysis(&path, 0, 1).is_err());
    }

    #[test]
    fn force_cut_arcs_single_exchange() {
        // r=0 -> x=1 -> {y=2, w=3}; w -> y. Cut arcs (1,2),(1,3).
        let d = Digraph::from_arcs(4, [(0, 1), (1, 2), (1, 3), (3, 2)]).unwrap();
        let t = OutTree::from_arcs(0, [(0, 1), (1, 3), (3, 2)]).unwrap();
        let a_c: BTreeSet<_> = [(1, 2), (1, 3)].into_iter().collect();
        let out = force_cut_arcs(&d, 0, &t, &a_c).unwrap();
        assert!(a_c.iter().all(|&(x, y)| out.parent[&y] == x));
        assert!(out.leaf_count() >= t.leaf_count());
        let same = force_cut_arcs(&d, 0, &out, &a_c).unwrap();
        assert_eq!(same, out);
    }

    #[test]
    fn dup_definition() {
        let d = Digraph::from_arcs(4, [(0, 1), (1, 2), (1, 3)]).unwrap();
        let dup = build_dup(&d, &set(&[1])).unwrap();
        assert_eq!(dup.ell(), 1);
        assert_eq!(dup.copies[&1], 4);
        let extra: Vec<_> = dup
            .digraph
            .arcs()
            .filter(|&(u, v)| u == 4 || v == 4)
            .collect();
        assert_eq!(extra, vec![(0, 4), (4, 2), (4, 3)]);
        let same = build_dup(&d, &BTreeSet::new()).unwrap();
        assert_eq!(same.digraph, d);
        assert_eq!(same.ell(), 0);
    }

    #[test]
    fn pendant_matching_checks() {
        let d = Digraph::from_arcs(3, [(0, 1), (1, 2)]).unwrap();
        let none = contract_pendant_matching(&d, &BTreeSet::new()).unwrap();
        assert_eq!(
            none.digraph.arcs().collect::<Vec<_>>(),
            d.arcs().collect::<Vec<_>>()
        );
        let bad: BTreeSet<_> = [(0, 1), (1, 2)].into_iter().collect();
        assert!(contract_pendant_matching(&d, &bad).is_err());
        let one: BTreeSet<_> = [(1, 2)].into_iter().collect();
        let c = contract_pendant_matching(&d, &one).unwrap();
        assert_eq!(c.digraph.n(), 2);
        assert_eq!(c.digraph.origins(1), &[1, 2]);
    }

    #[test]
    fn claim3_closed_neighbourhoods_can_meet() {
        // After Case 2a is exhausted, cut vertex x=2 has C(x)={y=3,w=4} and y
        // is itself a cut vertex with C(y)={z=5}, so C[x] and C[y] share y.
        // Open neighbourhoods stay disjoint and the pendant arcs still form a
        // matching.
        let d = Digraph::from_arcs(6, [(0, 2), (0, 1), (1, 2), (2, 3), (2, 4), (4, 3), (3, 5)])
            .unwrap();
        let red = exhaust_case2a(&d, 0).unwrap();
        assert!(red.steps.is_empty());
        let p = cut_profile(&d, 0).unwrap();
        assert_eq!(p.cut_neighborhoods[&2], set(&[3, 4]));
        assert_eq!(p.cut_neighborhoods[&3], set(&[5]));
        assert_eq!(
            p.closed_neighborhood(2)
                .intersection(&p.closed_neighborhood(3))
                .count(),
            1
        );
        assert!(p.cut_neighborhoods[&2].is_disjoint(&p.cut_neighborhoods[&3]));
        let out = reduce_lob(&d, 0, 3).unwrap();
        assert!(matches!(out.outcome, ReductionOutcome::Reduced { .. }));
    }

    #[test]
    fn solve_examples() {
        let opts = LobOptions::default();
        let star = Digraph::from_arcs(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let sol = solve_lob(&star, 3, None, &opts).unwrap();
        assert!(sol.answer);
        let w = sol.witness.unwrap();
        w.validate_branching(&star).unwrap();
        assert_eq!(w.leaf_count(), 3);

        let path = Digraph::from_arcs(5, (0..4).map(|i| (i, i + 1))).unwrap();
        let sol = solve_lob(&path, 2, None, &opts).unwrap();
        assert!(!sol.answer);
        assert_eq!(sol.trace.len(), 5);
    }

    #[test]
    fn single_vertex_counts_as_leaf() {
        let d = Digraph::new(1);
        let sol = solve_lob(&d, 1, Some(0), &LobOptions::default()).unwrap();
        assert!(sol.answer);
        assert!(
            !solve_lob(&d, 2, Some(0), &LobOptions::default())
                .unwrap()
                .answer
        );
    }
}
