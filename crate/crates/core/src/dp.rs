//! Exact dynamic programming over nice tree decompositions of `UG(D)`.
//!
//! One engine serves three objectives: maximum-leaf spanning out-branchings,
//! maximum-internal out-trees under a size cap, and longest directed paths.
//! A partial solution restricted to a bag records, for every bag vertex,
//! whether it is used, whether it already has an in-arc and an out-arc, and
//! which fragment (connected piece of the partial solution) it belongs to.
//! Arcs are decided when their first endpoint is forgotten; at that moment the
//! other endpoint is still in the bag. A fragment whose last bag vertex is
//! forgotten can never grow again, so it must be the finished solution.
//!
//! Tables are keyed by the encoded state; the number of states per bag is
//! bounded by a Bell number of the bag size times `2^O(w)`.

use std::collections::hash_map::Entry;
use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::digraph::{Digraph, OutTree};
use crate::error::{Error, Result};
use crate::treewidth::{NiceKind, NiceTreeDecomposition};

const USED: u8 = 1;
const HAS_IN: u8 = 2;
const HAS_OUT: u8 = 4;
const COMP_SHIFT: u8 = 3;
const NO_COMP: u8 = u8::MAX;
const MAX_BAG: usize = 31;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Mode {
    /// Spanning out-branching from a root, maximize leaves.
    Leaves,
    /// Out-tree from a root with at most `cap` vertices, maximize internal
    /// vertices.
    Internal { cap: u8 },
    /// Directed simple path, maximize arcs.
    Path,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct State {
    slots: Vec<u8>,
    rooted: u8,
    closed: bool,
    size: u8,
}

#[derive(Debug, Clone)]
enum Back {
    Leaf,
    Introduce {
        child: u32,
        used: bool,
    },
    /// Bit `i` of `out` / `inc`: arc from / to the forgotten vertex and the
    /// `i`-th candidate neighbour.
    Forget {
        child: u32,
        out: u32,
        inc: u32,
    },
    Join {
        left: u32,
        right: u32,
    },
}

struct Table {
    entries: HashMap<State, (i32, Back)>,
}

impl Table {
    fn new() -> Self {
        Table {
            entries: HashMap::new(),
        }
    }

    /// Keeps the first of equally good offers.
    fn offer(&mut self, state: State, score: i32, back: Back) {
        match self.entries.entry(state) {
            Entry::Occupied(mut e) => {
                if score > e.get().0 {
                    *e.get_mut() = (score, back);
                }
            }
            Entry::Vacant(e) => {
                e.insert((score, back));
            }
        }
    }

    /// Sorts entries by state so later passes visit them lexicographically.
    fn finish(self) -> Vec<(State, i32, Back)> {
        let mut out: Vec<_> = self
            .entries
            .into_iter()
            .map(|(s, (v, b))| (s, v, b))
            .collect();
        out.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        out
    }
}

fn comp(slot: u8) -> u8 {
    slot >> COMP_SHIFT
}

fn with_comp(slot: u8, c: u8) -> u8 {
    (slot & 0b111) | (c << COMP_SHIFT)
}

/// Relabels fragments by first appearance.
fn normalize(slots: &mut [u8], rooted: &mut u8) {
    let mut map = [NO_COMP; 32];
    let mut next = 0u8;
    for s in slots.iter_mut() {
        if *s & USED == 0 {
            *s = 0;
            continue;
        }
        let c = comp(*s) as usize;
        if map[c] == NO_COMP {
            map[c] = next;
            next += 1;
        }
        *s = with_comp(*s, map[c]);
    }
    if *rooted != NO_COMP {
        *rooted = map[*rooted as usize];
    }
}

/// Size and table telemetry from one run.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DpStats {
    pub width: usize,
    pub nodes: usize,
    pub max_states: usize,
    pub total_states: usize,
}

struct Engine<'a> {
    d: &'a Digraph,
    nice: &'a NiceTreeDecomposition,
    mode: Mode,
    root: Option<usize>,
}

struct Solved {
    tables: Vec<Vec<(State, i32, Back)>>,
    stats: DpStats,
}

impl Engine<'_> {
    fn is_root(&self, v: usize) -> bool {
        self.root == Some(v)
    }

    fn run(&self) -> Result<Solved> {
        let mut tables: Vec<Vec<(State, i32, Back)>> = Vec::with_capacity(self.nice.nodes.len());
        let mut stats = DpStats {
            width: self.nice.width(),
            nodes: self.nice.nodes.len(),
            ..DpStats::default()
        };
        if self.nice.width() + 1 > MAX_BAG {
            return Err(Error::TooLarge {
                what: "bag size for the dynamic program",
                size: self.nice.width() + 1,
                max: MAX_BAG,
            });
        }
        for node in &self.nice.nodes {
            let mut table = Table::new();
            match node.kind {
                NiceKind::Leaf => table.offer(
                    State {
                        slots: Vec::new(),
                        rooted: NO_COMP,
                        closed: false,
                        size: 0,
                    },
                    0,
                    Back::Leaf,
                ),
                NiceKind::Introduce(v) => {
                    let pos = node
                        .bag
                        .binary_search(&v)
                        .expect("introduced vertex in bag");
                    for (i, (s, score, _)) in tables[node.children[0]].iter().enumerate() {
                        self.introduce(&mut table, s, *score, i as u32, v, pos);
                    }
                }
                NiceKind::Forget(v) => {
                    let child = node.children[0];
                    let child_bag = &self.nice.nodes[child].bag;
                    let pos = child_bag
                        .binary_search(&v)
                        .expect("forgotten vertex in child bag");
                    for (i, (s, score, _)) in tables[child].iter().enumerate() {
                        self.forget(&mut table, s, *score, i as u32, v, pos, child_bag);
                    }
                }
                NiceKind::Join => {
                    let (l, r) = (node.children[0], node.children[1]);
                    let mut by_mask: HashMap<Vec<u8>, Vec<usize>> = HashMap::new();
                    for (j, (s, _, _)) in tables[r].iter().enumerate() {
                        by_mask.entry(used_mask(&s.slots)).or_default().push(j);
                    }
                    for (i, (s1, v1, _)) in tables[l].iter().enumerate() {
                        let Some(partners) = by_mask.get(&used_mask(&s1.slots)) else {
                            continue;
                        };
                        for &j in partners {
                            let (s2, v2, _) = &tables[r][j];
                            if let Some(s) = self.join(s1, s2) {
                                table.offer(
                                    s,
                                    v1 + v2,
                                    Back::Join {
                                        left: i as u32,
                                        right: j as u32,
                                    },
                                );
                            }
                        }
                    }
                }
            }
            let finished = table.finish();
            stats.max_states = stats.max_states.max(finished.len());
            stats.total_states += finished.len();
            tables.push(finished);
        }
        Ok(Solved { tables, stats })
    }

    fn introduce(
        &self,
        table: &mut Table,
        s: &State,
        score: i32,
        child: u32,
        v: usize,
        pos: usize,
    ) {
        let spanning = self.mode == Mode::Leaves;
        let must_use = spanning || self.is_root(v);
        if !must_use {
            let mut slots = s.slots.clone();
            slots.insert(pos, 0);
            table.offer(
                State { slots, ..s.clone() },
                score,
                Back::Introduce { child, used: false },
            );
        }
        if s.closed {
            return;
        }
        if let Mode::Internal { cap } = self.mode {
            let active = s.slots.iter().filter(|&&x| x & USED != 0).count();
            if s.size as usize + active + 1 > cap as usize {
                return;
            }
        }
        let fresh = s
            .slots
            .iter()
            .filter(|&&x| x & USED != 0)
            .map(|&x| comp(x) + 1)
            .max()
            .unwrap_or(0);
        let mut slots = s.slots.clone();
        slots.insert(pos, with_comp(USED, fresh));
        let mut rooted = s.rooted;
        if self.is_root(v) {
            rooted = fresh;
        }
        normalize(&mut slots, &mut rooted);
        table.offer(
            State {
                slots,
                rooted,
                closed: s.closed,
                size: s.size,
            },
            score,
            Back::Introduce { child, used: true },
        );
    }

    #[allow(clippy::too_many_arguments)]
    fn forget(
        &self,
        table: &mut Table,
        s: &State,
        score: i32,
        child: u32,
        v: usize,
        pos: usize,
        bag: &[usize],
    ) {
        if s.slots[pos] & USED == 0 {
            let mut slots = s.slots.clone();
            slots.remove(pos);
            table.offer(
                State { slots, ..s.clone() },
                score,
                Back::Forget {
                    child,
                    out: 0,
                    inc: 0,
                },
            );
            return;
        }
        let candidates = self.candidates(v, pos, bag, |q| s.slots[q] & USED != 0);
        let mut work = Work {
            slots: s.slots.clone(),
            rooted: s.rooted,
            arcs: 0,
            out: 0,
            inc: 0,
        };
        self.choose_arcs(
            table,
            s,
            score,
            child,
            v,
            pos,
            bag,
            &candidates,
            0,
            &mut work,
        );
    }

    #[allow(clippy::too_many_arguments)]
    fn choose_arcs(
        &self,
        table: &mut Table,
        s: &State,
        score: i32,
        child: u32,
        v: usize,
        pos: usize,
        bag: &[usize],
        candidates: &[usize],
        at: usize,
        work: &mut Work,
    ) {
        if at == candidates.len() {
            self.finish_forget(table, s, score, child, v, pos, work);
            return;
        }
        self.choose_arcs(
            table,
            s,
            score,
            child,
            v,
            pos,
            bag,
            candidates,
            at + 1,
            work,
        );
        let q = candidates[at];
        let u = bag[q];
        for (tail, head, tp, hp) in [(u, v, q, pos), (v, u, pos, q)] {
            if !self.d.has_arc(tail, head) || !self.arc_allowed(work, tp, hp, head) {
                continue;
            }
            let saved = (work.slots.clone(), work.rooted, work.out, work.inc);
            work.add_arc(tp, hp);
            work.arcs += 1;
            if tail == v {
                work.out |= 1 << at;
            } else {
                work.inc |= 1 << at;
            }
            self.choose_arcs(
                table,
                s,
                score,
                child,
                v,
                pos,
                bag,
                candidates,
                at + 1,
                work,
            );
            work.arcs -= 1;
            (work.slots, work.rooted, work.out, work.inc) = saved;
        }
    }

    /// Bag positions of used neighbours of `v` that may receive an arc.
    fn candidates(
        &self,
        v: usize,
        pos: usize,
        bag: &[usize],
        used: impl Fn(usize) -> bool,
    ) -> Vec<usize> {
        (0..bag.len())
            .filter(|&q| {
                q != pos && used(q) && (self.d.has_arc(v, bag[q]) || self.d.has_arc(bag[q], v))
            })
            .collect()
    }

    fn arc_allowed(&self, work: &Work, tp: usize, hp: usize, head: usize) -> bool {
        let (t, h) = (work.slots[tp], work.slots[hp]);
        if h & HAS_IN != 0 || comp(t) == comp(h) {
            return false;
        }
        match self.mode {
            Mode::Path => t & HAS_OUT == 0,
            _ => !self.is_root(head),
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn finish_forget(
        &self,
        table: &mut Table,
        s: &State,
        score: i32,
        child: u32,
        v: usize,
        pos: usize,
        work: &Work,
    ) {
        let slot = work.slots[pos];
        let mut score = score;
        let mut size = s.size;
        match self.mode {
            Mode::Leaves | Mode::Internal { .. } => {
                if !self.is_root(v) && slot & HAS_IN == 0 {
                    return;
                }
                let has_out = slot & HAS_OUT != 0;
                match self.mode {
                    Mode::Leaves => score += i32::from(!has_out),
                    _ => {
                        score += i32::from(has_out);
                        size += 1;
                    }
                }
            }
            Mode::Path => score += work.arcs,
        }
        let c = comp(slot);
        let others_used = work
            .slots
            .iter()
            .enumerate()
            .any(|(i, &x)| i != pos && x & USED != 0);
        let fragment_survives = work
            .slots
            .iter()
            .enumerate()
            .any(|(i, &x)| i != pos && x & USED != 0 && comp(x) == c);
        let mut closed = s.closed;
        if !fragment_survives {
            let ok = match self.mode {
                Mode::Path => !others_used && !closed,
                _ => work.rooted == c && !others_used && !closed,
            };
            if !ok {
                return;
            }
            closed = true;
        }
        let mut slots = work.slots.clone();
        slots.remove(pos);
        let mut rooted = if fragment_survives || work.rooted != c {
            work.rooted
        } else {
            NO_COMP
        };
        normalize(&mut slots, &mut rooted);
        table.offer(
            State {
                slots,
                rooted,
                closed,
                size,
            },
            score,
            Back::Forget {
                child,
                out: work.out,
                inc: work.inc,
            },
        );
    }

    fn join(&self, a: &State, b: &State) -> Option<State> {
        if a.closed && b.closed {
            return None;
        }
        let k = a.slots.len();
        let mut slots = Vec::with_capacity(k);
        for i in 0..k {
            let (x, y) = (a.slots[i], b.slots[i]);
            if x & USED == 0 {
                slots.push(0);
                continue;
            }
            if x & y & HAS_IN != 0 {
                return None;
            }
            if self.mode == Mode::Path && x & y & HAS_OUT != 0 {
                return None;
            }
            slots.push(USED | ((x | y) & (HAS_IN | HAS_OUT)));
        }
        let size = a.size as usize + b.size as usize;
        if let Mode::Internal { cap } = self.mode {
            let active = slots.iter().filter(|&&x| x & USED != 0).count();
            if size + active > cap as usize {
                return None;
            }
        }
        let mut uf = UnionFind::new(k);
        for side in [a, b] {
            let mut first: [Option<usize>; 32] = [None; 32];
            for (i, &x) in side.slots.iter().enumerate() {
                if x & USED == 0 {
                    continue;
                }
                let c = comp(x) as usize;
                match first[c] {
                    None => first[c] = Some(i),
                    Some(f) => {
                        if !uf.union(f, i) {
                            return None;
                        }
                    }
                }
            }
        }
        for (i, s) in slots.iter_mut().enumerate() {
            if *s & USED != 0 {
                *s = with_comp(*s, uf.find(i) as u8);
            }
        }
        let mut rooted = NO_COMP;
        for side in [a, b] {
            if side.rooted != NO_COMP {
                if let Some(i) = side
                    .slots
                    .iter()
                    .position(|&x| x & USED != 0 && comp(x) == side.rooted)
                {
                    rooted = uf.find(i) as u8;
                }
            }
        }
        normalize(&mut slots, &mut rooted);
        Some(State {
            slots,
            rooted,
            closed: a.closed || b.closed,
            size: size as u8,
        })
    }

    /// Arcs and used vertices of the solution ending in `entry` of the root.
    fn reconstruct(
        &self,
        tables: &[Vec<(State, i32, Back)>],
        entry: usize,
    ) -> (Vec<(usize, usize)>, Vec<usize>) {
        let mut arcs = Vec::new();
        let mut used = Vec::new();
        let mut stack = vec![(self.nice.root(), entry)];
        while let Some((node, idx)) = stack.pop() {
            let spec = &self.nice.nodes[node];
            match &tables[node][idx].2 {
                Back::Leaf => {}
                Back::Introduce { child, used: u } => {
                    if *u {
                        if let NiceKind::Introduce(v) = spec.kind {
                            used.push(v);
                        }
                    }
                    stack.push((spec.children[0], *child as usize));
                }
                Back::Forget { child, out, inc } => {
                    let NiceKind::Forget(v) = spec.kind else {
                        unreachable!("forget back-pointer on a non-forget node")
                    };
                    let child_node = &self.nice.nodes[spec.children[0]];
                    let bag = &child_node.bag;
                    let pos = bag
                        .binary_search(&v)
                        .expect("forgotten vertex in child bag");
                    let state = &tables[spec.children[0]][*child as usize].0;
                    let cands = self.candidates(v, pos, bag, |q| state.slots[q] & USED != 0);
                    for (i, &q) in cands.iter().enumerate() {
                        if out >> i & 1 == 1 {
                            arcs.push((v, bag[q]));
                        }
                        if inc >> i & 1 == 1 {
                            arcs.push((bag[q], v));
                        }
                    }
                    stack.push((spec.children[0], *child as usize));
                }
                Back::Join { left, right } => {
                    stack.push((spec.children[0], *left as usize));
                    stack.push((spec.children[1], *right as usize));
                }
            }
        }
        arcs.sort_unstable();
        used.sort_unstable();
        used.dedup();
        (arcs, used)
    }
}

struct Work {
    slots: Vec<u8>,
    rooted: u8,
    arcs: i32,
    out: u32,
    inc: u32,
}

impl Work {
    fn add_arc(&mut self, tp: usize, hp: usize) {
        self.slots[tp] |= HAS_OUT;
        self.slots[hp] |= HAS_IN;
        let (keep, gone) = (comp(self.slots[tp]), comp(self.slots[hp]));
        for s in self.slots.iter_mut() {
            if *s & USED != 0 && comp(*s) == gone {
                *s = with_comp(*s, keep);
            }
        }
        if self.rooted == gone {
            self.rooted = keep;
        }
    }
}

fn used_mask(slots: &[u8]) -> Vec<u8> {
    slots.iter().map(|s| s & USED).collect()
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    /// Returns false when `a` and `b` were already connected.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

fn check_decomposition(d: &Digraph, nice: &NiceTreeDecomposition) -> Result<()> {
    nice.check_shape()?;
    nice.to_tree_decomposition()
        .validate(&d.underlying_graph())
        .map_err(|v| {
            Error::InvalidDecomposition(
                v.iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join("; "),
            )
        })
}

/// Best spanning out-branching found by [`dp_max_leaves`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaxLeavesResult {
    pub leaves: usize,
    pub branching: OutTree,
    pub stats: DpStats,
}

/// Maximum number of leaves over all `r`-out-branchings of `d`, with a
/// witness; `None` when some vertex is unreachable from `r`.
pub fn dp_max_leaves(
    d: &Digraph,
    r: usize,
    nice: &NiceTreeDecomposition,
) -> Result<Option<MaxLeavesResult>> {
    if r >= d.n() {
        return Err(Error::Precondition(format!("root {r} is not a vertex")));
    }
    check_decomposition(d, nice)?;
    let engine = Engine {
        d,
        nice,
        mode: Mode::Leaves,
        root: Some(r),
    };
    let solved = engine.run()?;
    let top = &solved.tables[nice.root()];
    let best = top
        .iter()
        .enumerate()
        .filter(|(_, (s, _, _))| s.closed)
        .max_by(|a, b| a.1 .1.cmp(&b.1 .1).then(b.0.cmp(&a.0)));
    let Some((idx, (_, score, _))) = best else {
        return Ok(None);
    };
    let (arcs, _) = engine.reconstruct(&solved.tables, idx);
    let branching = OutTree::from_arcs(r, arcs)?;
    Ok(Some(MaxLeavesResult {
        leaves: *score as usize,
        branching,
        stats: solved.stats,
    }))
}

/// Best out-tree found by [`dp_max_internal_outtree`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaxInternalResult {
    pub internal: usize,
    pub size: usize,
    pub tree: OutTree,
    pub stats: DpStats,
}

/// Maximum number of internal vertices over `r`-out-trees (not necessarily
/// spanning) with at most `size_cap` vertices. Among optimal trees the
/// smallest is returned.
pub fn dp_max_internal_outtree(
    d: &Digraph,
    r: usize,
    nice: &NiceTreeDecomposition,
    size_cap: usize,
) -> Result<MaxInternalResult> {
    if r >= d.n() {
        return Err(Error::Precondition(format!("root {r} is not a vertex")));
    }
    if size_cap == 0 {
        return Err(Error::Precondition("size cap must be at least 1".into()));
    }
    check_decomposition(d, nice)?;
    let cap = size_cap.min(d.n()).min(u8::MAX as usize) as u8;
    let engine = Engine {
        d,
        nice,
        mode: Mode::Internal { cap },
        root: Some(r),
    };
    let solved = engine.run()?;
    let top = &solved.tables[nice.root()];
    let (idx, (state, score, _)) = top
        .iter()
        .enumerate()
        .filter(|(_, (s, _, _))| s.closed)
        .max_by(|a, b| {
            a.1 .1
                .cmp(&b.1 .1)
                .then(b.1 .0.size.cmp(&a.1 .0.size))
                .then(b.0.cmp(&a.0))
        })
        .ok_or_else(|| {
            Error::Internal("no out-tree found, the root alone should qualify".into())
        })?;
    let (arcs, _) = engine.reconstruct(&solved.tables, idx);
    let tree = OutTree::from_arcs(r, arcs)?;
    Ok(MaxInternalResult {
        internal: *score as usize,
        size: state.size as usize,
        tree,
        stats: solved.stats,
    })
}

/// Longest directed simple path found by [`dp_longest_path`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LongestPathResult {
    /// Number of arcs.
    pub length: usize,
    /// Vertices in path order.
    pub path: Vec<usize>,
    pub stats: DpStats,
}

/// Maximum number of arcs on a directed simple path of `d`.
pub fn dp_longest_path(d: &Digraph, nice: &NiceTreeDecomposition) -> Result<LongestPathResult> {
    check_decomposition(d, nice)?;
    if d.n() == 0 {
        return Ok(LongestPathResult {
            length: 0,
            path: Vec::new(),
            stats: DpStats::default(),
        });
    }
    let engine = Engine {
        d,
        nice,
        mode: Mode::Path,
        root: None,
    };
    let solved = engine.run()?;
    let top = &solved.tables[nice.root()];
    let (idx, (_, score, _)) = top
        .iter()
        .enumerate()
        .max_by(|a, b| a.1 .1.cmp(&b.1 .1).then(b.0.cmp(&a.0)))
        .ok_or_else(|| Error::Internal("empty root table".into()))?;
    let (arcs, used) = engine.reconstruct(&solved.tables, idx);
    let path = order_path(&arcs, used.first().copied().unwrap_or(0));
    Ok(LongestPathResult {
        length: *score as usize,
        path,
        stats: solved.stats,
    })
}

fn order_path(arcs: &[(usize, usize)], lone: usize) -> Vec<usize> {
    if arcs.is_empty() {
        return vec![lone];
    }
    let next: HashMap<usize, usize> = arcs.iter().copied().collect();
    let heads: std::collections::HashSet<usize> = arcs.iter().map(|a| a.1).collect();
    let start = arcs
        .iter()
        .map(|a| a.0)
        .find(|t| !heads.contains(t))
        .expect("path has a start");
    let mut path = vec![start];
    let mut cur = start;
    while let Some(&nx) = next.get(&cur) {
        path.push(nx);
        cur = nx;
    }
    path
}

/// [`dp_max_leaves`] on a greedy decomposition of `UG(d)`.
pub fn max_leaves(d: &Digraph, r: usize) -> Result<Option<MaxLeavesResult>> {
    let nice = crate::treewidth::nice_decomposition(&d.underlying_graph());
    dp_max_leaves(d, r, &nice)
}

/// [`dp_max_internal_outtree`] on a greedy decomposition of `UG(d)`.
pub fn max_internal_outtree(d: &Digraph, r: usize, size_cap: usize) -> Result<MaxInternalResult> {
    let nice = crate::treewidth::nice_decomposition(&d.underlying_graph());
    dp_max_internal_outtree(d, r, &nice, size_cap)
}

/// [`dp_longest_path`] on a greedy decomposition of `UG(d)`.
pub fn longest_path(d: &Digraph) -> Result<LongestPathResult> {
    let nice = crate::treewidth::nice_decomposition(&d.underlying_graph());
    dp_longest_path(d, &nice)
}
