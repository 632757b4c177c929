//! Graph invariants: adjacency and skew-adjacency ranks, nullity,
//! cycle-space dimension, matching number, cycle signs, closed forms for
//! paths and cycles, and the classical inequalities relating them.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, OrientedGraph};
use crate::linalg::IntMatrix;

/// Symmetric 0/1 adjacency matrix.
pub fn adjacency_matrix(g: &Graph) -> IntMatrix {
    let mut m = IntMatrix::zeros(g.vertex_count(), g.vertex_count());
    for (u, v) in g.edges() {
        m.set(u, v, 1);
        m.set(v, u, 1);
    }
    m
}

/// Skew-adjacency matrix: `s_uv = 1`, `s_vu = -1` for every arc `u → v`.
pub fn skew_adjacency_matrix(og: &OrientedGraph) -> IntMatrix {
    let n = og.vertex_count();
    let mut m = IntMatrix::zeros(n, n);
    for &(u, v) in og.arcs() {
        m.set(u, v, 1);
        m.set(v, u, -1);
    }
    m
}

/// Rank of the adjacency matrix, r(G).
pub fn rank_r(g: &Graph) -> usize {
    adjacency_matrix(g).rank()
}

/// Rank of the skew-adjacency matrix, sr(Gσ). Always even.
pub fn skew_rank(og: &OrientedGraph) -> usize {
    let sr = skew_adjacency_matrix(og).rank();
    debug_assert_eq!(sr % 2, 0, "odd skew-rank for {og:?}");
    sr
}

/// Dimension of the cycle space, `|E| - |V| + θ`.
pub fn cyclomatic_d(g: &Graph) -> usize {
    g.edge_count() + g.component_count() - g.vertex_count()
}

/// Sign class of an oriented cycle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OrientationClass {
    OddlyOriented,
    EvenlyOriented,
    OddCycle,
    NotACycle,
}

impl OrientationClass {
    pub fn as_str(self) -> &'static str {
        match self {
            OrientationClass::OddlyOriented => "oddly_oriented",
            OrientationClass::EvenlyOriented => "evenly_oriented",
            OrientationClass::OddCycle => "odd_cycle",
            OrientationClass::NotACycle => "not_a_cycle",
        }
    }
}

/// Product of `s_{v_i v_{i+1}}` around the closed walk `seq`, with
/// `v_{k} = v_0`. Zero if some consecutive pair is not adjacent.
pub fn cycle_sign_product(og: &OrientedGraph, seq: &[usize]) -> i32 {
    let k = seq.len();
    (0..k).map(|i| og.sign(seq[i], seq[(i + 1) % k])).product()
}

/// Class of the cycle traced by `seq` inside `og`.
pub fn cycle_class(og: &OrientedGraph, seq: &[usize]) -> OrientationClass {
    if seq.len() < 3 || cycle_sign_product(og, seq) == 0 {
        return OrientationClass::NotACycle;
    }
    if seq.len() % 2 == 1 {
        return OrientationClass::OddCycle;
    }
    if cycle_sign_product(og, seq) > 0 {
        OrientationClass::EvenlyOriented
    } else {
        OrientationClass::OddlyOriented
    }
}

/// Traversal of a graph that is exactly one cycle, starting at vertex 0 and
/// heading to its smaller neighbour.
pub fn cycle_traversal(g: &Graph) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    if n < 3 || g.edge_count() != n || (0..n).any(|v| g.degree(v) != 2) || !g.is_connected() {
        return None;
    }
    let mut seq = vec![0];
    let (mut prev, mut cur) = (0, g.neighbors(0)[0]);
    while cur != 0 {
        seq.push(cur);
        let next = *g.neighbors(cur).iter().find(|&&w| w != prev).unwrap();
        prev = cur;
        cur = next;
    }
    Some(seq)
}

/// Class of an oriented graph whose underlying graph is a single cycle;
/// anything else is `NotACycle`.
pub fn orientation_class(og: &OrientedGraph) -> OrientationClass {
    match cycle_traversal(og.graph()) {
        Some(seq) => cycle_class(og, &seq),
        None => OrientationClass::NotACycle,
    }
}

/// Closed-form skew-rank of an oriented cycle of length `q`.
pub fn cycle_skew_rank_oracle(q: usize, class: OrientationClass) -> Result<usize> {
    if q < 3 {
        return Err(Error::CycleTooShort(q));
    }
    match class {
        OrientationClass::OddlyOriented => Ok(q),
        OrientationClass::EvenlyOriented => Ok(q - 2),
        OrientationClass::OddCycle => Ok(q - 1),
        OrientationClass::NotACycle => Err(Error::NotACycle),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PathOrCycle {
    Path,
    Cycle,
}

/// Closed-form adjacency rank of `P_q` or `C_q`.
pub fn path_cycle_rank_oracle(kind: PathOrCycle, q: usize) -> Result<usize> {
    match kind {
        PathOrCycle::Path if q == 0 => Err(Error::InvalidParameter("path needs q >= 1".into())),
        PathOrCycle::Path => Ok(if q.is_multiple_of(2) { q } else { q - 1 }),
        PathOrCycle::Cycle if q < 3 => Err(Error::CycleTooShort(q)),
        PathOrCycle::Cycle => Ok(if q.is_multiple_of(4) { q - 2 } else { q }),
    }
}

/// Maximum matching size.
///
/// Forests use leaf-greedy matching in linear time. Other graphs run an
/// exact branch-and-bound: degree-0 vertices are dropped, degree-1 vertices
/// are matched greedily, and otherwise an edge at a maximum-degree vertex is
/// either taken or discarded.
pub fn matching_number(g: &Graph) -> usize {
    if g.is_forest() {
        return forest_matching(g);
    }
    let mut search = MatchingSearch {
        adj: (0..g.vertex_count()).map(|v| g.neighbors(v).to_vec()).collect(),
        alive: vec![true; g.vertex_count()],
        alive_count: g.vertex_count(),
        best: greedy_matching(g),
    };
    search.run(0);
    search.best
}

fn forest_matching(g: &Graph) -> usize {
    let n = g.vertex_count();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut stack: Vec<usize> = (0..n).filter(|&v| deg[v] == 1).collect();
    let mut size = 0;
    while let Some(leaf) = stack.pop() {
        if removed[leaf] || deg[leaf] != 1 {
            continue;
        }
        let parent = *g.neighbors(leaf).iter().find(|&&w| !removed[w]).unwrap();
        size += 1;
        for v in [leaf, parent] {
            removed[v] = true;
            for &w in g.neighbors(v) {
                if !removed[w] {
                    deg[w] -= 1;
                    if deg[w] == 1 {
                        stack.push(w);
                    }
                }
            }
        }
    }
    size
}

fn greedy_matching(g: &Graph) -> usize {
    let mut used = vec![false; g.vertex_count()];
    let mut size = 0;
    for (u, v) in g.edges() {
        if !used[u] && !used[v] {
            used[u] = true;
            used[v] = true;
            size += 1;
        }
    }
    size
}

struct MatchingSearch {
    adj: Vec<Vec<usize>>,
    alive: Vec<bool>,
    alive_count: usize,
    best: usize,
}

enum Undo {
    Vertex(usize, Vec<usize>),
    Edge(usize, usize),
}

impl MatchingSearch {
    fn kill(&mut self, v: usize, log: &mut Vec<Undo>) {
        let ns = std::mem::take(&mut self.adj[v]);
        for &w in &ns {
            self.adj[w].retain(|&x| x != v);
        }
        self.alive[v] = false;
        self.alive_count -= 1;
        log.push(Undo::Vertex(v, ns));
    }

    fn cut(&mut self, u: usize, v: usize, log: &mut Vec<Undo>) {
        self.adj[u].retain(|&x| x != v);
        self.adj[v].retain(|&x| x != u);
        log.push(Undo::Edge(u, v));
    }

    fn undo(&mut self, log: Vec<Undo>) {
        for step in log.into_iter().rev() {
            match step {
                Undo::Vertex(v, ns) => {
                    for &w in &ns {
                        self.adj[w].push(v);
                    }
                    self.adj[v] = ns;
                    self.alive[v] = true;
                    self.alive_count += 1;
                }
                Undo::Edge(u, v) => {
                    self.adj[u].push(v);
                    self.adj[v].push(u);
                }
            }
        }
    }

    fn run(&mut self, matched: usize) {
        let mut log = Vec::new();
        let mut matched = matched;
        // Forced moves: isolated vertices leave, leaves match their neighbour.
        loop {
            let forced = (0..self.alive.len()).find(|&v| self.alive[v] && self.adj[v].len() <= 1);
            let Some(v) = forced else { break };
            if let Some(&w) = self.adj[v].first() {
                self.kill(w, &mut log);
                matched += 1;
            }
            self.kill(v, &mut log);
        }
        self.best = self.best.max(matched);
        if matched + self.alive_count / 2 > self.best {
            let v = (0..self.alive.len())
                .filter(|&v| self.alive[v])
                .max_by_key(|&v| (self.adj[v].len(), std::cmp::Reverse(v)));
            if let Some(v) = v {
                let u = *self.adj[v].iter().min_by_key(|&&u| (self.adj[u].len(), u)).unwrap();
                let mut take = Vec::new();
                self.kill(u, &mut take);
                self.kill(v, &mut take);
                self.run(matched + 1);
                self.undo(take);
                if matched + self.alive_count / 2 > self.best {
                    let mut skip = Vec::new();
                    self.cut(u, v, &mut skip);
                    self.run(matched);
                    self.undo(skip);
                }
            }
        }
        self.undo(log);
    }
}

/// Invariants of an oriented graph and its underlying graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub n: usize,
    #[serde(rename = "edges")]
    pub edge_count: usize,
    pub theta: usize,
    pub d: usize,
    pub r: usize,
    pub sr: usize,
    pub eta: usize,
    /// `|E| - |V| + 1`, present only for connected graphs.
    pub beta: Option<i64>,
    pub m: usize,
    pub p: usize,
}

pub fn invariant_report(og: &OrientedGraph) -> InvariantReport {
    let g = og.graph();
    let n = g.vertex_count();
    let theta = g.component_count();
    let r = rank_r(g);
    InvariantReport {
        n,
        edge_count: g.edge_count(),
        theta,
        d: cyclomatic_d(g),
        r,
        sr: skew_rank(og),
        eta: n - r,
        beta: (theta == 1).then(|| g.edge_count() as i64 - n as i64 + 1),
        m: matching_number(g),
        p: g.pendant_vertices().len(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundStatus {
    Holds,
    Violated,
    Skipped,
}

/// One evaluated inequality `lhs <= rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundCheck {
    pub name: &'static str,
    pub statement: &'static str,
    pub lhs: Option<i64>,
    pub rhs: Option<i64>,
    pub status: BoundStatus,
}

impl BoundCheck {
    fn le(name: &'static str, statement: &'static str, lhs: i64, rhs: i64) -> Self {
        BoundCheck {
            name,
            statement,
            lhs: Some(lhs),
            rhs: Some(rhs),
            status: if lhs <= rhs {
                BoundStatus::Holds
            } else {
                BoundStatus::Violated
            },
        }
    }

    fn skipped(name: &'static str, statement: &'static str) -> Self {
        BoundCheck {
            name,
            statement,
            lhs: None,
            rhs: None,
            status: BoundStatus::Skipped,
        }
    }

    pub fn holds(&self) -> bool {
        self.status != BoundStatus::Violated
    }
}

/// Evaluates the known inequalities between sr, r, d, η, m, β and p.
/// Inequalities whose hypotheses the input does not meet are `Skipped`.
pub fn bound_report(og: &OrientedGraph) -> Vec<BoundCheck> {
    let inv = invariant_report(og);
    bound_report_with(og, &inv)
}

pub(crate) fn bound_report_with(og: &OrientedGraph, inv: &InvariantReport) -> Vec<BoundCheck> {
    let g = og.graph();
    let (sr, r, d, m) = (inv.sr as i64, inv.r as i64, inv.d as i64, inv.m as i64);
    let mut out = vec![
        BoundCheck::le("skew_rank_lower", "r - 2d <= sr", r - 2 * d, sr),
        BoundCheck::le("skew_rank_upper", "sr <= r + 2d", sr, r + 2 * d),
    ];
    match inv.beta {
        Some(beta) => {
            out.push(BoundCheck::le("matching_skew_lower", "2m - 2beta <= sr", 2 * m - 2 * beta, sr));
            out.push(BoundCheck::le("matching_skew_upper", "sr <= 2m", sr, 2 * m));
        }
        None => {
            out.push(BoundCheck::skipped("matching_skew_lower", "2m - 2beta <= sr"));
            out.push(BoundCheck::skipped("matching_skew_upper", "sr <= 2m"));
        }
    }
    // Isolated vertices each add one to the nullity and nothing else, so
    // the inequality is evaluated on the graph without them.
    let isolated = g.isolated_vertices().len() as i64;
    out.push(BoundCheck::le(
        "nullity_cycles_pendants",
        "eta - isolated <= 2d + p",
        inv.eta as i64 - isolated,
        2 * d + inv.p as i64,
    ));
    out.push(BoundCheck::le(
        "matching_rank_lower",
        "ceil((r - d) / 2) <= m",
        (r - d + 1).div_euclid(2),
        m,
    ));
    out.push(BoundCheck::le(
        "matching_rank_upper",
        "m <= floor((r + 2d) / 2)",
        m,
        (r + 2 * d).div_euclid(2),
    ));
    let cd = g.cycle_decomposition();
    if cd.disjoint {
        let total: i64 = cd.cycles.iter().map(|c| c.len() as i64).sum();
        let k = cd.cycles.len() as i64;
        out.push(BoundCheck::le("disjoint_cycle_orders", "sum(q_i) - 2k <= sr", total - 2 * k, sr));
    } else {
        out.push(BoundCheck::skipped("disjoint_cycle_orders", "sum(q_i) - 2k <= sr"));
    }
    out
}
