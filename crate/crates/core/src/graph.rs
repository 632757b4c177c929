//! Simple undirected graphs, their orientations, and the structural
//! decompositions the rank machinery relies on.
//!
//! Vertices are dense ids `0..n`. Every operation that removes vertices
//! relabels the survivors to a dense range again and hands back the
//! [`Relabeling`] it used.

use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Sorted list of distinct vertex ids.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new(ids: impl IntoIterator<Item = usize>) -> Self {
        let mut v: Vec<usize> = ids.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }

    pub fn empty() -> Self {
        VertexSet(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        VertexSet::new(self.iter().chain(other.iter()))
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet::new(iter)
    }
}

/// Maps between the ids of a graph and the ids of a graph derived from it
/// by deleting vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relabeling {
    /// `new_to_old[i]` is the original id of new vertex `i`.
    pub new_to_old: Vec<usize>,
    /// `old_to_new[v]` is `None` for deleted vertices.
    pub old_to_new: Vec<Option<usize>>,
}

impl Relabeling {
    fn from_kept(n: usize, kept: &[usize]) -> Self {
        let mut old_to_new = vec![None; n];
        for (i, &v) in kept.iter().enumerate() {
            old_to_new[v] = Some(i);
        }
        Relabeling {
            new_to_old: kept.to_vec(),
            old_to_new,
        }
    }

    /// Composes `self` (old → mid) with `next` (mid → new).
    pub fn then(&self, next: &Relabeling) -> Relabeling {
        let new_to_old = next.new_to_old.iter().map(|&m| self.new_to_old[m]).collect();
        let old_to_new = self
            .old_to_new
            .iter()
            .map(|m| m.and_then(|m| next.old_to_new[m]))
            .collect();
        Relabeling {
            new_to_old,
            old_to_new,
        }
    }
}

/// A simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    /// Builds a graph, rejecting self-loops, repeated edges and
    /// out-of-range endpoints.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.vertex_count();
        for w in [u, v] {
            if w >= n {
                return Err(Error::VertexOutOfRange { vertex: w, n });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        match self.adj[u].binary_search(&v) {
            Ok(_) => return Err(Error::DuplicateEdge(u.min(v), u.max(v))),
            Err(pos) => self.adj[u].insert(pos, v),
        }
        let pos = self.adj[v].binary_search(&u).unwrap_err();
        self.adj[v].insert(pos, u);
        self.edge_count += 1;
        Ok(())
    }

    /// Path on `q` vertices `0-1-...-(q-1)`.
    pub fn path(q: usize) -> Self {
        Graph::new(q, (1..q).map(|i| (i - 1, i))).expect("path is simple")
    }

    /// Cycle on `q >= 3` vertices `0-1-...-(q-1)-0`.
    pub fn cycle(q: usize) -> Self {
        assert!(q >= 3, "a cycle needs at least 3 vertices");
        Graph::new(q, (0..q).map(|i| (i, (i + 1) % q))).expect("cycle is simple")
    }

    /// Star with centre `0` and `leaves` leaves.
    pub fn star(leaves: usize) -> Self {
        Graph::new(leaves + 1, (1..=leaves).map(|i| (0, i))).expect("star is simple")
    }

    pub fn complete(k: usize) -> Self {
        let edges = (0..k).flat_map(|u| (u + 1..k).map(move |v| (u, v)));
        Graph::new(k, edges).expect("complete graph is simple")
    }

    pub fn vertex_count(&self) -> usize {
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
        u < self.adj.len() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<VertexSet> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        queue.push_back(v);
                    }
                }
            }
            out.push(VertexSet::new(comp));
        }
        out
    }

    /// θ(G), the number of connected components.
    pub fn component_count(&self) -> usize {
        self.components().len()
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    pub fn is_forest(&self) -> bool {
        self.edge_count + self.component_count() == self.vertex_count()
    }

    /// Degree-1 vertices.
    pub fn pendant_vertices(&self) -> VertexSet {
        VertexSet((0..self.vertex_count()).filter(|&v| self.degree(v) == 1).collect())
    }

    /// Isolated (degree-0) vertices.
    pub fn isolated_vertices(&self) -> VertexSet {
        VertexSet((0..self.vertex_count()).filter(|&v| self.degree(v) == 0).collect())
    }

    /// Subgraph induced on `keep` (sorted, distinct, in range), relabeled
    /// in increasing order of the kept ids.
    pub fn induced(&self, keep: &[usize]) -> (Graph, Relabeling) {
        let relabel = Relabeling::from_kept(self.vertex_count(), keep);
        let mut adj = Vec::with_capacity(keep.len());
        let mut twice_edges = 0;
        for &v in keep {
            let ns: Vec<usize> = self.adj[v].iter().filter_map(|&w| relabel.old_to_new[w]).collect();
            twice_edges += ns.len();
            adj.push(ns);
        }
        (
            Graph {
                adj,
                edge_count: twice_edges / 2,
            },
            relabel,
        )
    }

    /// Removes `w` and all incident edges.
    pub fn delete_vertices(&self, w: &VertexSet) -> Result<(Graph, Relabeling)> {
        let n = self.vertex_count();
        if let Some(bad) = w.iter().find(|&v| v >= n) {
            return Err(Error::VertexOutOfRange { vertex: bad, n });
        }
        let keep: Vec<usize> = (0..n).filter(|&v| !w.contains(v)).collect();
        Ok(self.induced(&keep))
    }

    /// Removes a single vertex.
    pub fn without(&self, v: usize) -> Graph {
        let keep: Vec<usize> = (0..self.vertex_count()).filter(|&u| u != v).collect();
        self.induced(&keep).0
    }

    /// Places `other` after `self`, shifting its ids by `self.vertex_count()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.vertex_count();
        let mut adj = self.adj.clone();
        adj.extend(
            other
                .adj
                .iter()
                .map(|ns| ns.iter().map(|&v| v + shift).collect::<Vec<_>>()),
        );
        Graph {
            adj,
            edge_count: self.edge_count + other.edge_count,
        }
    }

    /// Block–cut-tree decomposition (Hopcroft–Tarjan). Isolated vertices
    /// belong to no block.
    pub fn biconnected_blocks(&self) -> BlockDecomposition {
        let n = self.vertex_count();
        let mut st = BlockSearch {
            g: self,
            disc: vec![usize::MAX; n],
            low: vec![0; n],
            time: 0,
            edge_stack: Vec::new(),
            is_cut: vec![false; n],
            blocks: Vec::new(),
        };
        for root in 0..n {
            if st.disc[root] == usize::MAX && self.degree(root) > 0 {
                st.visit(root, None);
            }
        }
        let mut blocks = st.blocks;
        blocks.sort_by(|a, b| a.vertices.cmp(&b.vertices));
        let cut_vertices = VertexSet((0..n).filter(|&v| st.is_cut[v]).collect());
        BlockDecomposition {
            blocks,
            cut_vertices,
        }
    }

    /// Number of cyclic blocks (blocks that are not a single edge) through
    /// each vertex. A vertex lies on some cycle iff its count is positive.
    pub fn cyclic_block_count(&self) -> Vec<usize> {
        let mut count = vec![0; self.vertex_count()];
        for b in self.biconnected_blocks().blocks {
            if b.is_cyclic() {
                for &v in &b.vertices {
                    count[v] += 1;
                }
            }
        }
        count
    }

    /// Whether each vertex lies on at least one cycle.
    pub fn on_cycle(&self) -> Vec<bool> {
        self.cyclic_block_count().into_iter().map(|c| c > 0).collect()
    }

    /// Recognises graphs whose blocks are all edges or chordless cycles,
    /// and lists those cycles.
    pub fn cycle_decomposition(&self) -> CycleDecomposition {
        let blocks = self.biconnected_blocks().blocks;
        let blocks_ok = blocks.iter().all(|b| b.is_edge() || b.is_chordless_cycle());
        if !blocks_ok {
            return CycleDecomposition {
                cycles: Vec::new(),
                blocks_ok: false,
                disjoint: false,
            };
        }
        let mut cycles: Vec<Vec<usize>> = blocks
            .iter()
            .filter(|b| b.is_chordless_cycle())
            .map(|b| b.cycle_sequence())
            .collect();
        cycles.sort();
        let mut hits = vec![0usize; self.vertex_count()];
        for c in &cycles {
            for &v in c {
                hits[v] += 1;
            }
        }
        CycleDecomposition {
            cycles,
            blocks_ok: true,
            disjoint: hits.iter().all(|&h| h <= 1),
        }
    }

    /// A vertex lying on two distinct cycles, when the cycles of this graph
    /// are not pairwise vertex-disjoint.
    pub fn shared_cycle_vertex(&self) -> Option<usize> {
        let count = self.cyclic_block_count();
        if let Some(v) = count.iter().position(|&c| c >= 2) {
            return Some(v);
        }
        self.biconnected_blocks()
            .blocks
            .into_iter()
            .find(|b| b.is_cyclic() && !b.is_chordless_cycle())
            .map(|b| b.vertices[0])
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.vertex_count(), self.edges().collect::<Vec<_>>())
    }
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Graph", 2)?;
        st.serialize_field("n", &self.vertex_count())?;
        st.serialize_field("edges", &self.edges().collect::<Vec<_>>())?;
        st.end()
    }
}

struct BlockSearch<'a> {
    g: &'a Graph,
    disc: Vec<usize>,
    low: Vec<usize>,
    time: usize,
    edge_stack: Vec<(usize, usize)>,
    is_cut: Vec<bool>,
    blocks: Vec<Block>,
}

impl BlockSearch<'_> {
    fn visit(&mut self, u: usize, parent: Option<usize>) {
        self.disc[u] = self.time;
        self.low[u] = self.time;
        self.time += 1;
        let mut children = 0;
        for &v in self.g.neighbors(u) {
            if self.disc[v] == usize::MAX {
                children += 1;
                self.edge_stack.push((u, v));
                self.visit(v, Some(u));
                self.low[u] = self.low[u].min(self.low[v]);
                if self.low[v] >= self.disc[u] {
                    if parent.is_some() {
                        self.is_cut[u] = true;
                    }
                    self.pop_block(u, v);
                }
            } else if Some(v) != parent && self.disc[v] < self.disc[u] {
                self.edge_stack.push((u, v));
                self.low[u] = self.low[u].min(self.disc[v]);
            }
        }
        if parent.is_none() && children > 1 {
            self.is_cut[u] = true;
        }
    }

    fn pop_block(&mut self, u: usize, v: usize) {
        let mut edges = Vec::new();
        while let Some(e) = self.edge_stack.pop() {
            edges.push((e.0.min(e.1), e.0.max(e.1)));
            if e == (u, v) {
                break;
            }
        }
        edges.sort_unstable();
        let vertices = VertexSet::new(edges.iter().flat_map(|&(a, b)| [a, b])).0;
        self.blocks.push(Block { vertices, edges });
    }
}

/// A maximal biconnected subgraph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Block {
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

impl Block {
    pub fn is_edge(&self) -> bool {
        self.edges.len() == 1
    }

    pub fn is_cyclic(&self) -> bool {
        self.edges.len() > 1
    }

    /// `|V| = |E| >= 3` and every vertex has block-degree 2.
    pub fn is_chordless_cycle(&self) -> bool {
        let k = self.vertices.len();
        if k < 3 || self.edges.len() != k {
            return false;
        }
        let mut deg = vec![0usize; k];
        for &(a, b) in &self.edges {
            deg[self.vertices.binary_search(&a).unwrap()] += 1;
            deg[self.vertices.binary_search(&b).unwrap()] += 1;
        }
        deg.iter().all(|&d| d == 2)
    }

    /// Walks a cycle block from its smallest vertex toward that vertex's
    /// smaller block-neighbour.
    pub fn cycle_sequence(&self) -> Vec<usize> {
        let nbrs = |v: usize| -> Vec<usize> {
            let mut ns: Vec<usize> = self
                .edges
                .iter()
                .filter_map(|&(a, b)| {
                    if a == v {
                        Some(b)
                    } else if b == v {
                        Some(a)
                    } else {
                        None
                    }
                })
                .collect();
            ns.sort_unstable();
            ns
        };
        let start = self.vertices[0];
        let mut seq = vec![start];
        let mut prev = start;
        let mut cur = nbrs(start)[0];
        while cur != start {
            seq.push(cur);
            let next = nbrs(cur).into_iter().find(|&w| w != prev).unwrap();
            prev = cur;
            cur = next;
        }
        seq
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockDecomposition {
    pub blocks: Vec<Block>,
    pub cut_vertices: VertexSet,
}

/// Cycle structure of a graph whose blocks are edges or cycles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleDecomposition {
    /// Cycles as vertex sequences, each starting at its smallest vertex;
    /// empty unless `blocks_ok`.
    pub cycles: Vec<Vec<usize>>,
    /// Every block is a single edge or a chordless cycle.
    pub blocks_ok: bool,
    /// `blocks_ok` and no vertex lies on two cycles.
    pub disjoint: bool,
}

/// A graph together with a direction for each of its edges.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OrientedGraph {
    graph: Graph,
    /// One arc per edge, sorted by the unordered pair it orients.
    arcs: Vec<(usize, usize)>,
}

fn pair_key(a: (usize, usize)) -> (usize, usize) {
    (a.0.min(a.1), a.0.max(a.1))
}

impl OrientedGraph {
    /// Builds an oriented graph from arcs `(u, v)` meaning `u → v`.
    pub fn new(n: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut graph = Graph::empty(n);
        let mut list = Vec::new();
        for (u, v) in arcs {
            graph.add_edge(u, v)?;
            list.push((u, v));
        }
        list.sort_unstable_by_key(|&a| pair_key(a));
        Ok(OrientedGraph { graph, arcs: list })
    }

    /// Orients every edge `{u, v}` (with `u < v`) as `u → v` when
    /// `forward(u, v)` is true and `v → u` otherwise.
    pub fn from_graph(graph: &Graph, mut forward: impl FnMut(usize, usize) -> bool) -> Self {
        let arcs = graph
            .edges()
            .map(|(u, v)| if forward(u, v) { (u, v) } else { (v, u) })
            .collect();
        OrientedGraph {
            graph: graph.clone(),
            arcs,
        }
    }

    /// Every edge oriented from smaller to larger id.
    pub fn ascending(graph: &Graph) -> Self {
        Self::from_graph(graph, |_, _| true)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Forgets the orientation.
    pub fn underlying(&self) -> Graph {
        self.graph.clone()
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    /// Arcs `(tail, head)`, sorted by the unordered pair.
    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    /// Arcs in lexicographic `(tail, head)` order.
    pub fn sorted_arcs(&self) -> Vec<(usize, usize)> {
        let mut a = self.arcs.clone();
        a.sort_unstable();
        a
    }

    /// The skew-adjacency entry `s_uv`: `1` for an arc `u → v`, `-1` for
    /// `v → u`, `0` when not adjacent.
    pub fn sign(&self, u: usize, v: usize) -> i32 {
        match self.arcs.binary_search_by_key(&pair_key((u, v)), |&a| pair_key(a)) {
            Ok(i) if self.arcs[i] == (u, v) => 1,
            Ok(_) => -1,
            Err(_) => 0,
        }
    }

    /// Every arc reversed.
    pub fn reversed(&self) -> Self {
        OrientedGraph {
            graph: self.graph.clone(),
            arcs: self.arcs.iter().map(|&(u, v)| (v, u)).collect(),
        }
    }

    /// Induced oriented subgraph on `keep` (sorted, distinct, in range).
    pub fn induced(&self, keep: &[usize]) -> (OrientedGraph, Relabeling) {
        let (graph, relabel) = self.graph.induced(keep);
        let mut arcs: Vec<(usize, usize)> = self
            .arcs
            .iter()
            .filter_map(|&(u, v)| Some((relabel.old_to_new[u]?, relabel.old_to_new[v]?)))
            .collect();
        arcs.sort_unstable_by_key(|&a| pair_key(a));
        (OrientedGraph { graph, arcs }, relabel)
    }

    pub fn delete_vertices(&self, w: &VertexSet) -> Result<(OrientedGraph, Relabeling)> {
        let n = self.vertex_count();
        if let Some(bad) = w.iter().find(|&v| v >= n) {
            return Err(Error::VertexOutOfRange { vertex: bad, n });
        }
        let keep: Vec<usize> = (0..n).filter(|&v| !w.contains(v)).collect();
        Ok(self.induced(&keep))
    }

    pub fn without(&self, v: usize) -> OrientedGraph {
        let keep: Vec<usize> = (0..self.vertex_count()).filter(|&u| u != v).collect();
        self.induced(&keep).0
    }

    pub fn disjoint_union(&self, other: &OrientedGraph) -> OrientedGraph {
        let shift = self.vertex_count();
        let graph = self.graph.disjoint_union(&other.graph);
        let mut arcs = self.arcs.clone();
        arcs.extend(other.arcs.iter().map(|&(u, v)| (u + shift, v + shift)));
        OrientedGraph { graph, arcs }
    }
}

impl fmt::Debug for OrientedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OrientedGraph(n={}, arcs={:?})", self.vertex_count(), self.sorted_arcs())
    }
}
