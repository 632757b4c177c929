//! Graph populations: exhaustive labeled enumeration and seeded random
//! generators.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, OrientedGraph};

/// Largest vertex count accepted by [`enumerate_oriented_graphs`].
pub const MAX_ENUMERATION_N: usize = 6;

/// Unordered vertex pairs of `0..n` in lexicographic order.
fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

/// Number of labeled oriented graphs on `n` vertices, `3^(n(n-1)/2)`.
pub fn oriented_graph_count(n: usize) -> u64 {
    3u64.pow((n * n.saturating_sub(1) / 2) as u32)
}

/// The `index`-th labeled oriented graph on `n` vertices. Each vertex pair,
/// in lexicographic order, reads one base-3 digit of `index` (least
/// significant first): 0 = no edge, 1 = `u → v`, 2 = `v → u`.
pub fn oriented_graph_from_index(n: usize, index: u64) -> OrientedGraph {
    let mut rest = index;
    let mut arcs = Vec::new();
    for (u, v) in pairs(n) {
        match rest % 3 {
            1 => arcs.push((u, v)),
            2 => arcs.push((v, u)),
            _ => {}
        }
        rest /= 3;
    }
    OrientedGraph::new(n, arcs).expect("enumerated arcs are simple")
}

/// Every labeled oriented simple graph on `n <= 6` vertices, once each.
pub fn enumerate_oriented_graphs(n: usize) -> Result<impl Iterator<Item = OrientedGraph>> {
    if n > MAX_ENUMERATION_N {
        return Err(Error::EnumerationTooLarge(n));
    }
    Ok((0..oriented_graph_count(n)).map(move |k| oriented_graph_from_index(n, k)))
}

/// Orients each edge independently and uniformly.
pub fn random_orientation<R: Rng>(g: &Graph, rng: &mut R) -> OrientedGraph {
    OrientedGraph::from_graph(g, |_, _| rng.gen_bool(0.5))
}

pub fn random_oriented_graph(n: usize, edge_prob: f64, seed: u64) -> Result<OrientedGraph> {
    random_oriented_graph_with(n, edge_prob, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Erdős–Rényi graph with each edge present with probability `edge_prob`,
/// then uniformly oriented.
pub fn random_oriented_graph_with<R: Rng>(n: usize, edge_prob: f64, rng: &mut R) -> Result<OrientedGraph> {
    if !(0.0..=1.0).contains(&edge_prob) {
        return Err(Error::InvalidParameter(format!(
            "edge probability {edge_prob} outside [0, 1]"
        )));
    }
    let mut arcs = Vec::new();
    for (u, v) in pairs(n) {
        if rng.gen_bool(edge_prob) {
            arcs.push(if rng.gen_bool(0.5) { (u, v) } else { (v, u) });
        }
    }
    OrientedGraph::new(n, arcs)
}

pub fn random_tree(n: usize, seed: u64) -> Result<Graph> {
    random_tree_with(n, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Uniform labeled tree on `n >= 1` vertices, decoded from a random Prüfer
/// sequence.
pub fn random_tree_with<R: Rng>(n: usize, rng: &mut R) -> Result<Graph> {
    match n {
        0 => Err(Error::InvalidParameter("a tree needs at least one vertex".into())),
        1 => Ok(Graph::empty(1)),
        2 => Ok(Graph::path(2)),
        _ => {
            let code: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
            Graph::new(n, prufer_edges(n, &code))
        }
    }
}

fn prufer_edges(n: usize, code: &[usize]) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; n];
    for &c in code {
        degree[c] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    let mut leaves: std::collections::BTreeSet<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    for &c in code {
        let leaf = *leaves.iter().next().unwrap();
        leaves.remove(&leaf);
        edges.push((leaf, c));
        degree[c] -= 1;
        if degree[c] == 1 {
            leaves.insert(c);
        }
    }
    let mut last = leaves.into_iter();
    let (a, b) = (last.next().unwrap(), last.next().unwrap());
    edges.push((a, b));
    edges
}

pub fn random_unicyclic(n: usize, girth: usize, seed: u64) -> Result<Graph> {
    random_unicyclic_with(n, girth, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// A cycle of length `girth` with random trees grown on it, vertices
/// randomly relabeled.
pub fn random_unicyclic_with<R: Rng>(n: usize, girth: usize, rng: &mut R) -> Result<Graph> {
    if girth < 3 || girth > n {
        return Err(Error::InvalidParameter(format!(
            "unicyclic graph needs 3 <= girth <= n, got girth {girth}, n {n}"
        )));
    }
    let mut edges: Vec<(usize, usize)> = (0..girth).map(|i| (i, (i + 1) % girth)).collect();
    for v in girth..n {
        edges.push((rng.gen_range(0..v), v));
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    Graph::new(n, edges.into_iter().map(|(u, v)| (perm[u], perm[v])))
}

/// Orients a cycle traversal `seq` so the product of skew entries around it
/// is `+1`.
fn evenly_oriented_cycle_arcs<R: Rng>(seq: &[usize], rng: &mut R) -> Vec<(usize, usize)> {
    let q = seq.len();
    let mut forward: Vec<bool> = (0..q).map(|_| rng.gen_bool(0.5)).collect();
    // Each backward arc contributes -1; keep their number even.
    if forward.iter().filter(|&&f| !f).count() % 2 == 1 {
        forward[q - 1] = !forward[q - 1];
    }
    (0..q)
        .map(|i| {
            let (a, b) = (seq[i], seq[(i + 1) % q]);
            if forward[i] {
                (a, b)
            } else {
                (b, a)
            }
        })
        .collect()
}

pub fn construct_lower_optimal(cycle_lengths: &[usize], tree_ops: usize, seed: u64) -> Result<OrientedGraph> {
    construct_lower_optimal_with(cycle_lengths, tree_ops, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Grows a lower-optimal oriented graph backwards from its reduced form.
///
/// Starts from evenly oriented cycles of the given lengths (each `≡ 2 mod
/// 4`) plus up to two isolated vertices, then performs `tree_ops` inverse
/// δ-steps. Each step adds a new vertex `x` with a new pendant `y`, joining
/// `x` to one uniformly chosen existing vertex (or to nothing, starting a
/// new component) and, with probability 1/4, to one more vertex in a
/// different component. Since `x` never closes a cycle, deleting `y` and `x`
/// restores the previous graph, so the cycle structure and the reduction to
/// the starting cycles are preserved. Labels are shuffled at the end.
pub fn construct_lower_optimal_with<R: Rng>(cycle_lengths: &[usize], tree_ops: usize, rng: &mut R) -> Result<OrientedGraph> {
    if let Some(&q) = cycle_lengths.iter().find(|&&q| q < 3 || q % 4 != 2) {
        return Err(Error::InvalidParameter(format!(
            "cycle length {q} is not a cycle length congruent to 2 mod 4"
        )));
    }
    let mut arcs = Vec::new();
    let mut comp_of: Vec<usize> = Vec::new();
    let mut comps = 0;
    for &q in cycle_lengths {
        let start = comp_of.len();
        let seq: Vec<usize> = (start..start + q).collect();
        arcs.extend(evenly_oriented_cycle_arcs(&seq, rng));
        comp_of.extend(std::iter::repeat_n(comps, q));
        comps += 1;
    }
    for _ in 0..rng.gen_range(0..=2) {
        comp_of.push(comps);
        comps += 1;
    }
    let orient = |a: usize, b: usize, rng: &mut R| if rng.gen_bool(0.5) { (a, b) } else { (b, a) };
    for _ in 0..tree_ops {
        let n = comp_of.len();
        let (x, y) = (n, n + 1);
        let pick = rng.gen_range(0..=n);
        let mut joined = Vec::new();
        if pick < n {
            joined.push(pick);
            if rng.gen_ratio(1, 4) {
                let others: Vec<usize> = (0..n).filter(|&v| comp_of[v] != comp_of[pick]).collect();
                if let Some(&w) = others.choose(rng) {
                    joined.push(w);
                }
            }
        }
        let comp = match joined.first() {
            Some(&a) => comp_of[a],
            None => {
                comps += 1;
                comps - 1
            }
        };
        let merged: Vec<usize> = joined.iter().map(|&a| comp_of[a]).collect();
        for c in comp_of.iter_mut() {
            if merged.contains(c) {
                *c = comp;
            }
        }
        comp_of.push(comp);
        comp_of.push(comp);
        for &a in &joined {
            arcs.push(orient(x, a, rng));
        }
        arcs.push(orient(x, y, rng));
    }
    let n = comp_of.len();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    OrientedGraph::new(n, arcs.into_iter().map(|(u, v)| (perm[u], perm[v])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::{cycle_class, cyclomatic_d, OrientationClass};
    use std::collections::HashSet;

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_oriented_graphs(1).unwrap().count(), 1);
        assert_eq!(enumerate_oriented_graphs(2).unwrap().count(), 3);
        assert_eq!(enumerate_oriented_graphs(3).unwrap().count(), 27);
        assert_eq!(oriented_graph_count(4), 729);
        assert_eq!(oriented_graph_count(6), 14_348_907);
        assert!(matches!(enumerate_oriented_graphs(7), Err(Error::EnumerationTooLarge(7))));
    }

    #[test]
    fn enumeration_has_no_duplicates() {
        for n in 1..=4 {
            let seen: HashSet<Vec<(usize, usize)>> =
                enumerate_oriented_graphs(n).unwrap().map(|og| og.sorted_arcs()).collect();
            assert_eq!(seen.len() as u64, oriented_graph_count(n));
        }
    }

    #[test]
    fn tree_examples() {
        for seed in 0..20 {
            let t = random_tree(5, seed).unwrap();
            assert_eq!(t.edge_count(), 4);
            assert!(t.is_connected());
            assert_eq!(cyclomatic_d(&t), 0);
        }
        assert!(random_tree(0, 1).is_err());
        assert_eq!(random_tree(1, 1).unwrap(), Graph::empty(1));
    }

    #[test]
    fn prufer_decodes_known_sequence() {
        // Sequence (3, 3, 3, 4) on 6 vertices decodes to this tree.
        let mut e = prufer_edges(6, &[3, 3, 3, 4]);
        e.sort();
        assert_eq!(e, vec![(0, 3), (1, 3), (2, 3), (3, 4), (4, 5)]);
    }

    #[test]
    fn unicyclic_examples() {
        for seed in 0..20 {
            let g = random_unicyclic(7, 4, seed).unwrap();
            assert_eq!(cyclomatic_d(&g), 1);
            assert!(g.is_connected());
            assert_eq!(g.cycle_decomposition().cycles[0].len(), 4);
        }
        assert!(random_unicyclic(5, 2, 0).is_err());
        assert!(random_unicyclic(5, 6, 0).is_err());
    }

    #[test]
    fn seeds_are_deterministic() {
        assert_eq!(random_tree(12, 99).unwrap(), random_tree(12, 99).unwrap());
        assert_eq!(random_unicyclic(9, 5, 3).unwrap(), random_unicyclic(9, 5, 3).unwrap());
        assert_eq!(
            random_oriented_graph(8, 0.4, 17).unwrap(),
            random_oriented_graph(8, 0.4, 17).unwrap()
        );
        assert_eq!(
            construct_lower_optimal(&[6, 10], 5, 1).unwrap(),
            construct_lower_optimal(&[6, 10], 5, 1).unwrap()
        );
        assert!(random_oriented_graph(4, 1.5, 0).is_err());
    }

    #[test]
    fn constructed_graphs_keep_cycle_structure() {
        for seed in 0..30 {
            let og = construct_lower_optimal(&[6, 10], 8, seed).unwrap();
            let cd = og.graph().cycle_decomposition();
            assert!(cd.disjoint);
            let mut lens: Vec<usize> = cd.cycles.iter().map(Vec::len).collect();
            lens.sort();
            assert_eq!(lens, vec![6, 10]);
            assert!(cd
                .cycles
                .iter()
                .all(|c| cycle_class(&og, c) == OrientationClass::EvenlyOriented));
        }
        assert!(construct_lower_optimal(&[8], 0, 0).is_err());
        assert!(construct_lower_optimal(&[2], 0, 0).is_err());
    }
}
