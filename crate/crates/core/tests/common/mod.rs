//! Independent reference implementations and generators shared by the
//! integration tests. Nothing here calls into the library's algorithms.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use skewrank::OrientedGraph;

/// Rank by Gauss–Jordan elimination over the rationals.
pub fn rational_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
        .collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][c].clone();
        for i in 0..m.len() {
            if i != rank && !m[i][c].is_zero() {
                let f = &m[i][c] / &pivot;
                let pivot_row = m[rank].clone();
                for (x, p) in m[i].iter_mut().zip(&pivot_row).skip(c) {
                    *x -= &f * p;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn adjacency_rows(n: usize, arcs: &[(usize, usize)]) -> Vec<Vec<i64>> {
    let mut a = vec![vec![0; n]; n];
    for &(u, v) in arcs {
        a[u][v] = 1;
        a[v][u] = 1;
    }
    a
}

pub fn skew_rows(n: usize, arcs: &[(usize, usize)]) -> Vec<Vec<i64>> {
    let mut s = vec![vec![0; n]; n];
    for &(u, v) in arcs {
        s[u][v] = 1;
        s[v][u] = -1;
    }
    s
}

/// Maximum matching by trying every edge subset in order of size.
pub fn brute_matching(n: usize, edges: &[(usize, usize)]) -> usize {
    fn go(i: usize, edges: &[(usize, usize)], used: &mut Vec<bool>) -> usize {
        if i == edges.len() {
            return 0;
        }
        let skip = go(i + 1, edges, used);
        let (u, v) = edges[i];
        if used[u] || used[v] {
            return skip;
        }
        used[u] = true;
        used[v] = true;
        let take = 1 + go(i + 1, edges, used);
        used[u] = false;
        used[v] = false;
        skip.max(take)
    }
    go(0, edges, &mut vec![false; n])
}

/// `|E| - |V| + components`, via union-find.
pub fn union_find_d(n: usize, edges: &[(usize, usize)]) -> usize {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    let mut comps = n;
    for &(u, v) in edges {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a != b {
            parent[a] = b;
            comps -= 1;
        }
    }
    edges.len() + comps - n
}

/// Product of `s_{v_i v_{i+1}}` around a closed vertex sequence, read
/// straight off an arc list.
pub fn arc_sign_product(arcs: &[(usize, usize)], seq: &[usize]) -> i32 {
    let mut prod = 1;
    for i in 0..seq.len() {
        let (a, b) = (seq[i], seq[(i + 1) % seq.len()]);
        if arcs.contains(&(a, b)) {
            continue;
        } else if arcs.contains(&(b, a)) {
            prod = -prod;
        } else {
            return 0;
        }
    }
    prod
}

/// Whether some sequence of pendant-plus-neighbour deletions, in any order,
/// ends with no pendant vertices and only `target` cycles and isolated
/// vertices left. Plain recursion over vertex sets.
pub fn any_order_reduces(n: usize, edges: &[(usize, usize)], target: usize) -> bool {
    let alive = vec![true; n];
    search(&alive, edges, target, &mut std::collections::HashMap::new())
}

fn search(
    alive: &[bool],
    edges: &[(usize, usize)],
    target: usize,
    memo: &mut std::collections::HashMap<Vec<bool>, bool>,
) -> bool {
    if let Some(&r) = memo.get(alive) {
        return r;
    }
    let live: Vec<(usize, usize)> = edges.iter().copied().filter(|&(u, v)| alive[u] && alive[v]).collect();
    let mut deg = vec![0; alive.len()];
    for &(u, v) in &live {
        deg[u] += 1;
        deg[v] += 1;
    }
    let pendants: Vec<usize> = (0..alive.len()).filter(|&v| alive[v] && deg[v] == 1).collect();
    let result = if pendants.is_empty() {
        let remaining = alive.iter().filter(|&&a| a).count();
        let all_deg_ok = (0..alive.len()).all(|v| !alive[v] || deg[v] == 0 || deg[v] == 2);
        let cycles = live.len() + component_count(alive, &live) - remaining;
        all_deg_ok && cycles == target
    } else {
        pendants.iter().any(|&y| {
            let x = live.iter().find_map(|&(u, v)| if u == y { Some(v) } else if v == y { Some(u) } else { None }).unwrap();
            let mut next = alive.to_vec();
            next[x] = false;
            next[y] = false;
            search(&next, edges, target, memo)
        })
    };
    memo.insert(alive.to_vec(), result);
    result
}

fn component_count(alive: &[bool], live: &[(usize, usize)]) -> usize {
    let n = alive.len();
    let mut seen = vec![false; n];
    let mut count = 0;
    for s in 0..n {
        if !alive[s] || seen[s] {
            continue;
        }
        count += 1;
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(u) = stack.pop() {
            for &(a, b) in live {
                let w = if a == u { b } else if b == u { a } else { continue };
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    count
}

/// Oriented graphs on `1..max_n` vertices, each pair absent or oriented
/// either way with the given odds.
pub fn oriented_graph(max_n: usize) -> impl Strategy<Value = OrientedGraph> {
    (1..max_n).prop_flat_map(|n| {
        prop::collection::vec(prop_oneof![2 => Just(0u8), 1 => Just(1u8), 1 => Just(2u8)], n * (n - 1) / 2)
            .prop_map(move |digits| {
                let mut arcs = Vec::new();
                let mut k = 0;
                for u in 0..n {
                    for v in u + 1..n {
                        match digits[k] {
                            1 => arcs.push((u, v)),
                            2 => arcs.push((v, u)),
                            _ => {}
                        }
                        k += 1;
                    }
                }
                OrientedGraph::new(n, arcs).unwrap()
            })
    })
}
