//! Named graph families and isomorphism-free enumeration of small graphs.

use std::collections::BTreeMap;

use super::{Graph, VertexSet};

pub fn complete(n: usize) -> Graph {
    let mut g = Graph::empty(n).expect("size");
    for a in 1..=n {
        for b in a + 1..=n {
            g.add_edge(a, b).expect("in range");
        }
    }
    g
}

/// The path `1 - 2 - ... - n`.
pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (i, i + 1))).expect("in range")
}

/// The cycle `1 - 2 - ... - n - 1`.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3);
    Graph::from_edges(n, (1..=n).map(|i| (i, i % n + 1))).expect("in range")
}

/// The star with centre `n` and leaves `1..n`.
pub fn star(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (i, n))).expect("in range")
}

/// Complement of the cycle `1 - 2 - ... - n - 1`.
pub fn antihole(n: usize) -> Graph {
    cycle(n).complement()
}

/// Vertex invariant used to shrink the permutation search.
fn vertex_class(g: &Graph, v: usize) -> (usize, Vec<usize>) {
    let mut nd: Vec<usize> = g.neighbours(v).iter().map(|w| g.degree(w)).collect();
    nd.sort_unstable();
    (g.degree(v), nd)
}

fn upper_code(g: &Graph, perm: &[usize]) -> u128 {
    // perm[k] = original vertex placed at position k + 1
    let n = g.n();
    let mut code = 0u128;
    for j in 1..n {
        for i in 0..j {
            code <<= 1;
            if g.has_edge(perm[i], perm[j]) {
                code |= 1;
            }
        }
    }
    code
}

/// A relabelling-invariant code: equal codes iff the graphs are isomorphic.
/// Only meant for small graphs (`n <= 15`).
pub fn canonical_form(g: &Graph) -> (usize, u128) {
    let n = g.n();
    assert!(n <= 15, "canonical_form is for small graphs");
    let mut classes: BTreeMap<(usize, Vec<usize>), Vec<usize>> = BTreeMap::new();
    for v in 1..=n {
        classes.entry(vertex_class(g, v)).or_default().push(v);
    }
    let blocks: Vec<Vec<usize>> = classes.into_values().collect();

    fn search(g: &Graph, blocks: &[Vec<usize>], bi: usize, used: VertexSet, perm: &mut Vec<usize>, best: &mut u128) {
        if bi == blocks.len() {
            *best = (*best).max(upper_code(g, perm));
            return;
        }
        let placed_in_block = perm.len() - blocks[..bi].iter().map(Vec::len).sum::<usize>();
        if placed_in_block == blocks[bi].len() {
            search(g, blocks, bi + 1, used, perm, best);
            return;
        }
        for &v in &blocks[bi] {
            if !used.contains(v) {
                perm.push(v);
                search(g, blocks, bi, used.with(v), perm, best);
                perm.pop();
            }
        }
    }

    let mut best = 0u128;
    search(g, &blocks, 0, VertexSet::EMPTY, &mut Vec::with_capacity(n), &mut best);
    (n, best)
}

/// One representative per isomorphism class of connected graphs on `n`
/// vertices, in a deterministic order.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    assert!((1..=8).contains(&n));
    if n == 1 {
        return vec![Graph::empty(1).expect("size")];
    }
    let mut seen = BTreeMap::new();
    for base in connected_graphs(n - 1) {
        for nbrs in VertexSet::full(n - 1).subsets().skip(1) {
            let mut g = Graph::empty(n).expect("size");
            for (a, b) in base.edges() {
                g.add_edge(a, b).expect("in range");
            }
            for w in nbrs.iter() {
                g.add_edge(w, n).expect("in range");
            }
            seen.entry(canonical_form(&g)).or_insert(g);
        }
    }
    seen.into_values().collect()
}

/// One representative per isomorphism class of trees on `n` vertices.
pub fn unlabeled_trees(n: usize) -> Vec<Graph> {
    assert!((1..=12).contains(&n));
    if n == 1 {
        return vec![Graph::empty(1).expect("size")];
    }
    let mut seen = BTreeMap::new();
    for base in unlabeled_trees(n - 1) {
        for v in 1..n {
            let mut g = Graph::empty(n).expect("size");
            for (a, b) in base.edges() {
                g.add_edge(a, b).expect("in range");
            }
            g.add_edge(v, n).expect("in range");
            seen.entry(canonical_form(&g)).or_insert(g);
        }
    }
    seen.into_values().collect()
}

/// All labelled trees on `n >= 2` vertices, decoded from Prüfer sequences.
pub fn labeled_trees(n: usize) -> Vec<Graph> {
    assert!((2..=8).contains(&n));
    let mut out = Vec::new();
    let total = n.pow(n as u32 - 2);
    for code in 0..total {
        let mut seq = Vec::with_capacity(n - 2);
        let mut c = code;
        for _ in 0..n - 2 {
            seq.push(c % n + 1);
            c /= n;
        }
        let mut degree = vec![1usize; n + 1];
        for &s in &seq {
            degree[s] += 1;
        }
        let mut g = Graph::empty(n).expect("size");
        for &s in &seq {
            let leaf = (1..=n).find(|&v| degree[v] == 1).expect("leaf");
            g.add_edge(leaf, s).expect("in range");
            degree[leaf] -= 1;
            degree[s] -= 1;
        }
        let rest: Vec<usize> = (1..=n).filter(|&v| degree[v] == 1).collect();
        g.add_edge(rest[0], rest[1]).expect("in range");
        out.push(g);
    }
    out
}
