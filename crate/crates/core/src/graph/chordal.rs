use super::{Graph, VertexSet};

/// Maximum cardinality search; the reverse of the visit order is a perfect
/// elimination ordering exactly when the graph is chordal.
fn mcs_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut weight = vec![0usize; n + 1];
    let mut visited = VertexSet::EMPTY;
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = g
            .vertices()
            .difference(visited)
            .iter()
            .max_by_key(|&v| (weight[v], std::cmp::Reverse(v)))
            .expect("unvisited vertex");
        visited = visited.with(v);
        order.push(v);
        for w in g.neighbours(v).difference(visited).iter() {
            weight[w] += 1;
        }
    }
    order.reverse();
    order
}

fn is_peo(g: &Graph, order: &[usize]) -> bool {
    let mut later = g.vertices();
    for &v in order {
        later = later.without(v);
        if !g.is_clique(g.neighbours(v).intersection(later)) {
            return false;
        }
    }
    true
}

/// A perfect elimination ordering if `g` is chordal.
pub fn perfect_elimination_ordering(g: &Graph) -> Option<Vec<usize>> {
    let order = mcs_order(g);
    is_peo(g, &order).then_some(order)
}

/// No induced cycle of length at least four.
pub fn is_chordal(g: &Graph) -> bool {
    perfect_elimination_ordering(g).is_some()
}
