use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use super::{Graph, GraphError, VertexSet};

/// A vertex set `T` together with the connected components of `G \ T`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Separator {
    #[serde(rename = "T")]
    pub t_set: VertexSet,
    pub components: Vec<VertexSet>,
    #[serde(rename = "minimal")]
    pub is_minimal: bool,
}

impl Separator {
    /// Describes `t_set` in `g`, deciding minimality by the full-component test.
    pub fn new(g: &Graph, t_set: VertexSet) -> Result<Self, GraphError> {
        let components = g.connected_components(t_set)?;
        let is_minimal = full_component_count(g, t_set, &components) >= 2;
        Ok(Separator { t_set, components, is_minimal })
    }

    /// Components `C` with `N(C) = T`.
    pub fn full_components<'a>(&'a self, g: &'a Graph) -> impl Iterator<Item = VertexSet> + 'a {
        self.components.iter().copied().filter(move |&c| g.boundary(c) == self.t_set)
    }
}

fn full_component_count(g: &Graph, t: VertexSet, comps: &[VertexSet]) -> usize {
    comps.iter().filter(|&&c| g.boundary(c) == t).count()
}

/// Whether `t` is a minimal separator of `g`, i.e. `G \ T` has at least two
/// components whose neighbourhood is all of `T`.
pub fn is_minimal_separator(g: &Graph, t: VertexSet) -> bool {
    let comps = g.components_within(g.vertices().difference(t));
    full_component_count(g, t, &comps) >= 2
}

/// All minimal separators of a connected graph, ordered by size and then
/// lexicographically.
///
/// Uses the close-neighbourhood generation scheme: seeds are `N(C)` for the
/// components `C` of `G \ N[v]`, and each separator `S` spawns `N(C)` for the
/// components of `G \ (S ∪ N(x))`, `x ∈ S`. Every minimal separator arises
/// this way and every generated set is one.
pub fn minimal_separators(g: &Graph) -> Result<Vec<Separator>, GraphError> {
    g.require_connected()?;
    let all = g.vertices();
    let mut found: BTreeSet<(usize, VertexSet)> = BTreeSet::new();
    let mut queue = VecDeque::new();

    let push = |s: VertexSet, found: &mut BTreeSet<(usize, VertexSet)>, q: &mut VecDeque<_>| {
        if !s.is_empty() && found.insert((s.len(), s)) {
            q.push_back(s);
        }
    };

    for v in 1..=g.n() {
        let closed = g.neighbours(v).with(v);
        for c in g.components_within(all.difference(closed)) {
            push(g.boundary(c), &mut found, &mut queue);
        }
    }
    while let Some(s) = queue.pop_front() {
        for x in s.iter() {
            let removed = s.union(g.neighbours(x));
            for c in g.components_within(all.difference(removed)) {
                push(g.boundary(c), &mut found, &mut queue);
            }
        }
    }

    found
        .into_iter()
        .map(|(_, t)| {
            let sep = Separator::new(g, t)?;
            debug_assert!(sep.is_minimal);
            Ok(sep)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{antihole, complete, cycle, path};

    /// Minimal (a,b)-separators straight from the definition.
    fn brute_force(g: &Graph) -> Vec<VertexSet> {
        let all = g.vertices();
        let separates = |t: VertexSet, a: usize, b: usize| g.component_of(a, t) != g.component_of(b, t);
        let mut out: Vec<VertexSet> = all
            .subsets()
            .filter(|&t| {
                let rest = all.difference(t);
                rest.iter().any(|a| {
                    rest.iter()
                        .filter(|&b| b > a)
                        .any(|b| separates(t, a, b) && t.iter().all(|x| !separates(t.without(x), a, b)))
                })
            })
            .collect();
        out.sort_by_key(|t| (t.len(), *t));
        out
    }

    fn sets(g: &Graph) -> Vec<VertexSet> {
        minimal_separators(g).unwrap().into_iter().map(|s| s.t_set).collect()
    }

    #[test]
    fn worked_example_has_one_separator() {
        let g = Graph::from_edges(4, [(1, 4), (2, 4), (3, 4), (2, 3)]).unwrap();
        let seps = minimal_separators(&g).unwrap();
        assert_eq!(seps.len(), 1);
        assert_eq!(seps[0].t_set, VertexSet::singleton(4));
        assert_eq!(seps[0].components, vec![VertexSet::singleton(1), VertexSet::from_vertices([2, 3])]);
    }

    #[test]
    fn antihole_separators_are_neighbourhoods() {
        let g = antihole(6);
        let mut expected: Vec<VertexSet> = (1..=6).map(|v| g.neighbours(v)).collect();
        expected.sort_by_key(|t| (t.len(), *t));
        assert_eq!(sets(&g), expected);
        assert!(sets(&g).iter().all(|t| t.len() == 3));
    }

    #[test]
    fn mixed_size_example() {
        // {3,4} and {2} are minimal (1,5)-separators, {2,5} a minimal (3,4)-separator.
        let g = Graph::from_edges(5, [(1, 2), (2, 3), (2, 4), (3, 5), (4, 5)]).unwrap();
        let found = sets(&g);
        for t in [vec![2], vec![3, 4], vec![2, 5]] {
            assert!(found.contains(&VertexSet::from_vertices(t.clone())), "missing {t:?}");
        }
        assert_eq!(found, brute_force(&g));
    }

    #[test]
    fn agrees_with_brute_force_on_small_graphs() {
        for n in 2..=6 {
            for g in crate::graph::connected_graphs(n) {
                assert_eq!(sets(&g), brute_force(&g), "{g:?}");
            }
        }
    }

    #[test]
    fn complete_and_disconnected() {
        assert!(sets(&complete(5)).is_empty());
        assert_eq!(sets(&path(3)), vec![VertexSet::singleton(2)]);
        assert_eq!(sets(&cycle(4)).len(), 2);
        let disc = Graph::from_edges(3, [(1, 2)]).unwrap();
        assert_eq!(minimal_separators(&disc), Err(GraphError::Disconnected));
    }

    #[test]
    fn separators_have_two_full_components() {
        for g in crate::graph::connected_graphs(6) {
            for sep in minimal_separators(&g).unwrap() {
                assert!(sep.full_components(&g).count() >= 2);
                let covered = sep.components.iter().fold(sep.t_set, |a, &c| a.union(c));
                assert_eq!(covered, g.vertices());
            }
        }
    }
}
