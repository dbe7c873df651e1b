//! Separator posets: pairs `(T, C)` ordered by inclusion of `C`, their
//! descending chains, the closure under generation rules and a heuristic for
//! small complete posets.

mod closure;
mod dot;
mod heuristic;

use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::derivation::{theta_sep_union, Derivation, DerivationError};
use crate::graph::{is_minimal_separator, minimal_separators, Graph, GraphError, VertexSet};

pub use closure::{complement_rule, find_generation, generated_closure, generation_rule, is_complete, Completeness};
pub use dot::to_dot;
pub use heuristic::heuristic_minimal_poset;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Derivation(#[from] DerivationError),
    #[error("{c} is not a union of components of G \\ {t}")]
    InvalidNode { t: VertexSet, c: VertexSet },
    #[error("ordering {ordering:?} is not a permutation of {c}")]
    NotPermutation { ordering: Vec<usize>, c: VertexSet },
    #[error("complement of {c} with respect to {t} is empty")]
    EmptyComplement { t: VertexSet, c: VertexSet },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Origin {
    Minimal,
    Augmented,
    Generated,
}

/// A pair `(T, C)` with `C` a union of components of `G \ T`, standing for
/// the derivation `θ_C^T`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SeparatorNode {
    pub t_set: VertexSet,
    pub c_set: VertexSet,
    pub origin: Origin,
}

impl SeparatorNode {
    pub fn new(t_set: VertexSet, c_set: VertexSet, origin: Origin) -> Self {
        SeparatorNode { t_set, c_set, origin }
    }

    pub fn key(&self) -> (VertexSet, VertexSet) {
        (self.t_set, self.c_set)
    }

    /// Whether `C` is a nonempty union of components of `G \ T`.
    pub fn is_valid(&self, g: &Graph) -> bool {
        !self.c_set.is_empty()
            && self.c_set.is_disjoint(self.t_set)
            && self.c_set.union(self.t_set).is_subset(g.vertices())
            && g.boundary(self.c_set).is_subset(self.t_set)
    }

    pub fn derivation(&self, g: &Graph) -> Result<Derivation, DerivationError> {
        theta_sep_union(g, self.t_set, self.c_set)
    }

    /// Rendered as `[t∈T],{v∈C}`, e.g. `[3,4],{2}`.
    pub fn label(&self) -> String {
        let t: Vec<String> = self.t_set.iter().map(|v| v.to_string()).collect();
        format!("[{}],{}", t.join(","), self.c_set)
    }

    fn sort_key(&self) -> (usize, VertexSet, VertexSet) {
        (self.t_set.len(), self.t_set, self.c_set)
    }
}

impl fmt::Display for SeparatorNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl Serialize for SeparatorNode {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("SeparatorNode", 3)?;
        st.serialize_field("T", &self.t_set)?;
        st.serialize_field("C", &self.c_set)?;
        st.serialize_field("origin", &self.origin)?;
        st.end()
    }
}

/// Nodes ordered by `(T, C) ≤ (T', C')` iff `C ⊆ C'`. Kept sorted by
/// `(|T|, T, C)`; at most one node per pair `(T, C)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SeparatorPoset {
    nodes: Vec<SeparatorNode>,
}

impl SeparatorPoset {
    pub fn new<I: IntoIterator<Item = SeparatorNode>>(nodes: I) -> Self {
        let mut p = SeparatorPoset::default();
        for n in nodes {
            p.insert(n);
        }
        p
    }

    pub fn nodes(&self) -> &[SeparatorNode] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn contains(&self, t: VertexSet, c: VertexSet) -> bool {
        self.position(t, c).is_some()
    }

    fn position(&self, t: VertexSet, c: VertexSet) -> Option<usize> {
        self.nodes.iter().position(|n| n.key() == (t, c))
    }

    /// Adds `node` unless its pair is already present.
    pub fn insert(&mut self, node: SeparatorNode) -> bool {
        if self.contains(node.t_set, node.c_set) {
            return false;
        }
        let at = self.nodes.partition_point(|n| n.sort_key() < node.sort_key());
        self.nodes.insert(at, node);
        true
    }

    pub fn remove(&mut self, t: VertexSet, c: VertexSet) -> Option<SeparatorNode> {
        self.position(t, c).map(|i| self.nodes.remove(i))
    }

    /// `nodes[i] ≤ nodes[j]`
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.nodes[i].c_set.is_subset(self.nodes[j].c_set)
    }

    /// Covering pairs `(i, j)`: `C_i ⊊ C_j` with nothing strictly between.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let n = self.nodes.len();
        let lt = |i: usize, j: usize| {
            let (a, b) = (self.nodes[i].c_set, self.nodes[j].c_set);
            a != b && a.is_subset(b)
        };
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if lt(i, j) && !(0..n).any(|k| lt(i, k) && lt(k, j)) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn derivations(&self, g: &Graph) -> Result<Vec<Derivation>, DerivationError> {
        self.nodes.iter().map(|n| n.derivation(g)).collect()
    }
}

impl Serialize for SeparatorPoset {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("SeparatorPoset", 2)?;
        st.serialize_field("nodes", &self.nodes)?;
        st.serialize_field("covers", &self.hasse_edges())?;
        st.end()
    }
}

/// All `(T, C)` with `T` a minimal separator and `C` a component of `G \ T`.
/// Complete graphs have no minimal separators and give the empty poset.
pub fn build_poset(g: &Graph) -> Result<SeparatorPoset, PosetError> {
    let seps = minimal_separators(g)?;
    Ok(SeparatorPoset::new(
        seps.iter().flat_map(|s| s.components.iter().map(move |&c| SeparatorNode::new(s.t_set, c, Origin::Minimal))),
    ))
}

/// The chain `(T_i, C_i)` with `C_i` the first `i` vertices of `ordering` and
/// `T_i = N(C_i) \ C_i`. The last element has `C_k = C` and `T_k ⊆ T`.
pub fn descending_chain(
    g: &Graph,
    t: VertexSet,
    c: VertexSet,
    ordering: &[usize],
) -> Result<Vec<SeparatorNode>, PosetError> {
    g.check_set(t.union(c))?;
    if !SeparatorNode::new(t, c, Origin::Minimal).is_valid(g) {
        return Err(PosetError::InvalidNode { t, c });
    }
    let as_set = VertexSet::from_vertices(ordering.iter().copied());
    if ordering.len() != c.len() || as_set != c {
        return Err(PosetError::NotPermutation { ordering: ordering.to_vec(), c });
    }
    let mut prefix = VertexSet::EMPTY;
    Ok(ordering
        .iter()
        .map(|&v| {
            prefix = prefix.with(v);
            let ti = g.boundary(prefix);
            SeparatorNode::new(ti, prefix, origin_of(g, ti, prefix))
        })
        .collect())
}

/// The chain for the ascending ordering of `C`.
pub fn default_chain(g: &Graph, t: VertexSet, c: VertexSet) -> Result<Vec<SeparatorNode>, PosetError> {
    descending_chain(g, t, c, &c.to_vec())
}

fn origin_of(g: &Graph, t: VertexSet, c: VertexSet) -> Origin {
    let is_component = g.is_connected_set(c) && g.boundary(c).is_subset(t);
    if is_component && is_minimal_separator(g, t) {
        Origin::Minimal
    } else {
        Origin::Augmented
    }
}
