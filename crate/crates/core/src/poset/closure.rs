//! Closure of a poset under the generation rules and the completeness test.
//!
//! A part `(T_i, C_i)` with `T_i ⊆ T` contributes `θ_{C_i}^{T_i}` times
//! `∏_{t ∈ T \ T_i}(y - x_t)`, which has entry `∏_{t ∈ T}(x_j - x_t)` at every
//! `j ∈ C_i \ T` and zero elsewhere. A signed sum of parts therefore gives
//! `θ_C^T` exactly when the signed multiplicities agree with `C` outside `T`.
//! The multiplier needs a descending chain below the part unless `T_i = T`.
//!
//! Once some smallest minimal separator has chains for all its components,
//! every `θ_m` is generated and so is `θ_{V \ T}^T` for every `T`; it then
//! serves as an extra part, which covers the complement rule.

use std::collections::{BTreeSet, HashMap, HashSet};

use super::{Origin, PosetError, SeparatorNode, SeparatorPoset};
use crate::graph::{minimal_separators, Graph, VertexSet};

type Key = (VertexSet, VertexSet);

/// Outcome of [`is_complete`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Completeness {
    pub complete: bool,
    /// Elements of the separator poset that do not top a complete chain.
    pub missing: Vec<SeparatorNode>,
    /// Closure elements not in the input poset.
    pub generated: Vec<SeparatorNode>,
    /// Whether all `θ_m` are generated.
    pub all_theta: bool,
}

/// Literal test of the generation hypothesis: `∪_A C_i \ ∪_B C_i = C` and
/// `∪ T_i ⊆ T`. `a` and `b` must partition the indices of `parts`.
pub fn generation_rule(target: &SeparatorNode, parts: &[SeparatorNode], a: &[usize], b: &[usize]) -> bool {
    if parts.is_empty() || a.len() + b.len() != parts.len() {
        return false;
    }
    let mut seen = vec![false; parts.len()];
    for &i in a.iter().chain(b) {
        if i >= parts.len() || seen[i] {
            return false;
        }
        seen[i] = true;
    }
    let union = |idx: &[usize]| idx.iter().fold(VertexSet::EMPTY, |s, &i| s.union(parts[i].c_set));
    let ts = parts.iter().fold(VertexSet::EMPTY, |s, p| s.union(p.t_set));
    union(a).difference(union(b)) == target.c_set && ts.is_subset(target.t_set)
}

/// `(T, V \ (T ∪ C))`
pub fn complement_rule(g: &Graph, node: &SeparatorNode) -> Result<SeparatorNode, PosetError> {
    let (t, c) = node.key();
    if !node.is_valid(g) {
        return Err(PosetError::InvalidNode { t, c });
    }
    let rest = g.vertices().difference(t.union(c));
    if rest.is_empty() {
        return Err(PosetError::EmptyComplement { t, c });
    }
    Ok(SeparatorNode::new(t, rest, Origin::Generated))
}

struct Setting {
    all: VertexSet,
    minimal: Vec<Key>,
    /// Minimum-size separators with their components.
    smallest: Vec<Vec<Key>>,
    targets: Vec<Key>,
}

impl Setting {
    fn new(g: &Graph) -> Result<Self, PosetError> {
        let seps = minimal_separators(g)?;
        let minimal: Vec<Key> = seps.iter().flat_map(|s| s.components.iter().map(move |&c| (s.t_set, c))).collect();
        let kappa = seps.iter().map(|s| s.t_set.len()).min().unwrap_or(0);
        let smallest = seps
            .iter()
            .filter(|s| s.t_set.len() == kappa)
            .map(|s| s.components.iter().map(|&c| (s.t_set, c)).collect())
            .collect();
        let delta = g.max_degree();
        let mut targets: BTreeSet<Key> = minimal.iter().copied().collect();
        for &(_, c) in &minimal {
            for x in c.subsets() {
                if x.is_empty() || x == c {
                    continue;
                }
                let t = g.boundary(x);
                if t.len() <= delta {
                    targets.insert((t, x));
                }
            }
        }
        Ok(Setting { all: g.vertices(), minimal, smallest, targets: targets.into_iter().collect() })
    }
}

/// Which nodes top a complete chain: `(T, C)` does if `|C| = 1`, or if some
/// `(T', C \ {v})` in the set does with `T' ⊆ T ∪ {v}`.
fn chain_tops(nodes: &BTreeSet<Key>) -> HashSet<Key> {
    let mut order: Vec<Key> = nodes.iter().copied().collect();
    order.sort_by_key(|&(_, c)| c.len());
    let mut ok_by_c: HashMap<VertexSet, Vec<VertexSet>> = HashMap::new();
    let mut ok = HashSet::new();
    for (t, c) in order {
        let good = c.len() == 1
            || c.iter()
                .any(|v| ok_by_c.get(&c.without(v)).is_some_and(|ts| ts.iter().any(|&t2| t2.is_subset(t.with(v)))));
        if good {
            ok_by_c.entry(c).or_default().push(t);
            ok.insert((t, c));
        }
    }
    ok
}

/// Whether `c` is `±m_1 ± m_2 ± m_3` (at most three terms, multiplicities
/// 0 or 1 at every vertex) for masks `m_i` drawn from `masks`.
fn signed_cover(c: u64, masks: &HashSet<u64>) -> bool {
    if masks.contains(&c) {
        return true;
    }
    let list: Vec<u64> = masks.iter().copied().collect();
    for (i, &a) in list.iter().enumerate() {
        // a - b
        if a & c == c && masks.contains(&(a & !c)) {
            return true;
        }
        // a - b - d with b, d disjoint and b ∪ d = a \ c
        if a & c == c {
            let rest = a & !c;
            if list.iter().any(|&b| b & !rest == 0 && b != rest && b != 0 && masks.contains(&(rest & !b))) {
                return true;
            }
        }
        for &b in &list[i + 1..] {
            if a & b != 0 {
                continue;
            }
            let u = a | b;
            // a + b
            if u == c {
                return true;
            }
            // a + b + d
            if u & !c == 0 && masks.contains(&(c & !u)) {
                return true;
            }
            // a + b - d
            if u & c == c && masks.contains(&(u & !c)) {
                return true;
            }
        }
    }
    false
}

struct Closed {
    nodes: BTreeSet<Key>,
    ok: HashSet<Key>,
    all_theta: bool,
}

fn close(setting: &Setting, start: impl IntoIterator<Item = Key>) -> Closed {
    let mut nodes: BTreeSet<Key> = start.into_iter().collect();
    loop {
        let ok = chain_tops(&nodes);
        let all_theta = setting.smallest.iter().any(|comps| comps.iter().all(|k| ok.contains(k)));
        let fresh: Vec<Key> = setting
            .targets
            .iter()
            .filter(|k| !nodes.contains(k))
            .filter(|&&(t, c)| {
                let mut masks: HashSet<u64> = nodes
                    .iter()
                    .filter(|&&(ti, ci)| ti.is_subset(t) && (ti == t || ok.contains(&(ti, ci))))
                    .map(|&(_, ci)| ci.difference(t).bits())
                    .filter(|&m| m != 0)
                    .collect();
                if all_theta {
                    masks.insert(setting.all.difference(t).bits());
                }
                signed_cover(c.bits(), &masks)
            })
            .copied()
            .collect();
        if fresh.is_empty() {
            return Closed { nodes, ok, all_theta };
        }
        nodes.extend(fresh);
    }
}

/// Whether every element of the separator poset of `g` tops a complete chain
/// in the closure of `q`. Elements of the separator poset missing from `q`
/// count as satisfied when the closure regenerates them.
pub fn is_complete(g: &Graph, q: &SeparatorPoset) -> Result<Completeness, PosetError> {
    for n in q.nodes() {
        if !n.is_valid(g) {
            return Err(PosetError::InvalidNode { t: n.t_set, c: n.c_set });
        }
    }
    let setting = Setting::new(g)?;
    let closed = close(&setting, q.nodes().iter().map(SeparatorNode::key));
    let missing: Vec<SeparatorNode> = setting
        .minimal
        .iter()
        .filter(|k| !closed.ok.contains(k))
        .map(|&(t, c)| SeparatorNode::new(t, c, Origin::Minimal))
        .collect();
    let generated = closed
        .nodes
        .iter()
        .filter(|&&(t, c)| !q.contains(t, c))
        .map(|&(t, c)| SeparatorNode::new(t, c, Origin::Generated))
        .collect();
    Ok(Completeness { complete: missing.is_empty(), missing, generated, all_theta: closed.all_theta })
}

/// `q` together with its generated elements.
pub fn generated_closure(g: &Graph, q: &SeparatorPoset) -> Result<SeparatorPoset, PosetError> {
    let report = is_complete(g, q)?;
    let mut out = q.clone();
    for n in report.generated {
        out.insert(n);
    }
    Ok(out)
}

/// Closure membership and chain status, for the heuristic.
pub(super) struct Probe {
    setting: Setting,
}

impl Probe {
    pub(super) fn new(g: &Graph) -> Result<Self, PosetError> {
        Ok(Probe { setting: Setting::new(g)? })
    }

    /// `(closure, chain tops)` of `q`.
    pub(super) fn run(&self, q: &SeparatorPoset) -> (BTreeSet<Key>, HashSet<Key>) {
        let c = close(&self.setting, q.nodes().iter().map(SeparatorNode::key));
        (c.nodes, c.ok)
    }

    pub(super) fn complete(&self, q: &SeparatorPoset) -> bool {
        let (_, ok) = self.run(q);
        self.setting.minimal.iter().all(|k| ok.contains(k))
    }
}

/// Searches all sub-lists of `pool` and all splits `A | B` for a witness of
/// [`generation_rule`] with target `target`. Only parts with `T_i ⊆ T` can
/// qualify, so the search runs over those.
pub fn find_generation(
    target: &SeparatorNode,
    pool: &[SeparatorNode],
) -> Option<(Vec<SeparatorNode>, Vec<usize>, Vec<usize>)> {
    let eligible: Vec<SeparatorNode> = pool.iter().copied().filter(|p| p.t_set.is_subset(target.t_set)).collect();
    let k = eligible.len();
    assert!(k <= 16, "search space too large");
    // each part is absent, in A or in B
    let total = 3usize.pow(k as u32);
    for code in 1..total {
        let (mut parts, mut a, mut b) = (Vec::new(), Vec::new(), Vec::new());
        let mut x = code;
        for p in &eligible {
            match x % 3 {
                1 => {
                    a.push(parts.len());
                    parts.push(*p);
                }
                2 => {
                    b.push(parts.len());
                    parts.push(*p);
                }
                _ => {}
            }
            x /= 3;
        }
        if generation_rule(target, &parts, &a, &b) {
            return Some((parts, a, b));
        }
    }
    None
}
