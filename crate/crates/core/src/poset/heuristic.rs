//! Heuristic for a small complete augmented poset.

use std::collections::HashSet;

use super::closure::Probe;
use super::{build_poset, default_chain, Origin, PosetError, SeparatorNode, SeparatorPoset};
use crate::graph::{minimal_separators, Graph, VertexSet};

type Key = (VertexSet, VertexSet);

/// Augments `q` with default-chain elements until every pair in `goals`
/// tops a complete chain. Each step adds the missing chain element with the
/// smallest `|T_i|`, ties broken on `(T_i, C_i)`. Returns the number added.
fn augment(g: &Graph, probe: &Probe, q: &mut SeparatorPoset, goals: &[Key]) -> Result<usize, PosetError> {
    let mut added = 0;
    loop {
        let (closure, ok) = probe.run(q);
        let mut best: Option<SeparatorNode> = None;
        for &(t, c) in goals.iter().filter(|k| !ok.contains(k)) {
            for n in default_chain(g, t, c)? {
                if closure.contains(&n.key()) {
                    continue;
                }
                if best.is_none_or(|b| (n.t_set.len(), n.t_set, n.c_set) < (b.t_set.len(), b.t_set, b.c_set)) {
                    best = Some(n);
                }
            }
        }
        match best {
            None => return Ok(added),
            Some(n) => {
                q.insert(SeparatorNode::new(n.t_set, n.c_set, Origin::Augmented));
                added += 1;
            }
        }
    }
}

/// Starts from the separator poset, augments until a smallest minimal
/// separator `T_min` has complete chains for all its components (and then
/// until the poset is complete), and finally drops one element of every other
/// minimal separator whenever the result stays complete.
///
/// `T_min` is the smallest separator needing the fewest augmentations, ties
/// broken lexicographically. Complete graphs give the empty poset.
pub fn heuristic_minimal_poset(g: &Graph) -> Result<SeparatorPoset, PosetError> {
    let base = build_poset(g)?;
    if base.is_empty() {
        return Ok(base);
    }
    let probe = Probe::new(g)?;
    let seps = minimal_separators(g)?;
    let kappa = seps.iter().map(|s| s.t_set.len()).min().expect("non-complete graph");

    let mut chosen: Option<(usize, VertexSet, SeparatorPoset)> = None;
    for s in seps.iter().filter(|s| s.t_set.len() == kappa) {
        let goals: Vec<Key> = s.components.iter().map(|&c| (s.t_set, c)).collect();
        let mut q = base.clone();
        let cost = augment(g, &probe, &mut q, &goals)?;
        if chosen.as_ref().is_none_or(|(best, _, _)| cost < *best) {
            chosen = Some((cost, s.t_set, q));
        }
    }
    let (_, t_min, mut q) = chosen.expect("at least one smallest separator");

    let all: Vec<Key> = base.nodes().iter().map(SeparatorNode::key).collect();
    augment(g, &probe, &mut q, &all)?;

    let mut on_chain: HashSet<Key> = HashSet::new();
    for s in seps.iter().filter(|s| s.t_set == t_min) {
        for &c in &s.components {
            on_chain.extend(default_chain(g, t_min, c)?.iter().map(SeparatorNode::key));
        }
    }
    for s in seps.iter().filter(|s| s.t_set != t_min) {
        let mut candidates: Vec<VertexSet> =
            s.components.iter().copied().filter(|&c| !on_chain.contains(&(s.t_set, c))).collect();
        // components meeting T_min cannot lie on its chains; try them first
        candidates.sort_by_key(|&c| (c.is_disjoint(t_min), c));
        for c in candidates {
            let Some(node) = q.remove(s.t_set, c) else { continue };
            if probe.complete(&q) {
                break;
            }
            q.insert(node);
        }
    }
    Ok(q)
}
