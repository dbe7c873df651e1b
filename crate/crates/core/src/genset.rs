//! Generating sets from complete posets, tree bases, degree sequences and the
//! bounds on the highest generator degree.

use serde::Serialize;
use thiserror::Error;

use crate::derivation::{theta_power, theta_sep, Derivation, DerivationError};
use crate::graph::{minimal_separators, Graph, GraphError, VertexSet};
use crate::oracle::{Oracle, OracleError};
use crate::poset::{heuristic_minimal_poset, is_complete, PosetError, SeparatorPoset};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GensetError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Derivation(#[from] DerivationError),
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("poset is not complete; missing chains for {missing:?}")]
    Incomplete { missing: Vec<String> },
    #[error("graph is not a tree")]
    NotTree,
    #[error("generator {index} is not homogeneous")]
    NotHomogeneous { index: usize },
    #[error("generators fail to generate in degree {degree}")]
    NotGenerating { degree: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Certification {
    #[serde(rename = "uncertified")]
    Uncertified,
    #[serde(rename = "generates_up_to_P")]
    GeneratesUpToP,
    #[serde(rename = "minimal_up_to_P")]
    MinimalUpToP,
}

/// The quantities bounding `d`: `max{c - 1, t_max} ≤ d ≤ Δ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Bounds {
    pub c_minus_1: usize,
    pub t_max: usize,
    pub delta: usize,
    pub d: usize,
}

impl Bounds {
    pub fn clique_bound(&self) -> bool {
        self.c_minus_1 <= self.d
    }

    pub fn separator_bound(&self) -> bool {
        self.t_max <= self.d
    }

    pub fn degree_bound(&self) -> bool {
        self.d <= self.delta
    }

    pub fn holds(&self) -> bool {
        self.clique_bound() && self.separator_bound() && self.degree_bound()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenSetReport {
    pub generators: Vec<Derivation>,
    pub degree_sequence: Vec<usize>,
    pub bounds: Bounds,
    pub certified: Certification,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cutoff: Option<usize>,
    pub poset: SeparatorPoset,
}

/// Ascending polynomial degrees.
pub fn degree_sequence(gens: &[Derivation]) -> Result<Vec<usize>, GensetError> {
    let mut seq = gens
        .iter()
        .enumerate()
        .map(|(index, d)| d.pdeg().ok_or(GensetError::NotHomogeneous { index }))
        .collect::<Result<Vec<_>, _>>()?;
    seq.sort_unstable();
    Ok(seq)
}

/// Largest minimal separator size; 0 for complete graphs.
pub fn t_max(g: &Graph) -> Result<usize, GensetError> {
    Ok(minimal_separators(g)?.iter().map(|s| s.t_set.len()).max().unwrap_or(0))
}

/// The three bounds on `d` for `g`.
pub fn bounds_report(g: &Graph, d: usize) -> Result<Bounds, GensetError> {
    g.require_connected()?;
    Ok(Bounds { c_minus_1: g.clique_number() - 1, t_max: t_max(g)?, delta: g.max_degree(), d })
}

/// `[0, 1, ..., κ]` together with `m` repeated `Σ_{|T| = m} (|C(T)| - 1)`
/// times, over minimal separators `T`. Sorted.
pub fn predicted_subsequence(g: &Graph) -> Result<Vec<usize>, GensetError> {
    let kappa = g.connectivity()?;
    let mut out: Vec<usize> = (0..=kappa).collect();
    for s in minimal_separators(g)? {
        out.extend(std::iter::repeat_n(s.t_set.len(), s.components.len() - 1));
    }
    out.sort_unstable();
    Ok(out)
}

/// Like [`predicted_subsequence`], counting only full components
/// (`N(C) = T`). Non-full components can be generated by smaller
/// separators, so they need not contribute a generator.
pub fn predicted_subsequence_full(g: &Graph) -> Result<Vec<usize>, GensetError> {
    let kappa = g.connectivity()?;
    let mut out: Vec<usize> = (0..=kappa).collect();
    for s in minimal_separators(g)? {
        out.extend(std::iter::repeat_n(s.t_set.len(), s.full_components(g).count() - 1));
    }
    out.sort_unstable();
    Ok(out)
}

fn contains_multiset(seq: &[usize], want: Vec<usize>) -> bool {
    let mut have = seq.to_vec();
    have.sort_unstable();
    let mut it = have.into_iter();
    want.into_iter().all(|w| it.by_ref().any(|x| x == w))
}

/// Multiset containment of [`predicted_subsequence`] in `seq`.
pub fn subsequence_check(g: &Graph, seq: &[usize]) -> Result<bool, GensetError> {
    Ok(contains_multiset(seq, predicted_subsequence(g)?))
}

/// Multiset containment of [`predicted_subsequence_full`] in `seq`.
pub fn subsequence_check_full(g: &Graph, seq: &[usize]) -> Result<bool, GensetError> {
    Ok(contains_multiset(seq, predicted_subsequence_full(g)?))
}

/// `θ_0, ..., θ_κ` and `θ_C^T` for every node of the complete poset `q`.
/// `θ_κ` is left out when `q` holds every component of some separator of
/// size `κ`, since their sum already yields it. Complete graphs give
/// `θ_0, ..., θ_{ℓ-1}`.
pub fn assemble_generators(g: &Graph, q: &SeparatorPoset) -> Result<GenSetReport, GensetError> {
    g.require_connected()?;
    let n = g.n();
    let kappa = g.connectivity()?;
    let mut generators = Vec::new();
    if g.is_complete() {
        generators.extend((0..n).map(|k| theta_power(k, n)));
    } else {
        let report = is_complete(g, q)?;
        if !report.complete {
            return Err(GensetError::Incomplete { missing: report.missing.iter().map(|m| m.label()).collect() });
        }
        let seps = minimal_separators(g)?;
        let sum_present = seps
            .iter()
            .filter(|s| s.t_set.len() == kappa)
            .any(|s| s.components.iter().all(|&c| q.contains(s.t_set, c)));
        let top = if sum_present { kappa } else { kappa + 1 };
        generators.extend((0..top).map(|k| theta_power(k, n)));
        generators.extend(q.derivations(g)?);
    }
    let degree_sequence = degree_sequence(&generators)?;
    let d = degree_sequence.last().copied().unwrap_or(0);
    Ok(GenSetReport {
        generators,
        degree_sequence,
        bounds: bounds_report(g, d)?,
        certified: Certification::Uncertified,
        cutoff: None,
        poset: q.clone(),
    })
}

/// Checks generation up to `cutoff` with the oracle and drops redundant
/// generators. The result is certified minimal up to `cutoff`.
pub fn certify(g: &Graph, report: GenSetReport, cutoff: usize) -> Result<GenSetReport, GensetError> {
    let oracle = Oracle::new(g)?;
    let v = oracle.verify_generation(&report.generators, cutoff)?;
    if let Some(degree) = v.first_failure {
        return Err(GensetError::NotGenerating { degree });
    }
    let kept = oracle.minimize(&report.generators, cutoff)?;
    let generators: Vec<Derivation> = kept.into_iter().map(|i| report.generators[i].clone()).collect();
    let degree_sequence = degree_sequence(&generators)?;
    let d = degree_sequence.last().copied().unwrap_or(0);
    Ok(GenSetReport {
        generators,
        degree_sequence,
        bounds: bounds_report(g, d)?,
        certified: Certification::MinimalUpToP,
        cutoff: Some(cutoff),
        poset: report.poset,
    })
}

/// Heuristic poset, assembly, and certification up to `cutoff`.
pub fn minimal_generating_set(g: &Graph, cutoff: usize) -> Result<GenSetReport, GensetError> {
    let q = heuristic_minimal_poset(g)?;
    certify(g, assemble_generators(g, &q)?, cutoff)
}

/// The tree basis: `θ_0`, `θ_C^{{v_0}}` for every component `C` at the
/// root `v_0`, and for every other internal vertex `v` the `θ_C^{{v}}` of
/// the components not containing `v_0`. The root is an internal vertex of
/// largest degree, smallest label first.
pub fn tree_basis(g: &Graph) -> Result<Vec<Derivation>, GensetError> {
    if !g.is_tree() || g.n() < 2 {
        return Err(GensetError::NotTree);
    }
    let n = g.n();
    if n == 2 {
        return Ok(vec![theta_power(0, 2), theta_sep(g, VertexSet::singleton(2), VertexSet::singleton(1))?]);
    }
    let root = (1..=n).max_by_key(|&v| (g.degree(v), std::cmp::Reverse(v))).expect("nonempty");
    let mut out = vec![theta_power(0, n)];
    for v in (1..=n).filter(|&v| g.degree(v) >= 2) {
        let t = VertexSet::singleton(v);
        for c in g.connected_components(t)? {
            if v == root || !c.contains(root) {
                out.push(theta_sep(g, t, c)?);
            }
        }
    }
    Ok(out)
}
