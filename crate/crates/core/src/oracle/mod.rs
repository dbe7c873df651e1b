//! Degreewise ground truth for `D(A(G))` by linear algebra, with no input
//! from separator theory.
//!
//! Fix a root vertex `v`. Modulo `x_v` the module splits as
//! `D / x_v D ≅ S'·θ_0 ⊕ D'`, where `S'` is the polynomial ring in the other
//! `ℓ - 1` variables and `D'` is the derivation module of the arrangement in
//! `S'` with hyperplanes `x_u` (`u ∈ N(v)`) and `x_u - x_w` (other edges).
//! A homogeneous set generates `D(A)` up to degree `P` iff its image
//! generates `D / x_v D` up to `P`, and both have the same minimal generator
//! degrees. So all heavy work happens in `ℓ - 1` variables.
//!
//! `D'` is parametrised along a BFS spanning tree rooted at `v`: with
//! `g_v = 0` and `g_u = g_parent + (x_u - x_parent) h_u` every tree edge holds
//! automatically, and only non-tree edges give linear equations on the `h_u`.
//!
//! Ranks are taken over `F_p` for a 31-bit prime. For integer matrices the
//! rank mod `p` never exceeds the rank over `Q`, so a span of genuine members
//! computed mod `p` is a lower bound and the module dimension mod `p` an
//! upper bound; when they meet, generation is certified over `Q`.

mod direct;
mod packed;

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::derivation::{is_member, Derivation, DerivationError};
use crate::graph::{Graph, GraphError, VertexSet};
use crate::poly::{rational_mod, ModEchelon, PRIME};
use packed::{Mono, Table};

pub use direct::{graded_basis, module_dimension_exact, span_dimension, GradedBasis};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Derivation(#[from] DerivationError),
    #[error("graphs with more than {max} vertices are not supported here (got {n})")]
    TooLarge { n: usize, max: usize },
    #[error("cutoff {cutoff} is below the maximum degree {delta}")]
    CutoffTooSmall { cutoff: usize, delta: usize },
    #[error("generator {index} is not homogeneous")]
    NotHomogeneous { index: usize },
    #[error("generator {index} is not in D(A(G))")]
    NonMember { index: usize },
    #[error("a coefficient of generator {index} is undefined modulo {prime}")]
    BadPrime { index: usize, prime: u64 },
    #[error("the set does not generate D(A(G)) in degree {degree}")]
    NotGenerating { degree: usize },
}

/// One line of a verification table; dimensions are of the full degree-`p`
/// parts in `(S_p)^ℓ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeRow {
    pub p: usize,
    pub module_dim: usize,
    pub span_dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verification {
    pub generates: bool,
    pub cutoff: usize,
    pub first_failure: Option<usize>,
    /// Rows up to the first failing degree, or up to the cutoff.
    pub table: Vec<DegreeRow>,
}

/// A sparse polynomial in the reduced variables, coefficients in `F_p`.
type Sparse = Vec<(Mono, u64)>;

/// Image of a generator in `D / x_v D`: its polynomial degree and one block
/// per vertex (`θ(x_v)` at the root, `θ(x_u) - θ(x_v)` elsewhere, all taken
/// modulo `x_v`).
#[derive(Debug, Clone)]
struct Image {
    degree: usize,
    blocks: Vec<Sparse>,
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// `dim S_p` in `n` variables.
pub fn monomial_count(n: usize, p: usize) -> usize {
    if n == 0 {
        return usize::from(p == 0);
    }
    binomial(p + n - 1, n - 1)
}

#[derive(Debug, Clone)]
pub struct Oracle<'g> {
    g: &'g Graph,
    prime: u64,
    root: usize,
    n_red: usize,
    /// Reduced variable of each vertex (index 0 unused, root `None`).
    var_of: Vec<Option<usize>>,
    parent: Vec<usize>,
    /// Tree path from each vertex up to, excluding, the root.
    path: Vec<VertexSet>,
    /// Non-tree edges `(i, j)`, with `j` the root when the root is an endpoint.
    non_tree: Vec<(usize, usize)>,
}

impl<'g> Oracle<'g> {
    pub fn new(g: &'g Graph) -> Result<Self, OracleError> {
        Self::with_prime(g, PRIME)
    }

    pub fn with_prime(g: &'g Graph, prime: u64) -> Result<Self, OracleError> {
        g.require_connected()?;
        let n = g.n();
        if n > packed::MAX_VARS + 1 {
            return Err(OracleError::TooLarge { n, max: packed::MAX_VARS + 1 });
        }
        let root = (1..=n).max_by_key(|&u| (g.degree(u), std::cmp::Reverse(u))).unwrap_or(1);
        let mut var_of = vec![None; n + 1];
        for (k, u) in (1..=n).filter(|&u| u != root).enumerate() {
            var_of[u] = Some(k);
        }
        let mut parent = vec![0; n + 1];
        let mut seen = VertexSet::singleton(root);
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for w in g.neighbours(u).iter() {
                if !seen.contains(w) {
                    seen = seen.with(w);
                    parent[w] = u;
                    queue.push_back(w);
                }
            }
        }
        let mut path = vec![VertexSet::EMPTY; n + 1];
        for u in (1..=n).filter(|&u| u != root) {
            let mut w = u;
            let mut p = VertexSet::EMPTY;
            while w != root {
                p = p.with(w);
                w = parent[w];
            }
            path[u] = p;
        }
        let non_tree = g
            .edges()
            .into_iter()
            .filter(|&(a, b)| parent[a] != b && parent[b] != a)
            .map(|(a, b)| if a == root { (b, a) } else { (a, b) })
            .collect();
        Ok(Oracle { g, prime, root, n_red: n - 1, var_of, parent, path, non_tree })
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn root(&self) -> usize {
        self.root
    }

    fn check_cutoff(&self, cutoff: usize) -> Result<(), OracleError> {
        let delta = self.g.max_degree();
        if cutoff < delta {
            return Err(OracleError::CutoffTooSmall { cutoff, delta });
        }
        if cutoff + 1 > packed::MAX_DEGREE {
            return Err(OracleError::TooLarge { n: cutoff, max: packed::MAX_DEGREE - 1 });
        }
        Ok(())
    }

    /// Echelon form of the equations cutting out `D'_q` inside the space of
    /// tree parameters `(h_u)`, `h_u ∈ S'_{q-1}`; column `b·|S'_{q-1}| + k` is
    /// the `k`-th monomial of `h` for reduced variable `b`.
    fn reduced_system(&self, q: usize) -> (ModEchelon, Table) {
        let p = self.prime;
        let mu = Table::new(self.n_red, q.saturating_sub(1));
        let width = if q == 0 { 0 } else { mu.len() };
        let mut ech = ModEchelon::new(self.n_red * width, p);
        if q == 0 {
            return (ech, mu);
        }
        let mut rows: BTreeMap<(usize, Mono), Vec<(u32, u64)>> = BTreeMap::new();
        for (e, &(i, j)) in self.non_tree.iter().enumerate() {
            let si = self.var_of[i].expect("non-root endpoint");
            let sj = self.var_of[j];
            let (pi, pj) = (self.path[i], self.path[j]);
            let moved = pi.union(pj).difference(pi.intersection(pj));
            for a in moved.iter() {
                let sign = if pi.contains(a) { 1 } else { p - 1 };
                let ya = self.var_of[a].expect("path vertex");
                let ypa = self.var_of[self.parent[a]];
                for (k, &m) in mu.list.iter().enumerate() {
                    let col = (ya * width + k) as u32;
                    if let Some(t) = packed::substitute(m + packed::var(ya), si, sj) {
                        rows.entry((e, t)).or_default().push((col, sign));
                    }
                    if let Some(yp) = ypa {
                        if let Some(t) = packed::substitute(m + packed::var(yp), si, sj) {
                            rows.entry((e, t)).or_default().push((col, p - sign));
                        }
                    }
                }
            }
        }
        for row in rows.values() {
            ech.insert(row);
        }
        (ech, mu)
    }

    /// `dim D'_q`.
    pub fn reduced_dimension(&self, q: usize) -> usize {
        let (ech, _) = self.reduced_system(q);
        ech.n_cols() - ech.rank()
    }

    /// `dim D(A(G))_p = dim S_p + Σ_{q ≤ p} dim D'_q`.
    pub fn module_dimension(&self, p: usize) -> usize {
        let reduced: usize = (0..=p).into_par_iter().map(|q| self.reduced_dimension(q)).sum();
        monomial_count(self.g.n(), p) + reduced
    }

    fn image(&self, theta: &Derivation, index: usize) -> Result<Image, OracleError> {
        let n = self.g.n();
        let bad = OracleError::BadPrime { index, prime: self.prime };
        let mut polys: Vec<HashMap<Mono, u64>> = Vec::with_capacity(n);
        for u in 1..=n {
            let mut poly = HashMap::new();
            for (m, c) in theta.coeff(u).terms() {
                let e = m.exponents();
                if e[self.root - 1] > 0 {
                    continue;
                }
                let mut packed_m: Mono = 0;
                for w in (1..=n).filter(|&w| w != self.root) {
                    packed_m += e[w - 1] as u64 * packed::var(self.var_of[w].unwrap());
                }
                let c = rational_mod(c, self.prime).ok_or_else(|| bad.clone())?;
                if c != 0 {
                    poly.insert(packed_m, c);
                }
            }
            polys.push(poly);
        }
        let root_poly = polys[self.root - 1].clone();
        let p = self.prime;
        let blocks = polys
            .into_iter()
            .enumerate()
            .map(|(k, mut poly)| {
                if k + 1 != self.root {
                    for (&m, &c) in &root_poly {
                        let slot = poly.entry(m).or_insert(0);
                        *slot = (*slot + p - c) % p;
                    }
                }
                let mut v: Sparse = poly.into_iter().filter(|&(_, c)| c != 0).collect();
                v.sort_unstable();
                v
            })
            .collect();
        Ok(Image { degree: theta.pdeg().unwrap_or(0), blocks })
    }

    fn images(&self, gens: &[Derivation]) -> Result<Vec<Option<Image>>, OracleError> {
        gens.iter()
            .enumerate()
            .map(|(index, t)| {
                if !is_member(self.g, t)? {
                    return Err(OracleError::NonMember { index });
                }
                if t.is_zero() {
                    return Ok(None);
                }
                if t.pdeg().is_none() {
                    return Err(OracleError::NotHomogeneous { index });
                }
                self.image(t, index).map(Some)
            })
            .collect()
    }

    /// Echelon form of the degree-`p` multiples of the given images, stopping
    /// early once `cap` is reached.
    fn image_span<'a, I>(&self, images: I, p: usize, cap: Option<usize>) -> (ModEchelon, Table)
    where
        I: IntoIterator<Item = &'a Image>,
    {
        let t = Table::new(self.n_red, p);
        let width = t.len();
        let mut ech = ModEchelon::new(self.g.n() * width, self.prime);
        let mut images: Vec<&Image> = images.into_iter().filter(|im| im.degree <= p).collect();
        images.sort_by_key(|im| im.degree);
        'outer: for im in images {
            let shifts = Table::new(self.n_red, p - im.degree);
            for &m in &shifts.list {
                let row: Vec<(u32, u64)> = im
                    .blocks
                    .iter()
                    .enumerate()
                    .flat_map(|(b, poly)| poly.iter().map(move |&(mono, c)| (b, mono, c)))
                    .map(|(b, mono, c)| ((b * width) as u32 + t.position(mono + m), c))
                    .collect();
                ech.insert(&row);
                if cap.is_some_and(|c| ech.rank() >= c) {
                    break 'outer;
                }
            }
        }
        (ech, t)
    }

    /// Checks `span = D(A(G))_p` for every `p ≤ cutoff`.
    pub fn verify_generation(&self, gens: &[Derivation], cutoff: usize) -> Result<Verification, OracleError> {
        self.check_cutoff(cutoff)?;
        let images = self.images(gens)?;
        let present: Vec<&Image> = images.iter().flatten().collect();
        let n = self.g.n();
        let per_degree: Vec<(usize, usize, usize)> = (0..=cutoff)
            .into_par_iter()
            .map(|p| {
                let reduced = self.reduced_dimension(p);
                let target = monomial_count(self.n_red, p) + reduced;
                let (ech, _) = self.image_span(present.iter().copied(), p, Some(target));
                (reduced, target, ech.rank())
            })
            .collect();
        let mut table = Vec::new();
        let mut module_prev = 0;
        let mut reduced_total = 0;
        let mut first_failure = None;
        for (p, &(reduced, target, rank)) in per_degree.iter().enumerate() {
            reduced_total += reduced;
            let module_dim = monomial_count(n, p) + reduced_total;
            let span_dim = rank + module_prev;
            table.push(DegreeRow { p, module_dim, span_dim });
            if rank < target {
                first_failure = Some(p);
                break;
            }
            module_prev = module_dim;
        }
        Ok(Verification { generates: first_failure.is_none(), cutoff, first_failure, table })
    }

    /// Sorted degrees of a minimal homogeneous generating set, found degree by
    /// degree as the dimension of `D'_q` modulo what lower-degree generators
    /// already span, plus the degree-0 generator `θ_0`.
    pub fn minimal_degree_sequence(&self, cutoff: usize) -> Result<Vec<usize>, OracleError> {
        self.check_cutoff(cutoff)?;
        let systems: Vec<(ModEchelon, Table)> = (1..=cutoff).into_par_iter().map(|q| self.reduced_system(q)).collect();
        let p = self.prime;
        let mut seq = vec![0];
        // generators of D' as (degree, entries (block, monomial of h, coefficient))
        let mut gens: Vec<(usize, ReducedEntries)> = Vec::new();
        for (q, (sys, mu)) in (1..=cutoff).zip(&systems) {
            let width = mu.len();
            let free = sys.free_columns();
            if free.is_empty() {
                continue;
            }
            let mut free_pos = vec![u32::MAX; sys.n_cols()];
            for (k, &f) in free.iter().enumerate() {
                free_pos[f] = k as u32;
            }
            let mut w = ModEchelon::new(free.len(), p);
            'fill: for (e, h) in &gens {
                for &m in &Table::new(self.n_red, q - e).list {
                    let row: Vec<(u32, u64)> = h
                        .iter()
                        .map(|&(b, mono, c)| (free_pos[b * width + mu.position(mono + m) as usize], c))
                        .filter(|&(k, _)| k != u32::MAX)
                        .collect();
                    w.insert(&row);
                    if w.rank() == free.len() {
                        break 'fill;
                    }
                }
            }
            for k in (0..free.len()).filter(|&k| !w.is_pivot(k)) {
                let x = sys.kernel_vector(free[k]);
                let h = x
                    .iter()
                    .enumerate()
                    .filter(|&(_, &c)| c != 0)
                    .map(|(col, &c)| (col / width, mu.list[col % width], c))
                    .collect();
                gens.push((q, h));
                seq.push(q);
            }
        }
        Ok(seq)
    }

    /// Indices of generators lying in the span of the multiples of the others
    /// at their own degree. Requires the set to generate up to `cutoff`.
    pub fn find_redundant(&self, gens: &[Derivation], cutoff: usize) -> Result<Vec<usize>, OracleError> {
        let v = self.verify_generation(gens, cutoff)?;
        if let Some(degree) = v.first_failure {
            return Err(OracleError::NotGenerating { degree });
        }
        let images = self.images(gens)?;
        let all: Vec<usize> = (0..gens.len()).collect();
        Ok(all.par_iter().copied().filter(|&i| self.is_redundant(&images, i, |j| j != i)).collect())
    }

    fn is_redundant(&self, images: &[Option<Image>], i: usize, keep: impl Fn(usize) -> bool) -> bool {
        let Some(target) = &images[i] else { return true };
        let others = images.iter().enumerate().filter(|&(j, _)| keep(j)).filter_map(|(_, im)| im.as_ref());
        let (mut ech, t) = self.image_span(others, target.degree, None);
        let width = t.len();
        let row: Vec<(u32, u64)> = target
            .blocks
            .iter()
            .enumerate()
            .flat_map(|(b, poly)| poly.iter().map(move |&(mono, c)| (b, mono, c)))
            .map(|(b, mono, c)| ((b * width) as u32 + t.position(mono), c))
            .collect();
        ech.contains(&row)
    }

    /// Greedily drops redundant generators, highest degree first, and returns
    /// the indices kept. The result generates and has no redundant element.
    pub fn minimize(&self, gens: &[Derivation], cutoff: usize) -> Result<Vec<usize>, OracleError> {
        let v = self.verify_generation(gens, cutoff)?;
        if let Some(degree) = v.first_failure {
            return Err(OracleError::NotGenerating { degree });
        }
        let images = self.images(gens)?;
        let mut kept: Vec<bool> = vec![true; gens.len()];
        let mut order: Vec<usize> = (0..gens.len()).collect();
        order.sort_by_key(|&i| std::cmp::Reverse((images[i].as_ref().map_or(0, |im| im.degree), i)));
        for i in order {
            let current = kept.clone();
            if self.is_redundant(&images, i, |j| j != i && current[j]) {
                kept[i] = false;
            }
        }
        Ok((0..gens.len()).filter(|&i| kept[i]).collect())
    }
}

/// Entries `(block, monomial of h, coefficient)` of a reduced generator.
type ReducedEntries = Vec<(usize, Mono, u64)>;

/// Environment variable overriding [`default_cutoff`].
pub const CUTOFF_ENV: &str = "SEPDER_CUTOFF";

/// `Δ(G) + 2`, or the value of `SEPDER_CUTOFF` when it parses.
pub fn default_cutoff(g: &Graph) -> usize {
    std::env::var(CUTOFF_ENV).ok().and_then(|v| v.trim().parse().ok()).unwrap_or(g.max_degree() + 2)
}

pub fn module_dimension(g: &Graph, p: usize) -> Result<usize, OracleError> {
    Ok(Oracle::new(g)?.module_dimension(p))
}

pub fn verify_generation(g: &Graph, gens: &[Derivation], cutoff: usize) -> Result<Verification, OracleError> {
    Oracle::new(g)?.verify_generation(gens, cutoff)
}

pub fn minimal_degree_sequence(g: &Graph, cutoff: usize) -> Result<Vec<usize>, OracleError> {
    Oracle::new(g)?.minimal_degree_sequence(cutoff)
}

pub fn find_redundant(g: &Graph, gens: &[Derivation], cutoff: usize) -> Result<Vec<usize>, OracleError> {
    Oracle::new(g)?.find_redundant(gens, cutoff)
}

#[cfg(test)]
mod tests;
