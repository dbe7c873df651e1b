use std::collections::BTreeSet;

use super::{Monomial, PolyError};

/// Squarefree monomials `∏_{z ∈ Y} z` over the inclusion-minimal sets `Y`
/// meeting every given variable set. They generate `⋂_i <Z_i>`.
///
/// Output is sorted by degree, then by ascending variable list.
pub fn monomial_transversals(n_vars: usize, var_sets: &[Vec<usize>]) -> Result<Vec<Monomial>, PolyError> {
    let mut sets: Vec<BTreeSet<usize>> = Vec::with_capacity(var_sets.len());
    for (pos, s) in var_sets.iter().enumerate() {
        if s.is_empty() {
            return Err(PolyError::EmptyVarSet(pos));
        }
        if let Some(&v) = s.iter().find(|&&v| v == 0 || v > n_vars) {
            return Err(PolyError::VarOutOfRange { index: v, n: n_vars });
        }
        sets.push(s.iter().copied().collect());
    }

    fn branch(sets: &[BTreeSet<usize>], chosen: &mut BTreeSet<usize>, out: &mut BTreeSet<Vec<usize>>) {
        match sets.iter().find(|s| s.is_disjoint(chosen)) {
            None => {
                out.insert(chosen.iter().copied().collect());
            }
            Some(s) => {
                for &v in s {
                    chosen.insert(v);
                    branch(sets, chosen, out);
                    chosen.remove(&v);
                }
            }
        }
    }

    let mut candidates = BTreeSet::new();
    branch(&sets, &mut BTreeSet::new(), &mut candidates);
    let candidates: Vec<Vec<usize>> = candidates.into_iter().collect();
    let is_subset = |a: &[usize], b: &[usize]| a.iter().all(|v| b.contains(v));
    let mut minimal: Vec<Vec<usize>> = candidates
        .iter()
        .filter(|c| !candidates.iter().any(|d| d.len() < c.len() && is_subset(d, c)))
        .cloned()
        .collect();
    minimal.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));

    Ok(minimal
        .into_iter()
        .map(|vars| {
            let mut e = vec![0u16; n_vars];
            for v in vars {
                e[v - 1] = 1;
            }
            Monomial::from_exponents(e)
        })
        .collect())
}
