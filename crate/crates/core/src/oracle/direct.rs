//! Straightforward routes in the full coordinates `x_1, ..., x_ℓ`. They are
//! slower than the reduced computation and serve as its cross-check.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::packed::{self, Mono, Table};
use super::OracleError;
use crate::derivation::{is_member, Derivation};
use crate::graph::Graph;
use crate::poly::{
    rat, rational_kernel, rational_mod, rational_rank, ModEchelon, Monomial, MultiPoly, Rational, PRIME,
};

/// A basis of `D(A(G))_p`. Columns follow the vertex blocks in order, each
/// block the degree-`p` monomials in descending graded-lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradedBasis {
    pub degree: usize,
    #[serde(serialize_with = "render_monomials")]
    pub monomials: Vec<Monomial>,
    #[serde(serialize_with = "render_rows")]
    pub coeff_matrix: Vec<Vec<Rational>>,
}

fn render_monomials<S: serde::Serializer>(ms: &[Monomial], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(ms.iter().map(ToString::to_string))
}

fn render_rows<S: serde::Serializer>(rows: &[Vec<Rational>], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(rows.iter().map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>()))
}

impl GradedBasis {
    pub fn derivations(&self) -> Vec<Derivation> {
        let n = self.monomials.first().map_or(0, Monomial::n_vars);
        let width = self.monomials.len();
        self.coeff_matrix
            .iter()
            .map(|row| {
                let coeffs = (0..n)
                    .map(|b| {
                        MultiPoly::from_terms(
                            n,
                            (0..width).map(|k| (self.monomials[k].clone(), row[b * width + k].clone())),
                        )
                    })
                    .collect();
                Derivation::custom(coeffs).expect("consistent sizes")
            })
            .collect()
    }
}

/// Equation rows of `D(A(G))_p` over the unknown coefficients of `(f_1..f_ℓ)`.
fn equations(g: &Graph, p: usize) -> (Vec<Monomial>, Vec<Vec<Rational>>) {
    let n = g.n();
    let monos = Monomial::all_of_degree(n, p);
    let index: HashMap<&Monomial, usize> = monos.iter().enumerate().map(|(k, m)| (m, k)).collect();
    let width = monos.len();
    let mut rows: BTreeMap<(usize, Vec<u16>), BTreeMap<usize, i64>> = BTreeMap::new();
    for (e, (i, j)) in g.edges().into_iter().enumerate() {
        for m in &monos {
            let mut s = m.exponents().to_vec();
            s[j - 1] += s[i - 1];
            s[i - 1] = 0;
            let row = rows.entry((e, s)).or_default();
            *row.entry((i - 1) * width + index[m]).or_insert(0) += 1;
            *row.entry((j - 1) * width + index[m]).or_insert(0) -= 1;
        }
    }
    let cols = n * width;
    let dense = rows
        .into_values()
        .map(|r| {
            let mut v = vec![rat(0); cols];
            for (c, x) in r {
                v[c] = rat(x);
            }
            v
        })
        .collect();
    (monos, dense)
}

/// `dim D(A(G))_p` by exact rank over `Q`. Cost grows quickly; meant for
/// small graphs and degrees.
pub fn module_dimension_exact(g: &Graph, p: usize) -> Result<usize, OracleError> {
    g.require_connected()?;
    let (monos, rows) = equations(g, p);
    Ok(g.n() * monos.len() - rational_rank(&rows))
}

/// An exact basis of `D(A(G))_p`.
pub fn graded_basis(g: &Graph, p: usize) -> Result<GradedBasis, OracleError> {
    g.require_connected()?;
    let (monomials, rows) = equations(g, p);
    let coeff_matrix = rational_kernel(&rows, g.n() * monomials.len());
    Ok(GradedBasis { degree: p, monomials, coeff_matrix })
}

/// Dimension of the span of `{m·θ : θ ∈ gens, deg m = p - pdeg θ}` inside
/// `(S_p)^ℓ`, computed modulo a 31-bit prime.
pub fn span_dimension(g: &Graph, gens: &[Derivation], p: usize) -> Result<usize, OracleError> {
    let n = g.n();
    if n > packed::MAX_VARS {
        return Err(OracleError::TooLarge { n, max: packed::MAX_VARS });
    }
    let t = Table::new(n, p);
    let width = t.len();
    let mut ech = ModEchelon::new(n * width, PRIME);
    for (index, theta) in gens.iter().enumerate() {
        if !is_member(g, theta)? {
            return Err(OracleError::NonMember { index });
        }
        if theta.is_zero() {
            continue;
        }
        let e = theta.pdeg().ok_or(OracleError::NotHomogeneous { index })?;
        if e > p {
            continue;
        }
        let mut entries: Vec<(usize, Mono, u64)> = Vec::new();
        for b in 0..n {
            for (m, c) in theta.coeff(b + 1).terms() {
                let packed_m = m.exponents().iter().enumerate().map(|(v, &x)| x as u64 * packed::var(v)).sum();
                let c = rational_mod(c, PRIME).ok_or(OracleError::BadPrime { index, prime: PRIME })?;
                entries.push((b, packed_m, c));
            }
        }
        for &m in &Table::new(n, p - e).list {
            let row: Vec<(u32, u64)> =
                entries.iter().map(|&(b, mono, c)| ((b * width) as u32 + t.position(mono + m), c)).collect();
            ech.insert(&row);
        }
    }
    Ok(ech.rank())
}
