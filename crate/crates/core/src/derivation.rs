//! Logarithmic derivations of graphic arrangements.
//!
//! A derivation is stored as its coefficient vector `(θ(x_1), ..., θ(x_ℓ))`.

use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::graph::{Graph, GraphError, VertexSet};
use crate::poly::{det_poly_matrix, product_of_differences, MultiPoly, PolyError, Rational, UniPolyOverS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DerivationError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("{t} and {c} intersect")]
    Overlap { t: VertexSet, c: VertexSet },
    #[error("{c} is not a connected component of G \\ {t}")]
    NotComponent { t: VertexSet, c: VertexSet },
    #[error("{c} is not a union of connected components of G \\ {t}")]
    NotUnionOfComponents { t: VertexSet, c: VertexSet },
    #[error("derivation has {got} entries, graph has {expected} vertices")]
    SizeMismatch { expected: usize, got: usize },
    #[error("expected {expected} derivations, got {got}")]
    WrongCount { expected: usize, got: usize },
    #[error("derivation {index} is not in D(A(G))")]
    NonMember { index: usize },
    #[error("derivation {index} is not homogeneous")]
    NotHomogeneous { index: usize },
    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
}

/// Where a derivation came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Label {
    Theta(usize),
    Sep { t: VertexSet, c: VertexSet },
    SepPoly { t: VertexSet, c: VertexSet, p: String },
    Sigma(usize),
    Phi(usize),
    Custom,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bracket = |s: &VertexSet| {
            let v: Vec<String> = s.iter().map(|x| x.to_string()).collect();
            format!("[{}]", v.join(","))
        };
        match self {
            Label::Theta(k) => write!(f, "theta_{k}"),
            Label::Sep { t, c } => write!(f, "sep({},{c})", bracket(t)),
            Label::SepPoly { t, c, p } => write!(f, "sep_poly({},{c},{p})", bracket(t)),
            Label::Sigma(i) => write!(f, "sigma_{i}"),
            Label::Phi(i) => write!(f, "phi_{i}"),
            Label::Custom => write!(f, "custom"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    pub label: Label,
    coeffs: Vec<MultiPoly>,
}

impl Serialize for Derivation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Derivation", 2)?;
        st.serialize_field("label", &self.label.to_string())?;
        let coeffs: Vec<String> = self.coeffs.iter().map(MultiPoly::render).collect();
        st.serialize_field("coeffs", &coeffs)?;
        st.end()
    }
}

impl Derivation {
    /// A derivation from explicit coefficients; all must share `n_vars = coeffs.len()`.
    pub fn custom(coeffs: Vec<MultiPoly>) -> Result<Self, DerivationError> {
        let n = coeffs.len();
        if let Some(c) = coeffs.iter().find(|c| c.n_vars() != n) {
            return Err(PolyError::VarMismatch(n, c.n_vars()).into());
        }
        Ok(Derivation { label: Label::Custom, coeffs })
    }

    pub fn with_label(mut self, label: Label) -> Self {
        self.label = label;
        self
    }

    pub fn coeffs(&self) -> &[MultiPoly] {
        &self.coeffs
    }

    /// `θ(x_i)`, 1-based.
    pub fn coeff(&self, i: usize) -> &MultiPoly {
        &self.coeffs[i - 1]
    }

    pub fn n_vars(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(MultiPoly::is_zero)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.pdeg().is_some() || self.is_zero()
    }

    /// Polynomial degree; `None` if zero or not homogeneous.
    pub fn pdeg(&self) -> Option<usize> {
        let mut deg = None;
        for c in self.coeffs.iter().filter(|c| !c.is_zero()) {
            if !c.is_homogeneous() {
                return None;
            }
            let d = c.degree();
            if deg.is_some() && deg != d {
                return None;
            }
            deg = d;
        }
        deg
    }

    /// Indices (1-based) of nonzero entries.
    pub fn support(&self) -> VertexSet {
        VertexSet::from_vertices((1..=self.n_vars()).filter(|&i| !self.coeffs[i - 1].is_zero()))
    }

    pub fn add(&self, other: &Derivation) -> Derivation {
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Derivation { label: Label::Custom, coeffs }
    }

    pub fn sub(&self, other: &Derivation) -> Derivation {
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Derivation { label: Label::Custom, coeffs }
    }

    /// `f · θ`
    pub fn scale(&self, f: &MultiPoly) -> Derivation {
        let coeffs = self.coeffs.iter().map(|c| c * f).collect();
        Derivation { label: Label::Custom, coeffs }
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let entries: Vec<String> = self.coeffs.iter().map(MultiPoly::render).collect();
        write!(f, "{}: ({})", self.label, entries.join(", "))
    }
}

/// `Q(A(G)) = ∏_{{i,j} ∈ E, i < j} (x_i - x_j)`
pub fn defining_polynomial(g: &Graph) -> MultiPoly {
    product_of_differences(g.n(), g.edges())
}

/// `θ_k = Σ x_i^k D_i`
pub fn theta_power(k: usize, n: usize) -> Derivation {
    let coeffs = (1..=n).map(|i| MultiPoly::var(n, i).pow(k as u32)).collect();
    Derivation { label: Label::Theta(k), coeffs }
}

fn sep_coeffs(n: usize, t: VertexSet, c: VertexSet) -> Vec<MultiPoly> {
    (1..=n)
        .map(|i| if c.contains(i) { product_of_differences(n, t.iter().map(|s| (i, s))) } else { MultiPoly::zero(n) })
        .collect()
}

fn check_union(g: &Graph, t: VertexSet, c: VertexSet) -> Result<(), DerivationError> {
    g.check_set(t)?;
    g.check_set(c)?;
    if !t.is_disjoint(c) {
        return Err(DerivationError::Overlap { t, c });
    }
    if c.is_empty() || !g.boundary(c).is_subset(t) {
        return Err(DerivationError::NotUnionOfComponents { t, c });
    }
    Ok(())
}

/// `θ_C^T` for `C` a connected component of `G \ T`. With `T = ∅` and
/// `C = V` this is `θ_0`.
pub fn theta_sep(g: &Graph, t: VertexSet, c: VertexSet) -> Result<Derivation, DerivationError> {
    check_union(g, t, c).map_err(|e| match e {
        DerivationError::NotUnionOfComponents { t, c } => DerivationError::NotComponent { t, c },
        e => e,
    })?;
    if !g.is_connected_set(c) {
        return Err(DerivationError::NotComponent { t, c });
    }
    Ok(Derivation { label: Label::Sep { t, c }, coeffs: sep_coeffs(g.n(), t, c) })
}

/// `θ_C^T` for `C` any nonempty union of components of `G \ T`, as needed
/// for chain elements and augmented poset nodes.
pub fn theta_sep_union(g: &Graph, t: VertexSet, c: VertexSet) -> Result<Derivation, DerivationError> {
    check_union(g, t, c)?;
    Ok(Derivation { label: Label::Sep { t, c }, coeffs: sep_coeffs(g.n(), t, c) })
}

/// `θ_C^{T,p}`: entry `k ∈ C` is `∏_{t ∈ T}(x_k - x_t) · p(x_k)`.
pub fn theta_sep_poly(g: &Graph, t: VertexSet, c: VertexSet, p: &UniPolyOverS) -> Result<Derivation, DerivationError> {
    let base = theta_sep_union(g, t, c)?;
    if p.n_vars() != g.n() {
        return Err(PolyError::VarMismatch(g.n(), p.n_vars()).into());
    }
    let coeffs = base
        .coeffs
        .iter()
        .enumerate()
        .map(|(k, e)| if e.is_zero() { Ok(e.clone()) } else { Ok(e * &p.eval_at_var(k + 1)?) })
        .collect::<Result<Vec<_>, PolyError>>()?;
    Ok(Derivation { label: Label::SepPoly { t, c, p: p.to_string() }, coeffs })
}

/// `σ_i = ∏_{j ∈ N(i)} (x_i - x_j) · D_i`
pub fn sigma_neighbourhood(g: &Graph, i: usize) -> Result<Derivation, DerivationError> {
    g.check_vertex(i)?;
    let n = g.n();
    let coeffs = (1..=n)
        .map(|k| {
            if k == i {
                product_of_differences(n, g.neighbours(i).iter().map(|j| (i, j)))
            } else {
                MultiPoly::zero(n)
            }
        })
        .collect();
    Ok(Derivation { label: Label::Sigma(i), coeffs })
}

/// `φ_i`: entry `k` is `∏_{j < i} (x_k - x_j)`.
pub fn phi(i: usize, n: usize) -> Result<Derivation, DerivationError> {
    if i == 0 || i > n {
        return Err(DerivationError::IndexOutOfRange { index: i, n });
    }
    let coeffs = (1..=n).map(|k| product_of_differences(n, (1..i).map(|j| (k, j)))).collect();
    Ok(Derivation { label: Label::Phi(i), coeffs })
}

fn check_size(g: &Graph, theta: &Derivation) -> Result<(), DerivationError> {
    if theta.n_vars() != g.n() {
        return Err(DerivationError::SizeMismatch { expected: g.n(), got: theta.n_vars() });
    }
    Ok(())
}

/// `θ ∈ D(A(G))`: `x_i - x_j` divides `θ(x_i) - θ(x_j)` on every edge.
pub fn is_member(g: &Graph, theta: &Derivation) -> Result<bool, DerivationError> {
    check_size(g, theta)?;
    for (i, j) in g.edges() {
        let d = theta.coeff(i) - theta.coeff(j);
        if !d.substitute_equal(i, j)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Rows are derivations, columns vertices.
pub fn coefficient_matrix(thetas: &[Derivation]) -> Vec<Vec<MultiPoly>> {
    thetas.iter().map(|t| t.coeffs.clone()).collect()
}

pub fn render_matrix(thetas: &[Derivation]) -> Vec<Vec<String>> {
    thetas.iter().map(|t| t.coeffs.iter().map(MultiPoly::render).collect()).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SaitoResult {
    pub basis: bool,
    /// `c` with `det = c · Q`; zero when the determinant is not a multiple of `Q`.
    pub scalar: Rational,
    pub det: MultiPoly,
}

/// Saito's criterion: `ℓ` members form a basis iff `det M = c · Q`, `c ≠ 0`.
pub fn saito_check(g: &Graph, thetas: &[Derivation]) -> Result<SaitoResult, DerivationError> {
    if thetas.len() != g.n() {
        return Err(DerivationError::WrongCount { expected: g.n(), got: thetas.len() });
    }
    for (index, t) in thetas.iter().enumerate() {
        if !is_member(g, t)? {
            return Err(DerivationError::NonMember { index });
        }
    }
    let det = det_poly_matrix(&coefficient_matrix(thetas), g.n())?;
    let q = defining_polynomial(g);
    let scalar = match (det.leading_term(), q.leading_term()) {
        (Some((_, a)), Some((_, b))) => {
            let c = a / b;
            if q.scale(&c) == det {
                c
            } else {
                Rational::default()
            }
        }
        _ => Rational::default(),
    };
    Ok(SaitoResult { basis: !det.is_zero() && scalar != Rational::default(), scalar, det })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{antihole, complete, connected_graphs, minimal_separators, parse_graph, path, GraphFormat};
    use crate::poly::rat;
    use num_traits::{One, Signed};

    fn worked_graph() -> Graph {
        parse_graph("n 4\n1 4\n2 4\n3 4\n2 3", GraphFormat::EdgeList).unwrap()
    }

    fn vs(v: &[usize]) -> VertexSet {
        VertexSet::from_vertices(v.iter().copied())
    }

    fn strs(d: &Derivation) -> Vec<String> {
        d.coeffs().iter().map(MultiPoly::render).collect()
    }

    #[test]
    fn defining_polynomials() {
        let k3 = complete(3);
        assert_eq!(defining_polynomial(&k3), product_of_differences(3, [(1, 2), (1, 3), (2, 3)]));
        assert_eq!(defining_polynomial(&path(2)).to_string(), "x1 - x2");
        let q = defining_polynomial(&worked_graph());
        assert_eq!(q, product_of_differences(4, [(1, 4), (2, 4), (3, 4), (2, 3)]));
    }

    #[test]
    fn theta_powers() {
        assert_eq!(strs(&theta_power(0, 3)), ["1", "1", "1"]);
        assert_eq!(strs(&theta_power(1, 2)), ["x1", "x2"]);
        assert_eq!(strs(&theta_power(2, 4)), ["x1^2", "x2^2", "x3^2", "x4^2"]);
        assert_eq!(theta_power(2, 4).pdeg(), Some(2));
    }

    #[test]
    fn separator_derivations() {
        let g = worked_graph();
        let a = theta_sep(&g, vs(&[4]), vs(&[1])).unwrap();
        assert_eq!(strs(&a), ["x1 - x4", "0", "0", "0"]);
        let b = theta_sep(&g, vs(&[4]), vs(&[2, 3])).unwrap();
        assert_eq!(strs(&b), ["0", "x2 - x4", "x3 - x4", "0"]);
        assert_eq!(b.pdeg(), Some(1));
        let all = theta_sep(&g, VertexSet::EMPTY, g.vertices()).unwrap();
        assert_eq!(all.coeffs(), theta_power(0, 4).coeffs());
        assert_eq!(theta_sep(&g, vs(&[4]), vs(&[2])), Err(DerivationError::NotComponent { t: vs(&[4]), c: vs(&[2]) }));
        assert_eq!(theta_sep(&g, vs(&[4]), vs(&[1, 4])), Err(DerivationError::Overlap { t: vs(&[4]), c: vs(&[1, 4]) }));
        assert!(theta_sep(&g, vs(&[4]), vs(&[1, 2, 3])).is_err());
        assert!(theta_sep_union(&g, vs(&[4]), vs(&[1, 2, 3])).is_ok());
        assert_eq!(a.label.to_string(), "sep([4],{1})");
    }

    #[test]
    fn separator_derivations_with_polynomial() {
        let g = worked_graph();
        let one = UniPolyOverS::one(4);
        let plain = theta_sep(&g, vs(&[4]), vs(&[2, 3])).unwrap();
        assert_eq!(theta_sep_poly(&g, vs(&[4]), vs(&[2, 3]), &one).unwrap().coeffs(), plain.coeffs());
        let p = UniPolyOverS::y_minus_var(4, 3);
        let d = theta_sep_poly(&g, vs(&[4]), vs(&[2, 3]), &p).unwrap();
        let expected = product_of_differences(4, [(2, 4), (2, 3)]);
        assert_eq!(d.coeffs(), &[MultiPoly::zero(4), expected, MultiPoly::zero(4), MultiPoly::zero(4)]);
        for k in 0..4 {
            let t = theta_sep_poly(&g, VertexSet::EMPTY, g.vertices(), &UniPolyOverS::y_pow(4, k)).unwrap();
            assert_eq!(t.coeffs(), theta_power(k, 4).coeffs());
        }
    }

    #[test]
    fn sigma_and_its_separator_form() {
        let k3 = complete(3);
        let s = sigma_neighbourhood(&k3, 2).unwrap();
        assert_eq!(s.coeffs()[1], product_of_differences(3, [(2, 1), (2, 3)]));
        assert_eq!(s.support(), vs(&[2]));
        let p3 = path(3);
        assert_eq!(sigma_neighbourhood(&p3, 2).unwrap().coeffs(), s.coeffs());
        let a5 = antihole(5);
        let s1 = sigma_neighbourhood(&a5, 1).unwrap();
        assert_eq!(s1.support(), vs(&[1]));
        assert_eq!(s1.pdeg(), Some(2));
        assert!(sigma_neighbourhood(&a5, 6).is_err());
    }

    /// σ_i equals θ_{{i}}^{T, q_i} for a minimal separator T ⊆ N(i).
    #[test]
    fn sigma_matches_separator_form_on_small_graphs() {
        for n in 3..=6 {
            for g in connected_graphs(n) {
                let seps = minimal_separators(&g).unwrap();
                for i in 1..=n {
                    let nb = g.neighbours(i);
                    let Some(sep) =
                        seps.iter().find(|s| s.t_set.is_subset(nb) && s.components.contains(&VertexSet::singleton(i)))
                    else {
                        continue;
                    };
                    let q = UniPolyOverS::product_of_roots(n, nb.difference(sep.t_set).iter());
                    let via = theta_sep_poly(&g, sep.t_set, VertexSet::singleton(i), &q).unwrap();
                    assert_eq!(via.coeffs(), sigma_neighbourhood(&g, i).unwrap().coeffs());
                }
            }
        }
    }

    fn elementary_symmetric(vars: &[usize], m: usize, n: usize) -> MultiPoly {
        fn rec(vars: &[usize], m: usize, n: usize) -> MultiPoly {
            if m == 0 {
                return MultiPoly::one(n);
            }
            if vars.len() < m {
                return MultiPoly::zero(n);
            }
            let with = &MultiPoly::var(n, vars[0]) * &rec(&vars[1..], m - 1, n);
            &with + &rec(&vars[1..], m, n)
        }
        rec(vars, m, n)
    }

    #[test]
    fn phi_is_a_symmetric_combination_of_thetas() {
        assert_eq!(phi(1, 3).unwrap().coeffs(), theta_power(0, 3).coeffs());
        let p2 = phi(2, 3).unwrap();
        assert_eq!(strs(&p2), ["0", "-x1 + x2", "-x1 + x3"]);
        let expect = theta_power(1, 3).sub(&theta_power(0, 3).scale(&MultiPoly::var(3, 1)));
        assert_eq!(p2.coeffs(), expect.coeffs());
        for n in 1..=5 {
            for i in 1..=n.min(4) {
                let prev: Vec<usize> = (1..i).collect();
                let mut sum = Derivation::custom(vec![MultiPoly::zero(n); n]).unwrap();
                for m in 0..i {
                    let mut e = elementary_symmetric(&prev, m, n);
                    if m % 2 == 1 {
                        e = -&e;
                    }
                    sum = sum.add(&theta_power(i - 1 - m, n).scale(&e));
                }
                assert_eq!(phi(i, n).unwrap().coeffs(), sum.coeffs(), "phi_{i}, n = {n}");
            }
        }
        assert!(phi(0, 3).is_err() && phi(4, 3).is_err());
    }

    #[test]
    fn membership() {
        let k3 = complete(3);
        for k in 0..5 {
            assert!(is_member(&k3, &theta_power(k, 3)).unwrap());
        }
        let x2 = MultiPoly::var(3, 2);
        let bad = Derivation::custom(vec![x2, MultiPoly::zero(3), MultiPoly::zero(3)]).unwrap();
        assert!(!is_member(&k3, &bad).unwrap());
        assert!(is_member(&complete(4), &bad).is_err());
    }

    /// Every separator derivation of every small connected graph is a member.
    #[test]
    fn separator_derivations_are_members() {
        for n in 2..=6 {
            for g in connected_graphs(n) {
                let all = g.vertices();
                for t in all.subsets() {
                    for c in g.components_within(all.difference(t)) {
                        let d = theta_sep(&g, t, c).unwrap();
                        assert!(is_member(&g, &d).unwrap(), "{t} {c}");
                        assert_eq!(d.pdeg(), Some(t.len()));
                    }
                }
                for i in 1..=n {
                    assert!(is_member(&g, &sigma_neighbourhood(&g, i).unwrap()).unwrap());
                }
            }
        }
    }

    #[test]
    fn saito_on_braid_arrangements() {
        for n in 3..=5 {
            let g = complete(n);
            let thetas: Vec<_> = (0..n).map(|k| theta_power(k, n)).collect();
            let r = saito_check(&g, &thetas).unwrap();
            assert!(r.basis);
            assert!(r.scalar.abs().is_one());
        }
        let k3 = complete(3);
        let r = saito_check(&k3, &[theta_power(0, 3), theta_power(0, 3), theta_power(1, 3)]).unwrap();
        assert!(!r.basis);
        assert!(r.det.is_zero());
        assert_eq!(saito_check(&k3, &[theta_power(0, 3)]), Err(DerivationError::WrongCount { expected: 3, got: 1 }));
        let bad = Derivation::custom(vec![MultiPoly::var(3, 2), MultiPoly::zero(3), MultiPoly::zero(3)]).unwrap();
        assert_eq!(
            saito_check(&k3, &[theta_power(0, 3), theta_power(1, 3), bad]),
            Err(DerivationError::NonMember { index: 2 })
        );
    }

    #[test]
    fn saito_on_example_basis() {
        let g = worked_graph();
        let rows = [
            theta_power(0, 4),
            theta_sep(&g, vs(&[4]), vs(&[1])).unwrap(),
            theta_sep(&g, vs(&[4]), vs(&[2, 3])).unwrap(),
            theta_sep_union(&g, vs(&[3, 4]), vs(&[2])).unwrap(),
        ];
        let r = saito_check(&g, &rows).unwrap();
        assert!(r.basis);
        assert!(r.scalar == rat(1) || r.scalar == rat(-1));
        assert_eq!(render_matrix(&rows)[3], ["0", "x2^2 - x2*x3 - x2*x4 + x3*x4", "0", "0"]);
    }

    #[test]
    fn json_shape() {
        let j = serde_json::to_string(&theta_power(1, 2)).unwrap();
        assert_eq!(j, r#"{"label":"theta_1","coeffs":["x1","x2"]}"#);
    }
}
