//! Exact sparse multivariate polynomials over the rationals.
//!
//! Variables are `x1, ..., xn`, indexed from 1 to match graph vertices.
//! Terms are kept in a `BTreeMap` keyed by graded-lexicographic monomial
//! order, with no zero coefficients stored.

mod linalg;
mod matrix;
mod transversal;
mod unipoly;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use linalg::{int_mod, rational_kernel, rational_mod, rational_rank, ModEchelon, PRIME, PRIME_ALT};
pub use matrix::{det_bareiss, det_cofactor, det_poly_matrix};
pub use transversal::monomial_transversals;
pub use unipoly::UniPolyOverS;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("variable count mismatch: {0} vs {1}")]
    VarMismatch(usize, usize),
    #[error("variable index {index} out of range 1..={n}")]
    VarOutOfRange { index: usize, n: usize },
    #[error("substitution needs two distinct variables, got x{0} twice")]
    SameVariable(usize),
    #[error("matrix is not square ({rows} rows, row {row} has {len} entries)")]
    NotSquare { rows: usize, row: usize, len: usize },
    #[error("empty variable set at position {0}")]
    EmptyVarSet(usize),
    #[error("division is not exact")]
    InexactDivision,
}

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Exponent vector, ordered graded-lexicographically (`x1 > x2 > ...`).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u16>);

impl Monomial {
    pub fn one(n_vars: usize) -> Self {
        Monomial(vec![0; n_vars])
    }

    pub fn from_exponents(exps: Vec<u16>) -> Self {
        Monomial(exps)
    }

    /// `x_var` (1-based).
    pub fn var(n_vars: usize, var: usize) -> Self {
        let mut e = vec![0; n_vars];
        e[var - 1] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn n_vars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming divisibility.
    fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    /// All monomials of total degree `degree` in `n_vars` variables, in
    /// descending graded-lexicographic order.
    pub fn all_of_degree(n_vars: usize, degree: usize) -> Vec<Monomial> {
        fn fill(pos: usize, left: usize, cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
            if pos + 1 == cur.len() {
                cur[pos] = left as u16;
                out.push(Monomial(cur.clone()));
                return;
            }
            for e in (0..=left).rev() {
                cur[pos] = e as u16;
                fill(pos + 1, left - e, cur, out);
            }
            cur[pos] = 0;
        }
        if n_vars == 0 {
            return if degree == 0 { vec![Monomial(vec![])] } else { vec![] };
        }
        let mut out = Vec::new();
        fill(0, degree, &mut vec![0; n_vars], &mut out);
        out
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate().filter(|(_, &e)| e > 0) {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "x{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// An element of `Q[x1, ..., xn]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    n_vars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero(n_vars: usize) -> Self {
        MultiPoly { n_vars, terms: BTreeMap::new() }
    }

    pub fn one(n_vars: usize) -> Self {
        Self::constant(n_vars, rat(1))
    }

    pub fn constant(n_vars: usize, c: Rational) -> Self {
        Self::term(Monomial::one(n_vars), c)
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut p = MultiPoly::zero(m.n_vars());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// `x_var` (1-based).
    pub fn var(n_vars: usize, var: usize) -> Self {
        Self::term(Monomial::var(n_vars, var), rat(1))
    }

    /// `x_a - x_b`
    pub fn diff(n_vars: usize, a: usize, b: usize) -> Self {
        &Self::var(n_vars, a) - &Self::var(n_vars, b)
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(n_vars: usize, terms: I) -> Self {
        let mut p = MultiPoly::zero(n_vars);
        for (m, c) in terms {
            assert_eq!(m.n_vars(), n_vars);
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Largest term under graded-lex order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.leading_term().map(|(m, _)| m.degree())
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            Some(d) => degs.all(|e| e == d),
            None => true,
        }
    }

    /// The constant value, if this polynomial has degree zero (or is zero).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.degree() {
            None => Some(Rational::zero()),
            Some(0) => Some(self.coefficient(&Monomial::one(self.n_vars))),
            Some(_) => None,
        }
    }

    fn check_same(&self, other: &MultiPoly) -> Result<(), PolyError> {
        if self.n_vars == other.n_vars {
            Ok(())
        } else {
            Err(PolyError::VarMismatch(self.n_vars, other.n_vars))
        }
    }

    fn check_var(&self, i: usize) -> Result<(), PolyError> {
        if i == 0 || i > self.n_vars {
            Err(PolyError::VarOutOfRange { index: i, n: self.n_vars })
        } else {
            Ok(())
        }
    }

    pub fn checked_add(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check_same(other)?;
        let mut out = MultiPoly::zero(self.n_vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.n_vars);
        }
        MultiPoly { n_vars: self.n_vars, terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> MultiPoly {
        MultiPoly { n_vars: self.n_vars, terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect() }
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        (0..k).fold(MultiPoly::one(self.n_vars), |acc, _| &acc * self)
    }

    /// Image under `x_i -> x_j`. The result vanishes iff `x_i - x_j` divides `self`.
    pub fn substitute_equal(&self, i: usize, j: usize) -> Result<MultiPoly, PolyError> {
        self.check_var(i)?;
        self.check_var(j)?;
        if i == j {
            return Err(PolyError::SameVariable(i));
        }
        let mut out = MultiPoly::zero(self.n_vars);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            e[j - 1] += e[i - 1];
            e[i - 1] = 0;
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }

    /// Whether `x_i - x_j` divides `self`.
    pub fn divisible_by_difference(&self, i: usize, j: usize) -> Result<bool, PolyError> {
        Ok(self.substitute_equal(i, j)?.is_zero())
    }

    /// Exact quotient `self / divisor`, failing if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check_same(divisor)?;
        let (lm, lc) = divisor.leading_term().ok_or(PolyError::InexactDivision)?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(self.n_vars);
        while let Some((m, c)) = rem.leading_term() {
            if !lm.divides(m) {
                return Err(PolyError::InexactDivision);
            }
            let qm = lm.quotient_of(m);
            let qc = c / &lc;
            for (dm, dc) in &divisor.terms {
                rem.add_term(dm.mul(&qm), -(dc * &qc));
            }
            quot.add_term(qm, qc);
        }
        Ok(quot)
    }

    /// Each coefficient is an integer.
    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Canonical rendering, e.g. `x1^2*x3 - 2*x2`; terms in descending
    /// graded-lexicographic order.
    pub fn render(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let is_one = m.degree() == 0;
            if abs.is_one() {
                write!(f, "{m}")?;
            } else if is_one {
                write!(f, "{abs}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_add(rhs).expect("variable count mismatch")
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_sub(rhs).expect("variable count mismatch")
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_mul(rhs).expect("variable count mismatch")
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&rat(-1))
    }
}

/// `∏ (x_a - x_b)` over the given pairs.
pub fn product_of_differences<I: IntoIterator<Item = (usize, usize)>>(n_vars: usize, pairs: I) -> MultiPoly {
    pairs.into_iter().fold(MultiPoly::one(n_vars), |acc, (a, b)| &acc * &MultiPoly::diff(n_vars, a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn x(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(n, i)
    }

    #[test]
    fn arithmetic_examples() {
        let a = MultiPoly::diff(2, 1, 2);
        let b = &x(2, 1) + &x(2, 2);
        assert_eq!((&a * &b).to_string(), "x1^2 - x2^2");
        assert_eq!(&a + &MultiPoly::zero(2), a);

        let v = product_of_differences(3, [(1, 2), (1, 3), (2, 3)]);
        assert_eq!(v.len(), 6);
        assert_eq!(v.to_string(), "x1^2*x2 - x1^2*x3 - x1*x2^2 + x1*x3^2 + x2^2*x3 - x2*x3^2");
        assert_eq!(a.checked_add(&x(3, 1)), Err(PolyError::VarMismatch(2, 3)));
    }

    #[test]
    fn substitution_examples() {
        assert!(MultiPoly::diff(2, 1, 2).substitute_equal(1, 2).unwrap().is_zero());
        assert_eq!(x(2, 1).pow(2).substitute_equal(1, 2).unwrap(), x(2, 2).pow(2));
        let p = &MultiPoly::diff(3, 1, 3) * &MultiPoly::diff(3, 2, 3);
        assert_eq!(p.substitute_equal(1, 2).unwrap(), MultiPoly::diff(3, 2, 3).pow(2));
        assert_eq!(p.substitute_equal(1, 4), Err(PolyError::VarOutOfRange { index: 4, n: 3 }));
        assert_eq!(p.substitute_equal(2, 2), Err(PolyError::SameVariable(2)));
    }

    #[test]
    fn rendering() {
        let p = &(&x(3, 1).pow(2) * &x(3, 3)) - &x(3, 2).scale(&rat(2));
        assert_eq!(p.to_string(), "x1^2*x3 - 2*x2");
        assert_eq!(MultiPoly::zero(2).to_string(), "0");
        assert_eq!(MultiPoly::constant(2, rat(-3)).to_string(), "-3");
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!((&x(2, 2).scale(&half) - &MultiPoly::one(2)).to_string(), "1/2*x2 - 1");
    }

    #[test]
    fn monomials_of_degree() {
        let ms = Monomial::all_of_degree(3, 2);
        assert_eq!(ms.len(), 6);
        assert!(ms.windows(2).all(|w| w[0] > w[1]));
        assert_eq!(ms[0].to_string(), "x1^2");
    }

    #[test]
    fn exact_division() {
        let a = MultiPoly::diff(3, 1, 2);
        let b = &x(3, 3).pow(2) + &x(3, 1);
        assert_eq!((&a * &b).div_exact(&a).unwrap(), b);
        assert_eq!(b.div_exact(&a), Err(PolyError::InexactDivision));
    }

    pub(crate) fn arb_poly(n: usize) -> impl Strategy<Value = MultiPoly> {
        proptest::collection::vec((proptest::collection::vec(0u16..3, n), -4i64..5), 0..5).prop_map(move |ts| {
            MultiPoly::from_terms(n, ts.into_iter().map(|(e, c)| (Monomial::from_exponents(e), rat(c))))
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(3), b in arb_poly(3), c in arb_poly(3)) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn difference_factor_detected(p in arb_poly(4), i in 1usize..=4, j in 1usize..=4) {
            prop_assume!(i != j);
            let q = &p * &MultiPoly::diff(4, i, j);
            prop_assert!(q.divisible_by_difference(i, j).unwrap());
            prop_assert_eq!(q.div_exact(&MultiPoly::diff(4, i, j)).unwrap(), p);
        }
    }
}
