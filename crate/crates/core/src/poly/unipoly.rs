use std::fmt;

use super::{rat, MultiPoly, PolyError};

/// A polynomial in one extra variable `y` with coefficients in `S = Q[x1..xn]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPolyOverS {
    n_vars: usize,
    /// `coeffs[j]` multiplies `y^j`; no trailing zeros.
    coeffs: Vec<MultiPoly>,
}

impl UniPolyOverS {
    pub fn new(n_vars: usize, coeffs: Vec<MultiPoly>) -> Result<Self, PolyError> {
        if let Some(c) = coeffs.iter().find(|c| c.n_vars() != n_vars) {
            return Err(PolyError::VarMismatch(n_vars, c.n_vars()));
        }
        let mut p = UniPolyOverS { n_vars, coeffs };
        p.trim();
        Ok(p)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(MultiPoly::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn one(n_vars: usize) -> Self {
        UniPolyOverS { n_vars, coeffs: vec![MultiPoly::one(n_vars)] }
    }

    /// `y^k`
    pub fn y_pow(n_vars: usize, k: usize) -> Self {
        let mut coeffs = vec![MultiPoly::zero(n_vars); k];
        coeffs.push(MultiPoly::one(n_vars));
        UniPolyOverS { n_vars, coeffs }
    }

    /// `y - x_var`
    pub fn y_minus_var(n_vars: usize, var: usize) -> Self {
        UniPolyOverS { n_vars, coeffs: vec![-&MultiPoly::var(n_vars, var), MultiPoly::one(n_vars)] }
    }

    /// `∏_{t} (y - x_t)`
    pub fn product_of_roots<I: IntoIterator<Item = usize>>(n_vars: usize, roots: I) -> Self {
        roots.into_iter().fold(Self::one(n_vars), |acc, t| acc.mul(&Self::y_minus_var(n_vars, t)))
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn coeffs(&self) -> &[MultiPoly] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in `y`; `None` for zero.
    pub fn degree_y(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// All coefficients are constants.
    pub fn has_constant_coefficients(&self) -> bool {
        self.coeffs.iter().all(|c| c.as_constant().is_some())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n_vars, other.n_vars);
        if self.is_zero() || other.is_zero() {
            return UniPolyOverS { n_vars: self.n_vars, coeffs: vec![] };
        }
        let mut coeffs = vec![MultiPoly::zero(self.n_vars); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        let mut p = UniPolyOverS { n_vars: self.n_vars, coeffs };
        p.trim();
        p
    }

    /// `p(x_var)`: substitute `y = x_var`.
    pub fn eval_at_var(&self, var: usize) -> Result<MultiPoly, PolyError> {
        if var == 0 || var > self.n_vars {
            return Err(PolyError::VarOutOfRange { index: var, n: self.n_vars });
        }
        let x = MultiPoly::var(self.n_vars, var);
        // Horner
        Ok(self.coeffs.iter().rev().fold(MultiPoly::zero(self.n_vars), |acc, c| &(&acc * &x) + c))
    }
}

impl fmt::Display for UniPolyOverS {
    /// Descending powers of `y`, e.g. `y^2 + (x1 - x2)*y - x3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let one = MultiPoly::one(self.n_vars);
        let minus_one = MultiPoly::constant(self.n_vars, rat(-1));
        let mut parts = Vec::new();
        for (j, c) in self.coeffs.iter().enumerate().rev().filter(|(_, c)| !c.is_zero()) {
            let y = match j {
                0 => String::new(),
                1 => "y".to_string(),
                _ => format!("y^{j}"),
            };
            parts.push(if j == 0 {
                c.to_string()
            } else if *c == one {
                y
            } else if *c == minus_one {
                format!("-{y}")
            } else if c.len() == 1 {
                format!("{c}*{y}")
            } else {
                format!("({c})*{y}")
            });
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        let mut out = parts[0].clone();
        for p in &parts[1..] {
            match p.strip_prefix('-') {
                Some(rest) => out.push_str(&format!(" - {rest}")),
                None => out.push_str(&format!(" + {p}")),
            }
        }
        write!(f, "{out}")
    }
}
