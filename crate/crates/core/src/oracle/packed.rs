//! Monomials in at most eight variables packed into a `u64`, one byte per
//! exponent. Products are plain additions as long as degrees stay below 256.

use std::collections::HashMap;

pub type Mono = u64;

pub const MAX_VARS: usize = 8;
pub const MAX_DEGREE: usize = 255;

pub fn var(i: usize) -> Mono {
    1u64 << (8 * i)
}

pub fn exp(m: Mono, i: usize) -> u64 {
    (m >> (8 * i)) & 0xff
}

/// Image under `x_i -> x_j`; with `j = None`, under `x_i -> 0`.
pub fn substitute(m: Mono, i: usize, j: Option<usize>) -> Option<Mono> {
    let e = exp(m, i);
    if e == 0 {
        return Some(m);
    }
    let base = m - e * var(i);
    j.map(|j| base + e * var(j))
}

/// Monomials of one degree, in descending graded-lexicographic order, with
/// their positions.
#[derive(Debug, Clone)]
pub struct Table {
    pub list: Vec<Mono>,
    index: HashMap<Mono, u32>,
}

impl Table {
    pub fn new(n_vars: usize, degree: usize) -> Self {
        assert!(n_vars <= MAX_VARS && degree <= MAX_DEGREE);
        fn fill(pos: usize, n: usize, left: u64, cur: Mono, out: &mut Vec<Mono>) {
            if pos + 1 == n {
                out.push(cur + left * var(pos));
                return;
            }
            for e in (0..=left).rev() {
                fill(pos + 1, n, left - e, cur + e * var(pos), out);
            }
        }
        let mut list = Vec::new();
        if n_vars == 0 {
            if degree == 0 {
                list.push(0);
            }
        } else {
            fill(0, n_vars, degree as u64, 0, &mut list);
        }
        let index = list.iter().enumerate().map(|(k, &m)| (m, k as u32)).collect();
        Table { list, index }
    }

    pub fn len(&self) -> usize {
        self.list.len()
    }

    pub fn position(&self, m: Mono) -> u32 {
        self.index[&m]
    }
}
