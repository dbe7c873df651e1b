//! Linear algebra over `Q` (exact, fraction-free) and over `F_p` (sparse).

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::Rational;

/// 2^31 - 1
pub const PRIME: u64 = 2_147_483_647;
/// Largest prime below [`PRIME`].
pub const PRIME_ALT: u64 = 2_147_483_629;

fn integer_rows(m: &[Vec<Rational>]) -> Vec<Vec<BigInt>> {
    m.iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
            row.iter().map(|c| (c * Rational::from_integer(l.clone())).to_integer()).collect()
        })
        .collect()
}

/// Exact rank by fraction-free Gaussian elimination.
pub fn rational_rank(m: &[Vec<Rational>]) -> usize {
    let mut a = integer_rows(m);
    let rows = a.len();
    let cols = a.iter().map(Vec::len).max().unwrap_or(0);
    for r in a.iter_mut() {
        r.resize(cols, BigInt::zero());
    }
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows).find(|&i| !a[i][col].is_zero()) else { continue };
        a.swap(rank, p);
        for i in rank + 1..rows {
            for j in col + 1..cols {
                let num = &a[rank][col] * &a[i][j] - &a[i][col] * &a[rank][j];
                a[i][j] = num / &prev;
            }
            a[i][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// A basis of `{ x : m x = 0 }` over `Q`, one vector per free column.
pub fn rational_kernel(m: &[Vec<Rational>], n_cols: usize) -> Vec<Vec<Rational>> {
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    for r in a.iter_mut() {
        r.resize(n_cols, Rational::zero());
    }
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n_cols {
        let Some(p) = (row..a.len()).find(|&i| !a[i][col].is_zero()) else { continue };
        a.swap(row, p);
        let inv = a[row][col].recip();
        for v in a[row].iter_mut() {
            *v *= &inv;
        }
        let pivot = a[row].clone();
        for (i, r) in a.iter_mut().enumerate() {
            if i != row && !r[col].is_zero() {
                let f = r[col].clone();
                for (x, y) in r[col..n_cols].iter_mut().zip(&pivot[col..n_cols]) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let free: Vec<usize> = (0..n_cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); n_cols];
            v[f] = Rational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[r][f].clone();
            }
            v
        })
        .collect()
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

/// Image of a rational in `F_p`; `None` if the denominator vanishes mod `p`.
pub fn rational_mod(c: &Rational, p: u64) -> Option<u64> {
    let reduce = |x: &BigInt| {
        let m = BigInt::from(p);
        let r = ((x % &m) + &m) % &m;
        r.to_u64().expect("reduced")
    };
    let num = reduce(c.numer());
    let den = reduce(c.denom());
    (den != 0).then(|| num * inv_mod(den, p) % p)
}

/// Signed integer into `F_p`.
pub fn int_mod(c: i64, p: u64) -> u64 {
    let r = c.rem_euclid(p as i64);
    r as u64
}

/// Incremental sparse row echelon form over `F_p`.
///
/// Rows are stored with their leading column first and leading coefficient
/// one; only leading entries are eliminated, which is all rank needs.
#[derive(Debug, Clone)]
pub struct ModEchelon {
    p: u64,
    n_cols: usize,
    pivot_of_col: Vec<u32>,
    rows: Vec<Vec<(u32, u64)>>,
    acc: Vec<u64>,
}

const NONE: u32 = u32::MAX;

impl ModEchelon {
    pub fn new(n_cols: usize, p: u64) -> Self {
        ModEchelon { p, n_cols, pivot_of_col: vec![NONE; n_cols], rows: Vec::new(), acc: vec![0; n_cols] }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `row` (entries `< p`, any order, no duplicate columns)
    /// against the stored rows; keeps and returns `true` if it is independent.
    pub fn insert(&mut self, row: &[(u32, u64)]) -> bool {
        match self.reduce(row) {
            Some(reduced) => {
                self.pivot_of_col[reduced[0].0 as usize] = self.rows.len() as u32;
                self.rows.push(reduced);
                true
            }
            None => false,
        }
    }

    /// Whether `row` lies in the span of the stored rows.
    pub fn contains(&mut self, row: &[(u32, u64)]) -> bool {
        self.reduce(row).is_none()
    }

    fn reduce(&mut self, row: &[(u32, u64)]) -> Option<Vec<(u32, u64)>> {
        let p = self.p;
        let mut heap: BinaryHeap<Reverse<u32>> = BinaryHeap::with_capacity(row.len() * 2);
        let mut touched: Vec<u32> = Vec::with_capacity(row.len() * 2);
        for &(c, v) in row {
            if v % p != 0 {
                self.acc[c as usize] = (self.acc[c as usize] + v) % p;
                heap.push(Reverse(c));
                touched.push(c);
            }
        }
        let mut result = None;
        while let Some(Reverse(c)) = heap.pop() {
            let f = self.acc[c as usize];
            if f == 0 {
                continue;
            }
            let r = self.pivot_of_col[c as usize];
            if r == NONE {
                let inv = inv_mod(f, p);
                let mut out = vec![(c, 1u64)];
                let mut rest: Vec<u32> = heap.into_iter().map(|Reverse(x)| x).collect();
                rest.sort_unstable();
                rest.dedup();
                for x in rest {
                    let v = self.acc[x as usize];
                    if v != 0 && x != c {
                        out.push((x, v * inv % p));
                    }
                }
                result = Some(out);
                break;
            }
            let neg = p - f;
            for &(col, v) in &self.rows[r as usize] {
                let slot = &mut self.acc[col as usize];
                if *slot == 0 {
                    touched.push(col);
                    heap.push(Reverse(col));
                }
                // entries that cancel stay in the heap and are skipped on pop
                *slot = (*slot + neg * v) % p;
            }
        }
        for c in touched {
            self.acc[c as usize] = 0;
        }
        result
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_of_col[col] != NONE
    }

    /// Columns without a pivot, ascending.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.n_cols).filter(|&c| self.pivot_of_col[c] == NONE).collect()
    }

    /// The kernel vector with a one at free column `free` and zeros at the
    /// other free columns.
    pub fn kernel_vector(&self, free: usize) -> Vec<u64> {
        assert!(!self.is_pivot(free), "column {free} has a pivot");
        let p = self.p;
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&r| Reverse(self.rows[r][0].0));
        let mut x = vec![0u64; self.n_cols];
        x[free] = 1;
        for &r in &order {
            let row = &self.rows[r];
            let mut s = 0u64;
            for &(col, v) in &row[1..] {
                s = (s + v * x[col as usize]) % p;
            }
            x[row[0].0 as usize] = (p - s) % p;
        }
        x
    }

    /// Basis of the right kernel of the inserted rows, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<u64>> {
        self.free_columns().into_iter().map(|f| self.kernel_vector(f)).collect()
    }
}
