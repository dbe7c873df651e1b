use super::{MultiPoly, PolyError};

fn check_square(m: &[Vec<MultiPoly>]) -> Result<usize, PolyError> {
    let n = m.len();
    for (row, r) in m.iter().enumerate() {
        if r.len() != n {
            return Err(PolyError::NotSquare { rows: n, row, len: r.len() });
        }
    }
    let vars = m.first().and_then(|r| r.first()).map(MultiPoly::n_vars);
    if let Some(v) = vars {
        if let Some(bad) = m.iter().flatten().find(|p| p.n_vars() != v) {
            return Err(PolyError::VarMismatch(v, bad.n_vars()));
        }
    }
    Ok(n)
}

/// Determinant by Laplace expansion, memoised over used-column subsets.
pub fn det_cofactor(m: &[Vec<MultiPoly>], n_vars: usize) -> Result<MultiPoly, PolyError> {
    let n = check_square(m)?;
    assert!(n <= 20, "cofactor expansion is exponential");
    let mut dp: Vec<Option<MultiPoly>> = vec![None; 1 << n];
    dp[0] = Some(MultiPoly::one(n_vars));
    for mask in 0usize..(1 << n) {
        let Some(val) = dp[mask].take() else { continue };
        let r = mask.count_ones() as usize;
        if r == n {
            dp[mask] = Some(val);
            continue;
        }
        for j in (0..n).filter(|j| mask & (1 << j) == 0) {
            if m[r][j].is_zero() {
                continue;
            }
            let above = (mask >> (j + 1)).count_ones();
            let mut term = &m[r][j] * &val;
            if above % 2 == 1 {
                term = -&term;
            }
            let slot = &mut dp[mask | (1 << j)];
            *slot = Some(match slot.take() {
                Some(acc) => &acc + &term,
                None => term,
            });
        }
    }
    Ok(dp[(1 << n) - 1].take().unwrap_or_else(|| MultiPoly::zero(n_vars)))
}

/// Fraction-free (Bareiss) elimination with exact polynomial division.
pub fn det_bareiss(m: &[Vec<MultiPoly>], n_vars: usize) -> Result<MultiPoly, PolyError> {
    let n = check_square(m)?;
    if n == 0 {
        return Ok(MultiPoly::one(n_vars));
    }
    let mut a: Vec<Vec<MultiPoly>> = m.to_vec();
    let mut negate = false;
    let mut prev = MultiPoly::one(n_vars);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return Ok(MultiPoly::zero(n_vars)),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.div_exact(&prev)?;
            }
            a[i][k] = MultiPoly::zero(n_vars);
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if negate { -&det } else { det })
}

/// Exact determinant: cofactor expansion up to 5x5, Bareiss beyond.
pub fn det_poly_matrix(m: &[Vec<MultiPoly>], n_vars: usize) -> Result<MultiPoly, PolyError> {
    if check_square(m)? <= 5 {
        det_cofactor(m, n_vars)
    } else {
        det_bareiss(m, n_vars)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::tests::arb_poly;
    use crate::poly::{product_of_differences, rat};
    use proptest::prelude::*;

    fn identity(n: usize, vars: usize) -> Vec<Vec<MultiPoly>> {
        (0..n)
            .map(|i| (0..n).map(|j| if i == j { MultiPoly::one(vars) } else { MultiPoly::zero(vars) }).collect())
            .collect()
    }

    #[test]
    fn identity_and_vandermonde() {
        assert_eq!(det_poly_matrix(&identity(3, 2), 2).unwrap(), MultiPoly::one(2));
        assert_eq!(det_bareiss(&identity(6, 2), 2).unwrap(), MultiPoly::one(2));
        let vander: Vec<Vec<MultiPoly>> =
            (1..=3).map(|i| (0..3).map(|e| MultiPoly::var(3, i).pow(e)).collect()).collect();
        let det = det_poly_matrix(&vander, 3).unwrap();
        let q = product_of_differences(3, [(1, 2), (1, 3), (2, 3)]);
        assert!(det == q || det == -&q);
        assert_eq!(det_bareiss(&vander, 3).unwrap(), det);
    }

    #[test]
    fn vandermonde_six_by_bareiss() {
        let vander: Vec<Vec<MultiPoly>> =
            (1..=6).map(|i| (0..6).map(|e| MultiPoly::var(6, i).pow(e)).collect()).collect();
        let pairs: Vec<_> = (1..=6).flat_map(|i| (i + 1..=6).map(move |j| (j, i))).collect();
        assert_eq!(det_poly_matrix(&vander, 6).unwrap(), product_of_differences(6, pairs));
    }

    #[test]
    fn singular_and_errors() {
        let row = vec![MultiPoly::var(2, 1), MultiPoly::var(2, 2)];
        assert!(det_bareiss(&[row.clone(), row.clone()], 2).unwrap().is_zero());
        let bad = vec![row.clone(), vec![MultiPoly::one(2)]];
        assert_eq!(det_poly_matrix(&bad, 2), Err(PolyError::NotSquare { rows: 2, row: 1, len: 1 }));
        // leading zero pivot needs a row swap
        let z = MultiPoly::zero(1);
        let o = MultiPoly::one(1);
        let m = vec![vec![z.clone(), o.clone()], vec![o.clone(), z.clone()]];
        assert_eq!(det_bareiss(&m, 1).unwrap(), MultiPoly::constant(1, rat(-1)));
    }

    fn arb_matrix(n: usize) -> impl Strategy<Value = Vec<Vec<MultiPoly>>> {
        proptest::collection::vec(proptest::collection::vec(arb_poly(3), n), n)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn bareiss_matches_cofactor_3(m in arb_matrix(3)) {
            prop_assert_eq!(det_bareiss(&m, 3).unwrap(), det_cofactor(&m, 3).unwrap());
        }

        #[test]
        fn bareiss_matches_cofactor_4(m in arb_matrix(4)) {
            prop_assert_eq!(det_bareiss(&m, 3).unwrap(), det_cofactor(&m, 3).unwrap());
        }
    }
}
