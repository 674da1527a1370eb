//! k-regularity: every non-singular square submatrix `R` has `k·R⁻¹` integral.

use num_traits::{One, Zero};

use super::{Rational, RationalMatrix};

/// Exact Gauss–Jordan inverse; `None` when singular or not square.
pub fn invert(m: &RationalMatrix) -> Option<RationalMatrix> {
    let n = m.rows();
    if n != m.cols() {
        return None;
    }
    let mut a: Vec<Vec<Rational>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut inv: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rational::one() } else { Rational::zero() })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] /= &p;
            inv[col][j] /= &p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for j in 0..n {
                if !a[col][j].is_zero() {
                    let d = &factor * &a[col][j];
                    a[r][j] -= d;
                }
                if !inv[col][j].is_zero() {
                    let d = &factor * &inv[col][j];
                    inv[r][j] -= d;
                }
            }
        }
    }
    Some(RationalMatrix::from_rows(inv))
}

/// First square submatrix (rows, cols) of order at most `max_order` that is
/// non-singular with `k·R⁻¹` non-integral.
///
/// Scan order: increasing order, then lexicographic row sets, then
/// lexicographic column sets.
pub fn find_k_regular_violation(
    a: &RationalMatrix,
    k: u32,
    max_order: usize,
) -> Option<(Vec<usize>, Vec<usize>)> {
    let k = super::rational(k as i64);
    let top = max_order.min(a.rows()).min(a.cols());
    for order in 1..=top {
        for rows in combinations(a.rows(), order) {
            for cols in combinations(a.cols(), order) {
                let r = a.submatrix(&rows, &cols);
                if let Some(inv) = invert(&r) {
                    if !inv.scale(&k).is_integral() {
                        return Some((rows, cols));
                    }
                }
            }
        }
    }
    None
}

pub fn check_k_regular(a: &RationalMatrix, k: u32, max_order: usize) -> bool {
    find_k_regular_violation(a, k, max_order).is_none()
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
