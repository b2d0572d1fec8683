//! Exact dense linear algebra used by the pairing code.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{CoreError, Result};
use crate::scalar::Scalar;

fn check_symmetric(m: &[Vec<i64>]) -> Result<()> {
    let n = m.len();
    for (i, row) in m.iter().enumerate() {
        if row.len() != n {
            return Err(CoreError::InvalidInput(format!(
                "row {i} has length {} in a {n}x{n} matrix",
                row.len()
            )));
        }
    }
    if (0..n).any(|i| (0..i).any(|j| m[i][j] != m[j][i])) {
        return Err(CoreError::NotSymmetric);
    }
    Ok(())
}

/// Determinant of an integer matrix by fraction-free (Bareiss) elimination.
pub fn determinant(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(p) => {
                    a.swap(k, p);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// The determinants of the upper-left k×k blocks, k = 1..n.
pub fn leading_principal_minors(m: &[Vec<i64>]) -> Result<Vec<BigInt>> {
    check_symmetric(m)?;
    Ok((1..=m.len())
        .map(|k| {
            let block: Vec<Vec<i64>> = m[..k].iter().map(|row| row[..k].to_vec()).collect();
            determinant(&block)
        })
        .collect())
}

/// Sylvester's criterion for negative definiteness: the k-th leading minor has sign (−1)^k.
///
/// The empty matrix counts as negative definite.
pub fn is_negative_definite(m: &[Vec<i64>]) -> Result<bool> {
    let minors = leading_principal_minors(m)?;
    Ok(minors.iter().enumerate().all(|(i, d)| {
        if i % 2 == 0 {
            d.is_negative()
        } else {
            d.is_positive()
        }
    }))
}

/// Solves the square system `a·x = b`; `None` when `a` is singular.
pub fn solve_linear<T: Scalar>(a: &[Vec<T>], b: &[T]) -> Option<Vec<T>> {
    let n = a.len();
    assert_eq!(b.len(), n, "right-hand side length must match");
    let mut m: Vec<Vec<T>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            assert_eq!(row.len(), n, "matrix must be square");
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !m[i][c].is_zero())?;
        m.swap(c, p);
        let inv = T::one() / m[c][c].clone();
        for x in m[c].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        let pivot = m[c].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == c || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row[c..].iter_mut().zip(&pivot[c..]) {
                *x = x.clone() - p.clone() * f.clone();
            }
        }
    }
    Some(m.into_iter().map(|mut row| row.pop().unwrap()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rational};
    use num_rational::Ratio;

    #[test]
    fn negated_cartan_matrices_are_negative_definite() {
        let a3 = vec![vec![-2, 1, 0], vec![1, -2, 1], vec![0, 1, -2]];
        assert!(is_negative_definite(&a3).unwrap());
        assert_eq!(
            leading_principal_minors(&a3).unwrap(),
            vec![BigInt::from(-2), BigInt::from(3), BigInt::from(-4)]
        );
        let a2_a1 = vec![vec![-2, 1, 0], vec![1, -2, 0], vec![0, 0, -2]];
        assert_eq!(
            leading_principal_minors(&a2_a1).unwrap(),
            vec![BigInt::from(-2), BigInt::from(3), BigInt::from(-6)]
        );
        assert!(is_negative_definite(&a2_a1).unwrap());
    }

    #[test]
    fn degenerate_and_indefinite_forms() {
        assert!(!is_negative_definite(&[vec![0]]).unwrap());
        // affine D4: the extended Dynkin diagram is only semidefinite
        let d4: Vec<Vec<i64>> = (0..5)
            .map(|i| {
                (0..5)
                    .map(|j| match (i, j) {
                        _ if i == j => -2,
                        (0, _) | (_, 0) => 1,
                        _ => 0,
                    })
                    .collect()
            })
            .collect();
        assert!(!is_negative_definite(&d4).unwrap());
        assert!(!is_negative_definite(&[vec![-1, 2], vec![2, -1]]).unwrap());
        assert_eq!(
            is_negative_definite(&[vec![-2, 1], vec![0, -2]]),
            Err(CoreError::NotSymmetric)
        );
    }

    #[test]
    fn determinant_needs_row_swaps() {
        assert_eq!(determinant(&[vec![0, 1], vec![1, 0]]), BigInt::from(-1));
        assert_eq!(determinant(&[vec![0, 0], vec![1, 0]]), BigInt::zero());
        let m = vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]];
        assert_eq!(determinant(&m), BigInt::from(4));
    }

    #[test]
    fn solve_small_systems() {
        let a = vec![vec![rat(-2, 1), rat(1, 1)], vec![rat(1, 1), rat(-2, 1)]];
        let x = solve_linear(&a, &[rat(-1, 1), Rational::zero()]).unwrap();
        assert_eq!(x, vec![rat(2, 3), rat(1, 3)]);
        let singular = vec![vec![rat(1, 1), rat(2, 1)], vec![rat(2, 1), rat(4, 1)]];
        assert!(solve_linear(&singular, &[rat(1, 1), rat(1, 1)]).is_none());
        // same system with machine-word fractions
        let a64: Vec<Vec<Ratio<i64>>> = vec![
            vec![Ratio::from(-2), Ratio::from(1)],
            vec![Ratio::from(1), Ratio::from(-2)],
        ];
        let x64 = solve_linear(&a64, &[Ratio::from(-1), Ratio::from(0)]).unwrap();
        assert_eq!(x64, vec![Ratio::new(2, 3), Ratio::new(1, 3)]);
    }
}
