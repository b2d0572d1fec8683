//! Closed-form divisors supported on a chain of (−2)-curves.

use std::collections::BTreeMap;

use crate::config::CurveConfig;
use crate::divisor::ExtendedDivisor;
use crate::error::{CoreError, Result};
use crate::linalg::{is_negative_definite, solve_linear};
use crate::scalar::{int, rat, Rational, Scalar};

/// An A_n chain `D1 - D2 - … - Dn` of contracted (−2)-curves on a degree-2 surface.
pub fn a_chain_config(n: usize) -> CurveConfig {
    let mut b = CurveConfig::builder(2);
    for j in 1..=n {
        b.add_curve(format!("D{j}"), -2, true);
    }
    for j in 1..n {
        b.add_meet(format!("D{j}"), format!("D{}", j + 1), 1);
    }
    b.build().expect("a chain is a valid configuration")
}

/// `(Σ a_j D_j)²` on an A_n chain: `−(a_1² + a_n²) − Σ (a_j − a_{j+1})²`.
pub fn an_weighted_self_intersection(a: &[i64]) -> Result<Rational> {
    let (Some(first), Some(last)) = (a.first(), a.last()) else {
        return Err(CoreError::InvalidInput(
            "weight list must be nonempty".into(),
        ));
    };
    if let Some(bad) = a.iter().find(|&&x| x <= 0) {
        return Err(CoreError::InvalidInput(format!(
            "weights must be positive, got {bad}"
        )));
    }
    let diffs: i64 = a.windows(2).map(|w| (w[0] - w[1]).pow(2)).sum();
    Ok(int(-(first * first) - last * last - diffs))
}

/// The divisor `B_ℓ` on an A_n chain with `B_ℓ·D_j = −δ_{jℓ}`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlDivisor {
    /// Coefficients of `D1..Dn`.
    pub coefficients: Vec<Rational>,
    pub self_int: Rational,
}

pub fn bl_divisor(n: usize, ell: usize) -> Result<BlDivisor> {
    if n == 0 || ell == 0 || ell > n {
        return Err(CoreError::InvalidInput(format!(
            "need 1 ≤ ℓ ≤ n, got n = {n}, ℓ = {ell}"
        )));
    }
    let (n, ell) = (n as i64, ell as i64);
    let coefficients = (1..=n)
        .map(|j| {
            if j <= ell {
                rat((n - ell + 1) * j, n + 1)
            } else {
                rat(ell * (n - j + 1), n + 1)
            }
        })
        .collect();
    Ok(BlDivisor {
        coefficients,
        self_int: rat(-(n - ell + 1) * ell, n + 1),
    })
}

/// The unique divisor supported on `support` whose pairing with each support curve
/// equals the target (missing targets are 0).
pub fn solve_prescribed_pairing<T: Scalar, S: AsRef<str>>(
    config: &CurveConfig,
    support: &[S],
    targets: &BTreeMap<String, T>,
) -> Result<ExtendedDivisor<T>> {
    let labels: Vec<&str> = support.iter().map(|s| s.as_ref()).collect();
    if let Some(l) = targets.keys().find(|l| !labels.contains(&l.as_str())) {
        return Err(CoreError::InvalidInput(format!(
            "target `{l}` is not in the support"
        )));
    }
    let g = config.sub_gram(&labels)?;
    if !is_negative_definite(&g)? {
        return Err(CoreError::NotNegativeDefinite);
    }
    let a: Vec<Vec<T>> = g
        .iter()
        .map(|row| row.iter().map(|&x| T::from_int(x)).collect())
        .collect();
    let b: Vec<T> = labels
        .iter()
        .map(|l| targets.get(*l).cloned().unwrap_or_else(T::zero))
        .collect();
    let x = solve_linear(&a, &b).ok_or(CoreError::Singular)?;
    Ok(ExtendedDivisor::from_terms(
        T::zero(),
        labels.into_iter().zip(x),
    ))
}
