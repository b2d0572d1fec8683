use crate::error::{FibrationError, Result};

/// Whether the fibration has one contracted section `D0` or two, `D0` and `Dinf`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Condition {
    Star,
    StarStar,
}

/// Numerical type of a ℙ¹-fibration whose singular fibers consist of (−1)- and
/// (−2)-curves.
///
/// `r = alphas.len()` fibers of type I-1, `s = betas.len()` of type I-2 and
/// `t = gammas.len()` of type II; the section `D0` has self-intersection
/// `−m0`, and `Dinf` (double-section case only) has `−m_inf`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FibrationData {
    pub condition: Condition,
    pub m0: i64,
    pub m_inf: Option<i64>,
    pub alphas: Vec<i64>,
    pub betas: Vec<(i64, i64)>,
    pub gammas: Vec<i64>,
}

impl FibrationData {
    pub fn r(&self) -> usize {
        self.alphas.len()
    }

    pub fn s(&self) -> usize {
        self.betas.len()
    }

    pub fn t(&self) -> usize {
        self.gammas.len()
    }

    pub fn alpha(&self) -> i64 {
        self.alphas.iter().sum()
    }

    pub fn beta(&self) -> i64 {
        self.betas.iter().map(|b| b.0).sum()
    }

    pub fn beta_prime(&self) -> i64 {
        self.betas.iter().map(|b| b.1).sum()
    }

    pub fn gamma(&self) -> i64 {
        self.gammas.iter().sum()
    }

    /// `m_inf`, which is 2 by convention for a single section.
    pub fn m_inf_value(&self) -> i64 {
        self.m_inf.unwrap_or(2)
    }

    /// `K²` of the smooth surface, `8 − (α+β+β′+γ)`.
    pub fn k2(&self) -> i64 {
        8 - (self.alpha() + self.beta() + self.beta_prime() + self.gamma())
    }

    /// Number of singular fibers, `r + s + t`.
    pub fn fiber_count(&self) -> usize {
        self.r() + self.s() + self.t()
    }
}

/// Checks the list shapes, section weights and the degree identity
/// `8 − (α+β+β′+γ) = 4 − m0` (one section) or `6 − m0 − m_inf` (two).
pub fn validate_fibration(data: FibrationData) -> Result<FibrationData> {
    if data.m0 < 2 {
        return Err(FibrationError::InvalidSectionWeight(data.m0));
    }
    let rhs = match (data.condition, data.m_inf) {
        (Condition::Star, None) => 4 - data.m0,
        (Condition::Star, Some(_)) => {
            return Err(FibrationError::InvalidInput(
                "m_inf is only given with two sections".into(),
            ))
        }
        (Condition::StarStar, None) => {
            return Err(FibrationError::InvalidInput(
                "two sections need m_inf".into(),
            ))
        }
        (Condition::StarStar, Some(m)) if m < 2 => {
            return Err(FibrationError::InvalidSectionWeight(m))
        }
        (Condition::StarStar, Some(m)) => 6 - data.m0 - m,
    };
    if let Some(a) = data.alphas.iter().find(|&&a| a < 1) {
        return Err(FibrationError::InvalidInput(format!(
            "α_i must be ≥ 1, got {a}"
        )));
    }
    if let Some(b) = data.betas.iter().find(|b| b.1 < 1 || b.0 < b.1) {
        return Err(FibrationError::InvalidInput(format!(
            "need β_j ≥ β′_j ≥ 1, got {b:?}"
        )));
    }
    if let Some(g) = data.gammas.iter().find(|&&g| g < 2) {
        return Err(FibrationError::InvalidInput(format!(
            "γ_k must be ≥ 2, got {g}"
        )));
    }
    let lhs = data.k2();
    if lhs != rhs {
        return Err(FibrationError::DegreeMismatch { lhs, rhs });
    }
    Ok(data)
}
