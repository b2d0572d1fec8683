use std::collections::BTreeMap;

use dpz_core::{int, Rational};
use dpz_fibration::FibrationData;
use num_traits::{Signed, Zero};

use crate::certificate::Linear;
use crate::error::{CylinderError, Result};

/// The divisor of a construction with coefficients affine in `ε`, plus the
/// upper bounds on `ε` the construction states.
#[derive(Clone, Debug)]
pub(crate) struct Plan {
    pub branch: String,
    pub permutation: Vec<usize>,
    terms: BTreeMap<String, (Rational, Rational)>,
    window: Vec<(String, Rational)>,
}

impl Plan {
    pub fn new(branch: impl Into<String>, permutation: Vec<usize>) -> Self {
        Plan {
            branch: branch.into(),
            permutation,
            terms: BTreeMap::new(),
            window: Vec::new(),
        }
    }

    /// Adds `(c0 + c1·ε)·label`.
    pub fn add(&mut self, label: impl Into<String>, c0: Rational, c1: Rational) {
        let e = self
            .terms
            .entry(label.into())
            .or_insert_with(|| (Rational::zero(), Rational::zero()));
        e.0 += c0;
        e.1 += c1;
    }

    pub fn bound(&mut self, id: impl Into<String>, value: Rational) {
        self.window.push((id.into(), value));
    }

    pub fn uses_epsilon(&self) -> bool {
        !self.window.is_empty() || self.terms.values().any(|(_, c1)| !c1.is_zero())
    }

    /// Strict upper bounds on `ε`: the stated window and positivity of every
    /// coefficient. Errors if some coefficient is non-positive for all small `ε > 0`.
    pub fn bounds(&self) -> Result<Vec<(String, Rational)>> {
        let mut out = self.window.clone();
        for (label, (c0, c1)) in &self.terms {
            let ok = if c1.is_positive() {
                !c0.is_negative()
            } else {
                c0.is_positive()
            };
            if !ok {
                return Err(CylinderError::Ampleness {
                    id: format!("positivity:{label}"),
                    value: c0.clone(),
                });
            }
            if c1.is_negative() {
                out.push((format!("positivity:{label}"), c0 / -c1));
            }
        }
        if let Some((id, v)) = out.iter().find(|(_, v)| !v.is_positive()) {
            return Err(CylinderError::Ampleness {
                id: id.clone(),
                value: v.clone(),
            });
        }
        Ok(out)
    }

    /// Least upper bound of the window, `None` if `ε` is unused.
    pub fn supremum(&self) -> Result<Option<Rational>> {
        if !self.uses_epsilon() {
            return Ok(None);
        }
        let bounds = self.bounds()?;
        let min = bounds.into_iter().map(|(_, v)| v).min().ok_or_else(|| {
            CylinderError::VerificationFailed(format!(
                "branch {} has no upper bound on ε",
                self.branch
            ))
        })?;
        Ok(Some(min))
    }

    /// Half the least upper bound, or 0 when `ε` is unused.
    pub fn default_epsilon(&self) -> Result<Rational> {
        Ok(self
            .supremum()?
            .map(|m| m / int(2))
            .unwrap_or_else(Rational::zero))
    }

    pub fn evaluate(&self, eps: &Rational) -> Linear {
        self.terms
            .iter()
            .map(|(l, (c0, c1))| (l.clone(), c0 + c1 * eps))
            .collect()
    }
}

/// The I-1 fibers sorted ascending by slope `h(E_i)/α_i`, ties by index.
pub(crate) struct Sorted {
    /// Original 1-based fiber index at each position.
    pub index: Vec<usize>,
    pub alpha: Vec<i64>,
    pub a: Vec<Rational>,
    pub slope: Vec<Rational>,
}

impl Sorted {
    pub fn new(data: &FibrationData, h: &Linear) -> Self {
        let slope_of = |i: usize| &h[&format!("E{i}")] / int(data.alphas[i - 1]);
        let mut index: Vec<usize> = (1..=data.r()).collect();
        index.sort_by_key(|&i| slope_of(i));
        Sorted {
            alpha: index.iter().map(|&i| data.alphas[i - 1]).collect(),
            a: index.iter().map(|&i| h[&format!("E{i}")].clone()).collect(),
            slope: index.iter().map(|&i| slope_of(i)).collect(),
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.index.len()
    }

    pub fn e(&self, k: usize) -> String {
        format!("E{}", self.index[k])
    }

    pub fn ep(&self, k: usize) -> String {
        format!("E{}p", self.index[k])
    }

    /// `Σ_{j≤k} α_j`.
    pub fn alpha_through(&self, k: usize) -> i64 {
        self.alpha[..=k].iter().sum()
    }

    /// `Σ_{j≤k} a_j`.
    pub fn a_through(&self, k: usize) -> Rational {
        self.a[..=k].iter().sum()
    }

    /// First position where the running `α` sum reaches `m`.
    pub fn first_reaching(&self, m: i64) -> Option<usize> {
        (0..self.len()).find(|&k| self.alpha_through(k) >= m)
    }

    /// Last position before `k` with slope strictly below the slope at `k`.
    pub fn last_below(&self, k: usize) -> Option<usize> {
        (0..k).rev().find(|&j| self.slope[j] < self.slope[k])
    }

    /// Sorted I-1 indices followed by the remaining fibers in order.
    pub fn permutation(&self, fiber_count: usize) -> Vec<usize> {
        self.index
            .iter()
            .copied()
            .chain(self.len() + 1..=fiber_count)
            .collect()
    }
}
