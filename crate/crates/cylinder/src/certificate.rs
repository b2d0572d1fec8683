use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use dpz_core::Rational;
use dpz_fibration::CaseTag;
use num_traits::Zero;

use crate::error::CylinderError;

/// A formal ℚ-combination of curve classes, keyed by label.
pub type Linear = BTreeMap<String, Rational>;

/// Coefficients of `H` in the free basis of the case (`F`, `E1`, … or `E1`, …).
/// Missing basis labels count as 0.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct AmpleInput {
    pub coeffs: Linear,
}

impl AmpleInput {
    pub fn new<S: Into<String>>(terms: impl IntoIterator<Item = (S, Rational)>) -> Self {
        AmpleInput {
            coeffs: terms.into_iter().map(|(l, c)| (l.into(), c)).collect(),
        }
    }

    pub fn coeff(&self, label: &str) -> Rational {
        self.coeffs
            .get(label)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        AmpleInput {
            coeffs: self
                .coeffs
                .iter()
                .map(|(l, c)| (l.clone(), c * s))
                .collect(),
        }
    }
}

/// The shape of the complement `S ∖ Supp(D)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum CylinderKind {
    /// `𝔸¹ × (𝔸¹ minus k points)`.
    Cyl(usize),
    /// `𝔸¹ × 𝔸¹_*`.
    CylStar,
}

impl fmt::Display for CylinderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CylinderKind::Cyl(k) => write!(f, "Cyl_{k}"),
            CylinderKind::CylStar => f.write_str("CylStar"),
        }
    }
}

impl FromStr for CylinderKind {
    type Err = CylinderError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "CylStar" {
            return Ok(CylinderKind::CylStar);
        }
        s.strip_prefix("Cyl_")
            .and_then(|k| k.parse().ok())
            .map(CylinderKind::Cyl)
            .ok_or_else(|| CylinderError::InvalidInput(format!("unknown cylinder kind `{s}`")))
    }
}

/// An effective `D ∼_ℚ H` on the singular surface together with the curves of
/// the resolution whose complement is the cylinder.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CylinderCertificate {
    pub case: CaseTag,
    /// Which branch of the construction produced `divisor`.
    pub branch: String,
    /// 0 when the construction has no free parameter.
    pub epsilon: Rational,
    /// Coefficients of `D` on pushforward curve classes.
    pub divisor: Linear,
    /// Curves of the resolution removed to obtain the cylinder.
    pub removed_curves: BTreeSet<String>,
    pub kind: CylinderKind,
    /// Original fiber index at each sorted position.
    pub permutation: Vec<usize>,
    /// Checks passed while constructing.
    pub report: Vec<String>,
}

/// One evaluated inequality: identifier, value and whether it holds.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct InequalityCheck {
    pub id: String,
    pub value: Rational,
    pub pass: bool,
}
