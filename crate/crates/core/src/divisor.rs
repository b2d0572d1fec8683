use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use crate::config::CurveConfig;
use crate::error::{CoreError, Result};
use crate::scalar::Scalar;

/// `kappa·K + Σ c_i·C_i` over the curves of some [`CurveConfig`].
///
/// Zero coefficients are never stored, so structural equality is equality of divisors.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtendedDivisor<T> {
    kappa: T,
    coeffs: BTreeMap<String, T>,
}

impl<T: Scalar> Default for ExtendedDivisor<T> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<T: Scalar> ExtendedDivisor<T> {
    pub fn zero() -> Self {
        ExtendedDivisor {
            kappa: T::zero(),
            coeffs: BTreeMap::new(),
        }
    }

    /// The single curve `label` with coefficient 1.
    pub fn curve(label: impl Into<String>) -> Self {
        Self::zero().with(label, T::one())
    }

    /// `−K`.
    pub fn anticanonical() -> Self {
        ExtendedDivisor {
            kappa: -T::one(),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn from_terms<S: Into<String>>(kappa: T, terms: impl IntoIterator<Item = (S, T)>) -> Self {
        let mut d = ExtendedDivisor {
            kappa,
            coeffs: BTreeMap::new(),
        };
        for (l, c) in terms {
            d.add_term(l, c);
        }
        d
    }

    /// Adds `c·label` and returns the result.
    pub fn with(mut self, label: impl Into<String>, c: T) -> Self {
        self.add_term(label, c);
        self
    }

    pub fn add_term(&mut self, label: impl Into<String>, c: T) {
        let label = label.into();
        let v = self.coeffs.remove(&label).unwrap_or_else(T::zero) + c;
        if !v.is_zero() {
            self.coeffs.insert(label, v);
        }
    }

    pub fn kappa(&self) -> &T {
        &self.kappa
    }

    pub fn set_kappa(&mut self, kappa: T) {
        self.kappa = kappa;
    }

    pub fn coeff(&self, label: &str) -> T {
        self.coeffs.get(label).cloned().unwrap_or_else(T::zero)
    }

    pub fn coeffs(&self) -> &BTreeMap<String, T> {
        &self.coeffs
    }

    pub fn terms(&self) -> impl Iterator<Item = (&str, &T)> {
        self.coeffs.iter().map(|(l, c)| (l.as_str(), c))
    }

    pub fn is_zero(&self) -> bool {
        self.kappa.is_zero() && self.coeffs.is_empty()
    }

    /// Labels with a positive coefficient.
    pub fn positive_support(&self) -> Vec<&str> {
        self.coeffs
            .iter()
            .filter(|(_, c)| c.is_positive())
            .map(|(l, _)| l.as_str())
            .collect()
    }

    pub fn scale(&self, s: &T) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        ExtendedDivisor {
            kappa: self.kappa.clone() * s.clone(),
            coeffs: self
                .coeffs
                .iter()
                .map(|(l, c)| (l.clone(), c.clone() * s.clone()))
                .collect(),
        }
    }

    pub fn check_labels(&self, config: &CurveConfig) -> Result<()> {
        match self.coeffs.keys().find(|l| !config.contains(l)) {
            Some(l) => Err(CoreError::UnknownLabel(l.clone())),
            None => Ok(()),
        }
    }
}

impl<T: Scalar> Add for ExtendedDivisor<T> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self.kappa = self.kappa + rhs.kappa;
        for (l, c) in rhs.coeffs {
            self.add_term(l, c);
        }
        self
    }
}

impl<T: Scalar> Neg for ExtendedDivisor<T> {
    type Output = Self;
    fn neg(self) -> Self {
        ExtendedDivisor {
            kappa: -self.kappa,
            coeffs: self.coeffs.into_iter().map(|(l, c)| (l, -c)).collect(),
        }
    }
}

impl<T: Scalar> Sub for ExtendedDivisor<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

/// Intersection number of two extended divisors on `config`.
///
/// Uses `K·K = surface_k2`, `K·C = k_degree(C)` and the Gram matrix.
pub fn pair<T: Scalar>(
    config: &CurveConfig,
    a: &ExtendedDivisor<T>,
    b: &ExtendedDivisor<T>,
) -> Result<T> {
    let resolve = |d: &ExtendedDivisor<T>| -> Result<Vec<(usize, T)>> {
        d.coeffs
            .iter()
            .map(|(l, c)| Ok((config.index_of(l)?, c.clone())))
            .collect()
    };
    let ta = resolve(a)?;
    let tb = resolve(b)?;
    let curves = config.curves();
    let gram = config.gram();
    let mut total = a.kappa.clone() * b.kappa.clone() * T::from_int(config.surface_k2());
    if !a.kappa.is_zero() {
        for (j, c) in &tb {
            total = total + a.kappa.clone() * c.clone() * T::from_int(curves[*j].k_degree);
        }
    }
    if !b.kappa.is_zero() {
        for (i, c) in &ta {
            total = total + b.kappa.clone() * c.clone() * T::from_int(curves[*i].k_degree);
        }
    }
    for (i, ci) in &ta {
        for (j, cj) in &tb {
            let g = gram[*i][*j];
            if g != 0 {
                total = total + ci.clone() * cj.clone() * T::from_int(g);
            }
        }
    }
    Ok(total)
}

/// `½(Δ·Δ + Δ·(−K))`, the Riemann–Roch lower bound for `dim |Δ|` on a rational surface.
pub fn riemann_roch_lower_bound<T: Scalar>(
    config: &CurveConfig,
    delta: &ExtendedDivisor<T>,
) -> Result<T> {
    let sq = pair(config, delta, delta)?;
    let deg = pair(config, delta, &ExtendedDivisor::anticanonical())?;
    Ok((sq + deg) * T::half())
}
