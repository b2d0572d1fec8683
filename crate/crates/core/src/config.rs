use std::collections::HashMap;

use crate::error::{CoreError, Result};
use crate::linalg;

/// A smooth rational curve on the ambient smooth surface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Curve {
    pub label: String,
    pub self_int: i64,
    /// `K·C`; by adjunction always `−2 − self_int`.
    pub k_degree: i64,
    /// Whether the curve is contracted to a point of the singular surface.
    pub contracted: bool,
}

/// Named curves with their integer intersection matrix and the ambient `K²`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveConfig {
    curves: Vec<Curve>,
    gram: Vec<Vec<i64>>,
    surface_k2: i64,
    index: HashMap<String, usize>,
}

impl CurveConfig {
    pub fn new(curves: Vec<Curve>, gram: Vec<Vec<i64>>, surface_k2: i64) -> Result<Self> {
        let n = curves.len();
        if gram.len() != n || gram.iter().any(|row| row.len() != n) {
            return Err(CoreError::InvalidInput(format!(
                "gram matrix must be {n}x{n} to match the curve list"
            )));
        }
        let mut index = HashMap::with_capacity(n);
        for (i, c) in curves.iter().enumerate() {
            if index.insert(c.label.clone(), i).is_some() {
                return Err(CoreError::InvalidInput(format!(
                    "duplicate label `{}`",
                    c.label
                )));
            }
            if gram[i][i] != c.self_int {
                return Err(CoreError::InvalidInput(format!(
                    "diagonal entry for `{}` is {} but self-intersection is {}",
                    c.label, gram[i][i], c.self_int
                )));
            }
            if c.k_degree != -2 - c.self_int {
                return Err(CoreError::InvalidInput(format!(
                    "`{}` violates adjunction: K·C = {} with C² = {}",
                    c.label, c.k_degree, c.self_int
                )));
            }
            if c.contracted && c.self_int > -2 {
                return Err(CoreError::InvalidInput(format!(
                    "contracted curve `{}` has self-intersection {} > −2",
                    c.label, c.self_int
                )));
            }
        }
        for i in 0..n {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(CoreError::NotSymmetric);
                }
                if gram[i][j] < 0 {
                    return Err(CoreError::InvalidInput(format!(
                        "distinct curves `{}` and `{}` meet negatively",
                        curves[i].label, curves[j].label
                    )));
                }
            }
        }
        Ok(CurveConfig {
            curves,
            gram,
            surface_k2,
            index,
        })
    }

    pub fn builder(surface_k2: i64) -> ConfigBuilder {
        ConfigBuilder {
            surface_k2,
            curves: Vec::new(),
            meets: Vec::new(),
        }
    }

    pub fn curves(&self) -> &[Curve] {
        &self.curves
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn surface_k2(&self) -> i64 {
        self.surface_k2
    }

    pub fn len(&self) -> usize {
        self.curves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.curves.is_empty()
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| CoreError::UnknownLabel(label.to_string()))
    }

    pub fn contains(&self, label: &str) -> bool {
        self.index.contains_key(label)
    }

    pub fn curve(&self, label: &str) -> Result<&Curve> {
        Ok(&self.curves[self.index_of(label)?])
    }

    /// Intersection number of two named curves.
    pub fn meet(&self, a: &str, b: &str) -> Result<i64> {
        Ok(self.gram[self.index_of(a)?][self.index_of(b)?])
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.curves.iter().map(|c| c.label.as_str())
    }

    pub fn contracted_labels(&self) -> Vec<&str> {
        self.curves
            .iter()
            .filter(|c| c.contracted)
            .map(|c| c.label.as_str())
            .collect()
    }

    /// Gram matrix restricted to the given labels, in the given order.
    pub fn sub_gram<S: AsRef<str>>(&self, labels: &[S]) -> Result<Vec<Vec<i64>>> {
        let idx = labels
            .iter()
            .map(|l| self.index_of(l.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Ok(idx
            .iter()
            .map(|&i| idx.iter().map(|&j| self.gram[i][j]).collect())
            .collect())
    }

    /// Whether the contracted curves form a negative definite configuration.
    pub fn contracted_negative_definite(&self) -> bool {
        let labels = self.contracted_labels();
        let g = self.sub_gram(&labels).expect("labels come from the config");
        linalg::is_negative_definite(&g).expect("sub-gram of a symmetric matrix")
    }
}

/// Incremental construction of a [`CurveConfig`] from self-intersections and incidences.
#[derive(Debug, Clone)]
pub struct ConfigBuilder {
    surface_k2: i64,
    curves: Vec<(String, i64, bool)>,
    meets: Vec<(String, String, i64)>,
}

impl ConfigBuilder {
    pub fn curve(mut self, label: impl Into<String>, self_int: i64, contracted: bool) -> Self {
        self.curves.push((label.into(), self_int, contracted));
        self
    }

    /// Records `a·b = n`; repeated calls for the same pair accumulate.
    pub fn meet(mut self, a: impl Into<String>, b: impl Into<String>, n: i64) -> Self {
        self.meets.push((a.into(), b.into(), n));
        self
    }

    pub fn add_curve(&mut self, label: impl Into<String>, self_int: i64, contracted: bool) {
        self.curves.push((label.into(), self_int, contracted));
    }

    pub fn add_meet(&mut self, a: impl Into<String>, b: impl Into<String>, n: i64) {
        self.meets.push((a.into(), b.into(), n));
    }

    pub fn build(self) -> Result<CurveConfig> {
        let n = self.curves.len();
        let mut gram = vec![vec![0i64; n]; n];
        let mut index = HashMap::new();
        let mut curves = Vec::with_capacity(n);
        for (i, (label, self_int, contracted)) in self.curves.into_iter().enumerate() {
            gram[i][i] = self_int;
            index.insert(label.clone(), i);
            curves.push(Curve {
                label,
                self_int,
                k_degree: -2 - self_int,
                contracted,
            });
        }
        for (a, b, m) in self.meets {
            let i = *index.get(&a).ok_or(CoreError::UnknownLabel(a.clone()))?;
            let j = *index.get(&b).ok_or(CoreError::UnknownLabel(b.clone()))?;
            if i == j {
                return Err(CoreError::InvalidInput(format!("`{a}` cannot meet itself")));
            }
            gram[i][j] += m;
            gram[j][i] += m;
        }
        CurveConfig::new(curves, gram, self.surface_k2)
    }
}
