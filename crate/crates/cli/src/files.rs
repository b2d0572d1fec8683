//! JSON file formats. Rationals are written as `"p/q"` strings; integers are
//! accepted as plain numbers too.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use dpz_core::{format_rational, parse_rational, Rational};
use dpz_cylinder::{AmpleInput, CylinderCertificate};
use dpz_dynkin::{DynkinType, LatticeClass};
use dpz_fibration::{
    template_from_dynkin, validate_fibration, CaseTag, Condition, FibrationData, SurfaceModel,
};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

pub fn to_pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("file formats serialize");
    s.push('\n');
    s
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(untagged)]
pub enum RationalValue {
    Int(i64),
    Text(String),
}

impl RationalValue {
    pub fn parse(&self) -> Result<Rational, CliError> {
        match self {
            RationalValue::Int(n) => Ok(Rational::from_integer((*n).into())),
            RationalValue::Text(s) => parse_rational(s).map_err(|e| CliError::Parse(e.to_string())),
        }
    }
}

#[derive(Clone, Copy, Debug, Deserialize, Serialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum SurfaceKind {
    Fibration,
    Dynkin,
}

#[derive(Clone, Copy, Debug, Deserialize, Serialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum ConditionSpec {
    Star,
    StarStar,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct FibrationSpec {
    pub condition: ConditionSpec,
    pub m0: i64,
    #[serde(default)]
    pub m_inf: Option<i64>,
    #[serde(default)]
    pub alphas: Vec<i64>,
    #[serde(default)]
    pub betas: Vec<(i64, i64)>,
    #[serde(default)]
    pub gammas: Vec<i64>,
}

impl From<&FibrationSpec> for FibrationData {
    fn from(s: &FibrationSpec) -> Self {
        FibrationData {
            condition: match s.condition {
                ConditionSpec::Star => Condition::Star,
                ConditionSpec::StarStar => Condition::StarStar,
            },
            m0: s.m0,
            m_inf: s.m_inf,
            alphas: s.alphas.clone(),
            betas: s.betas.clone(),
            gammas: s.gammas.clone(),
        }
    }
}

impl From<&FibrationData> for FibrationSpec {
    fn from(d: &FibrationData) -> Self {
        FibrationSpec {
            condition: match d.condition {
                Condition::Star => ConditionSpec::Star,
                Condition::StarStar => ConditionSpec::StarStar,
            },
            m0: d.m0,
            m_inf: d.m_inf,
            alphas: d.alphas.clone(),
            betas: d.betas.clone(),
            gammas: d.gammas.clone(),
        }
    }
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct DynkinSpec {
    #[serde(rename = "type")]
    pub ty: String,
    #[serde(default)]
    pub alpha_partition: Vec<i64>,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct SurfaceSpecFile {
    pub kind: SurfaceKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fibration: Option<FibrationSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dynkin: Option<DynkinSpec>,
}

/// A validated surface: its fibration data, the model and, for a Du Val type,
/// the case its template dispatches to.
pub struct Surface {
    pub data: FibrationData,
    pub model: SurfaceModel,
    pub template_case: Option<CaseTag>,
}

impl SurfaceSpecFile {
    pub fn resolve(&self) -> Result<Surface, CliError> {
        let (data, template_case) =
            match (self.kind, &self.fibration, &self.dynkin) {
                (SurfaceKind::Fibration, Some(f), None) => (validate_fibration(f.into())?, None),
                (SurfaceKind::Dynkin, None, Some(d)) => {
                    let ty: DynkinType = d.ty.parse()?;
                    let (data, case) = template_from_dynkin(&ty, &d.alpha_partition)?;
                    (data, Some(case))
                }
                _ => return Err(CliError::Parse(
                    "a surface file needs exactly one of `fibration` or `dynkin`, matching `kind`"
                        .into(),
                )),
            };
        let model = SurfaceModel::new(data.clone())?;
        Ok(Surface {
            data,
            model,
            template_case,
        })
    }
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct AmpleSpecFile {
    pub coeffs: BTreeMap<String, RationalValue>,
}

impl AmpleSpecFile {
    pub fn to_input(&self) -> Result<AmpleInput, CliError> {
        let terms = self
            .coeffs
            .iter()
            .map(|(l, v)| Ok((l.clone(), v.parse()?)))
            .collect::<Result<Vec<_>, CliError>>()?;
        Ok(AmpleInput::new(terms))
    }
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct CertificateFile {
    pub case: String,
    pub branch: String,
    pub epsilon: String,
    pub divisor: BTreeMap<String, String>,
    pub removed_curves: Vec<String>,
    pub kind: String,
    pub permutation: Vec<usize>,
    #[serde(default)]
    pub report: Vec<String>,
}

impl From<&CylinderCertificate> for CertificateFile {
    fn from(c: &CylinderCertificate) -> Self {
        CertificateFile {
            case: c.case.to_string(),
            branch: c.branch.clone(),
            epsilon: format_rational(&c.epsilon),
            divisor: c
                .divisor
                .iter()
                .map(|(l, v)| (l.clone(), format_rational(v)))
                .collect(),
            removed_curves: c.removed_curves.iter().cloned().collect(),
            kind: c.kind.to_string(),
            permutation: c.permutation.clone(),
            report: c.report.clone(),
        }
    }
}

impl CertificateFile {
    pub fn to_certificate(&self) -> Result<CylinderCertificate, CliError> {
        let rational = |s: &str| parse_rational(s).map_err(|e| CliError::Parse(e.to_string()));
        Ok(CylinderCertificate {
            case: self
                .case
                .parse()
                .map_err(|e: dpz_fibration::FibrationError| CliError::Parse(e.to_string()))?,
            branch: self.branch.clone(),
            epsilon: rational(&self.epsilon)?,
            divisor: self
                .divisor
                .iter()
                .map(|(l, v)| Ok((l.clone(), rational(v)?)))
                .collect::<Result<_, CliError>>()?,
            removed_curves: self.removed_curves.iter().cloned().collect(),
            kind: self
                .kind
                .parse()
                .map_err(|e: dpz_cylinder::CylinderError| CliError::Parse(e.to_string()))?,
            permutation: self.permutation.clone(),
            report: self.report.clone(),
        })
    }
}

/// An A_n chain and further roots orthogonal to it, as `[d, x1, …, x7]` vectors.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ChainSpecFile {
    pub chain: Vec<[i64; 8]>,
    #[serde(default)]
    pub extra_roots: Vec<[i64; 8]>,
}

pub fn classes(v: &[[i64; 8]]) -> Vec<LatticeClass> {
    v.iter().map(|c| LatticeClass(*c)).collect()
}
