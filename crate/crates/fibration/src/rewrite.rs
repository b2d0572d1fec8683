use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use dpz_core::{int, rat, Rational};
use num_traits::{One, Zero};

use crate::data::{Condition, FibrationData};
use crate::error::{FibrationError, Result};
use crate::model::{has_gamma_shape, make_fibers, section_intersection};

/// Which cylinder construction applies; fixes the free basis and rewrite rules.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum CaseTag {
    /// One section and enough room for the general-fiber construction.
    DE,
    /// One section, a II fiber of length 4 and the extra curve `Gamma`.
    D5,
    /// Two sections, one II fiber of length 3.
    A5P,
    /// Two sections, one II fiber of length 2.
    A3A1P,
    /// Two sections, one I-2 fiber with `β′ = 1`.
    AN,
    /// Two sections meeting once, I-1 fibers only.
    A2,
}

impl CaseTag {
    pub const ALL: [CaseTag; 6] = [
        CaseTag::DE,
        CaseTag::D5,
        CaseTag::A5P,
        CaseTag::A3A1P,
        CaseTag::AN,
        CaseTag::A2,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CaseTag::DE => "DE",
            CaseTag::D5 => "D5",
            CaseTag::A5P => "A5P",
            CaseTag::A3A1P => "A3A1P",
            CaseTag::AN => "AN",
            CaseTag::A2 => "A2",
        }
    }

    /// Whether `data` has the fibration shape this case is built on.
    pub fn fits(self, data: &FibrationData) -> bool {
        let two = data.condition == Condition::StarStar;
        let meet = || section_intersection(data, &make_fibers(data)).ok();
        match self {
            CaseTag::DE => data.condition == Condition::Star,
            CaseTag::D5 => has_gamma_shape(data),
            CaseTag::A5P => two && data.s() == 0 && data.gammas == [3] && meet() == Some(0),
            CaseTag::A3A1P => two && data.s() == 0 && data.gammas == [2] && meet() == Some(0),
            CaseTag::AN => {
                two && data.t() == 0 && data.s() == 1 && data.betas[0].1 == 1 && meet() == Some(0)
            }
            CaseTag::A2 => two && data.s() == 0 && data.t() == 0 && meet() == Some(1),
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CaseTag {
    type Err = FibrationError;

    fn from_str(s: &str) -> Result<Self> {
        CaseTag::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| FibrationError::InvalidInput(format!("unknown case `{s}`")))
    }
}

type Linear = BTreeMap<String, Rational>;

/// Linear relations expressing every pushforward class in a free basis of `Cl(S)_ℚ`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RewriteRules {
    case: CaseTag,
    basis: Vec<String>,
    relations: BTreeMap<String, Linear>,
}

fn add_scaled(acc: &mut Linear, term: &Linear, c: &Rational) {
    for (l, x) in term {
        let e = acc.entry(l.clone()).or_insert_with(Rational::zero);
        *e += x * c;
        if e.is_zero() {
            acc.remove(l);
        }
    }
}

fn single(label: &str) -> Linear {
    BTreeMap::from([(label.to_string(), Rational::one())])
}

impl RewriteRules {
    pub fn case(&self) -> CaseTag {
        self.case
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn relations(&self) -> &BTreeMap<String, Linear> {
        &self.relations
    }

    /// Every class that can be expanded: the basis followed by the rewritten classes.
    pub fn classes(&self) -> Vec<String> {
        self.basis
            .iter()
            .cloned()
            .chain(self.relations.keys().cloned())
            .collect()
    }

    /// Expansion of a single class in the free basis.
    pub fn expand_class(&self, label: &str) -> Result<Linear> {
        if self.basis.iter().any(|b| b == label) {
            return Ok(single(label));
        }
        self.relations.get(label).cloned().ok_or_else(|| {
            FibrationError::InvalidInput(format!("`{label}` is not a class of case {}", self.case))
        })
    }

    /// Expansion of a formal sum of classes; zero coefficients are dropped.
    pub fn expand(&self, divisor: &Linear) -> Result<Linear> {
        let mut out = Linear::new();
        for (l, c) in divisor {
            add_scaled(&mut out, &self.expand_class(l)?, c);
        }
        Ok(out)
    }
}

/// Rewrite rules for `case` on `data`.
pub fn pushforward_rewrite(case: CaseTag, data: &FibrationData) -> Result<RewriteRules> {
    if !case.fits(data) {
        return Err(FibrationError::InvalidInput(format!(
            "fibration data does not have the shape of case {case}"
        )));
    }
    let (r, s, t) = (data.r(), data.s(), data.t());
    let e = |i: usize| format!("E{i}");
    let m0 = data.m0;
    // Σα_iE_i over the I-1 fibers.
    let weighted: Linear = data
        .alphas
        .iter()
        .enumerate()
        .map(|(i, &a)| (e(i + 1), int(a)))
        .collect();
    let scaled = |v: &Linear, c: Rational| -> Linear {
        let mut out = Linear::new();
        add_scaled(&mut out, v, &c);
        out
    };
    let (basis, f_expansion): (Vec<String>, Linear) = match case {
        CaseTag::DE => {
            let mut b = vec!["F".to_string()];
            b.extend((1..=r + s).map(e));
            (b, single("F"))
        }
        CaseTag::D5 => {
            let mut b = vec!["F".to_string()];
            b.extend((1..=r).map(e));
            (b, single("F"))
        }
        CaseTag::A5P => (
            (1..=r).map(e).collect(),
            scaled(&weighted, rat(2, 2 * m0 - 1)),
        ),
        CaseTag::A3A1P => ((1..=r).map(e).collect(), scaled(&weighted, rat(1, m0))),
        CaseTag::AN => {
            let mut w = weighted.clone();
            let beta = data.betas[0].0;
            if beta > 1 {
                w.insert(e(r + 1), int(beta - 1));
            }
            ((1..=r + 1).map(e).collect(), scaled(&w, rat(1, m0)))
        }
        CaseTag::A2 => ((1..=r).map(e).collect(), scaled(&weighted, rat(1, m0 + 1))),
    };
    let mut relations = BTreeMap::new();
    if !basis.iter().any(|b| b == "F") {
        relations.insert("F".to_string(), f_expansion.clone());
    }
    for i in 1..=r + s {
        let mut v = f_expansion.clone();
        add_scaled(&mut v, &single(&e(i)), &int(-1));
        relations.insert(format!("E{i}p"), v);
    }
    for k in r + s + 1..=r + s + t {
        relations.insert(e(k), scaled(&f_expansion, rat(1, 2)));
    }
    if case == CaseTag::D5 {
        let mut v = scaled(&weighted, int(-1));
        add_scaled(&mut v, &f_expansion, &rat(2 * m0 - 1, 2));
        relations.insert("Gamma".to_string(), v);
    }
    if case == CaseTag::A2 {
        relations.insert("F0".to_string(), f_expansion);
    }
    Ok(RewriteRules {
        case,
        basis,
        relations,
    })
}
