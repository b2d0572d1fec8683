use dpz_core::{pair, solve_linear, Divisor, Rational};
use dpz_dynkin::DynkinType;
use dpz_fibration::{
    pushforward_rewrite, template_case, CaseTag, Condition, FibrationData, RewriteRules,
    SurfaceModel,
};
use num_traits::{Signed, Zero};

use crate::certificate::{AmpleInput, InequalityCheck, Linear};
use crate::error::{CylinderError, Result};

/// Lower bound on `dim |Δ̃|` (or `dim |½Δ̃|` without II fibers) for the divisor
/// whose pushforward shows the general-fiber construction is effective. `None`
/// for two sections.
pub fn de_dimension_bound(data: &FibrationData) -> Option<i64> {
    if data.condition != Condition::Star {
        return None;
    }
    let full = 3 * data.beta_prime() + 2 * data.gamma() - 10;
    let half = if data.t() == 0 {
        data.beta_prime() - 3
    } else {
        full
    };
    Some(full.max(half))
}

pub(crate) fn de_applies(data: &FibrationData) -> bool {
    de_dimension_bound(data).is_some_and(|b| b >= 0)
}

/// The construction that applies to `model`.
///
/// One section: the general-fiber construction when its dimension bound is
/// non-negative, else the `Gamma` construction for its shape. Two sections: the
/// case whose fiber shape matches. Errors with [`CylinderError::PicardRankOne`]
/// when the free basis has a single class.
pub fn select_case(model: &SurfaceModel) -> Result<CaseTag> {
    let data = model.data();
    let case = if data.condition == Condition::Star {
        if de_applies(data) {
            Some(CaseTag::DE)
        } else {
            CaseTag::D5.fits(data).then_some(CaseTag::D5)
        }
    } else {
        [CaseTag::A5P, CaseTag::A3A1P, CaseTag::AN, CaseTag::A2]
            .into_iter()
            .find(|c| c.fits(data))
    };
    let case = case.ok_or_else(|| {
        CylinderError::Unsupported(format!(
            "no construction for m0 = {}, alphas {:?}, betas {:?}, gammas {:?}",
            data.m0, data.alphas, data.betas, data.gammas
        ))
    })?;
    if pushforward_rewrite(case, data)?.basis().len() == 1 {
        return Err(CylinderError::PicardRankOne);
    }
    Ok(case)
}

/// The construction used for a degree-2 surface of the given Du Val type.
pub fn select_case_for_type(dynkin: &DynkinType) -> Result<CaseTag> {
    Ok(template_case(dynkin)?)
}

/// A model with its case, rewrite rules and the pairing of every visible curve
/// with the basis classes.
pub(crate) struct Context<'a> {
    pub model: &'a SurfaceModel,
    pub case: CaseTag,
    pub rules: RewriteRules,
    forms: Vec<(String, Vec<Rational>)>,
}

impl<'a> Context<'a> {
    pub fn new(model: &'a SurfaceModel, case: CaseTag) -> Result<Self> {
        let rules = pushforward_rewrite(case, model.data())?;
        let pulled = rules
            .basis()
            .iter()
            .map(|b| model.pullback_curve(b))
            .collect::<dpz_fibration::Result<Vec<_>>>()?;
        let mut forms = Vec::new();
        for label in model.visible_labels() {
            let curve = Divisor::curve(label);
            let row = pulled
                .iter()
                .map(|p| pair(model.config(), &curve, p))
                .collect::<dpz_core::Result<Vec<_>>>()?;
            forms.push((label.to_string(), row));
        }
        Ok(Context {
            model,
            case,
            rules,
            forms,
        })
    }

    pub fn data(&self) -> &FibrationData {
        self.model.data()
    }

    /// Coefficients of `h` on every basis label; unknown labels are an error.
    pub fn coords(&self, h: &AmpleInput) -> Result<Linear> {
        let basis = self.rules.basis();
        if let Some(l) = h.coeffs.keys().find(|l| !basis.contains(l)) {
            return Err(CylinderError::InvalidInput(format!(
                "`{l}` is not a basis class of case {} (basis {})",
                self.case,
                basis.join(", ")
            )));
        }
        Ok(basis.iter().map(|b| (b.clone(), h.coeff(b))).collect())
    }

    /// `H·C` for every curve visible on the singular surface.
    pub fn ample_checks(&self, h: &Linear) -> Vec<InequalityCheck> {
        self.forms
            .iter()
            .map(|(label, row)| {
                let value = self
                    .rules
                    .basis()
                    .iter()
                    .zip(row)
                    .fold(Rational::zero(), |acc, (b, x)| acc + &h[b] * x);
                let pass = value.is_positive();
                InequalityCheck {
                    id: format!("H.{label}"),
                    value,
                    pass,
                }
            })
            .collect()
    }

    /// Gram matrix of the basis classes on the singular surface.
    fn basis_gram(&self) -> Vec<Vec<Rational>> {
        let basis = self.rules.basis();
        basis
            .iter()
            .map(|b| {
                let row = &self
                    .forms
                    .iter()
                    .find(|(l, _)| l == b)
                    .expect("basis classes are visible")
                    .1;
                row.clone()
            })
            .collect()
    }
}

/// `−K_S` written in the basis of `case`.
pub fn anticanonical_input(model: &SurfaceModel, case: CaseTag) -> Result<AmpleInput> {
    let ctx = Context::new(model, case)?;
    let rhs = ctx
        .rules
        .basis()
        .iter()
        .map(|b| {
            Ok(pair(
                model.config(),
                &Divisor::anticanonical(),
                &model.pullback_curve(b)?,
            )?)
        })
        .collect::<Result<Vec<Rational>>>()?;
    let x = solve_linear(&ctx.basis_gram(), &rhs).ok_or_else(|| {
        CylinderError::Unsupported("the basis classes have a degenerate Gram matrix".into())
    })?;
    Ok(AmpleInput::new(ctx.rules.basis().iter().cloned().zip(x)))
}
