//! Building certificates.

use dpz_core::Rational;
use dpz_fibration::{CaseTag, SurfaceModel};
use num_traits::Signed;

use crate::cases::{analyze, case_checks};
use crate::certificate::{AmpleInput, CylinderCertificate, InequalityCheck};
use crate::context::{select_case, Context};
use crate::error::{CylinderError, Result};
use crate::verify::{cylinder_pattern, removed_curves, verify_in};

/// Evaluates the positivity of `H` on every visible curve and every inequality
/// the case derives from ampleness.
pub fn check_inequalities(model: &SurfaceModel, h: &AmpleInput) -> Result<Vec<InequalityCheck>> {
    let ctx = Context::new(model, select_case(model)?)?;
    let coords = ctx.coords(h)?;
    let mut out = ctx.ample_checks(&coords);
    out.extend(case_checks(&ctx, &coords)?);
    Ok(out)
}

fn build(ctx: &Context, h: &AmpleInput, epsilon: Option<&Rational>) -> Result<CylinderCertificate> {
    let (model, case) = (ctx.model, ctx.case);
    if ctx.rules.basis().len() == 1 {
        return Err(CylinderError::PicardRankOne);
    }
    let coords = ctx.coords(h)?;
    let plan = analyze(ctx, &coords)?;
    let epsilon = match epsilon {
        Some(e) => e.clone(),
        None => plan.default_epsilon()?,
    };
    let divisor = plan.evaluate(&epsilon);
    let removed = removed_curves(model, divisor.keys().map(String::as_str));
    let kind = cylinder_pattern(model, &removed).map_err(CylinderError::VerificationFailed)?;
    let mut report: Vec<String> = ctx
        .ample_checks(&coords)
        .into_iter()
        .chain(case_checks(ctx, &coords)?)
        .map(|c| format!("{} = {} > 0", c.id, c.value))
        .collect();
    report.retain(|r| !r.starts_with("de.rr-bound"));
    Ok(CylinderCertificate {
        case,
        branch: plan.branch.clone(),
        epsilon,
        divisor,
        removed_curves: removed,
        kind,
        permutation: plan.permutation.clone(),
        report,
    })
}

/// The certificate of `case` for `h` with a caller-chosen `ε`, without
/// self-verification. Coefficients may be non-positive if `ε` is outside the window.
pub fn construct_with_epsilon(
    model: &SurfaceModel,
    case: CaseTag,
    h: &AmpleInput,
    epsilon: &Rational,
) -> Result<CylinderCertificate> {
    build(&Context::new(model, case)?, h, Some(epsilon))
}

fn construct_case(
    model: &SurfaceModel,
    case: CaseTag,
    h: &AmpleInput,
) -> Result<CylinderCertificate> {
    if !case.fits(model.data()) {
        return Err(CylinderError::Unsupported(format!(
            "the fibration does not have the shape of case {case}"
        )));
    }
    let ctx = Context::new(model, case)?;
    let mut cert = build(&ctx, h, None)?;
    if let Some(bad) = cert.divisor.iter().find(|(_, c)| !c.is_positive()) {
        return Err(CylinderError::Ampleness {
            id: format!("positivity:{}", bad.0),
            value: bad.1.clone(),
        });
    }
    let report = verify_in(&ctx, h, &cert)?;
    if let Some(f) = report.failures().first() {
        return Err(CylinderError::VerificationFailed(format!(
            "{}: {}",
            f.check, f.detail
        )));
    }
    cert.report.extend(
        report
            .outcomes
            .iter()
            .map(|o| format!("{}: {}", o.check, o.detail)),
    );
    Ok(cert)
}

/// Selects the case of `model` and builds a verified certificate for `h`.
pub fn construct(model: &SurfaceModel, h: &AmpleInput) -> Result<CylinderCertificate> {
    construct_case(model, select_case(model)?, h)
}

/// General-fiber construction: a divisor on every singular fiber, `F` and `D0`.
pub fn construct_de(model: &SurfaceModel, h: &AmpleInput) -> Result<CylinderCertificate> {
    construct_case(model, CaseTag::DE, h)
}

/// Construction through the extra (−1)-curve `Gamma`.
pub fn construct_d5(model: &SurfaceModel, h: &AmpleInput) -> Result<CylinderCertificate> {
    construct_case(model, CaseTag::D5, h)
}

/// Two sections with a II fiber of length 3.
pub fn construct_a5_prime(model: &SurfaceModel, h: &AmpleInput) -> Result<CylinderCertificate> {
    construct_case(model, CaseTag::A5P, h)
}

/// Two sections with a II fiber of length 2.
pub fn construct_a3a1_prime(model: &SurfaceModel, h: &AmpleInput) -> Result<CylinderCertificate> {
    construct_case(model, CaseTag::A3A1P, h)
}

/// Two sections with one I-2 fiber.
pub fn construct_an(model: &SurfaceModel, h: &AmpleInput) -> Result<CylinderCertificate> {
    construct_case(model, CaseTag::AN, h)
}

/// Two sections meeting on the fiber `F0`, only I-1 fibers.
pub fn construct_a2(model: &SurfaceModel, h: &AmpleInput) -> Result<CylinderCertificate> {
    construct_case(model, CaseTag::A2, h)
}
