//! Independent checks of a certificate against the model and `H`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use dpz_core::Rational;
use dpz_fibration::SurfaceModel;
use num_traits::{Signed, Zero};

use crate::cases::analyze;
use crate::certificate::{AmpleInput, CylinderCertificate, CylinderKind};
use crate::context::Context;
use crate::error::Result;

/// The curves of the resolution removed for a divisor supported on `support`:
/// the support itself and every connected cluster of contracted curves meeting it.
pub fn removed_curves<'a>(
    model: &SurfaceModel,
    support: impl IntoIterator<Item = &'a str>,
) -> BTreeSet<String> {
    let config = model.config();
    let contracted = config.contracted_labels();
    let mut removed: BTreeSet<String> = support.into_iter().map(String::from).collect();
    let mut stack: Vec<String> = removed.iter().cloned().collect();
    while let Some(x) = stack.pop() {
        for c in &contracted {
            if !removed.contains(*c) && config.meet(&x, c).is_ok_and(|n| n > 0) {
                removed.insert(c.to_string());
                stack.push(c.to_string());
            }
        }
    }
    removed
}

fn meet(model: &SurfaceModel, a: &str, b: &str) -> i64 {
    model.config().meet(a, b).unwrap_or(0)
}

/// The cylinder shape of the complement of `removed`, or why the removed
/// curves do not form a recognised pattern.
///
/// Every contracted curve and `D0` must be removed. Each singular fiber is
/// either removed entirely or keeps a single reduced (−1)-component meeting the
/// removed curves once (for `𝔸¹ × (𝔸¹ minus points)`) or twice (for `𝔸¹ × 𝔸¹_*`).
/// A second removed section must meet `D0` at most in a point lying on a removed fiber.
pub fn cylinder_pattern(
    model: &SurfaceModel,
    removed: &BTreeSet<String>,
) -> std::result::Result<CylinderKind, String> {
    let config = model.config();
    if let Some(c) = config
        .contracted_labels()
        .into_iter()
        .find(|c| !removed.contains(*c))
    {
        return Err(format!("contracted curve {c} is not removed"));
    }
    if !removed.contains("D0") {
        return Err("D0 is not removed".into());
    }
    let horizontal: Vec<&String> = removed.iter().filter(|l| meet(model, l, "F") > 0).collect();
    if let Some(x) = horizontal.iter().find(|l| meet(model, l, "F") != 1) {
        return Err(format!("{x} is a multisection"));
    }
    let mut kept = Vec::new();
    let mut full = ["F", "F0"].iter().filter(|l| removed.contains(**l)).count();
    for fiber in model.fibers() {
        let rest: Vec<&str> = fiber.labels().filter(|l| !removed.contains(*l)).collect();
        match rest.as_slice() {
            [] => full += 1,
            [c] => {
                if config.curve(c).map_err(|e| e.to_string())?.self_int != -1
                    || fiber.multiplicity(c) != Some(1)
                {
                    return Err(format!(
                        "fiber {} keeps {c}, which is not a reduced (−1)-curve",
                        fiber.index
                    ));
                }
                let hits: i64 = removed.iter().map(|r| meet(model, c, r)).sum();
                kept.push((c.to_string(), hits));
            }
            _ => {
                return Err(format!(
                    "fiber {} keeps {} components",
                    fiber.index,
                    rest.len()
                ))
            }
        }
    }
    let wanted = |n: i64| match kept.iter().find(|(_, h)| *h != n) {
        Some((c, h)) => Err(format!(
            "{c} meets the removed curves {h} times, expected {n}"
        )),
        None => Ok(()),
    };
    match horizontal.as_slice() {
        [d] if d.as_str() == "D0" => {
            wanted(1)?;
            if full == 0 {
                return Err("no fiber is removed".into());
            }
            Ok(CylinderKind::Cyl(full - 1))
        }
        [x, y] if x.as_str() == "D0" || y.as_str() == "D0" => {
            let other = if x.as_str() == "D0" { y } else { x };
            wanted(2)?;
            if full != 1 {
                return Err(format!(
                    "two sections with {full} removed fibers, expected 1"
                ));
            }
            match meet(model, "D0", other) {
                0 => {}
                1 => {
                    let f0 = model.has_f0()
                        && removed.contains("F0")
                        && meet(model, "F0", "D0") == 1
                        && meet(model, "F0", other) == 1;
                    if !f0 {
                        return Err(format!("D0 meets {other} off the removed fiber"));
                    }
                }
                n => return Err(format!("D0 meets {other} {n} times")),
            }
            Ok(CylinderKind::CylStar)
        }
        _ => Err(format!(
            "removed horizontal curves {:?} are not D0 plus at most one section",
            horizontal
        )),
    }
}

/// The four certificate checks.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Check {
    /// `D` and `H` expand to the same class in the free basis.
    Rewrite,
    /// Every coefficient of `D` is positive.
    Positivity,
    /// The removed curves are those forced by the support and match the claimed kind.
    RemovedSet,
    /// `ε` lies strictly inside the construction's window.
    EpsilonWindow,
}

impl Check {
    pub const ALL: [Check; 4] = [
        Check::Rewrite,
        Check::Positivity,
        Check::RemovedSet,
        Check::EpsilonWindow,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Check::Rewrite => "(i) rewrite",
            Check::Positivity => "(ii) positivity",
            Check::RemovedSet => "(iii) removed-set",
            Check::EpsilonWindow => "(iv) epsilon-window",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CheckOutcome {
    pub check: Check,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VerifyReport {
    pub outcomes: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.pass)
    }

    pub fn failures(&self) -> Vec<&CheckOutcome> {
        self.outcomes.iter().filter(|o| !o.pass).collect()
    }

    pub fn outcome(&self, check: Check) -> &CheckOutcome {
        self.outcomes
            .iter()
            .find(|o| o.check == check)
            .expect("every check is reported")
    }
}

fn outcome(check: Check, result: std::result::Result<String, String>) -> CheckOutcome {
    match result {
        Ok(detail) => CheckOutcome {
            check,
            pass: true,
            detail,
        },
        Err(detail) => CheckOutcome {
            check,
            pass: false,
            detail,
        },
    }
}

fn show(l: &BTreeMap<String, Rational>) -> String {
    let terms: Vec<String> = l.iter().map(|(k, v)| format!("{v}·{k}")).collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

/// Runs all four checks on `cert` for `h`. Errors only when `h` itself does
/// not fit the certificate's case.
pub fn verify_certificate(
    model: &SurfaceModel,
    h: &AmpleInput,
    cert: &CylinderCertificate,
) -> Result<VerifyReport> {
    verify_in(&Context::new(model, cert.case)?, h, cert)
}

pub(crate) fn verify_in(
    ctx: &Context,
    h: &AmpleInput,
    cert: &CylinderCertificate,
) -> Result<VerifyReport> {
    if ctx.case != cert.case {
        return Context::new(ctx.model, cert.case).and_then(|c| verify_in(&c, h, cert));
    }
    let model = ctx.model;
    let coords = ctx.coords(h)?;

    let rewrite = (|| {
        let lhs = ctx.rules.expand(&cert.divisor).map_err(|e| e.to_string())?;
        let rhs = ctx.rules.expand(&coords).map_err(|e| e.to_string())?;
        if lhs == rhs {
            Ok(format!("D ∼ {}", show(&rhs)))
        } else {
            Err(format!(
                "D expands to {} but H is {}",
                show(&lhs),
                show(&rhs)
            ))
        }
    })();

    let positivity = match cert.divisor.iter().find(|(_, c)| !c.is_positive()) {
        Some((l, c)) => Err(format!("coefficient of {l} is {c}")),
        None if cert.divisor.is_empty() => Err("D is zero".into()),
        None => Ok(format!("{} positive coefficients", cert.divisor.len())),
    };

    let removed = (|| {
        let visible = model.visible_labels();
        if let Some(l) = cert.divisor.keys().find(|l| !visible.contains(&l.as_str())) {
            return Err(format!("{l} is not a curve on the singular surface"));
        }
        let expected = removed_curves(model, cert.divisor.keys().map(String::as_str));
        if expected != cert.removed_curves {
            let missing: Vec<_> = expected.difference(&cert.removed_curves).collect();
            let extra: Vec<_> = cert.removed_curves.difference(&expected).collect();
            return Err(format!(
                "removed set differs: missing {missing:?}, unexpected {extra:?}"
            ));
        }
        let kind = cylinder_pattern(model, &cert.removed_curves)?;
        if kind != cert.kind {
            return Err(format!(
                "removed curves give {kind}, certificate claims {}",
                cert.kind
            ));
        }
        Ok(format!("{} curves removed, {kind}", expected.len()))
    })();

    let window = (|| {
        let plan = analyze(ctx, &coords).map_err(|e| e.to_string())?;
        match plan.supremum().map_err(|e| e.to_string())? {
            None if cert.epsilon.is_zero() => Ok("ε unused".into()),
            None => Err(format!(
                "ε = {} but the construction has no free parameter",
                cert.epsilon
            )),
            Some(sup) if cert.epsilon.is_positive() && cert.epsilon < sup => {
                Ok(format!("0 < ε = {} < {sup}", cert.epsilon))
            }
            Some(sup) => Err(format!("ε = {} outside (0, {sup})", cert.epsilon)),
        }
    })();

    Ok(VerifyReport {
        outcomes: vec![
            outcome(Check::Rewrite, rewrite),
            outcome(Check::Positivity, positivity),
            outcome(Check::RemovedSet, removed),
            outcome(Check::EpsilonWindow, window),
        ],
    })
}
