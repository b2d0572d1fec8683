//! Inequalities guaranteed by ampleness and the divisor of each construction.

use dpz_core::{int, Rational};
use dpz_fibration::CaseTag;
use num_traits::{Signed, Zero};

use crate::certificate::{InequalityCheck, Linear};
use crate::context::{de_applies, de_dimension_bound, Context};
use crate::error::{CylinderError, Result};
use crate::plan::{Plan, Sorted};

fn positive(id: impl Into<String>, value: Rational) -> InequalityCheck {
    let pass = value.is_positive();
    InequalityCheck {
        id: id.into(),
        value,
        pass,
    }
}

fn missing_reach(case: CaseTag, m: i64) -> CylinderError {
    CylinderError::Unsupported(format!("case {case}: the I-1 lengths never reach {m}"))
}

/// Family of the two-section constructions whose extra curves absorb the
/// classes `Σα_iE_i` beyond position `r″`.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Family {
    A5P,
    A3A1P,
    AN,
    A2,
}

impl Family {
    fn of(case: CaseTag) -> Option<Family> {
        match case {
            CaseTag::A5P => Some(Family::A5P),
            CaseTag::A3A1P => Some(Family::A3A1P),
            CaseTag::AN => Some(Family::AN),
            CaseTag::A2 => Some(Family::A2),
            _ => None,
        }
    }

    fn prefix(self) -> &'static str {
        match self {
            Family::A5P => "a5p",
            Family::A3A1P => "a3a1p",
            Family::AN => "an",
            Family::A2 => "a2",
        }
    }

    /// The running `α` sum the position `r′` must reach.
    fn threshold(self, m0: i64) -> i64 {
        if self == Family::A2 {
            m0 + 1
        } else {
            m0
        }
    }

    /// Inequality value at a prefix with sums `(a_sum, alpha_sum)` and slope `s` at `r′`.
    fn prefix_value(self, m0: i64, a_sum: &Rational, alpha_sum: i64, s: &Rational) -> Rational {
        match self {
            Family::A5P => int(2) * a_sum + int(2 * (m0 - alpha_sum) - 1) * s,
            Family::A3A1P | Family::AN => a_sum + int(m0 - alpha_sum) * s,
            Family::A2 => a_sum + int(m0 + 1 - alpha_sum) * s,
        }
    }
}

fn an_b(ctx: &Context, h: &Linear) -> Rational {
    h[&format!("E{}", ctx.data().r() + 1)].clone()
}

/// Every inequality the case derives from ampleness, in order.
pub(crate) fn case_checks(ctx: &Context, h: &Linear) -> Result<Vec<InequalityCheck>> {
    let data = ctx.data();
    let m0 = data.m0;
    let mut out = Vec::new();
    match ctx.case {
        CaseTag::DE => {
            let bound = de_dimension_bound(data).unwrap_or(-1);
            out.push(InequalityCheck {
                id: "de.rr-bound".into(),
                value: int(bound),
                pass: bound >= 0,
            });
            out.push(positive("de.d", de_d(ctx, h).1));
        }
        CaseTag::D5 => {
            let sorted = Sorted::new(data, h);
            let sr = sorted.slope[sorted.len() - 1].clone();
            out.push(positive("d5.t", -sr.clone()));
            let sum_b: Rational = sorted.a.iter().sum();
            out.push(positive("d5.d0", int(2) * &h["F"] + int(2) * sum_b - sr));
        }
        CaseTag::AN if data.betas[0].0 >= 2 => {
            if m0 != 2 {
                return Err(CylinderError::OutOfScope(format!(
                    "I-2 fiber with β ≥ 2 needs m0 = 2, got {m0}"
                )));
            }
            let sorted = Sorted::new(data, h);
            let beta = data.betas[0].0;
            let b = an_b(ctx, h);
            if sorted.alpha[0] > 1 {
                out.push(positive("an.a1", sorted.a[0].clone()));
            }
            if data.alpha() > 1 && sorted.alpha[0] == 1 {
                out.push(positive("an.a1+a2/alpha2", &sorted.a[0] + &sorted.slope[1]));
            }
            if beta >= 3 {
                out.push(positive("an.b", b.clone()));
            }
            out.push(positive(
                "an.(beta-1)s1+b",
                int(beta - 1) * &sorted.slope[0] + b,
            ));
        }
        case => {
            let family = Family::of(case).expect("remaining cases are two-section families");
            let sorted = Sorted::new(data, h);
            let m = family.threshold(m0);
            let rp = sorted
                .first_reaching(m)
                .ok_or_else(|| missing_reach(case, m))?;
            let s = sorted.slope[rp].clone();
            let p = family.prefix();
            for i in 0..rp {
                let v = family.prefix_value(m0, &sorted.a_through(i), sorted.alpha_through(i), &s);
                out.push(positive(format!("{p}.L{}", i + 1), v));
            }
            out.push(positive(format!("{p}.s"), s.clone()));
            if family == Family::AN {
                let b = an_b(ctx, h);
                for i in 0..rp {
                    let v =
                        family.prefix_value(m0, &sorted.a_through(i), sorted.alpha_through(i), &s)
                            + &b;
                    out.push(positive(format!("an.L{}+b", i + 1), v));
                }
                out.push(positive("an.m0s+b", int(m0) * &s + b));
            }
        }
    }
    Ok(out)
}

/// Order putting I-2 fibers with negative coefficient first, and
/// `d = a + Σb_i + Σ_{c_j<0} c_j`.
fn de_d(ctx: &Context, h: &Linear) -> (Vec<usize>, Rational) {
    let data = ctx.data();
    let (r, s) = (data.r(), data.s());
    let c = |j: usize| h[&format!("E{}", r + j)].clone();
    let mut order: Vec<usize> = (1..=s).filter(|&j| c(j).is_negative()).collect();
    let negative = order.len();
    order.extend((1..=s).filter(|&j| !c(j).is_negative()));
    let mut d = h["F"].clone();
    for i in 1..=r {
        d += &h[&format!("E{i}")];
    }
    for &j in &order[..negative] {
        d += c(j);
    }
    (order, d)
}

fn plan_de(ctx: &Context, h: &Linear) -> Result<Plan> {
    let data = ctx.data();
    let (r, s, t) = (data.r(), data.s(), data.t());
    let (order, d) = de_d(ctx, h);
    let mut permutation: Vec<usize> = (1..=r).collect();
    permutation.extend(order.iter().map(|j| r + j));
    permutation.extend(r + s + 1..=r + s + t);
    let zero = Rational::zero;
    let mut plan = Plan::new("general-fiber", permutation);
    for i in 1..=r {
        plan.add(format!("E{i}p"), -&h[&format!("E{i}")], zero());
    }
    for &j in &order {
        let c = h[&format!("E{}", r + j)].clone();
        if c.is_negative() {
            plan.add(format!("E{}p", r + j), -c, zero());
        } else {
            plan.add(format!("E{}", r + j), c, zero());
        }
    }
    let share = d / int(i64::try_from(r + s + t + 1).expect("small fiber count"));
    plan.add("F", share.clone(), zero());
    for k in 1..=r + s {
        plan.add(format!("E{k}"), share.clone(), zero());
        plan.add(format!("E{k}p"), share.clone(), zero());
    }
    for k in r + s + 1..=r + s + t {
        plan.add(format!("E{k}"), int(2) * &share, zero());
    }
    Ok(plan)
}

fn plan_d5(ctx: &Context, h: &Linear) -> Result<Plan> {
    let data = ctx.data();
    let (r, m0) = (data.r(), data.m0);
    let sorted = Sorted::new(data, h);
    let sr = sorted.slope[r - 1].clone();
    let t = -sr.clone();
    let ii = format!("E{}", r + 1);
    let permutation = sorted.permutation(data.fiber_count());
    let two_a = int(2) * &h["F"];
    match sorted.last_below(r - 1) {
        None => {
            let mut plan = Plan::new("equal-slope", permutation);
            let sum_b: Rational = sorted.a.iter().sum();
            let d0 = two_a + int(2) * sum_b - &sr;
            plan.add("Gamma", t, int(1));
            for k in 0..r {
                plan.add(sorted.e(k), Rational::zero(), int(sorted.alpha[k]));
            }
            plan.add(ii, d0.clone(), int(-(2 * m0 - 1)));
            plan.bound("window:d0/(2m0-1)", d0 / int(2 * m0 - 1));
            Ok(plan)
        }
        Some(rp) => {
            let mut plan = Plan::new("strict", permutation);
            let alpha_p = sorted.alpha_through(rp);
            let d = two_a + int(2) * sorted.a_through(rp) + int(2 * (data.alpha() - alpha_p)) * &sr
                - &sr;
            let weight = 2 * m0 - 1 - 2 * alpha_p;
            plan.add("Gamma", t, int(1));
            for k in 0..=rp {
                plan.add(
                    sorted.ep(k),
                    int(sorted.alpha[k]) * (&sr - &sorted.slope[k]),
                    int(-sorted.alpha[k]),
                );
            }
            for k in rp + 1..r {
                plan.add(sorted.e(k), Rational::zero(), int(sorted.alpha[k]));
            }
            plan.add(ii, d.clone(), int(-weight));
            plan.bound("window:d/(2m0-1-2alpha')", d / int(weight));
            Ok(plan)
        }
    }
}

fn plan_family(ctx: &Context, h: &Linear, family: Family) -> Result<Plan> {
    let data = ctx.data();
    let (r, m0) = (data.r(), data.m0);
    let sorted = Sorted::new(data, h);
    let m = family.threshold(m0);
    let rp = sorted
        .first_reaching(m)
        .ok_or_else(|| missing_reach(ctx.case, m))?;
    let s = sorted.slope[rp].clone();
    let r2 = sorted.last_below(rp);
    let branch = if r2.is_some() {
        "strict"
    } else {
        "equal-slope"
    };
    let mut plan = Plan::new(branch, sorted.permutation(data.fiber_count()));
    let (a2, alpha2) = match r2 {
        Some(k) => (sorted.a_through(k), sorted.alpha_through(k)),
        None => (Rational::zero(), 0),
    };
    let kept = r2.map_or(0, |k| k + 1);
    for k in 0..kept {
        let al = int(sorted.alpha[k]);
        plan.add(sorted.ep(k), &al * (&s - &sorted.slope[k]), -al);
    }
    for k in kept..r {
        let al = int(sorted.alpha[k]);
        plan.add(sorted.e(k), &al * (&sorted.slope[k] - &s), al);
    }
    let extra = format!("E{}", r + 1);
    match family {
        Family::A5P => {
            let w = 2 * m0 - 1 - 2 * alpha2;
            plan.add(extra, int(2) * &a2 + int(w) * &s, int(-w));
        }
        Family::A3A1P => {
            let w = m0 - alpha2;
            plan.add(extra, int(2) * (&a2 + int(w) * &s), int(-2 * w));
        }
        Family::A2 => {
            let w = m0 + 1 - alpha2;
            plan.add("F0", &a2 + int(w) * &s, int(-w));
        }
        Family::AN => {
            let w = m0 - alpha2;
            let b = an_b(ctx, h);
            plan.add(extra.clone(), &a2 + &b + int(w) * &s, int(-w));
            plan.add(format!("{extra}p"), &a2 + int(w) * &s, int(-w));
        }
    }
    if r2.is_none() {
        plan.bound("window:s", s);
    } else {
        plan.bound("window:s-s1", &s - &sorted.slope[0]);
        let w = match family {
            Family::A5P => 2 * m0 - 1 - 2 * alpha2,
            Family::A3A1P | Family::AN => m0 - alpha2,
            Family::A2 => m0 + 1 - alpha2,
        };
        plan.bound("window:(a''+w s)/w", (&a2 + int(w) * &s) / int(w));
        if family == Family::AN {
            plan.bound(
                "window:(a''+b+w s)/w",
                (&a2 + an_b(ctx, h) + int(w) * &s) / int(w),
            );
        }
    }
    Ok(plan)
}

fn plan_an_long(ctx: &Context, h: &Linear) -> Result<Plan> {
    let data = ctx.data();
    let r = data.r();
    let beta = data.betas[0].0;
    let sorted = Sorted::new(data, h);
    let b = an_b(ctx, h);
    let extra = format!("E{}", r + 1);
    let extra_p = format!("{extra}p");
    let permutation = sorted.permutation(data.fiber_count());
    let (a1, s1) = (sorted.a[0].clone(), sorted.slope[0].clone());
    let zero = Rational::zero;
    if a1.is_positive() {
        if beta == 2 {
            let mut plan = Plan::new("a1>0,beta=2", permutation);
            for k in 0..r {
                let al = int(sorted.alpha[k]);
                plan.add(sorted.e(k), &al * (&sorted.slope[k] - &s1), al);
            }
            plan.add(extra, &s1 + &b, int(-1));
            plan.add(extra_p, int(2) * &s1, int(-2));
            plan.bound("window:s1+b", &s1 + &b);
            plan.bound("window:s1", s1);
            Ok(plan)
        } else {
            let mut plan = Plan::new("a1>0,beta>=3", permutation);
            for k in 0..r {
                let al = int(sorted.alpha[k]);
                plan.add(sorted.e(k), &al * &sorted.slope[k], -al);
            }
            plan.add(extra, b.clone(), int(-(beta - 3)));
            plan.add(extra_p, zero(), int(2));
            plan.bound("window:s1", s1);
            if beta > 3 {
                plan.bound("window:b/(beta-3)", b / int(beta - 3));
            }
            Ok(plan)
        }
    } else {
        if sorted.alpha[0] != 1 {
            return Err(CylinderError::Ampleness {
                id: "an.a1".into(),
                value: a1,
            });
        }
        let tail = int(beta - 1) * &a1 + &b;
        if data.alpha() == 1 {
            if beta < 4 {
                return Err(CylinderError::OutOfScope(format!(
                    "one I-1 fiber of length 1 needs β ≥ 4, got {beta}"
                )));
            }
            let mut plan = Plan::new("a1<=0,alpha=1", permutation);
            plan.add(sorted.ep(0), int(-2) * &a1, int(1));
            plan.add(extra, tail.clone(), int(-(beta - 2)));
            plan.add(extra_p, zero(), int(1));
            plan.bound("window:((beta-1)a1+b)/(beta-2)", tail / int(beta - 2));
            Ok(plan)
        } else {
            let mut plan = Plan::new("a1<=0,alpha>1", permutation);
            plan.add(sorted.ep(0), int(-2) * &a1, int(1));
            for k in 1..r {
                let al = int(sorted.alpha[k]);
                plan.add(sorted.e(k), &al * (&a1 + &sorted.slope[k]), -al);
            }
            plan.add(extra, tail.clone(), int(-(beta - 2)));
            plan.add(extra_p, zero(), int(1));
            plan.bound("window:a1+a2/alpha2", &a1 + &sorted.slope[1]);
            if beta >= 3 {
                plan.bound("window:((beta-1)a1+b)/(beta-2)", tail / int(beta - 2));
            }
            Ok(plan)
        }
    }
}

/// The ampleness and case checks followed by the divisor plan; errors on the first failed check.
pub(crate) fn analyze(ctx: &Context, h: &Linear) -> Result<Plan> {
    if ctx.case == CaseTag::DE && !de_applies(ctx.data()) {
        return Err(CylinderError::OutOfScope(format!(
            "general-fiber construction needs a non-negative dimension bound, got {:?}",
            de_dimension_bound(ctx.data())
        )));
    }
    let checks = ctx.ample_checks(h).into_iter().chain(case_checks(ctx, h)?);
    if let Some(bad) = checks.into_iter().find(|c| !c.pass) {
        return Err(CylinderError::Ampleness {
            id: bad.id,
            value: bad.value,
        });
    }
    match ctx.case {
        CaseTag::DE => plan_de(ctx, h),
        CaseTag::D5 => plan_d5(ctx, h),
        CaseTag::AN if ctx.data().betas[0].0 >= 2 => plan_an_long(ctx, h),
        case => plan_family(ctx, h, Family::of(case).expect("two-section family")),
    }
}
