//! Random fibrations and random `H` passing every modeled ampleness check.

use dpz_core::{rat, Rational};
use dpz_fibration::{validate_fibration, CaseTag, Condition, FibrationData, SurfaceModel};
use rand::seq::SliceRandom;
use rand::Rng;

use crate::cases::case_checks;
use crate::certificate::{AmpleInput, Linear};
use crate::context::{anticanonical_input, select_case, Context};
use crate::error::{CylinderError, Result};

const ATTEMPTS: usize = 10_000;

/// A random composition of `n` into positive parts.
fn composition<R: Rng + ?Sized>(rng: &mut R, n: i64) -> Vec<i64> {
    let mut parts = Vec::new();
    let mut left = n;
    while left > 0 {
        let p = rng.gen_range(1..=left);
        parts.push(p);
        left -= p;
    }
    parts.shuffle(rng);
    parts
}

fn star_candidate<R: Rng + ?Sized>(rng: &mut R) -> Option<FibrationData> {
    let m0 = rng.gen_range(2..=3);
    let mut left = 4 + m0;
    let (mut alphas, mut betas, mut gammas) = (Vec::new(), Vec::new(), Vec::new());
    while left > 0 {
        match rng.gen_range(0..3) {
            0 => {
                let a = rng.gen_range(1..=left.min(3));
                alphas.push(a);
                left -= a;
            }
            1 if left >= 2 => {
                let bp = rng.gen_range(1..=(left / 2).min(2));
                let b = rng.gen_range(bp..=(left - bp).min(3));
                betas.push((b, bp));
                left -= b + bp;
            }
            2 if left >= 2 => {
                let g = rng.gen_range(2..=left.min(5));
                gammas.push(g);
                left -= g;
            }
            _ => {}
        }
    }
    Some(FibrationData {
        condition: Condition::Star,
        m0,
        m_inf: None,
        alphas,
        betas,
        gammas,
    })
}

fn shaped_candidate<R: Rng + ?Sized>(rng: &mut R, case: CaseTag) -> Option<FibrationData> {
    let m0 = rng.gen_range(2..=3);
    if case == CaseTag::D5 {
        let alphas = composition(rng, m0);
        return Some(FibrationData {
            condition: Condition::Star,
            m0,
            m_inf: None,
            alphas,
            betas: vec![],
            gammas: vec![4],
        });
    }
    let m_inf = rng.gen_range(2..=3);
    if m0 + m_inf > 5 {
        return None;
    }
    let (alpha, betas, gammas) = match case {
        CaseTag::A5P => (m0 + m_inf - 1, vec![], vec![3]),
        CaseTag::A3A1P => (m0 + m_inf, vec![], vec![2]),
        CaseTag::AN => {
            let beta = rng.gen_range(1..=m0 + m_inf);
            (1 + m0 + m_inf - beta, vec![(beta, 1)], vec![])
        }
        CaseTag::A2 => (2 + m0 + m_inf, vec![], vec![]),
        CaseTag::DE | CaseTag::D5 => unreachable!("one-section cases are handled separately"),
    };
    let alphas = composition(rng, alpha);
    Some(FibrationData {
        condition: Condition::StarStar,
        m0,
        m_inf: Some(m_inf),
        alphas,
        betas,
        gammas,
    })
}

fn admissible(data: FibrationData, case: CaseTag) -> Option<SurfaceModel> {
    let data = validate_fibration(data).ok()?;
    if data.k2() < 1 || !case.fits(&data) {
        return None;
    }
    let model = SurfaceModel::new(data).ok()?;
    if select_case(&model).ok()? != case {
        return None;
    }
    let ctx = Context::new(&model, case).ok()?;
    if ctx.rules.basis().len() < 2 {
        return None;
    }
    let k = ctx.coords(&anticanonical_input(&model, case).ok()?).ok()?;
    all_pass(&ctx, &k).then_some(model)
}

fn all_pass(ctx: &Context, h: &Linear) -> bool {
    ctx.ample_checks(h).iter().all(|c| c.pass)
        && case_checks(ctx, h).is_ok_and(|checks| checks.iter().all(|c| c.pass))
}

/// A random surface model of `case` with `K² ≥ 1`, Picard rank at least 2 on
/// the singular surface and `−K` passing every check.
pub fn random_model<R: Rng + ?Sized>(case: CaseTag, rng: &mut R) -> Result<SurfaceModel> {
    for _ in 0..ATTEMPTS {
        let candidate = match case {
            CaseTag::DE => star_candidate(rng),
            _ => shaped_candidate(rng, case),
        };
        if let Some(model) = candidate.and_then(|d| admissible(d, case)) {
            return Ok(model);
        }
    }
    Err(CylinderError::Unsupported(format!(
        "no admissible fibration found for case {case}"
    )))
}

/// The data of [`random_model`].
pub fn random_fibration<R: Rng + ?Sized>(case: CaseTag, rng: &mut R) -> Result<FibrationData> {
    Ok(random_model(case, rng)?.data().clone())
}

fn small_rational<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    rat(rng.gen_range(-4..=4), rng.gen_range(1..=4))
}

/// Draws random `H` on one model passing every check of [`crate::check_inequalities`].
///
/// Each draw walks from `−K` by random steps, halving the step after each
/// rejected move; sometimes forces two I-1 fibers to share a slope; then
/// scales by a random positive rational.
pub struct AmpleSampler<'a> {
    ctx: Context<'a>,
    center: Linear,
}

impl<'a> AmpleSampler<'a> {
    pub fn new(model: &'a SurfaceModel) -> Result<Self> {
        let case = select_case(model)?;
        let ctx = Context::new(model, case)?;
        let center = ctx.coords(&anticanonical_input(model, case)?)?;
        if !all_pass(&ctx, &center) {
            return Err(CylinderError::Unsupported(
                "−K fails the ampleness checks".into(),
            ));
        }
        Ok(AmpleSampler { ctx, center })
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> AmpleInput {
        let ctx = &self.ctx;
        let mut x = self.center.clone();
        let mut step = rat(2, 1);
        for _ in 0..12 {
            let y: Linear = x
                .iter()
                .map(|(l, c)| (l.clone(), c + &step * small_rational(rng)))
                .collect();
            if all_pass(ctx, &y) {
                x = y;
            } else {
                step /= rat(2, 1);
            }
        }
        let data = ctx.data();
        let r = data.r();
        if r >= 2 && rng.gen_bool(0.3) {
            let i = rng.gen_range(1..=r);
            let j = (i + rng.gen_range(1..r) - 1) % r + 1;
            let mut y = x.clone();
            let tied = &x[&format!("E{i}")] * rat(data.alphas[j - 1], data.alphas[i - 1]);
            y.insert(format!("E{j}"), tied);
            if all_pass(ctx, &y) {
                x = y;
            }
        }
        let scale = rat(rng.gen_range(1..=6), rng.gen_range(1..=6));
        AmpleInput { coeffs: x }.scale(&scale)
    }
}

/// One draw of [`AmpleSampler`].
pub fn random_ample<R: Rng + ?Sized>(model: &SurfaceModel, rng: &mut R) -> Result<AmpleInput> {
    Ok(AmpleSampler::new(model)?.sample(rng))
}
