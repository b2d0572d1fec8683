use dpz_core::{int, pair, CurveConfig, Divisor, Rational};
use dpz_dynkin::{has_anticanonical_cylinder, DynkinType, Family, Prime};
use num_traits::{One, Zero};

use crate::data::{validate_fibration, Condition, FibrationData};
use crate::error::{FibrationError, Result};
use crate::model::SurfaceModel;
use crate::rewrite::CaseTag;

/// Fiber shape of the template for `dynkin`: condition, I-2 and II fiber data, case.
type Shape = (Condition, Vec<(i64, i64)>, Vec<i64>, CaseTag);

fn template_shape(dynkin: &DynkinType) -> Result<Shape> {
    if !has_anticanonical_cylinder(2, dynkin)? {
        return Err(FibrationError::NoConstruction(format!(
            "type {dynkin} (smooth or only A1 points) has no anticanonical polar cylinder"
        )));
    }
    if dynkin.rank() == 7 {
        return Err(FibrationError::PicardRankOne);
    }
    if dynkin.is_ambiguous_degree2() && dynkin.prime() == Prime::None {
        return Err(FibrationError::InvalidInput(format!(
            "type {dynkin} needs a ' or '' marker"
        )));
    }
    let star = |betas, gammas, case| Ok((Condition::Star, betas, gammas, case));
    let two = |betas, gammas, case| Ok((Condition::StarStar, betas, gammas, case));
    let count = |family, rank| dynkin.count(family, rank) > 0;
    if count(Family::E, 6) {
        star(vec![], vec![5], CaseTag::DE)
    } else if count(Family::D, 6) {
        star(vec![(1, 1)], vec![4], CaseTag::DE)
    } else if count(Family::D, 5) {
        star(vec![], vec![4], CaseTag::D5)
    } else if count(Family::D, 4) {
        match dynkin.count(Family::A, 1) {
            0 => star(vec![(1, 1); 3], vec![], CaseTag::DE),
            1 => star(vec![(1, 1); 2], vec![2], CaseTag::DE),
            _ => star(vec![(1, 1)], vec![2, 2], CaseTag::DE),
        }
    } else if dynkin.has_family(Family::D) || dynkin.has_family(Family::E) {
        Err(FibrationError::Unsupported(format!(
            "no fibration template for type {dynkin}"
        )))
    } else {
        let n = i64::from(dynkin.largest_a().unwrap_or(0));
        let primed = dynkin.prime() == Prime::Single;
        match n {
            5 if primed => two(vec![], vec![3], CaseTag::A5P),
            3 if primed => two(vec![], vec![2], CaseTag::A3A1P),
            3..=6 => two(vec![(n - 2, 1)], vec![], CaseTag::AN),
            2 => two(vec![], vec![], CaseTag::A2),
            _ => Err(FibrationError::Unsupported(format!(
                "no fibration template for type {dynkin}"
            ))),
        }
    }
}

/// The case whose construction handles a degree-2 surface of type `dynkin`.
pub fn template_case(dynkin: &DynkinType) -> Result<CaseTag> {
    template_shape(dynkin).map(|shape| shape.3)
}

/// Fibration data and case for a degree-2 Du Val del Pezzo surface of type
/// `dynkin`, with the I-1 fiber lengths given by `alpha_partition`.
///
/// The resolution graph of the returned data must realize exactly `dynkin`,
/// so the partition also fixes the A-summands coming from I-1 fibers.
pub fn template_from_dynkin(
    dynkin: &DynkinType,
    alpha_partition: &[i64],
) -> Result<(FibrationData, CaseTag)> {
    let (condition, betas, gammas, case) = template_shape(dynkin)?;
    let data = FibrationData {
        condition,
        m0: 2,
        m_inf: (condition == Condition::StarStar).then_some(2),
        alphas: alpha_partition.to_vec(),
        betas,
        gammas,
    };
    let expected = 8 - data.betas.iter().map(|b| b.0 + b.1).sum::<i64>() - data.gamma() - 2;
    if data.alpha() != expected {
        return Err(FibrationError::InvalidInput(format!(
            "alpha partition of type {dynkin} must sum to {expected}, got {}",
            data.alpha()
        )));
    }
    let data = validate_fibration(data)?;
    let realized = SurfaceModel::new(data.clone())?
        .dynkin_type()
        .ok_or_else(|| FibrationError::InvalidInput("template is not Du Val".into()))?;
    if realized != dynkin.unprimed() {
        return Err(FibrationError::InvalidInput(format!(
            "alpha partition {alpha_partition:?} realizes {realized}, not {}",
            dynkin.unprimed()
        )));
    }
    debug_assert!(case.fits(&data));
    Ok((data, case))
}

/// `true` iff `formula` has square 0, anticanonical degree 2, meets `section`
/// once and is orthogonal to every curve with positive coefficient in it.
pub fn fiber_class_check(config: &CurveConfig, formula: &Divisor, section: &str) -> bool {
    let check = || -> dpz_core::Result<bool> {
        let sq = pair(config, formula, formula)?;
        let deg = pair(config, formula, &Divisor::anticanonical())?;
        let sec = pair(config, formula, &Divisor::curve(section))?;
        if !sq.is_zero() || deg != int(2) || !sec.is_one() {
            return Ok(false);
        }
        for l in formula.positive_support() {
            if !pair(config, formula, &Divisor::curve(l))?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    };
    check().unwrap_or(false)
}

/// A configuration of a singular point's resolution with the (−1)-curves used
/// to write down a fiber class, and that class.
#[derive(Clone, Debug)]
pub struct LocalConfiguration {
    pub name: String,
    pub config: CurveConfig,
    pub formula: Divisor,
    pub section: String,
}

fn chain(builder: &mut dpz_core::ConfigBuilder, n: usize) {
    for i in 1..=n {
        builder.add_curve(format!("D{i}"), -2, true);
    }
    for i in 1..n {
        builder.add_meet(format!("D{i}"), format!("D{}", i + 1), 1);
    }
}

fn terms(pairs: &[(&str, i64)]) -> Divisor {
    Divisor::from_terms(Rational::zero(), pairs.iter().map(|(l, c)| (*l, int(*c))))
}

/// The fiber-class formulas written on the resolution graphs of the degree-2
/// cases with one section: D₅, (A₅)′, (A₃+A₁)′, A₃ to A₆, and A₂.
pub fn local_configurations() -> Result<Vec<LocalConfiguration>> {
    let mut out = Vec::new();

    let mut b = CurveConfig::builder(2);
    for i in 1..=5 {
        b.add_curve(format!("D{i}"), -2, true);
    }
    b.add_curve("E1", -1, false);
    for (x, y) in [
        ("D1", "D3"),
        ("D2", "D3"),
        ("D3", "D4"),
        ("D4", "D5"),
        ("E1", "D1"),
    ] {
        b.add_meet(x, y, 1);
    }
    out.push(LocalConfiguration {
        name: "D5".into(),
        config: b.build()?,
        formula: terms(&[("D2", 1), ("E1", 2), ("D1", 2), ("D3", 2), ("D4", 1)]),
        section: "D5".into(),
    });

    let mut b = CurveConfig::builder(2);
    chain(&mut b, 5);
    b.add_curve("E3", -1, false);
    b.add_meet("E3", "D3", 1);
    out.push(LocalConfiguration {
        name: "(A5)'".into(),
        config: b.build()?,
        formula: terms(&[("D2", 1), ("D3", 2), ("E3", 2), ("D4", 1)]),
        section: "D1".into(),
    });

    let mut b = CurveConfig::builder(2);
    chain(&mut b, 3);
    b.add_curve("D4", -2, true);
    b.add_curve("E2", -1, false);
    b.add_meet("E2", "D2", 1);
    b.add_meet("E2", "D4", 1);
    out.push(LocalConfiguration {
        name: "(A3+A1)'".into(),
        config: b.build()?,
        formula: terms(&[("D2", 1), ("E2", 2), ("D4", 1)]),
        section: "D1".into(),
    });

    for n in 3..=6usize {
        let mut b = CurveConfig::builder(2);
        chain(&mut b, n);
        let (ea, eb) = if n == 3 {
            ("E2".to_string(), "E2p".to_string())
        } else {
            ("E2".to_string(), format!("E{}", n - 1))
        };
        b.add_curve(ea.clone(), -1, false);
        b.add_curve(eb.clone(), -1, false);
        b.add_meet(ea.clone(), "D2", 1);
        b.add_meet(eb.clone(), format!("D{}", n - 1), 1);
        let mut formula = Divisor::curve(ea) + Divisor::curve(eb);
        for i in 2..n {
            formula.add_term(format!("D{i}"), Rational::one());
        }
        out.push(LocalConfiguration {
            name: format!("A{n}"),
            config: b.build()?,
            formula,
            section: "D1".into(),
        });
    }

    let mut b = CurveConfig::builder(2);
    chain(&mut b, 2);
    out.push(LocalConfiguration {
        name: "A2".into(),
        config: b.build()?,
        formula: Divisor::anticanonical() - terms(&[("D1", 1), ("D2", 1)]),
        section: "D1".into(),
    });
    Ok(out)
}
