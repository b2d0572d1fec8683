use std::collections::BTreeMap;

use dpz_core::{int, pair, rat, riemann_roch_lower_bound, Divisor, Rational};
use dpz_cylinder::sampling::{random_model, AmpleSampler};
use dpz_cylinder::{
    anticanonical_input, check_inequalities, construct, construct_a2, construct_d5, construct_de,
    construct_with_epsilon, de_dimension_bound, select_case, select_case_for_type,
    verify_certificate, AmpleInput, Check, CylinderError, CylinderKind,
};
use dpz_fibration::{
    template_from_dynkin, validate_fibration, CaseTag, Condition, FiberKind, FibrationData,
    SurfaceModel,
};
use num_traits::{Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn model(
    condition: Condition,
    m0: i64,
    m_inf: Option<i64>,
    alphas: &[i64],
    betas: &[(i64, i64)],
    gammas: &[i64],
) -> SurfaceModel {
    let data = FibrationData {
        condition,
        m0,
        m_inf,
        alphas: alphas.to_vec(),
        betas: betas.to_vec(),
        gammas: gammas.to_vec(),
    };
    SurfaceModel::new(validate_fibration(data).unwrap()).unwrap()
}

fn d4() -> SurfaceModel {
    let (data, _) = template_from_dynkin(&"D4".parse().unwrap(), &[]).unwrap();
    SurfaceModel::new(data).unwrap()
}

fn d4_h() -> AmpleInput {
    AmpleInput::new([
        ("F", int(3)),
        ("E1", int(-1)),
        ("E2", int(1)),
        ("E3", int(1)),
    ])
}

fn a2() -> SurfaceModel {
    model(Condition::StarStar, 2, Some(2), &[3, 3], &[], &[])
}

fn a2_h() -> AmpleInput {
    AmpleInput::new([("E1", int(3)), ("E2", int(6))])
}

fn check_value(model: &SurfaceModel, h: &AmpleInput, id: &str) -> Rational {
    check_inequalities(model, h)
        .unwrap()
        .into_iter()
        .find(|c| c.id == id)
        .unwrap_or_else(|| panic!("{id}"))
        .value
}

#[test]
fn d4_worked_example() {
    let m = d4();
    let h = d4_h();
    assert_eq!(check_value(&m, &h, "de.d"), int(2));
    let cert = construct_de(&m, &h).unwrap();
    let half = rat(1, 2);
    let three_halves = rat(3, 2);
    let expected = BTreeMap::from([
        ("E1".to_string(), half.clone()),
        ("E1p".to_string(), three_halves.clone()),
        ("E2".to_string(), three_halves.clone()),
        ("E2p".to_string(), half.clone()),
        ("E3".to_string(), three_halves),
        ("E3p".to_string(), half.clone()),
        ("F".to_string(), half),
    ]);
    assert_eq!(cert.divisor, expected);
    assert_eq!(cert.kind, CylinderKind::Cyl(3));
    assert!(cert.epsilon.is_zero());
    assert!(verify_certificate(&m, &h, &cert).unwrap().passed());
}

#[test]
fn a2_worked_example() {
    let m = a2();
    let h = a2_h();
    assert_eq!(check_value(&m, &h, "a2.s"), int(1));
    let cert = construct_a2(&m, &h).unwrap();
    assert_eq!(cert.branch, "equal-slope");
    assert_eq!(cert.epsilon, rat(1, 2));
    let e = &cert.epsilon;
    assert_eq!(cert.divisor["F0"], int(3) * (int(1) - e));
    assert_eq!(cert.divisor["E1"], int(3) * e);
    assert_eq!(cert.divisor["E2"], int(3) + int(3) * e);
    assert_eq!(cert.kind, CylinderKind::CylStar);
    assert!(cert.removed_curves.contains("F0") && cert.removed_curves.contains("Dinf"));
}

#[test]
fn epsilon_at_the_supremum_fails_positivity_and_window() {
    let m = a2();
    let h = a2_h();
    let cert = construct_with_epsilon(&m, CaseTag::A2, &h, &int(1)).unwrap();
    assert!(cert.divisor["F0"].is_zero());
    let report = verify_certificate(&m, &h, &cert).unwrap();
    assert!(!report.outcome(Check::Positivity).pass);
    assert!(!report.outcome(Check::EpsilonWindow).pass);
    assert!(report.outcome(Check::Rewrite).pass);

    let inside = construct_with_epsilon(&m, CaseTag::A2, &h, &rat(9, 10)).unwrap();
    assert!(verify_certificate(&m, &h, &inside).unwrap().passed());
}

#[test]
fn tampered_certificates_fail_the_named_check() {
    let m = d4();
    let h = d4_h();
    let cert = construct(&m, &h).unwrap();

    let mut negated = cert.clone();
    let c = negated.divisor.get_mut("E2").unwrap();
    *c = -c.clone();
    let report = verify_certificate(&m, &h, &negated).unwrap();
    assert!(!report.outcome(Check::Positivity).pass);
    assert!(!report.outcome(Check::Rewrite).pass);

    let mut bumped = cert.clone();
    *bumped.divisor.get_mut("F").unwrap() += int(1);
    let report = verify_certificate(&m, &h, &bumped).unwrap();
    assert_eq!(
        report
            .failures()
            .iter()
            .map(|f| f.check)
            .collect::<Vec<_>>(),
        vec![Check::Rewrite]
    );

    let mut fewer = cert.clone();
    fewer.removed_curves.remove("D1_0");
    let report = verify_certificate(&m, &h, &fewer).unwrap();
    assert_eq!(
        report
            .failures()
            .iter()
            .map(|f| f.check)
            .collect::<Vec<_>>(),
        vec![Check::RemovedSet]
    );

    let mut wrong_kind = cert.clone();
    wrong_kind.kind = CylinderKind::Cyl(2);
    assert!(
        !verify_certificate(&m, &h, &wrong_kind)
            .unwrap()
            .outcome(Check::RemovedSet)
            .pass
    );

    let mut stray_epsilon = cert;
    stray_epsilon.epsilon = rat(1, 3);
    assert!(
        !verify_certificate(&m, &h, &stray_epsilon)
            .unwrap()
            .outcome(Check::EpsilonWindow)
            .pass
    );
}

#[test]
fn case_selection() {
    let gamma5 = model(Condition::Star, 2, None, &[1], &[], &[5]);
    assert_eq!(de_dimension_bound(gamma5.data()), Some(0));
    assert_eq!(select_case(&gamma5).unwrap(), CaseTag::DE);

    let (data, case) = template_from_dynkin(&"D5".parse().unwrap(), &[1, 1]).unwrap();
    assert_eq!(case, CaseTag::D5);
    assert_eq!(
        select_case(&SurfaceModel::new(data).unwrap()).unwrap(),
        CaseTag::D5
    );
    assert_eq!(
        select_case_for_type(&"D5".parse().unwrap()).unwrap(),
        CaseTag::D5
    );

    for ty in ["A2", "2A2", "3A2", "A2+3A1"] {
        assert_eq!(
            select_case_for_type(&ty.parse().unwrap()).unwrap(),
            CaseTag::A2,
            "{ty}"
        );
    }
    for (ty, case) in [
        ("D4+A1", CaseTag::DE),
        ("E6", CaseTag::DE),
        ("(A5)'", CaseTag::A5P),
        ("(A3+A1)'", CaseTag::A3A1P),
        ("A4", CaseTag::AN),
    ] {
        assert_eq!(
            select_case_for_type(&ty.parse().unwrap()).unwrap(),
            case,
            "{ty}"
        );
    }
    assert!(matches!(
        select_case_for_type(&"3A1".parse().unwrap()),
        Err(CylinderError::Unsupported(_))
    ));
}

#[test]
fn picard_rank_one_is_reported() {
    let m = model(Condition::StarStar, 2, Some(2), &[6], &[], &[]);
    assert_eq!(select_case(&m), Err(CylinderError::PicardRankOne));
    assert_eq!(
        construct(&m, &AmpleInput::new([("E1", int(1))])),
        Err(CylinderError::PicardRankOne)
    );
}

#[test]
fn long_i2_fiber_needs_m0_two() {
    let m = model(Condition::StarStar, 3, Some(2), &[2, 2], &[(2, 1)], &[]);
    assert_eq!(select_case(&m).unwrap(), CaseTag::AN);
    let h = anticanonical_input(&m, CaseTag::AN).unwrap();
    assert!(matches!(
        construct(&m, &h),
        Err(CylinderError::OutOfScope(_))
    ));
}

#[test]
fn failed_assertions_name_the_inequality() {
    let m = d4();
    let h = AmpleInput::new([
        ("F", int(1)),
        ("E1", int(-1)),
        ("E2", int(-1)),
        ("E3", int(-1)),
    ]);
    match construct(&m, &h) {
        Err(CylinderError::Ampleness { id, value }) => {
            assert!(id.starts_with("H."), "{id}");
            assert!(!value.is_positive());
        }
        other => panic!("{other:?}"),
    }
    let unknown = AmpleInput::new([("Gamma", int(1))]);
    assert!(matches!(
        construct(&m, &unknown),
        Err(CylinderError::InvalidInput(_))
    ));
    let d5 = SurfaceModel::new(
        template_from_dynkin(&"D5".parse().unwrap(), &[1, 1])
            .unwrap()
            .0,
    )
    .unwrap();
    assert!(matches!(
        construct_d5(&m, &d4_h()),
        Err(CylinderError::Unsupported(_))
    ));
    assert!(construct_d5(&d5, &anticanonical_input(&d5, CaseTag::D5).unwrap()).is_ok());
}

#[test]
fn long_i2_checks_include_the_tail_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut seen = 0;
    while seen < 20 {
        let m = random_model(CaseTag::AN, &mut rng).unwrap();
        let beta = m.data().betas[0].0;
        if beta < 2 {
            continue;
        }
        let ids: Vec<String> =
            check_inequalities(&m, &anticanonical_input(&m, CaseTag::AN).unwrap())
                .unwrap()
                .into_iter()
                .map(|c| c.id)
                .collect();
        assert!(ids.iter().any(|i| i == "an.(beta-1)s1+b"));
        assert_eq!(ids.iter().any(|i| i == "an.b"), beta >= 3);
        seen += 1;
    }
}

fn as_map(h: &AmpleInput) -> BTreeMap<String, Rational> {
    h.coeffs.clone()
}

/// `H·E_i = −b_i/α_i` on every I-1 fiber of a one-section model.
#[test]
fn i1_coefficients_are_pairings() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for case in [CaseTag::DE, CaseTag::D5] {
        for _ in 0..10 {
            let m = random_model(case, &mut rng).unwrap();
            let sampler = AmpleSampler::new(&m).unwrap();
            for _ in 0..5 {
                let h = sampler.sample(&mut rng);
                for (i, &alpha) in m.data().alphas.iter().enumerate() {
                    let e = BTreeMap::from([(format!("E{}", i + 1), int(1))]);
                    let hb = h.coeff(&format!("E{}", i + 1));
                    assert_eq!(m.s_pair(&as_map(&h), &e).unwrap(), -hb / int(alpha));
                }
            }
        }
    }
}

fn chain_label(i: usize, l: i64, len: i64) -> String {
    if l == len {
        format!("E{i}")
    } else {
        format!("D{i}_{l}")
    }
}

/// The divisor on the resolution whose pushforward gives the positivity of
/// `d` in the general-fiber construction, for the given I-2 sign pattern.
fn general_fiber_divisor(m: &SurfaceModel, negative: &[bool]) -> Divisor {
    let data = m.data();
    let mut d = Divisor::zero()
        .with("D0", int(2))
        .with("F", int(2 * data.m0));
    for f in m.fibers() {
        let i = f.index;
        match f.kind {
            FiberKind::I1 => {
                let a = data.alphas[i - 1];
                for l in 1..=a {
                    d.add_term(chain_label(i, l, a), int(-2 * l));
                }
            }
            FiberKind::I2 => {
                let (b, bp) = data.betas[i - 1 - data.r()];
                if negative[i - 1 - data.r()] {
                    for mu in 1..=b {
                        d.add_term(chain_label(i, mu, b), int(-2 * mu));
                    }
                } else {
                    for mu in 1..=bp {
                        let label = if mu == bp {
                            format!("E{i}p")
                        } else {
                            format!("D{i}_{}", b + mu)
                        };
                        d.add_term(label, int(-2 * mu));
                    }
                }
            }
            FiberKind::II => {
                let g = data.gammas[i - 1 - data.r() - data.s()];
                for nu in 1..=g {
                    d.add_term(chain_label(i, nu, g), int(-nu));
                }
            }
        }
    }
    d
}

/// `H·f_*Δ = 2d`, and Riemann–Roch on `Δ` (or `½Δ` without II fibers) gives
/// the dimension bound used to select the construction.
#[test]
fn general_fiber_divisor_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut half_path = 0;
    for _ in 0..40 {
        let m = random_model(CaseTag::DE, &mut rng).unwrap();
        let data = m.data().clone();
        let sampler = AmpleSampler::new(&m).unwrap();
        for _ in 0..5 {
            let h = sampler.sample(&mut rng);
            let negative: Vec<bool> = (1..=data.s())
                .map(|j| h.coeff(&format!("E{}", data.r() + j)).is_negative())
                .collect();
            let delta = general_fiber_divisor(&m, &negative);
            let pulled = m.pullback(&as_map(&h)).unwrap();
            let d = check_value(&m, &h, "de.d");
            assert_eq!(pair(m.config(), &pulled, &delta).unwrap(), int(2) * &d);
            let full = riemann_roch_lower_bound(m.config(), &delta).unwrap();
            assert!(full >= int(3 * data.beta_prime() + 2 * data.gamma() - 10));
            let bound = de_dimension_bound(&data).unwrap();
            assert!(bound >= 0);
            if data.t() == 0 {
                let half = delta.scale(&rat(1, 2));
                assert!(half.coeffs().values().all(Rational::is_integer));
                let rr = riemann_roch_lower_bound(m.config(), &half).unwrap();
                assert!(rr >= int(data.beta_prime() - 3));
                assert_eq!(pair(m.config(), &pulled, &half).unwrap(), d);
                assert!(d.is_positive());
                half_path += 1;
            }
        }
    }
    assert!(half_path > 0);
}

/// `H·f_*Δ` for the divisor certifying the branch inequality of the
/// `Gamma` construction equals the checked value `d0`.
#[test]
fn gamma_branch_inequality_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..20 {
        let m = random_model(CaseTag::D5, &mut rng).unwrap();
        let data = m.data().clone();
        let sampler = AmpleSampler::new(&m).unwrap();
        for _ in 0..5 {
            let h = sampler.sample(&mut rng);
            let slope = |i: usize| h.coeff(&format!("E{i}")) / int(data.alphas[i - 1]);
            let last = (1..=data.r()).max_by_key(|&i| (slope(i), i)).unwrap();
            let r = data.r();
            let mut delta = Divisor::zero()
                .with("D0", int(2))
                .with("F", int(2 * data.m0))
                .with(format!("E{last}"), int(1));
            for (i, &a) in data.alphas.iter().enumerate() {
                for l in 1..=a {
                    delta.add_term(chain_label(i + 1, l, a), int(-2 * l));
                }
            }
            for mu in 1..=4 {
                delta.add_term(chain_label(r + 1, mu, 4), int(-mu));
            }
            let pulled = m.pullback(&as_map(&h)).unwrap();
            assert_eq!(
                pair(m.config(), &pulled, &delta).unwrap(),
                check_value(&m, &h, "d5.d0")
            );
        }
    }
}

/// `H·f_*Δ = (β−1)a1/α1 + b` for the long I-2 fiber tail bound.
#[test]
fn long_i2_tail_bound_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let mut seen = 0;
    while seen < 30 {
        let m = random_model(CaseTag::AN, &mut rng).unwrap();
        let data = m.data().clone();
        let beta = data.betas[0].0;
        if beta < 2 {
            continue;
        }
        let sampler = AmpleSampler::new(&m).unwrap();
        let h = sampler.sample(&mut rng);
        let slope = |i: usize| h.coeff(&format!("E{i}")) / int(data.alphas[i - 1]);
        let first = (1..=data.r()).min_by_key(|&i| (slope(i), i)).unwrap();
        let a1 = data.alphas[first - 1];
        let j = data.r() + 1;
        let mut delta = Divisor::zero()
            .with("D0", int(beta - 1))
            .with("F", int(2 * (beta - 1)))
            .with(format!("E{j}p"), int(-(beta - 2)));
        for l in 1..=a1 {
            delta.add_term(chain_label(first, l, a1), int(-(beta - 1)));
        }
        for mu in 1..=beta {
            delta.add_term(chain_label(j, mu, beta), int(-mu));
        }
        let pulled = m.pullback(&as_map(&h)).unwrap();
        assert_eq!(
            pair(m.config(), &pulled, &delta).unwrap(),
            check_value(&m, &h, "an.(beta-1)s1+b")
        );
        seen += 1;
    }
}
