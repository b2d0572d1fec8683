use std::collections::BTreeMap;

use dpz_core::{int, pair, rat, CurveConfig, Divisor, Rational};
use dpz_dynkin::DynkinType;
use dpz_fibration::{
    classify_fiber_graph, fiber_class_check, local_configurations, pushforward_rewrite,
    template_from_dynkin, validate_fibration, CaseTag, Condition, FiberGraph, FiberKind,
    FibrationData, SurfaceModel,
};
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Rank over ℚ by plain Gaussian elimination.
fn rank(m: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .map(|r| r.iter().map(|&x| int(x)).collect())
        .collect();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for i in 0..a.len() {
            if i != rank && !a[i][c].is_zero() {
                let f = &a[i][c] / &a[rank][c];
                let pivot = a[rank].clone();
                for (x, y) in a[i].iter_mut().zip(pivot) {
                    *x -= &f * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Blows down (−1)-vertices meeting at most two others until nothing changes;
/// a genuine fiber ends as a single 0-vertex.
fn blows_down_to_fiber(graph: &FiberGraph) -> bool {
    let n = graph.self_ints.len();
    let mut alive = vec![true; n];
    let mut selfs = graph.self_ints.clone();
    let mut meet = vec![vec![0i64; n]; n];
    for &(a, b) in &graph.edges {
        if a == b {
            return false;
        }
        meet[a][b] += 1;
        meet[b][a] += 1;
    }
    loop {
        let live: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
        if live.len() == 1 {
            return selfs[live[0]] == 0;
        }
        let pick = live.iter().copied().find(|&v| {
            let deg: i64 = live.iter().map(|&w| meet[v][w]).sum();
            selfs[v] == -1 && deg <= 2 && live.iter().all(|&w| meet[v][w] <= 1)
        });
        let Some(v) = pick else { return false };
        alive[v] = false;
        let nbrs: Vec<usize> = live
            .iter()
            .copied()
            .filter(|&w| w != v && meet[v][w] > 0)
            .collect();
        for &w in &nbrs {
            selfs[w] += 1;
        }
        if let [a, b] = nbrs[..] {
            meet[a][b] += 1;
            meet[b][a] += 1;
        }
    }
}

/// Random validated fibration data, mixing all three fiber kinds.
fn random_data(seed: u64) -> Option<FibrationData> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let star = rng.gen_bool(0.5);
    let m0 = rng.gen_range(2..=4);
    let m_inf = rng.gen_range(2..=3);
    let mut remaining = if star { 4 + m0 } else { 2 + m0 + m_inf };
    let (mut alphas, mut betas, mut gammas) = (vec![], vec![], vec![]);
    while remaining > 0 {
        match rng.gen_range(0..3) {
            1 if remaining >= 2 => {
                let total = rng.gen_range(2..=remaining.min(5));
                let bp = rng.gen_range(1..=total / 2);
                betas.push((total - bp, bp));
                remaining -= total;
            }
            2 if remaining >= 2 => {
                let g = rng.gen_range(2..=remaining.min(6));
                gammas.push(g);
                remaining -= g;
            }
            _ => {
                let a = rng.gen_range(1..=remaining.min(4));
                alphas.push(a);
                remaining -= a;
            }
        }
    }
    let data = FibrationData {
        condition: if star {
            Condition::Star
        } else {
            Condition::StarStar
        },
        m0,
        m_inf: (!star).then_some(m_inf),
        alphas,
        betas,
        gammas,
    };
    validate_fibration(data).ok()
}

fn model_of(seed: u64) -> Option<SurfaceModel> {
    SurfaceModel::new(random_data(seed)?).ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn fiber_class_invariants(seed in any::<u64>()) {
        let Some(m) = model_of(seed) else { return Ok(()) };
        let cfg = m.config();
        for f in m.fibers() {
            let phi = f.class();
            prop_assert!(pair(cfg, &phi, &phi).unwrap().is_zero());
            prop_assert_eq!(pair(cfg, &phi, &Divisor::anticanonical()).unwrap(), int(2));
            prop_assert!(pair(cfg, &phi, &Divisor::curve("D0")).unwrap().is_one());
            for l in f.labels() {
                prop_assert!(pair(cfg, &phi, &Divisor::curve(l)).unwrap().is_zero());
            }
            prop_assert!(fiber_class_check(cfg, &phi, "D0"));
            // Every singular fiber is linearly equivalent to F numerically.
            for c in m.config().labels() {
                prop_assert_eq!(
                    pair(cfg, &phi, &Divisor::curve(c)).unwrap(),
                    pair(cfg, &Divisor::curve("F"), &Divisor::curve(c)).unwrap()
                );
            }
        }
    }

    #[test]
    fn gram_rank_is_picard_rank(seed in any::<u64>()) {
        let Some(m) = model_of(seed) else { return Ok(()) };
        prop_assert_eq!(rank(m.config().gram()) as i64, 10 - m.data().k2());
    }

    #[test]
    fn pullbacks_are_orthogonal_to_contracted_curves(seed in any::<u64>()) {
        let Some(m) = model_of(seed) else { return Ok(()) };
        for l in m.visible_labels() {
            let p = m.pullback_curve(l).unwrap();
            for c in m.config().contracted_labels() {
                prop_assert!(pair(m.config(), &p, &Divisor::curve(c)).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn classifier_matches_generated_fibers(seed in any::<u64>()) {
        let Some(m) = model_of(seed) else { return Ok(()) };
        for f in m.fibers() {
            let (g, s) = f.graph(m.config()).unwrap();
            prop_assert_eq!(classify_fiber_graph(&g, s).unwrap(), f.kind);
            prop_assert!(blows_down_to_fiber(&g));
        }
    }
}

#[test]
fn perturbed_fiber_graphs_are_rejected() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut rejected = 0;
    let mut seed = 0;
    while rejected < 50 {
        seed += 1;
        let Some(m) = model_of(seed) else { continue };
        let f = &m.fibers()[rng.gen_range(0..m.fibers().len())];
        let (mut g, s) = f.graph(m.config()).unwrap();
        let n = g.self_ints.len();
        match rng.gen_range(0..4) {
            0 => g.self_ints[rng.gen_range(0..n)] = -3,
            1 if n >= 3 => {
                let a = rng.gen_range(0..n);
                let b = (0..n)
                    .find(|&b| b != a && !g.edges.contains(&(a, b)) && !g.edges.contains(&(b, a)));
                let Some(b) = b else { continue };
                g.edges.push((a, b));
            }
            2 => {
                g.edges.remove(rng.gen_range(0..g.edges.len()));
            }
            _ => {
                let v = rng.gen_range(0..n);
                if g.self_ints[v] != -2 {
                    continue;
                }
                g.self_ints[v] = -1;
            }
        }
        assert!(
            !blows_down_to_fiber(&g),
            "perturbation still a fiber: {g:?}"
        );
        assert!(classify_fiber_graph(&g, s).is_err(), "accepted {g:?}");
        rejected += 1;
    }
}

fn case_data() -> Vec<(CaseTag, FibrationData)> {
    let fd = |condition, m0, m_inf, alphas: Vec<i64>, betas: Vec<(i64, i64)>, gammas: Vec<i64>| {
        validate_fibration(FibrationData {
            condition,
            m0,
            m_inf,
            alphas,
            betas,
            gammas,
        })
        .unwrap()
    };
    use Condition::*;
    vec![
        (
            CaseTag::DE,
            fd(Star, 2, None, vec![], vec![(1, 1); 3], vec![]),
        ),
        (
            CaseTag::DE,
            fd(Star, 3, None, vec![2], vec![(2, 1)], vec![2]),
        ),
        (CaseTag::D5, fd(Star, 2, None, vec![1, 1], vec![], vec![4])),
        (CaseTag::D5, fd(Star, 3, None, vec![2, 1], vec![], vec![4])),
        (
            CaseTag::A5P,
            fd(StarStar, 2, Some(2), vec![2, 1], vec![], vec![3]),
        ),
        (
            CaseTag::A5P,
            fd(StarStar, 3, Some(2), vec![3, 1], vec![], vec![3]),
        ),
        (
            CaseTag::A3A1P,
            fd(StarStar, 2, Some(2), vec![2, 1, 1], vec![], vec![2]),
        ),
        (
            CaseTag::A3A1P,
            fd(StarStar, 3, Some(3), vec![4, 2], vec![], vec![2]),
        ),
        (
            CaseTag::AN,
            fd(StarStar, 2, Some(2), vec![1, 2], vec![(2, 1)], vec![]),
        ),
        (
            CaseTag::AN,
            fd(StarStar, 3, Some(2), vec![2, 3], vec![(1, 1)], vec![]),
        ),
        (
            CaseTag::AN,
            fd(StarStar, 2, Some(2), vec![1], vec![(4, 1)], vec![]),
        ),
        (
            CaseTag::A2,
            fd(StarStar, 2, Some(2), vec![3, 2, 1], vec![], vec![]),
        ),
        (
            CaseTag::A2,
            fd(StarStar, 3, Some(2), vec![4, 3], vec![], vec![]),
        ),
    ]
}

#[test]
fn rewrite_round_trip_preserves_pairings() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (case, data) in case_data() {
        let model = SurfaceModel::new(data.clone()).unwrap();
        let rules = pushforward_rewrite(case, &data).unwrap();
        let classes = rules.classes();
        for l in model.visible_labels() {
            assert!(
                classes.iter().any(|c| c == l),
                "{case}: `{l}` has no rewrite"
            );
        }
        for _ in 0..20 {
            let x = &classes[rng.gen_range(0..classes.len())];
            let y = &classes[rng.gen_range(0..classes.len())];
            let single = |l: &str| BTreeMap::from([(l.to_string(), Rational::one())]);
            let direct = model.s_pair(&single(x), &single(y)).unwrap();
            let expanded = model
                .s_pair(&rules.expand(&single(x)).unwrap(), &single(y))
                .unwrap();
            assert_eq!(direct, expanded, "{case}: {x}·{y}");
        }
        // The pairing on the basis is non-degenerate, so the basis is free.
        let n = rules.basis().len();
        let gram: Vec<Vec<Rational>> = rules
            .basis()
            .iter()
            .map(|a| {
                rules
                    .basis()
                    .iter()
                    .map(|b| {
                        let sa = BTreeMap::from([(a.clone(), Rational::one())]);
                        let sb = BTreeMap::from([(b.clone(), Rational::one())]);
                        model.s_pair(&sa, &sb).unwrap()
                    })
                    .collect()
            })
            .collect();
        let scaled: Vec<Vec<i64>> = gram
            .iter()
            .map(|r| {
                r.iter()
                    .map(|q| (q * int(720)).to_integer().try_into().unwrap())
                    .collect()
            })
            .collect();
        assert_eq!(rank(&scaled), n, "{case}: basis pairing degenerate");
        assert_eq!(
            n as i64 + model.config().contracted_labels().len() as i64,
            10 - data.k2(),
            "{case}"
        );
    }
}

#[test]
fn rewrite_rejects_mismatched_case() {
    for (case, data) in case_data() {
        for other in CaseTag::ALL {
            let fits = pushforward_rewrite(other, &data).is_ok();
            if other == case {
                assert!(fits);
            } else if !(other == CaseTag::DE && data.condition == Condition::Star) {
                assert!(!fits, "{other} accepted data of {case}");
            }
        }
    }
}

#[test]
fn ii_fiber_multiplicities() {
    let d = validate_fibration(FibrationData {
        condition: Condition::Star,
        m0: 2,
        m_inf: None,
        alphas: vec![2],
        betas: vec![],
        gammas: vec![4],
    })
    .unwrap();
    let m = SurfaceModel::new(d).unwrap();
    let f = m.fiber(2).unwrap();
    assert_eq!(f.kind, FiberKind::II);
    let mults: Vec<i64> = f.components.iter().map(|c| c.1).collect();
    assert_eq!(mults, [1, 1, 2, 2, 2]);
    let e = BTreeMap::from([("E2".to_string(), Rational::one())]);
    let fc = BTreeMap::from([("F".to_string(), Rational::one())]);
    assert_eq!(
        m.s_pair(&e, &e).unwrap() * int(4),
        m.s_pair(&fc, &fc).unwrap()
    );
    // On S the fiber passes through the D5 point at the end of its long arm,
    // where the inverse Cartan matrix has entry 1.
    assert_eq!(m.s_pair(&fc, &fc).unwrap(), int(1));
    assert!(pair(m.config(), &Divisor::curve("F"), &Divisor::curve("F"))
        .unwrap()
        .is_zero());

    let d = validate_fibration(FibrationData {
        condition: Condition::Star,
        m0: 2,
        m_inf: None,
        alphas: vec![],
        betas: vec![(1, 1), (1, 1)],
        gammas: vec![2],
    })
    .unwrap();
    let m = SurfaceModel::new(d).unwrap();
    let phi = m.fiber(3).unwrap().class();
    assert!(pair(m.config(), &phi, &phi).unwrap().is_zero());
}

#[test]
fn single_a1_point_pullback() {
    let cfg = CurveConfig::builder(7)
        .curve("C", -1, false)
        .curve("D", -2, true)
        .meet("C", "D", 1)
        .build()
        .unwrap();
    let p = dpz_core::solve_prescribed_pairing(
        &cfg,
        &["D"],
        &BTreeMap::from([("D".to_string(), int(-1))]),
    )
    .unwrap();
    assert_eq!(p.coeff("D"), rat(1, 2));
    let fc = p + Divisor::curve("C");
    assert_eq!(pair(&cfg, &fc, &fc).unwrap(), rat(-1, 2));
}

#[test]
fn every_template_validates() {
    let cases: &[(&str, &[i64], CaseTag)] = &[
        ("D4", &[], CaseTag::DE),
        ("D4+A1", &[], CaseTag::DE),
        ("D4+2A1", &[], CaseTag::DE),
        ("D6", &[], CaseTag::DE),
        ("E6", &[1], CaseTag::DE),
        ("D5", &[1, 1], CaseTag::D5),
        ("D5+A1", &[2], CaseTag::D5),
        ("(A5)'", &[1, 1, 1], CaseTag::A5P),
        ("(A5+A1)'", &[2, 1], CaseTag::A5P),
        ("(A3+A1)'", &[1, 1, 1, 1], CaseTag::A3A1P),
        ("(A3+2A1)'", &[2, 1, 1], CaseTag::A3A1P),
        ("A3", &[1, 1, 1, 1], CaseTag::AN),
        ("(A3+A1)''", &[2, 1, 1], CaseTag::AN),
        ("A4", &[1, 1, 1], CaseTag::AN),
        ("(A5)''", &[1, 1], CaseTag::AN),
        ("A6", &[1], CaseTag::AN),
        ("A2", &[1; 6], CaseTag::A2),
        ("3A2", &[3, 3], CaseTag::A2),
        ("2A2+A1", &[3, 2, 1], CaseTag::A2),
    ];
    for (ty, partition, case) in cases {
        let dynkin: DynkinType = ty.parse().unwrap();
        let (data, got) =
            template_from_dynkin(&dynkin, partition).unwrap_or_else(|e| panic!("{ty}: {e}"));
        assert_eq!(got, *case, "{ty}");
        assert_eq!(validate_fibration(data.clone()).unwrap(), data);
        assert!(pushforward_rewrite(got, &data).is_ok(), "{ty}");
        let model = SurfaceModel::new(data).unwrap();
        assert_eq!(model.dynkin_type().unwrap(), dynkin.unprimed(), "{ty}");
        for f in model.fibers() {
            assert!(fiber_class_check(model.config(), &f.class(), "D0"), "{ty}");
        }
    }
    for lc in local_configurations().unwrap() {
        assert!(
            fiber_class_check(&lc.config, &lc.formula, &lc.section),
            "{}",
            lc.name
        );
    }
}
