use std::collections::BTreeMap;

use dpz_core::{
    a_chain_config, an_weighted_self_intersection, bl_divisor, int, pair, rat,
    solve_prescribed_pairing, CurveConfig, Divisor, ExtendedDivisor, Rational,
};
use num_rational::Ratio;
use num_traits::Zero;
use proptest::prelude::*;

/// Rows n = 1..7 of the table of (B_ℓ)², written out by hand.
fn table_one() -> Vec<Vec<Rational>> {
    vec![
        vec![rat(-1, 2)],
        vec![rat(-2, 3), rat(-2, 3)],
        vec![rat(-3, 4), int(-1), rat(-3, 4)],
        vec![rat(-4, 5), rat(-6, 5), rat(-6, 5), rat(-4, 5)],
        vec![rat(-5, 6), rat(-4, 3), rat(-3, 2), rat(-4, 3), rat(-5, 6)],
        vec![
            rat(-6, 7),
            rat(-10, 7),
            rat(-12, 7),
            rat(-12, 7),
            rat(-10, 7),
            rat(-6, 7),
        ],
        vec![
            rat(-7, 8),
            rat(-3, 2),
            rat(-15, 8),
            int(-2),
            rat(-15, 8),
            rat(-3, 2),
            rat(-7, 8),
        ],
    ]
}

fn chain_divisor(weights: &[i64]) -> Divisor {
    ExtendedDivisor::from_terms(
        Rational::zero(),
        weights
            .iter()
            .enumerate()
            .map(|(j, &w)| (format!("D{}", j + 1), int(w))),
    )
}

#[test]
fn table_one_entries_match_closed_form_and_solver() {
    for (row, expected) in table_one().into_iter().enumerate() {
        let n = row + 1;
        let config = a_chain_config(n);
        let labels: Vec<String> = (1..=n).map(|j| format!("D{j}")).collect();
        for (i, value) in expected.into_iter().enumerate() {
            let ell = i + 1;
            let b = bl_divisor(n, ell).unwrap();
            assert_eq!(b.self_int, value, "closed form at ({n},{ell})");
            let target = BTreeMap::from([(format!("D{ell}"), int(-1))]);
            let solved = solve_prescribed_pairing(&config, &labels, &target).unwrap();
            assert_eq!(
                pair(&config, &solved, &solved).unwrap(),
                value,
                "solver at ({n},{ell})"
            );
        }
    }
}

#[test]
fn bl_divisor_is_reversal_symmetric() {
    for n in 1..=12 {
        for ell in 1..=n {
            let mut fwd = bl_divisor(n, ell).unwrap().coefficients;
            fwd.reverse();
            assert_eq!(fwd, bl_divisor(n, n + 1 - ell).unwrap().coefficients);
        }
    }
}

#[test]
fn weighted_chain_bound_is_exhaustively_sharp() {
    for len in 3..=6usize {
        let total = 4usize.pow(len as u32);
        for code in 0..total {
            let a: Vec<i64> = (0..len)
                .map(|k| (code / 4usize.pow(k as u32) % 4) as i64 + 1)
                .collect();
            if a[1..len - 1].iter().any(|&x| x < 2) {
                continue;
            }
            let v = an_weighted_self_intersection(&a).unwrap();
            let extremal = a[0] == 1 && a[len - 1] == 1 && a[1..len - 1].iter().all(|&x| x == 2);
            assert!(v <= int(-4), "{a:?}");
            assert_eq!(v == int(-4), extremal, "{a:?}");
        }
    }
}

#[test]
fn generic_pairing_agrees_across_scalar_types() {
    let c = a_chain_config(4);
    let big = chain_divisor(&[1, 3, 2, 5]);
    let small: ExtendedDivisor<Ratio<i64>> = ExtendedDivisor::from_terms(
        Ratio::from(0),
        [
            ("D1", Ratio::from(1)),
            ("D2", Ratio::from(3)),
            ("D3", Ratio::from(2)),
            ("D4", Ratio::from(5)),
        ],
    );
    let p_big = pair(&c, &big, &big).unwrap();
    let p_small = pair(&c, &small, &small).unwrap();
    assert_eq!(p_big, int(*p_small.numer()));
    assert_eq!(*p_small.denom(), 1);
}

fn small_config() -> CurveConfig {
    CurveConfig::builder(2)
        .curve("A", -2, true)
        .curve("B", -2, true)
        .curve("C", -2, true)
        .curve("E", -1, false)
        .curve("F", 0, false)
        .meet("A", "B", 1)
        .meet("B", "C", 1)
        .meet("E", "B", 1)
        .meet("F", "A", 1)
        .build()
        .unwrap()
}

fn arb_rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| rat(n, d))
}

fn arb_divisor() -> impl Strategy<Value = Divisor> {
    (arb_rational(), proptest::collection::vec(arb_rational(), 5)).prop_map(|(k, cs)| {
        ExtendedDivisor::from_terms(k, ["A", "B", "C", "E", "F"].into_iter().zip(cs))
    })
}

proptest! {
    #[test]
    fn pairing_is_symmetric_and_bilinear(a in arb_divisor(), b in arb_divisor(), c in arb_divisor(), s in arb_rational()) {
        let cfg = small_config();
        prop_assert_eq!(pair(&cfg, &a, &b).unwrap(), pair(&cfg, &b, &a).unwrap());
        let lhs = pair(&cfg, &(a.scale(&s) + b.clone()), &c).unwrap();
        let rhs = s * pair(&cfg, &a, &c).unwrap() + pair(&cfg, &b, &c).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(pair(&cfg, &Divisor::zero(), &a).unwrap(), Rational::zero());
    }

    #[test]
    fn contracted_support_has_negative_square(cs in proptest::collection::vec(arb_rational(), 3)) {
        let cfg = small_config();
        let d: Divisor = ExtendedDivisor::from_terms(Rational::zero(), ["A", "B", "C"].into_iter().zip(cs));
        let sq = pair(&cfg, &d, &d).unwrap();
        if d.is_zero() {
            prop_assert_eq!(sq, Rational::zero());
        } else {
            prop_assert!(sq < Rational::zero());
        }
    }

    #[test]
    fn weighted_formula_agrees_with_pairing(a in proptest::collection::vec(1i64..=9, 1..=10)) {
        let cfg = a_chain_config(a.len());
        let d = chain_divisor(&a);
        prop_assert_eq!(an_weighted_self_intersection(&a).unwrap(), pair(&cfg, &d, &d).unwrap());
    }
}
