use crate::chains::is_chain;
use crate::error::{DynkinError, Result};
use crate::lattice::{Dp2Lattice, LatticeClass};
use crate::types::{DynkinType, Prime};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PatternKind {
    /// Two distinct (−1)-classes, one meeting `R_2` and one meeting `R_{n−1}`.
    A,
    /// One (−1)-class meeting the middle of an A₅ chain, with `2E = −K − R₁ − 2R₂ − 3R₃ − 2R₄ − R₅`.
    B,
    /// One (−1)-class meeting the middle of an A₃ chain and an isolated root `R₄`.
    C,
}

/// Lattice witnesses for the (−1)-curves adjacent to an A_n chain.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SpecialCurvePattern {
    pub kind: PatternKind,
    pub witnesses: Vec<LatticeClass>,
    /// The isolated root `R₄` for kind C.
    pub isolated_root: Option<LatticeClass>,
}

fn pairs_like(e: &LatticeClass, chain: &[LatticeClass], hit: usize) -> bool {
    chain
        .iter()
        .enumerate()
        .all(|(j, r)| e.dot(r) == i64::from(j + 1 == hit))
}

fn validate(chain: &[LatticeClass], extra_roots: &[LatticeClass]) -> Result<()> {
    if !is_chain(chain) {
        return Err(DynkinError::InvalidInput(
            "the chain is not an A_n chain of roots".into(),
        ));
    }
    let lat = Dp2Lattice;
    for x in extra_roots {
        if !lat.is_root(x) {
            return Err(DynkinError::InvalidInput(format!("{x} is not a root")));
        }
        if chain.iter().any(|r| r.dot(x) != 0) {
            return Err(DynkinError::InvalidInput(format!(
                "extra root {x} is not orthogonal to the chain"
            )));
        }
    }
    Ok(())
}

/// `−K − Σ w_j R_j`.
fn residual(chain: &[LatticeClass], weights: &[i64]) -> LatticeClass {
    chain
        .iter()
        .zip(weights)
        .fold(-Dp2Lattice.canonical(), |acc, (r, &w)| acc - w * *r)
}

/// Searches for the (−1)-class pattern next to an A_n chain (`n ≥ 3`), trying
/// kinds A, B, C in that order.
///
/// Kind A uses that the two classes add up to `−K − R₁ − 2(R₂+…+R_{n−1}) − R_n`,
/// so the first (−1)-class with the right pairings (lexicographically) fixes
/// the second. `extra_roots` must be roots orthogonal to the chain; kind C
/// looks for its isolated root among them. A witness must pair non-negatively
/// with every extra root, since an irreducible (−1)-curve meets every other
/// curve non-negatively; this discards sums like `E + R₄`.
pub fn special_curve_search(
    chain: &[LatticeClass],
    extra_roots: &[LatticeClass],
) -> Result<SpecialCurvePattern> {
    let n = chain.len();
    if n < 3 {
        return Err(DynkinError::InvalidInput(format!(
            "need a chain of length ≥ 3, got {n}"
        )));
    }
    validate(chain, extra_roots)?;
    let lat = Dp2Lattice;
    let meets_extras_properly = |e: &LatticeClass| extra_roots.iter().all(|x| e.dot(x) >= 0);

    let mut weights = vec![2i64; n];
    weights[0] = 1;
    weights[n - 1] = 1;
    let delta = residual(chain, &weights);
    for e1 in lat.minus_one_classes() {
        if !pairs_like(e1, chain, 2) || !meets_extras_properly(e1) {
            continue;
        }
        let e2 = delta - *e1;
        if e2 != *e1
            && lat.is_minus_one(&e2)
            && pairs_like(&e2, chain, n - 1)
            && e1.dot(&e2) == 0
            && meets_extras_properly(&e2)
        {
            return Ok(SpecialCurvePattern {
                kind: PatternKind::A,
                witnesses: vec![*e1, e2],
                isolated_root: None,
            });
        }
    }

    if n == 5 {
        if let Some(e) = residual(chain, &[1, 2, 3, 2, 1]).halve() {
            if lat.is_minus_one(&e) && pairs_like(&e, chain, 3) && meets_extras_properly(&e) {
                return Ok(SpecialCurvePattern {
                    kind: PatternKind::B,
                    witnesses: vec![e],
                    isolated_root: None,
                });
            }
        }
    }

    if n == 3 {
        let mut candidates = extra_roots.to_vec();
        candidates.sort();
        for r4 in &candidates {
            let isolated = extra_roots.iter().all(|x| x == r4 || x.dot(r4) == 0);
            if !isolated {
                continue;
            }
            let Some(e) = (residual(chain, &[1, 2, 1]) - *r4).halve() else {
                continue;
            };
            if lat.is_minus_one(&e)
                && pairs_like(&e, chain, 2)
                && e.dot(r4) == 1
                && meets_extras_properly(&e)
            {
                return Ok(SpecialCurvePattern {
                    kind: PatternKind::C,
                    witnesses: vec![e],
                    isolated_root: Some(*r4),
                });
            }
        }
    }
    Err(DynkinError::NotRealizable)
}

/// Decides `'` versus `''` for the four ambiguous degree-2 types from a lattice
/// embedding of the chain and of the remaining A₁ roots.
///
/// A₅ types: `'` iff some (−1)-class meets `R₃` once and is orthogonal to the
/// other chain roots. A₃ types: `'` iff some (−1)-class meets `R₂` once, is
/// orthogonal to `R₁`, `R₃`, and meets one of `extra_roots`. Any other type is
/// returned unchanged.
pub fn refine_prime_type(
    dynkin: &DynkinType,
    chain: &[LatticeClass],
    extra_roots: &[LatticeClass],
) -> Result<DynkinType> {
    if !dynkin.is_ambiguous_degree2() {
        return Ok(dynkin.clone());
    }
    let n = dynkin
        .largest_a()
        .expect("ambiguous types contain an A_n summand") as usize;
    if chain.len() != n {
        return Err(DynkinError::InvalidInput(format!(
            "type {dynkin} needs an A{n} chain, got length {}",
            chain.len()
        )));
    }
    validate(chain, extra_roots)?;
    let lat = Dp2Lattice;
    let central = n / 2 + 1;
    let found = lat.minus_one_classes().iter().any(|e| {
        pairs_like(e, chain, central) && (n == 5 || extra_roots.iter().any(|x| e.dot(x) > 0))
    });
    dynkin.with_prime(if found { Prime::Single } else { Prime::Double })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn simple(i: usize) -> LatticeClass {
        LatticeClass::e(i) - LatticeClass::e(i + 1)
    }

    #[test]
    fn a3_chain_gives_kind_a() {
        let chain: Vec<_> = (1..=3).map(simple).collect();
        let p = special_curve_search(&chain, &[]).unwrap();
        assert_eq!(p.kind, PatternKind::A);
        assert_eq!(
            p.witnesses[0],
            LatticeClass::new(1, [-1, -1, 0, 0, 0, 0, 0])
        );
        assert_eq!(
            p.witnesses[1],
            LatticeClass::new(2, [-1, -1, 0, 0, -1, -1, -1])
        );
    }

    #[test]
    fn short_or_broken_chains_are_rejected() {
        let chain: Vec<_> = (1..=2).map(simple).collect();
        assert!(special_curve_search(&chain, &[]).is_err());
        let broken = vec![simple(1), simple(3), simple(4)];
        assert!(special_curve_search(&broken, &[]).is_err());
        let chain: Vec<_> = (1..=3).map(simple).collect();
        assert!(special_curve_search(&chain, &[simple(4)]).is_err());
    }

    #[test]
    fn non_ambiguous_types_pass_through() {
        let d5: DynkinType = "D5".parse().unwrap();
        assert_eq!(refine_prime_type(&d5, &[], &[]).unwrap(), d5);
    }
}
