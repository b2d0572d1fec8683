use std::fmt;
use std::str::FromStr;

use crate::error::{DynkinError, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Family {
    A,
    D,
    E,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Summand {
    pub family: Family,
    pub rank: u32,
}

impl Summand {
    pub fn new(family: Family, rank: u32) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
        };
        if ok {
            Ok(Summand { family, rank })
        } else {
            Err(DynkinError::InvalidInput(format!(
                "no root system {family:?}{rank}"
            )))
        }
    }

    pub fn a(rank: u32) -> Self {
        Summand::new(Family::A, rank).expect("A_n needs n ≥ 1")
    }

    // E before D before A, larger rank first
    fn sort_key(&self) -> (u8, std::cmp::Reverse<u32>) {
        let f = match self.family {
            Family::E => 0,
            Family::D => 1,
            Family::A => 2,
        };
        (f, std::cmp::Reverse(self.rank))
    }
}

/// Marker distinguishing the two degree-2 surfaces that share an ambiguous type.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub enum Prime {
    #[default]
    None,
    /// `'`: some (−1)-curve meets the central component of the chain.
    Single,
    /// `''`: no such curve.
    Double,
}

/// A Dynkin type: a multiset of A/D/E summands, with an optional prime marker.
///
/// Summands are kept in canonical order, so `==` compares multisets.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct DynkinType {
    summands: Vec<Summand>,
    prime: Prime,
}

impl DynkinType {
    pub fn new(mut summands: Vec<Summand>, prime: Prime) -> Result<Self> {
        summands.sort_by_key(Summand::sort_key);
        let t = DynkinType {
            summands,
            prime: Prime::None,
        };
        if prime != Prime::None && !t.is_ambiguous_degree2() {
            return Err(DynkinError::InvalidInput(format!(
                "a prime marker only applies to A5, A5+A1, A3+A1 and A3+2A1, not {t}"
            )));
        }
        Ok(DynkinType { prime, ..t })
    }

    /// The smooth case: no summands.
    pub fn empty() -> Self {
        DynkinType::default()
    }

    pub fn summands(&self) -> &[Summand] {
        &self.summands
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn with_prime(&self, prime: Prime) -> Result<Self> {
        DynkinType::new(self.summands.clone(), prime)
    }

    pub fn rank(&self) -> u32 {
        self.summands.iter().map(|s| s.rank).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn count(&self, family: Family, rank: u32) -> usize {
        self.summands
            .iter()
            .filter(|s| s.family == family && s.rank == rank)
            .count()
    }

    pub fn largest_a(&self) -> Option<u32> {
        self.summands
            .iter()
            .filter(|s| s.family == Family::A)
            .map(|s| s.rank)
            .max()
    }

    pub fn has_family(&self, family: Family) -> bool {
        self.summands.iter().any(|s| s.family == family)
    }

    /// The types whose degree-2 surfaces come in a primed and a double-primed version.
    pub fn is_ambiguous_degree2(&self) -> bool {
        let a = |r| self.count(Family::A, r);
        let only_a = self.summands.iter().all(|s| s.family == Family::A);
        let n = self.summands.len();
        only_a
            && ((a(5) == 1 && a(1) == n - 1 && n <= 2)
                || (a(3) == 1 && a(1) == n - 1 && (2..=3).contains(&n)))
    }

    /// Same summands, prime marker dropped.
    pub fn unprimed(&self) -> Self {
        DynkinType {
            summands: self.summands.clone(),
            prime: Prime::None,
        }
    }

    fn summands_string(&self) -> String {
        if self.summands.is_empty() {
            return "smooth".into();
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.summands.len() {
            let s = self.summands[i];
            let mut j = i;
            while j < self.summands.len() && self.summands[j] == s {
                j += 1;
            }
            let mult = j - i;
            let name = format!("{:?}{}", s.family, s.rank);
            parts.push(if mult == 1 {
                name
            } else {
                format!("{mult}{name}")
            });
            i = j;
        }
        parts.join("+")
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.prime {
            Prime::None => f.write_str(&self.summands_string()),
            Prime::Single => write!(f, "({})'", self.summands_string()),
            Prime::Double => write!(f, "({})''", self.summands_string()),
        }
    }
}

impl FromStr for DynkinType {
    type Err = DynkinError;

    /// Accepts `D4`, `A3+2A1`, `(A5)'`, `A3+2A1''`, and `smooth` or the empty
    /// string for no singularities.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || DynkinError::Parse(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let body = compact.trim_end_matches('\'');
        let prime = match compact.len() - body.len() {
            0 => Prime::None,
            1 => Prime::Single,
            2 => Prime::Double,
            _ => return Err(bad()),
        };
        let body = match body.strip_prefix('(') {
            Some(inner) => inner.strip_suffix(')').ok_or_else(bad)?,
            None if body.ends_with(')') => return Err(bad()),
            None => body,
        };
        if body.is_empty() || body.eq_ignore_ascii_case("smooth") {
            return DynkinType::new(Vec::new(), prime);
        }
        let mut summands = Vec::new();
        for term in body.split('+') {
            let pos = term
                .find(|c: char| c.is_ascii_alphabetic())
                .ok_or_else(bad)?;
            let (mult, rest) = term.split_at(pos);
            let mult: usize = if mult.is_empty() {
                1
            } else {
                mult.parse().map_err(|_| bad())?
            };
            let mut chars = rest.chars();
            let family = match chars.next() {
                Some('A') => Family::A,
                Some('D') => Family::D,
                Some('E') => Family::E,
                _ => return Err(bad()),
            };
            let rank: u32 = chars.as_str().parse().map_err(|_| bad())?;
            if mult == 0 {
                return Err(bad());
            }
            let summand = Summand::new(family, rank)?;
            summands.extend(std::iter::repeat(summand).take(mult));
        }
        DynkinType::new(summands, prime)
    }
}

fn validate_degree(degree: u32, dynkin: &DynkinType) -> Result<()> {
    if !(1..=9).contains(&degree) {
        return Err(DynkinError::InvalidInput(format!(
            "degree must be in 1..=9, got {degree}"
        )));
    }
    if dynkin.rank() > 9 - degree {
        return Err(DynkinError::InvalidInput(format!(
            "type {dynkin} has rank {} > {} allowed in degree {degree}",
            dynkin.rank(),
            9 - degree
        )));
    }
    if dynkin.prime() != Prime::None && degree != 2 {
        return Err(DynkinError::InvalidInput(
            "prime markers only exist in degree 2".into(),
        ));
    }
    // root sublattices of the right rank that no Du Val del Pezzo surface realizes
    let unrealized: &[&str] = match degree {
        2 => &["7A1"],
        1 => &["7A1", "8A1", "D4+4A1"],
        _ => &[],
    };
    for t in unrealized {
        if dynkin.unprimed() == t.parse::<DynkinType>()? {
            return Err(DynkinError::InvalidInput(format!(
                "no del Pezzo surface of degree {degree} has type {t}"
            )));
        }
    }
    Ok(())
}

/// Whether a Du Val del Pezzo surface of the given degree and type carries a
/// `−K`-polar cylinder.
///
/// Degree ≥ 4: always. Degree 3: iff singular. Degree 2: iff some singular
/// point is not of type A₁. Degree 1: iff some singular point is not of type
/// A₁, A₂, A₃ or D₄.
///
/// Validity is checked by rank and a short list of unrealizable types; this is
/// not the full classification.
pub fn has_anticanonical_cylinder(degree: u32, dynkin: &DynkinType) -> Result<bool> {
    validate_degree(degree, dynkin)?;
    let s = dynkin.summands();
    Ok(match degree {
        4..=9 => true,
        3 => !s.is_empty(),
        2 => s.iter().any(|x| *x != Summand::a(1)),
        _ => s
            .iter()
            .any(|x| !matches!((x.family, x.rank), (Family::A, 1..=3) | (Family::D, 4))),
    })
}
