use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, Signed};

use crate::error::{CoreError, Result};

/// Field-like scalar accepted by the generic pairing and linear algebra.
///
/// Blanket-implemented for every type with the listed `num-traits` bounds, so
/// `BigRational`, `Ratio<i64>` and the primitive floats all qualify.
pub trait Scalar: Clone + Debug + PartialEq + PartialOrd + Num + Signed + FromPrimitive {
    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("every scalar represents small integers")
    }

    fn half() -> Self {
        Self::one() / (Self::one() + Self::one())
    }
}

impl<T> Scalar for T where T: Clone + Debug + PartialEq + PartialOrd + Num + Signed + FromPrimitive {}

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n/d` reduced. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"` or `"p"` (surrounding whitespace ignored).
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || CoreError::InvalidInput(format!("not a rational number: `{s}`"));
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den == BigInt::from(0) {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// `"p/q"`, or `"p"` when the value is an integer.
pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}
