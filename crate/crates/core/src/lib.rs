//! Exact intersection theory on finite configurations of smooth rational curves.
//!
//! The linear algebra and the pairing are generic over any field-like scalar
//! (see [`Scalar`]); the rest of the workspace works with [`Rational`], an
//! arbitrary-precision reduced fraction, so every result is exact.

pub mod chain;
pub mod config;
pub mod divisor;
pub mod error;
pub mod linalg;
pub mod scalar;

pub use chain::{
    a_chain_config, an_weighted_self_intersection, bl_divisor, solve_prescribed_pairing, BlDivisor,
};
pub use config::{ConfigBuilder, Curve, CurveConfig};
pub use divisor::{pair, riemann_roch_lower_bound, ExtendedDivisor};
pub use error::{CoreError, Result};
pub use linalg::{is_negative_definite, leading_principal_minors, solve_linear};
pub use scalar::{format_rational, int, parse_rational, rat, Rational, Scalar};

/// Divisor with exact rational coefficients, the form used by every other crate.
pub type Divisor = ExtendedDivisor<Rational>;
