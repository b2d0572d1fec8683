//! H-polar cylinders on Du Val del Pezzo surfaces of degree 2 through a
//! ℙ¹-fibration on the minimal resolution.
//!
//! For an ample `H` written in the free basis of the surface's case,
//! [`construct`] checks every inequality ampleness implies, builds an effective
//! `D ∼_ℚ H` whose support, together with the contracted curves it meets, has
//! a cylinder as complement, and verifies the result with [`verify_certificate`].

mod cases;
pub mod certificate;
mod construct;
mod context;
pub mod error;
mod plan;
pub mod sampling;
pub mod verify;

pub use certificate::{AmpleInput, CylinderCertificate, CylinderKind, InequalityCheck, Linear};
pub use construct::{
    check_inequalities, construct, construct_a2, construct_a3a1_prime, construct_a5_prime,
    construct_an, construct_d5, construct_de, construct_with_epsilon,
};
pub use context::{anticanonical_input, de_dimension_bound, select_case, select_case_for_type};
pub use error::{CylinderError, Result};
pub use verify::{
    cylinder_pattern, removed_curves, verify_certificate, Check, CheckOutcome, VerifyReport,
};
