//! ℙ¹-fibrations on the minimal resolution of a rational surface whose
//! section(s) are contracted: fibration data, the resulting curve
//! configuration, singular fiber classification, pushforward rewriting to a
//! free basis of `Cl(S)_ℚ`, pullbacks, and templates for degree-2 Du Val types.
//!
//! Curve labels: `D0` and `Dinf` are the sections, `F` a general fiber, `F0` the
//! fiber through `D0 ∩ Dinf` when the sections meet, `Gamma` the extra
//! (−1)-curve of the D₅ shape. In singular fiber `i` the (−2)-components are
//! `D{i}_{λ}` and the (−1)-components are `E{i}` and `E{i}p`.

pub mod classify;
pub mod data;
pub mod error;
pub mod model;
pub mod rewrite;
pub mod template;

pub use classify::{classify_fiber_graph, FiberGraph};
pub use data::{validate_fibration, Condition, FibrationData};
pub use error::{FibrationError, Result};
pub use model::{build_curve_config, dynkin_type_of, pullback, Fiber, FiberKind, SurfaceModel};
pub use rewrite::{pushforward_rewrite, CaseTag, RewriteRules};
pub use template::{
    fiber_class_check, local_configurations, template_case, template_from_dynkin,
    LocalConfiguration,
};
