//! The degree-2 del Pezzo lattice `I_{1,7}` with `K = −3L + Σe_i`: enumeration of
//! (−1)-classes and roots, A_n chain embeddings, special (−1)-class patterns
//! next to a chain, primed type refinement, and Dynkin types.
//!
//! Every witness found here is a lattice class. Whether it is the class of an
//! irreducible curve on a given surface is not decided by the lattice alone.

pub mod chains;
pub mod error;
pub mod lattice;
pub mod special;
pub mod types;

pub use chains::{
    chain_embeddings, find_chain_embeddings, is_chain, sample_chain_embedding, ChainEmbeddings,
};
pub use error::{DynkinError, Result};
pub use lattice::{ClassKind, Dp2Lattice, LatticeClass};
pub use special::{refine_prime_type, special_curve_search, PatternKind, SpecialCurvePattern};
pub use types::{has_anticanonical_cylinder, DynkinType, Family, Prime, Summand};
