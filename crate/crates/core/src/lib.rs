//! Finite Coxeter groups as permutations of their roots, with inversion
//! sets, reflection length, inverting involutions and excess.
//!
//! Types A, B and D additionally have a signed-permutation model
//! ([`signed`]) used for cycle notation and for structured enumeration of
//! inverting involutions.

// Matrix and table code indexes several arrays in step.
#![allow(clippy::needless_range_loop)]

pub mod bitset;
pub mod descriptor;
pub mod error;
pub mod excess;
pub mod roots;
pub mod scalar;
pub mod signed;
pub mod verify;

use num_rational::Rational64;

pub use bitset::InversionSet;
pub use descriptor::{CoxeterDescriptor, Family};
pub use error::{CoxeterError, Result};
pub use roots::{FixedBasis, GroupElement, ParabolicContext, RootSystem, SignedRoot};
pub use scalar::Scalar;
pub use signed::{Ambient, CycleDecomposition, PermutationModel, SignedCycle, SignedPermutation};

/// Exact realization used for crystallographic types.
pub type ExactEmbedding = roots::Embedding<Rational64>;
/// Floating-point realization used for `I2(m)`, `H3` and `H4`.
pub type RealEmbedding = roots::Embedding<f64>;
/// Single-precision realization, for callers that want compact tables.
pub type SingleEmbedding = roots::Embedding<f32>;
