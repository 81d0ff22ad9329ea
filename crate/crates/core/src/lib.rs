//! Exact combinatorics of Newton stratifications for unramified reductive
//! groups with a minuscule cocharacter.
//!
//! The crate is layered:
//!
//! * [`root_datum`]: based root data with Frobenius, Weyl groups, dominance.
//! * [`kottwitz`]: the finite poset `B(G, μ)`, break points, projections.
//! * [`strata`]: dimension, codimension and defect tables.
//! * [`central_leaf`]: the root sets `R_μ`, `R_ν`, `R_C` and the root-group
//!   equation system.
//! * [`format`]: JSON, DOT and TSV output.
//! * [`witt`]: truncated Witt vectors over finite fields and slopes of
//!   σ-linear maps.
//!
//! Everything rational is exact. The combinatorial core is generic over
//! [`scalar::Scalar`]; the aliases below fix the arbitrary-precision choice.

pub mod central_leaf;
pub mod format;
pub mod kottwitz;
pub mod linalg;
pub mod root_datum;
pub mod scalar;
pub mod strata;
pub mod witt;

pub use num_rational::BigRational;

/// Default exact scalar.
pub type Rational = BigRational;
pub type Coweight = root_datum::RationalCoweight<Rational>;
pub type Weight = root_datum::RationalWeight<Rational>;
pub type SigmaConjClass = kottwitz::SigmaConjClass<Rational>;
pub type NewtonPoset = kottwitz::NewtonPoset<Rational>;
pub type StrataReport = strata::StrataReport<Rational>;
pub type LeafDatum = central_leaf::LeafDatum<Rational>;

pub use root_datum::{build_classical, GroupKind, GroupSpec, RootDatum, RootDatumError, WeylElement};
