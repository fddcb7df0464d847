//! Combinatorial verification of Ky Fan type bounds for triangulated sphere
//! bundles with free involutions.
//!
//! * [`z2`]: truncated mod-2 polynomial rings, Stiefel-Whitney classes and the
//!   reduction of powers of `t`.
//! * [`simplicial`]: complexes, involutions, nice colorings and the alternating number.
//! * [`flag`]: the generic flag `e_0 ⊃ e_1 ⊃ ...` and face/plane intersection.
//! * [`zcells`]: zero-set cell complexes `Z_i` and the effective-simplex counts.
//! * [`generators`]: fixture total spaces.
//! * [`format`]: the labeled-complex text format.
//!
//! Linear algebra is generic over [`Scalar`]; the aliases below fix the exact
//! rational field used for every decision.

pub mod error;
pub mod flag;
pub mod format;
pub mod generators;
pub mod linalg;
pub mod scalar;
pub mod simplicial;
pub mod z2;
pub mod zcells;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// Exact rational scalar used for every combinatorial decision.
pub type Rational = num_rational::BigRational;

pub type Flag = flag::GenericFlag<Rational>;
pub type ZCell = zcells::ZCell<Rational>;
pub type ZComplex = zcells::ZComplex<Rational>;
pub type Matrix = linalg::Matrix<Rational>;
