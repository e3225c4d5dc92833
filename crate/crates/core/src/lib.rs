//! Divisor sums and Dirichlet series weighted by ω(n), the number of
//! distinct prime factors.
//!
//! * [`sieve`], [`functions`], [`characters`]: factorization and the
//!   multiplicative function catalog, evaluated exactly.
//! * [`symfunc`]: elementary symmetric polynomials and the identities on
//!   their generating function.
//! * [`divisor`]: exact divisor-sum identities, brute force against closed form.
//! * [`series`]: Dirichlet series, truncated sums against closed forms in
//!   ζ, prime zeta and L-functions.

pub mod characters;
pub mod divisor;
pub mod error;
pub mod exact;
pub mod functions;
pub mod reduce;
pub mod series;
pub mod sieve;
pub mod symfunc;

pub use characters::{build_characters, CharacterTable};
pub use error::{Error, Result};
pub use exact::ExactValue;
pub use functions::{Catalog, Exponent, FnSpec, PrimePowerRule};
pub use sieve::{FactoredInteger, SpfSieve};
