//! Exact umbral calculus over arbitrary-precision rationals.
//!
//! Everything in this crate is computed in `Q`: dense polynomials in `x`,
//! truncated formal power series in `t`, the umbral pairing `<f(t) | p(x)>`,
//! Sheffer/Appell sequence machinery, and the closed constructors for the
//! classical families built on top of it (higher-order Bernoulli,
//! poly-Bernoulli, Hermite of order `nu`, Frobenius-Euler, and the mixed
//! Hermite x poly-Bernoulli family `HB_n^{(nu,k)}`).
//!
//! The [`identity`] module turns the structural laws and the known closed-form
//! identities relating these families into executable checks: each identity is
//! evaluated as an exact equality of polynomials, with the two sides built by
//! independent code paths. There are no tolerances anywhere; a check passes
//! only when the difference is the zero polynomial.
//!
//! Module layout:
//!
//! - [`rational`], [`poly`], [`series`], [`combinatorics`] -- the exact
//!   arithmetic substrate.
//! - [`umbral`] -- the pairing, series-as-operator action, Sheffer sequences,
//!   and connection-coefficient matrices.
//! - [`families`] -- generating-function constructors for the named families.
//! - [`identity`] -- the identity suite and grid verifier.

pub mod combinatorics;
pub mod error;
pub mod families;
pub mod identity;
pub mod poly;
pub mod rational;
pub mod series;
pub mod umbral;

pub use error::{Error, Result};
pub use families::{FamilyId, FamilyParams};
pub use identity::{IdentityId, IdentityReport};
pub use poly::Polynomial;
pub use rational::Rational;
pub use series::TruncatedSeries;
pub use umbral::{ConnectionMatrix, LinearFunctional, ShefferPair};
