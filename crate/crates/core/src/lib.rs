//! Exact double q-shuffle algebra for modified q-multiple zeta values.
//!
//! The crate is organised bottom up:
//!
//! * [`coeffs`]: arbitrary-precision rationals and Laurent polynomials in `h`.
//! * [`series`]: truncated power series in `q`.
//! * [`jackson`]: the bivariate algebra `t Q[[t, q]]` with `E_q`, `P_q`, `D_q`
//!   and the Jackson integral.
//! * [`words`]: compositions, letter words, linear combinations.
//! * [`products`]: shuffle, quasi-shuffle, q-shuffle, q-quasi-shuffle and
//!   their graded versions.
//! * [`evaluator`]: series and numeric evaluation of words.
//! * [`identities`]: verifiers returning structured [`CheckReport`]s.
//!
//! Containers are generic over the coefficient ring ([`scalar::Ring`]); the
//! aliases below fix the exact instantiations used throughout.

pub mod coeffs;
pub mod error;
pub mod evaluator;
pub mod identities;
pub mod jackson;
pub mod scalar;
pub mod series;
pub mod products;
pub mod words;

pub use error::{Error, Result};
pub use identities::CheckReport;

/// Exact arbitrary-precision rational number.
pub type Rational = num_rational::BigRational;
/// Truncated power series in `q` with rational coefficients.
pub type QSeries = series::Series<Rational>;
/// Bivariate truncated series in `(t, q)` with rational coefficients.
pub type TQSeries = jackson::BiSeries<Rational>;
