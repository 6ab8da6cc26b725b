//! Zeros of slice-regular polynomials and power series over the quaternions
//! and octonions.
//!
//! The crate is organised bottom-up:
//!
//! * [`octonion`]: the algebra itself, conjugacy classes `(t, n)`;
//! * [`poly`]: star product, conjugate and normal polynomials, evaluation;
//! * [`series`]: truncated series and division by `w - alpha`;
//! * [`roots`]: complex roots of real polynomials grouped into classes;
//! * [`zeros`]: remainders, zero classification, multiplicities,
//!   factorization;
//! * [`camshaft`]: zeros of a product predicted from the factors;
//! * [`text`]: the expression grammar and output formatting;
//! * [`cli`]: the `hyperzero` command line.

pub mod camshaft;
pub mod cli;
pub mod error;
pub mod octonion;
pub mod poly;
pub mod random;
pub mod roots;
pub mod series;
pub mod text;
pub mod tolerance;
pub mod zeros;

pub use error::{Error, Result};
pub use octonion::{class_of, ConjugacyClass, Octonion};
pub use poly::{OctPoly, RealPoly, Side};
pub use series::TruncatedSeries;
pub use tolerance::Tolerances;
pub use zeros::{Remainder, ZeroKind, ZeroRecord};
