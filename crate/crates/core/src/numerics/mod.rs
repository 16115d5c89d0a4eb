//! Arbitrary-precision substrate: precision policy, dense polynomials and
//! double-exponential quadrature.

mod polynomial;
mod precision;
mod quadrature;

pub use polynomial::Polynomial;
pub use precision::{
    format_significant, BigReal, PrecisionContext, DEFAULT_GUARD_DIGITS, DEFAULT_TARGET_DIGITS,
    MIN_GUARD_DIGITS,
};
pub use quadrature::{de_quadrature, DoubleExponential};
