//! Exact scalar arithmetic: Gaussian rationals, Laurent polynomials in the
//! deformation root t = q^(1/4), rational functions of t, and q-numbers.
//!
//! Every coefficient in the engine lives in Q(i) or in the fraction field
//! Q(i)(t); nothing is ever rounded. The q-number convention is
//!
//! ```text
//! [m]_q      = (q^(m/2) - q^(-m/2)) / (q^(1/2) - q^(-1/2))
//! [m]_sqrt-q = same with q replaced by sqrt(q)
//! ```
//!
//! mapped onto integer powers of t through q^(x/2) = t^(2x) and
//! (sqrt q)^(x/2) = t^x.

mod gaussian;
mod laurent;
mod qnum;
mod ratfn;

pub use gaussian::{rational_sqrt, GaussianRational, Rational};
pub use laurent::LaurentPoly;
pub use qnum::{q_number, q_number_ratfn, QBase, Weight};
pub use ratfn::RationalFunction;

use thiserror::Error;

/// Errors raised by the exact-arithmetic layer.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ExactError {
    #[error("division by zero in {op}")]
    DivisionByZero { op: &'static str },
    #[error("evaluation at t = {at} hits a pole of the denominator")]
    Pole { at: String },
    #[error("q-number weight {weight} with base {base} needs non-integer t-exponents")]
    NonIntegralExponent { weight: String, base: &'static str },
    #[error("q-number weight {weight} with base {base} does not divide exactly in the Laurent ring")]
    NonExactDivision { weight: String, base: &'static str },
    #[error("evaluation of t^{exp} at t = 0 is undefined")]
    ZeroToNegativePower { exp: i64 },
}
