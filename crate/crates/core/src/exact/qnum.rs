//! q-numbers [x]_q and [x]_sqrt-q as exact Laurent data in t.

use num_rational::Ratio;

use super::{ExactError, LaurentPoly, RationalFunction};

/// Weight argument of a q-number; integer or half-integer values are the
/// meaningful range for this engine.
pub type Weight = Ratio<i64>;

/// Base of the q-bracket.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QBase {
    /// [x]_q = (q^(x/2) - q^(-x/2)) / (q^(1/2) - q^(-1/2)), q = t^4.
    Q,
    /// [x]_sqrt-q, same bracket built from sqrt(q) = t^2.
    SqrtQ,
}

impl QBase {
    fn name(self) -> &'static str {
        match self {
            QBase::Q => "q",
            QBase::SqrtQ => "sqrt-q",
        }
    }

    /// (numerator t-exponent as a weight multiple, denominator t-exponent):
    /// [x]_q = (t^(2x) - t^(-2x)) / (t^2 - t^-2), [x]_sqrt-q uses t^x and t^1.
    fn exponents(self, x: Weight) -> Option<(i64, i64)> {
        match self {
            QBase::Q => {
                let e = x * 2;
                e.is_integer().then(|| (e.to_integer(), 2))
            }
            QBase::SqrtQ => x.is_integer().then(|| (x.to_integer(), 1)),
        }
    }
}

fn bracket_parts(x: Weight, base: QBase) -> Result<(LaurentPoly, LaurentPoly), ExactError> {
    let (e, d) = base.exponents(x).ok_or_else(|| ExactError::NonIntegralExponent {
        weight: x.to_string(),
        base: base.name(),
    })?;
    let num = &LaurentPoly::t_pow(e) - &LaurentPoly::t_pow(-e);
    let den = &LaurentPoly::t_pow(d) - &LaurentPoly::t_pow(-d);
    Ok((num, den))
}

/// The q-number [x]_base as a Laurent polynomial. Defined whenever the
/// t-exponents are integral and the division is exact; integer weights
/// always qualify for both bases. [0] = 0 and [-x] = -[x].
pub fn q_number(x: Weight, base: QBase) -> Result<LaurentPoly, ExactError> {
    let (num, den) = bracket_parts(x, base)?;
    if num.is_zero() {
        return Ok(LaurentPoly::zero());
    }
    num.div_exact(&den).ok_or_else(|| ExactError::NonExactDivision {
        weight: x.to_string(),
        base: base.name(),
    })
}

/// The q-number [x]_base in the fraction field; defined for every weight
/// whose t-exponents are integral (covers half-integer weights with base q).
pub fn q_number_ratfn(x: Weight, base: QBase) -> Result<RationalFunction, ExactError> {
    let (num, den) = bracket_parts(x, base)?;
    RationalFunction::new(num, den)
}
