//! q-deformed round trip on a truncated Fourier-mode basis.
//!
//! The starting point is the Euclidean algebra in two dimensions realized by
//! banded operators on modes `e_m`, `m` in `[-M, M]`: translations act as
//! nearest-neighbour shifts, the rotation generator is diagonal. From these
//! the module builds q-deformed ladder operators, then inverts the
//! construction and reconstructs the translations through diagonal
//! q-number prefactors. The reconstruction is asserted to reproduce the
//! original shift operators entry by entry on interior modes, the deformed
//! quadratic Casimir candidate is checked against the scalar `Y^2 - 1/4`,
//! and at `t = 1` everything is compared against the classical formulas.
//!
//! All entries are exact: either rational functions of the formal
//! deformation root `t` (with `q = t^4`) or Gaussian rationals after
//! substituting a numeric `t`. Both paths run the same generic code; the
//! scalar domain is the only degree of freedom.
//!
//! Truncation never introduces error silently. Every operator carries a
//! validity radius, compositions shrink it by the bandwidth they consume,
//! and identities are asserted only on modes whose images stay inside the
//! window at every intermediate step. Weight-zero modes, where the diagonal
//! denominators of the inversion formulas vanish, are excluded from the
//! assertions and reported explicitly.

mod banded;
mod e2;
mod roundtrip;

pub use banded::{modes_within, BandedOperator, ModeBasis};
pub use e2::{build_e2_realization, build_tilde_generators, E2Realization, TildePair};
pub use roundtrip::{
    casimir_candidate, reconstruct_translations, run_suite, verify_classical_limit,
    verify_e2_relations, verify_round_trip, verify_ysq_relation, Reconstruction, TMode,
};

use std::fmt;

use thiserror::Error;

use crate::exact::{
    q_number_ratfn, ExactError, GaussianRational, QBase, Rational, RationalFunction, Weight,
};

/// Default window half-width for the round-trip suite.
pub const DEFAULT_HALF_WIDTH: i64 = 8;

/// Errors raised while building or inverting the mode realization.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum QdeformError {
    #[error("mode window half-width {got} is too small; need at least {required}")]
    WindowTooSmall { required: i64, got: i64 },
    #[error("the scale Y must be a positive rational, got {got}")]
    NonpositiveY { got: String },
    #[error("numeric deformation value t = 0 has no inverse powers")]
    ZeroT,
    #[error("neither sign of the diagonal rotation generator satisfies the realized brackets")]
    RotationSignUndetermined,
    #[error("zero divisor in {what}")]
    ZeroDivisor { what: String },
    #[error("every assertable mode of the window is degenerate for the reconstruction")]
    DegenerateWindow,
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Scalar entries of a banded operator: a commutative field with exact
/// equality. Implemented by [`RationalFunction`] for the formal deformation
/// root and by [`GaussianRational`] for numeric values of it.
pub trait QScalar: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_exact(v: &GaussianRational) -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    /// Field division; `None` when the divisor is zero.
    fn div_ref(&self, rhs: &Self) -> Option<Self>
    where
        Self: Sized;
}

impl QScalar for RationalFunction {
    fn zero() -> Self {
        RationalFunction::zero()
    }

    fn one() -> Self {
        RationalFunction::one()
    }

    fn from_exact(v: &GaussianRational) -> Self {
        RationalFunction::constant(v.clone())
    }

    fn is_zero(&self) -> bool {
        RationalFunction::is_zero(self)
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn neg_ref(&self) -> Self {
        -self
    }

    fn div_ref(&self, rhs: &Self) -> Option<Self> {
        self.try_div(rhs).ok()
    }
}

impl QScalar for GaussianRational {
    fn zero() -> Self {
        GaussianRational::zero()
    }

    fn one() -> Self {
        GaussianRational::one()
    }

    fn from_exact(v: &GaussianRational) -> Self {
        v.clone()
    }

    fn is_zero(&self) -> bool {
        GaussianRational::is_zero(self)
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn neg_ref(&self) -> Self {
        -self
    }

    fn div_ref(&self, rhs: &Self) -> Option<Self> {
        self.try_div(rhs).ok()
    }
}

/// A choice of deformation parameter: formal `t` or a fixed rational value.
/// All q-brackets are produced here so that both choices share one code path.
pub trait QDomain {
    type Scalar: QScalar;

    /// The bracket `[x]` in the requested base as a domain scalar. Weights may
    /// be half-integers when the base admits them.
    fn q_bracket(&self, x: Weight, base: QBase) -> Result<Self::Scalar, QdeformError>;

    /// Label used in report check names, e.g. `formal` or `t=3/2`.
    fn label(&self) -> String;
}

/// Formal deformation root; scalars are rational functions of `t`.
#[derive(Debug, Clone, Copy, Default)]
pub struct FormalT;

impl QDomain for FormalT {
    type Scalar = RationalFunction;

    fn q_bracket(&self, x: Weight, base: QBase) -> Result<Self::Scalar, QdeformError> {
        Ok(q_number_ratfn(x, base)?)
    }

    fn label(&self) -> String {
        "formal".into()
    }
}

/// Numeric deformation root `t`; scalars are Gaussian rationals. `t = 1` is
/// the classical point and is fully supported: brackets reduce before
/// evaluation, so the formally removable singularities never surface.
#[derive(Debug, Clone)]
pub struct NumericT {
    t: Rational,
}

impl NumericT {
    pub fn new(t: Rational) -> Result<Self, QdeformError> {
        use num_traits::Zero;
        if t.is_zero() {
            return Err(QdeformError::ZeroT);
        }
        Ok(NumericT { t })
    }

    pub fn value(&self) -> &Rational {
        &self.t
    }
}

impl QDomain for NumericT {
    type Scalar = GaussianRational;

    fn q_bracket(&self, x: Weight, base: QBase) -> Result<Self::Scalar, QdeformError> {
        let f = q_number_ratfn(x, base)?;
        Ok(f.evaluate(&GaussianRational::from_rational(self.t.clone()))?)
    }

    fn label(&self) -> String {
        format!("t={}", self.t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(n: i64, d: i64) -> Weight {
        Weight::new(n, d)
    }

    #[test]
    fn formal_and_numeric_brackets_agree_after_evaluation() {
        let formal = FormalT;
        let t = Rational::new(3.into(), 2.into());
        let numeric = NumericT::new(t.clone()).unwrap();
        let t0 = GaussianRational::from_rational(t);
        for num in [-5, -1, 0, 1, 2, 7] {
            for den in [1, 2] {
                for base in [QBase::Q, QBase::SqrtQ] {
                    if base == QBase::SqrtQ && den == 2 && num % 2 != 0 {
                        continue;
                    }
                    let f = formal.q_bracket(w(num, den), base).unwrap();
                    let n = numeric.q_bracket(w(num, den), base).unwrap();
                    assert_eq!(f.evaluate(&t0).unwrap(), n);
                }
            }
        }
    }

    #[test]
    fn classical_point_gives_the_weight_itself() {
        let one = NumericT::new(Rational::from_integer(1.into())).unwrap();
        let v = one.q_bracket(w(7, 2), QBase::Q).unwrap();
        assert_eq!(v, GaussianRational::from_ratio(7, 2));
        let v = one.q_bracket(w(-4, 1), QBase::SqrtQ).unwrap();
        assert_eq!(v, GaussianRational::from_int(-4));
    }

    #[test]
    fn zero_t_is_rejected() {
        use num_traits::Zero;
        assert_eq!(
            NumericT::new(Rational::zero()).unwrap_err(),
            QdeformError::ZeroT
        );
    }

    #[test]
    fn scalar_field_ops_round_trip() {
        let a = RationalFunction::from_laurent(crate::exact::LaurentPoly::t_pow(3));
        let b = <RationalFunction as QScalar>::one().add_ref(&a);
        let q = b.div_ref(&b).unwrap();
        assert_eq!(q, RationalFunction::one());
        assert!(b.div_ref(&RationalFunction::zero()).is_none());
        let g = GaussianRational::from_ratio(5, 3);
        assert!(g.div_ref(&GaussianRational::zero()).is_none());
        assert_eq!(g.div_ref(&g).unwrap(), GaussianRational::one());
    }
}
