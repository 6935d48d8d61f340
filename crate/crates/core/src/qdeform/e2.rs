//! Mode realization of the planar Euclidean algebra and its deformed ladder
//! operators.
//!
//! Translations act as symmetric nearest-neighbour shifts scaled by `Y`, the
//! rotation generator is diagonal with purely imaginary entries. The sign of
//! that diagonal is not a convention here: exactly one choice satisfies the
//! realized brackets, and the builder detects it and records the slope of the
//! associated integer weight `h(m)`. The deformed ladder operators replace
//! the squared rotation by its q-bracket square,
//!
//! ```text
//! Ltilde_3i = (1/([2]_sqrt-q * Y)) [ ([h/2]_sqrt-q)^2 , P_i ] + P_i
//! ```
//!
//! which keeps bandwidth one because a diagonal commuted with a shift stays
//! a shift.

use num_traits::Signed;

use crate::exact::{GaussianRational, QBase, Rational, Weight};

use super::banded::{modes_within, BandedOperator, ModeBasis};
use super::{QDomain, QScalar, QdeformError};

/// The realized planar Euclidean algebra on a mode window.
#[derive(Debug, Clone)]
pub struct E2Realization<S> {
    pub basis: ModeBasis,
    pub y_val: Rational,
    pub p1: BandedOperator<S>,
    pub p2: BandedOperator<S>,
    pub l12: BandedOperator<S>,
    /// Detected slope of the diagonal weight: `h(m) = h_slope * m`.
    pub h_slope: i64,
}

impl<S: QScalar> E2Realization<S> {
    /// Integer eigenvalue of the weight operator at mode `m`.
    pub fn weight(&self, m: i64) -> i64 {
        self.h_slope * m
    }

    /// `Y` as a scalar of the entry domain.
    pub fn y_scalar(&self) -> S {
        S::from_exact(&GaussianRational::from_rational(self.y_val.clone()))
    }
}

/// Builds the shift realization and fixes the rotation diagonal by testing
/// both candidate signs against the brackets `[L_12, P_1] = -P_2` and
/// `[L_12, P_2] = P_1`.
pub fn build_e2_realization<S: QScalar>(
    basis: ModeBasis,
    y_val: &Rational,
) -> Result<E2Realization<S>, QdeformError> {
    if !y_val.is_positive() {
        return Err(QdeformError::NonpositiveY {
            got: y_val.to_string(),
        });
    }
    let half_y = GaussianRational::new(y_val / Rational::from_integer(2.into()), Rational::from_integer(0.into()));
    let i_half_y = GaussianRational::new(Rational::from_integer(0.into()), half_y.re.clone());

    let up = |c: &GaussianRational| {
        let v = S::from_exact(c);
        BandedOperator::shift(basis, 1, |_| v.clone())
    };
    let down = |c: &GaussianRational| {
        let v = S::from_exact(c);
        BandedOperator::shift(basis, -1, |_| v.clone())
    };
    let p1 = up(&half_y).add(&down(&half_y));
    let p2 = up(&(-&i_half_y)).add(&down(&i_half_y));

    for sign in [1i64, -1] {
        let l12 = BandedOperator::diagonal(basis, |m| {
            S::from_exact(&GaussianRational::new(
                Rational::from_integer(0.into()),
                Rational::from_integer((sign * m).into()),
            ))
        });
        let rot1 = l12.commutator(&p1);
        let rot2 = l12.commutator(&p2);
        let r = rot1.valid_radius().min(rot2.valid_radius());
        if rot1.equal_on(&p2.neg(), modes_within(r)) && rot2.equal_on(&p1, modes_within(r)) {
            return Ok(E2Realization {
                basis,
                y_val: y_val.clone(),
                p1,
                p2,
                l12,
                // The weight operator is 2i times the rotation diagonal.
                h_slope: -2 * sign,
            });
        }
    }
    Err(QdeformError::RotationSignUndetermined)
}

/// The deformed ladder operators.
#[derive(Debug, Clone)]
pub struct TildePair<S> {
    pub l31: BandedOperator<S>,
    pub l32: BandedOperator<S>,
}

/// Diagonal of q-bracket squares of the half-weight, the deformed stand-in
/// for the squared rotation generator.
fn bracket_square_diagonal<D: QDomain>(
    dom: &D,
    e2: &E2Realization<D::Scalar>,
) -> Result<BandedOperator<D::Scalar>, QdeformError> {
    let mut diag = BandedOperator::zero(e2.basis);
    for m in e2.basis.modes() {
        let b = dom.q_bracket(Weight::from_integer(e2.weight(m) / 2), QBase::SqrtQ)?;
        diag.set_entry(m, 0, b.mul_ref(&b));
    }
    Ok(diag)
}

pub fn build_tilde_generators<D: QDomain>(
    dom: &D,
    e2: &E2Realization<D::Scalar>,
) -> Result<TildePair<D::Scalar>, QdeformError> {
    let squares = bracket_square_diagonal(dom, e2)?;
    let two_s = dom.q_bracket(Weight::from_integer(2), QBase::SqrtQ)?;
    let denom = two_s.mul_ref(&e2.y_scalar());
    let prefactor = D::Scalar::one()
        .div_ref(&denom)
        .ok_or_else(|| QdeformError::ZeroDivisor {
            what: "the ladder prefactor [2]_sqrt-q * Y".into(),
        })?;
    let build = |p: &BandedOperator<D::Scalar>| squares.commutator(p).scale(&prefactor).add(p);
    Ok(TildePair {
        l31: build(&e2.p1),
        l32: build(&e2.p2),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{q_number, RationalFunction};
    use super::super::{FormalT, NumericT};

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn formal_e2(m: i64, y: Rational) -> E2Realization<RationalFunction> {
        build_e2_realization(ModeBasis::new(m).unwrap(), &y).unwrap()
    }

    #[test]
    fn rotation_sign_is_detected_not_assumed() {
        let e2 = formal_e2(6, rat(1, 1));
        assert_eq!(e2.h_slope, -2);
        // the brackets hold on the full commutator validity range
        let c = e2.l12.commutator(&e2.p1);
        assert!(c.equal_on(&e2.p2.neg(), modes_within(c.valid_radius())));
        let c = e2.l12.commutator(&e2.p2);
        assert!(c.equal_on(&e2.p1, modes_within(c.valid_radius())));
    }

    #[test]
    fn translations_commute() {
        let e2 = formal_e2(6, rat(2, 3));
        let c = e2.p1.commutator(&e2.p2);
        assert!(c.equal_on(&BandedOperator::zero(e2.basis), modes_within(c.valid_radius())));
    }

    #[test]
    fn translation_square_sum_is_y_squared() {
        for y in [rat(1, 1), rat(2, 3)] {
            let e2 = formal_e2(6, y.clone());
            let sq = e2
                .p1
                .compose(&e2.p1)
                .add(&e2.p2.compose(&e2.p2));
            let scalar = RationalFunction::constant(GaussianRational::from_rational(&y * &y));
            assert!(sq.is_scalar_on(&scalar, modes_within(sq.valid_radius())));
        }
    }

    #[test]
    fn nonpositive_y_is_rejected() {
        let bad = build_e2_realization::<RationalFunction>(ModeBasis::new(5).unwrap(), &rat(-1, 2));
        assert!(matches!(bad, Err(QdeformError::NonpositiveY { .. })));
        let zero = build_e2_realization::<RationalFunction>(ModeBasis::new(5).unwrap(), &rat(0, 1));
        assert!(matches!(zero, Err(QdeformError::NonpositiveY { .. })));
    }

    #[test]
    fn ladder_operators_have_bandwidth_one() {
        let e2 = formal_e2(6, rat(1, 1));
        let tilde = build_tilde_generators(&FormalT, &e2).unwrap();
        assert_eq!(tilde.l31.bandwidth(), 1);
        assert_eq!(tilde.l32.bandwidth(), 1);
    }

    #[test]
    fn ladder_entries_are_bracket_square_differences() {
        // entry of Ltilde_31 at (m, +1) is ([m+1]^2 - [m]^2)/(2 [2]) + Y/2
        // in the sqrt-q base, independent of the detected weight slope.
        let y = rat(3, 2);
        let e2 = formal_e2(6, y.clone());
        let tilde = build_tilde_generators(&FormalT, &e2).unwrap();
        let sq = |k: i64| {
            let b = q_number(Weight::from_integer(k), QBase::SqrtQ).unwrap();
            RationalFunction::from_laurent(&b * &b)
        };
        let two = RationalFunction::from_laurent(q_number(Weight::from_integer(2), QBase::SqrtQ).unwrap());
        let half_y = RationalFunction::constant(GaussianRational::from_rational(&y / &rat(2, 1)));
        for m in [-3i64, 0, 2] {
            let diff = &sq(m + 1) - &sq(m);
            let expect = &diff
                .try_div(&(&two + &two))
                .unwrap()
                + &half_y;
            assert_eq!(tilde.l31.entry(m, 1), Some(&expect));
        }
    }

    #[test]
    fn classical_point_reduces_to_the_plain_formula() {
        let y = rat(1, 1);
        let dom = NumericT::new(rat(1, 1)).unwrap();
        let e2 = build_e2_realization::<GaussianRational>(ModeBasis::new(6).unwrap(), &y).unwrap();
        let tilde = build_tilde_generators(&dom, &e2).unwrap();
        // (1/(2Y)) [diag((h/2)^2), P_i] + P_i with plain integer entries
        let squares = BandedOperator::diagonal(e2.basis, |m| {
            GaussianRational::from_int((e2.weight(m) / 2).pow(2))
        });
        let pref = GaussianRational::from_ratio(1, 2)
            .try_div(&GaussianRational::from_rational(y.clone()))
            .unwrap();
        for (deformed, p) in [(&tilde.l31, &e2.p1), (&tilde.l32, &e2.p2)] {
            let classical = squares.commutator(p).scale(&pref).add(p);
            let r = deformed.valid_radius().min(classical.valid_radius());
            assert!(deformed.equal_on(&classical, modes_within(r)));
        }
    }

    #[test]
    fn ladder_construction_matches_under_evaluation() {
        // formal entries evaluated at t = 3/2 equal the numeric-domain build
        let y = rat(2, 1);
        let t = rat(3, 2);
        let formal = build_tilde_generators(&FormalT, &formal_e2(5, y.clone())).unwrap();
        let dom = NumericT::new(t.clone()).unwrap();
        let e2n = build_e2_realization::<GaussianRational>(ModeBasis::new(5).unwrap(), &y).unwrap();
        let numeric = build_tilde_generators(&dom, &e2n).unwrap();
        let t0 = GaussianRational::from_rational(t);
        for (m, s, v) in formal.l31.entries() {
            assert_eq!(&v.evaluate(&t0).unwrap(), numeric.l31.entry(m, s).unwrap());
        }
    }
}
