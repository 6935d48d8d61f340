//! Inversion of the ladder construction and the round-trip checks.
//!
//! The reconstruction dresses the ladder operators with diagonal q-number
//! prefactors and divides by a diagonal determinant-like factor `D`:
//!
//! ```text
//! P1 = D^-1 ( {1 - [h]_q / (2Y [h]_sqrt-q)} Ltilde_31
//!             + (i [2]_sqrt-q / 2Y) [h/2]_q Ltilde_32 )
//! P2 = same with Ltilde_32 and -Ltilde_31
//! D  = -(1/4Y^2) ( [h]_sqrt-q^2 - ([h]_q/[h]_sqrt-q - 2Y)^2 )
//! ```
//!
//! Diagonal factors act after the ladder operators, so they are evaluated at
//! the target mode. At weight zero the ratio `[h]_q/[h]_sqrt-q` degenerates;
//! such modes are dropped from the diagonals and every source whose ladder
//! image touches them is excluded from the equality assertions and reported.
//! On all remaining interior modes the reconstructed operators must equal
//! the original translations entry for entry, in the formal domain and at
//! every sampled numeric deformation value.

use num_traits::One;

use crate::exact::{GaussianRational, QBase, Rational, Weight};
use crate::report::VerificationReport;

use super::banded::{modes_within, BandedOperator, ModeBasis};
use super::e2::{build_e2_realization, build_tilde_generators, E2Realization, TildePair};
use super::{FormalT, NumericT, QDomain, QScalar, QdeformError};

/// Reconstructed translations plus the degeneracy bookkeeping.
#[derive(Debug, Clone)]
pub struct Reconstruction<S> {
    pub p1_hat: BandedOperator<S>,
    pub p2_hat: BandedOperator<S>,
    /// Window modes where a diagonal denominator vanishes.
    pub degenerate_targets: Vec<i64>,
    /// Source modes whose reconstructed action touches a degenerate target.
    pub excluded_sources: Vec<i64>,
}

impl<S: QScalar> Reconstruction<S> {
    /// Modes on which the round-trip equality is asserted.
    pub fn assertable_modes(&self, original: &E2Realization<S>) -> Vec<i64> {
        let r = self
            .p1_hat
            .valid_radius()
            .min(self.p2_hat.valid_radius())
            .min(original.p1.valid_radius())
            .min(original.p2.valid_radius());
        modes_within(r)
            .filter(|m| !self.excluded_sources.contains(m))
            .collect()
    }
}

pub fn reconstruct_translations<D: QDomain>(
    dom: &D,
    e2: &E2Realization<D::Scalar>,
    tilde: &TildePair<D::Scalar>,
) -> Result<Reconstruction<D::Scalar>, QdeformError> {
    let one = D::Scalar::one();
    let y = e2.y_scalar();
    let two_y = y.add_ref(&y);
    let inv_2y = one
        .div_ref(&two_y)
        .ok_or_else(|| QdeformError::ZeroDivisor {
            what: "the prefactor 2Y".into(),
        })?;
    let inv_4ysq = inv_2y.mul_ref(&inv_2y);
    let two_s = dom.q_bracket(Weight::from_integer(2), QBase::SqrtQ)?;
    let shear_coeff = D::Scalar::from_exact(&GaussianRational::i())
        .mul_ref(&two_s)
        .mul_ref(&inv_2y);

    let mut degenerate = Vec::new();
    let mut shape = BandedOperator::zero(e2.basis);
    let mut shear = BandedOperator::zero(e2.basis);
    let mut dinv = BandedOperator::zero(e2.basis);
    for n in e2.basis.modes() {
        let h = e2.weight(n);
        let hsq = dom.q_bracket(Weight::from_integer(h), QBase::SqrtQ)?;
        let hq = dom.q_bracket(Weight::from_integer(h), QBase::Q)?;
        let Some(ratio) = hq.div_ref(&hsq) else {
            degenerate.push(n);
            continue;
        };
        let d_val = {
            let off = ratio.sub_ref(&two_y);
            let inner = hsq.mul_ref(&hsq).sub_ref(&off.mul_ref(&off));
            inner.mul_ref(&inv_4ysq).neg_ref()
        };
        let Some(d_inv) = one.div_ref(&d_val) else {
            degenerate.push(n);
            continue;
        };
        shape.set_entry(n, 0, one.sub_ref(&ratio.mul_ref(&inv_2y)));
        let half = dom.q_bracket(Weight::new(h, 2), QBase::Q)?;
        shear.set_entry(n, 0, shear_coeff.mul_ref(&half));
        dinv.set_entry(n, 0, d_inv);
    }

    let shifts: std::collections::BTreeSet<i64> = tilde
        .l31
        .entries()
        .chain(tilde.l32.entries())
        .map(|(_, s, _)| s)
        .collect();
    let excluded_sources: Vec<i64> = e2
        .basis
        .modes()
        .filter(|m| shifts.iter().any(|s| degenerate.contains(&(m + s))))
        .collect();

    let p1_hat = dinv.compose(
        &shape
            .compose(&tilde.l31)
            .add(&shear.compose(&tilde.l32)),
    );
    let p2_hat = dinv.compose(
        &shape
            .compose(&tilde.l32)
            .sub(&shear.compose(&tilde.l31)),
    );

    let recon = Reconstruction {
        p1_hat,
        p2_hat,
        degenerate_targets: degenerate,
        excluded_sources,
    };
    if recon.assertable_modes(e2).is_empty() {
        return Err(QdeformError::DegenerateWindow);
    }
    Ok(recon)
}

/// Records the round-trip equality checks and the degeneracy report line.
pub fn verify_round_trip<S: QScalar>(
    e2: &E2Realization<S>,
    recon: &Reconstruction<S>,
    label: &str,
    report: &mut VerificationReport,
) {
    let modes = recon.assertable_modes(e2);
    report.record_bool(
        format!("degenerate-modes[{label}]"),
        true,
        format!(
            "targets {:?} excluded sources {:?}, asserting on {} modes",
            recon.degenerate_targets,
            recon.excluded_sources,
            modes.len()
        ),
    );
    for (name, rebuilt, original) in [
        ("round-trip-p1", &recon.p1_hat, &e2.p1),
        ("round-trip-p2", &recon.p2_hat, &e2.p2),
    ] {
        let bad = rebuilt.mismatches(original, modes.iter().copied());
        report.record_bool(
            format!("{name}[{label}]"),
            bad == 0,
            if bad == 0 {
                format!("exact entrywise match on {} modes", modes.len())
            } else {
                format!("{bad} mismatched entries")
            },
        );
    }
}

fn widen(skip: &[i64], by: i64) -> Vec<i64> {
    let mut out: Vec<i64> = Vec::new();
    for m in skip {
        for d in -by..=by {
            if !out.contains(&(m + d)) {
                out.push(m + d);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Checks the defining brackets of the planar Euclidean algebra for a
/// translation pair against the rotation diagonal. `skip` lists source modes
/// with untrusted rows (reconstruction exclusions); the commuting check
/// widens it by one because translations are applied twice.
pub fn verify_e2_relations<S: QScalar>(
    l12: &BandedOperator<S>,
    p1: &BandedOperator<S>,
    p2: &BandedOperator<S>,
    skip: &[i64],
    tag: &str,
    report: &mut VerificationReport,
) {
    let deep_skip = widen(skip, p1.bandwidth().max(p2.bandwidth()));
    let comm = p1.commutator(p2);
    let modes: Vec<i64> = modes_within(comm.valid_radius())
        .filter(|m| !deep_skip.contains(m))
        .collect();
    let bad = comm.mismatches(&BandedOperator::zero(comm.basis()), modes.iter().copied());
    report.record_bool(
        format!("translations-commute-{tag}"),
        bad == 0,
        format!("{} modes checked, {} mismatches", modes.len(), bad),
    );
    for (name, p, expect) in [
        ("rotation-bracket-p1", p1, p2.neg()),
        ("rotation-bracket-p2", p2, p1.clone()),
    ] {
        let c = l12.commutator(p);
        let modes: Vec<i64> = modes_within(c.valid_radius().min(expect.valid_radius()))
            .filter(|m| !skip.contains(m))
            .collect();
        let bad = c.mismatches(&expect, modes.iter().copied());
        report.record_bool(
            format!("{name}-{tag}"),
            bad == 0,
            format!("{} modes checked, {} mismatches", modes.len(), bad),
        );
    }
}

/// The shipped quadratic Casimir candidate for the deformed algebra: the
/// ladder squares plus a diagonal of averaged half-integer q-bracket squares,
///
/// ```text
/// Ltilde_31^2 + Ltilde_32^2 + diag( ([m+1/2]_q^2 + [m-1/2]_q^2)/2 - 1/4 )
/// ```
///
/// The ladder squares alone are diagonal with entries `Y^2` minus the same
/// average, so the candidate collapses to the scalar `Y^2 - 1/4` on the
/// interior; that collapse is what `verify_ysq_relation` asserts.
pub fn casimir_candidate<D: QDomain>(
    dom: &D,
    e2: &E2Realization<D::Scalar>,
    tilde: &TildePair<D::Scalar>,
) -> Result<BandedOperator<D::Scalar>, QdeformError> {
    let half = GaussianRational::from_ratio(1, 2);
    let quarter = GaussianRational::from_ratio(1, 4);
    let mut diag = BandedOperator::zero(e2.basis);
    for m in e2.basis.modes() {
        let d_up = dom.q_bracket(Weight::new(2 * m + 1, 2), QBase::Q)?;
        let d_down = dom.q_bracket(Weight::new(2 * m - 1, 2), QBase::Q)?;
        let avg = d_up
            .mul_ref(&d_up)
            .add_ref(&d_down.mul_ref(&d_down))
            .mul_ref(&D::Scalar::from_exact(&half));
        diag.set_entry(m, 0, avg.sub_ref(&D::Scalar::from_exact(&quarter)));
    }
    Ok(tilde
        .l31
        .compose(&tilde.l31)
        .add(&tilde.l32.compose(&tilde.l32))
        .add(&diag))
}

/// Asserts that a Casimir candidate acts as the scalar `Y^2 - 1/4`.
pub fn verify_ysq_relation<S: QScalar>(
    e2: &E2Realization<S>,
    candidate: &BandedOperator<S>,
    label: &str,
    report: &mut VerificationReport,
) {
    let expected = {
        let ysq = &e2.y_val * &e2.y_val;
        let quarter = Rational::new(1.into(), 4.into());
        S::from_exact(&GaussianRational::new(&ysq - &quarter, Rational::from_integer(0.into())))
    };
    let modes: Vec<i64> = modes_within(candidate.valid_radius()).collect();
    let ok = candidate.is_scalar_on(&expected, modes.iter().copied());
    report.record_bool(
        format!("casimir-scalar[{label}]"),
        ok,
        if ok {
            format!("acts as Y^2 - 1/4 on {} modes", modes.len())
        } else {
            "does not act as the scalar Y^2 - 1/4".into()
        },
    );
}

/// Compares the full pipeline at the classical point `t = 1` against
/// operators built directly from the undeformed formulas.
pub fn verify_classical_limit(
    half_width: i64,
    y_val: &Rational,
    report: &mut VerificationReport,
) -> Result<(), QdeformError> {
    let dom = NumericT::new(Rational::one())?;
    let basis = ModeBasis::new(half_width)?;
    let e2 = build_e2_realization::<GaussianRational>(basis, y_val)?;
    let tilde = build_tilde_generators(&dom, &e2)?;

    // (1/(2Y)) [diag((h/2)^2), P_i] + P_i with plain rational entries
    let squares = BandedOperator::diagonal(basis, |m| {
        GaussianRational::from_int((e2.weight(m) / 2).pow(2))
    });
    let pref = GaussianRational::from_ratio(1, 2)
        .try_div(&GaussianRational::from_rational(y_val.clone()))
        .map_err(|_| QdeformError::ZeroDivisor {
            what: "the classical prefactor 2Y".into(),
        })?;
    for (name, deformed, p) in [
        ("classical-limit-ladder-p1", &tilde.l31, &e2.p1),
        ("classical-limit-ladder-p2", &tilde.l32, &e2.p2),
    ] {
        let classical = squares.commutator(p).scale(&pref).add(p);
        let r = deformed.valid_radius().min(classical.valid_radius());
        let bad = deformed.mismatches(&classical, modes_within(r));
        report.record_bool(
            name,
            bad == 0,
            format!("{} mismatches against the undeformed formula", bad),
        );
    }

    // at t = 1 the candidate diagonal reduces to (h/2)^2, so the candidate
    // must agree with the classical quadratic form of the ladder operators
    let candidate = casimir_candidate(&dom, &e2, &tilde)?;
    let classical_casimir = tilde
        .l31
        .compose(&tilde.l31)
        .add(&tilde.l32.compose(&tilde.l32))
        .add(&squares);
    let r = candidate
        .valid_radius()
        .min(classical_casimir.valid_radius());
    let bad = candidate.mismatches(&classical_casimir, modes_within(r));
    report.record_bool(
        "classical-limit-casimir",
        bad == 0,
        format!("{} mismatches against the undeformed quadratic form", bad),
    );
    Ok(())
}

/// One deformation-parameter choice for a suite run.
#[derive(Debug, Clone, PartialEq)]
pub enum TMode {
    Formal,
    Numeric(Rational),
}

impl TMode {
    pub fn label(&self) -> String {
        match self {
            TMode::Formal => "formal".into(),
            TMode::Numeric(t) => format!("t={t}"),
        }
    }
}

fn run_mode<D: QDomain>(
    dom: &D,
    half_width: i64,
    y_val: &Rational,
    report: &mut VerificationReport,
) -> Result<(), QdeformError> {
    let label = dom.label();
    let basis = ModeBasis::new(half_width)?;
    let e2 = build_e2_realization::<D::Scalar>(basis, y_val)?;
    verify_e2_relations(
        &e2.l12,
        &e2.p1,
        &e2.p2,
        &[],
        &format!("original[{label}]"),
        report,
    );
    let tilde = build_tilde_generators(dom, &e2)?;
    let recon = reconstruct_translations(dom, &e2, &tilde)?;
    verify_round_trip(&e2, &recon, &label, report);
    verify_e2_relations(
        &e2.l12,
        &recon.p1_hat,
        &recon.p2_hat,
        &recon.excluded_sources,
        &format!("reconstructed[{label}]"),
        report,
    );
    let candidate = casimir_candidate(dom, &e2, &tilde)?;
    verify_ysq_relation(&e2, &candidate, &label, report);
    Ok(())
}

/// Runs the full round-trip suite for every requested deformation parameter.
/// A numeric value of 1 additionally triggers the classical-limit
/// comparisons.
pub fn run_suite(
    half_width: i64,
    y_val: &Rational,
    modes: &[TMode],
    report: &mut VerificationReport,
) -> Result<(), QdeformError> {
    report.set_param("window", half_width);
    report.set_param("y", y_val);
    report.set_param(
        "t-values",
        modes
            .iter()
            .map(TMode::label)
            .collect::<Vec<_>>()
            .join(","),
    );
    for mode in modes {
        match mode {
            TMode::Formal => run_mode(&FormalT, half_width, y_val, report)?,
            TMode::Numeric(t) => {
                let dom = NumericT::new(t.clone())?;
                run_mode(&dom, half_width, y_val, report)?;
                if t.is_one() {
                    verify_classical_limit(half_width, y_val, report)?;
                }
            }
        }
    }
    Ok(())
}
