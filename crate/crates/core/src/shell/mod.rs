//! Numeric oracle on momentum shells.
//!
//! The spin-zero representation of the translation-extended rotation algebra
//! acts on functions of the spatial momenta: translations multiply by the
//! momentum coordinates (with the time component given by the shell root)
//! and rotations act as first-order orbital differential operators. This
//! module realizes that action in truncated jet arithmetic and replays the
//! engine's symbolic identities as operator identities on sampled test
//! functions, giving a check that shares no code path with the straightening
//! kernel.

mod dd;
mod jet;

pub use dd::{Dd, DdComplex};
pub use jet::{Jet, JetError, JetScalar};

use std::any::{Any, TypeId};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{AlgebraError, GeneratorId, NcPolynomial};
use crate::embedding::{condition32_element, DeformSign, EmbeddingContext, EmbeddingError};
use crate::exact::{rational_sqrt, GaussianRational, Rational};
use crate::presets::{build_poincare, PresetError, Signature};
use crate::report::{CheckStatus, VerificationReport};
use crate::ENGINE_VERSION;

/// Default truncation order for the jet oracle.
pub const DEFAULT_JET_ORDER: u32 = 8;

/// Relative tolerance of the double-double float mode.
pub const DD_TOLERANCE: f64 = 1e-20;

#[derive(Debug, thiserror::Error)]
pub enum ShellError {
    #[error(transparent)]
    Preset(#[from] PresetError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
    #[error(transparent)]
    Jet(#[from] JetError),
    #[error("jet order {available} is too low for this word, need at least {required}")]
    OrderTooLow { required: u32, available: u32 },
    #[error("no admissible shell base point found after {attempts} attempts")]
    NoBasePoint { attempts: u32 },
    #[error("neither orbital sign satisfies the rotation-translation bracket")]
    OrbitalSignUndetermined,
}

fn int(n: i64) -> BigInt {
    BigInt::from(n)
}

fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(int(n), int(d))
}

/// Spin-zero realization on one sampled point of a momentum shell.
///
/// The shell is `g^{kk} p_k p_k = s Y^2` with `s` the deformation sign; the
/// spatial momenta are coordinates and `p_0` is the positive root of the
/// shell constraint. Base points are sampled so that `p_0` is rational,
/// keeping the exact mode exact.
#[derive(Debug, Clone)]
pub struct ShellRealization {
    sig: Signature,
    sign: DeformSign,
    y_val: Rational,
    base: Vec<Rational>,
    p0_base: Rational,
    order: u32,
    orbital_sign: i64,
    spin_corruption: bool,
    p0_exact: OnceLock<Jet<GaussianRational>>,
    p0_dd: OnceLock<Jet<DdComplex>>,
}

impl ShellRealization {
    /// Samples an admissible base point with the seeded generator and
    /// derives the orbital sign convention.
    pub fn build(
        sig: Signature,
        sign: DeformSign,
        y_val: Rational,
        order: u32,
        rng: &mut ChaCha8Rng,
    ) -> Result<Self, ShellError> {
        assert!(y_val.is_positive(), "the shell scale must be positive");
        let (base, p0_base) = sample_base_point(sig, sign, &y_val, rng)?;
        let mut out = ShellRealization {
            sig,
            sign,
            y_val,
            base,
            p0_base,
            order,
            orbital_sign: 1,
            spin_corruption: false,
            p0_exact: OnceLock::new(),
            p0_dd: OnceLock::new(),
        };
        out.orbital_sign = out.derive_orbital_sign()?;
        Ok(out)
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn sign(&self) -> DeformSign {
        self.sign
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn y_val(&self) -> &Rational {
        &self.y_val
    }

    pub fn base_point(&self) -> &[Rational] {
        &self.base
    }

    /// Value of the time momentum at the base point, as fixed by the shell
    /// relation and the branch.
    pub fn p0_base(&self) -> &Rational {
        &self.p0_base
    }

    /// Number of jet variables: the spatial momenta.
    pub fn nvars(&self) -> usize {
        usize::from(self.sig.last())
    }

    /// A copy whose ell-action picks up a constant spin term, breaking the
    /// spin-zero condition but none of the brackets. Negative control.
    pub fn corrupted_with_spin(&self) -> Self {
        let mut out = self.clone();
        out.spin_corruption = true;
        out
    }

    fn base_scalar<S: JetScalar>(&self, i: usize) -> S {
        S::from_rational(&self.base[i])
    }

    /// Jet of the coordinate `p_k`, `k >= 1`.
    fn coordinate_jet<S: JetScalar>(&self, k: usize) -> Jet<S> {
        Jet::coordinate(self.nvars(), self.order, k - 1, self.base_scalar(k - 1))
    }

    fn compute_p0<S: JetScalar>(&self) -> Result<Jet<S>, ShellError> {
        let m = self.nvars();
        let s = self.sign.metric_entry();
        let mut sq = Jet::constant(
            m,
            self.order,
            S::from_rational(&(&self.y_val * &self.y_val * ratio(s, 1))),
        );
        for k in 1..=m {
            let pk = self.coordinate_jet::<S>(k);
            let w = S::from_rational(&ratio(-self.sig.metric(k as u8), 1));
            sq = sq.add(&pk.mul(&pk).scale(&w));
        }
        Ok(sq.sqrt()?)
    }

    /// Jet of the shell root `p_0`, cached per scalar mode since the root
    /// extraction dominates the cost of a single operator application.
    fn p0_jet<S: JetScalar>(&self) -> Result<Jet<S>, ShellError> {
        let cached: &dyn Any = if TypeId::of::<S>() == TypeId::of::<GaussianRational>() {
            if self.p0_exact.get().is_none() {
                let _ = self.p0_exact.set(self.compute_p0()?);
            }
            self.p0_exact.get().expect("just set")
        } else if TypeId::of::<S>() == TypeId::of::<DdComplex>() {
            if self.p0_dd.get().is_none() {
                let _ = self.p0_dd.set(self.compute_p0()?);
            }
            self.p0_dd.get().expect("just set")
        } else {
            return self.compute_p0();
        };
        Ok(cached
            .downcast_ref::<Jet<S>>()
            .expect("cache mode matches scalar type")
            .clone())
    }

    /// Applies one generator letter as an operator on a jet.
    fn apply_generator<S: JetScalar>(
        &self,
        g: GeneratorId,
        f: &Jet<S>,
    ) -> Result<Jet<S>, ShellError> {
        match g {
            GeneratorId::P(0) => Ok(self.p0_jet::<S>()?.mul(f)),
            GeneratorId::P(k) => Ok(self.coordinate_jet::<S>(usize::from(k)).mul(f)),
            GeneratorId::Y => Ok(f.scale(&S::from_rational(&self.y_val))),
            // Z is an inert bookkeeping symbol; it acts as the identity.
            GeneratorId::Z => Ok(f.clone()),
            GeneratorId::L(0, j) => {
                let gj = self.sig.metric(j);
                let d = f.differentiate(usize::from(j) - 1)?;
                let mut out = self
                    .p0_jet::<S>()?
                    .mul(&d)
                    .scale(&S::from_rational(&ratio(-gj * self.orbital_sign, 1)));
                if self.spin_corruption {
                    out = out.add(&f.scale(&S::from_rational(&ratio(1, 2))));
                }
                Ok(out)
            }
            GeneratorId::L(i, j) => {
                let gi = self.sig.metric(i);
                let gj = self.sig.metric(j);
                let di = f.differentiate(usize::from(i) - 1)?;
                let dj = f.differentiate(usize::from(j) - 1)?;
                let term_i = self
                    .coordinate_jet::<S>(usize::from(j))
                    .mul(&di)
                    .scale(&S::from_rational(&ratio(gi * self.orbital_sign, 1)));
                let term_j = self
                    .coordinate_jet::<S>(usize::from(i))
                    .mul(&dj)
                    .scale(&S::from_rational(&ratio(-gj * self.orbital_sign, 1)));
                let mut out = term_i.add(&term_j);
                if self.spin_corruption {
                    out = out.add(&f.scale(&S::from_rational(&ratio(1, 2))));
                }
                Ok(out)
            }
        }
    }

    /// Left action of a normal-ordered word on a test jet. The rightmost
    /// letter acts first; `Y` multiplies by the shell scale.
    pub fn apply_word<S: JetScalar>(
        &self,
        poly: &NcPolynomial,
        f: &Jet<S>,
    ) -> Result<Jet<S>, ShellError> {
        let depth = word_derivative_depth(poly);
        if depth > self.order {
            return Err(ShellError::OrderTooLow {
                required: depth,
                available: self.order,
            });
        }
        let mut out = Jet::<S>::zero(f.nvars(), f.order());
        for (m, c) in poly.terms() {
            let mut cur = f.clone();
            let letters: Vec<GeneratorId> = m.flat_word().collect();
            for g in letters.iter().rev() {
                cur = self.apply_generator(*g, &cur)?;
            }
            let mut scalar = c.clone();
            for _ in 0..m.y_exp() {
                scalar = &scalar * &GaussianRational::new(self.y_val.clone(), Rational::zero());
            }
            out = out.add(&cur.scale(&S::from_exact(&scalar)));
        }
        Ok(out)
    }

    /// Random polynomial test jet with small rational coefficients up to
    /// `degree`, embedded at the realization's truncation order.
    pub fn random_test_jet<S: JetScalar>(&self, degree: u32, rng: &mut ChaCha8Rng) -> Jet<S> {
        let m = self.nvars();
        let mut out = Jet::zero(m, self.order);
        let mut exps = vec![0u32; m];
        fill_random_jet(&mut out, &mut exps, 0, degree, rng);
        out
    }

    fn derive_orbital_sign(&mut self) -> Result<i64, ShellError> {
        let pres = build_poincare(self.sig);
        let mut probe: Jet<GaussianRational> =
            Jet::constant(self.nvars(), self.order, GaussianRational::one());
        for k in 1..=self.nvars() {
            probe = probe.mul(&self.coordinate_jet(k));
        }
        'sign: for cand in [1i64, -1] {
            self.orbital_sign = cand;
            for i in self.sig.indices() {
                for j in (i + 1)..self.sig.n() {
                    let lij = NcPolynomial::from_gen(GeneratorId::l(i, j));
                    for k in self.sig.indices() {
                        let pk = NcPolynomial::from_gen(GeneratorId::p(k));
                        let bracket = pres.try_commutator(&lij, &pk)?;
                        let lhs = {
                            let a = self.apply_word(&pk, &probe)?;
                            let a = self.apply_word(&lij, &a)?;
                            let b = self.apply_word(&lij, &probe)?;
                            let b = self.apply_word(&pk, &b)?;
                            a.sub(&b)
                        };
                        let rhs = self.apply_word(&bracket, &probe)?;
                        if !lhs.sub(&rhs).is_negligible(0.0) {
                            continue 'sign;
                        }
                    }
                }
            }
            return Ok(cand);
        }
        Err(ShellError::OrbitalSignUndetermined)
    }
}

fn fill_random_jet<S: JetScalar>(
    out: &mut Jet<S>,
    exps: &mut Vec<u32>,
    var: usize,
    left: u32,
    rng: &mut ChaCha8Rng,
) {
    if var == exps.len() {
        let num = rng.gen_range(-9i64..=9);
        let den = rng.gen_range(1i64..=4);
        out.set_coeff(exps, S::from_rational(&ratio(num, den)));
        return;
    }
    for e in 0..=left {
        exps[var] = e;
        fill_random_jet(out, exps, var + 1, left - e, rng);
    }
    exps[var] = 0;
}

/// Number of trusted jet orders a word consumes: its rotation letters.
fn word_derivative_depth(poly: &NcPolynomial) -> u32 {
    poly.terms()
        .map(|(m, _)| {
            m.word()
                .iter()
                .filter(|(g, _)| matches!(g, GeneratorId::L(_, _)))
                .map(|(_, e)| e)
                .sum::<u32>()
        })
        .max()
        .unwrap_or(0)
}

/// Chord construction: rational points on the shell quadric through a known
/// rational anchor point, then rejection against the admissibility rules.
fn sample_base_point(
    sig: Signature,
    sign: DeformSign,
    y_val: &Rational,
    rng: &mut ChaCha8Rng,
) -> Result<(Vec<Rational>, Rational), ShellError> {
    let n = usize::from(sig.n());
    // anchor with rational coordinates on the quadric <x,x>_g = s Y^2
    let mut anchor = vec![Rational::zero(); n];
    match sign {
        DeformSign::Plus => anchor[0] = y_val.clone(),
        DeformSign::Minus => {
            // a spatial direction with negative metric entry always exists
            let slot = (1..n).find(|&k| sig.metric(k as u8) < 0).expect("q >= 1");
            anchor[slot] = y_val.clone();
        }
    }
    let metric: Vec<i64> = (0..n).map(|k| sig.metric(k as u8)).collect();
    let dot = |a: &[Rational], b: &[Rational]| -> Rational {
        let mut acc = Rational::zero();
        for k in 0..n {
            acc += &a[k] * &b[k] * ratio(metric[k], 1);
        }
        acc
    };
    const ATTEMPTS: u32 = 500;
    for _ in 0..ATTEMPTS {
        let dir: Vec<Rational> = (0..n).map(|_| ratio(rng.gen_range(-5i64..=5), 1)).collect();
        let dd = dot(&dir, &dir);
        if dd.is_zero() {
            continue;
        }
        let t = -ratio(2, 1) * dot(&anchor, &dir) / dd;
        let point: Vec<Rational> = (0..n).map(|k| &anchor[k] + &t * &dir[k]).collect();
        let p0 = point[0].abs();
        if p0.is_zero() {
            continue;
        }
        // tachyonic shells keep clear of the branch point
        if sign == DeformSign::Minus {
            let spatial_sq: Rational = (1..n).map(|k| &point[k] * &point[k]).sum();
            if spatial_sq < ratio(4, 1) * y_val * y_val {
                continue;
            }
        }
        debug_assert!(rational_sqrt(&(&p0 * &p0)).is_some());
        return Ok((point[1..].to_vec(), p0));
    }
    Err(ShellError::NoBasePoint { attempts: ATTEMPTS })
}

fn report_shell_params(report: &mut VerificationReport, r: &ShellRealization, mode: &str) {
    report.set_param("p", r.sig.p());
    report.set_param("q", r.sig.q());
    report.set_param("sign", r.sign.as_str());
    report.set_param("y", &r.y_val);
    report.set_param("jet-order", r.order);
    report.set_param("mode", mode);
    let base: Vec<String> = r.base.iter().map(|b| b.to_string()).collect();
    report.set_param("base-point", base.join(","));
}

fn record_residual<S: JetScalar>(
    report: &mut VerificationReport,
    name: String,
    residual: &Jet<S>,
    tol: f64,
) {
    let ok = residual.is_negligible(tol);
    report.record(
        name,
        if ok { CheckStatus::Pass } else { CheckStatus::Fail },
        format!(
            "max-residual={:.1e} trusted-order={}",
            residual.max_magnitude(),
            residual.trusted()
        ),
    );
}

fn scalar_tol<S: JetScalar>() -> f64 {
    if S::MODE == "exact" {
        0.0
    } else {
        DD_TOLERANCE
    }
}

/// Verifies the spin-zero condition tying the time translation to the
/// rotation quadratic form, applied to each test jet.
pub fn verify_condition32<S: JetScalar>(
    r: &ShellRealization,
    tests: &[Jet<S>],
) -> Result<VerificationReport, ShellError> {
    let element = condition32_element(r.sig)?;
    let mut report = VerificationReport::new("shell-condition32", ENGINE_VERSION);
    report_shell_params(&mut report, r, S::MODE);
    let tol = scalar_tol::<S>();
    for (idx, f) in tests.iter().enumerate() {
        let res = r.apply_word(&element, f)?;
        record_residual(&mut report, format!("condition32-t{idx}"), &res, tol);
    }
    Ok(report)
}

/// Verifies the reconstruction identity for the time translation in the
/// orbital realization: the diagonal operator against the coupled sum, both
/// provided by the embedding module in cleared form.
pub fn verify_lemma31_numeric<S: JetScalar>(
    r: &ShellRealization,
    d: &NcPolynomial,
    a0l_cleared: &NcPolynomial,
    tests: &[Jet<S>],
) -> Result<VerificationReport, ShellError> {
    let pres = build_poincare(r.sig);
    let p0 = NcPolynomial::from_gen(GeneratorId::p(0));
    let lhs_poly = pres
        .mul_guarded(d, &p0, pres.term_limit())?
        .bump_central(1, 0)
        .scale_int(2);
    let mut report = VerificationReport::new("shell-lemma31", ENGINE_VERSION);
    report_shell_params(&mut report, r, S::MODE);
    let tol = scalar_tol::<S>();
    for (idx, f) in tests.iter().enumerate() {
        let lhs = r.apply_word(&lhs_poly, f)?;
        let rhs = r.apply_word(a0l_cleared, f)?;
        record_residual(&mut report, format!("lemma31-t{idx}"), &lhs.sub(&rhs), tol);
    }
    Ok(report)
}

/// Replays the deformed-bracket closure checks as operator identities:
/// commutators of applied operators against the applied expected sides.
pub fn cross_check_closure<S: JetScalar>(
    r: &ShellRealization,
    ctx: &EmbeddingContext,
    tests: &[Jet<S>],
) -> Result<VerificationReport, ShellError> {
    let sig = ctx.signature();
    let g_nn = ctx.sign().metric_entry();
    let deformed: Vec<NcPolynomial> = sig.indices().map(|k| ctx.deformed(k)).collect();
    let mut report = VerificationReport::new("shell-closure", ENGINE_VERSION);
    report_shell_params(&mut report, r, S::MODE);
    report.set_param("ctx-sign", ctx.sign().as_str());
    let tol = scalar_tol::<S>();
    let y_sq = GaussianRational::new(&r.y_val * &r.y_val, Rational::zero());

    let commute = |a: &NcPolynomial, b: &NcPolynomial, f: &Jet<S>| -> Result<Jet<S>, ShellError> {
        let ab = r.apply_word(a, &r.apply_word(b, f)?)?;
        let ba = r.apply_word(b, &r.apply_word(a, f)?)?;
        Ok(ab.sub(&ba))
    };

    for (idx, f) in tests.iter().enumerate() {
        for i in sig.indices() {
            for j in (i + 1)..sig.n() {
                // [M_i, M_j] = 4 g_nn Y^2 L_ij
                let lhs = commute(&deformed[i as usize], &deformed[j as usize], f)?;
                let lij = NcPolynomial::from_gen(GeneratorId::l(i, j));
                let rhs = r
                    .apply_word(&lij, f)?
                    .scale(&S::from_exact(&(&GaussianRational::from_int(4 * g_nn) * &y_sq)));
                record_residual(
                    &mut report,
                    format!("closure-mm-{i}{j}-t{idx}"),
                    &lhs.sub(&rhs),
                    tol,
                );
            }
        }
        for i in sig.indices() {
            for j in (i + 1)..sig.n() {
                let lij = NcPolynomial::from_gen(GeneratorId::l(i, j));
                for k in sig.indices() {
                    // [L_ij, M_k] = -g_jk M_i + g_ik M_j
                    let lhs = commute(&lij, &deformed[k as usize], f)?;
                    let mut rhs = Jet::<S>::zero(f.nvars(), f.order());
                    if j == k {
                        rhs = rhs.add(
                            &r.apply_word(&deformed[i as usize], f)?
                                .scale(&S::from_rational(&ratio(-sig.metric(j), 1))),
                        );
                    }
                    if i == k {
                        rhs = rhs.add(
                            &r.apply_word(&deformed[j as usize], f)?
                                .scale(&S::from_rational(&ratio(sig.metric(i), 1))),
                        );
                    }
                    record_residual(
                        &mut report,
                        format!("closure-lm-{i}{j}-{k}-t{idx}"),
                        &lhs.sub(&rhs),
                        tol,
                    );
                }
            }
        }
    }
    Ok(report)
}

/// The fundamental cross-oracle property: the symbolic product of two
/// elements acts as the composition of their actions. Any element the
/// engine straightens to zero therefore annihilates every test jet.
pub fn verify_composition<S: JetScalar>(
    r: &ShellRealization,
    pairs: &[(NcPolynomial, NcPolynomial)],
    tests: &[Jet<S>],
) -> Result<VerificationReport, ShellError> {
    let pres = build_poincare(r.sig);
    let mut report = VerificationReport::new("shell-composition", ENGINE_VERSION);
    report_shell_params(&mut report, r, S::MODE);
    let tol = scalar_tol::<S>();
    for (pidx, (u, v)) in pairs.iter().enumerate() {
        let prod = pres.mul_guarded(u, v, pres.term_limit())?;
        for (idx, f) in tests.iter().enumerate() {
            let lhs = r.apply_word(&prod, f)?;
            let rhs = r.apply_word(u, &r.apply_word(v, f)?)?;
            record_residual(
                &mut report,
                format!("composition-p{pidx}-t{idx}"),
                &lhs.sub(&rhs),
                tol,
            );
        }
    }
    Ok(report)
}

/// Deterministic bundle of test jets for one realization.
pub fn sample_test_jets<S: JetScalar>(
    r: &ShellRealization,
    count: usize,
    degree: u32,
    rng: &mut ChaCha8Rng,
) -> Vec<Jet<S>> {
    (0..count).map(|_| r.random_test_jet(degree, rng)).collect()
}

/// Convenience seeded generator so callers agree on the stream type.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
