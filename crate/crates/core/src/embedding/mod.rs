//! Deformation of the inhomogeneous algebras into rotation algebras one
//! size up, and the reverse reconstruction.
//!
//! The working ring is the inhomogeneous enveloping algebra extended by a
//! central square root `Y` of the signed momentum square. The deformed
//! column generators are kept in a cleared form `M_i`, free of `Y`
//! denominators: `M_i = i [Q2, P_i] + 2 Y P_i`, which is `2 Y` times the
//! actual column generator. All identities are checked after clearing by
//! the matching power of `2 Y`.

mod lemma;
mod linalg;
mod theorem;

pub use lemma::{lemma31_elements, lemma31_symbolic_residual, Lemma31Elements};
pub use linalg::solve_linear_combination;
pub use theorem::{
    convention_search, quartic_residual, quartic_spinless_factorization, theorem41_residuals,
    Convention, ConventionSearch, Sign,
};

use thiserror::Error;

use crate::algebra::{
    AlgebraError, AlgebraPresentation, GeneratorId, Monomial, NcPolynomial, SubstitutionMap,
};
use crate::exact::GaussianRational;
use crate::presets::{build_poincare, CasimirCatalog, CasimirName, PresetError, Signature};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum EmbeddingError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Preset(#[from] PresetError),
    #[error("operation requires signature (0,3), got {0}")]
    RequiresSo23(String),
    #[error("element has column degree {found}, above the clearing level {level}")]
    ClearingLevel { found: u32, level: u32 },
}

/// Which sign of the momentum square the central root captures. `Plus`
/// appends a +1 metric direction (rotation algebra with one more plus),
/// `Minus` appends a -1 direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DeformSign {
    Plus,
    Minus,
}

impl DeformSign {
    /// Metric entry of the appended direction.
    pub fn metric_entry(&self) -> i64 {
        match self {
            DeformSign::Plus => 1,
            DeformSign::Minus => -1,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            DeformSign::Plus => "plus",
            DeformSign::Minus => "minus",
        }
    }
}

impl std::fmt::Display for DeformSign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

fn rat(num: i64, den: i64) -> GaussianRational {
    GaussianRational::from_ratio(num, den)
}

/// The inhomogeneous algebra of a signature together with the central root
/// `Y` (with `Y^2` the signed momentum square) and the cleared deformed
/// generators.
#[derive(Debug, Clone)]
pub struct EmbeddingContext {
    sig: Signature,
    sign: DeformSign,
    pres: AlgebraPresentation,
    catalog: CasimirCatalog,
    /// `i [Q2, P_k]` for each index `k`; the branch-dependent `2 Y P_k`
    /// part is added on demand.
    commutator_parts: Vec<NcPolynomial>,
}

impl EmbeddingContext {
    pub fn new(sig: Signature, sign: DeformSign) -> Result<Self, EmbeddingError> {
        let mut pres = build_poincare(sig);
        let catalog = CasimirCatalog::build(sig)?;
        let psq = catalog
            .get(CasimirName::Psq)
            .expect("Psq exists at every signature")
            .clone();
        let square = psq.scale_int(sign.metric_entry());
        pres.adjoin_central_root(GeneratorId::Y, Some(square))?;

        let q2 = catalog.get(CasimirName::Q2).expect("Q2 always present");
        let mut commutator_parts = Vec::new();
        for k in sig.indices() {
            let pk = NcPolynomial::from_gen(GeneratorId::p(k));
            let comm = pres.try_commutator(q2, &pk)?;
            commutator_parts.push(comm.scale(&GaussianRational::i()));
        }
        Ok(EmbeddingContext {
            sig,
            sign,
            pres,
            catalog,
            commutator_parts,
        })
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn sign(&self) -> DeformSign {
        self.sign
    }

    pub fn presentation(&self) -> &AlgebraPresentation {
        &self.pres
    }

    /// Overrides the term-count guard of the underlying presentation.
    pub fn set_term_limit(&mut self, limit: usize) {
        self.pres.set_term_limit(limit);
    }

    pub fn catalog(&self) -> &CasimirCatalog {
        &self.catalog
    }

    pub fn psq(&self) -> &NcPolynomial {
        self.catalog
            .get(CasimirName::Psq)
            .expect("Psq always present")
    }

    /// `sign * P^2`, the polynomial that `Y^2` reduces to.
    pub fn signed_psq(&self) -> NcPolynomial {
        self.psq().scale_int(self.sign.metric_entry())
    }

    /// Cleared deformed generator on the default branch of the root:
    /// `M_k = i [Q2, P_k] + 2 Y P_k`.
    pub fn deformed(&self, k: u8) -> NcPolynomial {
        self.deformed_on_branch(k, 1)
    }

    /// Cleared deformed generator with an explicit branch sign for `Y`.
    pub fn deformed_on_branch(&self, k: u8, y_branch: i64) -> NcPolynomial {
        assert!(y_branch == 1 || y_branch == -1);
        let mut out = self.commutator_parts[k as usize].clone();
        out.add_term(
            Monomial::from_powers(&[(GeneratorId::p(k), 1)], 1, 0),
            &GaussianRational::from_int(2 * y_branch),
        );
        out
    }

    /// Substitution that maps an abstract rotation element one size up into
    /// this context, in cleared form: block generators go to `2 Y L_ij`,
    /// column generators `L_i n` to `-M_i`. A monomial of column degree c
    /// and block degree b lands at clearing level b + c.
    fn cleared_map(&self, y_branch: i64) -> SubstitutionMap {
        let n = self.sig.n();
        let mut map = SubstitutionMap::new();
        for i in 0..n {
            for j in (i + 1)..n {
                let block = NcPolynomial::monomial(
                    Monomial::from_powers(&[(GeneratorId::l(i, j), 1)], 1, 0),
                    GaussianRational::from_int(2 * y_branch),
                );
                map = map.map_gen(GeneratorId::l(i, j), block);
            }
            map = map.map_gen(GeneratorId::l(i, n), -&self.deformed_on_branch(i, y_branch));
        }
        map
    }

    /// Image of an abstract rotation element one size up, cleared uniformly
    /// to `(2 Y)^level`. The element may use block generators `L_ij`
    /// (i, j < n) and column generators `L_i n`; every letter contributes
    /// one clearing power, and monomials below full degree are padded.
    pub fn cleared_image(
        &self,
        element: &NcPolynomial,
        level: u32,
        y_branch: i64,
    ) -> Result<NcPolynomial, EmbeddingError> {
        let map = self.cleared_map(y_branch);
        let mut out = NcPolynomial::zero();
        for (mono, coeff) in element.terms() {
            let degree = mono.degree();
            if degree > level {
                return Err(EmbeddingError::ClearingLevel {
                    found: degree,
                    level,
                });
            }
            let single = NcPolynomial::monomial(mono.clone(), coeff.clone());
            let image = self.pres.substitute(&single, &map)?;
            let pad = level - degree;
            let mut padded = image.bump_central(pad, 0);
            if pad > 0 {
                let factor = 2i64.pow(pad) * y_branch.pow(pad);
                padded = padded.scale_int(factor);
            }
            out += &self.pres.reduce(&padded)?;
        }
        Ok(out)
    }
}

/// One verified identity: a stable name and the normal-ordered residual
/// that is expected to vanish.
#[derive(Debug, Clone)]
pub struct ResidualCheck {
    pub name: String,
    pub residual: NcPolynomial,
}

impl ResidualCheck {
    pub fn passed(&self) -> bool {
        self.residual.is_zero()
    }
}

/// Bracket relations of the deformed generators: among themselves they
/// reproduce the block rotations scaled by the cleared factor, and against
/// the block they transform like momenta.
pub fn closure_residuals(ctx: &EmbeddingContext) -> Result<Vec<ResidualCheck>, EmbeddingError> {
    let sig = ctx.signature();
    let pres = ctx.presentation();
    let g_nn = ctx.sign().metric_entry();
    let mut out = Vec::new();

    let deformed: Vec<NcPolynomial> = sig.indices().map(|k| ctx.deformed(k)).collect();

    // [M_i, M_j] = 4 Y^2 g_nn L_ij, written through the central root so the
    // adjoined square relation is what the check exercises.
    for i in sig.indices() {
        for j in (i + 1)..sig.n() {
            let comm = pres.try_commutator(&deformed[i as usize], &deformed[j as usize])?;
            let expected = pres.reduce(&NcPolynomial::monomial(
                Monomial::from_powers(&[(GeneratorId::l(i, j), 1)], 2, 0),
                GaussianRational::from_int(4 * g_nn),
            ))?;
            out.push(ResidualCheck {
                name: format!("closure-mm-{i}{j}"),
                residual: &comm - &expected,
            });
        }
    }

    // [L_ij, M_k] = -g_jk M_i + g_ik M_j
    for i in sig.indices() {
        for j in (i + 1)..sig.n() {
            let lij = NcPolynomial::from_gen(GeneratorId::l(i, j));
            for k in sig.indices() {
                let comm = pres.try_commutator(&lij, &deformed[k as usize])?;
                let mut expected = NcPolynomial::zero();
                if j == k {
                    expected += &deformed[i as usize].scale_int(-sig.metric(j));
                }
                if i == k {
                    expected += &deformed[j as usize].scale_int(sig.metric(i));
                }
                out.push(ResidualCheck {
                    name: format!("closure-lm-{i}{j}-{k}"),
                    residual: &comm - &expected,
                });
            }
        }
    }
    Ok(out)
}

/// Corrupting the square of the central root must break the closure
/// relations; returns the first nonvanishing residual name, if any.
pub fn closure_negative_control(
    sig: Signature,
    sign: DeformSign,
) -> Result<Option<String>, EmbeddingError> {
    let mut ctx = EmbeddingContext::new(sig, sign)?;
    // Rebuild the presentation with a corrupted square: signed P^2 plus one.
    let mut pres = build_poincare(sig);
    let mut square = ctx.signed_psq();
    square.add_term(Monomial::one(), &GaussianRational::one());
    pres.adjoin_central_root(GeneratorId::Y, Some(square))?;
    ctx.pres = pres;
    let checks = closure_residuals(&ctx)?;
    Ok(checks.iter().find(|c| !c.passed()).map(|c| c.name.clone()))
}

/// The quadratic invariant one size up, in cleared form:
/// `4 (sign P^2) Q2 - g_nn * sum_i g_ii M_i^2`.
pub fn cleared_c2(ctx: &EmbeddingContext) -> Result<NcPolynomial, EmbeddingError> {
    let pres = ctx.presentation();
    let sig = ctx.signature();
    let q2 = ctx
        .catalog()
        .get(CasimirName::Q2)
        .expect("Q2 always present");
    let mut out = pres.mul_guarded(&ctx.signed_psq(), q2, pres.term_limit())?;
    out = out.scale_int(4);
    for i in sig.indices() {
        let m = ctx.deformed(i);
        let sq = pres.mul_guarded(&m, &m, pres.term_limit())?;
        out += &sq.scale_int(-ctx.sign().metric_entry() * sig.metric(i));
    }
    pres.reduce(&out).map_err(EmbeddingError::from)
}

/// Residual of the cleared quadratic invariant against its spinless scalar
/// value `-(Y^2 + ((p+q)/2)^2)`: zero exactly when the invariant is a
/// scalar, otherwise the spin content.
pub fn c2_spin_residual(ctx: &EmbeddingContext) -> Result<NcPolynomial, EmbeddingError> {
    let pres = ctx.presentation();
    let c2c = cleared_c2(ctx)?;
    let signed_psq = ctx.signed_psq();
    let m = i64::from(ctx.signature().last());
    // 4 (sign P^2) * (sign P^2 + (m/2)^2)
    let mut inner = signed_psq.clone();
    inner.add_term(Monomial::one(), &rat(m * m, 4));
    let spinless = pres
        .mul_guarded(&signed_psq, &inner, pres.term_limit())?
        .scale_int(4);
    pres.reduce(&(&c2c + &spinless)).map_err(EmbeddingError::from)
}

/// Try to write the spin residual as a combination of the central elements
/// `1, P^2, (P^2)^2, W`; only available when the quartic `W` exists (four
/// indices). Returns the named coefficients on success.
pub fn residual_span_decomposition(
    ctx: &EmbeddingContext,
    residual: &NcPolynomial,
) -> Result<Option<Vec<(String, GaussianRational)>>, EmbeddingError> {
    let pres = ctx.presentation();
    let Some(w) = ctx.catalog().get(CasimirName::W) else {
        return Ok(None);
    };
    let psq = ctx.psq().clone();
    let psq2 = pres.mul_guarded(&psq, &psq, pres.term_limit())?;
    let basis = [
        ("1".to_string(), NcPolynomial::one()),
        ("Psq".to_string(), psq),
        ("Psq^2".to_string(), psq2),
        ("W".to_string(), w.clone()),
    ];
    let polys: Vec<NcPolynomial> = basis.iter().map(|(_, p)| p.clone()).collect();
    let Some(coeffs) = solve_linear_combination(&polys, residual) else {
        return Ok(None);
    };
    Ok(Some(
        basis
            .iter()
            .map(|(n, _)| n.clone())
            .zip(coeffs)
            .collect(),
    ))
}

/// The compatibility condition of the deformation domain: the element
/// `P_0 Delta - sum_{i,j>=1} g_ii g_jj P_j L_0i L_ij`, which must
/// annihilate the states the numeric realization is built on.
pub fn condition32_element(sig: Signature) -> Result<NcPolynomial, EmbeddingError> {
    let pres = build_poincare(sig);
    let catalog = CasimirCatalog::build(sig)?;
    let delta = catalog
        .get(CasimirName::Delta)
        .expect("Delta always present");
    let p0 = NcPolynomial::from_gen(GeneratorId::p(0));
    let mut out = pres.mul_guarded(&p0, delta, pres.term_limit())?;
    for i in 1..sig.n() {
        for j in 1..sig.n() {
            if i == j {
                continue;
            }
            let w = sig.metric(i) * sig.metric(j);
            let mut prod = NcPolynomial::from_gen(GeneratorId::p(j));
            prod = pres.mul_guarded(
                &prod,
                &NcPolynomial::from_gen(GeneratorId::l(0, i)),
                pres.term_limit(),
            )?;
            let lij = crate::presets::signed_l(i, j);
            prod = pres.mul_guarded(&prod, &lij, pres.term_limit())?;
            out += &prod.scale_int(-w);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: u8, q: u8, sign: DeformSign) -> EmbeddingContext {
        EmbeddingContext::new(Signature::new(p, q).unwrap(), sign).unwrap()
    }

    #[test]
    fn deformed_generators_frozen_for_smallest_signature() {
        // At (0,1): M_0 = i (2 P_1 L_01 + P_0) + 2 Y P_0 and
        // M_1 = i (2 P_0 L_01 + P_1) + 2 Y P_1 in the ordered basis.
        let ctx = ctx(0, 1, DeformSign::Plus);
        let mut m0 = NcPolynomial::zero();
        m0.add_term(
            Monomial::from_powers(&[(GeneratorId::p(0), 1)], 0, 0),
            &GaussianRational::i(),
        );
        m0.add_term(
            Monomial::from_powers(&[(GeneratorId::p(1), 1), (GeneratorId::l(0, 1), 1)], 0, 0),
            &GaussianRational::from_ratio_i(2, 1),
        );
        m0.add_term(
            Monomial::from_powers(&[(GeneratorId::p(0), 1)], 1, 0),
            &GaussianRational::from_int(2),
        );
        assert_eq!(ctx.deformed(0), m0);

        let mut m1 = NcPolynomial::zero();
        m1.add_term(
            Monomial::from_powers(&[(GeneratorId::p(1), 1)], 0, 0),
            &GaussianRational::i(),
        );
        m1.add_term(
            Monomial::from_powers(&[(GeneratorId::p(0), 1), (GeneratorId::l(0, 1), 1)], 0, 0),
            &GaussianRational::from_ratio_i(2, 1),
        );
        m1.add_term(
            Monomial::from_powers(&[(GeneratorId::p(1), 1)], 1, 0),
            &GaussianRational::from_int(2),
        );
        assert_eq!(ctx.deformed(1), m1);
    }

    #[test]
    fn closure_holds_for_both_signs_and_small_signatures() {
        for (p, q) in [(0u8, 1u8), (0, 2), (0, 3), (1, 2)] {
            for sign in [DeformSign::Plus, DeformSign::Minus] {
                let ctx = ctx(p, q, sign);
                for check in closure_residuals(&ctx).unwrap() {
                    assert!(
                        check.passed(),
                        "({p},{q}) {sign}: {} = {}",
                        check.name,
                        check.residual
                    );
                }
            }
        }
    }

    #[test]
    fn corrupted_root_square_fails_closure() {
        let bad = closure_negative_control(Signature::new(0, 2).unwrap(), DeformSign::Plus)
            .unwrap();
        assert!(bad.is_some());
    }

    #[test]
    fn smallest_signature_has_no_spin_residual() {
        for sign in [DeformSign::Plus, DeformSign::Minus] {
            let ctx = ctx(0, 1, sign);
            let r = c2_spin_residual(&ctx).unwrap();
            assert!(r.is_zero(), "{sign}: {r}");
        }
    }

    #[test]
    fn spin_residual_is_central_and_in_span() {
        for sign in [DeformSign::Plus, DeformSign::Minus] {
            let ctx = ctx(0, 3, sign);
            let r = c2_spin_residual(&ctx).unwrap();
            assert!(!r.is_zero(), "spin residual should be nonzero at (0,3)");
            for g in ctx.presentation().generators() {
                let c = ctx
                    .presentation()
                    .commutator(&r, &NcPolynomial::from_gen(*g));
                assert!(c.is_zero(), "{sign}: residual not central against {g}");
            }
            let dec = residual_span_decomposition(&ctx, &r).unwrap();
            assert!(dec.is_some(), "{sign}: residual outside the span");
        }
    }

    #[test]
    fn condition_element_shape() {
        let sig = Signature::new(0, 1).unwrap();
        let c = condition32_element(sig).unwrap();
        assert!(c.is_zero(), "no spatial pairs at (0,1): {c}");
        let sig = Signature::new(0, 3).unwrap();
        let c = condition32_element(sig).unwrap();
        assert!(!c.is_zero());
    }
}
