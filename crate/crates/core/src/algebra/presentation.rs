//! The presentation table and the normal-ordering engine built on it.
//!
//! An [`AlgebraPresentation`] holds a finite generator list, a bracket table
//! `[a,b]` for generator pairs `a < b`, and any adjoined central square roots.
//! Products in the enveloping algebra are computed by straightening words into
//! the canonical ascending order: whenever two adjacent letters are out of
//! order the word is rewritten with
//!
//! ```text
//! x a b y  ->  x b a y + x [a,b] y        (a > b in generator order)
//! ```
//!
//! Every rewrite either shortens the word (bracket branch) or keeps the length
//! and removes one inversion (swap branch), so straightening terminates. A
//! work guard bounds the number of rewrite steps so runaway inputs fail with
//! an error instead of exhausting memory.

use std::collections::BTreeMap;

use super::{AlgebraError, GeneratorId, Monomial, NcPolynomial};
use crate::exact::GaussianRational;

/// Default ceiling on straightening steps per product.
pub const DEFAULT_TERM_LIMIT: usize = 50_000_000;

/// A central symbol together with the polynomial its square reduces to.
///
/// `square == None` marks an inert symbol: powers accumulate without
/// rewriting. When a square is present, every canonical monomial keeps the
/// symbol's exponent below two.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralRoot {
    pub symbol: GeneratorId,
    pub square: Option<NcPolynomial>,
}

/// One failed Jacobi triple, with the nonzero cyclic residual.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobiFailure {
    pub a: GeneratorId,
    pub b: GeneratorId,
    pub c: GeneratorId,
    pub residual: NcPolynomial,
}

impl std::fmt::Display for JacobiFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "jacobi({},{},{}) = {}",
            self.a, self.b, self.c, self.residual
        )
    }
}

/// Generator images for transporting polynomials into another presentation.
///
/// Word letters are replaced left to right by their images and the product is
/// evaluated in the target presentation. A missing image for `Y` or `Z` maps
/// the symbol to itself.
#[derive(Debug, Clone, Default)]
pub struct SubstitutionMap {
    images: BTreeMap<GeneratorId, NcPolynomial>,
    y_image: Option<NcPolynomial>,
    z_image: Option<NcPolynomial>,
}

impl SubstitutionMap {
    pub fn new() -> Self {
        Self::default()
    }

    /// Sets the image of an ordinary generator. Central symbols go through
    /// [`Self::map_y`] and [`Self::map_z`].
    pub fn map_gen(mut self, g: GeneratorId, image: NcPolynomial) -> Self {
        assert!(!g.is_central_symbol(), "use map_y/map_z for central symbols");
        self.images.insert(g, image);
        self
    }

    pub fn map_y(mut self, image: NcPolynomial) -> Self {
        self.y_image = Some(image);
        self
    }

    pub fn map_z(mut self, image: NcPolynomial) -> Self {
        self.z_image = Some(image);
        self
    }

    pub fn image_of(&self, g: GeneratorId) -> Option<&NcPolynomial> {
        self.images.get(&g)
    }
}

/// A finitely presented Lie algebra along with its enveloping-algebra
/// arithmetic.
#[derive(Debug, Clone)]
pub struct AlgebraPresentation {
    generators: Vec<GeneratorId>,
    brackets: BTreeMap<(GeneratorId, GeneratorId), NcPolynomial>,
    roots: Vec<CentralRoot>,
    term_limit: usize,
}

struct WorkItem {
    word: Vec<GeneratorId>,
    y_exp: u32,
    z_exp: u32,
    coeff: GaussianRational,
}

impl AlgebraPresentation {
    /// Builds a presentation and verifies the Jacobi identity on every
    /// generator triple.
    pub fn new(
        generators: Vec<GeneratorId>,
        brackets: Vec<((GeneratorId, GeneratorId), NcPolynomial)>,
    ) -> Result<Self, AlgebraError> {
        let me = Self::new_unchecked(generators, brackets)?;
        if let Some(fail) = me.check_jacobi().into_iter().next() {
            return Err(AlgebraError::JacobiFailed {
                a: fail.a.to_string(),
                b: fail.b.to_string(),
                c: fail.c.to_string(),
                residual: fail.residual.to_string(),
            });
        }
        Ok(me)
    }

    /// Builds a presentation without the Jacobi sweep. Structural validation
    /// (known generators, linear brackets, antisymmetry of the key set) still
    /// runs. Intended for negative controls and for presets whose Jacobi
    /// check is performed separately.
    pub fn new_unchecked(
        generators: Vec<GeneratorId>,
        brackets: Vec<((GeneratorId, GeneratorId), NcPolynomial)>,
    ) -> Result<Self, AlgebraError> {
        let mut sorted = generators;
        sorted.sort();
        for pair in sorted.windows(2) {
            if pair[0] == pair[1] {
                return Err(AlgebraError::DuplicateGenerator(pair[0].to_string()));
            }
        }
        for g in &sorted {
            if g.is_central_symbol() {
                return Err(AlgebraError::SymbolTaken(g.to_string()));
            }
        }
        let known = |g: GeneratorId| sorted.binary_search(&g).is_ok();

        let mut table: BTreeMap<(GeneratorId, GeneratorId), NcPolynomial> = BTreeMap::new();
        for ((a, b), value) in brackets {
            if a == b {
                if value.is_zero() {
                    continue;
                }
                return Err(AlgebraError::SelfBracket { a: a.to_string() });
            }
            if !known(a) {
                return Err(AlgebraError::UnknownGenerator(a.to_string()));
            }
            if !known(b) {
                return Err(AlgebraError::UnknownGenerator(b.to_string()));
            }
            let (key, value) = if a < b {
                ((a, b), value)
            } else {
                ((b, a), -&value)
            };
            if value.degree() > 1 {
                return Err(AlgebraError::NonlinearBracket {
                    a: key.0.to_string(),
                    b: key.1.to_string(),
                    degree: value.degree(),
                });
            }
            for (m, _) in value.terms() {
                for (g, _) in m.word() {
                    if !known(*g) {
                        return Err(AlgebraError::UnknownGenerator(g.to_string()));
                    }
                }
            }
            if table.contains_key(&key) {
                return Err(AlgebraError::DuplicateBracket {
                    a: key.0.to_string(),
                    b: key.1.to_string(),
                });
            }
            if !value.is_zero() {
                table.insert(key, value);
            }
        }

        Ok(Self {
            generators: sorted,
            brackets: table,
            roots: Vec::new(),
            term_limit: DEFAULT_TERM_LIMIT,
        })
    }

    pub fn generators(&self) -> &[GeneratorId] {
        &self.generators
    }

    pub fn has_generator(&self, g: GeneratorId) -> bool {
        self.generators.binary_search(&g).is_ok()
    }

    pub fn roots(&self) -> &[CentralRoot] {
        &self.roots
    }

    pub fn has_root(&self, symbol: GeneratorId) -> bool {
        self.roots.iter().any(|r| r.symbol == symbol)
    }

    pub fn root_square(&self, symbol: GeneratorId) -> Option<&NcPolynomial> {
        self.roots
            .iter()
            .find(|r| r.symbol == symbol)
            .and_then(|r| r.square.as_ref())
    }

    pub fn term_limit(&self) -> usize {
        self.term_limit
    }

    pub fn set_term_limit(&mut self, limit: usize) {
        self.term_limit = limit;
    }

    /// The bracket `[a,b]` extended by antisymmetry and by centrality of the
    /// adjoined symbols. Pairs absent from the table commute.
    pub fn bracket(&self, a: GeneratorId, b: GeneratorId) -> NcPolynomial {
        if a == b || a.is_central_symbol() || b.is_central_symbol() {
            return NcPolynomial::zero();
        }
        if a < b {
            self.brackets.get(&(a, b)).cloned().unwrap_or_default()
        } else {
            self.brackets
                .get(&(b, a))
                .map(|p| -p)
                .unwrap_or_default()
        }
    }

    /// Adjoins a central symbol, optionally with a square-reduction rule.
    ///
    /// A provided square must be free of central symbols and must commute
    /// with every generator; both properties are checked here so later
    /// straightening can rely on them.
    pub fn adjoin_central_root(
        &mut self,
        symbol: GeneratorId,
        square: Option<NcPolynomial>,
    ) -> Result<(), AlgebraError> {
        if !symbol.is_central_symbol() || self.has_root(symbol) {
            return Err(AlgebraError::SymbolTaken(symbol.to_string()));
        }
        if let Some(sq) = &square {
            for (m, _) in sq.terms() {
                if m.y_exp() > 0 || m.z_exp() > 0 {
                    return Err(AlgebraError::SquareInvolvesRoot {
                        symbol: symbol.to_string(),
                    });
                }
                for (g, _) in m.word() {
                    if !self.has_generator(*g) {
                        return Err(AlgebraError::UnknownGenerator(g.to_string()));
                    }
                }
            }
            for &g in &self.generators {
                let gp = NcPolynomial::from_gen(g);
                let c = self.try_commutator(sq, &gp)?;
                if !c.is_zero() {
                    return Err(AlgebraError::SquareNotCentral {
                        symbol: symbol.to_string(),
                        generator: g.to_string(),
                    });
                }
            }
        }
        self.roots.push(CentralRoot { symbol, square });
        Ok(())
    }

    /// Straightens the product `a * b`, panicking if the work guard trips.
    pub fn mul(&self, a: &NcPolynomial, b: &NcPolynomial) -> NcPolynomial {
        self.try_mul(a, b).expect("straightening guard tripped")
    }

    /// Straightens the product `a * b` under the presentation's work guard.
    pub fn try_mul(&self, a: &NcPolynomial, b: &NcPolynomial) -> Result<NcPolynomial, AlgebraError> {
        self.mul_guarded(a, b, self.term_limit)
    }

    /// Straightens the product `a * b`, failing once more than `limit`
    /// rewrite steps have been taken.
    pub fn mul_guarded(
        &self,
        a: &NcPolynomial,
        b: &NcPolynomial,
        limit: usize,
    ) -> Result<NcPolynomial, AlgebraError> {
        let mut work: Vec<WorkItem> = Vec::new();
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                let coeff = ca * cb;
                if coeff.is_zero() {
                    continue;
                }
                let mut word: Vec<GeneratorId> = ma.flat_word().collect();
                word.extend(mb.flat_word());
                work.push(WorkItem {
                    word,
                    y_exp: ma.y_exp() + mb.y_exp(),
                    z_exp: ma.z_exp() + mb.z_exp(),
                    coeff,
                });
            }
        }
        self.straighten(work, limit)
    }

    /// Canonicalizes a polynomial: straightens every word and applies the
    /// central square reductions.
    pub fn reduce(&self, p: &NcPolynomial) -> Result<NcPolynomial, AlgebraError> {
        self.mul_guarded(p, &NcPolynomial::one(), self.term_limit)
    }

    /// Straightens a raw generator word (central symbols allowed anywhere).
    pub fn normal_order(&self, word: &[GeneratorId]) -> Result<NcPolynomial, AlgebraError> {
        let mut letters = Vec::new();
        let mut y_exp = 0;
        let mut z_exp = 0;
        for &g in word {
            match g {
                GeneratorId::Y => y_exp += 1,
                GeneratorId::Z => z_exp += 1,
                _ => letters.push(g),
            }
        }
        let item = WorkItem {
            word: letters,
            y_exp,
            z_exp,
            coeff: GaussianRational::one(),
        };
        self.straighten(vec![item], self.term_limit)
    }

    /// `a*b - b*a` under the work guard.
    pub fn try_commutator(
        &self,
        a: &NcPolynomial,
        b: &NcPolynomial,
    ) -> Result<NcPolynomial, AlgebraError> {
        Ok(&self.try_mul(a, b)? - &self.try_mul(b, a)?)
    }

    /// `a*b - b*a`, panicking if the work guard trips.
    pub fn commutator(&self, a: &NcPolynomial, b: &NcPolynomial) -> NcPolynomial {
        self.try_commutator(a, b).expect("straightening guard tripped")
    }

    /// Cyclic Jacobi residuals over all generator triples. Empty when the
    /// bracket table is a Lie algebra.
    pub fn check_jacobi(&self) -> Vec<JacobiFailure> {
        let mut failures = Vec::new();
        let n = self.generators.len();
        for ia in 0..n {
            for ib in (ia + 1)..n {
                for ic in (ib + 1)..n {
                    let (a, b, c) = (
                        self.generators[ia],
                        self.generators[ib],
                        self.generators[ic],
                    );
                    let pa = NcPolynomial::from_gen(a);
                    let pb = NcPolynomial::from_gen(b);
                    let pc = NcPolynomial::from_gen(c);
                    let mut residual = self.commutator(&self.bracket(a, b), &pc);
                    residual.add_assign(&self.commutator(&self.bracket(b, c), &pa));
                    residual.add_assign(&self.commutator(&self.bracket(c, a), &pb));
                    if !residual.is_zero() {
                        failures.push(JacobiFailure { a, b, c, residual });
                    }
                }
            }
        }
        failures
    }

    /// Replaces generators by their images and evaluates the result in this
    /// presentation. Fails when a word letter has no image.
    pub fn substitute(
        &self,
        p: &NcPolynomial,
        map: &SubstitutionMap,
    ) -> Result<NcPolynomial, AlgebraError> {
        let y_poly = NcPolynomial::monomial(Monomial::one().bump_central(1, 0), GaussianRational::one());
        let z_poly = NcPolynomial::monomial(Monomial::one().bump_central(0, 1), GaussianRational::one());
        let mut out = NcPolynomial::zero();
        for (m, c) in p.terms() {
            let mut acc = NcPolynomial::scalar(c.clone());
            for &(g, k) in m.word() {
                let image = map
                    .images
                    .get(&g)
                    .ok_or_else(|| AlgebraError::UnmappedGenerator(g.to_string()))?;
                for _ in 0..k {
                    acc = self.try_mul(&acc, image)?;
                }
            }
            if m.y_exp() > 0 {
                let image = map.y_image.as_ref().unwrap_or(&y_poly);
                for _ in 0..m.y_exp() {
                    acc = self.try_mul(&acc, image)?;
                }
            }
            if m.z_exp() > 0 {
                let image = map.z_image.as_ref().unwrap_or(&z_poly);
                for _ in 0..m.z_exp() {
                    acc = self.try_mul(&acc, image)?;
                }
            }
            out.add_assign(&acc);
        }
        Ok(out)
    }

    fn straighten(
        &self,
        mut work: Vec<WorkItem>,
        limit: usize,
    ) -> Result<NcPolynomial, AlgebraError> {
        let mut out = NcPolynomial::zero();
        let mut steps: usize = 0;
        while let Some(item) = work.pop() {
            steps += 1;
            if steps > limit {
                return Err(AlgebraError::TermLimitExceeded { limit });
            }
            if item.coeff.is_zero() {
                continue;
            }
            let descent = item.word.windows(2).position(|w| w[0] > w[1]);
            match descent {
                Some(i) => {
                    let br = self.bracket(item.word[i], item.word[i + 1]);
                    for (mb, cb) in br.terms() {
                        let mut w =
                            Vec::with_capacity(item.word.len() - 2 + mb.degree() as usize);
                        w.extend_from_slice(&item.word[..i]);
                        w.extend(mb.flat_word());
                        w.extend_from_slice(&item.word[i + 2..]);
                        work.push(WorkItem {
                            word: w,
                            y_exp: item.y_exp + mb.y_exp(),
                            z_exp: item.z_exp + mb.z_exp(),
                            coeff: &item.coeff * cb,
                        });
                    }
                    let mut w = item.word;
                    w.swap(i, i + 1);
                    work.push(WorkItem {
                        word: w,
                        y_exp: item.y_exp,
                        z_exp: item.z_exp,
                        coeff: item.coeff,
                    });
                }
                None => {
                    if item.y_exp >= 2 {
                        if let Some(sq) = self.root_square(GeneratorId::Y) {
                            push_square_terms(&mut work, &item, sq, true);
                            continue;
                        }
                    }
                    if item.z_exp >= 2 {
                        if let Some(sq) = self.root_square(GeneratorId::Z) {
                            push_square_terms(&mut work, &item, sq, false);
                            continue;
                        }
                    }
                    out.add_term(
                        monomial_from_sorted(&item.word, item.y_exp, item.z_exp),
                        &item.coeff,
                    );
                }
            }
        }
        Ok(out)
    }
}

/// Replaces one square of the central symbol by its reduction polynomial,
/// queueing the resulting words for further straightening.
fn push_square_terms(work: &mut Vec<WorkItem>, item: &WorkItem, sq: &NcPolynomial, is_y: bool) {
    for (ms, cs) in sq.terms() {
        let mut w = item.word.clone();
        w.extend(ms.flat_word());
        let (dy, dz) = if is_y { (2, 0) } else { (0, 2) };
        work.push(WorkItem {
            word: w,
            y_exp: item.y_exp - dy + ms.y_exp(),
            z_exp: item.z_exp - dz + ms.z_exp(),
            coeff: &item.coeff * cs,
        });
    }
}

fn monomial_from_sorted(word: &[GeneratorId], y_exp: u32, z_exp: u32) -> Monomial {
    let mut powers: Vec<(GeneratorId, u32)> = Vec::new();
    for &g in word {
        match powers.last_mut() {
            Some((last, k)) if *last == g => *k += 1,
            _ => powers.push((g, 1)),
        }
    }
    Monomial::from_powers(&powers, y_exp, z_exp)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gr(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    // sl2 with E < F < H encoded as P0 < P1 < L01:
    // [E,F] = H, [H,E] = 2E, [H,F] = -2F.
    fn sl2() -> AlgebraPresentation {
        let e = GeneratorId::p(0);
        let f = GeneratorId::p(1);
        let h = GeneratorId::l(0, 1);
        AlgebraPresentation::new(
            vec![e, f, h],
            vec![
                ((e, f), NcPolynomial::from_gen(h)),
                ((e, h), NcPolynomial::from_gen(e).scale_int(-2)),
                ((f, h), NcPolynomial::from_gen(f).scale_int(2)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn straightens_single_inversion() {
        let alg = sl2();
        let e = GeneratorId::p(0);
        let f = GeneratorId::p(1);
        let h = GeneratorId::l(0, 1);
        // F*E = E*F - H
        let fe = alg.normal_order(&[f, e]).unwrap();
        let mut expect = NcPolynomial::monomial(
            Monomial::from_powers(&[(e, 1), (f, 1)], 0, 0),
            gr(1),
        );
        expect.add_term(Monomial::from_gen(h), &gr(-1));
        assert_eq!(fe, expect);
    }

    #[test]
    fn sorted_words_pass_through() {
        let alg = sl2();
        let e = GeneratorId::p(0);
        let h = GeneratorId::l(0, 1);
        let word = [e, e, h];
        let p = alg.normal_order(&word).unwrap();
        assert_eq!(
            p,
            NcPolynomial::monomial(Monomial::from_powers(&[(e, 2), (h, 1)], 0, 0), gr(1))
        );
        // straightening an already-normal polynomial is the identity
        assert_eq!(alg.reduce(&p).unwrap(), p);
    }

    #[test]
    fn casimir_is_central() {
        let alg = sl2();
        let e = NcPolynomial::from_gen(GeneratorId::p(0));
        let f = NcPolynomial::from_gen(GeneratorId::p(1));
        let h = NcPolynomial::from_gen(GeneratorId::l(0, 1));
        // EF + FE + H^2/2
        let mut cas = alg.mul(&e, &f);
        cas.add_assign(&alg.mul(&f, &e));
        cas.add_assign(&alg.mul(&h, &h).scale(&GaussianRational::from_ratio(1, 2)));
        for gen in [&e, &f, &h] {
            assert!(alg.commutator(&cas, gen).is_zero());
        }
    }

    #[test]
    fn jacobi_rejects_flipped_sign() {
        let e = GeneratorId::p(0);
        let f = GeneratorId::p(1);
        let h = GeneratorId::l(0, 1);
        let bad = AlgebraPresentation::new(
            vec![e, f, h],
            vec![
                ((e, f), NcPolynomial::from_gen(h)),
                ((e, h), NcPolynomial::from_gen(e).scale_int(2)),
                ((f, h), NcPolynomial::from_gen(f).scale_int(2)),
            ],
        );
        assert!(matches!(bad, Err(AlgebraError::JacobiFailed { .. })));

        let unchecked = AlgebraPresentation::new_unchecked(
            vec![e, f, h],
            vec![
                ((e, f), NcPolynomial::from_gen(h)),
                ((e, h), NcPolynomial::from_gen(e).scale_int(2)),
                ((f, h), NcPolynomial::from_gen(f).scale_int(2)),
            ],
        )
        .unwrap();
        let failures = unchecked.check_jacobi();
        assert_eq!(failures.len(), 1);
        assert_eq!(
            failures[0].residual,
            NcPolynomial::from_gen(h).scale_int(-4)
        );
    }

    #[test]
    fn central_square_reduces_even_powers() {
        let a = GeneratorId::p(0);
        let b = GeneratorId::p(1);
        let mut alg = AlgebraPresentation::new(vec![a, b], vec![]).unwrap();
        // Y^2 = P0^2 + P1^2 in a commutative toy algebra
        let mut sq = NcPolynomial::monomial(Monomial::from_powers(&[(a, 2)], 0, 0), gr(1));
        sq.add_term(Monomial::from_powers(&[(b, 2)], 0, 0), &gr(1));
        alg.adjoin_central_root(GeneratorId::Y, Some(sq.clone())).unwrap();

        let y = NcPolynomial::monomial(Monomial::one().bump_central(1, 0), gr(1));
        assert_eq!(alg.mul(&y, &y), sq);
        // Y^3 = (P0^2 + P1^2) * Y
        let y3 = alg.mul(&alg.mul(&y, &y), &y);
        assert_eq!(y3, sq.bump_central(1, 0));
        // Z stays inert without a square rule
        alg.adjoin_central_root(GeneratorId::Z, None).unwrap();
        let z = NcPolynomial::monomial(Monomial::one().bump_central(0, 1), gr(1));
        let z2 = alg.mul(&z, &z);
        assert_eq!(
            z2,
            NcPolynomial::monomial(Monomial::one().bump_central(0, 2), gr(1))
        );
    }

    #[test]
    fn adjoin_rejects_noncentral_square() {
        let mut alg = sl2();
        let err = alg
            .adjoin_central_root(GeneratorId::Y, Some(NcPolynomial::from_gen(GeneratorId::p(0))))
            .unwrap_err();
        assert!(matches!(err, AlgebraError::SquareNotCentral { .. }));
    }

    #[test]
    fn adjoin_accepts_casimir_square() {
        let mut alg = sl2();
        let e = NcPolynomial::from_gen(GeneratorId::p(0));
        let f = NcPolynomial::from_gen(GeneratorId::p(1));
        let h = NcPolynomial::from_gen(GeneratorId::l(0, 1));
        let mut cas = alg.mul(&e, &f);
        cas.add_assign(&alg.mul(&f, &e));
        cas.add_assign(&alg.mul(&h, &h).scale(&GaussianRational::from_ratio(1, 2)));
        alg.adjoin_central_root(GeneratorId::Y, Some(cas.clone())).unwrap();
        let y = NcPolynomial::monomial(Monomial::one().bump_central(1, 0), gr(1));
        assert_eq!(alg.mul(&y, &y), cas);
    }

    #[test]
    fn substitution_expands_images() {
        let alg = sl2();
        let e = GeneratorId::p(0);
        let f = GeneratorId::p(1);
        let h = GeneratorId::l(0, 1);
        // E*H under E -> E + F, H -> H equals (E+F)*H straightened.
        let map = SubstitutionMap::new()
            .map_gen(e, &NcPolynomial::from_gen(e) + &NcPolynomial::from_gen(f))
            .map_gen(f, NcPolynomial::from_gen(f))
            .map_gen(h, NcPolynomial::from_gen(h));
        let eh = NcPolynomial::monomial(Monomial::from_powers(&[(e, 1), (h, 1)], 0, 0), gr(1));
        let image = alg.substitute(&eh, &map).unwrap();
        let expect = alg.mul(
            &(&NcPolynomial::from_gen(e) + &NcPolynomial::from_gen(f)),
            &NcPolynomial::from_gen(h),
        );
        assert_eq!(image, expect);

        // Y maps to itself when no image is given; powers multiply out.
        let y_term = NcPolynomial::monomial(Monomial::from_gen(e).bump_central(1, 0), gr(3));
        let same = alg.substitute(
            &y_term,
            &SubstitutionMap::new().map_gen(e, NcPolynomial::from_gen(e)),
        )
        .unwrap();
        assert_eq!(same, y_term);

        // a missing image is an error
        let err = alg.substitute(&eh, &SubstitutionMap::new()).unwrap_err();
        assert!(matches!(err, AlgebraError::UnmappedGenerator(_)));
    }

    #[test]
    fn work_guard_trips() {
        let alg = sl2();
        let e = NcPolynomial::from_gen(GeneratorId::p(0));
        let f = NcPolynomial::from_gen(GeneratorId::p(1));
        let fe = alg.mul(&f, &e);
        let err = alg.mul_guarded(&fe, &fe, 3).unwrap_err();
        assert_eq!(err, AlgebraError::TermLimitExceeded { limit: 3 });
    }

    #[test]
    fn bracket_values_may_carry_central_symbols() {
        // Heisenberg pair with [A,B] = 2Y
        let a = GeneratorId::p(0);
        let b = GeneratorId::p(1);
        let two_y = NcPolynomial::monomial(Monomial::one().bump_central(1, 0), gr(2));
        let alg = AlgebraPresentation::new(vec![a, b], vec![((a, b), two_y)]).unwrap();
        // B*A = A*B - 2Y
        let ba = alg.normal_order(&[b, a]).unwrap();
        let mut expect = NcPolynomial::monomial(Monomial::from_powers(&[(a, 1), (b, 1)], 0, 0), gr(1));
        expect.add_term(Monomial::one().bump_central(1, 0), &gr(-2));
        assert_eq!(ba, expect);
    }
}
