use super::{PresetError, Signature};
use crate::algebra::{AlgebraPresentation, GeneratorId, Monomial, NcPolynomial};
use crate::exact::GaussianRational;

/// `L_ab` as a polynomial for arbitrary index order: antisymmetric in (a, b),
/// zero on the diagonal.
pub(crate) fn signed_l_poly(a: u8, b: u8) -> NcPolynomial {
    let mut out = NcPolynomial::zero();
    add_signed_l(&mut out, a, b, 1);
    out
}

fn add_signed_l(out: &mut NcPolynomial, a: u8, b: u8, coeff: i64) {
    if a == b || coeff == 0 {
        return;
    }
    let (gen, sign) = if a < b {
        (GeneratorId::l(a, b), 1)
    } else {
        (GeneratorId::l(b, a), -1)
    };
    out.add_term(
        Monomial::from_gen(gen),
        &GaussianRational::from_int(coeff * sign),
    );
}

fn add_p(out: &mut NcPolynomial, k: u8, coeff: i64) {
    if coeff == 0 {
        return;
    }
    out.add_term(
        Monomial::from_gen(GeneratorId::p(k)),
        &GaussianRational::from_int(coeff),
    );
}

/// Bracket of two rotation generators by metric contraction:
/// the surviving terms pair off coincident indices, each weighted by the
/// metric entry at the shared index.
fn contraction_bracket(metric: &[i64], (i, j): (u8, u8), (k, l): (u8, u8)) -> NcPolynomial {
    let mut out = NcPolynomial::zero();
    if i == k {
        add_signed_l(&mut out, j, l, metric[i as usize]);
    }
    if j == l {
        add_signed_l(&mut out, i, k, metric[j as usize]);
    }
    if i == l {
        add_signed_l(&mut out, j, k, -metric[i as usize]);
    }
    if j == k {
        add_signed_l(&mut out, i, l, -metric[j as usize]);
    }
    out
}

/// Bracket of two rotation generators by the shared-index rule: the bracket
/// vanishes unless the index pairs overlap in exactly one place `s`, and then
/// `[L(a,s), L(s,b)] = -e_s L(a,b)` after orienting both factors around `s`.
///
/// This is an independent formulation of the same table as
/// [`contraction_bracket`]; the preset tests compare the two entrywise.
pub fn so_bracket_shared_index(
    metric: &[i64],
    (i, j): (u8, u8),
    (k, l): (u8, u8),
) -> NcPolynomial {
    let mut out = NcPolynomial::zero();
    if (i, j) == (k, l) {
        return out;
    }
    let shared: Vec<u8> = [i, j]
        .into_iter()
        .filter(|x| *x == k || *x == l)
        .collect();
    if shared.len() != 1 {
        return out;
    }
    let s = shared[0];
    // Orient the left factor as L(a,s) and the right as L(s,b).
    let (a, sign_left) = if j == s { (i, 1) } else { (j, -1) };
    let (b, sign_right) = if k == s { (l, 1) } else { (k, -1) };
    add_signed_l(&mut out, a, b, -metric[s as usize] * sign_left * sign_right);
    out
}

fn check_metric(metric: &[i64]) -> Result<(), PresetError> {
    let bad = |reason: &str| PresetError::InvalidSignature {
        p: 0,
        q: 0,
        reason: format!("metric {metric:?}: {reason}"),
    };
    if metric.len() < 2 {
        return Err(bad("need at least two indices"));
    }
    if metric.len() > super::signature::MAX_DIMENSION as usize {
        return Err(bad("index count exceeds the cap"));
    }
    if metric.iter().any(|e| *e != 1 && *e != -1) {
        return Err(bad("entries must be +1 or -1"));
    }
    Ok(())
}

/// Rotation algebra for an arbitrary diagonal unit metric, generators
/// `L_ij` for `i < j` over the given index range.
pub fn build_so_with_metric(metric: &[i64]) -> Result<AlgebraPresentation, PresetError> {
    check_metric(metric)?;
    let n = metric.len() as u8;
    let mut generators = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            generators.push(GeneratorId::l(i, j));
        }
    }
    let mut brackets = Vec::new();
    for (idx, &ga) in generators.iter().enumerate() {
        for &gb in &generators[idx + 1..] {
            let (GeneratorId::L(i, j), GeneratorId::L(k, l)) = (ga, gb) else {
                unreachable!()
            };
            let value = contraction_bracket(metric, (i, j), (k, l));
            if !value.is_zero() {
                brackets.push(((ga, gb), value));
            }
        }
    }
    AlgebraPresentation::new(generators, brackets).map_err(PresetError::from)
}

/// Rotation algebra so(p+1, q) on indices `0..=p+q`.
pub fn build_so(sig: Signature) -> AlgebraPresentation {
    build_so_with_metric(&sig.metric_diagonal()).expect("preset bracket table must close")
}

/// Inhomogeneous extension: the rotation generators together with commuting
/// momenta `P_k`, with `[L_ij, P_k] = -g_jk P_i + g_ik P_j`.
pub fn build_poincare(sig: Signature) -> AlgebraPresentation {
    let metric = sig.metric_diagonal();
    let n = sig.n();
    let mut generators: Vec<GeneratorId> = (0..n).map(GeneratorId::p).collect();
    let mut rotation = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            rotation.push(GeneratorId::l(i, j));
        }
    }
    generators.extend(rotation.iter().copied());

    let mut brackets = Vec::new();
    for (idx, &ga) in rotation.iter().enumerate() {
        for &gb in &rotation[idx + 1..] {
            let (GeneratorId::L(i, j), GeneratorId::L(k, l)) = (ga, gb) else {
                unreachable!()
            };
            let value = contraction_bracket(&metric, (i, j), (k, l));
            if !value.is_zero() {
                brackets.push(((ga, gb), value));
            }
        }
    }
    for &gl in &rotation {
        let GeneratorId::L(i, j) = gl else {
            unreachable!()
        };
        for k in 0..n {
            let mut value = NcPolynomial::zero();
            if j == k {
                add_p(&mut value, i, -metric[j as usize]);
            }
            if i == k {
                add_p(&mut value, j, metric[i as usize]);
            }
            if !value.is_zero() {
                brackets.push(((gl, GeneratorId::p(k)), value));
            }
        }
    }
    AlgebraPresentation::new(generators, brackets).expect("preset bracket table must close")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(i: u8, j: u8) -> NcPolynomial {
        NcPolynomial::from_gen(GeneratorId::l(i, j))
    }

    fn p(k: u8) -> NcPolynomial {
        NcPolynomial::from_gen(GeneratorId::p(k))
    }

    #[test]
    fn frozen_so13_entries() {
        let alg = build_so(Signature::new(1, 3).unwrap());
        let b = alg.commutator(&l(0, 1), &l(1, 2));
        assert_eq!(b, -&l(0, 2), "bracket(L_01, L_12)");
        let b = alg.commutator(&l(1, 2), &l(2, 3));
        assert_eq!(b, l(1, 3), "bracket(L_12, L_23)");
    }

    #[test]
    fn smallest_case_is_abelian() {
        let alg = build_so(Signature::new(0, 1).unwrap());
        assert_eq!(alg.generators(), &[GeneratorId::l(0, 1)]);
        assert!(alg.check_jacobi().is_empty());
    }

    #[test]
    fn shared_index_rule_matches_contraction() {
        for (p_sig, q_sig) in [(0u8, 1u8), (0, 2), (0, 3), (1, 2), (1, 3)] {
            let sig = Signature::new(p_sig, q_sig).unwrap();
            let metric = sig.metric_diagonal();
            let alg = build_so(sig);
            let gens = alg.generators().to_vec();
            for &ga in &gens {
                for &gb in &gens {
                    let (GeneratorId::L(i, j), GeneratorId::L(k, l)) = (ga, gb) else {
                        unreachable!()
                    };
                    let expect = so_bracket_shared_index(&metric, (i, j), (k, l));
                    assert_eq!(
                        alg.bracket(ga, gb),
                        expect,
                        "entry ({ga}, {gb}) at signature {sig}"
                    );
                }
            }
        }
    }

    #[test]
    fn frozen_translation_entries() {
        let alg = build_poincare(Signature::new(0, 3).unwrap());
        assert_eq!(alg.commutator(&l(0, 1), &p(1)), p(0));
        assert!(alg.commutator(&p(1), &p(2)).is_zero());

        let alg = build_poincare(Signature::new(1, 3).unwrap());
        assert_eq!(alg.commutator(&l(0, 1), &p(0)), p(1));
    }

    #[test]
    fn presets_pass_the_closure_sweep() {
        for (p_sig, q_sig) in [(0u8, 3u8), (1, 3), (1, 2)] {
            let sig = Signature::new(p_sig, q_sig).unwrap();
            assert!(build_so(sig).check_jacobi().is_empty());
            assert!(build_poincare(sig).check_jacobi().is_empty());
        }
    }

    #[test]
    fn metric_validation() {
        assert!(build_so_with_metric(&[1]).is_err());
        assert!(build_so_with_metric(&[1, 0]).is_err());
        assert!(build_so_with_metric(&[1; 9]).is_err());
        assert!(build_so_with_metric(&[1, -1, -1, -1, 1]).is_ok());
    }
}
