//! Defining matrix representation of the rotation algebras.
//!
//! Generators are realized as n-by-n matrices over the Gaussian rationals,
//! built from elementary matrices according to the block position of the
//! index pair relative to the metric split. The module cross-checks the
//! abstract bracket tables against literal matrix commutators and evaluates
//! Casimir elements to scalar matrices.

use thiserror::Error;

use crate::algebra::{AlgebraPresentation, GeneratorId, NcPolynomial};
use crate::exact::GaussianRational;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum FundamentalError {
    #[error("generator {0} has no matrix image in the defining representation")]
    Unrepresentable(String),
    #[error("matrix dimensions differ: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: u8, dim: usize },
    #[error("bracket table mismatch at ({a}, {b})")]
    BracketMismatch { a: String, b: String },
    #[error("matrix is not a scalar multiple of the identity")]
    NotScalar,
}

/// Dense square matrix over the Gaussian rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    dim: usize,
    data: Vec<GaussianRational>,
}

impl ExactMatrix {
    pub fn zero(dim: usize) -> Self {
        ExactMatrix {
            dim,
            data: vec![GaussianRational::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zero(dim);
        for i in 0..dim {
            m.data[i * dim + i] = GaussianRational::one();
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, r: usize, c: usize) -> &GaussianRational {
        &self.data[r * self.dim + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: GaussianRational) {
        self.data[r * self.dim + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(GaussianRational::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(self.dim);
        for r in 0..self.dim {
            for c in 0..self.dim {
                out.data[c * self.dim + r] = self.get(r, c).clone();
            }
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, FundamentalError> {
        self.check_dim(rhs)?;
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&rhs.data) {
            *a += b;
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self, FundamentalError> {
        self.check_dim(rhs)?;
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&rhs.data) {
            *a -= b;
        }
        Ok(out)
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self, FundamentalError> {
        self.check_dim(rhs)?;
        let n = self.dim;
        let mut out = Self::zero(n);
        for r in 0..n {
            for k in 0..n {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let b = rhs.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    out.data[r * n + c] += &(a * b);
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a *= c;
        }
        out
    }

    pub fn commutator(&self, rhs: &Self) -> Result<Self, FundamentalError> {
        self.mul(rhs)?.sub(&rhs.mul(self)?)
    }

    /// If the matrix is `c * I`, return `c`.
    pub fn as_scalar(&self) -> Result<GaussianRational, FundamentalError> {
        let c = self.get(0, 0).clone();
        for r in 0..self.dim {
            for col in 0..self.dim {
                let expect = if r == col {
                    c.clone()
                } else {
                    GaussianRational::zero()
                };
                if *self.get(r, col) != expect {
                    return Err(FundamentalError::NotScalar);
                }
            }
        }
        Ok(c)
    }

    fn check_dim(&self, rhs: &Self) -> Result<(), FundamentalError> {
        if self.dim != rhs.dim {
            return Err(FundamentalError::DimensionMismatch(self.dim, rhs.dim));
        }
        Ok(())
    }
}

fn int(v: i64) -> GaussianRational {
    GaussianRational::from_int(v)
}

/// Matrix image of the rotation generator `L_ij` for the given diagonal
/// metric: the combination `g_ii E_ji - g_jj E_ij` of elementary matrices.
///
/// On a plus-block-first metric this reduces to the familiar block cases
/// (antisymmetric with a leading minus for a plus-plus pair, antisymmetric
/// for minus-minus, symmetric for mixed), and it stays consistent with the
/// metric-contraction bracket table for interleaved metrics as well.
pub fn generator_matrix(
    metric: &[i64],
    i: u8,
    j: u8,
) -> Result<ExactMatrix, FundamentalError> {
    let dim = metric.len();
    for idx in [i, j] {
        if (idx as usize) >= dim {
            return Err(FundamentalError::IndexOutOfRange { index: idx, dim });
        }
    }
    if i == j {
        return Ok(ExactMatrix::zero(dim));
    }
    let (ii, jj) = (i as usize, j as usize);
    let mut m = ExactMatrix::zero(dim);
    m.set(jj, ii, int(metric[ii]));
    m.set(ii, jj, int(-metric[jj]));
    Ok(m)
}

/// Residual of the defining-representation membership condition,
/// `X^T g + g X` for the diagonal metric `g`. Zero iff `X` belongs to the
/// rotation algebra of that metric.
pub fn membership_residual(
    metric: &[i64],
    x: &ExactMatrix,
) -> Result<ExactMatrix, FundamentalError> {
    let dim = metric.len();
    if x.dim() != dim {
        return Err(FundamentalError::DimensionMismatch(x.dim(), dim));
    }
    let mut g = ExactMatrix::zero(dim);
    for (k, e) in metric.iter().enumerate() {
        g.set(k, k, int(*e));
    }
    x.transpose().mul(&g)?.add(&g.mul(x)?)
}

/// Evaluate a polynomial in rotation generators as a matrix. Only `L`
/// letters are representable; momenta and central symbols are rejected.
pub fn matrix_image(
    metric: &[i64],
    poly: &NcPolynomial,
) -> Result<ExactMatrix, FundamentalError> {
    let dim = metric.len();
    let mut out = ExactMatrix::zero(dim);
    for (mono, coeff) in poly.terms() {
        if mono.y_exp() > 0 || mono.z_exp() > 0 {
            return Err(FundamentalError::Unrepresentable("Y/Z".into()));
        }
        let mut acc = ExactMatrix::identity(dim);
        for g in mono.flat_word() {
            let GeneratorId::L(i, j) = g else {
                return Err(FundamentalError::Unrepresentable(g.to_string()));
            };
            acc = acc.mul(&generator_matrix(metric, i, j)?)?;
        }
        out = out.add(&acc.scale(coeff))?;
    }
    Ok(out)
}

/// Compare the abstract bracket table of a presentation against literal
/// matrix commutators of the defining representation, entry by entry.
pub fn verify_matrix_brackets(
    metric: &[i64],
    pres: &AlgebraPresentation,
) -> Result<(), FundamentalError> {
    let gens: Vec<GeneratorId> = pres
        .generators()
        .iter()
        .copied()
        .filter(|g| matches!(g, GeneratorId::L(_, _)))
        .collect();
    for (idx, &ga) in gens.iter().enumerate() {
        for &gb in &gens[idx..] {
            let (GeneratorId::L(i, j), GeneratorId::L(k, l)) = (ga, gb) else {
                unreachable!()
            };
            let ma = generator_matrix(metric, i, j)?;
            let mb = generator_matrix(metric, k, l)?;
            let lhs = ma.commutator(&mb)?;
            let rhs = matrix_image(metric, &pres.bracket(ga, gb))?;
            if lhs != rhs {
                return Err(FundamentalError::BracketMismatch {
                    a: ga.to_string(),
                    b: gb.to_string(),
                });
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::{build_so, build_so_with_metric, so23_metric, CasimirCatalog};
    use crate::presets::{CasimirName, Signature};

    fn sig_metric(p: u8, q: u8) -> Vec<i64> {
        Signature::new(p, q).unwrap().metric_diagonal()
    }

    #[test]
    fn block_cases_of_the_generator_map() {
        // Mixed pair: symmetric combination.
        let m = generator_matrix(&sig_metric(0, 1), 0, 1).unwrap();
        assert_eq!(*m.get(0, 1), int(1));
        assert_eq!(*m.get(1, 0), int(1));
        // Plus-plus pair: antisymmetric with leading minus.
        let m = generator_matrix(&sig_metric(1, 3), 0, 1).unwrap();
        assert_eq!(*m.get(0, 1), int(-1));
        assert_eq!(*m.get(1, 0), int(1));
        // Minus-minus pair: antisymmetric.
        let m = generator_matrix(&sig_metric(1, 3), 2, 3).unwrap();
        assert_eq!(*m.get(2, 3), int(1));
        assert_eq!(*m.get(3, 2), int(-1));
        // Antisymmetry of the label itself.
        let a = generator_matrix(&sig_metric(1, 3), 3, 2).unwrap();
        assert_eq!(a, generator_matrix(&sig_metric(1, 3), 2, 3).unwrap().scale(&int(-1)));
        // Interleaved metric, minus index first in a mixed pair: the
        // symmetric combination picks up a minus sign.
        let m = generator_matrix(&so23_metric(), 1, 4).unwrap();
        assert_eq!(*m.get(1, 4), int(-1));
        assert_eq!(*m.get(4, 1), int(-1));
    }

    #[test]
    fn generators_satisfy_membership() {
        for metric in [
            sig_metric(0, 1),
            sig_metric(0, 2),
            sig_metric(0, 3),
            sig_metric(1, 2),
            sig_metric(1, 3),
            so23_metric(),
        ] {
            let n = metric.len() as u8;
            for i in 0..n {
                for j in (i + 1)..n {
                    let m = generator_matrix(&metric, i, j).unwrap();
                    let res = membership_residual(&metric, &m).unwrap();
                    assert!(res.is_zero(), "L_{i}{j} fails membership for {metric:?}");
                }
            }
        }
    }

    #[test]
    fn membership_negative_control() {
        // For a mixed index pair the purely antisymmetric combination does
        // not satisfy the membership condition.
        let metric = sig_metric(0, 3);
        let mut x = ExactMatrix::zero(4);
        x.set(0, 1, int(1));
        x.set(1, 0, int(-1));
        let res = membership_residual(&metric, &x).unwrap();
        assert!(!res.is_zero());
    }

    #[test]
    fn bracket_tables_match_matrix_commutators() {
        for metric in [
            sig_metric(0, 1),
            sig_metric(0, 2),
            sig_metric(0, 3),
            sig_metric(1, 2),
            sig_metric(1, 3),
        ] {
            let pres = build_so_with_metric(&metric).unwrap();
            verify_matrix_brackets(&metric, &pres).unwrap();
        }
        let metric = so23_metric();
        let pres = build_so_with_metric(&metric).unwrap();
        verify_matrix_brackets(&metric, &pres).unwrap();
    }

    #[test]
    fn corrupted_generator_breaks_the_table() {
        // Replace L_12 by its transpose (it is antisymmetric, so this flips
        // its sign) inside the commutator comparison.
        let metric = sig_metric(0, 3);
        let pres = build_so(Signature::new(0, 3).unwrap());
        let l01 = generator_matrix(&metric, 0, 1).unwrap();
        let bad_l12 = generator_matrix(&metric, 1, 2).unwrap().transpose();
        let lhs = l01.commutator(&bad_l12).unwrap();
        let rhs = matrix_image(
            &metric,
            &pres.bracket(GeneratorId::l(0, 1), GeneratorId::l(1, 2)),
        )
        .unwrap();
        assert_ne!(lhs, rhs);
    }

    #[test]
    fn unrepresentable_letters_are_rejected() {
        let metric = sig_metric(0, 1);
        let poly = NcPolynomial::from_gen(GeneratorId::p(0));
        assert!(matches!(
            matrix_image(&metric, &poly),
            Err(FundamentalError::Unrepresentable(_))
        ));
    }

    #[test]
    fn casimir_images_are_frozen_scalars() {
        // Scalar values of the catalog invariants in the defining
        // representation, pinned after an exploratory run.
        for (p, q, expect) in [(0u8, 1u8, 1i64), (0, 2, 2), (0, 3, 3), (1, 2, 3), (1, 3, 4)] {
            let sig = Signature::new(p, q).unwrap();
            let metric = sig.metric_diagonal();
            let cat = CasimirCatalog::build(sig).unwrap();
            let img = matrix_image(&metric, cat.get(CasimirName::Q2).unwrap()).unwrap();
            assert_eq!(img.as_scalar().unwrap(), int(expect), "Q2 at ({p},{q})");
        }

        let cat = CasimirCatalog::build(Signature::new(0, 3).unwrap()).unwrap();
        let so23 = so23_metric();
        let img = matrix_image(&so23, cat.get(CasimirName::C2so23).unwrap()).unwrap();
        assert_eq!(img.as_scalar().unwrap(), int(4), "C2so23");

        let lorentz = sig_metric(0, 3);
        let img = matrix_image(&lorentz, cat.get(CasimirName::Q4root).unwrap()).unwrap();
        assert_eq!(img.as_scalar().unwrap(), int(0), "Q4root");

        let img = matrix_image(&so23, cat.get(CasimirName::C4so23).unwrap()).unwrap();
        assert_eq!(img.as_scalar().unwrap(), int(0), "C4so23");
    }
}
