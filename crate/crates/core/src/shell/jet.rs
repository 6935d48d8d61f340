//! Truncated multivariate Taylor jets.
//!
//! A jet stores the coefficients of a function of the spatial momenta around
//! a base point, up to a fixed total degree. Arithmetic is exact to the
//! stored order; every jet additionally carries a trusted order that drops
//! by one under differentiation, so a chain of operator applications knows
//! how many of its coefficients are still reliable.
//!
//! Two scalar modes implement [`JetScalar`]: exact Gaussian rationals, where
//! vanishing means identical zero, and double-double complex floats for
//! speed at large orders, where vanishing means small relative to a
//! tolerance.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::ToPrimitive;

use crate::exact::{rational_sqrt, GaussianRational, Rational};

use super::dd::{Dd, DdComplex};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum JetError {
    #[error("jet order {available} is too low, this evaluation needs order at least {required}")]
    InsufficientOrder { required: u32, available: u32 },
    #[error("square root constant term has no exact root in this scalar mode")]
    SqrtNotRepresentable,
    #[error("square root at a branch point: the constant term vanishes")]
    SqrtAtBranchPoint,
    #[error("scalar division by zero")]
    DivisionByZero,
}

/// Coefficient scalar of a jet. The oracle is generic in this so the same
/// realization code runs in exact and float mode.
pub trait JetScalar: Clone + fmt::Debug + PartialEq + 'static {
    /// Short mode name recorded in reports.
    const MODE: &'static str;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_exact(c: &GaussianRational) -> Self;
    fn from_rational(r: &Rational) -> Self {
        Self::from_exact(&GaussianRational::new(r.clone(), Rational::from_integer(0.into())))
    }
    fn add_assign_ref(&mut self, rhs: &Self);
    fn sub_assign_ref(&mut self, rhs: &Self);
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn div_ref(&self, rhs: &Self) -> Result<Self, JetError>;
    /// Square root when the scalar mode can represent it.
    fn sqrt_ref(&self) -> Result<Self, JetError>;
    /// Rough magnitude for tolerance decisions and report details.
    fn magnitude(&self) -> f64;
    /// Vanishing test; exact mode ignores the tolerance.
    fn is_negligible(&self, tol: f64) -> bool;
}

impl JetScalar for GaussianRational {
    const MODE: &'static str = "exact";

    fn zero() -> Self {
        GaussianRational::zero()
    }

    fn one() -> Self {
        GaussianRational::one()
    }

    fn is_zero(&self) -> bool {
        GaussianRational::is_zero(self)
    }

    fn from_exact(c: &GaussianRational) -> Self {
        c.clone()
    }

    fn add_assign_ref(&mut self, rhs: &Self) {
        *self += rhs;
    }

    fn sub_assign_ref(&mut self, rhs: &Self) {
        *self -= rhs;
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn neg_ref(&self) -> Self {
        -self
    }

    fn div_ref(&self, rhs: &Self) -> Result<Self, JetError> {
        self.try_div(rhs).map_err(|_| JetError::DivisionByZero)
    }

    fn sqrt_ref(&self) -> Result<Self, JetError> {
        if !self.is_real() {
            return Err(JetError::SqrtNotRepresentable);
        }
        let root = rational_sqrt(&self.re).ok_or(JetError::SqrtNotRepresentable)?;
        Ok(GaussianRational::new(root, Rational::from_integer(0.into())))
    }

    fn magnitude(&self) -> f64 {
        self.re.to_f64().map(f64::abs).unwrap_or(f64::INFINITY)
            + self.im.to_f64().map(f64::abs).unwrap_or(f64::INFINITY)
    }

    fn is_negligible(&self, _tol: f64) -> bool {
        self.is_zero()
    }
}

impl JetScalar for DdComplex {
    const MODE: &'static str = "dd";

    fn zero() -> Self {
        DdComplex::ZERO
    }

    fn one() -> Self {
        DdComplex::ONE
    }

    fn is_zero(&self) -> bool {
        DdComplex::is_zero(self)
    }

    fn from_exact(c: &GaussianRational) -> Self {
        DdComplex {
            re: Dd::from_rational(&c.re),
            im: Dd::from_rational(&c.im),
        }
    }

    fn add_assign_ref(&mut self, rhs: &Self) {
        *self = self.add(rhs);
    }

    fn sub_assign_ref(&mut self, rhs: &Self) {
        *self = self.sub(rhs);
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }

    fn neg_ref(&self) -> Self {
        self.neg()
    }

    fn div_ref(&self, rhs: &Self) -> Result<Self, JetError> {
        if rhs.is_zero() {
            return Err(JetError::DivisionByZero);
        }
        Ok(self.div(rhs))
    }

    fn sqrt_ref(&self) -> Result<Self, JetError> {
        Ok(self.sqrt())
    }

    fn magnitude(&self) -> f64 {
        DdComplex::magnitude(self)
    }

    fn is_negligible(&self, tol: f64) -> bool {
        self.magnitude() <= tol
    }
}

/// Shared exponent table for one (variable count, order) shape.
struct JetTable {
    exps: Vec<Vec<u32>>,
    degs: Vec<u32>,
    rank: HashMap<Vec<u32>, usize>,
}

fn build_table(nvars: usize, order: u32) -> JetTable {
    // exponent vectors of exact total degree `left`, the last slot taking
    // whatever remains
    fn rec(exps: &mut Vec<Vec<u32>>, stack: &mut Vec<u32>, var: usize, left: u32) {
        if var + 1 == stack.len() {
            stack[var] = left;
            exps.push(stack.clone());
            stack[var] = 0;
            return;
        }
        for e in 0..=left {
            stack[var] = e;
            rec(exps, stack, var + 1, left - e);
        }
        stack[var] = 0;
    }
    let mut exps: Vec<Vec<u32>> = Vec::new();
    if nvars == 0 {
        exps.push(Vec::new());
    } else {
        let mut stack = vec![0u32; nvars];
        for degree in 0..=order {
            rec(&mut exps, &mut stack, 0, degree);
        }
    }
    let degs: Vec<u32> = exps.iter().map(|e| e.iter().sum()).collect();
    let rank = exps
        .iter()
        .enumerate()
        .map(|(i, e)| (e.clone(), i))
        .collect();
    JetTable { exps, degs, rank }
}

fn table(nvars: usize, order: u32) -> Arc<JetTable> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, u32), Arc<JetTable>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("table cache poisoned");
    guard
        .entry((nvars, order))
        .or_insert_with(|| Arc::new(build_table(nvars, order)))
        .clone()
}

/// Truncated Taylor expansion in `nvars` variables.
#[derive(Clone)]
pub struct Jet<S: JetScalar> {
    nvars: usize,
    order: u32,
    trusted: u32,
    table: Arc<JetTable>,
    coeffs: Vec<S>,
}

impl<S: JetScalar> fmt::Debug for Jet<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Jet(nvars={}, order={}, trusted={}, nonzero={})",
            self.nvars,
            self.order,
            self.trusted,
            self.coeffs.iter().filter(|c| !c.is_zero()).count()
        )
    }
}

impl<S: JetScalar> Jet<S> {
    pub fn zero(nvars: usize, order: u32) -> Self {
        let table = table(nvars, order);
        let coeffs = vec![S::zero(); table.exps.len()];
        Jet {
            nvars,
            order,
            trusted: order,
            table,
            coeffs,
        }
    }

    pub fn constant(nvars: usize, order: u32, value: S) -> Self {
        let mut out = Jet::zero(nvars, order);
        out.coeffs[0] = value;
        out
    }

    /// The coordinate function `base + x_var`.
    pub fn coordinate(nvars: usize, order: u32, var: usize, base: S) -> Self {
        assert!(var < nvars, "variable {var} out of range");
        let mut out = Jet::zero(nvars, order);
        out.coeffs[0] = base;
        if order >= 1 {
            let mut e = vec![0u32; nvars];
            e[var] = 1;
            let pos = out.table.rank[&e];
            out.coeffs[pos] = S::one();
        }
        out
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Coefficients of total degree up to this are reliable.
    pub fn trusted(&self) -> u32 {
        self.trusted
    }

    fn assert_same_shape(&self, rhs: &Self) {
        assert!(
            self.nvars == rhs.nvars && self.order == rhs.order,
            "jet shape mismatch: ({}, {}) vs ({}, {})",
            self.nvars,
            self.order,
            rhs.nvars,
            rhs.order
        );
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.assert_same_shape(rhs);
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(&rhs.coeffs) {
            a.add_assign_ref(b);
        }
        out.trusted = self.trusted.min(rhs.trusted);
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.assert_same_shape(rhs);
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(&rhs.coeffs) {
            a.sub_assign_ref(b);
        }
        out.trusted = self.trusted.min(rhs.trusted);
        out
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = self.clone();
        for a in out.coeffs.iter_mut() {
            *a = a.mul_ref(c);
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        self.assert_same_shape(rhs);
        let mut out = Jet::<S>::zero(self.nvars, self.order);
        out.trusted = self.trusted.min(rhs.trusted);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let deg_i = self.table.degs[i];
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if deg_i + rhs.table.degs[j] > self.order {
                    continue;
                }
                if b.is_zero() {
                    continue;
                }
                let sum: Vec<u32> = self.table.exps[i]
                    .iter()
                    .zip(&rhs.table.exps[j])
                    .map(|(x, y)| x + y)
                    .collect();
                let pos = self.table.rank[&sum];
                let prod = a.mul_ref(b);
                out.coeffs[pos].add_assign_ref(&prod);
            }
        }
        out
    }

    /// Partial derivative in variable `var`. Costs one trusted order.
    pub fn differentiate(&self, var: usize) -> Result<Self, JetError> {
        assert!(var < self.nvars, "variable {var} out of range");
        if self.trusted == 0 {
            return Err(JetError::InsufficientOrder {
                required: self.order + 1,
                available: self.order,
            });
        }
        let mut out = Jet::<S>::zero(self.nvars, self.order);
        out.trusted = self.trusted - 1;
        for (i, exps) in self.table.exps.iter().enumerate() {
            if exps[var] == 0 || self.coeffs[i].is_zero() {
                continue;
            }
            let mut down = exps.clone();
            down[var] -= 1;
            let pos = self.table.rank[&down];
            let factor = S::from_rational(&Rational::from_integer(i64::from(exps[var]).into()));
            out.coeffs[pos].add_assign_ref(&self.coeffs[i].mul_ref(&factor));
        }
        Ok(out)
    }

    /// Square root with the positive branch at the constant term, computed
    /// degree by degree from `s * s = self`.
    pub fn sqrt(&self) -> Result<Self, JetError> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(JetError::SqrtAtBranchPoint);
        }
        let s0 = c0.sqrt_ref()?;
        let mut two_s0 = s0.clone();
        two_s0.add_assign_ref(&s0);
        let mut out = Jet::zero(self.nvars, self.order);
        out.trusted = self.trusted;
        out.coeffs[0] = s0;
        for pos in 1..self.coeffs.len() {
            let alpha = &self.table.exps[pos];
            let deg_alpha = self.table.degs[pos];
            let mut acc = self.coeffs[pos].clone();
            // subtract the cross terms s_beta s_gamma with both parts proper
            for b in 1..self.coeffs.len() {
                if self.table.degs[b] >= deg_alpha || out.coeffs[b].is_zero() {
                    continue;
                }
                let gamma: Option<Vec<u32>> = self.table.exps[b]
                    .iter()
                    .zip(alpha.iter())
                    .map(|(x, a)| a.checked_sub(*x))
                    .collect();
                let Some(gamma) = gamma else { continue };
                if gamma.iter().sum::<u32>() == 0 {
                    continue;
                }
                let g_pos = self.table.rank[&gamma];
                acc.sub_assign_ref(&out.coeffs[b].mul_ref(&out.coeffs[g_pos]));
            }
            out.coeffs[pos] = acc.div_ref(&two_s0)?;
        }
        Ok(out)
    }

    pub fn coeff(&self, exps: &[u32]) -> &S {
        let pos = self.table.rank[exps];
        &self.coeffs[pos]
    }

    pub fn set_coeff(&mut self, exps: &[u32], value: S) {
        let pos = self.table.rank[exps];
        self.coeffs[pos] = value;
    }

    /// Largest coefficient magnitude among the trusted orders.
    pub fn max_magnitude(&self) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(i, _)| self.table.degs[*i] <= self.trusted)
            .map(|(_, c)| c.magnitude())
            .fold(0.0, f64::max)
    }

    /// True when every trusted coefficient vanishes (to `tol` in float mode).
    pub fn is_negligible(&self, tol: f64) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(i, _)| self.table.degs[*i] <= self.trusted)
            .all(|(_, c)| c.is_negligible(tol))
    }
}
