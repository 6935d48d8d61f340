//! Noncommutative polynomials: exact linear combinations of normal words.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use crate::exact::GaussianRational;

use super::{GeneratorId, Monomial};

/// Linear combination of normal-ordered monomials with Gaussian-rational
/// coefficients. Invariant: no stored coefficient is zero. Addition and
/// scaling are presentation-independent; products live on
/// [`super::AlgebraPresentation`] because they need the bracket table.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NcPolynomial {
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl NcPolynomial {
    pub fn zero() -> Self {
        NcPolynomial { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        NcPolynomial::scalar(GaussianRational::one())
    }

    pub fn scalar(c: GaussianRational) -> Self {
        let mut p = NcPolynomial::zero();
        p.add_term(Monomial::one(), &c);
        p
    }

    pub fn from_gen(g: GeneratorId) -> Self {
        let mut p = NcPolynomial::zero();
        p.add_term(Monomial::from_gen(g), &GaussianRational::one());
        p
    }

    pub fn monomial(m: Monomial, c: GaussianRational) -> Self {
        let mut p = NcPolynomial::zero();
        p.add_term(m, &c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> GaussianRational {
        self.terms.get(m).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, rhs: &NcPolynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c);
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return NcPolynomial::zero();
        }
        let mut out = NcPolynomial::zero();
        for (m, a) in &self.terms {
            out.terms.insert(m.clone(), a * c);
        }
        out
    }

    pub fn scale_int(&self, n: i64) -> Self {
        self.scale(&GaussianRational::from_int(n))
    }

    /// Multiply every term by Y^y * Z^z (central, so order-free).
    pub fn bump_central(&self, y: u32, z: u32) -> Self {
        let mut out = NcPolynomial::zero();
        for (m, c) in &self.terms {
            out.terms.insert(m.bump_central(y, z), c.clone());
        }
        out
    }

    /// Largest Y-exponent over all terms.
    pub fn max_y_exp(&self) -> u32 {
        self.terms.keys().map(Monomial::y_exp).max().unwrap_or(0)
    }
}

impl Add<&NcPolynomial> for &NcPolynomial {
    type Output = NcPolynomial;
    fn add(self, rhs: &NcPolynomial) -> NcPolynomial {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }
}

impl Sub<&NcPolynomial> for &NcPolynomial {
    type Output = NcPolynomial;
    fn sub(self, rhs: &NcPolynomial) -> NcPolynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), &-c);
        }
        out
    }
}

impl Neg for &NcPolynomial {
    type Output = NcPolynomial;
    fn neg(self) -> NcPolynomial {
        let mut out = NcPolynomial::zero();
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), -c);
        }
        out
    }
}

impl AddAssign<&NcPolynomial> for NcPolynomial {
    fn add_assign(&mut self, rhs: &NcPolynomial) {
        NcPolynomial::add_assign(self, rhs);
    }
}

impl SubAssign<&NcPolynomial> for NcPolynomial {
    fn sub_assign(&mut self, rhs: &NcPolynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), &-c);
        }
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait for NcPolynomial {
            type Output = NcPolynomial;
            fn $method(self, rhs: NcPolynomial) -> NcPolynomial {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);

impl Neg for NcPolynomial {
    type Output = NcPolynomial;
    fn neg(self) -> NcPolynomial {
        -&self
    }
}

impl fmt::Display for NcPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            // Pull a negative sign out of real or pure-imaginary
            // coefficients for readable joiners; mixed ones print in full.
            let zero = num_traits::Zero::zero();
            let (neg, mag) = if c.is_real() && c.re < zero
                || c.re == zero && c.im < zero
            {
                (true, -c)
            } else {
                (false, c.clone())
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let needs_parens = !mag.is_real() && !mag.re.eq(&num_traits::Zero::zero());
            if m.is_unit() {
                if needs_parens {
                    write!(f, "({mag})")?;
                } else {
                    write!(f, "{mag}")?;
                }
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else if needs_parens {
                write!(f, "({mag})*{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn addition_cancels() {
        let p = NcPolynomial::from_gen(GeneratorId::p(0));
        let s = &p - &p;
        assert!(s.is_zero());
    }

    #[test]
    fn display_forms() {
        let p0 = NcPolynomial::from_gen(GeneratorId::p(0));
        let l01 = NcPolynomial::from_gen(GeneratorId::l(0, 1));
        let expr = &(&p0.scale_int(2) - &l01) + &NcPolynomial::scalar(GaussianRational::i());
        assert_eq!(expr.to_string(), "i + 2*P0 - L01");
        let iy = NcPolynomial::monomial(Monomial::from_gen(GeneratorId::Y), GaussianRational::i());
        assert_eq!(iy.to_string(), "i*Y");
        let neg = NcPolynomial::monomial(
            Monomial::from_gen(GeneratorId::Y),
            GaussianRational::from_ratio_i(-2, 1),
        );
        assert_eq!((&p0 + &neg).to_string(), "P0 - 2i*Y");
    }
}
