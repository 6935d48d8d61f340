//! Laurent polynomials in t with Gaussian-rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{ExactError, GaussianRational};

/// Sparse Laurent polynomial sum c_e * t^e over integer exponents e.
/// Invariant: no stored coefficient is zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, GaussianRational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        LaurentPoly::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        let mut p = LaurentPoly::zero();
        if !c.is_zero() {
            p.terms.insert(0, c);
        }
        p
    }

    /// c * t^e.
    pub fn term(c: GaussianRational, e: i64) -> Self {
        let mut p = LaurentPoly::zero();
        if !c.is_zero() {
            p.terms.insert(e, c);
        }
        p
    }

    /// t^e.
    pub fn t_pow(e: i64) -> Self {
        LaurentPoly::term(GaussianRational::one(), e)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, e: i64) -> GaussianRational {
        self.terms.get(&e).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&i64, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, e: i64, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(GaussianRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        let mut out = LaurentPoly::zero();
        for (e, a) in &self.terms {
            out.terms.insert(*e, a * c);
        }
        out
    }

    /// Multiply by t^k (exponent shift).
    pub fn shift(&self, k: i64) -> Self {
        let mut out = LaurentPoly::zero();
        for (e, a) in &self.terms {
            out.terms.insert(e + k, a.clone());
        }
        out
    }

    /// Substitute a numeric value for t. Fails when t0 = 0 and a negative
    /// (or any non-constant, for zero) power is present.
    pub fn evaluate(&self, t0: &GaussianRational) -> Result<GaussianRational, ExactError> {
        let mut acc = GaussianRational::zero();
        for (e, c) in &self.terms {
            let p = if *e >= 0 {
                t0.pow(*e as u32)
            } else {
                if t0.is_zero() {
                    return Err(ExactError::ZeroToNegativePower { exp: *e });
                }
                t0.try_inv()?.pow((-e) as u32)
            };
            acc += &(c * &p);
        }
        Ok(acc)
    }

    /// Exact division; `None` when the divisor does not divide self in the
    /// Laurent ring.
    pub fn div_exact(&self, rhs: &LaurentPoly) -> Option<LaurentPoly> {
        if rhs.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(LaurentPoly::zero());
        }
        // Long division from the top exponent down. In the Laurent ring any
        // monomial is invertible, so only the dense-ordinary part matters.
        let mut rem = self.clone();
        let mut quot = LaurentPoly::zero();
        let d_max = rhs.max_exp().unwrap();
        let d_lead = rhs.coefficient(d_max);
        // Bounded by the exponent span; each step strictly lowers the top
        // exponent of the remainder.
        loop {
            if rem.is_zero() {
                return Some(quot);
            }
            let r_max = rem.max_exp().unwrap();
            // Degree guard: if the remaining span is smaller than the
            // divisor's span the division cannot complete.
            let r_min = rem.min_exp().unwrap();
            let d_min = rhs.min_exp().unwrap();
            if r_max - r_min < d_max - d_min {
                return None;
            }
            let factor = rem.coefficient(r_max).try_div(&d_lead).ok()?;
            let shift = r_max - d_max;
            quot.add_term(shift, &factor);
            let sub = rhs.shift(shift).scale(&factor);
            rem = &rem - &sub;
        }
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c);
        }
        out
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, &-c);
        }
        out
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, &(c1 * c2));
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e, c) in &self.terms {
            out.terms.insert(*e, -c);
        }
        out
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for LaurentPoly {
    /// Descending exponents, e.g. `t^2 + 2 + t^-2`. Coefficients that are
    /// not real or not +-1 are parenthesised.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let (lead_sign, body) = coeff_body(c, *e);
            if first {
                if lead_sign {
                    write!(f, "-")?;
                }
                first = false;
            } else if lead_sign {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            write!(f, "{body}")?;
        }
        Ok(())
    }
}

/// Returns (negative-sign flag, rendered term body without sign).
fn coeff_body(c: &GaussianRational, e: i64) -> (bool, String) {
    let (neg, mag) = if c.is_real() && c.re < num_traits::Zero::zero() {
        (true, -c)
    } else {
        (false, c.clone())
    };
    let pow = match e {
        0 => String::new(),
        1 => "t".to_string(),
        _ => format!("t^{e}"),
    };
    let body = if pow.is_empty() {
        format!("{mag}")
    } else if mag.is_one() {
        pow
    } else if mag.is_real() || mag.re.is_integer() && mag.im.is_integer() && mag.re == num_traits::Zero::zero() {
        format!("{mag}*{pow}")
    } else {
        format!("({mag})*{pow}")
    };
    (neg, body)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tp(e: i64) -> LaurentPoly {
        LaurentPoly::t_pow(e)
    }

    #[test]
    fn square_of_t_plus_tinv() {
        // (t + t^-1)^2 = t^2 + 2 + t^-2
        let s = &tp(1) + &tp(-1);
        let sq = &s * &s;
        let expect = &(&tp(2) + &LaurentPoly::constant(GaussianRational::from_int(2))) + &tp(-2);
        assert_eq!(sq, expect);
    }

    #[test]
    fn cancellation_removes_terms() {
        let s = &tp(3) - &tp(3);
        assert!(s.is_zero());
        assert_eq!(s.num_terms(), 0);
    }

    #[test]
    fn exact_division_geometric() {
        // (t^2 - t^-2) / (t - t^-1) = t + t^-1
        let num = &tp(2) - &tp(-2);
        let den = &tp(1) - &tp(-1);
        assert_eq!(num.div_exact(&den), Some(&tp(1) + &tp(-1)));
        // t^2 + 1 does not divide by t - 1
        let bad = &tp(2) + &LaurentPoly::one();
        assert_eq!(bad.div_exact(&(&tp(1) - &LaurentPoly::one())), None);
    }

    #[test]
    fn evaluate_at_two() {
        // t^2 + t^-2 at t = 2 -> 4 + 1/4 = 17/4
        let p = &tp(2) + &tp(-2);
        assert_eq!(
            p.evaluate(&GaussianRational::from_int(2)).unwrap(),
            GaussianRational::from_ratio(17, 4)
        );
        assert!(matches!(
            tp(-1).evaluate(&GaussianRational::zero()),
            Err(ExactError::ZeroToNegativePower { .. })
        ));
    }

    #[test]
    fn display_form() {
        let p = &(&tp(2) + &LaurentPoly::constant(GaussianRational::from_int(2))) + &tp(-2);
        assert_eq!(p.to_string(), "t^2 + 2 + t^-2");
        let q = &tp(1) - &LaurentPoly::constant(GaussianRational::from_int(1));
        assert_eq!(q.to_string(), "t - 1");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
    }
}
