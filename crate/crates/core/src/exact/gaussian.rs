//! Arbitrary-precision Gaussian rationals a + b*i with a, b in Q.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ExactError;

/// Exact rational number, re-exported base type for all real coefficients.
pub type Rational = BigRational;

/// Exact element of Q(i). Both components are kept in lowest terms by the
/// underlying rational type.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn zero() -> Self {
        GaussianRational::new(Rational::zero(), Rational::zero())
    }

    pub fn one() -> Self {
        GaussianRational::new(Rational::one(), Rational::zero())
    }

    /// The imaginary unit i.
    pub fn i() -> Self {
        GaussianRational::new(Rational::zero(), Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        GaussianRational::new(Rational::from_integer(BigInt::from(n)), Rational::zero())
    }

    /// num/den as a real Gaussian rational. Panics if den == 0.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        GaussianRational::new(
            Rational::new(BigInt::from(num), BigInt::from(den)),
            Rational::zero(),
        )
    }

    /// (num/den)*i.
    pub fn from_ratio_i(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        GaussianRational::new(
            Rational::zero(),
            Rational::new(BigInt::from(num), BigInt::from(den)),
        )
    }

    pub fn from_rational(r: Rational) -> Self {
        GaussianRational::new(r, Rational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational::new(self.re.clone(), -self.im.clone())
    }

    /// |z|^2 = re^2 + im^2, a non-negative rational.
    pub fn norm_sq(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse; structured error on zero.
    pub fn try_inv(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero { op: "gaussian rational inverse" });
        }
        let n = self.norm_sq();
        Ok(GaussianRational::new(&self.re / &n, -&self.im / &n))
    }

    pub fn try_div(&self, rhs: &Self) -> Result<Self, ExactError> {
        Ok(self * &rhs.try_inv()?)
    }

    pub fn pow(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = GaussianRational::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            n >>= 1;
        }
        acc
    }
}

fn fmt_rational(r: &Rational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.is_integer() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for GaussianRational {
    /// Canonical form: `0`, `3/2`, `i`, `-2i`, `3/2+1/2i`, `1-i`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if !self.re.is_zero() {
            fmt_rational(&self.re, f)?;
            if self.im.is_zero() {
                return Ok(());
            }
            if self.im.is_positive() {
                write!(f, "+")?;
            }
        }
        if self.im.is_one() {
            return write!(f, "i");
        }
        if self.im == -Rational::one() {
            return write!(f, "-i");
        }
        fmt_rational(&self.im, f)?;
        write!(f, "i")
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: GaussianRational) -> GaussianRational {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: &GaussianRational) -> GaussianRational {
                (&self).$method(rhs)
            }
        }
        impl $trait<GaussianRational> for &GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: GaussianRational) -> GaussianRational {
                self.$method(&rhs)
            }
        }
    };
}

impl Add<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}
forward_binop!(Add, add);

impl Sub<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}
forward_binop!(Sub, sub);

impl Mul<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}
forward_binop!(Mul, mul);

impl Div<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    /// Panics on a zero divisor; use `try_div` where the divisor may vanish.
    fn div(self, rhs: &GaussianRational) -> GaussianRational {
        self.try_div(rhs).expect("division by zero in Q(i)")
    }
}
forward_binop!(Div, div);

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re.clone(), -self.im.clone())
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        -&self
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, rhs: &GaussianRational) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&GaussianRational> for GaussianRational {
    fn mul_assign(&mut self, rhs: &GaussianRational) {
        *self = (&*self) * rhs;
    }
}

/// Exact square root of a non-negative rational, if it is a perfect square.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    if r.is_zero() {
        return Some(Rational::zero());
    }
    let num = r.numer();
    let den = r.denom();
    let sn = num.sqrt();
    let sd = den.sqrt();
    if &(&sn * &sn) == num && &(&sd * &sd) == den {
        Some(Rational::new(sn, sd))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: i64, d: i64) -> GaussianRational {
        GaussianRational::from_ratio(n, d)
    }

    #[test]
    fn i_squares_to_minus_one() {
        let i = GaussianRational::i();
        assert_eq!(&i * &i, GaussianRational::from_int(-1));
    }

    #[test]
    fn inverse_of_zero_is_error() {
        assert_eq!(
            GaussianRational::zero().try_inv(),
            Err(ExactError::DivisionByZero { op: "gaussian rational inverse" })
        );
    }

    #[test]
    fn complex_inverse() {
        // (1+i)^-1 = (1-i)/2
        let z = &GaussianRational::one() + &GaussianRational::i();
        let inv = z.try_inv().unwrap();
        assert_eq!(inv, GaussianRational::new(
            Rational::new(BigInt::from(1), BigInt::from(2)),
            Rational::new(BigInt::from(-1), BigInt::from(2)),
        ));
        assert!((z * inv).is_one());
    }

    #[test]
    fn display_canonical() {
        assert_eq!(g(0, 1).to_string(), "0");
        assert_eq!(g(3, 2).to_string(), "3/2");
        assert_eq!(GaussianRational::i().to_string(), "i");
        assert_eq!((-GaussianRational::i()).to_string(), "-i");
        assert_eq!(
            (g(3, 2) + GaussianRational::from_ratio_i(1, 2)).to_string(),
            "3/2+1/2i"
        );
        assert_eq!(
            (g(1, 1) - GaussianRational::i()).to_string(),
            "1-i"
        );
        assert_eq!(GaussianRational::from_ratio_i(-2, 1).to_string(), "-2i");
    }

    #[test]
    fn sqrt_of_perfect_square() {
        let r = Rational::new(BigInt::from(25), BigInt::from(16));
        assert_eq!(rational_sqrt(&r), Some(Rational::new(BigInt::from(5), BigInt::from(4))));
        let r = Rational::new(BigInt::from(2), BigInt::from(1));
        assert_eq!(rational_sqrt(&r), None);
        assert_eq!(rational_sqrt(&(-Rational::one())), None);
    }
}
