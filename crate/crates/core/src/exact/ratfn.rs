//! Rational functions of t over Q(i), kept in a canonical reduced form so
//! that structural equality decides mathematical equality.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{ExactError, GaussianRational, LaurentPoly};

/// Canonical invariants: for nonzero values the denominator is an ordinary
/// polynomial with constant term 1, coprime to the ordinary part of the
/// numerator; any monomial factor t^k lives in the numerator. Zero is 0/1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: LaurentPoly,
    den: LaurentPoly,
}

/// Dense ordinary polynomial, ascending coefficients.
type Dense = Vec<GaussianRational>;

fn trim(mut p: Dense) -> Dense {
    while p.last().is_some_and(GaussianRational::is_zero) {
        p.pop();
    }
    p
}

fn laurent_to_dense(p: &LaurentPoly) -> (Dense, i64) {
    let min = p.min_exp().expect("nonzero poly");
    let max = p.max_exp().unwrap();
    let mut v = vec![GaussianRational::zero(); (max - min + 1) as usize];
    for (e, c) in p.iter() {
        v[(e - min) as usize] = c.clone();
    }
    (v, min)
}

fn dense_to_laurent(p: &Dense, shift: i64) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    for (k, c) in p.iter().enumerate() {
        out.add_term(shift + k as i64, c);
    }
    out
}

fn dense_rem(a: &Dense, b: &Dense) -> Dense {
    let mut r = a.clone();
    let db = b.len() - 1;
    let lead = b[db].clone();
    while r.len() >= b.len() && !r.is_empty() {
        let dr = r.len() - 1;
        let f = &r[dr] / &lead;
        let shift = dr - db;
        for k in 0..=db {
            let sub = &b[k] * &f;
            r[shift + k] -= &sub;
        }
        r = trim(r);
    }
    r
}

fn dense_gcd(a: &Dense, b: &Dense) -> Dense {
    let mut x = trim(a.clone());
    let mut y = trim(b.clone());
    while !y.is_empty() {
        let r = dense_rem(&x, &y);
        x = y;
        y = r;
    }
    // Monic normalization for a deterministic representative.
    if let Some(lead) = x.last().cloned() {
        for c in &mut x {
            *c = &*c / &lead;
        }
    }
    x
}

fn dense_div_exact(a: &Dense, b: &Dense) -> Dense {
    let mut r = a.clone();
    let db = b.len() - 1;
    let lead = b[db].clone();
    let mut q = vec![GaussianRational::zero(); a.len().saturating_sub(db)];
    while r.len() >= b.len() && !r.is_empty() {
        let dr = r.len() - 1;
        let f = &r[dr] / &lead;
        let shift = dr - db;
        q[shift] = f.clone();
        for k in 0..=db {
            let sub = &b[k] * &f;
            r[shift + k] -= &sub;
        }
        r = trim(r);
    }
    debug_assert!(r.is_empty(), "division was not exact");
    q
}

impl RationalFunction {
    /// Build num/den and reduce to canonical form. Zero denominator is a
    /// structured error.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self, ExactError> {
        if den.is_zero() {
            return Err(ExactError::DivisionByZero { op: "rational function denominator" });
        }
        if num.is_zero() {
            return Ok(RationalFunction { num: LaurentPoly::zero(), den: LaurentPoly::one() });
        }
        let (n, sn) = laurent_to_dense(&num);
        let (d, sd) = laurent_to_dense(&den);
        let g = dense_gcd(&n, &d);
        let (mut n, mut d) = if g.len() > 1 {
            (dense_div_exact(&n, &g), dense_div_exact(&d, &g))
        } else {
            (n, d)
        };
        // Denominator constant term becomes 1 (it is nonzero by the shift
        // construction); fold the scaling into the numerator.
        let c0 = d[0].clone();
        debug_assert!(!c0.is_zero());
        for c in &mut d {
            *c = &*c / &c0;
        }
        for c in &mut n {
            *c = &*c / &c0;
        }
        Ok(RationalFunction {
            num: dense_to_laurent(&n, sn - sd),
            den: dense_to_laurent(&d, 0),
        })
    }

    pub fn from_laurent(p: LaurentPoly) -> Self {
        RationalFunction { num: p, den: LaurentPoly::one() }
    }

    pub fn constant(c: GaussianRational) -> Self {
        RationalFunction::from_laurent(LaurentPoly::constant(c))
    }

    pub fn zero() -> Self {
        RationalFunction::from_laurent(LaurentPoly::zero())
    }

    pub fn one() -> Self {
        RationalFunction::from_laurent(LaurentPoly::one())
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    /// True when the denominator is 1, i.e. the value lies in the Laurent ring.
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn try_inv(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero { op: "rational function inverse" });
        }
        RationalFunction::new(self.den.clone(), self.num.clone())
    }

    pub fn try_div(&self, rhs: &Self) -> Result<Self, ExactError> {
        if rhs.is_zero() {
            return Err(ExactError::DivisionByZero { op: "rational function division" });
        }
        RationalFunction::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    /// Evaluate at a numeric t; poles surface as structured errors.
    pub fn evaluate(&self, t0: &GaussianRational) -> Result<GaussianRational, ExactError> {
        let d = self.den.evaluate(t0)?;
        if d.is_zero() {
            return Err(ExactError::Pole { at: t0.to_string() });
        }
        let n = self.num.evaluate(t0)?;
        n.try_div(&d)
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        RationalFunction::new(self.num.scale(c), self.den.clone())
            .expect("denominator unchanged")
    }
}

impl Add<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RationalFunction::new(num, &self.den * &rhs.den).expect("nonzero denominators")
    }
}

impl Sub<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &-rhs
    }
}

impl Mul<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den)
            .expect("nonzero denominators")
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait for RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}
