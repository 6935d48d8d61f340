//! Double-double floating point: an unevaluated sum of two f64 values
//! giving roughly 106 bits of significand, in the same ballpark as a
//! quad-precision float. Used by the jet oracle's fast mode; the exact
//! rational mode never touches this.

use num_rational::BigRational;
use num_traits::ToPrimitive;

/// hi + lo with |lo| at most half an ulp of hi.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dd {
    hi: f64,
    lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let err = b - (s - a);
    (s, err)
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let err = a.mul_add(b, -p);
    (p, err)
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn from_rational(r: &BigRational) -> Dd {
        let hi = r.to_f64().unwrap_or(f64::NAN);
        if !hi.is_finite() {
            return Dd { hi, lo: 0.0 };
        }
        let back = BigRational::from_float(hi).expect("finite float");
        let lo = (r - back).to_f64().unwrap_or(0.0);
        let (hi, lo) = quick_two_sum(hi, lo);
        Dd { hi, lo }
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn is_zero(&self) -> bool {
        self.hi == 0.0 && self.lo == 0.0
    }

    pub fn abs(&self) -> Dd {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            self.neg()
        } else {
            *self
        }
    }

    pub fn neg(&self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    pub fn add(&self, rhs: &Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, rhs.hi);
        let (t1, t2) = two_sum(self.lo, rhs.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        let (hi, lo) = quick_two_sum(s1, s2 + t2);
        Dd { hi, lo }
    }

    pub fn sub(&self, rhs: &Dd) -> Dd {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Dd) -> Dd {
        let (p1, p2) = two_prod(self.hi, rhs.hi);
        let p2 = p2 + self.hi * rhs.lo + self.lo * rhs.hi;
        let (hi, lo) = quick_two_sum(p1, p2);
        Dd { hi, lo }
    }

    pub fn div(&self, rhs: &Dd) -> Dd {
        let q1 = self.hi / rhs.hi;
        let r = self.sub(&rhs.mul(&Dd::from_f64(q1)));
        let q2 = r.hi / rhs.hi;
        let r = r.sub(&rhs.mul(&Dd::from_f64(q2)));
        let q3 = r.hi / rhs.hi;
        let (s, e) = quick_two_sum(q1, q2);
        let (hi, lo) = quick_two_sum(s, e + q3);
        Dd { hi, lo }
    }

    /// Principal square root; NaN components for negative input.
    pub fn sqrt(&self) -> Dd {
        if self.is_zero() {
            return Dd::ZERO;
        }
        let mut s = Dd::from_f64(self.hi.sqrt());
        // One Newton step doubles the 53 correct bits; the second is slack.
        for _ in 0..2 {
            let avg = s.add(&self.div(&s));
            s = avg.mul(&Dd::from_f64(0.5));
        }
        s
    }
}

/// Complex number over [`Dd`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DdComplex {
    pub re: Dd,
    pub im: Dd,
}

impl DdComplex {
    pub const ZERO: DdComplex = DdComplex {
        re: Dd::ZERO,
        im: Dd::ZERO,
    };
    pub const ONE: DdComplex = DdComplex {
        re: Dd::ONE,
        im: Dd::ZERO,
    };

    pub fn real(r: Dd) -> DdComplex {
        DdComplex { re: r, im: Dd::ZERO }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add(&self, rhs: &DdComplex) -> DdComplex {
        DdComplex {
            re: self.re.add(&rhs.re),
            im: self.im.add(&rhs.im),
        }
    }

    pub fn sub(&self, rhs: &DdComplex) -> DdComplex {
        DdComplex {
            re: self.re.sub(&rhs.re),
            im: self.im.sub(&rhs.im),
        }
    }

    pub fn neg(&self) -> DdComplex {
        DdComplex {
            re: self.re.neg(),
            im: self.im.neg(),
        }
    }

    pub fn mul(&self, rhs: &DdComplex) -> DdComplex {
        DdComplex {
            re: self.re.mul(&rhs.re).sub(&self.im.mul(&rhs.im)),
            im: self.re.mul(&rhs.im).add(&self.im.mul(&rhs.re)),
        }
    }

    pub fn div(&self, rhs: &DdComplex) -> DdComplex {
        let norm = rhs.re.mul(&rhs.re).add(&rhs.im.mul(&rhs.im));
        let num = self.mul(&DdComplex {
            re: rhs.re,
            im: rhs.im.neg(),
        });
        DdComplex {
            re: num.re.div(&norm),
            im: num.im.div(&norm),
        }
    }

    /// Principal branch square root.
    pub fn sqrt(&self) -> DdComplex {
        if self.im.is_zero() {
            if self.re.hi >= 0.0 {
                return DdComplex::real(self.re.sqrt());
            }
            return DdComplex {
                re: Dd::ZERO,
                im: self.re.neg().sqrt(),
            };
        }
        let mag = self
            .re
            .mul(&self.re)
            .add(&self.im.mul(&self.im))
            .sqrt();
        let half = Dd::from_f64(0.5);
        let u = mag.add(&self.re).mul(&half).sqrt();
        let v = self.im.div(&u.mul(&Dd::from_f64(2.0)));
        DdComplex { re: u, im: v }
    }

    pub fn magnitude(&self) -> f64 {
        self.re.hi.abs() + self.im.hi.abs()
    }
}
