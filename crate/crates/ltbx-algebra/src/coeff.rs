//! Exact Gaussian-rational coefficients: complex numbers with `BigRational`
//! real and imaginary parts. Everything in this crate is computed over this
//! ring; no floating point enters until numeric evaluation in downstream
//! crates.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A Gaussian rational `re + im*i` with exact rational parts.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GaussRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRat {
    pub fn zero() -> Self {
        GaussRat {
            re: BigRational::zero(),
            im: BigRational::zero(),
        }
    }

    pub fn one() -> Self {
        GaussRat {
            re: BigRational::one(),
            im: BigRational::zero(),
        }
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussRat {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        GaussRat {
            re: BigRational::from_integer(BigInt::from(n)),
            im: BigRational::zero(),
        }
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        GaussRat {
            re: BigRational::new(BigInt::from(num), BigInt::from(den)),
            im: BigRational::zero(),
        }
    }

    /// `re + im*i` from integer parts.
    pub fn from_parts(re: i64, im: i64) -> Self {
        GaussRat {
            re: BigRational::from_integer(BigInt::from(re)),
            im: BigRational::from_integer(BigInt::from(im)),
        }
    }

    pub fn from_big(re: BigRational, im: BigRational) -> Self {
        GaussRat { re, im }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussRat {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// Multiply by the imaginary unit.
    pub fn times_i(&self) -> Self {
        GaussRat {
            re: -self.im.clone(),
            im: self.re.clone(),
        }
    }

    /// Lossy conversion for numeric evaluation. Exact values of interest are
    /// small ratios, so `to_f64` never fails in practice; fall back to a
    /// num/den division if the direct conversion overflows.
    pub fn to_f64_pair(&self) -> (f64, f64) {
        let conv = |r: &BigRational| {
            r.to_f64().unwrap_or_else(|| {
                let n = r.numer().to_f64().unwrap_or(f64::NAN);
                let d = r.denom().to_f64().unwrap_or(f64::NAN);
                n / d
            })
        };
        (conv(&self.re), conv(&self.im))
    }
}

impl Add for &GaussRat {
    type Output = GaussRat;
    fn add(self, rhs: &GaussRat) -> GaussRat {
        GaussRat {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Sub for &GaussRat {
    type Output = GaussRat;
    fn sub(self, rhs: &GaussRat) -> GaussRat {
        GaussRat {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Mul for &GaussRat {
    type Output = GaussRat;
    fn mul(self, rhs: &GaussRat) -> GaussRat {
        GaussRat {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Neg for &GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn rat(r: &BigRational) -> String {
            if r.denom().is_one() {
                format!("{}", r.numer())
            } else {
                format!("{}/{}", r.numer(), r.denom())
            }
        }
        if self.im.is_zero() {
            write!(f, "{}", rat(&self.re))
        } else if self.re.is_zero() {
            write!(f, "{}i", rat(&self.im))
        } else if self.im.is_negative() {
            write!(f, "({}{}i)", rat(&self.re), rat(&self.im))
        } else {
            write!(f, "({}+{}i)", rat(&self.re), rat(&self.im))
        }
    }
}
