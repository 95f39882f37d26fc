use crate::Q;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

pub type BigQ = num_rational::BigRational;

pub fn big(x: Q) -> BigQ {
    BigQ::new(BigInt::from(*x.numer()), BigInt::from(*x.denom()))
}

/// An element a + bi of ℚ(i).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussQ {
    pub re: BigQ,
    pub im: BigQ,
}

impl GaussQ {
    pub fn new(re: BigQ, im: BigQ) -> Self {
        GaussQ { re, im }
    }

    pub fn zero() -> Self {
        GaussQ { re: BigQ::zero(), im: BigQ::zero() }
    }

    pub fn one() -> Self {
        GaussQ { re: BigQ::one(), im: BigQ::zero() }
    }

    pub fn i() -> Self {
        GaussQ { re: BigQ::zero(), im: BigQ::one() }
    }

    pub fn from_q(x: Q) -> Self {
        GaussQ { re: big(x), im: BigQ::zero() }
    }

    pub fn from_big(x: BigQ) -> Self {
        GaussQ { re: x, im: BigQ::zero() }
    }

    pub fn from_parts(re: Q, im: Q) -> Self {
        GaussQ { re: big(re), im: big(im) }
    }

    pub fn from_int(n: i64) -> Self {
        GaussQ::from_q(Q::from_integer(n))
    }

    /// i^k.
    pub fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => GaussQ::one(),
            1 => GaussQ::i(),
            2 => -GaussQ::one(),
            _ => -GaussQ::i(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.re.is_integer() && self.im.is_integer()
    }

    pub fn conj(&self) -> Self {
        GaussQ { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn norm2(&self) -> BigQ {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Self {
        let n = self.norm2();
        assert!(!n.is_zero(), "inverse of zero");
        GaussQ { re: &self.re / &n, im: -&self.im / &n }
    }

    pub fn scale(&self, c: &BigQ) -> Self {
        GaussQ { re: &self.re * c, im: &self.im * c }
    }

    /// Multiplies by i^k without general multiplication.
    pub fn mul_i_pow(&self, k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => self.clone(),
            1 => GaussQ { re: -self.im.clone(), im: self.re.clone() },
            2 => -self.clone(),
            _ => GaussQ { re: self.im.clone(), im: -self.re.clone() },
        }
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64().unwrap_or(f64::NAN), self.im.to_f64().unwrap_or(f64::NAN))
    }
}

impl<'a> Add<&'a GaussQ> for &'a GaussQ {
    type Output = GaussQ;
    fn add(self, o: &GaussQ) -> GaussQ {
        GaussQ { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl<'a> Sub<&'a GaussQ> for &'a GaussQ {
    type Output = GaussQ;
    fn sub(self, o: &GaussQ) -> GaussQ {
        GaussQ { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl<'a> Mul<&'a GaussQ> for &'a GaussQ {
    type Output = GaussQ;
    fn mul(self, o: &GaussQ) -> GaussQ {
        if self.im.is_zero() && o.im.is_zero() {
            return GaussQ { re: &self.re * &o.re, im: BigQ::zero() };
        }
        GaussQ {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl Add for GaussQ {
    type Output = GaussQ;
    fn add(self, o: GaussQ) -> GaussQ {
        &self + &o
    }
}

impl Sub for GaussQ {
    type Output = GaussQ;
    fn sub(self, o: GaussQ) -> GaussQ {
        &self - &o
    }
}

impl Mul for GaussQ {
    type Output = GaussQ;
    fn mul(self, o: GaussQ) -> GaussQ {
        &self * &o
    }
}

impl Neg for GaussQ {
    type Output = GaussQ;
    fn neg(self) -> GaussQ {
        GaussQ { re: -self.re, im: -self.im }
    }
}

impl AddAssign<&GaussQ> for GaussQ {
    fn add_assign(&mut self, o: &GaussQ) {
        self.re += &o.re;
        self.im += &o.im;
    }
}

impl SubAssign<&GaussQ> for GaussQ {
    fn sub_assign(&mut self, o: &GaussQ) {
        self.re -= &o.re;
        self.im -= &o.im;
    }
}

impl fmt::Display for GaussQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}i", self.im),
            (false, false) => {
                let sign = if self.im.is_negative() { "-" } else { "+" };
                write!(f, "{}{}{}i", self.re, sign, self.im.abs())
            }
        }
    }
}

/// Exact square root of a non-negative rational, if it is a perfect square.
pub fn rational_sqrt(x: &BigQ) -> Option<BigQ> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    if &(&n * &n) == x.numer() && &(&d * &d) == x.denom() {
        Some(BigQ::new(n, d))
    } else {
        None
    }
}
