use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use serde::{Serialize, Serializer};

use super::rational::Q;
use crate::error::{Error, Result};

/// Exact element `re + im·i` of the field Q(i).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: Q,
    pub im: Q,
}

pub type GR = GaussianRational;

impl GaussianRational {
    pub fn new(re: Q, im: Q) -> Self {
        GaussianRational { re, im }
    }

    pub fn zero() -> Self {
        Self::new(Q::ZERO, Q::ZERO)
    }

    pub fn one() -> Self {
        Self::new(Q::ONE, Q::ZERO)
    }

    pub fn i() -> Self {
        Self::new(Q::ZERO, Q::ONE)
    }

    pub fn int(n: i64) -> Self {
        Self::new(Q::int(n), Q::ZERO)
    }

    pub fn ints(re: i64, im: i64) -> Self {
        Self::new(Q::int(re), Q::int(im))
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Self::new(Q::new(n, d), Q::ZERO)
    }

    pub fn real(q: Q) -> Self {
        Self::new(q, Q::ZERO)
    }

    /// `i^k` for any integer `k`.
    pub fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => Self::ints(1, 0),
            1 => Self::ints(0, 1),
            2 => Self::ints(-1, 0),
            _ => Self::ints(0, -1),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -&self.im)
    }

    pub fn norm(&self) -> Q {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Domain("inverse of zero".into()));
        }
        let n = self.norm();
        let inv = n.recip().expect("nonzero norm");
        Ok(Self::new(&self.re * &inv, -(&self.im * &inv)))
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    pub fn scale(&self, q: &Q) -> Self {
        Self::new(&self.re * q, &self.im * q)
    }

    /// If this is `i^k`, return `k mod 4`.
    pub fn unit_exponent(&self) -> Option<u8> {
        (0..4u8).find(|&k| *self == Self::i_pow(k as i64))
    }

    pub fn bit_size(&self) -> u64 {
        self.re.bit_size() + self.im.bit_size()
    }
}

impl<'a> Add<&'a GR> for &'a GR {
    type Output = GR;
    fn add(self, o: &GR) -> GR {
        GR::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl<'a> Sub<&'a GR> for &'a GR {
    type Output = GR;
    fn sub(self, o: &GR) -> GR {
        GR::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl<'a> Mul<&'a GR> for &'a GR {
    type Output = GR;
    fn mul(self, o: &GR) -> GR {
        if self.im.is_zero() && o.im.is_zero() {
            return GR::real(&self.re * &o.re);
        }
        GR::new(
            &(&self.re * &o.re) - &(&self.im * &o.im),
            &(&self.re * &o.im) + &(&self.im * &o.re),
        )
    }
}

impl<'a> Div<&'a GR> for &'a GR {
    type Output = GR;
    fn div(self, o: &GR) -> GR {
        self * &o.inverse().expect("division by zero")
    }
}

impl Neg for &GR {
    type Output = GR;
    fn neg(self) -> GR {
        GR::new(-&self.re, -&self.im)
    }
}

impl Neg for GR {
    type Output = GR;
    fn neg(self) -> GR {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<GR> for GR {
            type Output = GR;
            fn $m(self, o: GR) -> GR {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a GR> for GR {
            type Output = GR;
            fn $m(self, o: &GR) -> GR {
                (&self).$m(o)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

impl AddAssign<&GR> for GR {
    fn add_assign(&mut self, o: &GR) {
        self.re += &o.re;
        self.im += &o.im;
    }
}

impl SubAssign<&GR> for GR {
    fn sub_assign(&mut self, o: &GR) {
        self.re -= &o.re;
        self.im -= &o.im;
    }
}

impl MulAssign<&GR> for GR {
    fn mul_assign(&mut self, o: &GR) {
        *self = &*self * o;
    }
}

impl From<Q> for GR {
    fn from(q: Q) -> GR {
        GR::real(q)
    }
}

impl fmt::Display for GR {
    /// `a`, `b·i` or `a+b·i` style: `1/4-1/4i`, `2i`, `-3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let im_part = |q: &Q| -> String {
            if q.is_one() {
                "i".to_string()
            } else if *q == Q::int(-1) {
                "-i".to_string()
            } else {
                format!("{q}i")
            }
        };
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}", im_part(&self.im)),
            (false, false) => {
                let s = im_part(&self.im);
                if s.starts_with('-') {
                    write!(f, "{}{}", self.re, s)
                } else {
                    write!(f, "{}+{}", self.re, s)
                }
            }
        }
    }
}

impl fmt::Debug for GR {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for GR {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let a = GR::ints(1, 1);
        let b = GR::ints(1, -1);
        assert_eq!(&a * &b, GR::int(2));
        assert_eq!(a.inverse().unwrap(), GR::new(Q::new(1, 2), Q::new(-1, 2)));
        assert_eq!(GR::i().pow(4).unwrap(), GR::one());
        assert_eq!(GR::i().pow(-1).unwrap(), GR::ints(0, -1));
        assert!(GR::zero().inverse().is_err());
    }

    #[test]
    fn display() {
        assert_eq!(GR::new(Q::new(1, 4), Q::new(-1, 4)).to_string(), "1/4-1/4i");
        assert_eq!(GR::ints(0, 2).to_string(), "2i");
        assert_eq!(GR::ints(0, -1).to_string(), "-i");
        assert_eq!(GR::ints(3, 1).to_string(), "3+i");
    }

    #[test]
    fn unit_exponents() {
        for k in -5..5 {
            assert_eq!(GR::i_pow(k).unit_exponent(), Some(k.rem_euclid(4) as u8));
        }
        assert_eq!(GR::int(2).unit_exponent(), None);
    }
}
