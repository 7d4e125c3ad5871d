use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Serialize, Serializer};

/// An element of (1/4)Z, stored in quarter units.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct QuarterInt {
    pub q: i64,
}

/// Residue class of a quarter-integer modulo 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuarterClass {
    Integer,
    OneQuarter,
    HalfOdd,
    ThreeQuarters,
}

impl QuarterInt {
    pub const fn new(q: i64) -> Self {
        QuarterInt { q }
    }

    pub const fn from_int(n: i64) -> Self {
        QuarterInt { q: 4 * n }
    }

    pub fn class(self) -> QuarterClass {
        match self.q.rem_euclid(4) {
            0 => QuarterClass::Integer,
            1 => QuarterClass::OneQuarter,
            2 => QuarterClass::HalfOdd,
            _ => QuarterClass::ThreeQuarters,
        }
    }

    pub fn is_integer(self) -> bool {
        self.class() == QuarterClass::Integer
    }

    pub fn is_half_odd(self) -> bool {
        self.class() == QuarterClass::HalfOdd
    }

    /// Member of (1/2)Z.
    pub fn is_half_integer(self) -> bool {
        self.q % 2 == 0
    }

    /// Member of 1/4 + (1/2)Z.
    pub fn is_odd_quarter(self) -> bool {
        self.q % 2 != 0
    }
}

impl Add for QuarterInt {
    type Output = QuarterInt;
    fn add(self, o: QuarterInt) -> QuarterInt {
        QuarterInt::new(self.q + o.q)
    }
}

impl Sub for QuarterInt {
    type Output = QuarterInt;
    fn sub(self, o: QuarterInt) -> QuarterInt {
        QuarterInt::new(self.q - o.q)
    }
}

impl Neg for QuarterInt {
    type Output = QuarterInt;
    fn neg(self) -> QuarterInt {
        QuarterInt::new(-self.q)
    }
}

impl fmt::Display for QuarterInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = num_integer::gcd(self.q, 4);
        let (n, d) = (self.q / g, 4 / g);
        if d == 1 {
            write!(f, "{n}")
        } else {
            write!(f, "{n}/{d}")
        }
    }
}

impl fmt::Debug for QuarterInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for QuarterInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classes_partition() {
        for q in -20..20 {
            let x = QuarterInt::new(q);
            let flags = [
                x.class() == QuarterClass::Integer,
                x.class() == QuarterClass::OneQuarter,
                x.class() == QuarterClass::HalfOdd,
                x.class() == QuarterClass::ThreeQuarters,
            ];
            assert_eq!(flags.iter().filter(|&&b| b).count(), 1);
        }
        assert_eq!(QuarterInt::new(-1).class(), QuarterClass::ThreeQuarters);
        assert_eq!(QuarterInt::new(-3).class(), QuarterClass::OneQuarter);
    }

    #[test]
    fn display() {
        assert_eq!(QuarterInt::new(-1).to_string(), "-1/4");
        assert_eq!(QuarterInt::new(6).to_string(), "3/2");
        assert_eq!(QuarterInt::new(-8).to_string(), "-2");
    }
}
