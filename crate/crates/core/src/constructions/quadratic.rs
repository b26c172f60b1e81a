use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use alloc::format;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// `Q(√D)` for a squarefree `D ∉ {0, 1}`, generated by `α = √D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticField {
    disc: BigInt,
}

fn squarefree(d: &BigInt) -> bool {
    let n = d.abs();
    let mut k = BigInt::from(2);
    while &k * &k <= n {
        if (&n % (&k * &k)).is_zero() {
            return false;
        }
        k += 1;
    }
    true
}

impl QuadraticField {
    pub fn new(disc: i64) -> Result<Self> {
        let d = BigInt::from(disc);
        if disc == 0 || disc == 1 || !squarefree(&d) {
            return Err(Error::InvalidInput(format!("{disc} is not a squarefree integer other than 0 and 1")));
        }
        Ok(QuadraticField { disc: d })
    }

    pub fn disc(&self) -> &BigInt {
        &self.disc
    }

    /// `α = √D`.
    pub fn alpha(&self) -> QuadInt {
        QuadInt::new(BigRational::zero(), BigRational::one(), self.disc.clone())
    }

    pub fn from_int(&self, x: i64) -> QuadInt {
        QuadInt::new(BigRational::from_integer(x.into()), BigRational::zero(), self.disc.clone())
    }

    /// The Galois automorphisms: `σ_0` is the identity, `σ_1` conjugation.
    pub fn sigma(&self, k: usize, x: &QuadInt) -> QuadInt {
        match k {
            0 => x.clone(),
            1 => x.conj(),
            _ => panic!("a quadratic field has two automorphisms"),
        }
    }
}

/// `a + b√D` with rational `a, b`.
#[derive(Clone, PartialEq, Eq)]
pub struct QuadInt {
    pub a: BigRational,
    pub b: BigRational,
    disc: BigInt,
}

impl QuadInt {
    pub fn new(a: BigRational, b: BigRational, disc: BigInt) -> Self {
        QuadInt { a, b, disc }
    }

    pub fn zero_in(disc: &BigInt) -> Self {
        QuadInt::new(BigRational::zero(), BigRational::zero(), disc.clone())
    }

    pub fn conj(&self) -> Self {
        QuadInt::new(self.a.clone(), -self.b.clone(), self.disc.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// The integer value, if `b = 0` and `a ∈ Z`.
    pub fn to_integer(&self) -> Option<BigInt> {
        (self.b.is_zero() && self.a.is_integer()).then(|| self.a.to_integer())
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = QuadInt::new(BigRational::one(), BigRational::zero(), self.disc.clone());
        for _ in 0..k {
            out = &out * self;
        }
        out
    }
}

impl Add for &QuadInt {
    type Output = QuadInt;
    fn add(self, o: &QuadInt) -> QuadInt {
        QuadInt::new(&self.a + &o.a, &self.b + &o.b, self.disc.clone())
    }
}

impl Sub for &QuadInt {
    type Output = QuadInt;
    fn sub(self, o: &QuadInt) -> QuadInt {
        QuadInt::new(&self.a - &o.a, &self.b - &o.b, self.disc.clone())
    }
}

impl Neg for &QuadInt {
    type Output = QuadInt;
    fn neg(self) -> QuadInt {
        QuadInt::new(-self.a.clone(), -self.b.clone(), self.disc.clone())
    }
}

impl Mul for &QuadInt {
    type Output = QuadInt;
    fn mul(self, o: &QuadInt) -> QuadInt {
        debug_assert_eq!(self.disc, o.disc, "elements of different fields");
        let d = BigRational::from_integer(self.disc.clone());
        QuadInt::new(&self.a * &o.a + &self.b * &o.b * d, &self.a * &o.b + &self.b * &o.a, self.disc.clone())
    }
}

impl fmt::Debug for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}*sqrt({})", self.a, self.b, self.disc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_arithmetic() {
        let f = QuadraticField::new(-1).unwrap();
        let i = f.alpha();
        assert_eq!((&i * &i).to_integer(), Some(BigInt::from(-1)));
        assert_eq!(i.pow(4).to_integer(), Some(BigInt::from(1)));
        assert_eq!((&i + &i.conj()).to_integer(), Some(BigInt::zero()));
        assert!(QuadraticField::new(4).is_err());
        assert!(QuadraticField::new(1).is_err());
        assert!(QuadraticField::new(-12).is_err());
        assert!(QuadraticField::new(10).is_ok());
    }
}
