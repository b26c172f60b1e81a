use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::HomogeneousForm;
use crate::linalg::rational_det;
use crate::{Error, Result};

/// Univariate polynomial over Q, coefficients in ascending degree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<BigRational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(alloc::vec![c])
    }

    /// `t - r`
    pub fn linear_root(r: BigRational) -> Self {
        Self::new(alloc::vec![-r, BigRational::one()])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() == 1
    }

    pub fn lead(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = BigRational::zero();
        Self::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) + other.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        UniPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = alloc::vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let dl = d.lead().expect("division by zero polynomial").clone();
        let dd = d.coeffs.len() - 1;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = alloc::vec![BigRational::zero(); r.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = &r[i] / &dl;
            if c.is_zero() {
                continue;
            }
            for (j, x) in d.coeffs.iter().enumerate() {
                r[i - dd + j] -= &c * x;
            }
            q[i - dd] = c;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            Some(l) => self.scale(&l.recip()),
            None => Self::zero(),
        }
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    pub fn eval(&self, t: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * t + c)
    }

    /// Multiplicity of 0 as a root; `None` for the zero polynomial.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Binary form `y^deg q(x/y)` in variables `(x, y)`.
    pub fn homogenize(&self, degree: u32) -> HomogeneousForm {
        let mut f = HomogeneousForm::zero(2, degree);
        for (e, c) in self.coeffs.iter().enumerate() {
            let e = e as u32;
            assert!(e <= degree, "homogenizing below the polynomial degree");
            f.add_assign_scaled(&HomogeneousForm::monomial(2, alloc::vec![e, degree - e], c.clone()), &BigRational::one());
        }
        f
    }

    /// `q(x, 1)` of a binary form.
    pub fn dehomogenize(f: &HomogeneousForm) -> Self {
        assert_eq!(f.nvars(), 2, "binary form expected");
        let mut coeffs = alloc::vec![BigRational::zero(); f.degree() as usize + 1];
        for (m, c) in f.terms() {
            coeffs[m[0] as usize] += c;
        }
        Self::new(coeffs)
    }

    /// Rational roots (distinct), via the rational root theorem.
    pub fn rational_roots(&self) -> Vec<BigRational> {
        let Some(v) = self.valuation() else { return Vec::new() };
        let mut roots = Vec::new();
        if v > 0 {
            roots.push(BigRational::zero());
        }
        let reduced = Self::new(self.coeffs[v..].to_vec());
        if reduced.is_constant() {
            return roots;
        }
        let den = reduced.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = reduced.coeffs.iter().map(|c| (c * BigRational::from_integer(den.clone())).to_integer()).collect();
        let a0 = divisors(&ints[0].abs());
        let an = divisors(&ints[ints.len() - 1].abs());
        for p in &a0 {
            for q in &an {
                for s in [p.clone(), -p] {
                    let r = BigRational::new(s, q.clone());
                    if !roots.contains(&r) && reduced.eval(&r).is_zero() {
                        roots.push(r);
                    }
                }
            }
        }
        roots.sort();
        roots
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            small.push(d.clone());
            let e = n / &d;
            if e != d {
                large.push(e);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Determinant of the Sylvester matrix, `q1` coefficient columns first.
pub fn resultant(q1: &UniPoly, q2: &UniPoly) -> Result<BigRational> {
    let (Some(n), Some(m)) = (q1.degree(), q2.degree()) else {
        return Err(Error::InvalidInput("resultant of the zero polynomial".into()));
    };
    let size = n + m;
    if size == 0 {
        return Ok(BigRational::one());
    }
    let mut a = alloc::vec![alloc::vec![BigRational::zero(); size]; size];
    // column j < m holds q1 shifted down by j; column m + j holds q2 shifted by j
    for j in 0..m {
        for (i, c) in q1.coeffs.iter().rev().enumerate() {
            a[i + j][j] = c.clone();
        }
    }
    for j in 0..n {
        for (i, c) in q2.coeffs.iter().rev().enumerate() {
            a[i + j][m + j] = c.clone();
        }
    }
    Ok(rational_det(a))
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({c})t^{e}")?;
        }
        Ok(())
    }
}
