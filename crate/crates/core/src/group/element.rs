use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

/// An element `(w, v)` of `Z^m × Z^n`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement {
    pub w: Vec<BigInt>,
    pub v: Vec<BigInt>,
}

impl GroupElement {
    pub fn new(w: Vec<BigInt>, v: Vec<BigInt>) -> Self {
        GroupElement { w, v }
    }

    pub fn from_ints(w: &[i64], v: &[i64]) -> Self {
        GroupElement { w: w.iter().map(|&x| x.into()).collect(), v: v.iter().map(|&x| x.into()).collect() }
    }

    pub fn identity(m: usize, n: usize) -> Self {
        GroupElement { w: alloc::vec![BigInt::zero(); m], v: alloc::vec![BigInt::zero(); n] }
    }

    /// `(0, v)` with `v` given.
    pub fn central(m: usize, v: Vec<BigInt>) -> Self {
        GroupElement { w: alloc::vec![BigInt::zero(); m], v }
    }

    pub fn is_identity(&self) -> bool {
        self.w.iter().all(Zero::is_zero) && self.v.iter().all(Zero::is_zero)
    }

    pub fn is_central(&self) -> bool {
        self.w.iter().all(Zero::is_zero)
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |f: &mut fmt::Formatter<'_>, xs: &[BigInt]| -> fmt::Result {
            f.write_str("(")?;
            for (i, x) in xs.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str(")")
        };
        f.write_str("(")?;
        join(f, &self.w)?;
        f.write_str(", ")?;
        join(f, &self.v)?;
        f.write_str(")")
    }
}
