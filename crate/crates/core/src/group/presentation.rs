use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use super::GroupElement;
use crate::forms::SymbolicPencil;
use crate::linalg::IntMatrix;
use crate::{Error, Result};

/// Non-fatal remarks produced by [`validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Warning {
    /// `m > n(n-1)/2`; fullness only forces `n ≤ m(m-1)/2`.
    PrintedDimensionBound { m: usize, n: usize },
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Warning::PrintedDimensionBound { m, n } => write!(
                f,
                "m = {m} exceeds n(n-1)/2 = {}; not enforced (fullness only requires n <= m(m-1)/2 = {})",
                n * n.saturating_sub(1) / 2,
                m * m.saturating_sub(1) / 2
            ),
        }
    }
}

/// Checks shapes, skew-symmetry and fullness of `φ = (A_1, …, A_n)`.
pub fn validate(m: usize, n: usize, mats: &[IntMatrix]) -> Result<Vec<Warning>> {
    if mats.len() != n {
        return Err(Error::Dimension(format!("expected {n} matrices, found {}", mats.len())));
    }
    for (i, a) in mats.iter().enumerate() {
        if a.rows() != m || a.cols() != m {
            return Err(Error::Dimension(format!("matrix {} is {}x{}, expected {m}x{m}", i + 1, a.rows(), a.cols())));
        }
    }
    let mut reasons: Vec<String> = Vec::new();
    for (i, a) in mats.iter().enumerate() {
        if !a.is_skew_symmetric() {
            reasons.push(format!("matrix {} is not skew-symmetric", i + 1));
        }
    }
    if n == 0 {
        reasons.push("the center rank n must be positive".into());
    }
    if reasons.is_empty() {
        // values φ(e_i, e_j), i < j, must span a rank-n lattice
        let pairs: Vec<(usize, usize)> = (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))).collect();
        let values = IntMatrix::from_fn(n, pairs.len(), |k, c| mats[k][pairs[c]].clone());
        if values.rank() < n {
            reasons.push(format!("not full: the values of phi span a lattice of rank {} < n = {n}", values.rank()));
        }
    }
    if !reasons.is_empty() {
        return Err(Error::Validation(reasons.join("; ")));
    }
    let mut warnings = Vec::new();
    if m > n * n.saturating_sub(1) / 2 {
        warnings.push(Warning::PrintedDimensionBound { m, n });
    }
    Ok(warnings)
}

/// The group `G_φ` on `Z^m × Z^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    m: usize,
    n: usize,
    mats: Vec<IntMatrix>,
    lower: Vec<IntMatrix>,
}

impl GroupPresentation {
    pub fn new(m: usize, n: usize, mats: Vec<IntMatrix>) -> Result<Self> {
        validate(m, n, &mats)?;
        let lower = mats.iter().map(IntMatrix::strictly_lower).collect();
        Ok(GroupPresentation { m, n, mats, lower })
    }

    /// Shapes inferred from the matrices.
    pub fn from_matrices(mats: Vec<IntMatrix>) -> Result<Self> {
        let m = mats.first().map_or(0, IntMatrix::rows);
        Self::new(m, mats.len(), mats)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrices(&self) -> &[IntMatrix] {
        &self.mats
    }

    pub fn lower_matrices(&self) -> &[IntMatrix] {
        &self.lower
    }

    pub fn warnings(&self) -> Vec<Warning> {
        validate(self.m, self.n, &self.mats).unwrap_or_default()
    }

    pub fn pencil(&self) -> SymbolicPencil {
        SymbolicPencil::new(self.mats.clone()).expect("validated presentation")
    }

    fn bilinear(mats: &[IntMatrix], w1: &[BigInt], w2: &[BigInt]) -> Vec<BigInt> {
        mats.iter()
            .map(|a| {
                let mut s = BigInt::zero();
                for (i, x) in w1.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (j, y) in w2.iter().enumerate() {
                        if !y.is_zero() && !a[(i, j)].is_zero() {
                            s += x * &a[(i, j)] * y;
                        }
                    }
                }
                s
            })
            .collect()
    }

    /// `φ(w1, w2)_i = w1^T A_i w2`.
    pub fn phi(&self, w1: &[BigInt], w2: &[BigInt]) -> Vec<BigInt> {
        Self::bilinear(&self.mats, w1, w2)
    }

    /// `φ^L(w1, w2)_i = w1^T A_i^L w2`.
    pub fn phi_lower(&self, w1: &[BigInt], w2: &[BigInt]) -> Vec<BigInt> {
        Self::bilinear(&self.lower, w1, w2)
    }

    fn check(&self, g: &GroupElement) -> Result<()> {
        if g.w.len() != self.m || g.v.len() != self.n {
            return Err(Error::Dimension(format!(
                "element in Z^{} x Z^{}, presentation needs Z^{} x Z^{}",
                g.w.len(),
                g.v.len(),
                self.m,
                self.n
            )));
        }
        Ok(())
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::identity(self.m, self.n)
    }

    /// `(w1 + w2, v1 + v2 + φ^L(w1, w2))`.
    pub fn multiply(&self, g1: &GroupElement, g2: &GroupElement) -> Result<GroupElement> {
        self.check(g1)?;
        self.check(g2)?;
        let corr = self.phi_lower(&g1.w, &g2.w);
        Ok(GroupElement {
            w: g1.w.iter().zip(&g2.w).map(|(a, b)| a + b).collect(),
            v: g1.v.iter().zip(&g2.v).zip(&corr).map(|((a, b), c)| a + b + c).collect(),
        })
    }

    /// `(-w, -v + φ^L(w, w))`.
    pub fn inverse(&self, g: &GroupElement) -> Result<GroupElement> {
        self.check(g)?;
        let corr = self.phi_lower(&g.w, &g.w);
        Ok(GroupElement {
            w: g.w.iter().map(|a| -a).collect(),
            v: g.v.iter().zip(&corr).map(|(a, c)| c - a).collect(),
        })
    }

    /// `g1⁻¹ g2⁻¹ g1 g2 = (0, φ(w1, w2))`.
    pub fn commutator(&self, g1: &GroupElement, g2: &GroupElement) -> Result<GroupElement> {
        self.check(g1)?;
        self.check(g2)?;
        Ok(GroupElement { w: alloc::vec![BigInt::zero(); self.m], v: self.phi(&g1.w, &g2.w) })
    }

    /// The `2(m+n)` generators `(±e_i, 0)` and `(0, ±e_j)`.
    pub fn generators(&self) -> Vec<GroupElement> {
        let mut out = Vec::with_capacity(2 * (self.m + self.n));
        for i in 0..self.m {
            for s in [1, -1] {
                let mut g = self.identity();
                g.w[i] = BigInt::from(s);
                out.push(g);
            }
        }
        for j in 0..self.n {
            for s in [1, -1] {
                let mut g = self.identity();
                g.v[j] = BigInt::from(s);
                out.push(g);
            }
        }
        out
    }

    /// `C = max(1, max_{i,j} ‖φ^L(e_i, e_j)‖∞)`.
    pub fn metric_constant(&self) -> BigInt {
        self.lower.iter().map(IntMatrix::max_abs).max().unwrap_or_default().max(BigInt::from(1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(w: &[i64], v: &[i64]) -> GroupElement {
        GroupElement::from_ints(w, v)
    }

    fn h3() -> GroupPresentation {
        GroupPresentation::new(2, 1, alloc::vec![IntMatrix::from_rows(&[[0, 1], [-1, 0]])]).unwrap()
    }

    #[test]
    fn validation_outcomes() {
        assert!(validate(2, 1, &[IntMatrix::from_rows(&[[0, 1], [-1, 0]])]).is_ok());
        assert!(matches!(validate(2, 1, &[IntMatrix::zeros(2, 2)]), Err(Error::Validation(_))));
        assert!(matches!(validate(3, 1, &[IntMatrix::zeros(2, 2)]), Err(Error::Dimension(_))));
        assert!(matches!(validate(2, 1, &[IntMatrix::from_rows(&[[0, 1], [1, 0]])]), Err(Error::Validation(_))));
    }

    #[test]
    fn heisenberg_products() {
        let g = h3();
        assert_eq!(g.multiply(&e(&[1, 0], &[0]), &e(&[0, 1], &[0])).unwrap(), e(&[1, 1], &[0]));
        assert_eq!(g.multiply(&e(&[0, 1], &[0]), &e(&[1, 0], &[0])).unwrap(), e(&[1, 1], &[-1]));
        assert_eq!(g.inverse(&e(&[1, 1], &[0])).unwrap(), e(&[-1, -1], &[-1]));
        assert_eq!(g.inverse(&e(&[0, 0], &[5])).unwrap(), e(&[0, 0], &[-5]));
        assert_eq!(g.commutator(&e(&[1, 0], &[0]), &e(&[0, 1], &[0])).unwrap(), e(&[0, 0], &[1]));
        assert!(g.multiply(&e(&[1], &[0]), &e(&[0, 1], &[0])).is_err());
    }

    #[test]
    fn metric_constant_at_least_one() {
        assert_eq!(h3().metric_constant(), BigInt::from(1));
    }
}
