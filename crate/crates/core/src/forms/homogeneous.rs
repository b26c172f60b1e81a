use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Monomial = Vec<u32>;

/// Homogeneous polynomial with rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HomogeneousForm {
    nvars: usize,
    degree: u32,
    coeffs: BTreeMap<Monomial, BigRational>,
}

/// Exponent vectors of total degree `d` in `n` variables, `x1^d` first.
pub fn degree_monomials(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(n: usize, d: u32, prefix: &mut Monomial, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == n {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e);
            rec(n, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(n, d, &mut Vec::new(), &mut out);
    out
}

impl HomogeneousForm {
    pub fn zero(nvars: usize, degree: u32) -> Self {
        HomogeneousForm { nvars, degree, coeffs: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        Self::monomial(nvars, alloc::vec![0; nvars], c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigRational::one())
    }

    pub fn monomial(nvars: usize, exps: Monomial, c: BigRational) -> Self {
        assert_eq!(exps.len(), nvars, "monomial arity");
        let degree = exps.iter().sum();
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(exps, c);
        }
        HomogeneousForm { nvars, degree, coeffs }
    }

    /// `x_i` as a form.
    pub fn variable(nvars: usize, i: usize) -> Self {
        let mut e = alloc::vec![0; nvars];
        e[i] = 1;
        Self::monomial(nvars, e, BigRational::one())
    }

    /// `Σ c_i x_i`.
    pub fn linear(coeffs: &[BigInt]) -> Self {
        let n = coeffs.len();
        let mut f = Self::zero(n, 1);
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut e = alloc::vec![0; n];
                e[i] = 1;
                f.coeffs.insert(e, BigRational::from_integer(c.clone()));
            }
        }
        f
    }

    /// Form from a coefficient vector over [`degree_monomials`].
    pub fn from_coefficients(nvars: usize, degree: u32, coeffs: &[BigRational]) -> Self {
        let basis = degree_monomials(nvars, degree);
        assert_eq!(basis.len(), coeffs.len(), "coefficient vector length");
        let mut f = Self::zero(nvars, degree);
        for (m, c) in basis.into_iter().zip(coeffs) {
            if !c.is_zero() {
                f.coeffs.insert(m, c.clone());
            }
        }
        f
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.degree == 0 && !self.is_zero()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, m: &[u32]) -> BigRational {
        self.coeffs.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Coefficients over [`degree_monomials`]`(nvars, degree)`.
    pub fn coefficient_vector(&self) -> Vec<BigRational> {
        degree_monomials(self.nvars, self.degree).iter().map(|m| self.coeff(m)).collect()
    }

    fn check_compatible(&self, other: &Self) {
        assert_eq!(self.nvars, other.nvars, "forms in different variable counts");
        assert!(
            self.degree == other.degree || self.is_zero() || other.is_zero(),
            "adding forms of degrees {} and {}",
            self.degree,
            other.degree
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_compatible(other);
        if self.is_zero() {
            return other.clone();
        }
        let mut out = self.clone();
        out.add_assign_scaled(other, &BigRational::one());
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// `self += c·other`
    pub fn add_assign_scaled(&mut self, other: &Self, c: &BigRational) {
        self.check_compatible(other);
        if other.is_zero() || c.is_zero() {
            return;
        }
        if self.is_zero() {
            self.degree = other.degree;
        }
        for (m, x) in &other.coeffs {
            let entry = self.coeffs.entry(m.clone()).or_insert_with(BigRational::zero);
            *entry += x * c;
            if entry.is_zero() {
                self.coeffs.remove(m);
            }
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-BigRational::one())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars, self.degree);
        }
        HomogeneousForm {
            nvars: self.nvars,
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "forms in different variable counts");
        let mut out = Self::zero(self.nvars, self.degree + other.degree);
        for (m1, c1) in &self.coeffs {
            for (m2, c2) in &other.coeffs {
                let m: Monomial = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                let entry = out.coeffs.entry(m).or_insert_with(BigRational::zero);
                *entry += c1 * c2;
            }
        }
        out.coeffs.retain(|_, c| !c.is_zero());
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.nvars);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        assert_eq!(point.len(), self.nvars);
        let mut total = BigRational::zero();
        for (m, c) in &self.coeffs {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m) {
                for _ in 0..e {
                    t *= x;
                }
            }
            total += t;
        }
        total
    }

    /// Coefficient of the lexicographically first monomial.
    pub fn leading_coefficient(&self) -> Option<&BigRational> {
        self.coeffs.iter().next_back().map(|(_, c)| c)
    }

    /// `(c, g)` with `self = c·g`, `g` integral, primitive, leading coefficient positive.
    pub fn normalize(&self) -> (BigRational, Self) {
        let Some(lead) = self.leading_coefficient() else {
            return (BigRational::one(), self.clone());
        };
        let mut den = BigInt::one();
        let mut num = BigInt::zero();
        for c in self.coeffs.values() {
            den = den.lcm(c.denom());
            num = num.gcd(c.numer());
        }
        let mut content = BigRational::new(num, den);
        if lead.is_negative() {
            content = -content;
        }
        let inv = content.recip();
        (content, self.scale(&inv))
    }

    pub fn normalized(&self) -> Self {
        self.normalize().1
    }

    /// Substitutes `x_i = Σ_j t[i][j] y_j`.
    pub fn substitute_linear(&self, t: &[Vec<BigInt>]) -> Self {
        assert_eq!(t.len(), self.nvars);
        let new_n = t.first().map_or(0, Vec::len);
        let images: Vec<Self> = t.iter().map(|row| Self::linear(row)).collect();
        let mut out = Self::zero(new_n, self.degree);
        for (m, c) in &self.coeffs {
            let mut term = Self::constant(new_n, c.clone());
            for (img, &e) in images.iter().zip(m) {
                term = term.mul(&img.pow(e));
            }
            out.add_assign_scaled(&term, &BigRational::one());
        }
        out
    }

    /// Smallest exponent of the last variable over all terms.
    pub fn last_variable_valuation(&self) -> Option<u32> {
        self.coeffs.keys().map(|m| *m.last().unwrap_or(&0)).min()
    }
}

impl fmt::Debug for HomogeneousForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for HomogeneousForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in self.coeffs.iter().rev() {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let is_const = m.iter().all(|&e| e == 0);
            if !a.is_one() || is_const {
                write!(f, "{a}")?;
                if !is_const {
                    f.write_str("*")?;
                }
            }
            let mut first_var = true;
            for (i, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first_var {
                    f.write_str("*")?;
                }
                first_var = false;
                write!(f, "x{}", i + 1)?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn lin(v: &[i64]) -> HomogeneousForm {
        HomogeneousForm::linear(&v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>())
    }

    #[test]
    fn monomial_basis_order() {
        assert_eq!(degree_monomials(2, 2), [[2, 0], [1, 1], [0, 2]]);
        assert_eq!(degree_monomials(3, 1), [[1, 0, 0], [0, 1, 0], [0, 0, 1]]);
        assert_eq!(degree_monomials(3, 4).len(), 15);
    }

    #[test]
    fn binomial_square() {
        let f = lin(&[1, 1]).pow(2);
        assert_eq!(f.to_string(), "x1^2 + 2*x1*x2 + x2^2");
        assert_eq!(f.degree(), 2);
    }

    #[test]
    fn normalize_removes_content_and_sign() {
        let f = lin(&[-2, 4]).pow(2).scale(&BigRational::new(1.into(), 3.into()));
        let (c, g) = f.normalize();
        assert_eq!(g, lin(&[1, -2]).pow(2));
        assert_eq!(g.scale(&c), f);
    }

    #[test]
    fn substitution_composes() {
        // f = x1 x2, x1 = y1 + y2, x2 = y1 - y2
        let f = lin(&[1, 0]).mul(&lin(&[0, 1]));
        let t = alloc::vec![alloc::vec![BigInt::from(1), BigInt::from(1)], alloc::vec![BigInt::from(1), BigInt::from(-1)]];
        assert_eq!(f.substitute_linear(&t).to_string(), "x1^2 - x2^2");
    }

    #[test]
    fn cancellation_drops_terms() {
        let f = lin(&[1, 1]);
        assert!(f.sub(&f).is_zero());
    }
}
