use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::forms::{degree_monomials, det_form, minor_ideal_generators, nonzero_minors, HomogeneousForm, Monomial, SymbolicPencil};
use crate::linalg::SpanSolver;
use crate::{Error, Result};

/// One summand `coeff · x^multiplier · det M_x[rows, cols]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertTerm {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub multiplier: Monomial,
    pub coeff: BigRational,
}

/// Exact identity `(v^T x)^power = Σ coeff_j x^{μ_j} q_j` with `q_j` the
/// `d×d` minors listed in `terms`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowerBoundCertificate {
    pub v: Vec<BigInt>,
    pub d: usize,
    pub power: u32,
    pub terms: Vec<CertTerm>,
}

impl LowerBoundCertificate {
    pub fn target(&self) -> HomogeneousForm {
        HomogeneousForm::linear(&self.v).pow(self.power)
    }

    /// The coefficients `λ_j`.
    pub fn lambda(&self) -> Vec<BigRational> {
        self.terms.iter().map(|t| t.coeff.clone()).collect()
    }

    pub fn is_integral(&self) -> bool {
        self.terms.iter().all(|t| t.coeff.is_integer())
    }

    /// Re-expands every minor by evaluation and interpolation and compares
    /// with the target power.
    pub fn verify(&self, pencil: &SymbolicPencil) -> Result<()> {
        let n = pencil.nvars();
        if self.v.len() != n {
            return Err(Error::Dimension(format!("certificate vector has {} entries, pencil has {n} variables", self.v.len())));
        }
        let mut sum = HomogeneousForm::zero(n, self.power);
        for t in &self.terms {
            if t.rows.len() != self.d || t.cols.len() != self.d || t.multiplier.len() != n {
                return Err(Error::Validation("certificate term has the wrong shape".into()));
            }
            if t.rows.iter().chain(&t.cols).any(|&i| i >= pencil.size()) {
                return Err(Error::Validation("certificate term indexes outside the pencil".into()));
            }
            if t.multiplier.iter().sum::<u32>() as usize + self.d != self.power as usize {
                return Err(Error::Validation("certificate term has the wrong degree".into()));
            }
            let minor = det_form(pencil, &t.rows, &t.cols);
            let mono = HomogeneousForm::monomial(n, t.multiplier.clone(), BigRational::one());
            sum.add_assign_scaled(&minor.mul(&mono), &t.coeff);
        }
        if sum != self.target() {
            return Err(Error::Validation(format!("re-expansion gives {sum}, expected {}", self.target())));
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
struct Element {
    rows: Vec<usize>,
    cols: Vec<usize>,
    multiplier: Monomial,
    form: HomogeneousForm,
}

/// A basis of the degree-`degree` part of the ideal of `d×d` minors.
///
/// The pencil is split into the connected components of its support; a
/// minor of a block-diagonal matrix is a signed product of block minors, so
/// the degree-`d` part is spanned by products of per-block spanning minors.
#[derive(Clone, Debug)]
pub struct MinorSpan {
    nvars: usize,
    d: usize,
    degree: u32,
    elements: Vec<Element>,
    solver: SpanSolver,
}

fn inversion_parity(seq: &[usize]) -> bool {
    let mut odd = false;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                odd = !odd;
            }
        }
    }
    odd
}

/// Per-block spanning minors: `local[c][j]` lists `(rows, cols, form)` in
/// global indices.
type BlockBases = Vec<Vec<Vec<(Vec<usize>, Vec<usize>, HomogeneousForm)>>>;

fn block_bases(pencil: &SymbolicPencil, d: usize) -> Result<BlockBases> {
    let n = pencil.nvars();
    let mut out = Vec::new();
    for comp in pencil.components() {
        let sub = pencil.principal(&comp);
        let mut per_size = alloc::vec![alloc::vec![(Vec::new(), Vec::new(), HomogeneousForm::one(n))]];
        for j in 1..=d.min(comp.len()) {
            let mut solver = SpanSolver::new(degree_monomials(n, j as u32).len());
            let mut kept = Vec::new();
            for (r, c, f) in nonzero_minors(&sub, j)? {
                if solver.insert(&f.coefficient_vector()) {
                    let rows = r.iter().map(|&i| comp[i]).collect();
                    let cols = c.iter().map(|&i| comp[i]).collect();
                    kept.push((rows, cols, f));
                }
                if solver.is_full() {
                    break;
                }
            }
            per_size.push(kept);
        }
        out.push(per_size);
    }
    Ok(out)
}

impl MinorSpan {
    pub fn new(pencil: &SymbolicPencil, d: usize) -> Result<Self> {
        if d > pencil.size() {
            return Err(Error::InvalidInput(format!("minor size {d} exceeds matrix size {}", pencil.size())));
        }
        let n = pencil.nvars();
        let bases = block_bases(pencil, d)?;
        let mut span = MinorSpan {
            nvars: n,
            d,
            degree: d as u32,
            elements: Vec::new(),
            solver: SpanSolver::new(degree_monomials(n, d as u32).len()),
        };
        let mut choice: Vec<usize> = Vec::new();
        span.compositions(&bases, 0, d, &mut choice);
        Ok(span)
    }

    fn compositions(&mut self, bases: &BlockBases, c: usize, remaining: usize, choice: &mut Vec<usize>) {
        if self.solver.is_full() {
            return;
        }
        if c == bases.len() {
            if remaining == 0 {
                self.products(bases, choice, 0, Vec::new());
            }
            return;
        }
        let tail: usize = bases[c..].iter().map(|b| b.len() - 1).sum();
        if tail < remaining {
            return;
        }
        for j in 0..bases[c].len().min(remaining + 1) {
            if bases[c][j].is_empty() {
                continue;
            }
            choice.push(j);
            self.compositions(bases, c + 1, remaining - j, choice);
            choice.pop();
        }
    }

    fn products(&mut self, bases: &BlockBases, choice: &[usize], c: usize, picked: Vec<usize>) {
        if self.solver.is_full() {
            return;
        }
        if c == choice.len() {
            let mut rows = Vec::new();
            let mut cols = Vec::new();
            let mut form = HomogeneousForm::one(self.nvars);
            for (b, (&j, &i)) in choice.iter().zip(&picked).enumerate() {
                let (r, cl, f) = &bases[b][j][i];
                rows.extend_from_slice(r);
                cols.extend_from_slice(cl);
                form = form.mul(f);
            }
            if inversion_parity(&rows) != inversion_parity(&cols) {
                form = form.neg();
            }
            rows.sort_unstable();
            cols.sort_unstable();
            if self.solver.insert(&form.coefficient_vector()) {
                self.elements.push(Element { rows, cols, multiplier: alloc::vec![0; self.nvars], form });
            }
            return;
        }
        for i in 0..bases[c][choice[c]].len() {
            let mut next = picked.clone();
            next.push(i);
            self.products(bases, choice, c + 1, next);
        }
    }

    /// The degree-`k` part of the same ideal, `k ≥ d`.
    pub fn raised(&self, k: u32) -> Self {
        assert!(k >= self.degree, "degree can only grow");
        let mut out = MinorSpan {
            nvars: self.nvars,
            d: self.d,
            degree: k,
            elements: Vec::new(),
            solver: SpanSolver::new(degree_monomials(self.nvars, k).len()),
        };
        for mono in degree_monomials(self.nvars, k - self.degree) {
            let x = HomogeneousForm::monomial(self.nvars, mono.clone(), BigRational::one());
            for e in &self.elements {
                let form = e.form.mul(&x);
                if out.solver.insert(&form.coefficient_vector()) {
                    let multiplier = e.multiplier.iter().zip(&mono).map(|(a, b)| a + b).collect();
                    out.elements.push(Element { rows: e.rows.clone(), cols: e.cols.clone(), multiplier, form });
                }
                if out.solver.is_full() {
                    return out;
                }
            }
        }
        out
    }

    pub fn minor_size(&self) -> usize {
        self.d
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Dimension of the span inside the forms of its degree.
    pub fn rank(&self) -> usize {
        self.solver.rank()
    }

    pub fn is_full(&self) -> bool {
        self.solver.is_full()
    }

    /// The basis forms with the minors they come from.
    pub fn basis(&self) -> impl Iterator<Item = (&[usize], &[usize], &HomogeneousForm)> {
        self.elements.iter().map(|e| (e.rows.as_slice(), e.cols.as_slice(), &e.form))
    }

    /// Certificate for `(v^T x)^degree`, if it lies in the span.
    pub fn certify(&self, v: &[BigInt]) -> Option<LowerBoundCertificate> {
        assert_eq!(v.len(), self.nvars, "vector length");
        let target = HomogeneousForm::linear(v).pow(self.degree);
        let coeffs = self.solver.solve(&target.coefficient_vector())?;
        let mut terms = Vec::new();
        let mut check = HomogeneousForm::zero(self.nvars, self.degree);
        for (e, c) in self.elements.iter().zip(coeffs) {
            if c.is_zero() {
                continue;
            }
            check.add_assign_scaled(&e.form, &c);
            terms.push(CertTerm { rows: e.rows.clone(), cols: e.cols.clone(), multiplier: e.multiplier.clone(), coeff: c });
        }
        assert_eq!(check, target, "span solution does not re-expand");
        Some(LowerBoundCertificate { v: v.to_vec(), d: self.d, power: self.degree, terms })
    }
}

fn check_vector(v: &[BigInt], pencil: &SymbolicPencil) -> Result<()> {
    if v.len() != pencil.nvars() {
        return Err(Error::Dimension(format!("v has {} entries, pencil has {} variables", v.len(), pencil.nvars())));
    }
    if v.iter().all(Zero::is_zero) {
        return Err(Error::InvalidInput("v must be nonzero".into()));
    }
    Ok(())
}

/// Solves `(v^T x)^d = Σ λ_j q_j` over the `d×d` minors `q_j`.
///
/// `None` means the system has no rational solution, hence no complex one.
pub fn membership(v: &[BigInt], d: usize, pencil: &SymbolicPencil) -> Result<Option<LowerBoundCertificate>> {
    check_vector(v, pencil)?;
    Ok(MinorSpan::new(pencil, d)?.certify(v))
}

/// `λ` against [`minor_ideal_generators`], in its order: generators are
/// accepted greedily and dependent ones get coefficient zero.
pub fn membership_lambda(v: &[BigInt], d: usize, pencil: &SymbolicPencil) -> Result<Option<Vec<BigRational>>> {
    check_vector(v, pencil)?;
    let gens = minor_ideal_generators(pencil, d)?;
    let mut solver = SpanSolver::new(degree_monomials(pencil.nvars(), d as u32).len());
    let accepted: Vec<usize> = (0..gens.len()).filter(|&i| solver.insert(&gens[i].form.coefficient_vector())).collect();
    let target = HomogeneousForm::linear(v).pow(d as u32);
    let Some(coeffs) = solver.solve(&target.coefficient_vector()) else {
        return Ok(None);
    };
    let mut lambda = alloc::vec![BigRational::zero(); gens.len()];
    for (i, c) in accepted.into_iter().zip(coeffs) {
        lambda[i] = c;
    }
    Ok(Some(lambda))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::IntMatrix;
    use alloc::string::ToString;

    fn gaussian() -> SymbolicPencil {
        SymbolicPencil::new(alloc::vec![
            IntMatrix::from_rows(&[[0, 0, -1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, -1, 0, 0]]),
            IntMatrix::from_rows(&[[0, 0, 0, -1], [0, 0, -1, 0], [0, 1, 0, 0], [1, 0, 0, 0]]),
        ])
        .unwrap()
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn gaussian_membership() {
        let p = gaussian();
        let cert = membership(&big(&[1, 0]), 2, &p).unwrap().unwrap();
        cert.verify(&p).unwrap();
        assert!(membership(&big(&[1, 0]), 4, &p).unwrap().is_none());
        let lambda = membership_lambda(&big(&[1, 0]), 2, &p).unwrap().unwrap();
        let gens = minor_ideal_generators(&p, 2).unwrap();
        let pos = gens.iter().position(|g| g.form.to_string() == "x1^2").unwrap();
        for (i, l) in lambda.iter().enumerate() {
            assert_eq!(l.is_zero(), i != pos);
        }
    }

    #[test]
    fn single_block() {
        let p = SymbolicPencil::new(alloc::vec![IntMatrix::from_rows(&[[0, 1], [-1, 0]])]).unwrap();
        let cert = membership(&big(&[1]), 2, &p).unwrap().unwrap();
        assert_eq!(cert.lambda().len(), 1);
        cert.verify(&p).unwrap();
    }

    #[test]
    fn block_diagonal_signs() {
        // two Heisenberg blocks in the variables x1 and x2, interleaved
        let a1 = IntMatrix::from_rows(&[[0, 0, 1, 0], [0, 0, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 0]]);
        let a2 = IntMatrix::from_rows(&[[0, 0, 0, 0], [0, 0, 0, 1], [0, 0, 0, 0], [0, -1, 0, 0]]);
        let p = SymbolicPencil::new(alloc::vec![a1, a2]).unwrap();
        let span = MinorSpan::new(&p, 3).unwrap();
        for (r, c, f) in span.basis() {
            assert_eq!(&det_form(&p, r, c), f);
        }
        let cert = membership(&big(&[0, 1]), 2, &p).unwrap().unwrap();
        cert.verify(&p).unwrap();
        let raised = MinorSpan::new(&p, 4).unwrap();
        assert!(raised.certify(&big(&[1, 1])).is_none());
        let up = MinorSpan::new(&p, 2).unwrap().raised(3);
        up.certify(&big(&[1, 0])).unwrap().verify(&p).unwrap();
    }
}
