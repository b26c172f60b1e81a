use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::hnf::{integer_kernel, row_hermite};
use super::snf::snf;
use super::{check_prime, IntMatrix};
use crate::Result;

/// A sublattice of `Z^d`, stored by a canonical Hermite basis.
///
/// The columns of `basis` generate the lattice; `basis^T` is in row Hermite
/// normal form, so two lattices are equal iff their bases are equal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sublattice {
    ambient: usize,
    basis: IntMatrix,
}

impl Sublattice {
    /// Lattice generated by the given vectors.
    pub fn from_generators(ambient: usize, gens: &[Vec<BigInt>]) -> Self {
        if gens.is_empty() {
            return Sublattice { ambient, basis: IntMatrix::zeros(ambient, 0) };
        }
        let g = IntMatrix::from_big_rows(gens.to_vec()).expect("generator lengths");
        assert_eq!(g.cols(), ambient, "generator dimension");
        let rh = row_hermite(&g);
        let rows: Vec<Vec<BigInt>> = (0..rh.rank()).map(|i| rh.h.row(i).to_vec()).collect();
        let basis = IntMatrix::from_big_rows(rows).expect("rectangular").transpose();
        Sublattice { ambient, basis }
    }

    pub fn full(ambient: usize) -> Self {
        Sublattice { ambient, basis: IntMatrix::identity(ambient) }
    }

    /// `c·Z^d`.
    pub fn scaled_full(ambient: usize, c: &BigInt) -> Self {
        let gens: Vec<Vec<BigInt>> = (0..ambient)
            .map(|i| (0..ambient).map(|j| if i == j { c.clone() } else { BigInt::zero() }).collect())
            .collect();
        Self::from_generators(ambient, &gens)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    /// Basis vectors as columns.
    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<BigInt>> {
        (0..self.basis.cols()).map(|j| self.basis.col(j)).collect()
    }

    /// Index in `Z^d`; `None` when the lattice is not full rank.
    pub fn index(&self) -> Option<BigInt> {
        if self.rank() != self.ambient {
            return None;
        }
        let mut idx = BigInt::one();
        for (i, row) in self.basis_vectors().iter().enumerate() {
            idx *= &row[i];
        }
        Some(idx)
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        assert_eq!(v.len(), self.ambient, "vector dimension");
        let mut v = v.to_vec();
        for b in self.basis_vectors() {
            let Some(piv) = b.iter().position(|x| !x.is_zero()) else { continue };
            let (q, r) = v[piv].div_rem(&b[piv]);
            if !r.is_zero() {
                return false;
            }
            for (x, y) in v.iter_mut().zip(&b) {
                *x -= &q * y;
            }
        }
        v.iter().all(Zero::is_zero)
    }

    pub fn contains_lattice(&self, other: &Sublattice) -> bool {
        other.basis_vectors().iter().all(|b| self.contains(b))
    }

    pub fn intersect(&self, other: &Sublattice) -> Sublattice {
        assert_eq!(self.ambient, other.ambient);
        let (k1, k2) = (self.rank(), other.rank());
        if k1 == 0 || k2 == 0 {
            return Sublattice::from_generators(self.ambient, &[]);
        }
        let stacked = IntMatrix::from_fn(self.ambient, k1 + k2, |i, j| {
            if j < k1 {
                self.basis[(i, j)].clone()
            } else {
                -&other.basis[(i, j - k1)]
            }
        });
        let gens: Vec<Vec<BigInt>> = integer_kernel(&stacked)
            .iter()
            .map(|y| self.basis.mul_vec(&y[..k1]))
            .collect();
        Sublattice::from_generators(self.ambient, &gens)
    }
}

/// `{w : M w ≡ 0 mod q}` for an arbitrary positive modulus.
pub fn kernel_modulus(m: &IntMatrix, q: &BigInt) -> Sublattice {
    let c = m.cols();
    let s = snf(m);
    let gens: Vec<Vec<BigInt>> = (0..c)
        .map(|i| {
            let scale = match s.diag.get(i) {
                Some(mu) => q / mu.gcd(q),
                None => BigInt::one(),
            };
            s.right.col(i).iter().map(|x| x * &scale).collect()
        })
        .collect();
    Sublattice::from_generators(c, &gens)
}

/// Preimage lattice `{w ∈ Z^m : M w ≡ 0 mod p^k}`.
pub fn kernel_mod(m: &IntMatrix, p: u64, k: u32) -> Result<Sublattice> {
    check_prime(p)?;
    Ok(kernel_modulus(m, &BigInt::from(p).pow(k)))
}

/// Size of the image of `M` acting on `(Z/p^k)^m`.
pub fn image_size_mod(m: &IntMatrix, p: u64, k: u32) -> Result<BigInt> {
    check_prime(p)?;
    let q = BigInt::from(p).pow(k);
    let s = snf(m);
    let mut size = BigInt::one();
    for i in 0..m.cols() {
        let g = match s.diag.get(i) {
            Some(mu) => mu.gcd(&q),
            None => q.clone(),
        };
        size *= &q / g;
    }
    Ok(size)
}

/// One representative `(D, a)` per sublattice `D ⊆ Z^n` with `Z^n/D ≅ Z/p^k`.
///
/// `a` is normalized so that its first coordinate that is a unit mod `p`
/// equals 1, earlier coordinates are multiples of `p` in `[0, p^k)` and later
/// ones lie in `[0, p^k)`; then `D = {u : a·u ≡ 0 mod p^k}`.
pub fn enumerate_cyclic_quotient_lattices(n: usize, p: u64, k: u32) -> Result<Vec<(Sublattice, Vec<BigInt>)>> {
    check_prime(p)?;
    let q = BigInt::from(p).pow(k);
    let mut out = Vec::new();
    for a in cyclic_representatives(n, p, k) {
        let a: Vec<BigInt> = a.into_iter().map(BigInt::from).collect();
        let row = IntMatrix::from_big_rows(alloc::vec![a.clone()]).expect("row");
        out.push((kernel_modulus(&row, &q), a));
    }
    Ok(out)
}

/// Normalized projection vectors, as in [`enumerate_cyclic_quotient_lattices`].
pub(crate) fn cyclic_representatives(n: usize, p: u64, k: u32) -> Vec<Vec<u64>> {
    let q = p.pow(k);
    let qp = p.pow(k - 1);
    let mut out = Vec::new();
    for lead in 0..n {
        // (position, number of values, step)
        let free: Vec<(usize, u64, u64)> = (0..n)
            .filter(|&j| j != lead)
            .map(|j| if j < lead { (j, qp, p) } else { (j, q, 1) })
            .collect();
        let mut counter = alloc::vec![0u64; free.len()];
        'outer: loop {
            let mut a = alloc::vec![0u64; n];
            a[lead] = 1;
            for (&(j, _, step), &c) in free.iter().zip(&counter) {
                a[j] = c * step;
            }
            out.push(a);
            for (c, &(_, size, _)) in counter.iter_mut().zip(&free).rev() {
                *c += 1;
                if *c < size {
                    continue 'outer;
                }
                *c = 0;
            }
            break;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn hermite_basis_is_canonical() {
        let a = Sublattice::from_generators(2, &[big(&[2, 0]), big(&[0, 2])]);
        let b = Sublattice::from_generators(2, &[big(&[2, 2]), big(&[2, -2]), big(&[0, 2])]);
        assert_eq!(a, b);
        assert_eq!(a.index(), Some(BigInt::from(4)));
        assert!(a.contains(&big(&[4, -2])));
        assert!(!a.contains(&big(&[1, 0])));
    }

    #[test]
    fn intersection_of_index_two_lattices() {
        let a = Sublattice::from_generators(2, &[big(&[2, 0]), big(&[0, 1])]);
        let b = Sublattice::from_generators(2, &[big(&[1, 0]), big(&[0, 2])]);
        let c = a.intersect(&b);
        assert_eq!(c, Sublattice::scaled_full(2, &BigInt::from(2)));
    }

    #[test]
    fn image_size_examples() {
        let j = IntMatrix::from_rows(&[[0, 1], [-1, 0]]);
        assert_eq!(image_size_mod(&j, 3, 1).unwrap(), BigInt::from(9));
        assert_eq!(image_size_mod(&IntMatrix::zeros(2, 2), 2, 1).unwrap(), BigInt::from(1));
        let d = IntMatrix::from_rows(&[[2, 0], [0, 4]]);
        assert_eq!(image_size_mod(&d, 2, 2).unwrap(), BigInt::from(2));
        assert!(image_size_mod(&d, 4, 1).is_err());
    }

    #[test]
    fn kernel_examples() {
        let j = IntMatrix::from_rows(&[[0, 1], [-1, 0]]);
        assert_eq!(kernel_mod(&j, 3, 1).unwrap(), Sublattice::scaled_full(2, &BigInt::from(3)));
        assert_eq!(kernel_mod(&IntMatrix::zeros(2, 2), 5, 2).unwrap(), Sublattice::full(2));
        assert_eq!(kernel_mod(&j.scale(&BigInt::from(2)), 2, 1).unwrap(), Sublattice::full(2));
    }

    #[test]
    fn cyclic_quotient_counts() {
        let l = enumerate_cyclic_quotient_lattices(1, 2, 1).unwrap();
        assert_eq!(l.len(), 1);
        assert_eq!(l[0].0, Sublattice::scaled_full(1, &BigInt::from(2)));
        assert_eq!(enumerate_cyclic_quotient_lattices(2, 2, 1).unwrap().len(), 3);
        assert_eq!(enumerate_cyclic_quotient_lattices(2, 3, 1).unwrap().len(), 4);
        assert_eq!(enumerate_cyclic_quotient_lattices(2, 2, 3).unwrap().len(), 12);
        // p^{(k-1)(n-1)} (p^n - 1)/(p - 1) for n = 3
        assert_eq!(enumerate_cyclic_quotient_lattices(3, 2, 2).unwrap().len(), 4 * 7);
    }
}
