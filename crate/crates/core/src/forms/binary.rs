use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{HomogeneousForm, SymbolicPencil, UniPoly};
use crate::{Error, Result};

/// Monic invariant factors over `Q[t]` of a polynomial matrix (nonzero ones only).
pub fn poly_invariant_factors(mut a: Vec<Vec<UniPoly>>) -> Vec<UniPoly> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize, usize)> = None;
            for (i, row) in a.iter().enumerate().skip(t) {
                for (j, x) in row.iter().enumerate().skip(t) {
                    if let Some(dg) = x.degree() {
                        if best.map_or(true, |b| dg < b.2) {
                            best = Some((i, j, dg));
                        }
                    }
                }
            }
            let Some((pi, pj, _)) = best else { return out };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            let pivot = a[t][t].clone();
            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let (q, _) = a[i][t].divrem(&pivot);
                for j in t..cols {
                    let s = q.mul(&a[t][j]);
                    a[i][j] = a[i][j].sub(&s);
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let (q, _) = a[t][j].divrem(&pivot);
                for row in a.iter_mut().skip(t) {
                    let s = q.mul(&row[t]);
                    row[j] = row[j].sub(&s);
                }
                clean &= a[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].divrem(&pivot).1.is_zero()));
            match bad {
                Some(i) => {
                    for j in t..cols {
                        let s = a[i][j].clone();
                        a[t][j] = a[t][j].add(&s);
                    }
                }
                None => break,
            }
        }
        out.push(a[t][t].monic());
    }
    out
}

/// Pencil `s·A_1 + A_2` (`swap = false`) or `A_1 + s·A_2` (`swap = true`) over `Q[s]`.
fn dehomogenized(pencil: &SymbolicPencil, swap: bool) -> Vec<Vec<UniPoly>> {
    let m = pencil.size();
    let (a1, a2) = (&pencil.matrices()[0], &pencil.matrices()[1]);
    (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let (c0, c1) = if swap { (&a1[(i, j)], &a2[(i, j)]) } else { (&a2[(i, j)], &a1[(i, j)]) };
                    UniPoly::new(alloc::vec![BigRational::from_integer(c0.clone()), BigRational::from_integer(c1.clone())])
                })
                .collect()
        })
        .collect()
}

/// Invariant factors of `t·A_1 + A_2` over `Q[t]`.
pub fn pencil_invariant_factors(pencil: &SymbolicPencil) -> Result<Vec<UniPoly>> {
    if pencil.nvars() != 2 {
        return Err(Error::InvalidInput(format!("binary pencil expected, got {} variables", pencil.nvars())));
    }
    Ok(poly_invariant_factors(dehomogenized(pencil, false)))
}

fn product_prefix(f: &[UniPoly], d: usize) -> UniPoly {
    if d > f.len() {
        return UniPoly::zero();
    }
    f[..d].iter().fold(UniPoly::one(), |acc, s| acc.mul(s))
}

/// Generator of the principal ideal spanned by the `d×d` minors of `x A_1 + y A_2`.
///
/// Computed from determinantal divisors of the two dehomogenized pencils:
/// the `y = 1` chart gives the part coprime to `y` and the `x = 1` chart the
/// power of `y`. Returns the zero form when all minors vanish.
pub fn gcd_minors_binary(pencil: &SymbolicPencil, d: usize) -> Result<HomogeneousForm> {
    if pencil.nvars() != 2 {
        return Err(Error::InvalidInput(format!("binary pencil expected, got {} variables", pencil.nvars())));
    }
    if d > pencil.size() {
        return Err(Error::InvalidInput(format!("minor size {d} exceeds matrix size {}", pencil.size())));
    }
    let g1 = product_prefix(&poly_invariant_factors(dehomogenized(pencil, false)), d);
    if g1.is_zero() {
        return Ok(HomogeneousForm::zero(2, d as u32));
    }
    let g2 = product_prefix(&poly_invariant_factors(dehomogenized(pencil, true)), d);
    let e = g2.valuation().expect("both charts vanish together") as u32;
    let deg = g1.degree().unwrap_or(0) as u32;
    let y_pow = HomogeneousForm::monomial(2, alloc::vec![0, e], BigRational::one());
    Ok(g1.homogenize(deg).mul(&y_pow).normalized())
}

/// Detects `g = c·(v_1 x_1 + v_2 x_2)^k` with `v` primitive and first nonzero entry positive.
pub fn rational_linear_factor(g: &HomogeneousForm) -> Option<(Vec<BigInt>, u32)> {
    assert_eq!(g.nvars(), 2, "binary form expected");
    let k = g.degree();
    if g.is_zero() || k == 0 {
        return None;
    }
    let c0 = g.coeff(&[k, 0]);
    let v: Vec<BigRational> = if c0.is_zero() {
        alloc::vec![BigRational::zero(), BigRational::one()]
    } else {
        // (x1 + r x2)^k has x1^{k-1} x2 coefficient k r
        let c1 = g.coeff(&[k - 1, 1]);
        let r = c1 / (c0 * BigRational::from_integer(BigInt::from(k)));
        alloc::vec![BigRational::one(), r]
    };
    let den = v[0].denom().lcm(v[1].denom());
    let mut ints: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from_integer(den.clone())).to_integer()).collect();
    let gcd = ints[0].gcd(&ints[1]);
    for x in ints.iter_mut() {
        *x = &*x / &gcd;
    }
    if ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        for x in ints.iter_mut() {
            *x = -&*x;
        }
    }
    let power = HomogeneousForm::linear(&ints).pow(k);
    if power.normalized() == g.normalized() {
        Some((ints, k))
    } else {
        None
    }
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

    fn lin(v: &[i64]) -> HomogeneousForm {
        HomogeneousForm::linear(&v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>())
    }

    #[test]
    fn gaussian_gcds() {
        let p = gaussian();
        assert_eq!(gcd_minors_binary(&p, 2).unwrap(), HomogeneousForm::one(2));
        assert_eq!(gcd_minors_binary(&p, 4).unwrap().to_string(), "x1^4 + 2*x1^2*x2^2 + x2^4");
        assert_eq!(gcd_minors_binary(&p, 3).unwrap().to_string(), "x1^2 + x2^2");
    }

    #[test]
    fn single_block_gcd() {
        let p = SymbolicPencil::new(alloc::vec![IntMatrix::from_rows(&[[0, 1], [-1, 0]]), IntMatrix::zeros(2, 2)]).unwrap();
        assert_eq!(gcd_minors_binary(&p, 2).unwrap().to_string(), "x1^2");
        let q = SymbolicPencil::new(alloc::vec![IntMatrix::zeros(2, 2), IntMatrix::from_rows(&[[0, 1], [-1, 0]])]).unwrap();
        assert_eq!(gcd_minors_binary(&q, 2).unwrap().to_string(), "x2^2");
        assert_eq!(gcd_minors_binary(&q, 1).unwrap().to_string(), "x2");
    }

    #[test]
    fn linear_factor_detection() {
        assert_eq!(rational_linear_factor(&lin(&[1, 0]).pow(2)), Some((alloc::vec![1.into(), 0.into()], 2)));
        let sq = lin(&[1, 0]).pow(2).add(&lin(&[0, 1]).pow(2)).pow(2);
        assert_eq!(rational_linear_factor(&sq), None);
        let cube = lin(&[2, -3]).pow(3);
        assert_eq!(rational_linear_factor(&cube), Some((alloc::vec![2.into(), (-3).into()], 3)));
        assert_eq!(rational_linear_factor(&lin(&[0, -5]).pow(2)), Some((alloc::vec![0.into(), 1.into()], 2)));
        assert_eq!(rational_linear_factor(&lin(&[1, 0]).mul(&lin(&[0, 1]))), None);
    }
}
