use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{HomogeneousForm, SymbolicPencil, UniPoly};
use crate::{Error, Result};

/// Cap on the number of intermediate minors kept by the enumeration.
pub const MINOR_STATE_BUDGET: usize = 400_000;

/// A nonzero minor, `det M[rows, cols] = scale · form` with `form` normalized.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorGenerator {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub scale: BigRational,
    pub form: HomogeneousForm,
}

fn bits(mask: u64) -> Vec<usize> {
    (0..64).filter(|&i| mask >> i & 1 == 1).collect()
}

/// All nonzero `d×d` minors, ordered by (row bitmask, column bitmask).
///
/// Minors are built row by row: a minor on rows `R ∪ {r}` with `r > max R`
/// is expanded along its last row, so only nonzero smaller minors are kept.
pub fn nonzero_minors(pencil: &SymbolicPencil, d: usize) -> Result<Vec<(Vec<usize>, Vec<usize>, HomogeneousForm)>> {
    let m = pencil.size();
    let n = pencil.nvars();
    if d > m {
        return Ok(Vec::new());
    }
    if d == 0 {
        return Ok(alloc::vec![(Vec::new(), Vec::new(), HomogeneousForm::one(n))]);
    }
    if m > 64 {
        return Err(Error::ResourceLimit(format!("minor enumeration supports matrices up to 64x64, got {m}")));
    }
    let entries: Vec<Vec<Option<HomogeneousForm>>> = (0..m)
        .map(|r| {
            (0..m)
                .map(|c| if pencil.entry_is_zero(r, c) { None } else { Some(pencil.entry_form(r, c)) })
                .collect()
        })
        .collect();
    let mut level: BTreeMap<(u64, u64), HomogeneousForm> = BTreeMap::new();
    level.insert((0, 0), HomogeneousForm::one(n));
    for j in 0..d {
        let mut next: BTreeMap<(u64, u64), HomogeneousForm> = BTreeMap::new();
        for (&(rm, cm), f) in &level {
            let start = if rm == 0 { 0 } else { 64 - rm.leading_zeros() as usize };
            // rows remaining after r must still fill the minor
            for r in start..m.saturating_sub(d - 1 - j) {
                for c in 0..m {
                    if cm >> c & 1 == 1 {
                        continue;
                    }
                    let Some(e) = &entries[r][c] else { continue };
                    let pos = (cm & ((1u64 << c) - 1)).count_ones() as usize;
                    let sign = if (j + pos) % 2 == 0 { BigRational::one() } else { -BigRational::one() };
                    let term = e.mul(f);
                    let key = (rm | 1 << r, cm | 1 << c);
                    next.entry(key)
                        .and_modify(|g| g.add_assign_scaled(&term, &sign))
                        .or_insert_with(|| term.scale(&sign));
                }
            }
        }
        next.retain(|_, g| !g.is_zero());
        if next.len() > MINOR_STATE_BUDGET {
            return Err(Error::ResourceLimit(format!("more than {MINOR_STATE_BUDGET} nonzero {}x{} minors", j + 1, j + 1)));
        }
        level = next;
    }
    let mut out: Vec<(Vec<usize>, Vec<usize>, HomogeneousForm)> =
        level.into_iter().map(|((rm, cm), f)| (bits(rm), bits(cm), f)).collect();
    out.sort_by(|a, b| (&a.0, &a.1).cmp(&(&b.0, &b.1)));
    Ok(out)
}

/// Nonzero `d×d` minors of `M_x`, deduplicated up to scalar multiples.
pub fn minor_ideal_generators(pencil: &SymbolicPencil, d: usize) -> Result<Vec<MinorGenerator>> {
    if d == 0 || d > pencil.size() {
        return Err(Error::InvalidInput(format!("minor size {d} outside 1..={}", pencil.size())));
    }
    let mut out: Vec<MinorGenerator> = Vec::new();
    for (rows, cols, f) in nonzero_minors(pencil, d)? {
        let (scale, form) = f.normalize();
        if out.iter().any(|g| g.form == form) {
            continue;
        }
        out.push(MinorGenerator { rows, cols, scale, form });
    }
    Ok(out)
}

fn interpolate_univariate(values: &[BigRational]) -> UniPoly {
    // Newton divided differences on the nodes 0, 1, ..., len-1
    let n = values.len();
    let mut dd = values.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / BigRational::from_integer(BigInt::from(level));
        }
    }
    let mut poly = UniPoly::zero();
    let mut basis = UniPoly::one();
    for (i, c) in dd.iter().enumerate() {
        poly = poly.add(&basis.scale(c));
        basis = basis.mul(&UniPoly::linear_root(BigRational::from_integer(BigInt::from(i))));
    }
    poly
}

fn interpolate_grid(k: usize, d: usize, prefix: &mut Vec<i64>, eval: &mut dyn FnMut(&[i64]) -> BigRational) -> BTreeMap<Vec<u32>, BigRational> {
    if k == 0 {
        let mut out = BTreeMap::new();
        let v = eval(prefix);
        if !v.is_zero() {
            out.insert(Vec::new(), v);
        }
        return out;
    }
    let slices: Vec<BTreeMap<Vec<u32>, BigRational>> = (0..=d as i64)
        .map(|t| {
            prefix.push(t);
            let s = interpolate_grid(k - 1, d, prefix, eval);
            prefix.pop();
            s
        })
        .collect();
    let mut keys: Vec<&Vec<u32>> = slices.iter().flat_map(|s| s.keys()).collect();
    keys.sort();
    keys.dedup();
    let mut out = BTreeMap::new();
    for key in keys {
        let values: Vec<BigRational> = slices.iter().map(|s| s.get(key).cloned().unwrap_or_else(BigRational::zero)).collect();
        let p = interpolate_univariate(&values);
        for (e, c) in p.coeffs().iter().enumerate() {
            if !c.is_zero() {
                let mut mono = alloc::vec![e as u32];
                mono.extend_from_slice(key);
                out.insert(mono, c.clone());
            }
        }
    }
    out
}

/// `det M_x[rows, cols]` by evaluation at integer points and interpolation.
///
/// This shares no code with [`nonzero_minors`] and serves as its check.
pub fn det_form(pencil: &SymbolicPencil, rows: &[usize], cols: &[usize]) -> HomogeneousForm {
    assert_eq!(rows.len(), cols.len(), "square selection");
    let n = pencil.nvars();
    let d = rows.len();
    if d == 0 {
        return HomogeneousForm::one(n);
    }
    let subs: Vec<_> = pencil.matrices().iter().map(|a| a.submatrix(rows, cols)).collect();
    let mut eval = |pt: &[i64]| -> BigRational {
        let mut a: Vec<BigInt> = pt.iter().map(|&x| BigInt::from(x)).collect();
        a.push(BigInt::one());
        BigRational::from_integer(crate::linalg::IntMatrix::linear_combination(&a, &subs).det())
    };
    let coeffs = interpolate_grid(n - 1, d, &mut Vec::new(), &mut eval);
    let mut f = HomogeneousForm::zero(n, d as u32);
    for (mono, c) in coeffs {
        let used: u32 = mono.iter().sum();
        assert!(used as usize <= d, "interpolated degree exceeds minor size");
        let mut full = mono;
        full.push(d as u32 - used);
        f.add_assign_scaled(&HomogeneousForm::monomial(n, full, c), &BigRational::one());
    }
    f
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

    #[test]
    fn gaussian_two_minors() {
        let gens = minor_ideal_generators(&gaussian(), 2).unwrap();
        let forms: Vec<_> = gens.iter().map(|g| g.form.to_string()).collect();
        assert_eq!(forms, ["x1^2 + x2^2", "x1^2", "x1*x2", "x2^2"]);
    }

    #[test]
    fn single_block_determinant() {
        let p = SymbolicPencil::new(alloc::vec![IntMatrix::from_rows(&[[0, 1], [-1, 0]])]).unwrap();
        let gens = minor_ideal_generators(&p, 2).unwrap();
        assert_eq!(gens.len(), 1);
        assert_eq!(gens[0].form.to_string(), "x1^2");
        assert!(minor_ideal_generators(&p, 3).is_err());
    }

    #[test]
    fn zero_pencil_has_no_generators() {
        let p = SymbolicPencil::new(alloc::vec![IntMatrix::zeros(3, 3)]).unwrap();
        assert!(minor_ideal_generators(&p, 2).unwrap().is_empty());
    }

    #[test]
    fn enumeration_agrees_with_interpolation() {
        let p = gaussian();
        for d in 1..=4 {
            for (rows, cols, f) in nonzero_minors(&p, d).unwrap() {
                assert_eq!(det_form(&p, &rows, &cols), f);
            }
        }
        let full = det_form(&p, &[0, 1, 2, 3], &[0, 1, 2, 3]);
        assert_eq!(full.to_string(), "x1^4 + 2*x1^2*x2^2 + x2^4");
    }
}
