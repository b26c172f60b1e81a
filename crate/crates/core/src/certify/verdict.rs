use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::{delta_search_with, first_certificate, upper_bound_d, LowerBoundCertificate, MinorSpan, SearchOptions, UpperBoundReport};
use crate::group::GroupPresentation;
use crate::{Error, Result};

/// Residual finiteness growth lies between `log^{δ+1}` and `log^{d_upper+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RFVerdict {
    pub delta: usize,
    pub d_upper: usize,
    pub exponent_interval: (usize, usize),
    pub tight: bool,
    /// For `n ≥ 3` the lower bound is only certified over candidates up to this height.
    pub delta_height: Option<u64>,
    pub lower: LowerBoundCertificate,
    pub upper: UpperBoundReport,
}

pub fn analyze(pres: &GroupPresentation, opts: &SearchOptions) -> Result<RFVerdict> {
    analyze_with(pres, opts, &first_certificate)
}

/// As [`analyze`], with a caller-supplied candidate search (see [`delta_search_with`]).
pub fn analyze_with(
    pres: &GroupPresentation,
    opts: &SearchOptions,
    find: &dyn Fn(&MinorSpan, &[Vec<BigInt>]) -> Option<LowerBoundCertificate>,
) -> Result<RFVerdict> {
    let pencil = pres.pencil();
    let (delta, lower) = delta_search_with(&pencil, opts.height, find)?;
    let upper = upper_bound_d(&pencil, opts)?;
    let d_upper = upper.d_upper;
    if delta > d_upper {
        return Err(Error::Internal(format!("lower exponent base {delta} exceeds upper base {d_upper}")));
    }
    let tight = delta == d_upper;
    if pres.n() <= 2 && !tight {
        return Err(Error::Internal(format!("non-tight verdict [{delta}, {d_upper}] for a center of rank {}", pres.n())));
    }
    Ok(RFVerdict {
        delta,
        d_upper,
        exponent_interval: (delta + 1, d_upper + 1),
        tight,
        delta_height: (pres.n() >= 3).then_some(opts.height),
        lower,
        upper,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::IntMatrix;

    #[test]
    fn heisenberg_verdict() {
        let g = GroupPresentation::new(2, 1, alloc::vec![IntMatrix::from_rows(&[[0, 1], [-1, 0]])]).unwrap();
        let v = analyze(&g, &SearchOptions::default()).unwrap();
        assert_eq!(v.exponent_interval, (3, 3));
        assert!(v.tight);
        v.lower.verify(&g.pencil()).unwrap();
    }
}
