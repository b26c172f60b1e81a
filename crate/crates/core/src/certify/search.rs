use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{LowerBoundCertificate, MinorSpan};
use crate::forms::{gcd_minors_binary, rational_linear_factor, SymbolicPencil};
use crate::linalg::{check_prime, cyclic_representatives, rank_mod_p, rational_rank, reduce_mod, IntMatrix};
use crate::{Error, Result};

/// Tunables of the searches behind [`super::analyze`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Height bound for candidate vectors.
    pub height: u64,
    /// Seed for the random sample points used when `n ≥ 3`.
    pub seed: u64,
    /// Number of random sample points.
    pub samples: usize,
    /// Number of primes scanned for good bases.
    pub prime_scan: usize,
    /// Projective points allowed per prime in the scan.
    pub point_budget: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { height: 5, seed: 0, samples: 64, prime_scan: 50, point_budget: 200_000 }
    }
}

/// Primitive vectors of `Z^n` with max-norm at most `h`, one per sign class
/// (first nonzero entry positive), ordered by max-norm, then L1 norm, then
/// descending lexicographic order so `e_1` comes first.
pub fn primitive_vectors(n: usize, h: u64) -> Vec<Vec<BigInt>> {
    let h = h as i64;
    let mut out: Vec<Vec<i64>> = Vec::new();
    let mut cur = alloc::vec![-h; n];
    if n == 0 {
        return Vec::new();
    }
    'outer: loop {
        let first = cur.iter().find(|&&x| x != 0);
        if first.is_some_and(|&x| x > 0) {
            let g = cur.iter().fold(0i64, |acc, &x| acc.gcd(&x));
            if g == 1 {
                out.push(cur.clone());
            }
        }
        for x in cur.iter_mut().rev() {
            *x += 1;
            if *x <= h {
                continue 'outer;
            }
            *x = -h;
        }
        break;
    }
    let key = |v: &Vec<i64>| (v.iter().map(|x| x.abs()).max().unwrap_or(0), v.iter().map(|x| x.abs()).sum::<i64>());
    out.sort_by(|a, b| key(a).cmp(&key(b)).then_with(|| b.cmp(a)));
    out.into_iter().map(|v| v.into_iter().map(BigInt::from).collect()).collect()
}

fn primitive_part(v: &[BigInt]) -> Option<Vec<BigInt>> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return None;
    }
    let mut out: Vec<BigInt> = v.iter().map(|x| x / &g).collect();
    if out.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        out.iter_mut().for_each(|x| *x = -&*x);
    }
    Some(out)
}

/// Candidate vectors in search order: a rational linear factor of the
/// minor gcd (binary pencils), standard basis vectors, entry coefficient
/// vectors, then all primitive vectors up to the height bound.
pub fn delta_candidates(pencil: &SymbolicPencil, d: usize, height: u64) -> Result<Vec<Vec<BigInt>>> {
    let n = pencil.nvars();
    let mut out: Vec<Vec<BigInt>> = Vec::new();
    let mut push = |v: Vec<BigInt>| {
        if !out.contains(&v) {
            out.push(v);
        }
    };
    if n == 2 && d >= 1 {
        if let Some((v, _)) = rational_linear_factor(&gcd_minors_binary(pencil, d)?) {
            push(v);
        }
    }
    for i in 0..n {
        let mut e = alloc::vec![BigInt::zero(); n];
        e[i] = BigInt::from(1);
        push(e);
    }
    let m = pencil.size();
    for i in 0..m {
        for j in i + 1..m {
            if let Some(v) = primitive_part(&pencil.entry(i, j)) {
                push(v);
            }
        }
    }
    for v in primitive_vectors(n, height) {
        push(v);
    }
    Ok(out)
}

/// Rank of `M_x` at a generic point: the largest `d` with a nonzero `d×d` minor.
pub fn generic_rank(pencil: &SymbolicPencil) -> Result<usize> {
    if pencil.nvars() == 2 {
        return Ok(crate::forms::pencil_invariant_factors(pencil)?.len());
    }
    // Kronecker substitution x = (1, t, t^D, t^{D^2}, …) with D = m + 1 maps
    // distinct monomials of a nonzero minor to distinct powers of t, so the
    // minor stays nonzero at one of deg + 1 values of t
    let n = pencil.nvars();
    let m = pencil.size();
    let base = m as u32 + 1;
    let exps: Vec<u32> = (0..n as u32)
        .map(|i| if i == 0 { Some(0) } else { base.checked_pow(i - 1) })
        .collect::<Option<_>>()
        .ok_or_else(|| Error::ResourceLimit("too many variables for the rank test".into()))?;
    let points = (m as u32).saturating_mul(exps[n - 1].max(1)).saturating_add(1);
    let mut best = 0;
    for t in 0..=points {
        if best == m {
            break;
        }
        let a: Vec<BigInt> = exps.iter().map(|&e| BigInt::from(t).pow(e)).collect();
        best = best.max(pencil.evaluate(&a).rank());
    }
    Ok(best)
}

/// Largest even `d` with a certificate `(v^T x)^d ∈ I_d(M_x)` among
/// `candidates`, trying `d` downward from the generic rank.
///
/// `find` picks the certificate for one span; it may search in parallel as
/// long as it returns the first candidate in order that works.
pub fn delta_search_with(
    pencil: &SymbolicPencil,
    height: u64,
    find: &dyn Fn(&MinorSpan, &[Vec<BigInt>]) -> Option<LowerBoundCertificate>,
) -> Result<(usize, LowerBoundCertificate)> {
    let rank = generic_rank(pencil)?;
    let mut d = rank - rank % 2;
    loop {
        let span = MinorSpan::new(pencil, d)?;
        let candidates = delta_candidates(pencil, d, height)?;
        if let Some(cert) = find(&span, &candidates) {
            return Ok((d, cert));
        }
        if pencil.nvars() == 1 && d == rank {
            return Err(Error::Internal(format!("no certificate at the full rank {rank} of a single matrix")));
        }
        if d == 0 {
            return Err(Error::Internal("the empty minor certifies d = 0".into()));
        }
        d -= 2;
    }
}

/// Sequential first-match search over the candidates.
pub fn first_certificate(span: &MinorSpan, candidates: &[Vec<BigInt>]) -> Option<LowerBoundCertificate> {
    candidates.iter().find_map(|v| span.certify(v))
}

pub fn delta_search(pencil: &SymbolicPencil, height: u64) -> Result<(usize, LowerBoundCertificate)> {
    delta_search_with(pencil, height, &first_certificate)
}

/// How `d_upper` was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UpperMethod {
    RankN1,
    BinaryGcdN2,
    HeuristicInterval,
}

/// A basis of `F_p^n` whose contracted matrices all have small rank mod `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoodPrimeBasis {
    pub p: u64,
    pub basis: Vec<Vec<u64>>,
    pub ranks: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UpperBoundReport {
    pub d_upper: usize,
    pub method: UpperMethod,
    pub hyperplane_v: Option<Vec<BigInt>>,
    /// For `n ≥ 3`: `(lower, upper)` with the upper end certified by
    /// `sample_basis` and the lower end by a membership certificate.
    pub interval: Option<(usize, usize)>,
    /// Rational basis of `Q^n` whose contracted matrices have rank at most `d_upper`.
    pub sample_basis: Option<Vec<Vec<BigInt>>>,
    pub good_prime_sample: Option<GoodPrimeBasis>,
    /// Primes of the scan that admit a good basis.
    pub good_primes: Vec<u64>,
    /// Primes skipped because the projective space was over budget.
    pub skipped_primes: Vec<u64>,
}

/// A basis `a^{(1)}, …, a^{(n)}` of `F_p^n` with every `rank_p(M_{a^{(i)}}) ≤ d_target`.
pub fn good_prime_basis(pencil: &SymbolicPencil, p: u64, d_target: usize) -> Result<Option<GoodPrimeBasis>> {
    check_prime(p)?;
    let n = pencil.nvars();
    let mats: Vec<Vec<Vec<u64>>> = pencil
        .matrices()
        .iter()
        .map(|a| (0..a.rows()).map(|i| a.row(i).iter().map(|x| reduce_mod(x, p)).collect()).collect())
        .collect();
    let m = pencil.size();
    let mut basis: Vec<Vec<u64>> = Vec::new();
    let mut ranks = Vec::new();
    for a in cyclic_representatives(n, p, 1) {
        let mut ma = alloc::vec![alloc::vec![0u64; m]; m];
        for (ai, mat) in a.iter().zip(&mats) {
            for (orow, mrow) in ma.iter_mut().zip(mat) {
                for (o, x) in orow.iter_mut().zip(mrow) {
                    *o = ((*o as u128 + *ai as u128 * *x as u128) % p as u128) as u64;
                }
            }
        }
        let r = rank_mod_p(&ma, p);
        if r > d_target {
            continue;
        }
        let mut trial = basis.clone();
        trial.push(a.clone());
        if rank_mod_p(&trial, p) == trial.len() {
            basis = trial;
            ranks.push(r);
            if basis.len() == n {
                return Ok(Some(GoodPrimeBasis { p, basis, ranks }));
            }
        }
    }
    Ok(None)
}

fn projective_size(n: usize, p: u64) -> Option<u64> {
    // (p^n - 1) / (p - 1)
    let mut total: u64 = 0;
    let mut pw: u64 = 1;
    for _ in 0..n {
        total = total.checked_add(pw)?;
        pw = pw.checked_mul(p)?;
    }
    Some(total)
}

fn scan_primes(pencil: &SymbolicPencil, d: usize, opts: &SearchOptions, report: &mut UpperBoundReport) -> Result<()> {
    for p in crate::linalg::primes().take(opts.prime_scan) {
        if projective_size(pencil.nvars(), p).map_or(true, |s| s > opts.point_budget) {
            report.skipped_primes.push(p);
            continue;
        }
        if let Some(b) = good_prime_basis(pencil, p, d)? {
            report.good_primes.push(p);
            if report.good_prime_sample.is_none() {
                report.good_prime_sample = Some(b);
            }
        }
    }
    Ok(())
}

fn sample_points(n: usize, opts: &SearchOptions) -> Vec<Vec<BigInt>> {
    let mut pts = primitive_vectors(n, opts.height.min(2));
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for _ in 0..opts.samples {
        let v: Vec<BigInt> = (0..n).map(|_| BigInt::from(rng.gen_range(-10i64..=10))).collect();
        if let Some(v) = primitive_part(&v) {
            pts.push(v);
        }
    }
    pts
}

/// Upper exponent base `d(φ^C)`: exact for `n ≤ 2`, an interval otherwise.
pub fn upper_bound_d(pencil: &SymbolicPencil, opts: &SearchOptions) -> Result<UpperBoundReport> {
    let n = pencil.nvars();
    let mut report = UpperBoundReport {
        d_upper: 0,
        method: UpperMethod::RankN1,
        hyperplane_v: None,
        interval: None,
        sample_basis: None,
        good_prime_sample: None,
        good_primes: Vec::new(),
        skipped_primes: Vec::new(),
    };
    match n {
        1 => {
            report.d_upper = pencil.matrices()[0].rank();
            report.sample_basis = Some(alloc::vec![alloc::vec![BigInt::from(1)]]);
        }
        2 => {
            report.method = UpperMethod::BinaryGcdN2;
            let m = pencil.size();
            let mut d = m - m % 2;
            loop {
                let g = gcd_minors_binary(pencil, d)?;
                if !g.is_zero() {
                    if g.is_constant() {
                        break;
                    }
                    if let Some((v, _)) = rational_linear_factor(&g) {
                        report.hyperplane_v = Some(v);
                        break;
                    }
                }
                d -= 2;
            }
            report.d_upper = d;
        }
        _ => {
            report.method = UpperMethod::HeuristicInterval;
            let pts = sample_points(n, opts);
            let ranks: Vec<usize> = pts.iter().map(|a| pencil.evaluate(a).rank()).collect();
            let rank = generic_rank(pencil)?;
            let mut hi = rank - rank % 2;
            let mut basis = None;
            for d in (0..=rank).step_by(2) {
                let low: Vec<Vec<BigInt>> = pts.iter().zip(&ranks).filter(|(_, &r)| r <= d).map(|(a, _)| a.clone()).collect();
                let q: Vec<Vec<_>> =
                    low.iter().map(|a| a.iter().map(|x| num_rational::BigRational::from_integer(x.clone())).collect()).collect();
                if rational_rank(&q) == n {
                    hi = d;
                    let mut chosen: Vec<Vec<BigInt>> = Vec::new();
                    let mut chosen_q = Vec::new();
                    for (a, aq) in low.iter().zip(&q) {
                        chosen_q.push(aq.clone());
                        if rational_rank(&chosen_q) == chosen_q.len() {
                            chosen.push(a.clone());
                        } else {
                            chosen_q.pop();
                        }
                    }
                    basis = Some(chosen);
                    break;
                }
            }
            if basis.is_none() {
                // generic points realize the generic rank and span Q^n
                return Err(Error::Internal("sample points with generic rank do not span".into()));
            }
            let mut lo = 0;
            for d in (2..=hi).rev().step_by(2) {
                let span = MinorSpan::new(pencil, d)?;
                let candidates = delta_candidates(pencil, d, opts.height)?;
                let hit = (0..=2).any(|extra| {
                    let s = if extra == 0 { span.clone() } else { span.raised(d as u32 + extra) };
                    candidates.iter().any(|v| s.certify(v).is_some())
                });
                if hit {
                    lo = d;
                    break;
                }
            }
            report.d_upper = hi;
            report.interval = Some((lo, hi));
            report.sample_basis = basis;
        }
    }
    scan_primes(pencil, report.d_upper, opts, &mut report)?;
    Ok(report)
}

/// `Q^T M Q` after the variable change `P`, as used for invariance checks.
pub fn transform_pencil(pencil: &SymbolicPencil, p: &IntMatrix, q: &IntMatrix) -> SymbolicPencil {
    pencil.change_variables(p).congruence(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gaussian() -> SymbolicPencil {
        SymbolicPencil::new(alloc::vec![
            IntMatrix::from_rows(&[[0, 0, -1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, -1, 0, 0]]),
            IntMatrix::from_rows(&[[0, 0, 0, -1], [0, 0, -1, 0], [0, 1, 0, 0], [1, 0, 0, 0]]),
        ])
        .unwrap()
    }

    #[test]
    fn primitive_vector_order() {
        let v = primitive_vectors(2, 1);
        assert_eq!(v.len(), 4);
        assert_eq!(v[0], alloc::vec![BigInt::from(1), BigInt::from(0)]);
        assert_eq!(v[1], alloc::vec![BigInt::from(0), BigInt::from(1)]);
        assert_eq!(primitive_vectors(1, 5).len(), 1);
    }

    #[test]
    fn gaussian_bounds() {
        let p = gaussian();
        let (delta, cert) = delta_search(&p, 5).unwrap();
        assert_eq!(delta, 2);
        assert_eq!(cert.v, alloc::vec![BigInt::from(1), BigInt::from(0)]);
        let up = upper_bound_d(&p, &SearchOptions::default()).unwrap();
        assert_eq!(up.d_upper, 2);
        assert_eq!(up.method, UpperMethod::BinaryGcdN2);
        assert_eq!(up.hyperplane_v, None);
        assert_eq!(up.good_prime_sample.as_ref().unwrap().p, 5);
    }

    #[test]
    fn good_primes_gaussian() {
        let p = gaussian();
        assert!(good_prime_basis(&p, 5, 2).unwrap().is_some());
        assert!(good_prime_basis(&p, 3, 2).unwrap().is_none());
        let h = SymbolicPencil::new(alloc::vec![IntMatrix::from_rows(&[[0, 1], [-1, 0]])]).unwrap();
        let b = good_prime_basis(&h, 2, 2).unwrap().unwrap();
        assert_eq!(b.basis, alloc::vec![alloc::vec![1]]);
    }
}
