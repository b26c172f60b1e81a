//! Divisibility of central elements and empirical residual finiteness profiles.
//!
//! For `v ≠ 0` the divisibility `D(0, v)` is the minimum of
//! `|Im_{p^k}(M_a)|·p^k` over primes `p`, `k ≥ 1` and projections `a` with
//! `a·v ≢ 0 mod p^k`, where `M_a = Σ a_i A_i`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::group::{spheres, GroupElement, GroupPresentation};
use crate::linalg::{
    check_prime, cyclic_representatives, image_exponent_mod, kernel_modulus, primes, rank_mod_p, reduce_mod, snf, IntMatrix,
    Sublattice,
};
use crate::{Error, Result};

/// The realizing data of a divisibility value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisibilityWitness {
    pub p: u64,
    pub k: u32,
    pub a: Vec<BigInt>,
    pub index: BigInt,
    /// `{w : M_a w ≡ 0 mod p^k}`
    pub lattice_b: Sublattice,
    /// `{u : a·u ≡ 0 mod p^k}`
    pub lattice_d: Sublattice,
}

impl DivisibilityWitness {
    /// Recomputes the index from `(p, k, a)` and checks every stated relation.
    pub fn verify(&self, pres: &GroupPresentation, v: &[BigInt]) -> Result<()> {
        check_prime(self.p)?;
        let q = BigInt::from(self.p).pow(self.k);
        let ma = IntMatrix::linear_combination(&self.a, pres.matrices());
        let fail = |what: &str| Err(Error::Internal(format!("divisibility witness: {what}")));
        let dot: BigInt = self.a.iter().zip(v).map(|(x, y)| x * y).sum();
        if dot.is_multiple_of(&q) {
            return fail("a.v vanishes mod p^k");
        }
        let g = self.a.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if g.is_multiple_of(&BigInt::from(self.p)) {
            return fail("gcd(a) divisible by p");
        }
        let image = crate::linalg::image_size_mod(&ma, self.p, self.k)?;
        if image * &q != self.index {
            return fail("index differs from |Im M_a|·p^k");
        }
        if self.lattice_b != kernel_modulus(&ma, &q) {
            return fail("lattice B is not the kernel of M_a mod p^k");
        }
        let row = IntMatrix::from_big_rows(alloc::vec![self.a.clone()]).expect("row");
        if self.lattice_d != kernel_modulus(&row, &q) {
            return fail("lattice D is not the kernel of a mod p^k");
        }
        let (Some(ib), Some(id)) = (self.lattice_b.index(), self.lattice_d.index()) else {
            return fail("B or D has infinite index");
        };
        if ib * id != self.index {
            return fail("index is not [Z^m:B]·[Z^n:D]");
        }
        if self.lattice_d.contains(v) {
            return fail("v lies in D");
        }
        Ok(())
    }
}

fn check_v(pres: &GroupPresentation, v: &[BigInt]) -> Result<()> {
    if v.len() != pres.n() {
        return Err(Error::Dimension(format!("v has {} coordinates, the center has rank {}", v.len(), pres.n())));
    }
    if v.iter().all(Zero::is_zero) {
        return Err(Error::InvalidInput("v = 0 is the identity, which has infinite divisibility".into()));
    }
    Ok(())
}

fn mats_mod(pres: &GroupPresentation, q: u64) -> Vec<Vec<Vec<u64>>> {
    pres.matrices()
        .iter()
        .map(|a| (0..a.rows()).map(|i| a.row(i).iter().map(|x| reduce_mod(x, q)).collect()).collect())
        .collect()
}

fn combo_mod(mats: &[Vec<Vec<u64>>], a: &[u64], q: u64) -> Vec<Vec<u64>> {
    let m = mats[0].len();
    let mut out = alloc::vec![alloc::vec![0u64; m]; m];
    for (ai, mat) in a.iter().zip(mats) {
        if *ai == 0 {
            continue;
        }
        for (orow, mrow) in out.iter_mut().zip(mat) {
            for (o, x) in orow.iter_mut().zip(mrow) {
                *o = ((*o as u128 + *ai as u128 * *x as u128) % q as u128) as u64;
            }
        }
    }
    out
}

fn dot_mod(a: &[u64], v: &[u64], q: u64) -> u64 {
    a.iter().zip(v).fold(0u128, |acc, (x, y)| (acc + *x as u128 * *y as u128) % q as u128) as u64
}

/// Largest invariant factor of the `n × C(m,2)` value matrix of `φ`, or zero
/// when that matrix has rank below `n`.
///
/// For primes not dividing it, no nonzero `a` makes `M_a ≡ 0 mod p`, so every
/// rank mod `p` is at least 2.
fn fullness_discriminant(pres: &GroupPresentation) -> BigInt {
    let m = pres.m();
    let n = pres.n();
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))).collect();
    let values = IntMatrix::from_fn(n, pairs.len(), |k, c| pres.matrices()[k][pairs[c]].clone());
    snf(&values).diag.get(n - 1).cloned().unwrap_or_default()
}

/// Lifts of a normalized projective point mod `p` to normalized vectors mod `p^k`.
fn lifts(abar: &[u64], p: u64, k: u32) -> Vec<Vec<u64>> {
    let n = abar.len();
    let lead = abar.iter().position(|&x| x != 0).expect("nonzero point");
    let count = p.pow(k - 1);
    let free: Vec<usize> = (0..n).filter(|&j| j != lead).collect();
    let mut counter = alloc::vec![0u64; free.len()];
    let mut out = Vec::new();
    'outer: loop {
        let mut a = abar.to_vec();
        for (&j, &c) in free.iter().zip(&counter) {
            a[j] = abar[j] + p * c;
        }
        out.push(a);
        for c in counter.iter_mut().rev() {
            *c += 1;
            if *c < count {
                continue 'outer;
            }
            *c = 0;
        }
        break;
    }
    out
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Candidate {
    value: BigInt,
    p: u64,
    k: u32,
    a: Vec<u64>,
}

struct Search<'a> {
    pres: &'a GroupPresentation,
    v: &'a [BigInt],
    cap: Option<&'a BigInt>,
    best: Option<Candidate>,
}

impl Search<'_> {
    fn consider(&mut self, c: Candidate) {
        if self.best.as_ref().map_or(true, |b| c < *b) {
            self.best = Some(c);
        }
    }

    /// Values above this cannot improve the answer.
    fn limit(&self) -> BigInt {
        let b = self.best.as_ref().expect("upper candidate exists").value.clone();
        match self.cap {
            Some(c) if c < &b => c.clone(),
            _ => b,
        }
    }

    fn scan_prime(&mut self, p: u64) -> Result<()> {
        let points = cyclic_representatives(self.pres.n(), p, 1);
        let mats_p = mats_mod(self.pres, p);
        let ranks: Vec<u32> = points.iter().map(|a| rank_mod_p(&combo_mod(&mats_p, a, p), p) as u32).collect();
        for k in 1u32.. {
            let Some(q) = p.checked_pow(k).filter(|&q| q < 1 << 62) else {
                return Err(Error::ResourceLimit(format!("prime power {p}^{k} exceeds the modular arithmetic range")));
            };
            if BigInt::from(q) > self.limit() {
                break;
            }
            let mats = mats_mod(self.pres, q);
            let vr: Vec<u64> = self.v.iter().map(|x| reduce_mod(x, q)).collect();
            for (abar, &r) in points.iter().zip(&ranks) {
                // |Im_{p^k} M_a| ≥ p^{k·rank_p(M_a)}
                if BigInt::from(p).pow(k * (1 + r)) > self.limit() {
                    continue;
                }
                for a in lifts(abar, p, k) {
                    if dot_mod(&a, &vr, q) == 0 {
                        continue;
                    }
                    let ma = combo_mod(&mats, &a, q);
                    let e = crate::linalg::local_image_exponent(ma, p, k);
                    self.consider(Candidate { value: BigInt::from(p).pow(k + e), p, k, a });
                }
            }
        }
        Ok(())
    }
}

/// Smallest candidate, searching only values up to `cap` when one is given.
fn central_search(pres: &GroupPresentation, v: &[BigInt], cap: Option<&BigInt>) -> Result<Candidate> {
    check_v(pres, v)?;
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let n = pres.n();
    let mut search = Search { pres, v, cap, best: None };

    // Upper candidate U: smallest prime not dividing gcd(v), k = 1.
    let p0 = primes().find(|&p| !g.is_multiple_of(&BigInt::from(p))).expect("infinitely many primes");
    {
        let mats = mats_mod(pres, p0);
        let vr: Vec<u64> = v.iter().map(|x| reduce_mod(x, p0)).collect();
        for a in cyclic_representatives(n, p0, 1) {
            if dot_mod(&a, &vr, p0) == 0 {
                continue;
            }
            let r = rank_mod_p(&combo_mod(&mats, &a, p0), p0);
            search.consider(Candidate { value: BigInt::from(p0).pow(1 + r as u32), p: p0, k: 1, a });
        }
    }

    // Above the cube root of the limit only primes where some M_a vanishes
    // can contribute, and those divide `rest` once smaller primes are removed.
    let mut rest = fullness_discriminant(pres);
    for p in primes() {
        let bound = search.limit();
        let pb = BigInt::from(p);
        if pb > bound {
            break;
        }
        let divides = rest.is_multiple_of(&pb);
        if divides && !rest.is_zero() {
            while rest.is_multiple_of(&pb) {
                rest /= &pb;
            }
        }
        if pb.pow(3) > bound && !rest.is_zero() {
            if divides {
                search.scan_prime(p)?;
            }
            if rest.is_one() {
                break;
            }
            if &pb * &pb > rest {
                // `rest` is itself a prime beyond `p`.
                if rest <= search.limit() {
                    let q = rest.to_u64().ok_or_else(|| Error::ResourceLimit(format!("prime {rest} is too large")))?;
                    search.scan_prime(q)?;
                }
                break;
            }
            continue;
        }
        search.scan_prime(p)?;
    }
    Ok(search.best.expect("search always finds the upper candidate"))
}

fn witness(pres: &GroupPresentation, c: Candidate) -> (BigInt, DivisibilityWitness) {
    let a: Vec<BigInt> = c.a.iter().map(|&x| BigInt::from(x)).collect();
    let q = BigInt::from(c.p).pow(c.k);
    let ma = IntMatrix::linear_combination(&a, pres.matrices());
    let row = IntMatrix::from_big_rows(alloc::vec![a.clone()]).expect("row");
    let witness = DivisibilityWitness {
        p: c.p,
        k: c.k,
        a,
        index: c.value.clone(),
        lattice_b: kernel_modulus(&ma, &q),
        lattice_d: kernel_modulus(&row, &q),
    };
    debug_assert_eq!(BigInt::from(c.p).pow(c.k + image_exponent_mod(&ma, c.p, c.k)), c.value);
    (c.value, witness)
}

/// Exact `D(0, v)` with a witness `(p, k, a)`.
///
/// Ties are broken by smallest `p`, then `k`, then lexicographic `a`.
pub fn divisibility_central(pres: &GroupPresentation, v: &[BigInt]) -> Result<(BigInt, DivisibilityWitness)> {
    let c = central_search(pres, v, None)?;
    Ok(witness(pres, c))
}

/// Decides `D(0, v) > bound` by the same search restricted to values up to
/// `bound`: `None` when it exceeds the bound, otherwise the exact value with
/// its witness. Much cheaper than [`divisibility_central`] when `D(0, v)` is
/// far above `bound`.
pub fn divisibility_at_most(
    pres: &GroupPresentation,
    v: &[BigInt],
    bound: &BigInt,
) -> Result<Option<(BigInt, DivisibilityWitness)>> {
    let c = central_search(pres, v, Some(bound))?;
    Ok((&c.value <= bound).then(|| witness(pres, c)))
}

/// Result of the brute-force search over sublattices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    pub value: BigInt,
    pub lattice_b: Sublattice,
    pub lattice_d: Sublattice,
}

/// Column Hermite bases of all sublattices of `Z^n` with the given index.
fn lattices_of_index(n: usize, index: u64) -> Vec<Sublattice> {
    fn rec(n: usize, i: usize, remaining: u64, diag: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if i == n {
            if remaining == 1 {
                out.push(diag.clone());
            }
            return;
        }
        for d in 1..=remaining {
            if remaining % d == 0 {
                diag.push(d);
                rec(n, i + 1, remaining / d, diag, out);
                diag.pop();
            }
        }
    }
    let mut diags = Vec::new();
    rec(n, 0, index, &mut Vec::new(), &mut diags);
    let mut out = Vec::new();
    for diag in diags {
        // column j has diag[j] at row j and entries below reduced mod the row's diagonal
        let slots: Vec<(usize, usize)> = (0..n).flat_map(|j| (j + 1..n).map(move |i| (i, j))).collect();
        let mut counter = alloc::vec![0u64; slots.len()];
        'outer: loop {
            let mut cols: Vec<Vec<BigInt>> = (0..n)
                .map(|j| (0..n).map(|i| if i == j { BigInt::from(diag[j]) } else { BigInt::zero() }).collect())
                .collect();
            for (&(i, j), &c) in slots.iter().zip(&counter) {
                cols[j][i] = BigInt::from(c);
            }
            out.push(Sublattice::from_generators(n, &cols));
            for (c, &(i, _)) in counter.iter_mut().zip(&slots).rev() {
                *c += 1;
                if *c < diag[i] {
                    continue 'outer;
                }
                *c = 0;
            }
            break;
        }
    }
    out
}

/// Largest `B ⊆ Z^m` with `φ(B, Z^m) ⊆ D`.
pub fn largest_compatible_b(pres: &GroupPresentation, d: &Sublattice) -> Sublattice {
    let s = snf(d.basis());
    let m = pres.m();
    let mut b = Sublattice::full(m);
    for (j, dj) in s.diag.iter().enumerate() {
        if dj.is_one() {
            continue;
        }
        let coeffs = s.left.row(j).to_vec();
        let nj = IntMatrix::linear_combination(&coeffs, pres.matrices());
        b = b.intersect(&kernel_modulus(&nj.transpose(), dj));
    }
    b
}

/// Minimum of `[Z^m:B]·[Z^n:D]` over all `D` of index at most `bound` with
/// `v ∉ D`, by direct enumeration of Hermite bases.
pub fn divisibility_oracle(pres: &GroupPresentation, v: &[BigInt], bound: u64) -> Result<Option<OracleResult>> {
    check_v(pres, v)?;
    let n = pres.n();
    let mut best: Option<OracleResult> = None;
    for index in 1..=bound {
        if best.as_ref().is_some_and(|b| BigInt::from(index) >= b.value) {
            break;
        }
        for d in lattices_of_index(n, index) {
            if d.contains(v) {
                continue;
            }
            let b = largest_compatible_b(pres, &d);
            let ib = b.index().ok_or_else(|| Error::Internal("compatible lattice B has infinite index".into()))?;
            let value = ib * BigInt::from(index);
            if best.as_ref().map_or(true, |x| value < x.value) {
                best = Some(OracleResult { value, lattice_b: b, lattice_d: d });
            }
        }
    }
    Ok(best)
}

/// Witness of [`divisibility_upper_primes`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeBound {
    pub value: BigInt,
    pub p: u64,
    pub a: Vec<u64>,
    pub rank: usize,
}

/// `min p^{1 + rank_p(M_a)}` over the given primes and `a` with `a·v ≢ 0 mod p`.
///
/// `None` when every admissible pair is excluded.
pub fn divisibility_upper_primes(pres: &GroupPresentation, v: &[BigInt], primes: &[u64]) -> Result<Option<PrimeBound>> {
    check_v(pres, v)?;
    if primes.is_empty() {
        return Err(Error::InvalidInput("empty prime list".into()));
    }
    let mut best: Option<PrimeBound> = None;
    for &p in primes {
        check_prime(p)?;
        let mats = mats_mod(pres, p);
        let vr: Vec<u64> = v.iter().map(|x| reduce_mod(x, p)).collect();
        for a in cyclic_representatives(pres.n(), p, 1) {
            if dot_mod(&a, &vr, p) == 0 {
                continue;
            }
            let rank = rank_mod_p(&combo_mod(&mats, &a, p), p);
            let value = BigInt::from(p).pow(1 + rank as u32);
            if best.as_ref().map_or(true, |b| value < b.value) {
                best = Some(PrimeBound { value, p, a, rank });
            }
        }
    }
    Ok(best)
}

/// Divisibility of `w ≠ 0` in `Z^m`: the smallest prime power not dividing `gcd(w)`.
pub fn abelian_divisibility(w: &[BigInt]) -> Result<BigInt> {
    let g = w.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return Err(Error::InvalidInput("zero vector has infinite divisibility".into()));
    }
    let mut best: Option<BigInt> = None;
    for p in primes() {
        let pb = BigInt::from(p);
        if best.as_ref().is_some_and(|b| &pb >= b) {
            break;
        }
        let mut q = pb.clone();
        while g.is_multiple_of(&q) {
            q *= &pb;
        }
        if best.as_ref().map_or(true, |b| &q < b) {
            best = Some(q);
        }
    }
    Ok(best.expect("some prime power"))
}

/// `lcm(1, 2, …, κ)`.
pub fn lcm_upto(kappa: u64) -> BigInt {
    (1..=kappa).fold(BigInt::one(), |acc, i| acc.lcm(&BigInt::from(i)))
}

/// Per-radius maximum of the divisibility over nontrivial ball elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RFProfilePoint {
    pub radius: usize,
    pub ball_size: usize,
    pub max_divisibility: BigInt,
    pub argmax_element: GroupElement,
    /// True when the maximum is attained by a non-central element, whose
    /// value is the divisibility of `w` in `Z^m` (an upper bound).
    pub abelianization_bound: bool,
}

fn tie_key(g: &GroupElement) -> Vec<(BigInt, bool)> {
    g.w.iter().chain(&g.v).map(|x| (x.abs(), x.is_negative())).collect()
}

/// Profile for radii `1..=r_max`; central values use [`divisibility_central`].
pub fn rf_profile(pres: &GroupPresentation, r_max: usize, budget: usize) -> Result<Vec<RFProfilePoint>> {
    rf_profile_with(pres, r_max, budget, &mut |v| Ok(divisibility_central(pres, v)?.0))
}

/// As [`rf_profile`] with a caller-supplied evaluator for central elements.
pub fn rf_profile_with(
    pres: &GroupPresentation,
    r_max: usize,
    budget: usize,
    central: &mut dyn FnMut(&[BigInt]) -> Result<BigInt>,
) -> Result<Vec<RFProfilePoint>> {
    let layers = spheres(pres, r_max, budget)?;
    let mut cache: BTreeMap<Vec<BigInt>, BigInt> = BTreeMap::new();
    let mut out: Vec<RFProfilePoint> = Vec::new();
    let mut size = 1;
    let mut current: Option<(BigInt, GroupElement, bool)> = None;
    for (r, layer) in layers.iter().enumerate().skip(1) {
        size += layer.len();
        for g in layer {
            let (value, abelian) = if g.is_central() {
                let val = match cache.get(&g.v) {
                    Some(x) => x.clone(),
                    None => {
                        let x = central(&g.v)?;
                        cache.insert(g.v.clone(), x.clone());
                        x
                    }
                };
                (val, false)
            } else {
                (abelian_divisibility(&g.w)?, true)
            };
            let better = match &current {
                None => true,
                Some((bv, bg, _)) => value > *bv || (value == *bv && tie_key(g) < tie_key(bg)),
            };
            if better {
                current = Some((value, g.clone(), abelian));
            }
        }
        let (value, element, abelian) = current.clone().ok_or_else(|| Error::Internal("empty sphere".into()))?;
        out.push(RFProfilePoint { radius: r, ball_size: size, max_divisibility: value, argmax_element: element, abelianization_bound: abelian });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h3() -> GroupPresentation {
        GroupPresentation::new(2, 1, alloc::vec![IntMatrix::from_rows(&[[0, 1], [-1, 0]])]).unwrap()
    }

    fn gaussian() -> GroupPresentation {
        GroupPresentation::new(
            4,
            2,
            alloc::vec![
                IntMatrix::from_rows(&[[0, 0, -1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, -1, 0, 0]]),
                IntMatrix::from_rows(&[[0, 0, 0, -1], [0, 0, -1, 0], [0, 1, 0, 0], [1, 0, 0, 0]]),
            ],
        )
        .unwrap()
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn heisenberg_central_values() {
        let g = h3();
        for (v, value, p, k) in [(1, 8, 2, 1), (2, 27, 3, 1), (6, 64, 2, 2)] {
            let (d, w) = divisibility_central(&g, &big(&[v])).unwrap();
            assert_eq!(d, BigInt::from(value), "v = {v}");
            assert_eq!((w.p, w.k), (p, k));
            w.verify(&g, &big(&[v])).unwrap();
        }
        assert!(divisibility_central(&g, &big(&[0])).is_err());
    }

    #[test]
    fn oracle_small_bounds() {
        let g = h3();
        assert_eq!(divisibility_oracle(&g, &big(&[1]), 100).unwrap().unwrap().value, BigInt::from(8));
        assert_eq!(divisibility_oracle(&g, &big(&[1]), 1).unwrap(), None);
    }

    #[test]
    fn prime_restricted_bounds() {
        assert_eq!(divisibility_upper_primes(&h3(), &big(&[1]), &[2]).unwrap().unwrap().value, BigInt::from(8));
        assert_eq!(divisibility_upper_primes(&h3(), &big(&[2]), &[2]).unwrap(), None);
        let b = divisibility_upper_primes(&gaussian(), &big(&[1, 0]), &[5]).unwrap().unwrap();
        assert_eq!(b.value, BigInt::from(125));
    }

    #[test]
    fn abelian_values() {
        assert_eq!(abelian_divisibility(&big(&[1, 0])).unwrap(), BigInt::from(2));
        assert_eq!(abelian_divisibility(&big(&[2, 4])).unwrap(), BigInt::from(3));
        assert_eq!(abelian_divisibility(&big(&[6, 0])).unwrap(), BigInt::from(4));
        assert_eq!(lcm_upto(5), BigInt::from(60));
    }

    #[test]
    fn heisenberg_profile() {
        let prof = rf_profile(&h3(), 2, 1000).unwrap();
        assert_eq!(prof[0].radius, 1);
        assert_eq!(prof[0].ball_size, 7);
        assert_eq!(prof[0].max_divisibility, BigInt::from(8));
        assert_eq!(prof[0].argmax_element, GroupElement::from_ints(&[0, 0], &[1]));
        assert_eq!(prof[1].max_divisibility, BigInt::from(27));
        assert!(rf_profile(&h3(), 0, 1000).unwrap().is_empty());
    }
}
