use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::IntMatrix;

/// Deterministic primality for `p < 2^32` by trial division.
pub fn is_prime(p: u64) -> bool {
    if p < 2 || p >= 1 << 32 {
        return false;
    }
    if p < 4 {
        return true;
    }
    if p % 2 == 0 {
        return false;
    }
    let mut d = 3;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

pub fn check_prime(p: u64) -> crate::Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(crate::Error::NotPrime(p))
    }
}

/// Primes in increasing order, starting at 2.
pub fn primes() -> impl Iterator<Item = u64> {
    (2u64..).filter(|&p| is_prime(p))
}

pub(crate) fn reduce_mod(x: &BigInt, q: u64) -> u64 {
    x.mod_floor(&BigInt::from(q)).to_u64().expect("residue fits")
}

fn mul_mod(a: u64, b: u64, q: u64) -> u64 {
    ((a as u128 * b as u128) % q as u128) as u64
}

fn inv_mod(a: u64, q: u64) -> u64 {
    let (g, x, _) = ext_gcd(a as i128, q as i128);
    debug_assert_eq!(g, 1);
    x.rem_euclid(q as i128) as u64
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// Exponents `e_i` of the Smith form of a matrix over `Z/p^k`.
///
/// Entries must already be reduced mod `p^k`. A zero invariant reports `k`.
pub(crate) fn local_smith_exponents(mut a: Vec<Vec<u64>>, p: u64, k: u32) -> Vec<u32> {
    let q = p.checked_pow(k).filter(|&q| q < 1 << 62).expect("modulus below 2^62");
    let val = |x: u64| -> u32 {
        if x == 0 {
            return k;
        }
        let mut e = 0;
        let mut x = x;
        while x % p == 0 {
            x /= p;
            e += 1;
        }
        e
    };
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let steps = rows.min(cols);
    let mut out = Vec::with_capacity(steps);
    for t in 0..steps {
        let mut best: Option<(usize, usize, u32)> = None;
        'scan: for (i, row) in a.iter().enumerate().skip(t) {
            for (j, &x) in row.iter().enumerate().skip(t) {
                let e = val(x);
                if e < k && best.map_or(true, |b| e < b.2) {
                    best = Some((i, j, e));
                    if e == 0 {
                        break 'scan;
                    }
                }
            }
        }
        let Some((pi, pj, e)) = best else {
            out.extend(core::iter::repeat(k).take(steps - t));
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        let pe = p.pow(e);
        let unit_inv = inv_mod(a[t][t] / pe, q);
        for i in t + 1..rows {
            let x = a[i][t];
            if x == 0 {
                continue;
            }
            let f = mul_mod(x / pe, unit_inv, q);
            for j in t..cols {
                let s = mul_mod(f, a[t][j], q);
                a[i][j] = (a[i][j] + q - s) % q;
            }
        }
        // Column clearing never changes later invariants once the pivot column
        // below the diagonal is zero, so only the rows need updating.
        out.push(e);
    }
    out
}

/// `|Im M|` on `(Z/p^k)^m` as a power of `p`: returns the exponent.
pub(crate) fn image_exponent_mod(m: &IntMatrix, p: u64, k: u32) -> u32 {
    let q = p.pow(k);
    let a: Vec<Vec<u64>> = (0..m.rows()).map(|i| m.row(i).iter().map(|x| reduce_mod(x, q)).collect()).collect();
    local_image_exponent(a, p, k)
}

/// As [`image_exponent_mod`] for a matrix already reduced mod `p^k`.
pub(crate) fn local_image_exponent(a: Vec<Vec<u64>>, p: u64, k: u32) -> u32 {
    local_smith_exponents(a, p, k).iter().map(|&e| k - e).sum()
}

/// Rank over `F_p` of a matrix given by residues.
pub fn rank_mod_p(rows: &[Vec<u64>], p: u64) -> usize {
    local_smith_exponents(rows.to_vec(), p, 1).iter().filter(|&&e| e == 0).count()
}

pub fn rank_mod_p_int(m: &IntMatrix, p: u64) -> usize {
    let a: Vec<Vec<u64>> = (0..m.rows()).map(|i| m.row(i).iter().map(|x| reduce_mod(x, p)).collect()).collect();
    rank_mod_p(&a, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::image_size_mod;

    #[test]
    fn small_primes() {
        let ps: Vec<u64> = primes().take(8).collect();
        assert_eq!(ps, [2, 3, 5, 7, 11, 13, 17, 19]);
        assert!(is_prime(4_294_967_291));
        assert!(!is_prime(1 << 32));
        assert!(!is_prime(1));
    }

    #[test]
    fn local_exponents_match_snf_route() {
        let m = IntMatrix::from_rows(&[[2, 0, 4], [6, 8, 2], [0, 4, 12]]);
        for (p, k) in [(2, 1), (2, 3), (3, 2), (5, 1)] {
            let size = BigInt::from(p).pow(image_exponent_mod(&m, p, k));
            assert_eq!(size, image_size_mod(&m, p, k).unwrap(), "p={p} k={k}");
        }
    }

    #[test]
    fn rank_over_f2() {
        let m = IntMatrix::from_rows(&[[1, 1], [1, 1]]);
        assert_eq!(rank_mod_p_int(&m, 2), 1);
        assert_eq!(rank_mod_p_int(&IntMatrix::from_rows(&[[0, 1], [-1, 0]]), 2), 2);
    }
}
