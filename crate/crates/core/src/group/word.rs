use alloc::vec::Vec;

use num_bigint::BigInt;

use super::{GroupElement, GroupPresentation};

/// A word in the free generators `e_1..e_m` together with a central tail.
///
/// Letters are `(i, ±1)` with `i` zero-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeWord {
    pub letters: Vec<(usize, i8)>,
    pub tail: Vec<BigInt>,
}

impl FreeWord {
    pub fn new(letters: Vec<(usize, i8)>, tail: Vec<BigInt>) -> Self {
        FreeWord { letters, tail }
    }

    /// Swaps letters `pos` and `pos + 1`, compensating in the tail so the
    /// represented element is unchanged.
    pub fn swap_adjacent(&self, pres: &GroupPresentation, pos: usize) -> FreeWord {
        let (i, s) = self.letters[pos];
        let (j, t) = self.letters[pos + 1];
        let mut out = self.clone();
        out.letters.swap(pos, pos + 1);
        let st = BigInt::from(i64::from(s) * i64::from(t));
        for (x, a) in out.tail.iter_mut().zip(pres.matrices()) {
            *x += &st * &a[(i, j)];
        }
        out
    }
}

/// Collects a word into base form `e_1^{k_1}⋯e_m^{k_m}·(0, v)` by bubble sort.
///
/// Moving `e_i^s` past `e_j^t` (i > j) costs the central factor `s·t·φ(e_i, e_j)`.
pub fn collect(pres: &GroupPresentation, word: &FreeWord) -> GroupElement {
    let mut letters = word.letters.clone();
    let mut v = word.tail.clone();
    let n = letters.len();
    for pass in 0..n {
        let mut swapped = false;
        for k in 0..n.saturating_sub(pass + 1) {
            let (i, s) = letters[k];
            let (j, t) = letters[k + 1];
            if i > j {
                let st = BigInt::from(i64::from(s) * i64::from(t));
                for (x, a) in v.iter_mut().zip(pres.matrices()) {
                    *x += &st * &a[(i, j)];
                }
                letters.swap(k, k + 1);
                swapped = true;
            }
        }
        if !swapped {
            break;
        }
    }
    let mut w = alloc::vec![BigInt::from(0); pres.m()];
    for (i, s) in letters {
        w[i] += s;
    }
    GroupElement::new(w, v)
}
