//! Canonical skew pencil blocks in two variables `(x, y)` and the `d_y` invariant.
//!
//! Block conventions: `E_k(a, b)` is the `k×k` Hankel matrix with `a` on the
//! anti-diagonal and `b` just below it; `L_k(a, b)` is `(k+1)×k` with `a` on
//! the diagonal and `b` just below it.
//!
//! ```text
//! F(α, k) = [[0, E_k(x-αy, y)], [-E_k(x-αy, y), 0]]
//! F(∞, k) = [[0, E_k(y, x)],    [-E_k(y, x), 0]]
//! S(k)    = [[0, L_k(x, y)],    [-L_k(x, y)^T, 0]]
//! ```

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::forms::{degree_monomials, nonzero_minors, pencil_invariant_factors, resultant, HomogeneousForm, SymbolicPencil, UniPoly};
use crate::linalg::{rational_rank, IntMatrix, SpanSolver};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BlockKind {
    FiniteEigen(BigRational),
    InfiniteEigen,
    Singular,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockSpec {
    pub kind: BlockKind,
    pub k: usize,
}

impl BlockSpec {
    pub fn finite(alpha: BigRational, k: usize) -> Self {
        BlockSpec { kind: BlockKind::FiniteEigen(alpha), k }
    }

    pub fn infinite(k: usize) -> Self {
        BlockSpec { kind: BlockKind::InfiniteEigen, k }
    }

    pub fn singular(k: usize) -> Self {
        BlockSpec { kind: BlockKind::Singular, k }
    }

    pub fn size(&self) -> usize {
        match self.kind {
            BlockKind::Singular => 2 * self.k + 1,
            _ => 2 * self.k,
        }
    }
}

/// Block-diagonal skew pencil followed by `zero_padding` zero rows and columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockPencil {
    pub blocks: Vec<BlockSpec>,
    pub zero_padding: usize,
}

impl BlockPencil {
    pub fn new(blocks: Vec<BlockSpec>) -> Self {
        BlockPencil { blocks, zero_padding: 0 }
    }

    pub fn size(&self) -> usize {
        self.blocks.iter().map(BlockSpec::size).sum::<usize>() + self.zero_padding
    }

    /// Random spec with `1..=max_blocks` blocks, `k ≤ max_k` and finite
    /// eigenvalues drawn from `alphas`.
    pub fn random<R: Rng>(rng: &mut R, max_blocks: usize, max_k: usize, alphas: &[BigRational]) -> Self {
        let count = rng.gen_range(1..=max_blocks);
        let blocks = (0..count)
            .map(|_| {
                let k = rng.gen_range(1..=max_k);
                match rng.gen_range(0..3) {
                    0 => BlockSpec::finite(alphas.choose(rng).expect("nonempty pool").clone(), k),
                    1 => BlockSpec::infinite(k),
                    _ => BlockSpec::singular(k),
                }
            })
            .collect();
        BlockPencil { blocks, zero_padding: rng.gen_range(0..2) }
    }
}

/// `(x, y)` coefficient pair of a linear entry.
type Lin = [BigInt; 2];

fn lin(x: i64, y: i64) -> Lin {
    [BigInt::from(x), BigInt::from(y)]
}

/// `q x - p y` for `α = p/q`, a positive multiple of `x - α y`.
fn shifted(alpha: &BigRational) -> Lin {
    [alpha.denom().clone(), -alpha.numer().clone()]
}

fn hankel(k: usize, a: &Lin, b: &Lin) -> Vec<Vec<Lin>> {
    let mut out = alloc::vec![alloc::vec![lin(0, 0); k]; k];
    for i in 0..k {
        out[i][k - 1 - i] = a.clone();
        if i >= 1 {
            out[i][k - i] = b.clone();
        }
    }
    out
}

fn ladder(k: usize, a: &Lin, b: &Lin) -> Vec<Vec<Lin>> {
    let mut out = alloc::vec![alloc::vec![lin(0, 0); k]; k + 1];
    for i in 0..k {
        out[i][i] = a.clone();
        out[i + 1][i] = b.clone();
    }
    out
}

fn to_pencil(entries: &[Vec<Lin>], skew: bool) -> Result<SymbolicPencil> {
    let rows = entries.len();
    let mats: Vec<IntMatrix> = (0..2).map(|v| IntMatrix::from_fn(rows, rows, |i, j| entries[i][j][v].clone())).collect();
    if skew {
        SymbolicPencil::new(mats)
    } else {
        SymbolicPencil::square(mats)
    }
}

fn place(target: &mut [Vec<Lin>], offset: usize, top_right: &[Vec<Lin>]) {
    // [[0, X], [-X^T, 0]] with X of shape r×c placed at `offset`
    let r = top_right.len();
    let c = top_right.first().map_or(0, Vec::len);
    for i in 0..r {
        for j in 0..c {
            let e = &top_right[i][j];
            target[offset + i][offset + r + j] = e.clone();
            target[offset + r + j][offset + i] = [-e[0].clone(), -e[1].clone()];
        }
    }
}

/// Coupling matrix (`E_k` or `L_k`) of a block.
fn coupling(spec: &BlockSpec) -> Vec<Vec<Lin>> {
    match &spec.kind {
        BlockKind::FiniteEigen(alpha) => hankel(spec.k, &shifted(alpha), &lin(0, 1)),
        BlockKind::InfiniteEigen => hankel(spec.k, &lin(0, 1), &lin(1, 0)),
        BlockKind::Singular => ladder(spec.k, &lin(1, 0), &lin(0, 1)),
    }
}

/// The block-diagonal pencil `x A_1 + y A_2` of a spec.
///
/// A rational eigenvalue `α = p/q` is realized with entries `q x - p y`,
/// which is congruent over `Q` to the block with `x - α y`.
pub fn realize(spec: &BlockPencil) -> Result<SymbolicPencil> {
    if let Some(b) = spec.blocks.iter().find(|b| b.k == 0) {
        return Err(Error::InvalidInput(format!("block parameter must be at least 1 in {b:?}")));
    }
    let m = spec.size();
    if m == 0 {
        return Err(Error::InvalidInput("empty pencil".into()));
    }
    let mut entries = alloc::vec![alloc::vec![lin(0, 0); m]; m];
    let mut offset = 0;
    for b in &spec.blocks {
        place(&mut entries, offset, &coupling(b));
        offset += b.size();
    }
    to_pencil(&entries, true)
}

fn eigen_counts(spec: &BlockPencil) -> (usize, BTreeMap<BigRational, usize>, usize) {
    let mut f = 0;
    let mut finite: BTreeMap<BigRational, usize> = BTreeMap::new();
    let mut infinite = 0;
    for b in &spec.blocks {
        match &b.kind {
            BlockKind::FiniteEigen(a) => {
                f += b.k - 1;
                *finite.entry(a.clone()).or_default() += 1;
            }
            BlockKind::InfiniteEigen => {
                f += b.k;
                infinite += 1;
            }
            BlockKind::Singular => f += b.k,
        }
    }
    (f, finite, infinite)
}

/// `2(f + Σ s_i - max s_i)` with the maximum over finite eigenvalues only.
pub fn d_y_formula(spec: &BlockPencil) -> usize {
    let (f, finite, _) = eigen_counts(spec);
    let total: usize = finite.values().sum();
    let max = finite.values().copied().max().unwrap_or(0);
    2 * (f + total - max)
}

/// The reading where infinite blocks count as one more eigenvalue family:
/// each contributes `k - 1` to `f`, one to the family sum, and competes in
/// the maximum.
pub fn d_y_alternative(spec: &BlockPencil) -> usize {
    let (f, finite, infinite) = eigen_counts(spec);
    let f_alt = f - infinite;
    let total: usize = finite.values().sum::<usize>() + infinite;
    let max = finite.values().copied().max().unwrap_or(0).max(infinite);
    2 * (f_alt + total - max)
}

/// True when [`d_y_formula`] and [`d_y_alternative`] disagree, which happens
/// exactly when the infinite blocks outnumber every finite eigenvalue family.
pub fn d_y_readings_differ(spec: &BlockPencil) -> bool {
    d_y_formula(spec) != d_y_alternative(spec)
}

/// Largest `d` with `rank(t A_1 + A_2) ≥ d` for every complex `t`: the
/// number of unit invariant factors of `t A_1 + A_2` over `Q[t]`.
pub fn d_y_exact(pencil: &SymbolicPencil) -> Result<usize> {
    Ok(pencil_invariant_factors(pencil)?.iter().filter(|f| f.is_constant()).count())
}

/// `H_k(x, y)`: all monomials of degree `k`.
pub fn full_degree_ideal(k: u32) -> Vec<HomogeneousForm> {
    degree_monomials(2, k).into_iter().map(|mono| HomogeneousForm::monomial(2, mono, BigRational::one())).collect()
}

/// Minor ideal of one block factor next to the closed form it should equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockIdeal {
    pub degree: u32,
    pub computed: Vec<HomogeneousForm>,
    pub expected: Vec<HomogeneousForm>,
}

impl BlockIdeal {
    pub fn matches(&self) -> bool {
        ideals_agree(&self.computed, &self.expected, self.degree)
    }
}

/// `I_d` of a block factor: `E_k(y, x)` or `E_k(x - αy, y)` for eigen
/// blocks with `d ∈ {k-1, k}`, the full `S(k)` with `d ∈ {2k, 2k+1}`.
pub fn block_minor_ideals(kind: &BlockKind, k: usize, d: usize) -> Result<BlockIdeal> {
    if k == 0 {
        return Err(Error::InvalidInput("block parameter must be at least 1".into()));
    }
    let unsupported = || Err(Error::InvalidInput(format!("no closed form for I_{d} of a {kind:?} block with k = {k}")));
    let y = HomogeneousForm::variable(2, 1);
    let (matrix, expected) = match kind {
        BlockKind::InfiniteEigen | BlockKind::FiniteEigen(_) => {
            let (a, top) = match kind {
                BlockKind::FiniteEigen(alpha) => {
                    let root = HomogeneousForm::variable(2, 0).sub(&y.scale(alpha));
                    (shifted(alpha), root)
                }
                _ => (lin(0, 1), y.clone()),
            };
            let b = if matches!(kind, BlockKind::InfiniteEigen) { lin(1, 0) } else { lin(0, 1) };
            let expected = if d + 1 == k {
                full_degree_ideal(d as u32)
            } else if d == k {
                alloc::vec![top.pow(k as u32)]
            } else {
                return unsupported();
            };
            (to_pencil(&hankel(k, &a, &b), false)?, expected)
        }
        BlockKind::Singular => {
            let expected = if d == 2 * k {
                full_degree_ideal(d as u32)
            } else if d == 2 * k + 1 {
                Vec::new()
            } else {
                return unsupported();
            };
            (realize(&BlockPencil::new(alloc::vec![BlockSpec::singular(k)]))?, expected)
        }
    };
    let computed = nonzero_minors(&matrix, d)?.into_iter().map(|(_, _, f)| f).collect();
    Ok(BlockIdeal { degree: d as u32, computed, expected })
}

fn span_of(forms: &[HomogeneousForm], degree: u32) -> SpanSolver {
    let dim = degree_monomials(2, degree).len();
    let mut s = SpanSolver::new(dim);
    for f in forms {
        s.insert(&f.coefficient_vector());
    }
    s
}

fn same_span(a: &[HomogeneousForm], b: &[HomogeneousForm], degree: u32) -> bool {
    let sa = span_of(a, degree);
    let sb = span_of(b, degree);
    a.iter().all(|f| sb.contains(&f.coefficient_vector())) && b.iter().all(|f| sa.contains(&f.coefficient_vector()))
}

/// Equality of two homogeneous binary ideals generated in degree `d`,
/// checked as span equality in degrees `d` and `d + 1`.
pub fn ideals_agree(a: &[HomogeneousForm], b: &[HomogeneousForm], degree: u32) -> bool {
    let a: Vec<_> = a.iter().filter(|f| !f.is_zero()).cloned().collect();
    let b: Vec<_> = b.iter().filter(|f| !f.is_zero()).cloned().collect();
    let up = |fs: &[HomogeneousForm]| -> Vec<HomogeneousForm> {
        fs.iter().flat_map(|f| (0..2).map(move |i| f.mul(&HomogeneousForm::variable(2, i)))).collect()
    };
    same_span(&a, &b, degree) && same_span(&up(&a), &up(&b), degree + 1)
}

/// Products `(x - αy)^{r1}·H_{r2-1}` and `(x - α'y)^{r2}·H_{r1-1}`.
pub fn resultant_products(r1: u32, r2: u32, alpha: &BigRational, alpha2: &BigRational) -> Vec<HomogeneousForm> {
    let lin_form = |a: &BigRational| HomogeneousForm::variable(2, 0).sub(&HomogeneousForm::variable(2, 1).scale(a));
    let p1 = lin_form(alpha).pow(r1);
    let p2 = lin_form(alpha2).pow(r2);
    let mut out: Vec<HomogeneousForm> = full_degree_ideal(r2 - 1).iter().map(|h| p1.mul(h)).collect();
    out.extend(full_degree_ideal(r1 - 1).iter().map(|h| p2.mul(h)));
    out
}

/// Whether the products of [`resultant_products`] span all forms of degree
/// `r1 + r2 - 1`, together with the resultant of the two powers.
///
/// The coefficient matrix is the Sylvester matrix of the two powers, so the
/// span is full exactly when the resultant is nonzero.
pub fn resultant_span(r1: u32, r2: u32, alpha: &BigRational, alpha2: &BigRational) -> Result<(bool, BigRational)> {
    if r1 == 0 || r2 == 0 {
        return Err(Error::InvalidInput("exponents must be positive".into()));
    }
    let rows: Vec<Vec<BigRational>> =
        resultant_products(r1, r2, alpha, alpha2).iter().map(HomogeneousForm::coefficient_vector).collect();
    let full = rational_rank(&rows) == (r1 + r2) as usize;
    let q1 = UniPoly::linear_root(alpha.clone()).pow(r1);
    let q2 = UniPoly::linear_root(alpha2.clone()).pow(r2);
    Ok((full, resultant(&q1, &q2)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use num_traits::Zero;

    fn q(x: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(x))
    }

    #[test]
    fn small_blocks_realize() {
        let f0 = realize(&BlockPencil::new(alloc::vec![BlockSpec::finite(q(0), 1)])).unwrap();
        assert_eq!(f0.matrices()[0], IntMatrix::from_rows(&[[0, 1], [-1, 0]]));
        assert!(f0.matrices()[1].is_zero());
        let inf = realize(&BlockPencil::new(alloc::vec![BlockSpec::infinite(1)])).unwrap();
        assert!(inf.matrices()[0].is_zero());
        assert_eq!(inf.matrices()[1], IntMatrix::from_rows(&[[0, 1], [-1, 0]]));
        let s = realize(&BlockPencil::new(alloc::vec![BlockSpec::singular(1)])).unwrap();
        assert_eq!(s.matrices()[0], IntMatrix::from_rows(&[[0, 0, 1], [0, 0, 0], [-1, 0, 0]]));
        assert_eq!(s.matrices()[1], IntMatrix::from_rows(&[[0, 0, 0], [0, 0, 1], [0, -1, 0]]));
    }

    #[test]
    fn d_y_values() {
        let a = BlockPencil::new(alloc::vec![BlockSpec::infinite(1), BlockSpec::singular(1)]);
        assert_eq!(d_y_formula(&a), 4);
        assert_eq!(d_y_exact(&realize(&a).unwrap()).unwrap(), 4);
        assert!(d_y_readings_differ(&a));
        let b = BlockPencil::new(alloc::vec![BlockSpec::finite(q(0), 1)]);
        assert_eq!(d_y_formula(&b), 0);
        let c = BlockPencil::new(alloc::vec![BlockSpec::finite(q(0), 1), BlockSpec::finite(q(1), 1)]);
        assert_eq!(d_y_formula(&c), 2);
        assert_eq!(d_y_exact(&realize(&c).unwrap()).unwrap(), 2);
        let zero = SymbolicPencil::new(alloc::vec![IntMatrix::zeros(3, 3), IntMatrix::zeros(3, 3)]).unwrap();
        assert_eq!(d_y_exact(&zero).unwrap(), 0);
    }

    #[test]
    fn rational_eigenvalue_entries() {
        let p = realize(&BlockPencil::new(alloc::vec![BlockSpec::finite(BigRational::new(2.into(), 3.into()), 1)])).unwrap();
        assert_eq!(p.entry_form(0, 1).to_string(), "3*x1 - 2*x2");
    }

    #[test]
    fn block_table_examples() {
        let inf = block_minor_ideals(&BlockKind::InfiniteEigen, 2, 2).unwrap();
        assert_eq!(inf.computed.len(), 1);
        assert!(inf.matches());
        assert!(block_minor_ideals(&BlockKind::Singular, 1, 3).unwrap().computed.is_empty());
        assert!(block_minor_ideals(&BlockKind::FiniteEigen(q(1)), 2, 1).unwrap().matches());
        assert!(block_minor_ideals(&BlockKind::Singular, 2, 2).is_err());
    }

    #[test]
    fn resultant_span_small() {
        let (full, res) = resultant_span(1, 1, &q(0), &q(1)).unwrap();
        assert!(full);
        assert!(!res.is_zero());
        let (full, res) = resultant_span(2, 1, &q(1), &q(1)).unwrap();
        assert!(!full);
        assert!(res.is_zero());
    }
}
