use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use super::{GroupElement, GroupPresentation};
use crate::{Error, Result};

/// Default cap on the number of ball elements.
pub const DEFAULT_BALL_BUDGET: usize = 1_000_000;

/// Spheres `S(0), …, S(r)` of the word metric for the standard generators.
pub fn spheres(pres: &GroupPresentation, r: usize, budget: usize) -> Result<Vec<Vec<GroupElement>>> {
    let gens = pres.generators();
    let mut seen: BTreeSet<GroupElement> = BTreeSet::new();
    let id = pres.identity();
    seen.insert(id.clone());
    let mut layers = alloc::vec![alloc::vec![id]];
    for _ in 0..r {
        let mut next = Vec::new();
        for g in layers.last().expect("nonempty") {
            for s in &gens {
                let h = pres.multiply(g, s)?;
                if seen.insert(h.clone()) {
                    next.push(h);
                    if seen.len() > budget {
                        return Err(Error::ResourceLimit(format!("ball exceeds the budget of {budget} elements")));
                    }
                }
            }
        }
        next.sort();
        layers.push(next);
    }
    Ok(layers)
}

/// All elements of word norm at most `r`.
pub fn ball(pres: &GroupPresentation, r: usize, budget: usize) -> Result<BTreeSet<GroupElement>> {
    Ok(spheres(pres, r, budget)?.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::IntMatrix;

    #[test]
    fn heisenberg_small_balls() {
        let g = GroupPresentation::new(2, 1, alloc::vec![IntMatrix::from_rows(&[[0, 1], [-1, 0]])]).unwrap();
        assert_eq!(ball(&g, 0, 100).unwrap().len(), 1);
        assert_eq!(ball(&g, 1, 100).unwrap().len(), 7);
        assert!(matches!(ball(&g, 3, 10), Err(Error::ResourceLimit(_))));
    }
}
