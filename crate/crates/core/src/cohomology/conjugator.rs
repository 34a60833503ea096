use crate::error::{Error, Result};
use crate::measure::{CellSpace, Perm};
use crate::skew::SkewProduct;

/// A fiberwise map `(x, y) ↦ (x, J_x y)` over the identity of the base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberConjugator {
    fiber_space: CellSpace,
    fibers: Vec<Perm>,
}

impl FiberConjugator {
    pub fn new(fibers: Vec<Perm>) -> Result<FiberConjugator> {
        let first = fibers.first().ok_or_else(|| Error::InvalidArgument("empty conjugator".into()))?;
        let fiber_space = first.space();
        for f in &fibers {
            fiber_space.ensure_same(&f.space())?;
        }
        Ok(FiberConjugator { fiber_space, fibers })
    }

    pub fn identity(base_cells: usize, fiber_space: CellSpace) -> FiberConjugator {
        FiberConjugator { fiber_space, fibers: vec![Perm::identity(fiber_space); base_cells] }
    }

    pub fn fiber_space(&self) -> CellSpace {
        self.fiber_space
    }

    pub fn len(&self) -> usize {
        self.fibers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fibers.is_empty()
    }

    pub fn get(&self, x: usize) -> &Perm {
        &self.fibers[x]
    }

    pub fn fibers(&self) -> &[Perm] {
        &self.fibers
    }

    pub fn inverse(&self) -> FiberConjugator {
        FiberConjugator { fiber_space: self.fiber_space, fibers: self.fibers.iter().map(Perm::inverse).collect() }
    }

    /// Fiberwise `(self ∘ rhs)_x = self_x ∘ rhs_x`.
    pub fn compose(&self, rhs: &FiberConjugator) -> Result<FiberConjugator> {
        if self.len() != rhs.len() {
            return Err(Error::SpaceMismatch { left: self.len(), right: rhs.len() });
        }
        let fibers = self.fibers.iter().zip(&rhs.fibers).map(|(a, b)| a.compose(b)).collect::<Result<_>>()?;
        Ok(FiberConjugator { fiber_space: self.fiber_space, fibers })
    }
}

/// `J ∘ R ∘ J⁻¹`: base `S`, fibers `T'_x = J_{Sx} ∘ T_x ∘ J_x⁻¹`.
pub fn conjugate(r: &SkewProduct, j: &FiberConjugator) -> Result<SkewProduct> {
    if j.len() != r.base().len() {
        return Err(Error::SpaceMismatch { left: r.base().len(), right: j.len() });
    }
    r.fiber_space().ensure_same(&j.fiber_space())?;
    let s = r.base();
    let fibers = (0..s.len())
        .map(|x| {
            let jx_inv = j.get(x).inverse();
            j.get(s.apply(x)).compose_unchecked(&r.fiber(x).compose_unchecked(&jx_inv))
        })
        .collect();
    SkewProduct::new(s.clone(), fibers)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(n: usize) -> CellSpace {
        CellSpace::new(n).unwrap()
    }

    fn sample() -> SkewProduct {
        let s = Perm::rotation(sp(4), 1);
        let fibers = vec![
            Perm::from_forward(vec![1, 2, 3, 0]).unwrap(),
            Perm::identity(sp(4)),
            Perm::transposition(sp(4), 0, 3).unwrap(),
            Perm::from_forward(vec![2, 0, 1, 3]).unwrap(),
        ];
        SkewProduct::new(s, fibers).unwrap()
    }

    fn sample_j() -> FiberConjugator {
        FiberConjugator::new(vec![
            Perm::transposition(sp(4), 1, 2).unwrap(),
            Perm::rotation(sp(4), 3),
            Perm::identity(sp(4)),
            Perm::from_forward(vec![3, 2, 1, 0]).unwrap(),
        ])
        .unwrap()
    }

    #[test]
    fn identity_conjugator_is_a_no_op() {
        let r = sample();
        assert_eq!(conjugate(&r, &FiberConjugator::identity(4, sp(4))).unwrap(), r);
    }

    #[test]
    fn inverse_conjugation_restores() {
        let r = sample();
        let j = sample_j();
        let there = conjugate(&r, &j).unwrap();
        assert_eq!(conjugate(&there, &j.inverse()).unwrap(), r);
    }

    #[test]
    fn pointwise_intertwining() {
        // J(R(p)) = R'(J(p)) for every product cell p.
        let r = sample();
        let j = sample_j();
        let rj = conjugate(&r, &j).unwrap();
        for x in 0..4 {
            for y in 0..4 {
                let (x1, y1) = r.apply(x, y).unwrap();
                let lhs = (x1, j.get(x1).apply(y1));
                let rhs = rj.apply(x, j.get(x).apply(y)).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn mismatched_sizes() {
        let r = sample();
        let j = FiberConjugator::identity(8, sp(4));
        assert!(conjugate(&r, &j).is_err());
        let j2 = FiberConjugator::identity(4, sp(8));
        assert!(conjugate(&r, &j2).is_err());
    }
}
