use serde::Serialize;

use crate::error::{Error, Result};
use crate::measure::{CellSet, CellSpace, Perm};
use crate::skew::SkewProduct;

/// A partition `X = B_0 ⊔ B_1 ⊔ …` with one fiber permutation `J_k` per block.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimplePartition {
    blocks: Vec<CellSet>,
    perms: Vec<Perm>,
    #[serde(skip)]
    block_of: Vec<usize>,
}

impl SimplePartition {
    pub fn new(space: CellSpace, blocks: Vec<Vec<usize>>, perms: Vec<Perm>) -> Result<SimplePartition> {
        if blocks.is_empty() || blocks.len() != perms.len() {
            return Err(Error::InvalidArgument(format!(
                "partition has {} blocks but {} block permutations",
                blocks.len(),
                perms.len()
            )));
        }
        let fiber_space = perms[0].space();
        let mut block_of = vec![usize::MAX; space.cells()];
        let mut sets = Vec::with_capacity(blocks.len());
        for (k, (block, perm)) in blocks.into_iter().zip(&perms).enumerate() {
            fiber_space.ensure_same(&perm.space())?;
            if block.is_empty() {
                return Err(Error::InvalidArgument(format!("block {k} is empty")));
            }
            for &x in &block {
                space.check_cell(x)?;
                if block_of[x] != usize::MAX {
                    return Err(Error::InvalidArgument(format!(
                        "cell {x} lies in blocks {} and {k}",
                        block_of[x]
                    )));
                }
                block_of[x] = k;
            }
            sets.push(CellSet::new(space, block)?);
        }
        if let Some(x) = block_of.iter().position(|&k| k == usize::MAX) {
            return Err(Error::InvalidArgument(format!("cell {x} is in no block")));
        }
        Ok(SimplePartition { blocks: sets, perms, block_of })
    }

    /// Blocks from a per-cell label list; labels must be `0..K` with every label used.
    pub fn from_labels(labels: &[usize], perms: Vec<Perm>) -> Result<SimplePartition> {
        let space = CellSpace::new(labels.len())?;
        let mut blocks = vec![Vec::new(); perms.len()];
        for (x, &k) in labels.iter().enumerate() {
            blocks
                .get_mut(k)
                .ok_or_else(|| Error::InvalidArgument(format!("label {k} of cell {x} has no block permutation")))?
                .push(x);
        }
        SimplePartition::new(space, blocks, perms)
    }

    /// Blocks are the classes of equal `J_x`, ordered by their smallest cell.
    pub fn from_fiber_map(fibers: &[Perm]) -> Result<SimplePartition> {
        let space = CellSpace::new(fibers.len())?;
        let mut perms: Vec<Perm> = Vec::new();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for (x, f) in fibers.iter().enumerate() {
            match perms.iter().position(|p| p == f) {
                Some(k) => blocks[k].push(x),
                None => {
                    perms.push(f.clone());
                    blocks.push(vec![x]);
                }
            }
        }
        SimplePartition::new(space, blocks, perms)
    }

    pub fn space(&self) -> CellSpace {
        self.blocks[0].space()
    }

    pub fn fiber_space(&self) -> CellSpace {
        self.perms[0].space()
    }

    pub fn blocks(&self) -> &[CellSet] {
        &self.blocks
    }

    pub fn perms(&self) -> &[Perm] {
        &self.perms
    }

    /// `k(x)`.
    pub fn block_of(&self, x: usize) -> usize {
        self.block_of[x]
    }

    /// `J_{k(x)}`.
    pub fn perm_at(&self, x: usize) -> &Perm {
        &self.perms[self.block_of[x]]
    }
}

/// `J⁻¹(S × Id)J` for the piecewise-constant `J`: fibers `T_x = J_{k(Sx)}⁻¹ ∘ J_{k(x)}`.
pub fn simple_cocycle(s: &Perm, part: &SimplePartition) -> Result<SkewProduct> {
    s.space().ensure_same(&part.space())?;
    let fibers = (0..s.len())
        .map(|x| part.perm_at(s.apply(x)).inverse().compose_unchecked(part.perm_at(x)))
        .collect();
    SkewProduct::new(s.clone(), fibers)
}

/// A checked return of block `B_k` to itself after `n` steps, with `C(x, n) = Id` on the witness set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RecurrenceCertificate {
    pub block: usize,
    pub n: usize,
    pub witness: CellSet,
}

pub fn certify_recurrence(s: &Perm, part: &SimplePartition, floor: usize) -> Result<RecurrenceCertificate> {
    certify_recurrence_within(s, part, floor, &CellSet::all(s.space()))
}

/// As [`certify_recurrence`], restricted to `A`: looks for `n > floor` with
/// `W = (B_k ∩ A) ∩ S^{−n}(B_k ∩ A)` nonempty, smallest `k` first, then
/// smallest `n`, and checks every cocycle on `W` before returning.
pub fn certify_recurrence_within(
    s: &Perm,
    part: &SimplePartition,
    floor: usize,
    subset: &CellSet,
) -> Result<RecurrenceCertificate> {
    s.space().ensure_same(&part.space())?;
    s.space().ensure_same(&subset.space())?;
    let r = simple_cocycle(s, part)?;
    let cycles = s.cycles();
    let mut where_on_cycle = vec![(0usize, 0usize); s.len()];
    for (ci, cycle) in cycles.iter().enumerate() {
        for (pos, &c) in cycle.iter().enumerate() {
            where_on_cycle[c] = (ci, pos);
        }
    }
    let step = |x: usize, n: usize| {
        let (ci, pos) = where_on_cycle[x];
        let cycle = &cycles[ci];
        cycle[(pos + n) % cycle.len()]
    };
    for (k, block) in part.blocks().iter().enumerate() {
        let target = block.intersection(subset);
        if target.is_empty() {
            continue;
        }
        // Each x ∈ target is back at x after its cycle length, so the search
        // ends within one cycle length past the floor.
        let longest = target.cells().iter().map(|&x| cycles[where_on_cycle[x].0].len()).max().unwrap_or(1);
        for n in floor + 1..=floor + longest {
            let hits: Vec<usize> = target.cells().iter().copied().filter(|&x| target.contains(step(x, n))).collect();
            if hits.is_empty() {
                continue;
            }
            for &x in &hits {
                if !r.cocycle(x, n)?.is_identity() {
                    return Err(Error::Construction(format!("cocycle at x = {x}, n = {n} is not the identity")));
                }
            }
            let witness = CellSet::new(s.space(), hits)?;
            return Ok(RecurrenceCertificate { block: k, n, witness });
        }
        unreachable!("a cell returns to itself within one cycle length");
    }
    Err(Error::InvalidArgument("subset meets no block of the partition".into()))
}
