use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measure::{uniform_distance, CellSpace, Perm};
use crate::rational::Rational;

/// `R(x, y) = (Sx, T_x y)` over a base permutation `S`.
///
/// Fibers live in a pool of distinct permutations; each base cell stores an
/// index into it. The pool is ordered by first use, so two skew products
/// with the same maps have identical representations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawSkew", into = "RawSkew")]
pub struct SkewProduct {
    base: Perm,
    fiber_space: CellSpace,
    fibers: Vec<usize>,
    pool: Vec<Perm>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSkew {
    base: Perm,
    fibers: Vec<usize>,
    pool: Vec<Perm>,
}

impl TryFrom<RawSkew> for SkewProduct {
    type Error = Error;

    fn try_from(raw: RawSkew) -> Result<Self> {
        SkewProduct::from_pool(raw.base, raw.fibers, raw.pool)
    }
}

impl From<SkewProduct> for RawSkew {
    fn from(r: SkewProduct) -> Self {
        RawSkew { base: r.base, fibers: r.fibers, pool: r.pool }
    }
}

impl SkewProduct {
    /// One fiber permutation per base cell.
    pub fn new(base: Perm, fibers: Vec<Perm>) -> Result<SkewProduct> {
        if fibers.len() != base.len() {
            return Err(Error::InvalidArgument(format!(
                "{} fibers given for {} base cells",
                fibers.len(),
                base.len()
            )));
        }
        let fiber_space = fibers[0].space();
        let mut pool = Vec::new();
        let mut index_of: HashMap<Perm, usize> = HashMap::new();
        let mut indices = Vec::with_capacity(fibers.len());
        for f in fibers {
            fiber_space.ensure_same(&f.space())?;
            let next = pool.len();
            let idx = *index_of.entry(f).or_insert_with_key(|f| {
                pool.push(f.clone());
                next
            });
            indices.push(idx);
        }
        Ok(SkewProduct { base, fiber_space, fibers: indices, pool })
    }

    /// From the serialized pool form; the pool is re-canonicalized.
    pub fn from_pool(base: Perm, fibers: Vec<usize>, pool: Vec<Perm>) -> Result<SkewProduct> {
        let expanded = fibers
            .iter()
            .map(|&i| {
                pool.get(i).cloned().ok_or_else(|| {
                    Error::InvalidArgument(format!("fiber pool index {i} out of range ({} entries)", pool.len()))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        SkewProduct::new(base, expanded)
    }

    /// `S × Id`.
    pub fn trivial(base: Perm, fiber_space: CellSpace) -> SkewProduct {
        let fibers = vec![0; base.len()];
        SkewProduct { base, fiber_space, fibers, pool: vec![Perm::identity(fiber_space)] }
    }

    pub fn base(&self) -> &Perm {
        &self.base
    }

    pub fn base_space(&self) -> CellSpace {
        self.base.space()
    }

    pub fn fiber_space(&self) -> CellSpace {
        self.fiber_space
    }

    /// `T_x`.
    pub fn fiber(&self, x: usize) -> &Perm {
        &self.pool[self.fibers[x]]
    }

    pub fn fibers(&self) -> impl Iterator<Item = &Perm> + '_ {
        self.fibers.iter().map(|&i| &self.pool[i])
    }

    pub fn fiber_indices(&self) -> &[usize] {
        &self.fibers
    }

    pub fn pool(&self) -> &[Perm] {
        &self.pool
    }

    pub fn is_trivial(&self) -> bool {
        self.pool.iter().all(Perm::is_identity)
    }

    /// `R(x, y) = (Sx, T_x y)`.
    pub fn apply(&self, x: usize, y: usize) -> Result<(usize, usize)> {
        self.base_space().check_cell(x)?;
        self.fiber_space.check_cell(y)?;
        Ok((self.base.apply(x), self.fiber(x).apply(y)))
    }

    /// `C(x, n, R) = T_{S^{n−1}x} ∘ … ∘ T_{Sx} ∘ T_x`; the rightmost factor acts first.
    pub fn cocycle(&self, x: usize, n: usize) -> Result<Perm> {
        self.base_space().check_cell(x)?;
        let mut acc = Perm::identity(self.fiber_space);
        let mut cur = x;
        for _ in 0..n {
            acc.left_multiply(self.fiber(cur));
            cur = self.base.apply(cur);
        }
        Ok(acc)
    }

    /// Successive cocycle values `C(x, 1), C(x, 2), …` sharing one buffer.
    pub fn cocycle_walk(&self, x: usize) -> CocycleWalk<'_> {
        CocycleWalk { skew: self, acc: Perm::identity(self.fiber_space), cur: x }
    }

    /// `R` as a permutation of the product cells, with `(x, y)` at index `x·N_Y + y`.
    pub fn product_perm(&self) -> Perm {
        let ny = self.fiber_space.cells();
        let forward = (0..self.base.len() * ny)
            .map(|cell| {
                let (x, y) = (cell / ny, cell % ny);
                self.base.apply(x) * ny + self.fiber(x).apply(y)
            })
            .collect();
        Perm::from_forward(forward).expect("skew product is a bijection of product cells")
    }

    /// Order of `R`: the smallest `p ≥ 1` with `R^p = Id`, so `C(x, p) = Id` for all `x`.
    pub fn period(&self) -> Result<u128> {
        self.product_perm().order()
    }

    /// Holonomy around each base cycle: `C(c0, L)` for the cycle starting at `c0` with length `L`.
    pub fn holonomies(&self) -> Vec<(usize, usize, Perm)> {
        self.base
            .cycles()
            .into_iter()
            .map(|cycle| {
                let c0 = cycle[0];
                let hol = self.cocycle(c0, cycle.len()).expect("cycle start is in range");
                (c0, cycle.len(), hol)
            })
            .collect()
    }

    pub(crate) fn ensure_compatible(&self, other: &SkewProduct) -> Result<()> {
        self.base_space().ensure_same(&other.base_space())?;
        self.fiber_space.ensure_same(&other.fiber_space)
    }
}

/// Uniform distance between two skew products as maps of the product cells.
pub fn product_distance(a: &SkewProduct, b: &SkewProduct) -> Result<Rational> {
    a.ensure_compatible(b)?;
    uniform_distance(&a.product_perm(), &b.product_perm())
}

pub struct CocycleWalk<'a> {
    skew: &'a SkewProduct,
    acc: Perm,
    cur: usize,
}

impl CocycleWalk<'_> {
    /// Advances one step and returns the new cocycle value.
    pub fn step(&mut self) -> &Perm {
        self.acc.left_multiply(self.skew.fiber(self.cur));
        self.cur = self.skew.base.apply(self.cur);
        &self.acc
    }
}
