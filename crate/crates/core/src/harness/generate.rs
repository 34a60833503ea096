//! Seeded instance generators.
//!
//! All randomness comes from `ChaCha8Rng::seed_from_u64(seed)`; shuffles are
//! rand 0.8's Fisher–Yates (`SliceRandom::shuffle`) and integer draws use
//! `Rng::gen_range`. Both are stable across platforms for a pinned rand
//! version, so a seed fully determines an instance.

use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cohomology::SimplePartition;
use crate::error::{Error, Result};
use crate::measure::{CellSet, CellSpace, Perm};
use crate::skew::SkewProduct;

pub type InstanceRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> InstanceRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform random permutation.
pub fn random_perm(space: CellSpace, rng: &mut InstanceRng) -> Perm {
    let mut forward: Vec<usize> = (0..space.cells()).collect();
    forward.shuffle(rng);
    Perm::from_forward(forward).expect("shuffle is a bijection")
}

/// Random permutation whose cycles are all at least `scale` long.
///
/// Cycle lengths are drawn one at a time, uniformly among the lengths that
/// leave a remainder of zero or at least `scale`; cells are then shuffled
/// and laid out along those cycles.
pub fn random_aperiodic(space: CellSpace, scale: usize, rng: &mut InstanceRng) -> Result<Perm> {
    let n = space.cells();
    let scale = scale.max(1);
    if scale > n {
        return Err(Error::InvalidArgument(format!("no permutation of {n} cells has all cycles >= {scale}")));
    }
    let mut lengths = Vec::new();
    let mut remaining = n;
    while remaining > 0 {
        let choices: Vec<usize> =
            (scale..=remaining).filter(|&l| remaining - l == 0 || remaining - l >= scale).collect();
        let len = choices[rng.gen_range(0..choices.len())];
        lengths.push(len);
        remaining -= len;
    }
    let mut cells: Vec<usize> = (0..n).collect();
    cells.shuffle(rng);
    let mut cycles = Vec::with_capacity(lengths.len());
    let mut start = 0;
    for len in lengths {
        cycles.push(cells[start..start + len].to_vec());
        start += len;
    }
    Perm::from_cycles(space, &cycles)
}

/// Extension of `base` with uniformly random fibers on `count` randomly chosen base cells (all if `None`).
pub fn random_extension(
    base: Perm,
    fiber_space: CellSpace,
    count: Option<usize>,
    rng: &mut InstanceRng,
) -> Result<SkewProduct> {
    let nx = base.len();
    let count = count.unwrap_or(nx);
    if count > nx {
        return Err(Error::InvalidArgument(format!("{count} random fibers requested for {nx} base cells")));
    }
    let mut chosen = index::sample(rng, nx, count).into_vec();
    chosen.sort_unstable();
    let mut fibers = vec![Perm::identity(fiber_space); nx];
    for x in chosen {
        fibers[x] = random_perm(fiber_space, rng);
    }
    SkewProduct::new(base, fibers)
}

/// `J⁻¹(S × Id)J` for a uniformly random fiber conjugator `J`.
pub fn random_coboundary(base: Perm, fiber_space: CellSpace, rng: &mut InstanceRng) -> Result<SkewProduct> {
    let j: Vec<Perm> = (0..base.len()).map(|_| random_perm(fiber_space, rng)).collect();
    let part = SimplePartition::from_fiber_map(&j)?;
    crate::cohomology::simple_cocycle(&base, &part)
}

/// Random partition into at most `max_blocks` nonempty blocks with random block permutations.
pub fn random_partition(
    space: CellSpace,
    fiber_space: CellSpace,
    max_blocks: usize,
    rng: &mut InstanceRng,
) -> Result<SimplePartition> {
    let k = max_blocks.clamp(1, space.cells());
    let mut labels: Vec<usize> = (0..space.cells()).map(|c| if c < k { c } else { rng.gen_range(0..k) }).collect();
    labels.shuffle(rng);
    let perms = (0..k).map(|_| random_perm(fiber_space, rng)).collect();
    SimplePartition::from_labels(&labels, perms)
}

/// Random subset with at least `min_cells` cells.
pub fn random_subset(space: CellSpace, min_cells: usize, rng: &mut InstanceRng) -> Result<CellSet> {
    let n = space.cells();
    let size = rng.gen_range(min_cells.clamp(1, n)..=n);
    CellSet::new(space, index::sample(rng, n, size).into_iter())
}
