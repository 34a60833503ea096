use serde::Serialize;

use super::conjugator::{conjugate, FiberConjugator};
use super::simple::{certify_recurrence_within, simple_cocycle, RecurrenceCertificate, SimplePartition};
use super::tower::{build_tower, RokhlinTower};
use crate::error::{Error, Result};
use crate::measure::{CellSet, Perm};
use crate::rational::Rational;
use crate::skew::{product_distance, SkewProduct};

/// A fiber conjugator straightening `R` along a tower, and how far `J R J⁻¹` stays from `S × Id`.
#[derive(Debug, Clone)]
pub struct Trivialization {
    pub conjugator: FiberConjugator,
    pub discrepancy: Rational,
}

/// `J_x = C(b, i)⁻¹` for `x = S^i b` on the tower, `Id` on the residual.
///
/// `J R J⁻¹` then has identity fibers on every level but the top one, so the
/// discrepancy is at most `μ(top) + μ(residual) ≤ 1/height + μ(residual)`.
pub fn trivialize_on_tower(r: &SkewProduct, tower: &RokhlinTower) -> Result<Trivialization> {
    if tower.base() != r.base() {
        return Err(Error::InvalidArgument("tower was built over a different base permutation".into()));
    }
    let mut fibers = vec![Perm::identity(r.fiber_space()); r.base().len()];
    for &b in tower.base_set().cells() {
        let mut walk = r.cocycle_walk(b);
        let mut x = b;
        for _ in 1..tower.height() {
            x = r.base().apply(x);
            fibers[x] = walk.step().inverse();
        }
    }
    let conjugator = FiberConjugator::new(fibers)?;
    let straightened = conjugate(r, &conjugator)?;
    let discrepancy = product_distance(&straightened, &SkewProduct::trivial(r.base().clone(), r.fiber_space()))?;
    Ok(Trivialization { conjugator, discrepancy })
}

/// Exact trivialization when every holonomy `C(c0, L)` is the identity:
/// `J_{S^i c0} = C(c0, i)⁻¹` along each whole cycle.
fn trivialize_cohomologous(r: &SkewProduct) -> Option<FiberConjugator> {
    let s = r.base();
    let mut fibers = vec![Perm::identity(r.fiber_space()); s.len()];
    for cycle in s.cycles() {
        let mut walk = r.cocycle_walk(cycle[0]);
        for &x in &cycle[1..] {
            fibers[x] = walk.step().inverse();
        }
        if !walk.step().is_identity() {
            return None;
        }
    }
    FiberConjugator::new(fibers).ok()
}

/// A certified-recurrent simple extension close to a given one.
#[derive(Debug, Clone, Serialize)]
pub struct Recurrentized {
    pub extension: SkewProduct,
    pub partition: SimplePartition,
    pub certificate: RecurrenceCertificate,
    /// Uniform distance from the input on product cells.
    pub dist: Rational,
    /// Height of the tower used, `None` when the input was already cohomologous to `S × Id`.
    pub tower_height: Option<usize>,
}

fn simple_from_conjugator(
    r: &SkewProduct,
    j: &FiberConjugator,
    floor: usize,
    subset: &CellSet,
    tower_height: Option<usize>,
) -> Result<Recurrentized> {
    let partition = SimplePartition::from_fiber_map(j.fibers())?;
    let extension = simple_cocycle(r.base(), &partition)?;
    let certificate = certify_recurrence_within(r.base(), &partition, floor, subset)?;
    let dist = product_distance(r, &extension)?;
    Ok(Recurrentized { extension, partition, certificate, dist, tower_height })
}

/// Replaces `R` by `J⁻¹(S × Id)J` for the tower conjugator `J`, a simple
/// cocycle within `delta` of `R`, and certifies its recurrence on `subset`.
///
/// The tower has height `⌈2/delta⌉` and `eps = delta/2`. When the base is not
/// aperiodic enough for the coverage guarantee, taller towers (up to the
/// shortest cycle) are tried in order and the first one within `delta` wins.
pub fn recurrentize(r: &SkewProduct, delta: Rational, floor: usize, subset: &CellSet) -> Result<Recurrentized> {
    if !delta.in_open_unit() {
        return Err(Error::InvalidArgument(format!("delta = {delta} is not in (0, 1)")));
    }
    let s = r.base();
    let height = Rational::from_integer(2).checked_div(&delta)?.ceil() as usize;
    let min_cycle = s.min_cycle_length();
    if min_cycle < height {
        return Err(Error::NotAperiodic { required: height, min_cycle });
    }
    if let Some(j) = trivialize_cohomologous(r) {
        return simple_from_conjugator(r, &j, floor, subset, None);
    }
    let eps = delta.checked_div(&Rational::from_integer(2))?;
    match build_tower(s, height, eps) {
        Ok(tower) => {
            let triv = trivialize_on_tower(r, &tower)?;
            let out = simple_from_conjugator(r, &triv.conjugator, floor, subset, Some(height))?;
            if out.dist >= delta {
                return Err(Error::Construction(format!("tower of height {height} left distance {}", out.dist)));
            }
            Ok(out)
        }
        Err(Error::CoverageUnattainable { .. }) => {
            let mut best: Option<Rational> = None;
            for h in height..=min_cycle {
                let tower = RokhlinTower::along_cycles(s, h)?;
                let triv = trivialize_on_tower(r, &tower)?;
                let out = simple_from_conjugator(r, &triv.conjugator, floor, subset, Some(h))?;
                if out.dist < delta {
                    return Ok(out);
                }
                best = Some(best.map_or(out.dist, |b| b.min(out.dist)));
            }
            Err(Error::Construction(format!(
                "no tower of height {height}..={min_cycle} gets within {delta}; best distance {}",
                best.unwrap_or(Rational::ONE)
            )))
        }
        Err(e) => Err(e),
    }
}
