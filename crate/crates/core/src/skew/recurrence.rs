use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::Serialize;

use super::product::SkewProduct;
use crate::error::{Error, Result};
use crate::measure::{halmos_to_identity, CellSet, DyadicFamily};
use crate::rational::Rational;

/// `D(m, n, R, A) = {x ∈ A : ρ(C(x, n, R), Id) < 1/m}` and its measure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RecurrenceReport {
    pub m: u64,
    pub n: usize,
    pub subset: CellSet,
    pub hit_set: CellSet,
    pub measure: Rational,
}

/// Outcome of a bounded search for `n > floor` with `μ(D(m, n, R, A)) > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    Found { n: usize, measure: Rational },
    /// No return inside `(floor, horizon]`. Not a proof of non-recurrence.
    Exhausted { floor: usize, horizon: usize },
}

impl Witness {
    pub fn n(&self) -> Option<usize> {
        match self {
            Witness::Found { n, .. } => Some(*n),
            Witness::Exhausted { .. } => None,
        }
    }
}

fn check_subset(r: &SkewProduct, subset: &CellSet) -> Result<()> {
    r.base_space().ensure_same(&subset.space())?;
    if subset.is_empty() {
        return Err(Error::InvalidArgument("subset A is empty".into()));
    }
    Ok(())
}

fn check_family(r: &SkewProduct, fam: &DyadicFamily) -> Result<()> {
    r.fiber_space().ensure_same(&fam.space())
}

/// `ρ(C(x, n), Id)` for every `x` in `subset` and every `n` in `ns`, as rows per `x`.
///
/// Each base cell walks its own orbit once; cells are processed in parallel
/// and collected in subset order.
fn distance_table(
    r: &SkewProduct,
    ns: &RangeInclusive<usize>,
    subset: &CellSet,
    fam: &DyadicFamily,
) -> Result<Vec<Vec<Rational>>> {
    let (lo, hi) = (*ns.start(), *ns.end());
    subset
        .cells()
        .par_iter()
        .map(|&x| {
            let mut walk = r.cocycle_walk(x);
            let mut row = Vec::with_capacity(hi + 1 - lo);
            for n in 1..=hi {
                let c = walk.step();
                if n >= lo {
                    let rho = if c.is_identity() { Rational::ZERO } else { halmos_to_identity(c, fam)? };
                    row.push(rho);
                }
            }
            Ok(row)
        })
        .collect()
}

pub fn recurrence_set(
    r: &SkewProduct,
    m: u64,
    n: usize,
    subset: &CellSet,
    fam: &DyadicFamily,
) -> Result<RecurrenceReport> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidArgument(format!("m and n must be positive (m={m}, n={n})")));
    }
    check_subset(r, subset)?;
    check_family(r, fam)?;
    let threshold = Rational::recip_of(m)?;
    let mut hits = Vec::new();
    for &x in subset.cells() {
        let c = r.cocycle(x, n)?;
        if c.is_identity() || halmos_to_identity(&c, fam)? < threshold {
            hits.push(x);
        }
    }
    let hit_set = CellSet::new(r.base_space(), hits)?;
    let measure = hit_set.measure();
    Ok(RecurrenceReport { m, n, subset: subset.clone(), hit_set, measure })
}

/// `(n, μ(D(m, n, R, A)))` for every `n` in `ns`, in order.
pub fn recurrence_profile(
    r: &SkewProduct,
    m: u64,
    ns: RangeInclusive<usize>,
    subset: &CellSet,
    fam: &DyadicFamily,
) -> Result<Vec<(usize, Rational)>> {
    let mut rows = recurrence_profiles(r, &[m], ns, subset, fam)?;
    Ok(rows.pop().map(|(_, p)| p).unwrap_or_default())
}

/// One profile per precision `m`, sharing the cocycle computation.
pub fn recurrence_profiles(
    r: &SkewProduct,
    ms: &[u64],
    ns: RangeInclusive<usize>,
    subset: &CellSet,
    fam: &DyadicFamily,
) -> Result<Vec<(u64, Vec<(usize, Rational)>)>> {
    if ns.is_empty() || *ns.start() == 0 {
        return Err(Error::InvalidArgument(format!(
            "n range {}..={} must be nonempty and start at 1 or later",
            ns.start(),
            ns.end()
        )));
    }
    if ms.contains(&0) {
        return Err(Error::InvalidArgument("m must be positive".into()));
    }
    check_subset(r, subset)?;
    check_family(r, fam)?;
    let table = distance_table(r, &ns, subset, fam)?;
    let space = r.base_space();
    ms.iter()
        .map(|&m| {
            let threshold = Rational::recip_of(m)?;
            let profile = ns
                .clone()
                .enumerate()
                .map(|(j, n)| {
                    let hits = table.iter().filter(|row| row[j] < threshold).count();
                    (n, space.measure(hits))
                })
                .collect();
            Ok((m, profile))
        })
        .collect()
}

/// Smallest `n` in `(floor, horizon]` with `μ(D(m, n, R, A)) > 0`.
pub fn find_recurrence_witness(
    r: &SkewProduct,
    m: u64,
    floor: usize,
    horizon: usize,
    subset: &CellSet,
    fam: &DyadicFamily,
) -> Result<Witness> {
    if horizon <= floor {
        return Err(Error::InvalidArgument(format!("horizon {horizon} must exceed floor {floor}")));
    }
    if m == 0 {
        return Err(Error::InvalidArgument("m must be positive".into()));
    }
    check_subset(r, subset)?;
    check_family(r, fam)?;
    let threshold = Rational::recip_of(m)?;
    let mut walks: Vec<_> = subset.cells().iter().map(|&x| r.cocycle_walk(x)).collect();
    for n in 1..=horizon {
        let mut hits = 0;
        for walk in walks.iter_mut() {
            let c = walk.step();
            if n > floor && (c.is_identity() || halmos_to_identity(c, fam)? < threshold) {
                hits += 1;
            }
        }
        if hits > 0 {
            return Ok(Witness::Found { n, measure: r.base_space().measure(hits) });
        }
    }
    Ok(Witness::Exhausted { floor, horizon })
}
