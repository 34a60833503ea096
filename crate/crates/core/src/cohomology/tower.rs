use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::measure::{CellSet, Perm};
use crate::rational::Rational;

/// A Rokhlin–Halmos tower `B, SB, …, S^{N−1}B` of a base permutation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RokhlinTower {
    base: Perm,
    height: usize,
    base_set: CellSet,
    levels: Vec<CellSet>,
    residual: CellSet,
    coverage: Rational,
    /// For each cell on the tower: (level, base cell of its column).
    position: Vec<Option<(usize, usize)>>,
}

impl Serialize for RokhlinTower {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Raw<'a> {
            base_set: &'a CellSet,
            height: usize,
            residual: &'a CellSet,
        }
        Raw { base_set: &self.base_set, height: self.height, residual: &self.residual }.serialize(serializer)
    }
}

/// Builds a tower of the given height whose coverage exceeds `1 − eps`.
///
/// Needs every cycle of `s` to be at least `height` long, and at least
/// `height / eps` long for the coverage bound: a cycle of length `L` leaves
/// `L mod height < height ≤ eps·L` cells uncovered.
pub fn build_tower(s: &Perm, height: usize, eps: Rational) -> Result<RokhlinTower> {
    if !eps.in_open_unit() {
        return Err(Error::InvalidArgument(format!("eps = {eps} is not in (0, 1)")));
    }
    let cycles = s.cycles();
    check_heights(&cycles, height)?;
    let min_cycle = cycles.iter().map(Vec::len).min().unwrap_or(0);
    let needed = Rational::from_integer(height as i128).checked_div(&eps)?;
    if Rational::from_integer(min_cycle as i128) < needed {
        return Err(Error::CoverageUnattainable {
            required: needed.ceil() as u128,
            min_cycle,
            achievable_eps: Rational::fraction(height, min_cycle).to_string(),
        });
    }
    let tower = RokhlinTower::from_cycles(s, &cycles, height)?;
    debug_assert!(tower.coverage > Rational::ONE.checked_sub(&eps)?);
    Ok(tower)
}

fn check_heights(cycles: &[Vec<usize>], height: usize) -> Result<()> {
    if height == 0 {
        return Err(Error::InvalidArgument("tower height must be positive".into()));
    }
    match cycles.iter().find(|c| c.len() < height) {
        Some(c) => Err(Error::CycleTooShort { start: c[0], length: c.len(), required: height }),
        None => Ok(()),
    }
}

impl RokhlinTower {
    /// Walks each cycle from its smallest cell and starts a column every
    /// `height` cells, keeping only complete columns. No coverage bound is
    /// imposed beyond what the cycle lengths give.
    pub fn along_cycles(s: &Perm, height: usize) -> Result<RokhlinTower> {
        let cycles = s.cycles();
        check_heights(&cycles, height)?;
        RokhlinTower::from_cycles(s, &cycles, height)
    }

    fn from_cycles(s: &Perm, cycles: &[Vec<usize>], height: usize) -> Result<RokhlinTower> {
        let space = s.space();
        let mut bases = Vec::new();
        let mut levels = vec![Vec::new(); height];
        let mut position = vec![None; space.cells()];
        for cycle in cycles {
            for column in cycle.chunks_exact(height) {
                bases.push(column[0]);
                for (level, &c) in column.iter().enumerate() {
                    position[c] = Some((level, column[0]));
                    levels[level].push(c);
                }
            }
        }
        let coverage = space.measure(height * bases.len());
        let base_set = CellSet::new(space, bases)?;
        let levels = levels.into_iter().map(|l| CellSet::new(space, l)).collect::<Result<Vec<_>>>()?;
        let residual = CellSet::new(space, (0..space.cells()).filter(|&c| position[c].is_none()))?;
        Ok(RokhlinTower { base: s.clone(), height, base_set, levels, residual, coverage, position })
    }

    pub fn base(&self) -> &Perm {
        &self.base
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn base_set(&self) -> &CellSet {
        &self.base_set
    }

    /// `levels()[i]` is `S^i B`.
    pub fn levels(&self) -> &[CellSet] {
        &self.levels
    }

    pub fn top(&self) -> &CellSet {
        self.levels.last().expect("height is positive")
    }

    pub fn residual(&self) -> &CellSet {
        &self.residual
    }

    pub fn coverage(&self) -> Rational {
        self.coverage
    }

    /// `(level, column base)` of a covered cell, `None` on the residual.
    pub fn position(&self, cell: usize) -> Option<(usize, usize)> {
        self.position[cell]
    }
}
