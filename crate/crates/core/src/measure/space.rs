use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// A probability space made of `cells` equal-mass atoms, `cells` a power of two.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSpace", into = "RawSpace")]
pub struct CellSpace {
    cells: usize,
}

#[derive(Serialize, Deserialize)]
struct RawSpace {
    cells: usize,
}

impl TryFrom<RawSpace> for CellSpace {
    type Error = Error;

    fn try_from(raw: RawSpace) -> Result<Self> {
        CellSpace::new(raw.cells)
    }
}

impl From<CellSpace> for RawSpace {
    fn from(space: CellSpace) -> Self {
        RawSpace { cells: space.cells }
    }
}

impl CellSpace {
    pub fn new(cells: usize) -> Result<Self> {
        if cells < 2 || !cells.is_power_of_two() {
            return Err(Error::InvalidCellCount(cells));
        }
        Ok(CellSpace { cells })
    }

    pub fn cells(&self) -> usize {
        self.cells
    }

    /// `log2(cells)`, the depth of the dyadic refinement.
    pub fn depth(&self) -> u32 {
        self.cells.trailing_zeros()
    }

    /// Measure of a set of `count` cells.
    pub fn measure(&self, count: usize) -> Rational {
        Rational::fraction(count, self.cells)
    }

    pub fn check_cell(&self, cell: usize) -> Result<()> {
        if cell >= self.cells {
            return Err(Error::CellOutOfRange { cell, cells: self.cells });
        }
        Ok(())
    }

    pub fn ensure_same(&self, other: &CellSpace) -> Result<()> {
        if self != other {
            return Err(Error::SpaceMismatch { left: self.cells, right: other.cells });
        }
        Ok(())
    }
}

/// A subset of the cells of a [`CellSpace`], kept sorted and duplicate-free.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CellSet {
    space: CellSpace,
    cells: Vec<usize>,
}

impl Serialize for CellSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.cells.serialize(serializer)
    }
}

impl CellSet {
    pub fn new(space: CellSpace, cells: impl IntoIterator<Item = usize>) -> Result<CellSet> {
        let mut cells: Vec<usize> = cells.into_iter().collect();
        for &c in &cells {
            space.check_cell(c)?;
        }
        cells.sort_unstable();
        cells.dedup();
        Ok(CellSet { space, cells })
    }

    pub fn all(space: CellSpace) -> CellSet {
        CellSet { space, cells: (0..space.cells()).collect() }
    }

    pub fn space(&self) -> CellSpace {
        self.space
    }

    pub fn cells(&self) -> &[usize] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, cell: usize) -> bool {
        self.cells.binary_search(&cell).is_ok()
    }

    pub fn measure(&self) -> Rational {
        self.space().measure(self.cells.len())
    }

    pub fn intersection(&self, other: &CellSet) -> CellSet {
        CellSet {
            space: self.space,
            cells: self.cells.iter().copied().filter(|&c| other.contains(c)).collect(),
        }
    }

    /// Membership table indexed by cell.
    pub fn mask(&self) -> Vec<bool> {
        let mut mask = vec![false; self.space().cells()];
        for &c in &self.cells {
            mask[c] = true;
        }
        mask
    }
}
