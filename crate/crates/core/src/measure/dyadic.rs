use std::ops::Range;

use serde::{Serialize, Serializer};

use super::space::CellSpace;

/// The fixed separating family `A_1, A_2, …` of proper dyadic blocks.
///
/// Blocks are listed breadth-first by level (halves, then quarters, …, then
/// single cells), left to right within a level. Block `A_i` carries weight
/// `2^{-i}` with `i` starting at 1, so there are `2N − 2` blocks in total.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DyadicFamily {
    space: CellSpace,
    blocks: Vec<Range<usize>>,
}

impl DyadicFamily {
    pub fn new(space: CellSpace) -> DyadicFamily {
        let n = space.cells();
        let mut blocks = Vec::with_capacity(2 * n - 2);
        for level in 1..=space.depth() {
            let width = n >> level;
            blocks.extend((0..1usize << level).map(|j| j * width..(j + 1) * width));
        }
        DyadicFamily { space, blocks }
    }

    pub fn space(&self) -> CellSpace {
        self.space
    }

    /// Blocks in weight order; `blocks()[i - 1]` is `A_i`.
    pub fn blocks(&self) -> &[Range<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }
}

impl Serialize for DyadicFamily {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Raw {
            cells: usize,
            blocks: Vec<Vec<usize>>,
        }
        Raw {
            cells: self.space.cells(),
            blocks: self.blocks.iter().map(|b| b.clone().collect()).collect(),
        }
        .serialize(serializer)
    }
}
