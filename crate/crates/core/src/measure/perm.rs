use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::space::CellSpace;
use crate::error::{Error, Result};

/// A measure-preserving automorphism of a [`CellSpace`]: a bijection of its cells.
///
/// Both directions are stored so that inversion and preimages are O(1) lookups.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawPerm", into = "RawPerm")]
pub struct Perm {
    space: CellSpace,
    forward: Vec<usize>,
    inverse: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPerm {
    forward: Vec<usize>,
}

impl TryFrom<RawPerm> for Perm {
    type Error = Error;

    fn try_from(raw: RawPerm) -> Result<Self> {
        Perm::from_forward(raw.forward)
    }
}

impl From<Perm> for RawPerm {
    fn from(p: Perm) -> Self {
        RawPerm { forward: p.forward }
    }
}

impl std::fmt::Debug for Perm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Perm{:?}", self.forward)
    }
}

impl Perm {
    pub fn identity(space: CellSpace) -> Perm {
        let forward: Vec<usize> = (0..space.cells()).collect();
        Perm { space, inverse: forward.clone(), forward }
    }

    /// Builds a permutation from its image table; the length fixes the space.
    pub fn from_forward(forward: Vec<usize>) -> Result<Perm> {
        let space = CellSpace::new(forward.len())?;
        let mut inverse = vec![usize::MAX; forward.len()];
        for (c, &img) in forward.iter().enumerate() {
            if img >= forward.len() {
                return Err(Error::NotAPermutation(format!(
                    "image {img} of cell {c} is out of range"
                )));
            }
            if inverse[img] != usize::MAX {
                return Err(Error::NotAPermutation(format!(
                    "cells {} and {c} both map to {img}",
                    inverse[img]
                )));
            }
            inverse[img] = c;
        }
        Ok(Perm { space, forward, inverse })
    }

    /// `c ↦ c + shift mod N`. With `shift = 1` this is the single N-cycle 0→1→…→N−1→0.
    pub fn rotation(space: CellSpace, shift: usize) -> Perm {
        let n = space.cells();
        Perm::from_forward((0..n).map(|c| (c + shift) % n).collect()).expect("rotation is a bijection")
    }

    pub fn transposition(space: CellSpace, a: usize, b: usize) -> Result<Perm> {
        Perm::from_cycles(space, &[vec![a, b]])
    }

    /// Product of disjoint cycles, each listed in the order `c0 → c1 → … → c0`.
    pub fn from_cycles(space: CellSpace, cycles: &[Vec<usize>]) -> Result<Perm> {
        let mut forward: Vec<usize> = (0..space.cells()).collect();
        let mut seen = vec![false; space.cells()];
        for cycle in cycles {
            for (i, &c) in cycle.iter().enumerate() {
                space.check_cell(c)?;
                if std::mem::replace(&mut seen[c], true) {
                    return Err(Error::NotAPermutation(format!("cell {c} appears in two cycles")));
                }
                forward[c] = cycle[(i + 1) % cycle.len()];
            }
        }
        Perm::from_forward(forward)
    }

    /// Consecutive cycles of the given lengths laid over cells `0..N`.
    pub fn with_cycle_type(space: CellSpace, lengths: &[usize]) -> Result<Perm> {
        if lengths.iter().sum::<usize>() != space.cells() || lengths.contains(&0) {
            return Err(Error::InvalidArgument(format!(
                "cycle lengths {lengths:?} do not partition {} cells",
                space.cells()
            )));
        }
        let mut start = 0;
        let cycles: Vec<Vec<usize>> = lengths
            .iter()
            .map(|&len| {
                let c = (start..start + len).collect();
                start += len;
                c
            })
            .collect();
        Perm::from_cycles(space, &cycles)
    }

    pub fn space(&self) -> CellSpace {
        self.space
    }

    pub fn len(&self) -> usize {
        self.forward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forward.is_empty()
    }

    pub fn forward(&self) -> &[usize] {
        &self.forward
    }

    pub fn inverse_table(&self) -> &[usize] {
        &self.inverse
    }

    #[inline]
    pub fn apply(&self, c: usize) -> usize {
        self.forward[c]
    }

    #[inline]
    pub fn apply_inverse(&self, c: usize) -> usize {
        self.inverse[c]
    }

    /// `c` pushed forward `n` times.
    pub fn iterate(&self, mut c: usize, n: usize) -> usize {
        for _ in 0..n {
            c = self.forward[c];
        }
        c
    }

    pub fn inverse(&self) -> Perm {
        Perm { space: self.space, forward: self.inverse.clone(), inverse: self.forward.clone() }
    }

    /// `self ∘ rhs`: the map `c ↦ self(rhs(c))`.
    pub fn compose(&self, rhs: &Perm) -> Result<Perm> {
        self.space.ensure_same(&rhs.space)?;
        Ok(self.compose_unchecked(rhs))
    }

    pub(crate) fn compose_unchecked(&self, rhs: &Perm) -> Perm {
        let forward: Vec<usize> = rhs.forward.iter().map(|&c| self.forward[c]).collect();
        let inverse: Vec<usize> = self.inverse.iter().map(|&c| rhs.inverse[c]).collect();
        Perm { space: self.space, forward, inverse }
    }

    /// In-place `self ← left ∘ self`.
    pub(crate) fn left_multiply(&mut self, left: &Perm) {
        for img in self.forward.iter_mut() {
            *img = left.forward[*img];
        }
        for (c, &img) in self.forward.iter().enumerate() {
            self.inverse[img] = c;
        }
    }

    pub fn is_identity(&self) -> bool {
        self.forward.iter().enumerate().all(|(c, &img)| c == img)
    }

    /// Disjoint cycles, each starting at its smallest cell, ordered by that cell.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut c = start;
            while !seen[c] {
                seen[c] = true;
                cycle.push(c);
                c = self.forward[c];
            }
            out.push(cycle);
        }
        out
    }

    /// Length of the shortest cycle.
    pub fn min_cycle_length(&self) -> usize {
        self.cycles().iter().map(Vec::len).min().unwrap_or(0)
    }

    /// Whether every cycle has length at least `scale`.
    pub fn is_aperiodic_at(&self, scale: usize) -> bool {
        self.min_cycle_length() >= scale
    }

    /// Order in the symmetric group: lcm of the cycle lengths.
    pub fn order(&self) -> Result<u128> {
        self.cycles().iter().try_fold(1u128, |acc, c| lcm_checked(acc, c.len() as u128))
    }
}

fn lcm_checked(a: u128, b: u128) -> Result<u128> {
    (a / a.gcd(&b)).checked_mul(b).ok_or(Error::Overflow("lcm of cycle lengths"))
}
