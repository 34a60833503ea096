//! The Halmos metric and the uniform (disagreement-set) distance.

use super::dyadic::DyadicFamily;
use super::perm::Perm;
use crate::error::Result;
use crate::rational::Rational;

/// `ρ(p, q) = Σ_i 2^{-i} (μ(pA_i Δ qA_i) + μ(p⁻¹A_i Δ q⁻¹A_i))` over the dyadic family.
///
/// For a block `A`, `|pA Δ qA| = 2(|A| − |{a ∈ A : q⁻¹p(a) ∈ A}|)`, so each
/// term is a linear scan of the block.
pub fn halmos_distance(p: &Perm, q: &Perm, fam: &DyadicFamily) -> Result<Rational> {
    p.space().ensure_same(&q.space())?;
    p.space().ensure_same(&fam.space())?;
    let n = p.len();
    let mut total = Rational::ZERO;
    for (i, block) in fam.blocks().iter().enumerate() {
        let inside = |c: usize| block.contains(&c);
        let fwd_overlap = block.clone().filter(|&a| inside(q.apply_inverse(p.apply(a)))).count();
        let inv_overlap = block.clone().filter(|&a| inside(q.apply(p.apply_inverse(a)))).count();
        let cells_moved = 2 * (2 * block.len() - fwd_overlap - inv_overlap);
        if cells_moved == 0 {
            continue;
        }
        let weight = Rational::pow2_neg(i as u32 + 1)?;
        let term = weight.checked_mul(&Rational::fraction(cells_moved, n))?;
        total = total.checked_add(&term)?;
    }
    Ok(total)
}

/// `ρ(p, Id)`.
pub fn halmos_to_identity(p: &Perm, fam: &DyadicFamily) -> Result<Rational> {
    halmos_distance(p, &Perm::identity(p.space()), fam)
}

/// `μ{c : p(c) ≠ q(c)}`.
pub fn uniform_distance(p: &Perm, q: &Perm) -> Result<Rational> {
    p.space().ensure_same(&q.space())?;
    let differing = p.forward().iter().zip(q.forward()).filter(|(a, b)| a != b).count();
    Ok(p.space().measure(differing))
}
