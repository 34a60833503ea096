//! Independent oracles shared by the integration tests. Nothing here calls
//! the crate's metric or cocycle code.
#![allow(dead_code)]

use std::collections::BTreeSet;

use skewrec::measure::{CellSpace, Perm};
use skewrec::skew::SkewProduct;
use skewrec::Rational;

pub fn sp(n: usize) -> CellSpace {
    CellSpace::new(n).unwrap()
}

pub fn rat(s: &str) -> Rational {
    s.parse().unwrap()
}

/// Every permutation of `0..n` in lexicographic order.
pub fn all_perms(n: usize) -> Vec<Perm> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for c in 0..used.len() {
            if !used[c] {
                used[c] = true;
                prefix.push(c);
                rec(prefix, used, out);
                prefix.pop();
                used[c] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out.into_iter().map(|f| Perm::from_forward(f).unwrap()).collect()
}

/// Dyadic blocks enumerated independently: level by level, as explicit sets.
pub fn brute_blocks(n: usize) -> Vec<BTreeSet<usize>> {
    let mut blocks = Vec::new();
    let mut parts = 2;
    while parts <= n {
        let w = n / parts;
        for j in 0..parts {
            blocks.push((j * w..(j + 1) * w).collect());
        }
        parts *= 2;
    }
    blocks
}

fn image(f: &[usize], set: &BTreeSet<usize>) -> BTreeSet<usize> {
    set.iter().map(|&c| f[c]).collect()
}

fn invert(f: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; f.len()];
    for (c, &i) in f.iter().enumerate() {
        inv[i] = c;
    }
    inv
}

/// Σ_i 2^{-i}(μ(pA_i Δ qA_i) + μ(p⁻¹A_i Δ q⁻¹A_i)) by explicit set images,
/// accumulated as a fraction over the common denominator N·2^M.
pub fn brute_halmos(p: &[usize], q: &[usize]) -> Rational {
    let n = p.len();
    let blocks = brute_blocks(n);
    let m = blocks.len() as u32;
    let (pi, qi) = (invert(p), invert(q));
    let mut num: i128 = 0;
    for (i, a) in blocks.iter().enumerate() {
        let fwd = image(p, a).symmetric_difference(&image(q, a)).count();
        let inv = image(&pi, a).symmetric_difference(&image(&qi, a)).count();
        num += ((fwd + inv) as i128) << (m - (i as u32 + 1));
    }
    Rational::new(num, (n as i128) << m).unwrap()
}

pub fn brute_uniform(p: &[usize], q: &[usize]) -> Rational {
    Rational::fraction(p.iter().zip(q).filter(|(a, b)| a != b).count(), p.len())
}

/// Cocycle as an explicit image table: apply T_x, then T_{Sx}, … to each y.
pub fn brute_cocycle(r: &SkewProduct, x: usize, n: usize) -> Vec<usize> {
    (0..r.fiber_space().cells())
        .map(|mut y| {
            let mut cur = x;
            for _ in 0..n {
                y = r.fiber(cur).forward()[y];
                cur = r.base().forward()[cur];
            }
            y
        })
        .collect()
}

pub fn compose_tables(outer: &[usize], inner: &[usize]) -> Vec<usize> {
    inner.iter().map(|&c| outer[c]).collect()
}
