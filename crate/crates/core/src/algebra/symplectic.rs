//! The affine symplectic group 2^{2d}:Sp(2d,2) and its two-graph.
//!
//! Points are vectors of GF(2)^{2d} coded as bitmasks; coordinates i and i+d are paired.

use super::projective::perm_from_fn;
use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation};

#[derive(Clone, Copy, Debug)]
pub struct SymplecticSpace {
    pub d: usize,
}

impl SymplecticSpace {
    pub fn new(d: usize) -> Self {
        SymplecticSpace { d }
    }

    pub fn size(&self) -> usize {
        1 << (2 * self.d)
    }

    pub fn form(&self, x: usize, y: usize) -> u32 {
        let lo = (1usize << self.d) - 1;
        let a = (x & lo) & (y >> self.d);
        let b = (x >> self.d) & (y & lo);
        (a.count_ones() + b.count_ones()) & 1
    }

    /// Quadratic form of plus type: sum x_i x_{i+d}. Polarizes to `form`.
    pub fn quadratic_plus(&self, x: usize) -> u32 {
        let lo = (1usize << self.d) - 1;
        ((x & lo) & (x >> self.d)).count_ones() & 1
    }

    /// Quadratic form of minus type: plus type with x_0^2 + x_d^2 added.
    pub fn quadratic_minus(&self, x: usize) -> u32 {
        let a = (x & 1) as u32;
        let b = ((x >> self.d) & 1) as u32;
        self.quadratic_plus(x) ^ a ^ b
    }

    /// Membership of an unordered triple in the two-graph B(x,y)+B(y,z)+B(z,x)=0.
    pub fn in_two_graph(&self, x: usize, y: usize, z: usize) -> bool {
        (self.form(x, y) + self.form(y, z) + self.form(z, x)) % 2 == 0
    }
}

pub fn symplectic_order(d: u32) -> u128 {
    let mut o: u128 = 1 << (d * d);
    for i in 1..=d {
        o *= (1u128 << (2 * i)) - 1;
    }
    o
}

/// Symplectic transvections x -> x + B(x,v) v, one per nonzero v.
pub fn symplectic_transvections(space: &SymplecticSpace) -> Result<Vec<Permutation>> {
    let n = space.size();
    (1..n)
        .map(|v| perm_from_fn(n, |x| if space.form(x, v) == 1 { x ^ v } else { x }))
        .collect()
}

pub fn affine_symplectic_group(d: usize) -> Result<PermGroup> {
    if d < 1 {
        return Err(Error::InvalidArgument(
            "affine symplectic group needs d >= 1".into(),
        ));
    }
    let space = SymplecticSpace::new(d);
    let n = space.size();
    let mut gens = symplectic_transvections(&space)?;
    gens.push(perm_from_fn(n, |x| x ^ 1)?);
    Ok(PermGroup::new(n, gens)?.with_name(format!("2^{}:Sp({},2)", 2 * d, 2 * d)))
}
