//! Affine groups on GF(q)^d. Point i is the vector with code i (see `linear::vector_code`).

use super::field::{Elem, Field};
use super::linear::{self, Matrix};
use super::projective::{gl_order, perm_from_fn};
use crate::error::Result;
use crate::perm::{PermGroup, Permutation};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AffineFlavor {
    Agl,
    Asl,
    AGammaL,
    ASigmaL,
}

pub fn affine_map(
    f: &Field,
    d: usize,
    m: &Matrix,
    shift: &[Elem],
    frob: bool,
) -> Result<Permutation> {
    let n = (f.order() as usize).pow(d as u32);
    perm_from_fn(n, |c| {
        let mut v = linear::vector_from_code(f, d, c);
        if frob {
            v = v.iter().map(|&x| f.frobenius(x)).collect();
        }
        let w = linear::vec_mat(f, &v, m);
        let w: Vec<Elem> = w.iter().zip(shift).map(|(&a, &b)| f.add(a, b)).collect();
        linear::vector_code(f, &w)
    })
}

/// Translations by an additive basis of GF(q)^d.
pub fn translations(f: &Field, d: usize) -> Result<Vec<Permutation>> {
    let id = linear::identity(d);
    let mut out = Vec::new();
    for i in 0..d {
        for m in 0..f.degree() {
            let mut shift = vec![0; d];
            shift[i] = f.exp(m as u64);
            out.push(affine_map(f, d, &id, &shift, false)?);
        }
    }
    Ok(out)
}

/// Translations together with the given matrices.
pub fn affine_from_matrices(f: &Field, d: usize, mats: &[Matrix]) -> Result<PermGroup> {
    let mut gens = translations(f, d)?;
    let zero = vec![0; d];
    for m in mats {
        gens.push(affine_map(f, d, m, &zero, false)?);
    }
    PermGroup::new((f.order() as usize).pow(d as u32), gens)
}

pub fn affine_group(d: usize, q: u64, flavor: AffineFlavor) -> Result<PermGroup> {
    let f = Field::new(q)?;
    let special = matches!(flavor, AffineFlavor::Asl | AffineFlavor::ASigmaL);
    let mut mats = linear::gl_generators(&f, d, special);
    if d == 1 && !special && f.order() > 2 {
        mats = vec![linear::diagonal(&[f.primitive()])];
    }
    let mut g = affine_from_matrices(&f, d, &mats)?;
    if matches!(flavor, AffineFlavor::AGammaL | AffineFlavor::ASigmaL) {
        let mut gens = g.generators().to_vec();
        gens.push(affine_map(&f, d, &linear::identity(d), &vec![0; d], true)?);
        g = PermGroup::new(g.degree(), gens)?;
    }
    let name = match flavor {
        AffineFlavor::Agl => format!("AGL({},{})", d, q),
        AffineFlavor::Asl => format!("ASL({},{})", d, q),
        AffineFlavor::AGammaL => format!("AGammaL({},{})", d, q),
        AffineFlavor::ASigmaL => format!("ASigmaL({},{})", d, q),
    };
    Ok(g.with_name(name))
}

pub fn affine_order(d: u32, q: u64, flavor: AffineFlavor) -> u128 {
    let (_, e) = super::field::prime_power(q).unwrap();
    let gl = gl_order(d, q);
    let t = (q as u128).pow(d);
    match flavor {
        AffineFlavor::Agl => t * gl,
        AffineFlavor::Asl => t * gl / (q as u128 - 1),
        AffineFlavor::AGammaL => t * gl * e as u128,
        AffineFlavor::ASigmaL => t * gl / (q as u128 - 1) * e as u128,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    #[test]
    fn affine_orders() {
        assert_eq!(
            affine_group(3, 2, AffineFlavor::Agl).unwrap().order(),
            BigUint::from(1344u32)
        );
        assert_eq!(
            affine_group(1, 13, AffineFlavor::Agl).unwrap().order(),
            BigUint::from(156u32)
        );
        assert_eq!(
            affine_group(4, 2, AffineFlavor::Agl).unwrap().order(),
            BigUint::from(322560u32)
        );
        for (d, q) in [(1u32, 8u64), (1, 9), (2, 3), (2, 4), (1, 16), (2, 5)] {
            for fl in [
                AffineFlavor::Agl,
                AffineFlavor::Asl,
                AffineFlavor::AGammaL,
                AffineFlavor::ASigmaL,
            ] {
                let g = affine_group(d as usize, q, fl).unwrap();
                assert_eq!(
                    g.order(),
                    BigUint::from(affine_order(d, q, fl)),
                    "{:?} {} {}",
                    fl,
                    d,
                    q
                );
            }
        }
    }
}
