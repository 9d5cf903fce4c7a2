//! Groups acting on the projective line PG(1,q) and the projective plane PG(2,q).
//!
//! Line points: field element codes `0..q`, and `q` for infinity.

use std::collections::HashMap;

use super::field::{Elem, Field};
use super::linear::{self, Matrix};
use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LineFlavor {
    Psl,
    Pgl,
    PSigmaL,
    PGammaL,
    Pxl,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlaneFlavor {
    Psl3,
    Pgl3,
    PGammaL3,
}

pub fn perm_from_fn(n: usize, f: impl Fn(usize) -> usize) -> Result<Permutation> {
    Permutation::from_images((0..n).map(f).collect())
}

/// A point of PG(1,q): `None` is infinity.
pub fn line_point(q: u32, x: Option<Elem>) -> usize {
    match x {
        Some(v) => v as usize,
        None => q as usize,
    }
}

pub fn line_value(q: u32, i: usize) -> Option<Elem> {
    if i == q as usize {
        None
    } else {
        Some(i as Elem)
    }
}

/// x -> (a x + b) / (c x + d).
pub fn mobius(f: &Field, a: Elem, b: Elem, c: Elem, d: Elem) -> Result<Permutation> {
    let q = f.order();
    perm_from_fn(q as usize + 1, |i| {
        let y = match line_value(q, i) {
            None => {
                if c == 0 {
                    None
                } else {
                    Some(f.div(a, c).unwrap())
                }
            }
            Some(x) => {
                let num = f.add(f.mul(a, x), b);
                let den = f.add(f.mul(c, x), d);
                if den == 0 {
                    None
                } else {
                    Some(f.div(num, den).unwrap())
                }
            }
        };
        line_point(q, y)
    })
}

/// x -> x^p on the line, with infinity fixed, composed with x -> s x.
fn frobenius_scaled(f: &Field, s: Elem) -> Result<Permutation> {
    let q = f.order();
    perm_from_fn(q as usize + 1, |i| match line_value(q, i) {
        None => q as usize,
        Some(x) => f.mul(s, f.frobenius(x)) as usize,
    })
}

pub fn psl2_order(q: u64) -> u64 {
    q * (q * q - 1) / if q % 2 == 1 { 2 } else { 1 }
}

pub fn projective_line_group(q: u64, flavor: LineFlavor) -> Result<PermGroup> {
    let f = Field::new(q)?;
    let w = f.primitive();
    let minus_one = f.neg(1);
    let mut gens = vec![mobius(&f, 1, 1, 0, 1)?];
    let name;
    match flavor {
        LineFlavor::Psl => {
            gens.push(mobius(&f, f.mul(w, w), 0, 0, 1)?);
            gens.push(mobius(&f, 0, minus_one, 1, 0)?);
            name = format!("PSL(2,{})", q);
        }
        LineFlavor::Pgl => {
            gens.push(mobius(&f, w, 0, 0, 1)?);
            gens.push(mobius(&f, 0, 1, 1, 0)?);
            name = format!("PGL(2,{})", q);
        }
        LineFlavor::PSigmaL => {
            gens.push(mobius(&f, f.mul(w, w), 0, 0, 1)?);
            gens.push(mobius(&f, 0, minus_one, 1, 0)?);
            gens.push(frobenius_scaled(&f, 1)?);
            name = format!("PSigmaL(2,{})", q);
        }
        LineFlavor::PGammaL => {
            gens.push(mobius(&f, w, 0, 0, 1)?);
            gens.push(mobius(&f, 0, 1, 1, 0)?);
            gens.push(frobenius_scaled(&f, 1)?);
            name = format!("PGammaL(2,{})", q);
        }
        LineFlavor::Pxl => {
            if f.characteristic() == 2 || f.degree() % 2 != 0 {
                return Err(Error::InvalidArgument(format!(
                    "PXL(2,q) needs q an odd square, got {}",
                    q
                )));
            }
            gens.push(mobius(&f, f.mul(w, w), 0, 0, 1)?);
            gens.push(mobius(&f, 0, minus_one, 1, 0)?);
            // Product of a non-square diagonal element and the involutory field automorphism.
            let phi = f.degree() / 2;
            let q0 = (f.characteristic() as u64).pow(phi);
            let qq = f.order();
            gens.push(perm_from_fn(qq as usize + 1, |i| {
                match line_value(qq, i) {
                    None => qq as usize,
                    Some(x) => f.mul(w, f.pow(x, q0)) as usize,
                }
            })?);
            name = format!("PXL(2,{})", q);
        }
    }
    let g = PermGroup::new(q as usize + 1, gens)?.with_name(name);
    if flavor == LineFlavor::Pxl {
        // The extension must avoid both PGL and PSigmaL.
        let diag = mobius(&f, w, 0, 0, 1)?;
        let phi = {
            let q0 = (f.characteristic() as u64).pow(f.degree() / 2);
            perm_from_fn(q as usize + 1, |i| match line_value(q as u32, i) {
                None => q as usize,
                Some(x) => f.pow(x, q0) as usize,
            })?
        };
        if g.contains(&diag) || g.contains(&phi) {
            return Err(Error::Validation(
                "PXL construction contains PGL or PSigmaL".into(),
            ));
        }
    }
    Ok(g)
}

pub fn projective_line_order(q: u64, flavor: LineFlavor) -> u64 {
    let (_, e) = super::field::prime_power(q).unwrap();
    let psl = psl2_order(q);
    let d = if q % 2 == 1 { 2 } else { 1 };
    match flavor {
        LineFlavor::Psl => psl,
        LineFlavor::Pgl => psl * d,
        LineFlavor::PSigmaL => psl * e as u64,
        LineFlavor::PGammaL => psl * d * e as u64,
        LineFlavor::Pxl => psl * 2,
    }
}

/// Points of PG(2,q) as normalized vectors, in order of their codes.
pub fn plane_points(f: &Field) -> Vec<Vec<Elem>> {
    let q = f.order() as usize;
    (1..q * q * q)
        .map(|c| linear::vector_from_code(f, 3, c))
        .filter(|v| linear::normalize(f, v).as_ref() == Some(v))
        .collect()
}

pub fn projective_action(
    f: &Field,
    points: &[Vec<Elem>],
    map: impl Fn(&[Elem]) -> Vec<Elem>,
) -> Result<Permutation> {
    let index: HashMap<&[Elem], usize> = points
        .iter()
        .enumerate()
        .map(|(i, v)| (v.as_slice(), i))
        .collect();
    perm_from_fn(points.len(), |i| {
        let img = linear::normalize(f, &map(&points[i])).expect("nonsingular map");
        index[img.as_slice()]
    })
}

pub fn projective_plane_group(q: u64, flavor: PlaneFlavor) -> Result<PermGroup> {
    let f = Field::new(q)?;
    let points = plane_points(&f);
    let mats: Vec<Matrix> = linear::gl_generators(&f, 3, flavor == PlaneFlavor::Psl3);
    let mut gens = Vec::new();
    for m in &mats {
        gens.push(projective_action(&f, &points, |v| {
            linear::vec_mat(&f, v, m)
        })?);
    }
    if flavor == PlaneFlavor::PGammaL3 {
        gens.push(projective_action(&f, &points, |v| {
            v.iter().map(|&x| f.frobenius(x)).collect()
        })?);
    }
    let name = match flavor {
        PlaneFlavor::Psl3 => format!("PSL(3,{})", q),
        PlaneFlavor::Pgl3 => format!("PGL(3,{})", q),
        PlaneFlavor::PGammaL3 => format!("PGammaL(3,{})", q),
    };
    PermGroup::new(points.len(), gens).map(|g| g.with_name(name))
}

pub fn gl_order(d: u32, q: u64) -> u128 {
    let qd = (q as u128).pow(d);
    (0..d).map(|i| qd - (q as u128).pow(i)).product()
}

pub fn projective_plane_order(q: u64, flavor: PlaneFlavor) -> u128 {
    let (_, e) = super::field::prime_power(q).unwrap();
    let pgl = gl_order(3, q) / (q as u128 - 1);
    let g3 = if (q - 1) % 3 == 0 { 3 } else { 1 };
    match flavor {
        PlaneFlavor::Psl3 => pgl / g3,
        PlaneFlavor::Pgl3 => pgl,
        PlaneFlavor::PGammaL3 => pgl * e as u128,
    }
}

/// Lines of PG(2,q) as sorted point-index lists.
pub fn plane_lines(f: &Field, points: &[Vec<Elem>]) -> Vec<Vec<usize>> {
    points
        .iter()
        .map(|l| {
            (0..points.len())
                .filter(|&i| (0..3).fold(0, |acc, j| f.add(acc, f.mul(points[i][j], l[j]))) == 0)
                .collect()
        })
        .collect()
}
