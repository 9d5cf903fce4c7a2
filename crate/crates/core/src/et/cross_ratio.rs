//! Cross ratios of 4-sets on the projective line. Points are field codes
//! 0..q-1, and q stands for infinity, matching the projective-line constructors.

use std::collections::BTreeSet;

use crate::algebra::field::{Elem, Field};
use crate::algebra::projective::line_value;
use crate::error::{Error, Result};
use crate::perm::{points_of, KSetOrbitIndex, PermGroup, Point, SetPartition};

/// ((x1-x3)(x2-x4)) / ((x1-x4)(x2-x3)), with factors through infinity dropped.
pub fn cross_ratio(f: &Field, x: [Point; 4]) -> Result<Elem> {
    let q = f.order();
    for i in 0..4 {
        if x[i] > q as usize {
            return Err(Error::InvalidArgument(format!(
                "point {} is not on the line over GF({})",
                x[i] + 1,
                q
            )));
        }
        for j in 0..i {
            if x[i] == x[j] {
                return Err(Error::InvalidArgument(
                    "cross ratio needs four distinct points".into(),
                ));
            }
        }
    }
    let v: Vec<Option<Elem>> = x.iter().map(|&p| line_value(q, p)).collect();
    let diff = |a: usize, b: usize| -> Elem {
        match (v[a], v[b]) {
            (Some(s), Some(t)) => f.sub(s, t),
            _ => f.one(),
        }
    };
    let num = f.mul(diff(0, 2), diff(1, 3));
    let den = f.mul(diff(0, 3), diff(1, 2));
    Ok(f.div(num, den)
        .expect("distinct points give a nonzero denominator"))
}

/// Cross ratios over all 24 orderings of a 4-set.
pub fn value_set(f: &Field, set: u128) -> Result<BTreeSet<Elem>> {
    let p = points_of(set);
    if p.len() != 4 {
        return Err(Error::InvalidArgument("cross ratios need a 4-set".into()));
    }
    let mut out = BTreeSet::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    if a != b && a != c && a != d && b != c && b != d && c != d {
                        out.insert(cross_ratio(f, [p[a], p[b], p[c], p[d]])?);
                    }
                }
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct CrossRatioProfile {
    pub rep: u128,
    /// Every cross ratio of every member of the orbit.
    pub values: BTreeSet<Elem>,
    /// Order of the subgroup of GF(q)* generated by the values together with c-1 and -1.
    pub subgroup_order: u32,
}

impl CrossRatioProfile {
    pub fn admissible(&self, q: u32) -> bool {
        self.subgroup_order == q - 1
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Order of the subgroup of GF(q)* generated by `gens`.
pub fn generated_order(f: &Field, gens: impl IntoIterator<Item = Elem>) -> u32 {
    let m = f.order() - 1;
    let g = gens.into_iter().filter_map(|x| f.log(x)).fold(m, gcd);
    m / g
}

pub fn profile(f: &Field, idx: &KSetOrbitIndex, orbit: usize) -> Result<CrossRatioProfile> {
    if idx.k() != 4 || idx.degree() != f.order() as usize + 1 {
        return Err(Error::InvalidArgument(
            "cross ratio profiles need 4-sets of the projective line".into(),
        ));
    }
    let mut values = BTreeSet::new();
    for m in idx.orbit_members(orbit) {
        values.extend(value_set(f, m)?);
    }
    let one = f.one();
    let mut gens: Vec<Elem> = values.iter().copied().collect();
    gens.extend(values.iter().map(|&c| f.sub(c, one)).filter(|&x| x != 0));
    gens.push(f.neg(one));
    let subgroup_order = generated_order(f, gens);
    Ok(CrossRatioProfile {
        rep: idx.reps()[orbit],
        values,
        subgroup_order,
    })
}

#[derive(Clone, Debug)]
pub enum FilterVerdict {
    Admissible,
    /// No member of the orbit is a section of this partition.
    Excluded(SetPartition),
}

/// Checks that `g` acts on the projective line of `f`: it must contain PGL(2,q)
/// and preserve cross-ratio classes up to field automorphisms.
fn check_line_group(f: &Field, g: &PermGroup) -> Result<()> {
    let q = f.order() as u64;
    if g.degree() as u64 != q + 1 {
        return Err(Error::InvalidArgument(format!(
            "group degree {} is not q+1 = {}",
            g.degree(),
            q + 1
        )));
    }
    let pgl = crate::algebra::projective::projective_line_group(
        q,
        crate::algebra::projective::LineFlavor::Pgl,
    )?;
    let pgammal = crate::algebra::projective::projective_line_group(
        q,
        crate::algebra::projective::LineFlavor::PGammaL,
    )?;
    let within = g.generators().iter().all(|h| pgammal.contains(h));
    let above = pgl.generators().iter().all(|h| g.contains(h));
    if within && above {
        Ok(())
    } else {
        Err(Error::InvalidArgument(
            "group is not between PGL(2,q) and PGammaL(2,q) on the projective line".into(),
        ))
    }
}

/// Excludes an orbit of 4-sets when its cross ratios generate a proper subgroup M
/// of GF(q)*; the refuting partition is {inf}, {0}, M, GF(q)* minus M.
pub fn crossratio_witness_filter(
    f: &Field,
    g: &PermGroup,
    idx: &KSetOrbitIndex,
    orbit: usize,
) -> Result<(CrossRatioProfile, FilterVerdict)> {
    check_line_group(f, g)?;
    let prof = profile(f, idx, orbit)?;
    let q = f.order();
    if prof.admissible(q) {
        return Ok((prof, FilterVerdict::Admissible));
    }
    let m = (q - 1) / prof.subgroup_order;
    let (mut inside, mut outside) = (Vec::new(), Vec::new());
    for x in 1..q {
        if f.log(x).unwrap() % m == 0 {
            inside.push(x as Point);
        } else {
            outside.push(x as Point);
        }
    }
    let part = SetPartition::new(
        q as usize + 1,
        vec![vec![q as usize], vec![0], inside, outside],
    )?;
    Ok((prof, FilterVerdict::Excluded(part)))
}
