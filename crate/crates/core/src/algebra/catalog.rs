//! Named groups. Keys have the form `NAME[,PARAMS]`, for example `PGL,2,17`,
//! `AGL,4,2`, `M24`, `M11,12`, `Fix:PGL,2,5`.

use num_bigint::BigUint;

use super::affine::{affine_group, affine_order, AffineFlavor};
use super::field::prime_power;
use super::projective::{
    projective_line_group, projective_line_order, projective_plane_group, projective_plane_order,
    LineFlavor, PlaneFlavor,
};
use super::sporadic::{load_data_group, DATA_GROUPS};
use super::symplectic::{affine_symplectic_group, symplectic_order};
use super::unital::{unital_group, unital_group_order, UnitalFlavor};
use super::wreath::{point_fixing_extension, wreath_product, WreathMode};
use crate::error::{Error, Result};
use crate::perm::PermGroup;

/// Entries the catalog knows by name but cannot construct.
pub const UNAVAILABLE: &[(&str, &str)] = &[
    ("Sz", "Suzuki groups are not constructed"),
    ("Ree", "Ree groups are not constructed"),
    ("HS", "Higman-Sims group on 176 points is not constructed"),
    ("Co3", "Conway group Co3 is not constructed"),
    (
        "PGammaL,2,128",
        "degree 129 exceeds the supported set representation",
    ),
    (
        "PSU,3,8.3",
        "the three extensions PSU(3,8).3 are not distinguished",
    ),
];

fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::from(1u32), |a, i| a * i)
}

fn parse_params(parts: &[&str], count: usize, key: &str) -> Result<Vec<u64>> {
    if parts.len() != count {
        return Err(Error::InvalidArgument(format!(
            "{} expects {} parameter(s)",
            key, count
        )));
    }
    parts
        .iter()
        .map(|p| {
            p.trim()
                .parse::<u64>()
                .map_err(|_| Error::InvalidArgument(format!("bad parameter '{}' in {}", p, key)))
        })
        .collect()
}

fn canonical_name(name: &str) -> String {
    name.replace('Σ', "Sigma").replace('Γ', "Gamma")
}

fn check_unavailable(key: &str) -> Result<()> {
    for (prefix, why) in UNAVAILABLE {
        if key == *prefix || key.starts_with(&format!("{},", prefix)) {
            return Err(Error::Unavailable(format!("{}: {}", key, why)));
        }
    }
    Ok(())
}

/// Build a catalog group, together with its closed-form order when the family has one.
pub fn catalog_with_order(key: &str) -> Result<(PermGroup, Option<BigUint>)> {
    let key = canonical_name(key.trim());
    check_unavailable(&key)?;
    if let Some(rest) = key.strip_prefix("Fix:") {
        let (h, order) = catalog_with_order(rest)?;
        return Ok((point_fixing_extension(&h), order));
    }
    if let Some(d) = DATA_GROUPS.iter().find(|d| d.key == key) {
        return Ok((
            load_data_group(d.key)?.with_name(display_data_name(d.key)),
            Some(BigUint::from(d.order)),
        ));
    }
    let parts: Vec<&str> = key.split(',').collect();
    let (name, params) = (parts[0], &parts[1..]);
    let prime_pow = |q: u64| -> Result<u64> {
        prime_power(q)
            .map(|_| q)
            .ok_or_else(|| Error::InvalidArgument(format!("{} is not a prime power", q)))
    };
    let big = |x: u128| Some(BigUint::from(x));
    match name {
        "S" | "A" | "C" | "D" => {
            let n = parse_params(params, 1, name)?[0] as usize;
            if n < 1 {
                return Err(Error::InvalidArgument("degree must be positive".into()));
            }
            Ok(match name {
                "S" => (PermGroup::symmetric(n), Some(factorial(n as u64))),
                "A" => (
                    PermGroup::alternating(n),
                    Some(if n < 2 {
                        BigUint::from(1u32)
                    } else {
                        factorial(n as u64) / 2u32
                    }),
                ),
                "C" => (PermGroup::cyclic(n), big(n as u128)),
                _ => (
                    PermGroup::dihedral(n),
                    big(if n <= 2 { n as u128 } else { 2 * n as u128 }),
                ),
            })
        }
        "PSL" | "PGL" | "PSigmaL" | "PGammaL" | "PXL" => {
            let p = parse_params(params, 2, name)?;
            let (d, q) = (p[0], prime_pow(p[1])?);
            match d {
                2 => {
                    let fl = match name {
                        "PSL" => LineFlavor::Psl,
                        "PGL" => LineFlavor::Pgl,
                        "PSigmaL" => LineFlavor::PSigmaL,
                        "PGammaL" => LineFlavor::PGammaL,
                        _ => LineFlavor::Pxl,
                    };
                    Ok((
                        projective_line_group(q, fl)?,
                        big(projective_line_order(q, fl) as u128),
                    ))
                }
                3 => {
                    let fl = match name {
                        "PSL" => PlaneFlavor::Psl3,
                        "PGL" => PlaneFlavor::Pgl3,
                        "PGammaL" => PlaneFlavor::PGammaL3,
                        _ => {
                            return Err(Error::InvalidArgument(format!(
                                "{} is not available in dimension 3",
                                name
                            )))
                        }
                    };
                    Ok((
                        projective_plane_group(q, fl)?,
                        big(projective_plane_order(q, fl)),
                    ))
                }
                _ => Err(Error::InvalidArgument(format!(
                    "{}: only dimensions 2 and 3 are supported",
                    name
                ))),
            }
        }
        "AGL" | "ASL" | "AGammaL" | "ASigmaL" => {
            let p = parse_params(params, 2, name)?;
            let (d, q) = (p[0], prime_pow(p[1])?);
            if d == 0 {
                return Err(Error::InvalidArgument("dimension must be positive".into()));
            }
            let fl = match name {
                "AGL" => AffineFlavor::Agl,
                "ASL" => AffineFlavor::Asl,
                "AGammaL" => AffineFlavor::AGammaL,
                _ => AffineFlavor::ASigmaL,
            };
            if q.pow(d as u32) > 1 << 12 {
                return Err(Error::ResourceLimit(format!("{}: degree too large", key)));
            }
            Ok((
                affine_group(d as usize, q, fl)?,
                big(affine_order(d as u32, q, fl)),
            ))
        }
        "ASp" => {
            let d = parse_params(params, 1, name)?[0];
            if !(1..=3).contains(&d) {
                return Err(Error::InvalidArgument("ASp,d supports d = 1, 2, 3".into()));
            }
            Ok((
                affine_symplectic_group(d as usize)?,
                big((1u128 << (2 * d)) * symplectic_order(d as u32)),
            ))
        }
        "PGU" | "PSU" | "PGammaU" => {
            let q = prime_pow(parse_params(params, 1, name)?[0])?;
            let fl = match name {
                "PGU" => UnitalFlavor::Pgu,
                "PSU" => UnitalFlavor::Psu,
                _ => UnitalFlavor::PGammaU,
            };
            Ok((unital_group(q, fl)?.0, big(unital_group_order(q, fl))))
        }
        "SwrS2" | "SwrS2prod" => {
            let m = parse_params(params, 1, name)?[0];
            let mode = if name == "SwrS2" {
                WreathMode::Imprimitive
            } else {
                WreathMode::ProductAction
            };
            let f = factorial(m);
            Ok((wreath_product(m as usize, mode)?, Some(&f * &f * 2u32)))
        }
        _ => Err(Error::UnknownCatalogEntry(key.to_string())),
    }
}

fn display_data_name(key: &str) -> String {
    match key {
        "M11,12" => "M11 on 12 points".into(),
        "PSL2(11)on11" => "PSL(2,11) on 11 points".into(),
        other => other.to_string(),
    }
}

pub fn catalog(key: &str) -> Result<PermGroup> {
    let (g, order) = catalog_with_order(key)?;
    if let Some(o) = order {
        if g.order() != o {
            return Err(Error::Validation(format!(
                "{}: order {} differs from formula {}",
                key,
                g.order(),
                o
            )));
        }
    }
    let name = g.name().map(|s| s.to_string());
    Ok(match name {
        Some(_) => g,
        None => g.with_name(key.to_string()),
    })
}

/// The bundled list of catalog keys, in a fixed order.
pub fn catalog_keys() -> Vec<String> {
    let mut keys: Vec<String> = Vec::new();
    for n in 3..=24 {
        keys.push(format!("S,{}", n));
        keys.push(format!("A,{}", n));
    }
    for n in 3..=10 {
        keys.push(format!("C,{}", n));
        keys.push(format!("D,{}", n));
    }
    let qs = [4u64, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32];
    for &q in &qs {
        let (_, e) = prime_power(q).unwrap();
        keys.push(format!("PSL,2,{}", q));
        if q % 2 == 1 {
            keys.push(format!("PGL,2,{}", q));
        }
        if e > 1 {
            keys.push(format!("PSigmaL,2,{}", q));
            if q % 2 == 1 {
                keys.push(format!("PGammaL,2,{}", q));
            }
        }
        if q % 2 == 1 && e % 2 == 0 {
            keys.push(format!("PXL,2,{}", q));
        }
    }
    for q in [5u64, 7, 8, 9, 11, 13, 16, 17, 19, 23] {
        keys.push(format!("AGL,1,{}", q));
        let (_, e) = prime_power(q).unwrap();
        if e > 1 {
            keys.push(format!("AGammaL,1,{}", q));
        }
    }
    for (d, q) in [(2u64, 3u64), (2, 4), (2, 5), (3, 2), (4, 2)] {
        keys.push(format!("AGL,{},{}", d, q));
        if q > 2 {
            keys.push(format!("ASL,{},{}", d, q));
        }
    }
    keys.push("AGammaL,2,4".into());
    keys.push("ASigmaL,2,4".into());
    for q in [2u64, 3, 4, 5] {
        keys.push(format!("PSL,3,{}", q));
        if (q - 1) % 3 == 0 {
            keys.push(format!("PGL,3,{}", q));
        }
        if q == 4 {
            keys.push("PGammaL,3,4".into());
        }
    }
    keys.push("ASp,2".into());
    keys.push("ASp,3".into());
    keys.push("2^4:A6".into());
    keys.push("2^4:A7".into());
    for q in [3u64, 4, 5] {
        keys.push(format!("PGU,{}", q));
    }
    keys.push("PGammaU,3".into());
    for m in 2..=12 {
        keys.push(format!("SwrS2,{}", m));
    }
    for m in 3..=4 {
        keys.push(format!("SwrS2prod,{}", m));
    }
    for k in [
        "M11",
        "M11,12",
        "M12",
        "M22",
        "M22:2",
        "M23",
        "M24",
        "PSL2(11)on11",
    ] {
        keys.push(k.into());
    }
    for k in [
        "Fix:PGL,2,5",
        "Fix:PGL,2,7",
        "Fix:A,6",
        "Fix:PSL,2,11",
        "Fix:M11",
    ] {
        keys.push(k.into());
    }
    keys
}

/// Degree of a catalog key without building the group, when cheap to know.
pub fn catalog_degree(key: &str) -> Result<usize> {
    Ok(catalog(key)?.degree())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_matches_its_order_formula() {
        for key in catalog_keys() {
            let (g, order) = catalog_with_order(&key).unwrap();
            if let Some(o) = order {
                assert_eq!(g.order(), o, "{}", key);
            }
        }
    }

    #[test]
    fn named_examples() {
        let m24 = catalog("M24").unwrap();
        assert_eq!(m24.degree(), 24);
        assert!(m24.is_k_transitive(5));
        assert!(matches!(catalog("Sz,32"), Err(Error::Unavailable(_))));
        assert!(matches!(
            catalog("PGammaL,2,128"),
            Err(Error::Unavailable(_))
        ));
        assert!(matches!(
            catalog("Nope,3"),
            Err(Error::UnknownCatalogEntry(_))
        ));
        let a7 = catalog("2^4:A7").unwrap();
        assert_eq!((a7.degree(), a7.order()), (16, BigUint::from(16u32 * 2520)));
        assert_eq!(catalog("PΓL,2,9").unwrap().order(), BigUint::from(1440u32));
        assert_eq!(catalog("Fix:PGL,2,5").unwrap().degree(), 7);
        assert!(!catalog("Fix:PGL,2,5").unwrap().is_transitive());
    }
}
