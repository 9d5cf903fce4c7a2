//! Mathieu groups and a few other groups shipped as generator data, plus the
//! derivations that produced the derived data files from M11 and M24.

use std::collections::HashMap;

use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::affine::{affine_group, AffineFlavor};
use super::symplectic::affine_symplectic_group;
use crate::error::{Error, Result};
use crate::io::format::parse_group;
use crate::perm::{PermGroup, Permutation};

pub struct DataGroup {
    pub key: &'static str,
    pub text: &'static str,
    pub order: u64,
}

pub const DATA_GROUPS: &[DataGroup] = &[
    DataGroup {
        key: "M11",
        text: include_str!("../../data/M11.grp"),
        order: 7920,
    },
    DataGroup {
        key: "M11,12",
        text: include_str!("../../data/M11_12.grp"),
        order: 7920,
    },
    DataGroup {
        key: "M12",
        text: include_str!("../../data/M12.grp"),
        order: 95040,
    },
    DataGroup {
        key: "M22",
        text: include_str!("../../data/M22.grp"),
        order: 443520,
    },
    DataGroup {
        key: "M22:2",
        text: include_str!("../../data/M22_2.grp"),
        order: 887040,
    },
    DataGroup {
        key: "M23",
        text: include_str!("../../data/M23.grp"),
        order: 10200960,
    },
    DataGroup {
        key: "M24",
        text: include_str!("../../data/M24.grp"),
        order: 244823040,
    },
    DataGroup {
        key: "PSL2(11)on11",
        text: include_str!("../../data/PSL2_11_on_11.grp"),
        order: 660,
    },
    DataGroup {
        key: "2^4:A7",
        text: include_str!("../../data/2^4_A7.grp"),
        order: 16 * 2520,
    },
    DataGroup {
        key: "2^4:A6",
        text: include_str!("../../data/2^4_A6.grp"),
        order: 16 * 360,
    },
];

/// Parse a shipped group and check its order.
pub fn load_data_group(key: &str) -> Result<PermGroup> {
    let d = DATA_GROUPS
        .iter()
        .find(|d| d.key == key)
        .ok_or_else(|| Error::UnknownCatalogEntry(key.to_string()))?;
    let g = parse_group(d.text)?;
    if g.order() != BigUint::from(d.order) {
        return Err(Error::Validation(format!(
            "{}: order {} differs from expected {}",
            key,
            g.order(),
            d.order
        )));
    }
    Ok(g)
}

/// Random elements of `g` until they generate a group of order `order`.
fn small_generating_set(g: &PermGroup, order: &BigUint, seed: u64) -> Vec<Permutation> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut gens: Vec<Permutation> = Vec::new();
    loop {
        gens.push(g.chain().random_element(&mut rng));
        let h = PermGroup::new(g.degree(), gens.clone()).unwrap();
        if &h.order() == order {
            return gens;
        }
        if gens.len() > 4 {
            gens.remove(0);
        }
    }
}

/// Pointwise stabilizer of the last `m` points, acting on the rest.
fn stabilizer_of_last(g: &PermGroup, m: usize, seed: u64) -> PermGroup {
    let n = g.degree();
    let fixed: Vec<usize> = (n - m..n).collect();
    let stab = g.pointwise_stabilizer(&fixed);
    let order = stab.order();
    let gens = small_generating_set(&stab, &order, seed);
    let support: Vec<usize> = (0..n - m).collect();
    PermGroup::new(
        n - m,
        gens.iter().map(|p| p.restrict(&support).unwrap()).collect(),
    )
    .unwrap()
}

pub fn derive_m23(m24: &PermGroup) -> PermGroup {
    stabilizer_of_last(m24, 1, 23).with_name("M23")
}

pub fn derive_m22(m24: &PermGroup) -> PermGroup {
    stabilizer_of_last(m24, 2, 22).with_name("M22")
}

/// Setwise stabilizer of {23,24} in M24 acting on the other 22 points.
pub fn derive_m22_2(m24: &PermGroup) -> PermGroup {
    let m22 = stabilizer_of_last(m24, 2, 22);
    let mut rng = ChaCha8Rng::seed_from_u64(222);
    let swap = loop {
        let g = m24.chain().random_element(&mut rng);
        if g.image(22) == 23 && g.image(23) == 22 {
            break g;
        }
    };
    let support: Vec<usize> = (0..22).collect();
    let mut gens = m22.generators().to_vec();
    gens.push(swap.restrict(&support).unwrap());
    PermGroup::new(22, gens).unwrap().with_name("M22:2")
}

/// A transitive PSL(2,11) inside M11 (degree 11): the group generated by the
/// 11-cycle generator and the first involution, in element order, that
/// together with it generates a group of order 660.
pub fn derive_psl2_11_on_11(m11: &PermGroup) -> PermGroup {
    let a = m11.generators()[0].clone();
    assert_eq!(a.order(), 11);
    for b in m11.elements() {
        if b.order() != 2 {
            continue;
        }
        let h = PermGroup::new(11, vec![a.clone(), b.clone()]).unwrap();
        if h.order() == BigUint::from(660u32) {
            return h.with_name("PSL(2,11) on 11 points");
        }
    }
    unreachable!("M11 contains PSL(2,11)")
}

/// M11 acting on the 12 cosets of PSL(2,11).
pub fn derive_m11_on_12(m11: &PermGroup) -> PermGroup {
    let h = derive_psl2_11_on_11(m11).elements();
    let key = |x: &Permutation| h.iter().map(|y| y.compose(x)).min().unwrap();
    let id = Permutation::identity(11);
    let mut reps = vec![id.clone()];
    let mut index: HashMap<Permutation, usize> = HashMap::new();
    index.insert(key(&id), 0);
    let mut i = 0;
    while i < reps.len() {
        for g in m11.generators() {
            let y = reps[i].compose(g);
            let k = key(&y);
            if !index.contains_key(&k) {
                index.insert(k, reps.len());
                reps.push(y);
            }
        }
        i += 1;
    }
    assert_eq!(reps.len(), 12);
    let gens = m11
        .generators()
        .iter()
        .map(|g| {
            Permutation::from_images(reps.iter().map(|r| index[&key(&r.compose(g))]).collect())
                .unwrap()
        })
        .collect();
    PermGroup::new(12, gens)
        .unwrap()
        .with_name("M11 on 12 points")
}

/// 2^4:A7 inside AGL(4,2): translations plus an A7 found by seeded random search
/// among pairs of elements of the stabilizer of the zero vector.
pub fn derive_2_4_a7() -> PermGroup {
    let agl = affine_group(4, 2, AffineFlavor::Agl).unwrap();
    let gl = agl.pointwise_stabilizer(&[0]);
    let mut rng = ChaCha8Rng::seed_from_u64(2520);
    let target = BigUint::from(2520u32);
    let a7 = loop {
        let x = gl.chain().random_element(&mut rng);
        let y = gl.chain().random_element(&mut rng);
        let h = PermGroup::new(16, vec![x.clone(), y.clone()]).unwrap();
        if h.order() == target {
            break vec![x, y];
        }
    };
    let mut gens: Vec<Permutation> = (0..4)
        .map(|i| Permutation::from_images((0..16).map(|v| v ^ (1 << i)).collect()).unwrap())
        .collect();
    gens.extend(a7);
    PermGroup::new(16, gens).unwrap().with_name("2^4:A7")
}

/// 2^4:A6: translations plus the subgroup of Sp(4,2) generated by squares.
pub fn derive_2_4_a6() -> PermGroup {
    let asp = affine_symplectic_group(2).unwrap();
    let sp = asp.pointwise_stabilizer(&[0]);
    let mut rng = ChaCha8Rng::seed_from_u64(360);
    let target = BigUint::from(360u32);
    let mut squares: Vec<Permutation> = Vec::new();
    loop {
        let x = sp.chain().random_element(&mut rng);
        let sq = x.compose(&x);
        if sq.is_identity() {
            continue;
        }
        squares.push(sq);
        if PermGroup::new(16, squares.clone()).unwrap().order() == target {
            break;
        }
    }
    let mut gens: Vec<Permutation> = (0..4)
        .map(|i| Permutation::from_images((0..16).map(|v| v ^ (1 << i)).collect()).unwrap())
        .collect();
    gens.extend(squares);
    PermGroup::new(16, gens).unwrap().with_name("2^4:A6")
}

/// Regenerate the text of every derived data file from the three source files.
pub fn derived_data_files() -> Result<Vec<(&'static str, String)>> {
    use crate::io::format::emit_group;
    let m11 = load_data_group("M11")?;
    let m24 = load_data_group("M24")?;
    Ok(vec![
        ("M23.grp", emit_group(&derive_m23(&m24))),
        ("M22.grp", emit_group(&derive_m22(&m24))),
        ("M22_2.grp", emit_group(&derive_m22_2(&m24))),
        ("M11_12.grp", emit_group(&derive_m11_on_12(&m11))),
        ("PSL2_11_on_11.grp", emit_group(&derive_psl2_11_on_11(&m11))),
        ("2^4_A7.grp", emit_group(&derive_2_4_a7())),
        ("2^4_A6.grp", emit_group(&derive_2_4_a6())),
    ])
}
