//! Structural invariants checked against plain enumeration, over the catalog and
//! over random inputs.

use std::collections::{HashSet, VecDeque};

use proptest::prelude::*;
use transversal_lab::algebra::catalog::{catalog, catalog_keys};
use transversal_lab::et::decide::refutation_holds;
use transversal_lab::et::{ket_decide, kut_decide, EtOptions, OrbitStatus};
use transversal_lab::io::format::{emit_group, parse_group};
use transversal_lab::perm::{points_of, KSetOrbitIndex, PermGroup, Permutation, PointSet};
use transversal_lab::semigroup::closure::monoid_closure;
use transversal_lab::semigroup::regular::{element_regular_in_semigroup, element_regular_via_group};
use transversal_lab::semigroup::Transformation;

fn available(max_degree: usize) -> Vec<(String, PermGroup)> {
    catalog_keys()
        .into_iter()
        .filter_map(|key| catalog(&key).ok().map(|g| (key, g)))
        .filter(|(_, g)| g.degree() <= max_degree)
        .collect()
}

fn naive_closure(g: &PermGroup) -> HashSet<Vec<usize>> {
    let n = g.degree();
    let id: Vec<usize> = (0..n).collect();
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for gen in g.generators() {
            let y: Vec<usize> = x.iter().map(|&p| gen.image(p)).collect();
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

#[test]
fn chain_order_matches_closure_for_small_catalog_groups() {
    let mut checked = 0;
    for (key, g) in available(40) {
        if g.order_u128() > 100_000 {
            continue;
        }
        let els = naive_closure(&g);
        assert_eq!(els.len() as u128, g.order_u128(), "{}", key);
        checked += 1;
    }
    assert!(checked > 20);
}

#[test]
fn membership_against_closure() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for key in ["AGL,1,13", "PSL,3,3", "PGL,2,7", "D,10", "AGL,3,2"] {
        let g = catalog(key).unwrap();
        let els = naive_closure(&g);
        let n = g.degree();
        for _ in 0..1000 {
            let mut w = Permutation::identity(n);
            for _ in 0..rng.gen_range(1..30) {
                let gen = &g.generators()[rng.gen_range(0..g.generators().len())];
                w = w.compose(gen);
            }
            assert!(g.contains(&w));
        }
        for _ in 0..200 {
            let mut img: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                img.swap(i, rng.gen_range(0..=i));
            }
            let p = Permutation::from_images(img.clone()).unwrap();
            assert_eq!(g.contains(&p), els.contains(&img), "{}", key);
        }
    }
}

#[test]
fn k_transitive_groups_are_k_homogeneous() {
    for (key, g) in available(24) {
        for k in 1..=5.min(g.degree() / 2) {
            if g.is_k_transitive(k) {
                let idx = KSetOrbitIndex::new(&g, k).unwrap();
                assert_eq!(idx.num_orbits().unwrap(), 1, "{} k={}", key, k);
            }
        }
    }
}

#[test]
fn orbital_graphs_partition_the_pairs() {
    for (key, g) in available(16) {
        let n = g.degree();
        let mut seen = HashSet::new();
        for og in g.orbital_graphs() {
            for &(a, b) in &og.edges {
                let e = (a.min(b), a.max(b));
                assert!(a != b);
                assert!(seen.insert(e), "{}: pair {:?} in two orbital graphs", key, e);
            }
        }
        assert_eq!(seen.len(), n * (n - 1) / 2, "{}", key);
    }
}

#[test]
fn full_imprimitivity_three_ways() {
    for (key, g) in available(16) {
        if !g.is_transitive() || g.degree() < 4 {
            continue;
        }
        let n = g.degree();
        let all_disconnected = g.orbital_graphs().iter().all(|og| !og.is_connected());
        let every_pair_in_a_block = (0..n).all(|a| {
            (a + 1..n).all(|b| g.minimal_block_system(a, b).num_blocks() > 1)
        });
        let fi = g.is_fully_imprimitive();
        assert_eq!(fi, all_disconnected, "{}", key);
        assert_eq!(fi, every_pair_in_a_block, "{}", key);
        // and the 2-et decision is its negation
        let yes = ket_decide(&g, 2, &EtOptions::default()).unwrap().et().is_yes();
        assert_eq!(yes, !fi, "{}", key);
    }
}

#[test]
fn homogeneous_implies_ut_implies_et() {
    let opts = EtOptions::default();
    for (key, g) in available(12) {
        for k in 2..=4.min(g.degree() / 2) {
            let hom = KSetOrbitIndex::new(&g, k).unwrap().num_orbits().unwrap() == 1;
            let ut = kut_decide(&g, k, &opts).unwrap().ut();
            let et = ket_decide(&g, k, &opts).unwrap().et();
            assert!((ut.is_yes() || ut.is_no()) && (et.is_yes() || et.is_no()), "{} k={}", key, k);
            if hom {
                assert!(ut.is_yes(), "{} k={}", key, k);
            }
            if ut.is_yes() {
                assert!(et.is_yes(), "{} k={}", key, k);
            }
        }
    }
}

#[test]
fn witnesses_meet_every_lower_orbit_and_refutations_replay() {
    let opts = EtOptions::default();
    for (key, g) in available(14) {
        for k in 3..=4.min(g.degree() / 2) {
            let an = kut_decide(&g, k, &opts).unwrap();
            let lower = KSetOrbitIndex::new(&g, k - 1).unwrap();
            let m = lower.num_orbits().unwrap();
            for (rep, st) in an.reps.iter().zip(&an.statuses) {
                match st {
                    OrbitStatus::Witness(_) => {
                        let hit: HashSet<u32> = points_of(rep.mask())
                            .iter()
                            .map(|&x| lower.orbit_id(rep.mask() & !(1u128 << x)))
                            .collect();
                        assert_eq!(hit.len(), m, "{} k={} witness {:?}", key, k, rep);
                    }
                    OrbitStatus::Refuted(r) => {
                        assert!(refutation_holds(&g, &r.candidate, &r.partition), "{} k={}", key, k);
                    }
                    _ => {}
                }
            }
        }
    }
}

#[test]
fn fixed_point_extension_witnesses_are_the_sets_through_the_fixed_point() {
    let opts = EtOptions {
        force: true,
        ..EtOptions::default()
    };
    let bases = [
        PermGroup::symmetric(5),
        PermGroup::alternating(6),
        catalog("PGL,2,7").unwrap(),
        catalog("AGL,1,7").unwrap(),
    ];
    for h in bases {
        let n = h.degree() + 1;
        let x = n - 1;
        let g = PermGroup::new(n, h.generators().iter().map(|p| p.extend(n)).collect()).unwrap();
        for k in 3..n.min(10) - 1 {
            let hom = KSetOrbitIndex::new(&h, k - 1).unwrap().num_orbits().unwrap() == 1;
            if !hom {
                continue;
            }
            let an = kut_decide(&g, k, &opts).unwrap();
            assert!(an.et().is_yes());
            for (rep, st) in an.reps.iter().zip(&an.statuses) {
                let w = matches!(st, OrbitStatus::Witness(_));
                assert_eq!(w, rep.contains(x), "degree {} k={} {:?}", n, k, rep);
            }
        }
    }
}

#[test]
fn catalog_groups_survive_a_format_round_trip() {
    for (key, g) in available(128) {
        let text = emit_group(&g);
        let h = parse_group(&text).unwrap();
        assert_eq!(h.degree(), g.degree(), "{}", key);
        assert_eq!(h.generators(), g.generators(), "{}", key);
        assert_eq!(emit_group(&h), text, "{}", key);
    }
}

fn small_groups() -> Vec<PermGroup> {
    vec![
        PermGroup::cyclic(4),
        PermGroup::cyclic(5),
        PermGroup::dihedral(5),
        PermGroup::cyclic(6),
        PermGroup::dihedral(6),
        PermGroup::alternating(4),
        PermGroup::trivial(4),
    ]
}

fn transformation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    proptest::collection::vec(0..n, n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_never_grows_under_composition(a in transformation(9), b in transformation(9)) {
        let s = Transformation::new(a).unwrap();
        let t = Transformation::new(b).unwrap();
        let st = s.compose(&t).unwrap();
        prop_assert!(st.rank() <= s.rank().min(t.rank()));
    }

    #[test]
    fn reachable_images_agree_with_the_closure(gi in 0usize..7, raw in transformation(6)) {
        let g = &small_groups()[gi];
        let n = g.degree();
        let t = Transformation::new(raw.into_iter().map(|x| x % n).take(n).collect()).unwrap();
        let mut gens: Vec<Transformation> = g.generators().iter().map(Transformation::from_perm).collect();
        gens.push(t.clone());
        let m = monoid_closure(&gens, 200_000).unwrap();
        let census = m.regularity_census_naive();
        for (s, &reg) in m.elements.iter().zip(&census) {
            prop_assert_eq!(element_regular_in_semigroup(s, g, &t), reg, "s = {:?}", s.images());
        }
        // t is regular via the group exactly when every element of its rank is regular
        let via = element_regular_via_group(&t, g).is_some();
        let same_rank_regular = m
            .elements
            .iter()
            .zip(&census)
            .filter(|(s, _)| s.rank() == t.rank())
            .all(|(_, &r)| r);
        prop_assert_eq!(via, same_rank_regular);
    }

    #[test]
    fn set_orbits_are_orbits(gi in 0usize..7, raw in proptest::collection::vec(any::<bool>(), 6)) {
        let g = &small_groups()[gi];
        let n = g.degree();
        let pts: Vec<usize> = (0..n).filter(|&i| raw[i]).collect();
        let mask = PointSet::new(pts).unwrap().mask();
        let orbit: HashSet<u128> = g.set_orbit(mask).into_iter().collect();
        let direct: HashSet<u128> = g.elements().iter().map(|p| p.apply_mask(mask)).collect();
        prop_assert_eq!(orbit, direct);
    }
}
