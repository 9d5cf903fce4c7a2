//! The two searches attached to the rank k-1 stratum of ⟨G, t⟩ with Im(t) = B.

use super::certificate::{Factor, NonRegularityCertificate};
use super::levels::LevelInfo;
use super::subsection::{index_sets, LeafAction, SubsectionOutcome, SubsectionSearch};
use super::transformation::Transformation;
use crate::error::Result;
use crate::et::search::SearchLimits;
use crate::perm::{points_of, PermGroup, Permutation, Point, PointSet, SetPartition};

#[derive(Debug)]
pub enum Reg1Search {
    Found(Box<NonRegularityCertificate>),
    NotFound(String),
    Unknown(String),
}

/// (k-1)-subsets of B that fail to witness and are alone in their orbit among B's (k-1)-subsets.
pub fn designated_subsets(b: &PointSet, lower: &LevelInfo) -> Vec<u128> {
    let bm = b.mask();
    let subs: Vec<u128> = points_of(bm)
        .into_iter()
        .map(|x| bm & !(1u128 << x))
        .collect();
    let ids: Vec<u32> = subs.iter().map(|&s| lower.idx.orbit_id(s)).collect();
    subs.iter()
        .zip(&ids)
        .filter(|&(&s, id)| !lower.witnesses(s) && ids.iter().filter(|&j| j == id).count() == 1)
        .map(|(&s, _)| s)
        .collect()
}

/// Look for a kernel making t·t non-regular (the g of the construction can be taken
/// to be the identity after replacing t by g·t).
pub fn reg1_find_nonregular(
    g: &PermGroup,
    b: &PointSet,
    lower: &LevelInfo,
    limits: &SearchLimits,
) -> Result<Reg1Search> {
    let n = g.degree();
    let k = b.len();
    if k < 3 || lower.r != k - 1 {
        return Ok(Reg1Search::NotFound(
            "needs k >= 3 and the (k-1)-level data".into(),
        ));
    }
    let bars = designated_subsets(b, lower);
    if bars.is_empty() {
        return Ok(Reg1Search::NotFound(
            "no non-witnessing (k-1)-subset of B is alone in its orbit".into(),
        ));
    }
    let last = k - 1;
    let families = index_sets(k, k - 1, 1u64 << last);
    for &bar in &bars {
        let bpt = points_of(b.mask() & !bar)[0];
        let bar_pts = points_of(bar);
        let bar_id = lower.idx.orbit_id(bar);
        let forbidden = move |m: u128| lower.idx.orbit_id(m) == bar_id;
        for x in 0..bar_pts.len() {
            for y in x + 1..bar_pts.len() {
                // block 0: the pair, then the other points of B-bar, then {b}, then the empty class
                let mut seed: Vec<Vec<Point>> = vec![vec![bar_pts[x], bar_pts[y]]];
                let mut targets = vec![bar_pts[x]];
                for (i, &p) in bar_pts.iter().enumerate() {
                    if i != x && i != y {
                        seed.push(vec![p]);
                        targets.push(p);
                    }
                }
                seed.push(vec![bpt]);
                targets.push(bar_pts[y]);
                targets.push(bpt);
                // the class sent to b is seeded with one point outside B; it may grow
                for z in (0..n).filter(|&z| b.mask() >> z & 1 == 0) {
                    let mut seed = seed.clone();
                    seed.push(vec![z]);
                    let mut search =
                        SubsectionSearch::new(n, k, families.clone(), &forbidden, limits.clone());
                    let mut cert = None;
                    let out = search.run(&seed, 0, &mut |blocks| {
                        let kernel = SetPartition::new(n, blocks.to_vec()).unwrap();
                        let labels: Vec<Point> = kernel
                            .blocks()
                            .iter()
                            .map(|blk| {
                                let i = blocks.iter().position(|bb| bb.contains(&blk[0])).unwrap();
                                targets[i]
                            })
                            .collect();
                        let t = Transformation::from_kernel(&kernel, &labels).unwrap();
                        let id = Permutation::identity(n);
                        match NonRegularityCertificate::for_product(
                            g,
                            &t,
                            vec![Factor::Map, Factor::Perm(id), Factor::Map],
                        ) {
                            Some(c) => {
                                cert = Some(c);
                                LeafAction::Stop
                            }
                            None => LeafAction::Continue,
                        }
                    });
                    match out {
                        SubsectionOutcome::Stopped(_) => {
                            return Ok(Reg1Search::Found(Box::new(cert.unwrap())))
                        }
                        SubsectionOutcome::Aborted(w) => return Ok(Reg1Search::Unknown(w)),
                        SubsectionOutcome::Exhausted => {}
                    }
                }
            }
        }
    }
    Ok(Reg1Search::NotFound(
        "no kernel meets the conditions".into(),
    ))
}

#[derive(Debug)]
pub enum Reg1Condition {
    Holds { nodes: u64 },
    Fails(SetPartition),
    Precondition(String),
    Unknown(String),
}

/// For every k-partition: if some part P has all its meeting (k-1)-subsections
/// witnessing, then no (k-1)-subsection avoiding P witnesses. Partitions are taken
/// with B as a section, which loses nothing since B witnesses k-et.
pub fn reg1_partition_condition(
    g: &PermGroup,
    b: &PointSet,
    lower: &LevelInfo,
    limits: &SearchLimits,
) -> Result<Reg1Condition> {
    let n = g.degree();
    let k = b.len();
    if lower.r + 1 != k {
        return Ok(Reg1Condition::Precondition(
            "needs the (k-1)-level data".into(),
        ));
    }
    let bad = lower.non_witness_orbits();
    if bad.len() != 1 {
        return Ok(Reg1Condition::Precondition(format!(
            "{} orbits on (k-1)-sets fail to witness, not exactly one",
            bad.len()
        )));
    }
    let bpts = b.points().to_vec();
    let mut nodes = 0;
    let forbidden = |m: u128| !lower.witnesses(m);
    for (i, &bi) in bpts.iter().enumerate() {
        // B's own (k-1)-subsets meeting part i must all witness
        if bpts
            .iter()
            .any(|&x| x != bi && !lower.witnesses(b.mask() & !(1u128 << x)))
        {
            continue;
        }
        let families = index_sets(k, k - 1, 1u64 << i);
        let rest_blocks: Vec<usize> = (0..k).filter(|&j| j != i).collect();
        let seed: Vec<Vec<Point>> = bpts.iter().map(|&x| vec![x]).collect();
        let mut search = SubsectionSearch::new(n, k, families, &forbidden, limits.clone());
        let out = search.run(&seed, 0, &mut |blocks| {
            let sel: Vec<Vec<Point>> = rest_blocks.iter().map(|&j| blocks[j].clone()).collect();
            if crate::et::section::any_choice(&sel, |m| lower.witnesses(m)) {
                LeafAction::Stop
            } else {
                LeafAction::Continue
            }
        });
        nodes += search.nodes();
        match out {
            SubsectionOutcome::Stopped(blocks) => {
                return Ok(Reg1Condition::Fails(SetPartition::new(n, blocks)?))
            }
            SubsectionOutcome::Aborted(w) => return Ok(Reg1Condition::Unknown(w)),
            SubsectionOutcome::Exhausted => {}
        }
    }
    Ok(Reg1Condition::Holds { nodes })
}
