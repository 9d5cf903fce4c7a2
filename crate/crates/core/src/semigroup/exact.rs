//! Exact check that ⟨G, t⟩ is regular for every t with image B, when B witnesses
//! |B|-et. Replacing t by g·t we may assume B is a section of ker(t), so the search
//! runs over kernels containing the points of B as class representatives, and over
//! the bijections σ from classes to B.
//!
//! For s = t·f of rank r, Im(s) lies in the orbit of an r-subset of B and the sets
//! reachable from Im(s) form a union of r-set orbits: from orbit O one moves to the
//! orbit of t(Y) for any Y in O meeting r distinct classes. So it is enough that,
//! for each rank r whose level is not ut, every non-witness orbit of an r-subset
//! of B reaches a witness orbit. That condition only gets easier as classes grow,
//! which gives the pruning. Kernels where it fails for some σ are settled by
//! checking all coarsenings of the kernel, and failing that by enumerating the
//! elements t·f themselves.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::time::Instant;

use rayon::prelude::*;

use super::certificate::{Factor, NonRegularityCertificate};
use super::levels::LevelInfo;
use super::transformation::Transformation;
use crate::error::Result;
use crate::et::search::SearchLimits;
use crate::perm::{points_of, PermGroup, Permutation, Point, PointSet};

/// Above this order the element enumeration of the last stage is skipped.
pub const MACHINE_GROUP_LIMIT: u128 = 1_000_000;
/// Labelings are reduced by the set stabilizer of B only up to this group order.
const STABILIZER_GROUP_LIMIT: u128 = 2_000_000;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExactStats {
    pub nodes: u64,
    /// Complete kernels where the orbit-graph condition failed for some labeling.
    pub hard_leaves: u64,
    /// Of those, the ones that needed the element enumeration.
    pub enumerated: u64,
}

#[derive(Debug)]
pub enum ExactOutcome {
    Regular(ExactStats),
    NotRegular(Box<NonRegularityCertificate>, ExactStats),
    Unknown(String),
}

struct Level<'a> {
    info: &'a LevelInfo,
    r: usize,
    wit: u64,
    start: u64,
    /// r-subsets of the k class indices.
    csets: Vec<u64>,
    /// tgt[σ][c]: orbit of the image of class set c under labeling σ.
    tgt: Vec<Vec<u32>>,
    /// For each way of merging the k classes into r groups, the class sets
    /// taking one class from every group.
    merge_csets: Vec<Vec<usize>>,
}

struct Ctx<'a> {
    n: usize,
    k: usize,
    bpts: Vec<Point>,
    free: Vec<Point>,
    levels: Vec<Level<'a>>,
    sigmas: Vec<Vec<usize>>,
    g: &'a PermGroup,
    elements: Option<Vec<Permutation>>,
    limits: SearchLimits,
    nodes: AtomicU64,
    /// Lowest task index that found a certificate; later tasks give up.
    found: AtomicUsize,
}

enum Flow {
    Continue,
    Found(Box<NonRegularityCertificate>),
    Abort(String),
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..k).collect();
    loop {
        out.push(p.clone());
        let Some(i) = (1..k).rev().find(|&i| p[i - 1] < p[i]) else {
            break;
        };
        let j = (i..k).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
    }
    out
}

/// Set partitions of 0..k into exactly r blocks, as block-index vectors.
fn merges(k: usize, r: usize) -> Vec<Vec<usize>> {
    fn rec(i: usize, k: usize, r: usize, used: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == k {
            if used == r {
                out.push(cur.clone());
            }
            return;
        }
        if r - used > k - i {
            return;
        }
        for b in 0..=used.min(r - 1) {
            cur.push(b);
            rec(i + 1, k, r, used.max(b + 1), cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, k, r, 0, &mut Vec::new(), &mut out);
    out
}

/// Calls f on every set choosing one point from each block, until f returns true.
fn any_choice(blocks: &[&[Point]], acc: u128, f: &mut dyn FnMut(u128) -> bool) -> bool {
    match blocks.split_first() {
        None => f(acc),
        Some((first, rest)) => first
            .iter()
            .any(|&x| any_choice(rest, acc | (1u128 << x), f)),
    }
}

impl<'a> Level<'a> {
    /// Orbits from which a witness orbit is reachable.
    fn good(&self, sigma: usize, present: &[u64]) -> u64 {
        let mut good = self.wit;
        loop {
            let before = good;
            for (c, &p) in present.iter().enumerate() {
                if good >> self.tgt[sigma][c] & 1 == 1 {
                    good |= p;
                }
            }
            if good == before {
                return good;
            }
        }
    }

    fn reach(&self, sigma: usize, present: &[u64], from: u32) -> u64 {
        let mut reach = 1u64 << from;
        loop {
            let before = reach;
            for (c, &p) in present.iter().enumerate() {
                if p & reach != 0 {
                    reach |= 1u64 << self.tgt[sigma][c];
                }
            }
            if reach == before {
                return reach;
            }
        }
    }
}

impl<'a> Ctx<'a> {
    fn satisfied(&self, sigma: usize, present: &[Vec<u64>]) -> bool {
        self.levels
            .iter()
            .zip(present)
            .all(|(lv, p)| lv.start & !lv.good(sigma, p) == 0)
    }

    fn place(&self, classes: &[Vec<Point>], p: Point, i: usize, present: &mut [Vec<u64>]) {
        for (lv, pres) in self.levels.iter().zip(present.iter_mut()) {
            for (c, &cs) in lv.csets.iter().enumerate() {
                if cs >> i & 1 == 0 {
                    continue;
                }
                let others: Vec<&[Point]> = (0..self.k)
                    .filter(|&j| j != i && cs >> j & 1 == 1)
                    .map(|j| classes[j].as_slice())
                    .collect();
                let mut bits = pres[c];
                any_choice(&others, 1u128 << p, &mut |m| {
                    bits |= 1u64 << lv.info.idx.orbit_id(m);
                    false
                });
                pres[c] = bits;
            }
        }
    }

    fn tick(&self) -> Option<String> {
        let nodes = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if nodes > self.limits.max_nodes {
            return Some(format!("node cap {} reached", self.limits.max_nodes));
        }
        if nodes % 1024 == 0 {
            if let Some(d) = self.limits.deadline {
                if Instant::now() >= d {
                    return Some("timeout".into());
                }
            }
        }
        None
    }

    fn dfs(
        &self,
        pos: usize,
        classes: &mut Vec<Vec<Point>>,
        present: &[Vec<u64>],
        changed: bool,
        undone: &[usize],
        task: usize,
        stats: &mut ExactStats,
    ) -> Flow {
        // earlier tasks keep going, so the reported certificate is the first in task order
        if self.found.load(Ordering::Relaxed) < task {
            return Flow::Abort("stopped".into());
        }
        let undone: Vec<usize> = if changed {
            undone
                .iter()
                .copied()
                .filter(|&s| !self.satisfied(s, present) && !self.coarsenings_ok(present, s))
                .collect()
        } else {
            undone.to_vec()
        };
        if undone.is_empty() {
            return Flow::Continue;
        }
        if pos == self.free.len() {
            return self.leaf(classes, present, &undone, stats);
        }
        let p = self.free[pos];
        for i in 0..self.k {
            if let Some(why) = self.tick() {
                return Flow::Abort(why);
            }
            stats.nodes += 1;
            let mut next = present.to_vec();
            self.place(classes, p, i, &mut next);
            classes[i].push(p);
            let changed = next != present;
            let f = self.dfs(pos + 1, classes, &next, changed, &undone, task, stats);
            classes[i].pop();
            if !matches!(f, Flow::Continue) {
                return f;
            }
        }
        Flow::Continue
    }

    fn leaf(
        &self,
        classes: &[Vec<Point>],
        present: &[Vec<u64>],
        undone: &[usize],
        stats: &mut ExactStats,
    ) -> Flow {
        stats.hard_leaves += 1;
        for &s in undone {
            stats.enumerated += 1;
            match self.enumerate(classes, present, s) {
                Ok(None) => {}
                Ok(Some(cert)) => return Flow::Found(cert),
                Err(why) => return Flow::Abort(why),
            }
        }
        Flow::Continue
    }

    /// Every coarsening of the kernel into r groups has a section in the reach of
    /// every start orbit. Like the reach condition, this only gets easier as the
    /// classes grow.
    fn coarsenings_ok(&self, present: &[Vec<u64>], s: usize) -> bool {
        for (lv, p) in self.levels.iter().zip(present) {
            let bad_starts = lv.start & !lv.good(s, p);
            if bad_starts == 0 {
                continue;
            }
            let reaches: Vec<u64> = points_of(bad_starts as u128)
                .into_iter()
                .map(|o| lv.reach(s, p, o as u32))
                .collect();
            for cs in &lv.merge_csets {
                let hit = cs.iter().fold(0u64, |h, &c| h | p[c]);
                if reaches.iter().any(|&r| r & hit == 0) {
                    return false;
                }
            }
        }
        true
    }

    fn transformation(&self, classes: &[Vec<Point>], s: usize) -> Transformation {
        let mut images = vec![0; self.n];
        for (i, cl) in classes.iter().enumerate() {
            for &x in cl {
                images[x] = self.bpts[self.sigmas[s][i]];
            }
        }
        Transformation::new(images).expect("images in range")
    }

    /// Walk all s = t·g1·t·g2·t··· up to right multiplication by G, tracking s on
    /// the representatives of the classes. Ok(None) when all are regular.
    fn enumerate(
        &self,
        classes: &[Vec<Point>],
        present: &[Vec<u64>],
        s: usize,
    ) -> std::result::Result<Option<Box<NonRegularityCertificate>>, String> {
        let Some(elements) = &self.elements else {
            return Err(format!(
                "group order exceeds {} for the element enumeration",
                MACHINE_GROUP_LIMIT
            ));
        };
        let t = self.transformation(classes, s);
        let mut class_of = vec![0u8; self.n];
        for (i, cl) in classes.iter().enumerate() {
            for &x in cl {
                class_of[x] = i as u8;
            }
        }
        let mut moves_by_set: HashMap<u64, Vec<(Vec<u8>, usize)>> = HashMap::new();
        let min_r = self.levels.iter().map(|l| l.r).min().unwrap_or(self.k);
        // phi[i]: index in B of the image of the class labelled b_i
        let start: Vec<u8> = (0..self.k as u8).collect();
        let mut parent: HashMap<Vec<u8>, Option<(usize, usize)>> = HashMap::new();
        let mut order: Vec<Vec<u8>> = vec![start.clone()];
        parent.insert(start, None);
        let mut head = 0;
        while head < order.len() {
            let phi = order[head].clone();
            let cur = head;
            head += 1;
            let img: u128 = phi.iter().fold(0, |m, &j| m | 1u128 << self.bpts[j as usize]);
            let r = img.count_ones() as usize;
            if r < min_r {
                continue;
            }
            if r < self.k && !self.element_regular(present, s, &phi, img) {
                let mut factors = vec![Factor::Map];
                let mut steps = Vec::new();
                let mut at = cur;
                while let Some((p, gi)) = parent[&order[at]] {
                    steps.push(gi);
                    at = p;
                }
                for &gi in steps.iter().rev() {
                    factors.push(Factor::Perm(elements[gi].clone()));
                    factors.push(Factor::Map);
                }
                return match NonRegularityCertificate::for_product(self.g, &t, factors) {
                    Some(c) => Ok(Some(Box::new(c))),
                    None => Err("element enumeration disagrees with the reach closure".into()),
                };
            }
            if self.tick().is_some() {
                return Err("limit reached in the element enumeration".into());
            }
            // the step only depends on the classes g sends the image points to
            let set: u64 = phi.iter().fold(0, |m, &j| m | 1 << j);
            let moves = moves_by_set.entry(set).or_insert_with(|| {
                let pts: Vec<Point> = points_of(set as u128)
                    .into_iter()
                    .map(|j| self.bpts[j])
                    .collect();
                let mut seen: HashMap<Vec<u8>, usize> = HashMap::new();
                for (gi, h) in elements.iter().enumerate() {
                    let tuple: Vec<u8> = pts.iter().map(|&x| class_of[h.image(x)]).collect();
                    seen.entry(tuple).or_insert(gi);
                }
                let mut v: Vec<(Vec<u8>, usize)> = seen.into_iter().collect();
                v.sort();
                v
            });
            for (tuple, gi) in moves.iter() {
                let next: Vec<u8> = phi
                    .iter()
                    .map(|&j| {
                        let pos = (set & ((1u64 << j) - 1)).count_ones() as usize;
                        self.sigmas[s][tuple[pos] as usize] as u8
                    })
                    .collect();
                if !parent.contains_key(&next) {
                    parent.insert(next.clone(), Some((cur, *gi)));
                    order.push(next);
                }
            }
        }
        Ok(None)
    }

    /// Regularity of s = t·f where f sends b_i to b_phi[i].
    fn element_regular(&self, present: &[Vec<u64>], s: usize, phi: &[u8], img: u128) -> bool {
        let r = img.count_ones() as usize;
        let Some(li) = self.levels.iter().position(|l| l.r == r) else {
            return true;
        };
        let lv = &self.levels[li];
        let id = lv.info.idx.orbit_id(img);
        if lv.wit >> id & 1 == 1 {
            return true;
        }
        // class c of t lands on b_phi[σ(c)]; a section of ker(s) takes one class
        // from each group, i.e. a class set on which that assignment is injective
        let sigma = &self.sigmas[s];
        let mut hit = 0u64;
        for (c, &cs) in lv.csets.iter().enumerate() {
            let seen = points_of(cs as u128)
                .iter()
                .fold(0u64, |m, &i| m | 1 << phi[sigma[i]]);
            if seen.count_ones() as usize == r {
                hit |= present[li][c];
            }
        }
        lv.reach(s, &present[li], id) & hit != 0
    }
}

/// Decide regularity of ⟨G, t⟩ for every t with image B. `levels` holds the
/// witness data for the ranks 2..k-1; levels that are ut are ignored.
pub fn exact_regularity(
    g: &PermGroup,
    b: &PointSet,
    levels: &[LevelInfo],
    limits: &SearchLimits,
) -> Result<ExactOutcome> {
    let n = g.degree();
    let k = b.len();
    let bpts = b.points().to_vec();
    let sigmas_all = permutations(k);
    let order = g.order_u128();
    let mut levs = Vec::new();
    for info in levels.iter().filter(|l| !l.is_ut() && l.r < k) {
        let count = info.witness.len();
        if count > 64 {
            return Ok(ExactOutcome::Unknown(format!(
                "{} orbits on {}-sets, more than the search handles",
                count, info.r
            )));
        }
        let r = info.r;
        let wit = (0..count)
            .filter(|&i| info.witness[i])
            .fold(0u64, |m, i| m | 1 << i);
        let csets: Vec<u64> = (0u64..1 << k)
            .filter(|c| c.count_ones() as usize == r)
            .collect();
        let mut start = 0u64;
        for &c in &csets {
            let m = points_of(c as u128)
                .iter()
                .fold(0u128, |m, &i| m | 1u128 << bpts[i]);
            start |= 1 << info.idx.orbit_id(m);
        }
        start &= !wit;
        levs.push(Level {
            info,
            r,
            wit,
            start,
            merge_csets: merges(k, r)
                .iter()
                .map(|q| {
                    (0..csets.len())
                        .filter(|&c| {
                            (0..r).all(|gi| {
                                (0..k).filter(|&i| q[i] == gi && csets[c] >> i & 1 == 1).count() == 1
                            })
                        })
                        .collect()
                })
                .collect(),
            csets,
            tgt: Vec::new(),
        });
    }
    let sigmas: Vec<Vec<usize>> = if order <= STABILIZER_GROUP_LIMIT {
        let perms: Vec<Vec<usize>> = g
            .set_stabilizer_elements(b.mask())
            .iter()
            .map(|h| {
                bpts.iter()
                    .map(|&x| bpts.binary_search(&h.image(x)).unwrap())
                    .collect()
            })
            .collect();
        sigmas_all
            .into_iter()
            .filter(|s| {
                perms.iter().all(|p| {
                    let img: Vec<usize> = s.iter().map(|&j| p[j]).collect();
                    img >= *s
                })
            })
            .collect()
    } else {
        sigmas_all
    };
    for lv in levs.iter_mut() {
        lv.tgt = sigmas
            .iter()
            .map(|s| {
                lv.csets
                    .iter()
                    .map(|&c| {
                        let m = points_of(c as u128)
                            .iter()
                            .fold(0u128, |m, &i| m | 1u128 << bpts[s[i]]);
                        lv.info.idx.orbit_id(m)
                    })
                    .collect()
            })
            .collect();
    }
    let free: Vec<Point> = (0..n).filter(|x| b.mask() >> x & 1 == 0).collect();
    let ctx = Ctx {
        n,
        k,
        bpts: bpts.clone(),
        free,
        levels: levs,
        sigmas,
        g,
        elements: (order <= MACHINE_GROUP_LIMIT).then(|| g.elements()),
        limits: limits.clone(),
        nodes: AtomicU64::new(0),
        found: AtomicUsize::new(usize::MAX),
    };
    let mut classes: Vec<Vec<Point>> = bpts.iter().map(|&x| vec![x]).collect();
    let mut present: Vec<Vec<u64>> = ctx.levels.iter().map(|l| vec![0; l.csets.len()]).collect();
    for i in 0..k {
        let p = bpts[i];
        classes[i].clear();
        ctx.place(&classes, p, i, &mut present);
        classes[i].push(p);
    }
    let all: Vec<usize> = (0..ctx.sigmas.len()).collect();

    // split the first few free points into independent tasks
    let depth = ctx.free.len().min(3);
    let mut prefixes: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..depth {
        prefixes = prefixes
            .into_iter()
            .flat_map(|p| {
                (0..k).map(move |i| {
                    let mut q = p.clone();
                    q.push(i);
                    q
                })
            })
            .collect();
    }
    let results: Vec<(Flow, ExactStats)> = crate::runtime::install(|| {
        prefixes
            .par_iter()
            .enumerate()
            .map(|(task, pre)| {
                let mut stats = ExactStats::default();
                let mut cl = classes.clone();
                let mut pres = present.clone();
                for (pos, &i) in pre.iter().enumerate() {
                    let p = ctx.free[pos];
                    ctx.place(&cl, p, i, &mut pres);
                    cl[i].push(p);
                }
                let f = ctx.dfs(depth, &mut cl, &pres, true, &all, task, &mut stats);
                if matches!(f, Flow::Found(_)) {
                    ctx.found.fetch_min(task, Ordering::Relaxed);
                }
                (f, stats)
            })
            .collect()
    });
    let total = |upto: usize| {
        let mut t = ExactStats::default();
        for (_, s) in &results[..upto] {
            t.nodes += s.nodes;
            t.hard_leaves += s.hard_leaves;
            t.enumerated += s.enumerated;
        }
        t
    };
    // a certificate beats an abort caused by a cap; stats stop at the finding task,
    // whose predecessors all ran to completion
    if let Some(i) = results.iter().position(|(f, _)| matches!(f, Flow::Found(_))) {
        if let Flow::Found(c) = &results[i].0 {
            return Ok(ExactOutcome::NotRegular(c.clone(), total(i + 1)));
        }
    }
    let all_stats = total(results.len());
    for (f, _) in results {
        if let Flow::Abort(why) = f {
            return Ok(ExactOutcome::Unknown(why));
        }
    }
    Ok(ExactOutcome::Regular(all_stats))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merges_count_stirling_numbers() {
        assert_eq!(merges(6, 5).len(), 15);
        assert_eq!(merges(6, 4).len(), 65);
        assert_eq!(merges(4, 4).len(), 1);
        assert_eq!(permutations(4).len(), 24);
    }

    fn levels(g: &PermGroup, k: usize) -> Vec<LevelInfo> {
        use crate::et::decide::EtOptions;
        (2..k)
            .rev()
            .map(|r| {
                super::super::levels::level_info(g, r, &EtOptions::default())
                    .unwrap()
                    .unwrap()
            })
            .collect()
    }

    #[test]
    fn affine_line_mod_13_is_regular_at_four() {
        let g = crate::algebra::catalog::catalog("AGL,1,13").unwrap();
        let lv = levels(&g, 4);
        for b in [[0, 1, 2, 4], [0, 1, 2, 5]] {
            let b = PointSet::new(b.to_vec()).unwrap();
            let out = exact_regularity(&g, &b, &lv, &SearchLimits::default()).unwrap();
            assert!(matches!(out, ExactOutcome::Regular(_)), "{:?}", out);
        }
    }

    #[test]
    fn plane_of_order_three_has_a_non_regular_element() {
        let g = crate::algebra::catalog::catalog("PSL,3,3").unwrap();
        let lv = levels(&g, 4);
        let an = crate::et::analyze(&g, 4, &Default::default()).unwrap();
        let b = an.witnesses()[0].clone();
        match exact_regularity(&g, &b, &lv, &SearchLimits::default()).unwrap() {
            ExactOutcome::NotRegular(c, _) => {
                assert_eq!(c.t.image_set(), b);
                assert!(c.verify(&g).is_ok());
            }
            other => panic!("{:?}", other),
        }
    }

    #[test]
    fn node_cap_gives_unknown() {
        let g = crate::algebra::catalog::catalog("PGL,2,27").unwrap();
        let lv = levels(&g, 5);
        let b = PointSet::new(vec![0, 1, 2, 3, 19]).unwrap();
        let lim = SearchLimits {
            max_nodes: 10,
            deadline: None,
        };
        let out = exact_regularity(&g, &b, &lv, &lim).unwrap();
        assert!(matches!(out, ExactOutcome::Unknown(_)), "{:?}", out);
    }
}
