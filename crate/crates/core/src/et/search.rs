//! Depth-first extension of partial k-partitions looking for one with no
//! section in a target orbit of k-sets.
//!
//! Each unassigned point carries a bitmask of the blocks it may still join.
//! Putting point u into block j is forbidden as soon as some choice of one
//! point per block, with u standing for block j, lands in the target orbit.
//! Sections persist when points are added, so a forbidden move stays forbidden,
//! and a point with no allowed block kills the branch.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::Instant;

use rayon::prelude::*;

use crate::perm::{KSetOrbitIndex, Point};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointOrder {
    /// Next point is the one with fewest allowed blocks (ties to the smallest label).
    FailFirst,
    /// Next point is the smallest unassigned label.
    Ascending,
}

#[derive(Clone, Debug)]
pub struct SearchLimits {
    pub max_nodes: u64,
    pub deadline: Option<Instant>,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_nodes: 2_000_000_000,
            deadline: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    /// A full partition of the points with no section in the target orbit.
    Refuted(Vec<Vec<Point>>),
    /// Every extension of every seed has a section in the target orbit.
    Exhausted,
    Aborted(String),
}

/// Orbit membership test for k-sets.
pub struct Membership<'a> {
    idx: &'a KSetOrbitIndex,
    dense_target: Option<u32>,
    rep: u128,
}

impl<'a> Membership<'a> {
    pub fn new(idx: &'a KSetOrbitIndex, member: u128) -> crate::Result<Self> {
        let rep = idx.canonical(member)?;
        let dense_target = if idx.is_dense() {
            Some(idx.orbit_id(member))
        } else {
            None
        };
        Ok(Membership {
            idx,
            dense_target,
            rep,
        })
    }

    #[inline]
    pub fn contains(&self, m: u128) -> bool {
        match self.dense_target {
            Some(t) => self.idx.orbit_id(m) == t,
            None => self
                .idx
                .canonical(m)
                .map(|c| c == self.rep)
                .unwrap_or(false),
        }
    }
}

pub struct PartitionSearch<'a> {
    n: usize,
    k: usize,
    member: Membership<'a>,
    order: PointOrder,
    limits: SearchLimits,
    nodes: AtomicU64,
    stop: AtomicBool,
}

enum Step {
    Found(Vec<Vec<Point>>),
    Dead,
    Abort(String),
}

impl<'a> PartitionSearch<'a> {
    pub fn new(
        idx: &'a KSetOrbitIndex,
        target_member: u128,
        order: PointOrder,
        limits: SearchLimits,
    ) -> crate::Result<Self> {
        Ok(PartitionSearch {
            n: idx.degree(),
            k: idx.k(),
            member: Membership::new(idx, target_member)?,
            order,
            limits,
            nodes: AtomicU64::new(0),
            stop: AtomicBool::new(false),
        })
    }

    pub fn nodes(&self) -> u64 {
        self.nodes.load(Ordering::Relaxed)
    }

    /// Is there a section of `blocks` in the target orbit using point u in block j
    /// and point p in block i (p ignored when None)?
    fn creates_section(
        &self,
        blocks: &[Vec<Point>],
        u: Point,
        j: usize,
        p: Option<(Point, usize)>,
    ) -> bool {
        let mut base = 1u128 << u;
        let mut skip_i = usize::MAX;
        if let Some((p, i)) = p {
            base |= 1u128 << p;
            skip_i = i;
        }
        let others: Vec<&Vec<Point>> = blocks
            .iter()
            .enumerate()
            .filter(|&(b, _)| b != j && b != skip_i)
            .map(|(_, v)| v)
            .collect();
        fn rec(others: &[&Vec<Point>], acc: u128, m: &Membership) -> bool {
            match others.split_first() {
                None => m.contains(acc),
                Some((first, rest)) => first.iter().any(|&x| rec(rest, acc | (1u128 << x), m)),
            }
        }
        rec(&others, base, &self.member)
    }

    fn has_section(&self, blocks: &[Vec<Point>]) -> bool {
        crate::et::section::any_choice(blocks, |m| self.member.contains(m))
    }

    /// Allowed-block masks for every point outside `blocks`; None if the seed is already dead.
    fn initial_allowed(&self, blocks: &[Vec<Point>]) -> Option<(Vec<u64>, u128)> {
        let mut assigned = 0u128;
        for b in blocks {
            for &x in b {
                assigned |= 1u128 << x;
            }
        }
        let full = if self.k == 64 {
            u64::MAX
        } else {
            (1u64 << self.k) - 1
        };
        let mut allowed = vec![0u64; self.n];
        let mut unassigned = 0u128;
        for u in 0..self.n {
            if assigned >> u & 1 == 1 {
                continue;
            }
            unassigned |= 1u128 << u;
            let mut a = full;
            for j in 0..self.k {
                if self.creates_section(blocks, u, j, None) {
                    a &= !(1u64 << j);
                }
            }
            if a == 0 {
                return None;
            }
            allowed[u] = a;
        }
        Some((allowed, unassigned))
    }

    fn tick(&self) -> Option<String> {
        if self.stop.load(Ordering::Relaxed) {
            return Some("cancelled".into());
        }
        let c = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if c > self.limits.max_nodes {
            return Some(format!("node cap {} reached", self.limits.max_nodes));
        }
        if c % 1024 == 0 {
            if let Some(d) = self.limits.deadline {
                if Instant::now() > d {
                    return Some("timeout".into());
                }
            }
        }
        None
    }

    fn rec(&self, blocks: &mut Vec<Vec<Point>>, allowed: &[u64], unassigned: u128) -> Step {
        if unassigned == 0 {
            return Step::Found(blocks.clone());
        }
        if let Some(why) = self.tick() {
            return Step::Abort(why);
        }
        let p = match self.order {
            PointOrder::Ascending => unassigned.trailing_zeros() as usize,
            PointOrder::FailFirst => {
                let mut best = (u32::MAX, 0usize);
                let mut m = unassigned;
                while m != 0 {
                    let u = m.trailing_zeros() as usize;
                    m &= m - 1;
                    let c = allowed[u].count_ones();
                    if c < best.0 {
                        best = (c, u);
                        if c <= 1 {
                            break;
                        }
                    }
                }
                best.1
            }
        };
        let rest = unassigned & !(1u128 << p);
        let mut choices = allowed[p];
        while choices != 0 {
            let i = choices.trailing_zeros() as usize;
            choices &= choices - 1;
            let mut next = allowed.to_vec();
            let mut ok = true;
            let mut m = rest;
            while m != 0 && ok {
                let u = m.trailing_zeros() as usize;
                m &= m - 1;
                let mut js = next[u] & !(1u64 << i);
                while js != 0 {
                    let j = js.trailing_zeros() as usize;
                    js &= js - 1;
                    if self.creates_section(blocks, u, j, Some((p, i))) {
                        next[u] &= !(1u64 << j);
                    }
                }
                ok = next[u] != 0;
            }
            if !ok {
                continue;
            }
            blocks[i].push(p);
            let r = self.rec(blocks, &next, rest);
            blocks[i].pop();
            match r {
                Step::Dead => {}
                other => return other,
            }
        }
        Step::Dead
    }

    /// Search all extensions of one partial partition (blocks of a k-partition of a subset).
    pub fn run_from(&self, seed: &[Vec<Point>]) -> SearchOutcome {
        assert_eq!(seed.len(), self.k);
        if self.has_section(seed) {
            return SearchOutcome::Exhausted;
        }
        let (allowed, unassigned) = match self.initial_allowed(seed) {
            Some(x) => x,
            None => return SearchOutcome::Exhausted,
        };
        let mut blocks = seed.to_vec();
        match self.rec(&mut blocks, &allowed, unassigned) {
            Step::Found(b) => SearchOutcome::Refuted(b),
            Step::Dead => SearchOutcome::Exhausted,
            Step::Abort(why) => SearchOutcome::Aborted(why),
        }
    }

    /// Run every seed; the first refutation in seed order wins, so results do not
    /// depend on the worker count.
    pub fn run_seeds(&self, seeds: &[Vec<Vec<Point>>]) -> SearchOutcome {
        let outcomes: Vec<Option<SearchOutcome>> = seeds
            .par_iter()
            .map(|s| {
                if self.stop.load(Ordering::Relaxed) {
                    return None;
                }
                let r = self.run_from(s);
                Some(r)
            })
            .collect();
        let mut aborted = None;
        for o in outcomes {
            match o {
                Some(SearchOutcome::Refuted(b)) => return SearchOutcome::Refuted(b),
                Some(SearchOutcome::Aborted(w)) => {
                    aborted.get_or_insert(w);
                }
                Some(SearchOutcome::Exhausted) => {}
                None => {
                    aborted.get_or_insert("cancelled".into());
                }
            }
        }
        match aborted {
            Some(w) => SearchOutcome::Aborted(w),
            None => SearchOutcome::Exhausted,
        }
    }
}

/// Seeds for refuting the orbit of `b`: every other orbit representative as singletons.
pub fn singleton_seeds(idx: &KSetOrbitIndex, b: u128) -> crate::Result<Vec<Vec<Vec<Point>>>> {
    let target = idx.canonical(b)?;
    Ok(idx
        .reps()
        .iter()
        .filter(|&&r| r != target)
        .map(|&r| {
            crate::perm::points_of(r)
                .into_iter()
                .map(|x| vec![x])
                .collect()
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{mask_of, PermGroup, SetPartition};

    fn no_section(idx: &KSetOrbitIndex, b: u128, blocks: &[Vec<Point>]) -> bool {
        let t = idx.orbit_id(b);
        !crate::et::section::any_choice(blocks, |m| idx.orbit_id(m) == t)
    }

    #[test]
    fn refutations_replay_and_orders_agree() {
        let g = PermGroup::cyclic(8);
        let idx = KSetOrbitIndex::new(&g, 3).unwrap();
        for &b in idx.reps() {
            let seeds = singleton_seeds(&idx, b).unwrap();
            let mut verdicts = Vec::new();
            for order in [PointOrder::FailFirst, PointOrder::Ascending] {
                let s = PartitionSearch::new(&idx, b, order, SearchLimits::default()).unwrap();
                let out = s.run_seeds(&seeds);
                if let SearchOutcome::Refuted(blocks) = &out {
                    SetPartition::new(8, blocks.clone()).unwrap();
                    assert!(no_section(&idx, b, blocks));
                }
                verdicts.push(matches!(out, SearchOutcome::Refuted(_)));
            }
            assert_eq!(verdicts[0], verdicts[1]);
        }
    }

    #[test]
    fn partial_with_a_section_is_pruned() {
        let g = PermGroup::dihedral(7);
        let idx = KSetOrbitIndex::new(&g, 3).unwrap();
        let b = mask_of(&[0, 1, 2]);
        let s =
            PartitionSearch::new(&idx, b, PointOrder::FailFirst, SearchLimits::default()).unwrap();
        assert_eq!(
            s.run_from(&[vec![0], vec![1], vec![2]]),
            SearchOutcome::Exhausted
        );
        assert_eq!(s.nodes(), 0);
    }

    #[test]
    fn node_cap_aborts() {
        let g = PermGroup::trivial(12);
        let idx = KSetOrbitIndex::new(&g, 4).unwrap();
        let limits = SearchLimits {
            max_nodes: 3,
            deadline: None,
        };
        let s = PartitionSearch::new(&idx, mask_of(&[0, 1, 2, 3]), PointOrder::Ascending, limits)
            .unwrap();
        // 0 and 1 share a block, so any completion refutes; six more points exceed the cap first
        let out = s.run_from(&[vec![4, 0, 1], vec![5], vec![6], vec![7]]);
        assert!(matches!(out, SearchOutcome::Aborted(_)));
    }
}
