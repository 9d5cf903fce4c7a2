//! Extension of partial partitions into k labelled blocks under a monotone
//! constraint: for each listed set C of block indices, no choice of one point
//! per block of C may form a forbidden set.

use std::time::Instant;

use crate::et::search::SearchLimits;
use crate::perm::Point;

pub struct SubsectionSearch<'a> {
    pub n: usize,
    pub k: usize,
    /// Block-index sets whose sections are constrained.
    pub families: Vec<u64>,
    pub forbidden: &'a (dyn Fn(u128) -> bool + Sync),
    pub limits: SearchLimits,
    nodes: u64,
}

pub enum LeafAction {
    Stop,
    Continue,
}

#[derive(Debug)]
pub enum SubsectionOutcome {
    Stopped(Vec<Vec<Point>>),
    Exhausted,
    Aborted(String),
}

impl<'a> SubsectionSearch<'a> {
    pub fn new(
        n: usize,
        k: usize,
        families: Vec<u64>,
        forbidden: &'a (dyn Fn(u128) -> bool + Sync),
        limits: SearchLimits,
    ) -> Self {
        SubsectionSearch {
            n,
            k,
            families,
            forbidden,
            limits,
            nodes: 0,
        }
    }

    pub fn nodes(&self) -> u64 {
        self.nodes
    }

    /// Any constrained section using u in block j (and p in block i when given) forbidden?
    fn violates(
        &self,
        blocks: &[Vec<Point>],
        u: Point,
        j: usize,
        p: Option<(Point, usize)>,
    ) -> bool {
        let mut base = 1u128 << u;
        let mut need = 1u64 << j;
        if let Some((p, i)) = p {
            base |= 1u128 << p;
            need |= 1u64 << i;
        }
        for &c in &self.families {
            if c & need != need {
                continue;
            }
            let others: Vec<&Vec<Point>> = (0..self.k)
                .filter(|&b| c >> b & 1 == 1 && need >> b & 1 == 0)
                .map(|b| &blocks[b])
                .collect();
            if others.iter().any(|b| b.is_empty()) {
                continue;
            }
            fn rec(others: &[&Vec<Point>], acc: u128, f: &dyn Fn(u128) -> bool) -> bool {
                match others.split_first() {
                    None => f(acc),
                    Some((first, rest)) => first.iter().any(|&x| rec(rest, acc | (1u128 << x), f)),
                }
            }
            if rec(&others, base, self.forbidden) {
                return true;
            }
        }
        false
    }

    /// Does the partial partition already contain a forbidden constrained section?
    pub fn already_violated(&self, blocks: &[Vec<Point>]) -> bool {
        self.families.iter().any(|&c| {
            let sel: Vec<Vec<Point>> = (0..self.k)
                .filter(|&b| c >> b & 1 == 1)
                .map(|b| blocks[b].clone())
                .collect();
            !sel.iter().any(|b| b.is_empty())
                && crate::et::section::any_choice(&sel, |m| (self.forbidden)(m))
        })
    }

    /// Enumerate completions of `seed` (points of 0..n not in the seed get assigned)
    /// that satisfy the constraint and leave every block in `nonempty` nonempty.
    pub fn run(
        &mut self,
        seed: &[Vec<Point>],
        nonempty: u64,
        on_leaf: &mut dyn FnMut(&[Vec<Point>]) -> LeafAction,
    ) -> SubsectionOutcome {
        assert_eq!(seed.len(), self.k);
        if self.already_violated(seed) {
            return SubsectionOutcome::Exhausted;
        }
        let mut assigned = 0u128;
        for b in seed {
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
                if self.violates(seed, u, j, None) {
                    a &= !(1u64 << j);
                }
            }
            if a == 0 {
                return SubsectionOutcome::Exhausted;
            }
            allowed[u] = a;
        }
        let mut blocks = seed.to_vec();
        match self.rec(&mut blocks, &allowed, unassigned, nonempty, on_leaf) {
            Some(Ok(b)) => SubsectionOutcome::Stopped(b),
            Some(Err(w)) => SubsectionOutcome::Aborted(w),
            None => SubsectionOutcome::Exhausted,
        }
    }

    fn rec(
        &mut self,
        blocks: &mut Vec<Vec<Point>>,
        allowed: &[u64],
        unassigned: u128,
        nonempty: u64,
        on_leaf: &mut dyn FnMut(&[Vec<Point>]) -> LeafAction,
    ) -> Option<std::result::Result<Vec<Vec<Point>>, String>> {
        let empty_needed = (0..self.k)
            .filter(|&b| nonempty >> b & 1 == 1 && blocks[b].is_empty())
            .count();
        if empty_needed as u32 > unassigned.count_ones() {
            return None;
        }
        if unassigned == 0 {
            return match on_leaf(blocks) {
                LeafAction::Stop => Some(Ok(blocks.clone())),
                LeafAction::Continue => None,
            };
        }
        self.nodes += 1;
        if self.nodes > self.limits.max_nodes {
            return Some(Err(format!("node cap {} reached", self.limits.max_nodes)));
        }
        if self.nodes % 1024 == 0 {
            if let Some(d) = self.limits.deadline {
                if Instant::now() > d {
                    return Some(Err("timeout".into()));
                }
            }
        }
        // fewest allowed blocks first
        let mut best = (u32::MAX, 0usize);
        let mut m = unassigned;
        while m != 0 {
            let u = m.trailing_zeros() as usize;
            m &= m - 1;
            let c = allowed[u].count_ones();
            if c < best.0 {
                best = (c, u);
            }
        }
        let p = best.1;
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
                    if self.violates(blocks, u, j, Some((p, i))) {
                        next[u] &= !(1u64 << j);
                    }
                }
                ok = next[u] != 0;
            }
            if !ok {
                continue;
            }
            blocks[i].push(p);
            let r = self.rec(blocks, &next, rest, nonempty, on_leaf);
            blocks[i].pop();
            if r.is_some() {
                return r;
            }
        }
        None
    }
}

/// All r-element subsets of 0..k containing every bit of `must`, as masks.
pub fn index_sets(k: usize, r: usize, must: u64) -> Vec<u64> {
    crate::perm::pointset::ksubsets(k, r)
        .map(|m| m as u64)
        .filter(|&m| m & must == must)
        .collect()
}
