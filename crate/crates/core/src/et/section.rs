use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::perm::{KSetOrbitIndex, PermGroup, Permutation, Point, PointSet, SetPartition};

pub fn is_section(s: &PointSet, p: &SetPartition) -> bool {
    p.is_section(s.points())
}

/// Calls `f` on every one-point-per-block choice (as a mask) until it returns true.
pub fn any_choice(blocks: &[Vec<Point>], mut f: impl FnMut(u128) -> bool) -> bool {
    fn rec(blocks: &[Vec<Point>], i: usize, acc: u128, f: &mut dyn FnMut(u128) -> bool) -> bool {
        if i == blocks.len() {
            return f(acc);
        }
        blocks[i]
            .iter()
            .any(|&x| rec(blocks, i + 1, acc | (1u128 << x), f))
    }
    rec(blocks, 0, 0, &mut f)
}

/// A section of the (possibly partial) partition `blocks` lying in the orbit of `b`.
pub fn find_section_in_orbit(
    idx: &KSetOrbitIndex,
    b: u128,
    blocks: &[Vec<Point>],
) -> Result<Option<u128>> {
    if blocks.len() != b.count_ones() as usize || idx.k() != blocks.len() {
        return Err(Error::InvalidArgument(format!(
            "partition has {} blocks but the set has {} points",
            blocks.len(),
            b.count_ones()
        )));
    }
    let target = idx.canonical(b)?;
    let mut found = None;
    let mut err = None;
    any_choice(blocks, |m| match idx.canonical(m) {
        Ok(c) if c == target => {
            found = Some(m);
            true
        }
        Ok(_) => false,
        Err(e) => {
            err = Some(e);
            true
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(found),
    }
}

/// Some g with `b`·g a section of `blocks`, or none.
pub fn orbit_contains_section(
    g: &PermGroup,
    idx: &KSetOrbitIndex,
    b: &PointSet,
    blocks: &[Vec<Point>],
) -> Result<Option<Permutation>> {
    match find_section_in_orbit(idx, b.mask(), blocks)? {
        None => Ok(None),
        Some(s) => Ok(Some(
            g.set_transporter(b.mask(), s)
                .expect("set in the same orbit"),
        )),
    }
}

/// Breadth-first tree over the orbit of one set, for repeated transporter queries.
pub struct SetOrbitTree {
    root: u128,
    gens: Vec<Permutation>,
    parent: HashMap<u128, (u128, u32)>,
}

impl SetOrbitTree {
    pub fn new(g: &PermGroup, root: u128) -> Self {
        let gens = g.generators().to_vec();
        let mut parent = HashMap::new();
        parent.insert(root, (root, u32::MAX));
        let mut queue = vec![root];
        let mut i = 0;
        while i < queue.len() {
            let m = queue[i];
            for (gi, h) in gens.iter().enumerate() {
                let m2 = h.apply_mask(m);
                if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(m2) {
                    e.insert((m, gi as u32));
                    queue.push(m2);
                }
            }
            i += 1;
        }
        SetOrbitTree { root, gens, parent }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn contains(&self, m: u128) -> bool {
        self.parent.contains_key(&m)
    }

    pub fn members(&self) -> impl Iterator<Item = &u128> {
        self.parent.keys()
    }

    /// An element mapping the root to `to`.
    pub fn transporter(&self, to: u128) -> Option<Permutation> {
        let mut word = Vec::new();
        let mut cur = to;
        while cur != self.root {
            let &(p, gi) = self.parent.get(&cur)?;
            word.push(gi);
            cur = p;
        }
        let n = self.gens.first().map(|g| g.degree()).unwrap_or(0);
        let mut g = Permutation::identity(n.max(1));
        if self.gens.is_empty() {
            return Some(g);
        }
        for &gi in word.iter().rev() {
            g = g.compose(&self.gens[gi as usize]);
        }
        Some(g)
    }

    /// A section of `blocks` inside the orbit, with its transporter.
    pub fn section_of(&self, blocks: &[Vec<Point>]) -> Option<Permutation> {
        let mut hit = None;
        any_choice(blocks, |m| {
            if self.contains(m) {
                hit = Some(m);
                true
            } else {
                false
            }
        });
        hit.and_then(|m| self.transporter(m))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn section_examples() {
        let p = SetPartition::new(6, vec![vec![0, 1], vec![2, 3], vec![4, 5]]).unwrap();
        assert!(is_section(&PointSet::new(vec![0, 3, 5]).unwrap(), &p));
        assert!(!is_section(&PointSet::new(vec![0, 1, 5]).unwrap(), &p));
        assert!(!is_section(&PointSet::new(vec![0, 3]).unwrap(), &p));
    }

    #[test]
    fn symmetric_group_always_finds_a_section() {
        let g = PermGroup::symmetric(7);
        let idx = KSetOrbitIndex::new(&g, 3).unwrap();
        let b = PointSet::new(vec![1, 4, 6]).unwrap();
        let blocks = vec![vec![0, 1, 2], vec![3], vec![4, 5, 6]];
        let h = orbit_contains_section(&g, &idx, &b, &blocks)
            .unwrap()
            .unwrap();
        let part = SetPartition::new(7, blocks).unwrap();
        assert!(is_section(&b.image(&h), &part));
        assert!(orbit_contains_section(&g, &idx, &b, &[vec![0], vec![1]]).is_err());
    }

    #[test]
    fn orbit_tree_transporters_are_correct() {
        let g = PermGroup::dihedral(9);
        let root = crate::perm::mask_of(&[0, 1, 3]);
        let tree = SetOrbitTree::new(&g, root);
        for &m in tree.members() {
            assert_eq!(tree.transporter(m).unwrap().apply_mask(root), m);
        }
        assert_eq!(tree.len(), 18);
    }
}
