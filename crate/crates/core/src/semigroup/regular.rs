use std::collections::HashMap;

use super::transformation::Transformation;
use crate::et::section::SetOrbitTree;
use crate::perm::{PermGroup, Permutation};

/// Some g with Im(t)g a transversal of ker(t), which makes t regular in any
/// semigroup containing G and t.
pub fn element_regular_via_group(t: &Transformation, g: &PermGroup) -> Option<Permutation> {
    let tree = SetOrbitTree::new(g, t.image_mask());
    tree.section_of(t.kernel().blocks())
}

/// Generators of a semigroup ⟨G, t⟩: group generators by index, then t.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Letter {
    Perm(usize),
    Map,
}

/// The images reachable from Im(s) without losing rank, with the word reaching each.
#[derive(Clone, Debug)]
pub struct ReachRecord {
    pub start: u128,
    /// Reached set -> (previous set, letter applied).
    pub parent: HashMap<u128, (u128, Letter)>,
    /// A reached transversal of ker(s), if any.
    pub transversal: Option<u128>,
}

impl ReachRecord {
    pub fn word_to(&self, target: u128) -> Vec<Letter> {
        let mut w = Vec::new();
        let mut cur = target;
        while cur != self.start {
            let (p, l) = self.parent[&cur];
            w.push(l);
            cur = p;
        }
        w.reverse();
        w
    }

    pub fn sets(&self) -> Vec<u128> {
        let mut v: Vec<u128> = self.parent.keys().copied().collect();
        v.sort_unstable();
        v
    }
}

/// Breadth-first closure of rank-preserving images of Im(s) under G ∪ {t}.
/// s is regular in ⟨G, t⟩ exactly when a transversal of ker(s) is reached.
pub fn reach_images(
    s: &Transformation,
    gens: &[Permutation],
    t: &Transformation,
    stop_early: bool,
) -> ReachRecord {
    let start = s.image_mask();
    let r = start.count_ones();
    let mut parent = HashMap::new();
    parent.insert(start, (start, Letter::Map));
    let mut queue = vec![start];
    let mut transversal = None;
    let mut i = 0;
    while i < queue.len() {
        let m = queue[i];
        i += 1;
        if transversal.is_none() && s.injective_on(m) {
            transversal = Some(m);
            if stop_early {
                break;
            }
        }
        let mut push = |m2: u128, l: Letter, parent: &mut HashMap<u128, (u128, Letter)>| {
            if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(m2) {
                e.insert((m, l));
                queue.push(m2);
            }
        };
        for (gi, g) in gens.iter().enumerate() {
            push(g.apply_mask(m), Letter::Perm(gi), &mut parent);
        }
        let m2 = t.apply_mask(m);
        if m2.count_ones() == r {
            push(m2, Letter::Map, &mut parent);
        }
    }
    ReachRecord {
        start,
        parent,
        transversal,
    }
}

pub fn element_regular_in_semigroup(s: &Transformation, g: &PermGroup, t: &Transformation) -> bool {
    reach_images(s, g.generators(), t, true)
        .transversal
        .is_some()
}

/// Product of a word over G ∪ {t}.
pub fn evaluate_word(
    n: usize,
    word: &[Letter],
    gens: &[Permutation],
    t: &Transformation,
) -> Transformation {
    let mut u = Transformation::identity(n);
    for l in word {
        u = match l {
            Letter::Perm(i) => u.then_perm(&gens[*i]).unwrap(),
            Letter::Map => u.compose(t).unwrap(),
        };
    }
    u
}

/// An element u of ⟨G, t⟩ with s u s = s, built from a reached transversal.
pub fn inverse_witness(
    s: &Transformation,
    gens: &[Permutation],
    t: &Transformation,
) -> Option<Transformation> {
    let rec = reach_images(s, gens, t, true);
    let target = rec.transversal?;
    let u = evaluate_word(s.degree(), &rec.word_to(target), gens, t);
    // u s permutes Im(s); s (u s)^j u s = s once j + 1 is a multiple of its order
    let us = u.compose(s).unwrap();
    let mut acc = u;
    for _ in 0..100_000 {
        if s.compose(&acc).unwrap().compose(s).unwrap() == *s {
            return Some(acc);
        }
        acc = us.compose(&acc).unwrap();
    }
    None
}
