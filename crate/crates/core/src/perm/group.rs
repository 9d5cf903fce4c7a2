use std::collections::{HashMap, HashSet};
use std::sync::OnceLock;

use num_bigint::BigUint;

use super::chain::StabilizerChain;
use super::permutation::{Permutation, Point};
use super::pointset::{points_of, SetPartition};
use crate::error::{Error, Result};

/// A permutation group given by generators, with a lazily built stabilizer chain.
pub struct PermGroup {
    degree: usize,
    gens: Vec<Permutation>,
    name: Option<String>,
    chain: OnceLock<StabilizerChain>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        let chain = OnceLock::new();
        if let Some(c) = self.chain.get() {
            let _ = chain.set(c.clone());
        }
        PermGroup {
            degree: self.degree,
            gens: self.gens.clone(),
            name: self.name.clone(),
            chain,
        }
    }
}

impl std::fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PermGroup")
            .field("name", &self.name)
            .field("degree", &self.degree)
            .field("gens", &self.gens)
            .finish()
    }
}

impl PermGroup {
    pub fn new(degree: usize, gens: Vec<Permutation>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidArgument("degree must be positive".into()));
        }
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    got: g.degree(),
                });
            }
        }
        let mut seen = HashSet::new();
        let gens = gens
            .into_iter()
            .filter(|g| !g.is_identity() && seen.insert(g.clone()))
            .collect();
        Ok(PermGroup {
            degree,
            gens,
            name: None,
            chain: OnceLock::new(),
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn trivial(n: usize) -> Self {
        PermGroup::new(n, vec![]).unwrap()
    }

    pub fn symmetric(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(
                Permutation::from_images((1..n).chain(std::iter::once(0)).collect()).unwrap(),
            );
            gens.push(Permutation::from_cycles(n, &[vec![0, 1]]).unwrap());
        }
        PermGroup::new(n, gens)
            .unwrap()
            .with_name(format!("S{}", n))
    }

    pub fn alternating(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 3 {
            gens.push(Permutation::from_cycles(n, &[vec![0, 1, 2]]).unwrap());
            let cyc: Vec<Point> = if n % 2 == 1 {
                (0..n).collect()
            } else {
                (1..n).collect()
            };
            if n > 3 {
                gens.push(Permutation::from_cycles(n, &[cyc]).unwrap());
            }
        }
        PermGroup::new(n, gens)
            .unwrap()
            .with_name(format!("A{}", n))
    }

    pub fn cyclic(n: usize) -> Self {
        let gens = if n >= 2 {
            vec![Permutation::from_images((1..n).chain(std::iter::once(0)).collect()).unwrap()]
        } else {
            vec![]
        };
        PermGroup::new(n, gens)
            .unwrap()
            .with_name(format!("C{}", n))
    }

    pub fn dihedral(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(
                Permutation::from_images((1..n).chain(std::iter::once(0)).collect()).unwrap(),
            );
            gens.push(Permutation::from_images((0..n).map(|i| (n - i) % n).collect()).unwrap());
        }
        PermGroup::new(n, gens)
            .unwrap()
            .with_name(format!("D{}", 2 * n))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.gens
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn chain(&self) -> &StabilizerChain {
        self.chain
            .get_or_init(|| StabilizerChain::new(self.degree, &self.gens))
    }

    pub fn order(&self) -> BigUint {
        self.chain().order()
    }

    pub fn order_u128(&self) -> u128 {
        let digits = self.order().to_u64_digits();
        match digits.len() {
            0 => 0,
            1 => digits[0] as u128,
            2 => digits[0] as u128 | ((digits[1] as u128) << 64),
            _ => u128::MAX,
        }
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.chain().contains(g)
    }

    pub fn elements(&self) -> Vec<Permutation> {
        self.chain().elements()
    }

    pub fn orbit(&self, x: Point) -> Vec<Point> {
        let mut seen = vec![false; self.degree];
        seen[x] = true;
        let mut orb = vec![x];
        let mut i = 0;
        while i < orb.len() {
            let y = orb[i];
            for g in &self.gens {
                let z = g.image(y);
                if !seen[z] {
                    seen[z] = true;
                    orb.push(z);
                }
            }
            i += 1;
        }
        orb.sort_unstable();
        orb
    }

    /// Orbits on points, each sorted, ordered by smallest element.
    pub fn orbits(&self) -> Vec<Vec<Point>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for x in 0..self.degree {
            if !seen[x] {
                let o = self.orbit(x);
                for &y in &o {
                    seen[y] = true;
                }
                out.push(o);
            }
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.orbit(0).len() == self.degree
    }

    pub fn fixed_points(&self) -> Vec<Point> {
        (0..self.degree)
            .filter(|&x| self.gens.iter().all(|g| g.image(x) == x))
            .collect()
    }

    /// Transitive on ordered k-tuples of distinct points. Uses a chain whose base
    /// starts with `0..k`.
    pub fn is_k_transitive(&self, k: usize) -> bool {
        if k == 0 {
            return true;
        }
        if k > self.degree {
            return false;
        }
        let prefix: Vec<Point> = (0..k).collect();
        let chain = StabilizerChain::with_base_prefix(self.degree, &self.gens, &prefix);
        let sizes = chain.orbit_sizes();
        (0..k).all(|i| sizes.get(i).copied().unwrap_or(1) == self.degree - i)
    }

    /// Orbits on ordered k-tuples of distinct points (small cases only).
    pub fn orbits_on_ktuples(&self, k: usize) -> Vec<Vec<Vec<Point>>> {
        let n = self.degree;
        let mut all: Vec<Vec<Point>> = vec![vec![]];
        for _ in 0..k {
            let mut next = Vec::new();
            for t in &all {
                for x in 0..n {
                    if !t.contains(&x) {
                        let mut u = t.clone();
                        u.push(x);
                        next.push(u);
                    }
                }
            }
            all = next;
        }
        let mut id: HashMap<Vec<Point>, usize> = HashMap::new();
        let mut out: Vec<Vec<Vec<Point>>> = Vec::new();
        for t in all {
            if id.contains_key(&t) {
                continue;
            }
            let oid = out.len();
            let mut orb = vec![t.clone()];
            id.insert(t, oid);
            let mut i = 0;
            while i < orb.len() {
                for g in &self.gens {
                    let u: Vec<Point> = orb[i].iter().map(|&x| g.image(x)).collect();
                    if !id.contains_key(&u) {
                        id.insert(u.clone(), oid);
                        orb.push(u);
                    }
                }
                i += 1;
            }
            orb.sort();
            out.push(orb);
        }
        out
    }

    /// Pointwise stabilizer of `points`, on the same degree.
    pub fn pointwise_stabilizer(&self, points: &[Point]) -> PermGroup {
        let chain = StabilizerChain::with_base_prefix(self.degree, &self.gens, points);
        PermGroup::new(self.degree, chain.stabilizer_generators(points.len())).unwrap()
    }

    /// Action of the setwise stabilizer of an invariant set on that set. The
    /// set must be a union of orbits.
    pub fn restrict_to(&self, support: &[Point]) -> Result<PermGroup> {
        let gens = self
            .gens
            .iter()
            .map(|g| g.restrict(support))
            .collect::<Result<Vec<_>>>()?;
        PermGroup::new(support.len(), gens)
    }

    /// Finest G-invariant partition in which `a` and `b` share a block.
    pub fn minimal_block_system(&self, a: Point, b: Point) -> SetPartition {
        let n = self.degree;
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut queue = Vec::new();
        if a != b {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra.max(rb)] = ra.min(rb);
            queue.push((a, b));
        }
        while let Some((x, y)) = queue.pop() {
            for g in &self.gens {
                let (u, v) = (g.image(x), g.image(y));
                let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
                if ru != rv {
                    parent[ru.max(rv)] = ru.min(rv);
                    queue.push((u, v));
                }
            }
        }
        let mut blocks: HashMap<usize, Vec<Point>> = HashMap::new();
        for x in 0..n {
            let r = find(&mut parent, x);
            blocks.entry(r).or_default().push(x);
        }
        SetPartition::new(n, blocks.into_values().collect()).unwrap()
    }

    /// Minimal nontrivial block systems of a transitive group.
    pub fn block_systems(&self) -> Vec<SetPartition> {
        let n = self.degree;
        let mut found: Vec<SetPartition> = Vec::new();
        for b in 1..n {
            let p = self.minimal_block_system(0, b);
            if p.num_blocks() > 1 && !found.contains(&p) {
                found.push(p);
            }
        }
        let refines = |fine: &SetPartition, coarse: &SetPartition| -> bool {
            let owner = coarse.block_of();
            fine.blocks()
                .iter()
                .all(|blk| blk.iter().all(|&x| owner[x] == owner[blk[0]]))
        };
        let minimal: Vec<SetPartition> = found
            .iter()
            .filter(|p| !found.iter().any(|q| q != *p && refines(q, p)))
            .cloned()
            .collect();
        minimal
    }

    pub fn is_primitive(&self) -> bool {
        self.is_transitive()
            && (1..self.degree).all(|b| self.minimal_block_system(0, b).num_blocks() == 1)
    }

    /// Every pair of points lies in a proper block (transitive groups).
    pub fn is_fully_imprimitive(&self) -> bool {
        self.degree > 1
            && (1..self.degree).all(|b| self.minimal_block_system(0, b).num_blocks() > 1)
    }

    /// Orbital graphs on unordered pairs: one edge list per orbit of 2-sets.
    pub fn orbital_graphs(&self) -> Vec<OrbitalGraph> {
        let n = self.degree;
        let mut seen = vec![vec![false; n]; n];
        let mut out = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                if seen[a][b] {
                    continue;
                }
                seen[a][b] = true;
                let mut edges = vec![(a, b)];
                let mut i = 0;
                while i < edges.len() {
                    let (x, y) = edges[i];
                    for g in &self.gens {
                        let (u, v) = (g.image(x), g.image(y));
                        let (u, v) = (u.min(v), u.max(v));
                        if !seen[u][v] {
                            seen[u][v] = true;
                            edges.push((u, v));
                        }
                    }
                    i += 1;
                }
                edges.sort_unstable();
                out.push(OrbitalGraph::new(n, edges));
            }
        }
        out
    }

    /// Image of a set (bitmask) under every element of the orbit; small cases.
    pub fn set_orbit(&self, mask: u128) -> Vec<u128> {
        let mut seen = HashSet::new();
        seen.insert(mask);
        let mut orb = vec![mask];
        let mut i = 0;
        while i < orb.len() {
            for g in &self.gens {
                let m = g.apply_mask(orb[i]);
                if seen.insert(m) {
                    orb.push(m);
                }
            }
            i += 1;
        }
        orb
    }

    /// Some element mapping set `from` to set `to`, found by walking the set orbit.
    pub fn set_transporter(&self, from: u128, to: u128) -> Option<Permutation> {
        let mut parent: HashMap<u128, (u128, usize)> = HashMap::new();
        let mut queue = std::collections::VecDeque::new();
        parent.insert(from, (from, usize::MAX));
        queue.push_back(from);
        while let Some(m) = queue.pop_front() {
            if m == to {
                let mut word = Vec::new();
                let mut cur = m;
                while cur != from {
                    let (p, gi) = parent[&cur];
                    word.push(gi);
                    cur = p;
                }
                let mut g = Permutation::identity(self.degree);
                for &gi in word.iter().rev() {
                    g = g.compose(&self.gens[gi]);
                }
                return Some(g);
            }
            for (gi, g) in self.gens.iter().enumerate() {
                let m2 = g.apply_mask(m);
                if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(m2) {
                    e.insert((m, gi));
                    queue.push_back(m2);
                }
            }
        }
        None
    }

    /// Setwise stabilizer of a set, by filtering elements; small groups only.
    pub fn set_stabilizer_elements(&self, mask: u128) -> Vec<Permutation> {
        self.elements()
            .into_iter()
            .filter(|g| g.apply_mask(mask) == mask)
            .collect()
    }

    pub fn display_name(&self) -> String {
        self.name
            .clone()
            .unwrap_or_else(|| format!("group of degree {}", self.degree))
    }
}

/// The G-orbit of an unordered pair, viewed as a graph on the points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitalGraph {
    pub degree: usize,
    pub edges: Vec<(Point, Point)>,
}

impl OrbitalGraph {
    pub fn new(degree: usize, edges: Vec<(Point, Point)>) -> Self {
        OrbitalGraph { degree, edges }
    }

    pub fn components(&self) -> Vec<Vec<Point>> {
        let n = self.degree;
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            comp[s] = id;
            let mut stack = vec![s];
            let mut members = vec![];
            while let Some(x) = stack.pop() {
                members.push(x);
                for &y in &adj[x] {
                    if comp[y] == usize::MAX {
                        comp[y] = id;
                        stack.push(y);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    pub fn representative(&self) -> (Point, Point) {
        self.edges[0]
    }
}

pub fn mask_points(mask: u128) -> Vec<Point> {
    points_of(mask)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn klein4() -> PermGroup {
        PermGroup::new(
            4,
            vec![
                Permutation::from_cycles(4, &[vec![0, 1], vec![2, 3]]).unwrap(),
                Permutation::from_cycles(4, &[vec![0, 2], vec![1, 3]]).unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn orders_of_small_groups() {
        assert_eq!(PermGroup::symmetric(7).order(), BigUint::from(5040u32));
        assert_eq!(PermGroup::alternating(7).order(), BigUint::from(2520u32));
        assert_eq!(PermGroup::alternating(6).order(), BigUint::from(360u32));
        assert_eq!(PermGroup::dihedral(5).order(), BigUint::from(10u32));
        assert_eq!(klein4().order(), BigUint::from(4u32));
    }

    #[test]
    fn transitivity_levels() {
        let s6 = PermGroup::symmetric(6);
        assert!(s6.is_k_transitive(6));
        let a6 = PermGroup::alternating(6);
        assert!(a6.is_k_transitive(4));
        assert!(!a6.is_k_transitive(5));
        assert!(!PermGroup::dihedral(5).is_k_transitive(2));
    }

    #[test]
    fn klein_is_fully_imprimitive_c6_is_not() {
        let k = klein4();
        assert!(k.is_fully_imprimitive());
        assert!(k.orbital_graphs().iter().all(|g| !g.is_connected()));
        let c6 = PermGroup::cyclic(6);
        assert!(!c6.is_fully_imprimitive());
        assert!(c6.orbital_graphs().iter().any(|g| g.is_connected()));
    }

    #[test]
    fn block_systems_of_c6() {
        let c6 = PermGroup::cyclic(6);
        let systems = c6.block_systems();
        let sizes: Vec<usize> = systems.iter().map(|p| p.blocks()[0].len()).collect();
        assert_eq!(systems.len(), 2);
        assert!(sizes.contains(&2) && sizes.contains(&3));
        assert!(PermGroup::symmetric(5).is_primitive());
        assert!(!c6.is_primitive());
    }

    #[test]
    fn transporter_maps_sets() {
        let g = PermGroup::alternating(6);
        let from = 0b000111u128;
        let to = 0b101010u128;
        let t = g.set_transporter(from, to).unwrap();
        assert_eq!(t.apply_mask(from), to);
    }

    #[test]
    fn tuple_orbits_of_s4() {
        assert_eq!(PermGroup::symmetric(4).orbits_on_ktuples(3).len(), 1);
        assert_eq!(klein4().orbits_on_ktuples(1).len(), 1);
        assert_eq!(klein4().orbits_on_ktuples(2).len(), 3);
    }
}
