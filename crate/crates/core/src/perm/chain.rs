use std::collections::HashSet;

use num_bigint::BigUint;
use rand::Rng;

use super::permutation::{Permutation, Point};

/// One level of a stabilizer chain: generators of the stabilizer of the earlier
/// base points, and a transversal for the orbit of this level's base point.
#[derive(Clone, Debug)]
pub struct Level {
    pub base: Point,
    pub gens: Vec<Permutation>,
    pub orbit: Vec<Point>,
    transversal: Vec<Option<Permutation>>,
    done: HashSet<(Point, usize)>,
}

impl Level {
    fn new(n: usize, base: Point) -> Self {
        let mut transversal = vec![None; n];
        transversal[base] = Some(Permutation::identity(n));
        Level {
            base,
            gens: Vec::new(),
            orbit: vec![base],
            transversal,
            done: HashSet::new(),
        }
    }

    /// Element mapping the base point to `beta`, if `beta` is in the orbit.
    pub fn transversal(&self, beta: Point) -> Option<&Permutation> {
        self.transversal[beta].as_ref()
    }

    fn add_gen(&mut self, g: Permutation) {
        self.gens.push(g);
        let mut i = 0;
        // Existing transversal entries are never replaced.
        while i < self.orbit.len() {
            let beta = self.orbit[i];
            for s in &self.gens {
                let gamma = s.image(beta);
                if self.transversal[gamma].is_none() {
                    let u = self.transversal[beta].as_ref().unwrap().compose(s);
                    self.transversal[gamma] = Some(u);
                    self.orbit.push(gamma);
                }
            }
            i += 1;
        }
    }
}

/// Deterministic Schreier-Sims stabilizer chain. Base points are taken from an
/// optional prescribed prefix and then, when a level must be added, the smallest
/// point moved by the new strong generator.
#[derive(Clone, Debug)]
pub struct StabilizerChain {
    n: usize,
    levels: Vec<Level>,
}

impl StabilizerChain {
    pub fn new(n: usize, gens: &[Permutation]) -> Self {
        Self::with_base_prefix(n, gens, &[])
    }

    pub fn with_base_prefix(n: usize, gens: &[Permutation], prefix: &[Point]) -> Self {
        let mut chain = StabilizerChain {
            n,
            levels: Vec::new(),
        };
        let gens: Vec<Permutation> = {
            let mut seen = HashSet::new();
            gens.iter()
                .filter(|g| !g.is_identity() && seen.insert((*g).clone()))
                .cloned()
                .collect()
        };
        for &b in prefix {
            if chain.levels.iter().all(|l| l.base != b) {
                chain.levels.push(Level::new(n, b));
            }
        }
        if gens.is_empty() {
            return chain;
        }
        for g in &gens {
            if chain.levels.iter().all(|l| g.image(l.base) == l.base) {
                let b = g.smallest_moved_point().unwrap();
                chain.levels.push(Level::new(n, b));
            }
        }
        for g in &gens {
            for i in 0..chain.levels.len() {
                chain.levels[i].add_gen(g.clone());
                let b = chain.levels[i].base;
                if g.image(b) != b {
                    break;
                }
            }
        }
        chain.schreier_sims();
        chain
    }

    fn schreier_sims(&mut self) {
        let mut seen: Vec<HashSet<Permutation>> = vec![HashSet::new(); self.levels.len()];
        let mut i = self.levels.len() as isize - 1;
        while i >= 0 {
            let li = i as usize;
            let mut restarted = false;
            let mut oi = 0;
            'scan: while oi < self.levels[li].orbit.len() {
                let beta = self.levels[li].orbit[oi];
                let ngens = self.levels[li].gens.len();
                for si in 0..ngens {
                    if !self.levels[li].done.insert((beta, si)) {
                        continue;
                    }
                    let level = &self.levels[li];
                    let s = &level.gens[si];
                    let ub = level.transversal[beta].as_ref().unwrap();
                    let ubs = level.transversal[s.image(beta)].as_ref().unwrap();
                    let h = ub.compose(s).compose(&ubs.inverse());
                    if h.is_identity() {
                        continue;
                    }
                    if seen.len() <= li {
                        seen.resize(li + 1, HashSet::new());
                    }
                    if !seen[li].insert(h.clone()) {
                        continue;
                    }
                    let (y, j) = self.strip(&h, li + 1);
                    if j < self.levels.len() || !y.is_identity() {
                        if j == self.levels.len() {
                            let b = y.smallest_moved_point().unwrap();
                            self.levels.push(Level::new(self.n, b));
                        }
                        for l in li + 1..=j {
                            self.levels[l].add_gen(y.clone());
                        }
                        i = j as isize;
                        restarted = true;
                        break 'scan;
                    }
                }
                oi += 1;
            }
            if !restarted {
                i -= 1;
            }
        }
    }

    /// Sift `g` through levels `start..`; returns the residue and the level where
    /// sifting stopped (`levels.len()` if it passed every level).
    pub fn strip(&self, g: &Permutation, start: usize) -> (Permutation, usize) {
        let mut h = g.clone();
        for (l, level) in self.levels.iter().enumerate().skip(start) {
            let beta = h.image(level.base);
            match level.transversal[beta].as_ref() {
                None => return (h, l),
                Some(u) => {
                    if beta != level.base {
                        h = h.compose(&u.inverse());
                    }
                }
            }
        }
        (h, self.levels.len())
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.n {
            return false;
        }
        let (h, j) = self.strip(g, 0);
        j == self.levels.len() && h.is_identity()
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn base(&self) -> Vec<Point> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn orbit_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::from(1u32), |acc, l| acc * l.orbit.len())
    }

    /// Generators of the pointwise stabilizer of the first `depth` base points.
    pub fn stabilizer_generators(&self, depth: usize) -> Vec<Permutation> {
        self.levels
            .get(depth)
            .map(|l| l.gens.clone())
            .unwrap_or_default()
    }

    pub fn strong_generators(&self) -> Vec<Permutation> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for l in &self.levels {
            for g in &l.gens {
                if seen.insert(g.clone()) {
                    out.push(g.clone());
                }
            }
        }
        out
    }

    pub fn random_element<R: Rng>(&self, rng: &mut R) -> Permutation {
        let mut g = Permutation::identity(self.n);
        for l in self.levels.iter().rev() {
            let beta = l.orbit[rng.gen_range(0..l.orbit.len())];
            g = g.compose(l.transversal[beta].as_ref().unwrap());
        }
        g
    }

    /// All group elements; intended for small groups only.
    pub fn elements(&self) -> Vec<Permutation> {
        let mut out = vec![Permutation::identity(self.n)];
        for l in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(out.len() * l.orbit.len());
            for g in &out {
                for &beta in &l.orbit {
                    next.push(g.compose(l.transversal[beta].as_ref().unwrap()));
                }
            }
            out = next;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(n: usize) -> Vec<Permutation> {
        vec![
            Permutation::from_images((1..n).chain(std::iter::once(0)).collect()).unwrap(),
            Permutation::from_cycles(n, &[vec![0, 1]]).unwrap(),
        ]
    }

    #[test]
    fn symmetric_group_orders() {
        let mut f = 1u64;
        for n in 2..9 {
            f *= n as u64;
            let c = StabilizerChain::new(n, &sym(n));
            assert_eq!(c.order(), BigUint::from(f));
        }
    }

    #[test]
    fn membership_and_elements() {
        let c = StabilizerChain::new(5, &sym(5));
        assert_eq!(c.elements().len(), 120);
        let a5 = vec![
            Permutation::from_cycles(5, &[vec![0, 1, 2]]).unwrap(),
            Permutation::from_cycles(5, &[vec![0, 1, 2, 3, 4]]).unwrap(),
        ];
        let c5 = StabilizerChain::new(5, &a5);
        assert_eq!(c5.order(), BigUint::from(60u32));
        assert!(!c5.contains(&Permutation::from_cycles(5, &[vec![0, 1]]).unwrap()));
        assert!(c5.contains(&Permutation::from_cycles(5, &[vec![0, 1], vec![2, 3]]).unwrap()));
    }

    #[test]
    fn prescribed_base_prefix() {
        let c = StabilizerChain::with_base_prefix(6, &sym(6), &[3, 1]);
        assert_eq!(&c.base()[..2], &[3, 1]);
        assert_eq!(c.order(), BigUint::from(720u32));
        assert_eq!(&c.orbit_sizes()[..2], &[6, 5]);
    }

    #[test]
    fn trivial_group() {
        let c = StabilizerChain::new(4, &[Permutation::identity(4)]);
        assert_eq!(c.order(), BigUint::from(1u32));
        assert!(c.contains(&Permutation::identity(4)));
    }
}
