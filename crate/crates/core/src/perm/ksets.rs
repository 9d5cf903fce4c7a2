use std::collections::HashMap;
use std::sync::Mutex;

use super::group::PermGroup;
use super::permutation::Permutation;
use super::pointset::{ksubsets, mask_lex_less, Binomials, PointSet, MASK_DEGREE};
use crate::error::{Error, Result};

/// Above this many k-sets the index switches from a dense table to orbit-walk
/// canonicalization with a cache.
pub const DENSE_LIMIT: u64 = 10_000_000;

const UNSET: u32 = u32::MAX;

enum Storage {
    Dense { orbit_of: Vec<u32> },
    Sparse { cache: Mutex<HashMap<u128, u128>> },
}

/// Orbits of a group on the k-subsets of its points.
pub struct KSetOrbitIndex {
    n: usize,
    k: usize,
    gens: Vec<Permutation>,
    binom: Binomials,
    storage: Storage,
    reps: Vec<u128>,
    sizes: Vec<u64>,
}

impl KSetOrbitIndex {
    pub fn new(group: &PermGroup, k: usize) -> Result<Self> {
        Self::with_limit(group, k, DENSE_LIMIT)
    }

    pub fn with_limit(group: &PermGroup, k: usize, dense_limit: u64) -> Result<Self> {
        let n = group.degree();
        if n > MASK_DEGREE {
            return Err(Error::ResourceLimit(format!(
                "k-set orbits need degree <= {}",
                MASK_DEGREE
            )));
        }
        if k > n {
            return Err(Error::InvalidArgument(format!(
                "k = {} exceeds degree {}",
                k, n
            )));
        }
        let binom = Binomials::new(n);
        let total = binom.get(n, k);
        let gens = group.generators().to_vec();
        if total > dense_limit {
            return Ok(KSetOrbitIndex {
                n,
                k,
                gens,
                binom,
                storage: Storage::Sparse {
                    cache: Mutex::new(HashMap::new()),
                },
                reps: Vec::new(),
                sizes: Vec::new(),
            });
        }
        let mut orbit_of = vec![UNSET; total as usize];
        let mut reps = Vec::new();
        let mut sizes = Vec::new();
        let mut stack = Vec::new();
        for (r, m) in ksubsets(n, k).enumerate() {
            if orbit_of[r] != UNSET {
                continue;
            }
            let id = reps.len() as u32;
            orbit_of[r] = id;
            stack.push(m);
            let mut rep = m;
            let mut size = 0u64;
            while let Some(x) = stack.pop() {
                size += 1;
                if mask_lex_less(x, rep) {
                    rep = x;
                }
                for g in &gens {
                    let y = g.apply_mask(x);
                    let ry = binom.rank(y) as usize;
                    if orbit_of[ry] == UNSET {
                        orbit_of[ry] = id;
                        stack.push(y);
                    }
                }
            }
            reps.push(rep);
            sizes.push(size);
        }
        // Renumber orbits by lexicographic order of their representatives.
        let mut order: Vec<usize> = (0..reps.len()).collect();
        order.sort_by(|&a, &b| {
            if reps[a] == reps[b] {
                std::cmp::Ordering::Equal
            } else if mask_lex_less(reps[a], reps[b]) {
                std::cmp::Ordering::Less
            } else {
                std::cmp::Ordering::Greater
            }
        });
        let mut new_id = vec![0u32; reps.len()];
        for (new, &old) in order.iter().enumerate() {
            new_id[old] = new as u32;
        }
        for v in orbit_of.iter_mut() {
            *v = new_id[*v as usize];
        }
        let reps = order.iter().map(|&i| reps[i]).collect();
        let sizes = order.iter().map(|&i| sizes[i]).collect();
        Ok(KSetOrbitIndex {
            n,
            k,
            gens,
            binom,
            storage: Storage::Dense { orbit_of },
            reps,
            sizes,
        })
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn is_dense(&self) -> bool {
        matches!(self.storage, Storage::Dense { .. })
    }

    pub fn num_orbits(&self) -> Result<usize> {
        self.require_dense()?;
        Ok(self.reps.len())
    }

    /// Lexicographically minimal representatives, in increasing order.
    pub fn reps(&self) -> &[u128] {
        &self.reps
    }

    pub fn rep_sets(&self) -> Vec<PointSet> {
        self.reps.iter().map(|&m| PointSet::from_mask(m)).collect()
    }

    pub fn sizes(&self) -> &[u64] {
        &self.sizes
    }

    fn require_dense(&self) -> Result<()> {
        if self.is_dense() {
            Ok(())
        } else {
            Err(Error::ResourceLimit(format!(
                "C({}, {}) = {} k-sets exceeds the dense limit {}",
                self.n,
                self.k,
                self.binom.get(self.n, self.k),
                DENSE_LIMIT
            )))
        }
    }

    /// Orbit id of a k-set; only for the dense table.
    #[inline]
    pub fn orbit_id(&self, mask: u128) -> u32 {
        match &self.storage {
            Storage::Dense { orbit_of } => orbit_of[self.binom.rank(mask) as usize],
            Storage::Sparse { .. } => panic!("orbit_id needs the dense table"),
        }
    }

    pub fn try_orbit_id(&self, mask: u128) -> Result<u32> {
        self.check_set(mask)?;
        self.require_dense()?;
        Ok(self.orbit_id(mask))
    }

    fn check_set(&self, mask: u128) -> Result<()> {
        if mask.count_ones() as usize != self.k || (self.n < 128 && mask >> self.n != 0) {
            return Err(Error::InvalidArgument(format!(
                "not a {}-subset of the {} points",
                self.k, self.n
            )));
        }
        Ok(())
    }

    /// Lexicographically minimal image of a k-set.
    pub fn canonical(&self, mask: u128) -> Result<u128> {
        self.check_set(mask)?;
        match &self.storage {
            Storage::Dense { .. } => Ok(self.reps[self.orbit_id(mask) as usize]),
            Storage::Sparse { cache } => {
                if let Some(&c) = cache.lock().unwrap().get(&mask) {
                    return Ok(c);
                }
                let mut seen = std::collections::HashSet::new();
                seen.insert(mask);
                let mut orb = vec![mask];
                let mut i = 0;
                let mut rep = mask;
                while i < orb.len() {
                    let x = orb[i];
                    if mask_lex_less(x, rep) {
                        rep = x;
                    }
                    for g in &self.gens {
                        let y = g.apply_mask(x);
                        if seen.insert(y) {
                            orb.push(y);
                        }
                    }
                    i += 1;
                }
                let mut c = cache.lock().unwrap();
                for m in orb {
                    c.insert(m, rep);
                }
                Ok(rep)
            }
        }
    }

    pub fn same_orbit(&self, a: u128, b: u128) -> Result<bool> {
        Ok(self.canonical(a)? == self.canonical(b)?)
    }

    /// Members of one orbit, by walking it from its representative.
    pub fn orbit_members(&self, id: usize) -> Vec<u128> {
        let rep = self.reps[id];
        let mut seen = std::collections::HashSet::new();
        seen.insert(rep);
        let mut orb = vec![rep];
        let mut i = 0;
        while i < orb.len() {
            for g in &self.gens {
                let y = g.apply_mask(orb[i]);
                if seen.insert(y) {
                    orb.push(y);
                }
            }
            i += 1;
        }
        orb
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    #[test]
    fn orbit_sizes_sum_to_binomial() {
        let g = PermGroup::dihedral(8);
        for k in 0..=8 {
            let idx = KSetOrbitIndex::new(&g, k).unwrap();
            let total: u64 = idx.sizes().iter().sum();
            assert_eq!(
                BigUint::from(total),
                crate::perm::pointset::binomial_big(8, k as u64)
            );
        }
    }

    #[test]
    fn representatives_are_lex_minimal() {
        let g = PermGroup::cyclic(7);
        let idx = KSetOrbitIndex::new(&g, 3).unwrap();
        for (i, &rep) in idx.reps().iter().enumerate() {
            for m in idx.orbit_members(i) {
                assert!(!mask_lex_less(m, rep));
                assert_eq!(idx.orbit_id(m) as usize, i);
            }
        }
        assert_eq!(idx.num_orbits().unwrap(), 5);
    }

    #[test]
    fn sparse_mode_agrees_with_dense() {
        let g = PermGroup::dihedral(9);
        let dense = KSetOrbitIndex::new(&g, 4).unwrap();
        let sparse = KSetOrbitIndex::with_limit(&g, 4, 10).unwrap();
        assert!(!sparse.is_dense());
        for m in ksubsets(9, 4) {
            assert_eq!(dense.canonical(m).unwrap(), sparse.canonical(m).unwrap());
        }
    }
}
