use crate::algebra::symplectic::SymplecticSpace;
use crate::error::{Error, Result};
use crate::perm::{mask_of, KSetOrbitIndex, Point};

pub trait TripleOracle {
    fn degree(&self) -> usize;
    fn contains(&self, x: Point, y: Point, z: Point) -> bool;
}

impl TripleOracle for SymplecticSpace {
    fn degree(&self) -> usize {
        self.size()
    }
    fn contains(&self, x: Point, y: Point, z: Point) -> bool {
        self.in_two_graph(x, y, z)
    }
}

/// Triples forming one orbit of a group on 3-sets.
pub struct OrbitTriples<'a> {
    pub idx: &'a KSetOrbitIndex,
    pub orbit: u32,
}

impl TripleOracle for OrbitTriples<'_> {
    fn degree(&self) -> usize {
        self.idx.degree()
    }
    fn contains(&self, x: Point, y: Point, z: Point) -> bool {
        self.idx.orbit_id(mask_of(&[x, y, z])) == self.orbit
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TwoGraphLabel {
    Full,
    Mixed,
    Empty,
}

pub fn twograph_classify(t: &dyn TripleOracle, s: [Point; 4]) -> Result<TwoGraphLabel> {
    let mut count = 0;
    for skip in 0..4 {
        let v: Vec<Point> = (0..4).filter(|&i| i != skip).map(|i| s[i]).collect();
        if t.contains(v[0], v[1], v[2]) {
            count += 1;
        }
    }
    match count {
        4 => Ok(TwoGraphLabel::Full),
        2 => Ok(TwoGraphLabel::Mixed),
        0 => Ok(TwoGraphLabel::Empty),
        c => Err(Error::Validation(format!(
            "4-set {:?} contains {} triples; not a two-graph",
            s, c
        ))),
    }
}

/// The constant number of triples through a pair, or the first pair breaking constancy.
pub fn twograph_regularity(
    t: &dyn TripleOracle,
) -> std::result::Result<usize, ((Point, Point), usize, usize)> {
    let n = t.degree();
    let mut expected = None;
    for x in 0..n {
        for y in x + 1..n {
            let c = (0..n)
                .filter(|&z| z != x && z != y && t.contains(x, y, z))
                .count();
            match expected {
                None => expected = Some(c),
                Some(e) if e != c => return Err(((x, y), e, c)),
                _ => {}
            }
        }
    }
    Ok(expected.unwrap_or(0))
}

/// (n-4)/3 < k < 2(n-1)/3.
pub fn pair_degree_in_range(n: usize, k: usize) -> bool {
    3 * k + 4 > n && 3 * k < 2 * (n - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog::catalog;

    #[test]
    fn affine_symplectic_d2() {
        let space = SymplecticSpace::new(2);
        let g = catalog("ASp,2").unwrap();
        let idx = KSetOrbitIndex::new(&g, 3).unwrap();
        assert_eq!(idx.reps().len(), 2);
        let mut ks = Vec::new();
        for o in 0..2 {
            let t = OrbitTriples {
                idx: &idx,
                orbit: o,
            };
            let k = twograph_regularity(&t).unwrap();
            assert!(pair_degree_in_range(16, k));
            ks.push(k);
            for m in crate::perm::pointset::ksubsets(16, 4) {
                let p = crate::perm::points_of(m);
                twograph_classify(&t, [p[0], p[1], p[2], p[3]]).unwrap();
            }
        }
        ks.sort();
        assert_eq!(ks, vec![6, 8]);
        assert_eq!(twograph_regularity(&space).unwrap(), 6);
    }
}
