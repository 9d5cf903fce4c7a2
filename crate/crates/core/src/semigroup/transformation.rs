use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{Permutation, Point, PointSet, SetPartition};

/// A self-map of 0..n, acting on the right: x(st) = (xs)t.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Transformation {
    images: Vec<Point>,
}

impl Transformation {
    pub fn new(images: Vec<Point>) -> Result<Self> {
        let n = images.len();
        if let Some(&x) = images.iter().find(|&&x| x >= n) {
            return Err(Error::InvalidArgument(format!(
                "image {} out of range for degree {}",
                x + 1,
                n
            )));
        }
        Ok(Transformation { images })
    }

    pub fn identity(n: usize) -> Self {
        Transformation {
            images: (0..n).collect(),
        }
    }

    pub fn constant(n: usize, c: Point) -> Self {
        Transformation { images: vec![c; n] }
    }

    pub fn from_perm(g: &Permutation) -> Self {
        Transformation {
            images: g.images().to_vec(),
        }
    }

    /// The map sending every point of block i of `kernel` to `targets[i]`.
    pub fn from_kernel(kernel: &SetPartition, targets: &[Point]) -> Result<Self> {
        if targets.len() != kernel.num_blocks() {
            return Err(Error::InvalidArgument(
                "one target per kernel block is required".into(),
            ));
        }
        let mut images = vec![0; kernel.degree()];
        for (b, &t) in kernel.blocks().iter().zip(targets) {
            for &x in b {
                images[x] = t;
            }
        }
        Transformation::new(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, x: Point) -> Point {
        self.images[x]
    }

    pub fn images(&self) -> &[Point] {
        &self.images
    }

    pub fn image_mask(&self) -> u128 {
        self.images.iter().fold(0u128, |m, &x| m | 1u128 << x)
    }

    pub fn image_set(&self) -> PointSet {
        PointSet::from_mask(self.image_mask())
    }

    pub fn rank(&self) -> usize {
        self.image_mask().count_ones() as usize
    }

    /// Fibers of the map, ordered by smallest element.
    pub fn kernel(&self) -> SetPartition {
        let n = self.degree();
        let mut blocks: Vec<Vec<Point>> = Vec::new();
        let mut slot = vec![usize::MAX; n];
        for x in 0..n {
            let y = self.images[x];
            if slot[y] == usize::MAX {
                slot[y] = blocks.len();
                blocks.push(Vec::new());
            }
            blocks[slot[y]].push(x);
        }
        SetPartition::new(n, blocks).expect("fibers partition the points")
    }

    /// First self, then other.
    pub fn compose(&self, other: &Transformation) -> Result<Transformation> {
        self.check(other.degree())?;
        Ok(Transformation {
            images: self.images.iter().map(|&x| other.images[x]).collect(),
        })
    }

    pub fn then_perm(&self, g: &Permutation) -> Result<Transformation> {
        self.check(g.degree())?;
        Ok(Transformation {
            images: self.images.iter().map(|&x| g.image(x)).collect(),
        })
    }

    pub fn after_perm(&self, g: &Permutation) -> Result<Transformation> {
        self.check(g.degree())?;
        Ok(Transformation {
            images: (0..self.degree())
                .map(|x| self.images[g.image(x)])
                .collect(),
        })
    }

    fn check(&self, n: usize) -> Result<()> {
        if n != self.degree() {
            return Err(Error::DegreeMismatch {
                expected: self.degree(),
                got: n,
            });
        }
        Ok(())
    }

    #[inline]
    pub fn apply_mask(&self, mut mask: u128) -> u128 {
        let mut out = 0u128;
        while mask != 0 {
            let x = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            out |= 1u128 << self.images[x];
        }
        out
    }

    pub fn apply(&self, s: &PointSet) -> PointSet {
        PointSet::from_mask(self.apply_mask(s.mask()))
    }

    #[inline]
    pub fn injective_on(&self, mask: u128) -> bool {
        self.apply_mask(mask).count_ones() == mask.count_ones()
    }

    /// Does `mask` meet every kernel class exactly once?
    pub fn is_transversal(&self, mask: u128) -> bool {
        mask.count_ones() as usize == self.rank() && self.injective_on(mask)
    }

    pub fn is_permutation(&self) -> bool {
        self.rank() == self.degree()
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x + 1).collect()
    }
}

impl fmt::Display for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.images.iter().map(|x| (x + 1).to_string()).collect();
        write!(f, "[{}]", v.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn basics() {
        let c = Transformation::constant(5, 2);
        let s = PointSet::new(vec![0, 3, 4]).unwrap();
        assert_eq!(c.apply(&s).points(), &[2]);
        let t = Transformation::new(vec![0, 0, 2, 2]).unwrap();
        assert_eq!(t.compose(&Transformation::identity(4)).unwrap(), t);
        assert_eq!(t.rank(), 2);
        assert_eq!(t.kernel().blocks(), &[vec![0, 1], vec![2, 3]]);
        assert!(t.is_transversal(0b0101));
        assert!(!t.is_transversal(0b0011));
        assert!(Transformation::new(vec![0, 4]).is_err());
    }

    fn arb_map(n: usize) -> impl Strategy<Value = Transformation> {
        proptest::collection::vec(0..n, n).prop_map(|v| Transformation::new(v).unwrap())
    }

    proptest! {
        #[test]
        fn rank_under_permutation(t in arb_map(7), imgs in Just((0..7).collect::<Vec<_>>()).prop_shuffle()) {
            let g = Permutation::from_images(imgs).unwrap();
            prop_assert_eq!(t.then_perm(&g).unwrap().rank(), t.rank());
            prop_assert_eq!(t.after_perm(&g).unwrap().rank(), t.rank());
        }

        #[test]
        fn rank_of_products(a in arb_map(6), b in arb_map(6)) {
            let p = a.compose(&b).unwrap();
            prop_assert!(p.rank() <= a.rank().min(b.rank()));
            prop_assert_eq!(p.rank(), b.apply_mask(a.image_mask()).count_ones() as usize);
        }
    }
}
