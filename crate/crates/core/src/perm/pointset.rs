use serde::{Deserialize, Serialize};

use super::permutation::{Permutation, Point};
use crate::error::{Error, Result};

/// Largest degree supported by the bitmask representation of point sets.
pub const MASK_DEGREE: usize = 128;

pub fn mask_of(points: &[Point]) -> u128 {
    points.iter().fold(0u128, |m, &x| m | (1u128 << x))
}

pub fn points_of(mut mask: u128) -> Vec<Point> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    while mask != 0 {
        out.push(mask.trailing_zeros() as usize);
        mask &= mask - 1;
    }
    out
}

/// Lexicographic comparison of two equal-size sets given as masks (sorted-tuple order).
#[inline]
pub fn mask_lex_less(a: u128, b: u128) -> bool {
    let d = a ^ b;
    d != 0 && (a & d & d.wrapping_neg()) != 0
}

/// A sorted set of distinct points.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PointSet(Vec<Point>);

impl PointSet {
    pub fn new(mut points: Vec<Point>) -> Result<Self> {
        points.sort_unstable();
        if points.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidArgument(
                "point set has repeated points".into(),
            ));
        }
        Ok(PointSet(points))
    }

    pub fn from_mask(mask: u128) -> Self {
        PointSet(points_of(mask))
    }

    pub fn points(&self) -> &[Point] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, x: Point) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    pub fn mask(&self) -> u128 {
        mask_of(&self.0)
    }

    pub fn image(&self, g: &Permutation) -> PointSet {
        let mut v: Vec<Point> = self.0.iter().map(|&x| g.image(x)).collect();
        v.sort_unstable();
        PointSet(v)
    }

    pub fn check_degree(&self, n: usize) -> Result<()> {
        match self.0.last() {
            Some(&x) if x >= n => Err(Error::InvalidArgument(format!(
                "point {} exceeds degree {}",
                x + 1,
                n
            ))),
            _ => Ok(()),
        }
    }

    /// 1-based rendering, e.g. `{1,2,5}`.
    pub fn to_one_based(&self) -> Vec<usize> {
        self.0.iter().map(|x| x + 1).collect()
    }
}

/// An unordered partition of `0..n` into nonempty blocks. Blocks are kept sorted
/// internally and ordered by their smallest element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SetPartition {
    degree: usize,
    blocks: Vec<Vec<Point>>,
}

impl SetPartition {
    pub fn new(degree: usize, blocks: Vec<Vec<Point>>) -> Result<Self> {
        let mut seen = vec![false; degree];
        let mut blocks: Vec<Vec<Point>> = blocks;
        for b in blocks.iter_mut() {
            if b.is_empty() {
                return Err(Error::InvalidArgument("empty block in partition".into()));
            }
            b.sort_unstable();
            for &x in b.iter() {
                if x >= degree {
                    return Err(Error::InvalidArgument(format!(
                        "point {} exceeds degree {}",
                        x + 1,
                        degree
                    )));
                }
                if seen[x] {
                    return Err(Error::InvalidArgument(format!(
                        "point {} in two blocks",
                        x + 1
                    )));
                }
                seen[x] = true;
            }
        }
        if let Some(x) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidArgument(format!(
                "point {} not covered by partition",
                x + 1
            )));
        }
        blocks.sort_by_key(|b| b[0]);
        Ok(SetPartition { degree, blocks })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn blocks(&self) -> &[Vec<Point>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_of(&self) -> Vec<usize> {
        let mut out = vec![0; self.degree];
        for (i, b) in self.blocks.iter().enumerate() {
            for &x in b {
                out[x] = i;
            }
        }
        out
    }

    /// True when `s` meets every block in exactly one point.
    pub fn is_section(&self, s: &[Point]) -> bool {
        if s.len() != self.blocks.len() {
            return false;
        }
        let block_of = self.block_of();
        let mut hit = vec![false; self.blocks.len()];
        for &x in s {
            if x >= self.degree || hit[block_of[x]] {
                return false;
            }
            hit[block_of[x]] = true;
        }
        true
    }

    /// Calls `f` on every section (as a mask) until it returns true.
    pub fn any_section(&self, mut f: impl FnMut(u128) -> bool) -> bool {
        fn rec(
            blocks: &[Vec<Point>],
            i: usize,
            acc: u128,
            f: &mut dyn FnMut(u128) -> bool,
        ) -> bool {
            if i == blocks.len() {
                return f(acc);
            }
            blocks[i]
                .iter()
                .any(|&x| rec(blocks, i + 1, acc | (1u128 << x), f))
        }
        assert!(self.degree <= MASK_DEGREE);
        rec(&self.blocks, 0, 0, &mut f)
    }

    pub fn num_sections(&self) -> u128 {
        self.blocks.iter().map(|b| b.len() as u128).product()
    }

    pub fn image(&self, g: &Permutation) -> SetPartition {
        let blocks = self
            .blocks
            .iter()
            .map(|b| b.iter().map(|&x| g.image(x)).collect())
            .collect();
        SetPartition::new(self.degree, blocks).expect("image of a partition is a partition")
    }
}

/// Binomial coefficients up to `n` choose `n` in u64, plus exact big values on demand.
pub struct Binomials {
    table: Vec<Vec<u64>>,
}

impl Binomials {
    pub fn new(n: usize) -> Self {
        let mut table = vec![vec![0u64; n + 2]; n + 1];
        for i in 0..=n {
            table[i][0] = 1;
            for j in 1..=i {
                table[i][j] = table[i - 1][j - 1].saturating_add(if j <= i - 1 {
                    table[i - 1][j]
                } else {
                    0
                });
            }
        }
        Binomials { table }
    }

    #[inline]
    pub fn get(&self, n: usize, k: usize) -> u64 {
        if k > n {
            0
        } else {
            self.table[n][k]
        }
    }

    /// Colex rank of a k-set.
    #[inline]
    pub fn rank(&self, mut mask: u128) -> u64 {
        let mut r = 0u64;
        let mut i = 1;
        while mask != 0 {
            let x = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            r += self.get(x, i);
            i += 1;
        }
        r
    }
}

pub fn binomial_big(n: u64, k: u64) -> num_bigint::BigUint {
    use num_bigint::BigUint;
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Successor of a mask with the same popcount in increasing numeric (colex) order.
#[inline]
pub fn next_combination(x: u128) -> u128 {
    let c = x & x.wrapping_neg();
    let r = x.wrapping_add(c);
    if r == 0 {
        return 0;
    }
    (((r ^ x) >> 2) / c) | r
}

/// Iterates all k-subsets of `0..n` as masks in colex order.
pub fn ksubsets(n: usize, k: usize) -> impl Iterator<Item = u128> {
    assert!(n <= MASK_DEGREE);
    let first: u128 = if k == 0 {
        0
    } else if k >= 128 {
        u128::MAX
    } else {
        (1u128 << k) - 1
    };
    let limit_ok = move |m: u128| n == 128 || m >> n == 0;
    let mut cur = if k > n { None } else { Some(first) };
    std::iter::from_fn(move || {
        let m = cur?;
        cur = if k == 0 {
            None
        } else {
            let nx = next_combination(m);
            if nx == 0 || !limit_ok(nx) {
                None
            } else {
                Some(nx)
            }
        };
        Some(m)
    })
}
