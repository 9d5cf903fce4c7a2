//! Full closure of a transformation monoid, used as ground truth on small degrees.

use std::collections::HashMap;

use rayon::prelude::*;

use super::transformation::Transformation;
use crate::error::{Error, Result};

pub const DEFAULT_CLOSURE_CAP: usize = 1_000_000;

pub struct Monoid {
    pub degree: usize,
    pub elements: Vec<Transformation>,
}

/// The monoid generated by `gens` (identity included).
pub fn monoid_closure(gens: &[Transformation], cap: usize) -> Result<Monoid> {
    let n = gens
        .first()
        .map(|g| g.degree())
        .ok_or_else(|| Error::InvalidArgument("no generators".into()))?;
    if gens.iter().any(|g| g.degree() != n) {
        return Err(Error::InvalidArgument(
            "generators of different degrees".into(),
        ));
    }
    let mut seen: HashMap<Transformation, usize> = HashMap::new();
    let id = Transformation::identity(n);
    seen.insert(id.clone(), 0);
    let mut elements = vec![id];
    let mut i = 0;
    while i < elements.len() {
        for g in gens {
            let x = elements[i].compose(g)?;
            if !seen.contains_key(&x) {
                if elements.len() >= cap {
                    return Err(Error::ResourceLimit(format!(
                        "monoid exceeds {} elements",
                        cap
                    )));
                }
                seen.insert(x.clone(), elements.len());
                elements.push(x);
            }
        }
        i += 1;
    }
    Ok(Monoid {
        degree: n,
        elements,
    })
}

impl Monoid {
    /// For each element s, whether some u in the monoid has s u s = s. Direct
    /// search over all pairs; quadratic in the monoid size.
    pub fn regularity_census_naive(&self) -> Vec<bool> {
        self.elements
            .par_iter()
            .map(|s| {
                let img = crate::perm::points_of(s.image_mask());
                // s u s = s iff u sends every y in Im(s) into the fiber of y
                self.elements
                    .iter()
                    .any(|u| img.iter().all(|&y| s.image(u.image(y)) == y))
            })
            .collect()
    }

    /// Same answer as `regularity_census_naive`. s is regular iff some u maps Im(s)
    /// injectively onto a transversal of ker(s): then u s permutes Im(s), and a power
    /// of it gives an inverse. So only the images u(Im s) matter, one pass per image set.
    pub fn regularity_census(&self) -> Vec<bool> {
        let mut images: HashMap<u128, Vec<u128>> = HashMap::new();
        for s in &self.elements {
            images.entry(s.image_mask()).or_default();
        }
        let reach: HashMap<u128, Vec<u128>> = images
            .into_keys()
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|a| {
                let r = a.count_ones();
                let mut out: Vec<u128> = self
                    .elements
                    .iter()
                    .map(|u| u.apply_mask(a))
                    .filter(|m| m.count_ones() == r)
                    .collect();
                out.sort_unstable();
                out.dedup();
                (a, out)
            })
            .collect();
        self.elements
            .par_iter()
            .map(|s| reach[&s.image_mask()].iter().any(|&m| s.injective_on(m)))
            .collect()
    }

    pub fn is_regular(&self) -> bool {
        self.regularity_census().into_iter().all(|r| r)
    }
}
