use super::regular::reach_images;
use super::transformation::Transformation;
use crate::perm::{PermGroup, Permutation, SetPartition};

/// One factor of a product in ⟨G, t⟩.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Factor {
    Map,
    Perm(Permutation),
}

/// A non-regular element s of ⟨G, t⟩, given as a product, with the closed set of
/// rank-preserving images of Im(s) none of which is a transversal of ker(s).
#[derive(Clone, Debug)]
pub struct NonRegularityCertificate {
    pub t: Transformation,
    pub factors: Vec<Factor>,
    pub s: Transformation,
    pub reach: Vec<u128>,
}

pub fn evaluate(t: &Transformation, factors: &[Factor]) -> Transformation {
    let mut u = Transformation::identity(t.degree());
    for f in factors {
        u = match f {
            Factor::Map => u.compose(t).unwrap(),
            Factor::Perm(g) => u.then_perm(g).unwrap(),
        };
    }
    u
}

impl NonRegularityCertificate {
    /// Build from t and a product; None when the product turns out regular.
    pub fn for_product(g: &PermGroup, t: &Transformation, factors: Vec<Factor>) -> Option<Self> {
        let s = evaluate(t, &factors);
        let rec = reach_images(&s, g.generators(), t, false);
        if rec.transversal.is_some() {
            return None;
        }
        Some(NonRegularityCertificate {
            t: t.clone(),
            factors,
            s,
            reach: rec.sets(),
        })
    }

    pub fn kernel(&self) -> SetPartition {
        self.s.kernel()
    }

    /// Replay without search: recompute s, then check that the recorded sets contain
    /// Im(s), are closed under every generator and rank-preserving use of t, and hold
    /// no transversal of ker(s).
    pub fn verify(&self, g: &PermGroup) -> std::result::Result<(), String> {
        if self.t.degree() != g.degree() {
            return Err("degree mismatch".into());
        }
        let s = evaluate(&self.t, &self.factors);
        if s != self.s {
            return Err("product does not evaluate to the recorded element".into());
        }
        let r = s.rank() as u32;
        let set: std::collections::HashSet<u128> = self.reach.iter().copied().collect();
        if !set.contains(&s.image_mask()) {
            return Err("image of s missing from the record".into());
        }
        for &m in &self.reach {
            if m.count_ones() != r {
                return Err("recorded set of the wrong size".into());
            }
            if s.injective_on(m) {
                return Err("record contains a transversal of the kernel".into());
            }
            for h in g.generators() {
                if !set.contains(&h.apply_mask(m)) {
                    return Err("record not closed under the group".into());
                }
            }
            let m2 = self.t.apply_mask(m);
            if m2.count_ones() == r && !set.contains(&m2) {
                return Err("record not closed under the map".into());
            }
        }
        Ok(())
    }
}
