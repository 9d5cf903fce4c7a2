use crate::algebra::unital::{unital_group, UnitalFlavor};
use crate::error::Result;
use crate::perm::KSetOrbitIndex;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UnitalOrbitCount {
    pub q: u64,
    pub computed: usize,
    pub predicted: usize,
}

/// Orbits of PGU(3,q) on 3-sets of the unital against (q+3)/2 (q odd) or (q+2)/2 (q even).
pub fn pgu_orbit_count_check(q: u64) -> Result<UnitalOrbitCount> {
    let (g, _) = unital_group(q, UnitalFlavor::Pgu)?;
    let idx = KSetOrbitIndex::new(&g, 3)?;
    let predicted = if q % 2 == 1 { (q + 3) / 2 } else { (q + 2) / 2 } as usize;
    Ok(UnitalOrbitCount {
        q,
        computed: idx.num_orbits()?,
        predicted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q3() {
        let c = pgu_orbit_count_check(3).unwrap();
        assert_eq!((c.computed, c.predicted), (3, 3));
    }
}
