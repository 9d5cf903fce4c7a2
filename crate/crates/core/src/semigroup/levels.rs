use crate::error::Result;
use crate::et::decide::{analyze, EtOptions, Goal, OrbitStatus};
use crate::perm::{KSetOrbitIndex, PermGroup};

/// Witness status of every r-set orbit.
pub struct LevelInfo {
    pub r: usize,
    pub idx: KSetOrbitIndex,
    pub witness: Vec<bool>,
}

impl LevelInfo {
    pub fn is_ut(&self) -> bool {
        self.witness.iter().all(|&w| w)
    }

    pub fn is_et(&self) -> bool {
        self.witness.iter().any(|&w| w)
    }

    pub fn non_witness_orbits(&self) -> Vec<usize> {
        (0..self.witness.len())
            .filter(|&i| !self.witness[i])
            .collect()
    }

    #[inline]
    pub fn witnesses(&self, mask: u128) -> bool {
        self.witness[self.idx.orbit_id(mask) as usize]
    }
}

/// Settle every r-set orbit; Ok(Err(reason)) when some orbit stays unknown.
pub fn level_info(
    g: &PermGroup,
    r: usize,
    opts: &EtOptions,
) -> Result<std::result::Result<LevelInfo, String>> {
    let idx = KSetOrbitIndex::new(g, r)?;
    idx.num_orbits()?;
    if r == 1 {
        let w = vec![true; idx.reps().len()];
        return Ok(Ok(LevelInfo { r, idx, witness: w }));
    }
    let an = analyze(
        g,
        r,
        &EtOptions {
            goal: Goal::Full,
            force: true,
            ..opts.clone()
        },
    )?;
    let mut witness = Vec::new();
    for s in &an.statuses {
        match s {
            OrbitStatus::Witness(_) => witness.push(true),
            OrbitStatus::Refuted(_) | OrbitStatus::Excluded(_) => witness.push(false),
            OrbitStatus::Unknown(w) => return Ok(Err(format!("{}-set orbits: {}", r, w))),
            OrbitStatus::Skipped => return Ok(Err(format!("{}-set orbits not settled", r))),
        }
    }
    Ok(Ok(LevelInfo { r, idx, witness }))
}
