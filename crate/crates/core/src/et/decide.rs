use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::bounds::{order_bound, BoundReport, BoundVariant};
use super::search::{singleton_seeds, PartitionSearch, PointOrder, SearchLimits, SearchOutcome};
use super::section::SetOrbitTree;
use crate::error::{Error, Result};
use crate::perm::pointset::ksubsets;
use crate::perm::{
    points_of, KSetOrbitIndex, PermGroup, Permutation, Point, PointSet, SetPartition,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Goal {
    /// Stop after the first witness.
    Et,
    /// Stop after the first non-witness.
    Ut,
    /// Settle every orbit.
    Full,
}

#[derive(Clone, Debug)]
pub struct EtOptions {
    pub goal: Goal,
    pub order: PointOrder,
    pub max_nodes: u64,
    pub timeout: Option<Duration>,
    /// Allow k > n/2.
    pub force: bool,
    pub dense_limit: u64,
}

impl Default for EtOptions {
    fn default() -> Self {
        EtOptions {
            goal: Goal::Et,
            order: PointOrder::FailFirst,
            max_nodes: SearchLimits::default().max_nodes,
            timeout: None,
            force: false,
            dense_limit: crate::perm::ksets::DENSE_LIMIT,
        }
    }
}

impl EtOptions {
    pub fn with_goal(goal: Goal) -> Self {
        EtOptions {
            goal,
            ..Default::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decision {
    Yes,
    No,
    Unknown(String),
}

impl Decision {
    pub fn is_yes(&self) -> bool {
        matches!(self, Decision::Yes)
    }
    pub fn is_no(&self) -> bool {
        matches!(self, Decision::No)
    }
    pub fn label(&self) -> &'static str {
        match self {
            Decision::Yes => "yes",
            Decision::No => "no",
            Decision::Unknown(_) => "unknown",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessReason {
    /// One orbit on k-sets.
    Homogeneous,
    /// k = 2 and the orbit, as a graph, is connected.
    ConnectedOrbitGraph,
    /// The set contains the fixed point `0` and the group is (k-1)-homogeneous on the other points.
    FixedPointExtension(Point),
    /// Exhaustive partition search found no refutation.
    Search { nodes: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RefutationSource {
    /// The set misses the (k-1)-set orbit of this representative.
    WeakEt(PointSet),
    /// k = 2: one component of the orbit graph against the rest.
    DisconnectedOrbitGraph,
    Search,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtRefutation {
    pub candidate: PointSet,
    pub partition: SetPartition,
    pub source: RefutationSource,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrbitStatus {
    Witness(WitnessReason),
    Refuted(EtRefutation),
    /// Not a witness for a reason that has no partition attached (the order bound).
    Excluded(String),
    Unknown(String),
    /// Not examined because the goal was already settled.
    Skipped,
}

#[derive(Clone, Debug)]
pub struct EtAnalysis {
    pub degree: usize,
    pub k: usize,
    pub group_order: BigUint,
    pub reps: Vec<PointSet>,
    pub sizes: Vec<u64>,
    pub statuses: Vec<OrbitStatus>,
    pub bound: BoundReport,
    pub nodes: u64,
}

impl EtAnalysis {
    /// Does some k-set witness k-et?
    pub fn et(&self) -> Decision {
        if self
            .statuses
            .iter()
            .any(|s| matches!(s, OrbitStatus::Witness(_)))
        {
            return Decision::Yes;
        }
        self.first_open().unwrap_or(Decision::No)
    }

    /// Does every k-set witness k-et?
    pub fn ut(&self) -> Decision {
        if !self.bound.pass {
            return Decision::No;
        }
        if self
            .statuses
            .iter()
            .any(|s| matches!(s, OrbitStatus::Refuted(_) | OrbitStatus::Excluded(_)))
        {
            return Decision::No;
        }
        self.first_open().unwrap_or(Decision::Yes)
    }

    fn first_open(&self) -> Option<Decision> {
        self.statuses.iter().find_map(|s| match s {
            OrbitStatus::Unknown(w) => Some(Decision::Unknown(w.clone())),
            OrbitStatus::Skipped => Some(Decision::Unknown("orbit not examined".into())),
            _ => None,
        })
    }

    pub fn witnesses(&self) -> Vec<&PointSet> {
        self.reps
            .iter()
            .zip(&self.statuses)
            .filter(|(_, s)| matches!(s, OrbitStatus::Witness(_)))
            .map(|(r, _)| r)
            .collect()
    }

    pub fn refutations(&self) -> Vec<&EtRefutation> {
        self.statuses
            .iter()
            .filter_map(|s| match s {
                OrbitStatus::Refuted(r) => Some(r),
                _ => None,
            })
            .collect()
    }

    pub fn status_of(&self, set: u128) -> Option<&OrbitStatus> {
        self.reps
            .iter()
            .position(|r| r.mask() == set)
            .map(|i| &self.statuses[i])
    }
}

pub fn validate_k(n: usize, k: usize, force: bool) -> Result<()> {
    if n > crate::perm::pointset::MASK_DEGREE {
        return Err(Error::ResourceLimit(format!(
            "degree {} exceeds {}",
            n,
            crate::perm::pointset::MASK_DEGREE
        )));
    }
    if k < 2 || k > n {
        return Err(Error::InvalidArgument(format!(
            "k must satisfy 2 <= k <= n (k = {}, n = {})",
            k, n
        )));
    }
    if 2 * k > n && !force {
        return Err(Error::InvalidArgument(format!(
            "k = {} exceeds n/2 = {}; pass force to override",
            k,
            n / 2
        )));
    }
    Ok(())
}

fn components(n: usize, edges: impl Iterator<Item = u128>) -> Vec<u128> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let nx = p[y];
            p[y] = r;
            y = nx;
        }
        r
    }
    for e in edges {
        let a = e.trailing_zeros() as usize;
        let b = 127 - e.leading_zeros() as usize;
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    let mut comps: Vec<u128> = Vec::new();
    let mut root_of = vec![usize::MAX; n];
    for x in 0..n {
        let r = find(&mut parent, x);
        if root_of[r] == usize::MAX {
            root_of[r] = comps.len();
            comps.push(0);
        }
        comps[root_of[r]] |= 1u128 << x;
    }
    comps
}

fn weak_partition(n: usize, a: u128) -> SetPartition {
    let mut blocks: Vec<Vec<Point>> = points_of(a).into_iter().map(|x| vec![x]).collect();
    blocks.push((0..n).filter(|&x| a >> x & 1 == 0).collect());
    SetPartition::new(n, blocks).expect("valid partition")
}

/// For each k-set orbit representative, the id of one (k-1)-set orbit it misses.
pub fn weak_misses(idx: &KSetOrbitIndex, lower: &KSetOrbitIndex) -> Vec<Option<usize>> {
    let r = lower.reps().len();
    idx.reps()
        .iter()
        .map(|&b| {
            let mut seen = vec![false; r];
            let mut m = b;
            while m != 0 {
                let bit = m & m.wrapping_neg();
                m &= m - 1;
                seen[lower.orbit_id(b & !bit) as usize] = true;
            }
            seen.iter().position(|s| !s)
        })
        .collect()
}

/// Orbit representatives on k-sets that contain a member of every (k-1)-set orbit.
pub fn weak_ket(g: &PermGroup, k: usize) -> Result<Vec<PointSet>> {
    validate_k(g.degree(), k, true)?;
    let idx = KSetOrbitIndex::new(g, k)?;
    let lower = KSetOrbitIndex::new(g, k - 1)?;
    idx.num_orbits()?;
    lower.num_orbits()?;
    Ok(weak_misses(&idx, &lower)
        .into_iter()
        .zip(idx.reps())
        .filter(|(miss, _)| miss.is_none())
        .map(|(_, &b)| PointSet::from_mask(b))
        .collect())
}

/// Classify every orbit of k-sets as witness / non-witness of k-et, as far as the goal requires.
pub fn analyze(g: &PermGroup, k: usize, opts: &EtOptions) -> Result<EtAnalysis> {
    let n = g.degree();
    validate_k(n, k, opts.force)?;
    let start = Instant::now();
    let group_order = g.order();
    let bound = order_bound(n, k, &group_order, BoundVariant::Et);
    let idx = KSetOrbitIndex::with_limit(g, k, opts.dense_limit)?;
    if !bound.pass && !idx.is_dense() {
        // the bound alone decides; the orbits are too many to list
        return Ok(EtAnalysis {
            degree: n,
            k,
            group_order,
            reps: Vec::new(),
            sizes: Vec::new(),
            statuses: Vec::new(),
            bound,
            nodes: 0,
        });
    }
    idx.num_orbits()?;
    let reps: Vec<u128> = idx.reps().to_vec();
    let mut an = EtAnalysis {
        degree: n,
        k,
        group_order,
        reps: reps.iter().map(|&r| PointSet::from_mask(r)).collect(),
        sizes: idx.sizes().to_vec(),
        statuses: vec![OrbitStatus::Skipped; reps.len()],
        bound: bound.clone(),
        nodes: 0,
    };
    if !bound.pass {
        for s in an.statuses.iter_mut() {
            *s = OrbitStatus::Excluded("group order below the k-et bound".into());
        }
        return Ok(an);
    }
    if reps.len() == 1 {
        an.statuses[0] = OrbitStatus::Witness(WitnessReason::Homogeneous);
        return Ok(an);
    }
    if k == 2 {
        for (i, &b) in reps.iter().enumerate() {
            let comps = components(n, idx.orbit_members(i).into_iter());
            an.statuses[i] = if comps.len() == 1 {
                OrbitStatus::Witness(WitnessReason::ConnectedOrbitGraph)
            } else {
                let c = comps[0];
                let rest: Vec<Point> = (0..n).filter(|&x| c >> x & 1 == 0).collect();
                OrbitStatus::Refuted(EtRefutation {
                    candidate: PointSet::from_mask(b),
                    partition: SetPartition::new(n, vec![points_of(c), rest]).unwrap(),
                    source: RefutationSource::DisconnectedOrbitGraph,
                })
            };
        }
        return Ok(an);
    }

    let lower = KSetOrbitIndex::with_limit(g, k - 1, opts.dense_limit)?;
    lower.num_orbits()?;
    // a fixed point with a (k-1)-homogeneous action on the rest makes every k-set through it a witness
    for x in g.fixed_points() {
        let others = ((1u128 << n) - 1) & !(1u128 << x);
        let mut ids = ksubsets(n - 1, k - 1).map(|m| lower.orbit_id(spread(m, others)));
        let first = ids.next();
        if first.is_some() && ids.all(|i| Some(i) == first) {
            for (i, &b) in reps.iter().enumerate() {
                if b >> x & 1 == 1 {
                    an.statuses[i] = OrbitStatus::Witness(WitnessReason::FixedPointExtension(x));
                }
            }
            break;
        }
    }
    let misses = weak_misses(&idx, &lower);
    let mut candidates = Vec::new();
    for (i, &b) in reps.iter().enumerate() {
        if matches!(an.statuses[i], OrbitStatus::Witness(_)) {
            continue;
        }
        match misses[i] {
            Some(a) => {
                let a = lower.reps()[a];
                an.statuses[i] = OrbitStatus::Refuted(EtRefutation {
                    candidate: PointSet::from_mask(b),
                    partition: weak_partition(n, a),
                    source: RefutationSource::WeakEt(PointSet::from_mask(a)),
                });
            }
            None => candidates.push(i),
        }
    }
    // larger orbits first: they are likelier witnesses
    candidates.sort_by(|&a, &b| an.sizes[b].cmp(&an.sizes[a]).then(a.cmp(&b)));
    let limits = SearchLimits {
        max_nodes: opts.max_nodes,
        deadline: opts.timeout.map(|t| start + t),
    };
    for i in candidates {
        let settled = match opts.goal {
            Goal::Et => an
                .statuses
                .iter()
                .any(|s| matches!(s, OrbitStatus::Witness(_))),
            Goal::Ut => an
                .statuses
                .iter()
                .any(|s| matches!(s, OrbitStatus::Refuted(_) | OrbitStatus::Excluded(_))),
            Goal::Full => false,
        };
        if settled {
            break;
        }
        let b = reps[i];
        let search = PartitionSearch::new(&idx, b, opts.order, limits.clone())?;
        let seeds = singleton_seeds(&idx, b)?;
        let out = crate::runtime::install(|| search.run_seeds(&seeds));
        an.nodes += search.nodes();
        an.statuses[i] = match out {
            SearchOutcome::Exhausted => OrbitStatus::Witness(WitnessReason::Search {
                nodes: search.nodes(),
            }),
            SearchOutcome::Refuted(blocks) => OrbitStatus::Refuted(EtRefutation {
                candidate: PointSet::from_mask(b),
                partition: SetPartition::new(n, blocks)?,
                source: RefutationSource::Search,
            }),
            SearchOutcome::Aborted(why) => OrbitStatus::Unknown(why),
        };
    }
    Ok(an)
}

/// Place the low bits of `m` onto the set bits of `support`, in order.
fn spread(mut m: u128, support: u128) -> u128 {
    let mut out = 0;
    let mut s = support;
    while m != 0 && s != 0 {
        let bit = s & s.wrapping_neg();
        s &= s - 1;
        if m & 1 == 1 {
            out |= bit;
        }
        m >>= 1;
    }
    out
}

pub fn ket_decide(g: &PermGroup, k: usize, opts: &EtOptions) -> Result<EtAnalysis> {
    analyze(
        g,
        k,
        &EtOptions {
            goal: Goal::Et,
            ..opts.clone()
        },
    )
}

pub fn kut_decide(g: &PermGroup, k: usize, opts: &EtOptions) -> Result<EtAnalysis> {
    analyze(
        g,
        k,
        &EtOptions {
            goal: Goal::Ut,
            ..opts.clone()
        },
    )
}

/// Exhaustive check that no image of `candidate` is a section of `partition`.
pub fn refutation_holds(g: &PermGroup, candidate: &PointSet, partition: &SetPartition) -> bool {
    if partition.num_blocks() != candidate.len() {
        return false;
    }
    let tree = SetOrbitTree::new(g, candidate.mask());
    !partition.any_section(|m| tree.contains(m))
}

/// A uniformly random assignment of points to k nonempty labelled blocks.
pub fn random_partition<R: Rng>(n: usize, k: usize, rng: &mut R) -> SetPartition {
    let mut pts: Vec<Point> = (0..n).collect();
    pts.shuffle(rng);
    let mut blocks: Vec<Vec<Point>> = pts[..k].iter().map(|&x| vec![x]).collect();
    for &x in &pts[k..] {
        blocks[rng.gen_range(0..k)].push(x);
    }
    SetPartition::new(n, blocks).unwrap()
}

/// Random partitions paired with an element carrying the witness onto a section.
pub fn witness_samples(
    g: &PermGroup,
    witness: &PointSet,
    count: usize,
    seed: u64,
) -> Vec<(SetPartition, Option<Permutation>)> {
    let tree = SetOrbitTree::new(g, witness.mask());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let p = random_partition(g.degree(), witness.len(), &mut rng);
            let h = tree.section_of(p.blocks());
            (p, h)
        })
        .collect()
}

/// Naive oracle: witness status of every orbit by running through all k-partitions.
pub fn brute_force_witnesses(g: &PermGroup, k: usize) -> Result<Vec<(PointSet, bool)>> {
    let n = g.degree();
    let idx = KSetOrbitIndex::new(g, k)?;
    let r = idx.num_orbits()?;
    let mut alive = vec![true; r];
    let mut assign = vec![0usize; n];
    fn rec(
        x: usize,
        used: usize,
        n: usize,
        k: usize,
        assign: &mut [usize],
        idx: &KSetOrbitIndex,
        alive: &mut [bool],
    ) {
        if x == n {
            if used < k {
                return;
            }
            let blocks: Vec<Vec<Point>> = (0..k)
                .map(|b| (0..n).filter(|&p| assign[p] == b).collect())
                .collect();
            let mut present = vec![false; alive.len()];
            super::section::any_choice(&blocks, |m| {
                present[idx.orbit_id(m) as usize] = true;
                false
            });
            for (a, p) in alive.iter_mut().zip(present) {
                *a &= p;
            }
            return;
        }
        if n - x < k - used {
            return;
        }
        for b in 0..(used + 1).min(k) {
            assign[x] = b;
            rec(x + 1, used.max(b + 1), n, k, assign, idx, alive);
        }
    }
    rec(0, 0, n, k, &mut assign, &idx, &mut alive);
    Ok(idx
        .reps()
        .iter()
        .zip(alive)
        .map(|(&b, a)| (PointSet::from_mask(b), a))
        .collect())
}

/// Witness status of one k-set, settled without the order bound so that a
/// non-witness always comes with a partition.
pub fn candidate_status(g: &PermGroup, b: &PointSet, opts: &EtOptions) -> Result<OrbitStatus> {
    let n = g.degree();
    let k = b.len();
    b.check_degree(n)?;
    validate_k(n, k, true)?;
    let idx = KSetOrbitIndex::with_limit(g, k, opts.dense_limit)?;
    idx.num_orbits()?;
    let bm = b.mask();
    if idx.reps().len() == 1 {
        return Ok(OrbitStatus::Witness(WitnessReason::Homogeneous));
    }
    if k == 2 {
        let id = idx.orbit_id(bm) as usize;
        let comps = components(n, idx.orbit_members(id).into_iter());
        if comps.len() == 1 {
            return Ok(OrbitStatus::Witness(WitnessReason::ConnectedOrbitGraph));
        }
        let c = comps[0];
        let rest: Vec<Point> = (0..n).filter(|&x| c >> x & 1 == 0).collect();
        return Ok(OrbitStatus::Refuted(EtRefutation {
            candidate: b.clone(),
            partition: SetPartition::new(n, vec![points_of(c), rest])?,
            source: RefutationSource::DisconnectedOrbitGraph,
        }));
    }
    let lower = KSetOrbitIndex::with_limit(g, k - 1, opts.dense_limit)?;
    lower.num_orbits()?;
    let mut seen = vec![false; lower.reps().len()];
    for x in b.points() {
        seen[lower.orbit_id(bm & !(1u128 << x)) as usize] = true;
    }
    if let Some(a) = seen.iter().position(|s| !s) {
        let a = lower.reps()[a];
        return Ok(OrbitStatus::Refuted(EtRefutation {
            candidate: b.clone(),
            partition: weak_partition(n, a),
            source: RefutationSource::WeakEt(PointSet::from_mask(a)),
        }));
    }
    let limits = SearchLimits {
        max_nodes: opts.max_nodes,
        deadline: opts.timeout.map(|t| Instant::now() + t),
    };
    let search = PartitionSearch::new(&idx, bm, opts.order, limits)?;
    let seeds = singleton_seeds(&idx, bm)?;
    Ok(match crate::runtime::install(|| search.run_seeds(&seeds)) {
        SearchOutcome::Exhausted => OrbitStatus::Witness(WitnessReason::Search {
            nodes: search.nodes(),
        }),
        SearchOutcome::Refuted(blocks) => OrbitStatus::Refuted(EtRefutation {
            candidate: b.clone(),
            partition: SetPartition::new(n, blocks)?,
            source: RefutationSource::Search,
        }),
        SearchOutcome::Aborted(why) => OrbitStatus::Unknown(why),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_brute_force_on_small_groups() {
        let groups = vec![
            PermGroup::cyclic(7),
            PermGroup::dihedral(8),
            PermGroup::dihedral(9),
            crate::algebra::catalog::catalog("PSL,2,7").unwrap(),
            crate::algebra::catalog::catalog("Fix:PGL,2,5").unwrap(),
            crate::algebra::catalog::catalog("AGL,1,8").unwrap(),
        ];
        for g in groups {
            for k in 2..=4.min(g.degree() / 2) {
                let oracle = brute_force_witnesses(&g, k).unwrap();
                for order in [PointOrder::FailFirst, PointOrder::Ascending] {
                    let opts = EtOptions {
                        goal: Goal::Full,
                        order,
                        ..Default::default()
                    };
                    let an = analyze(&g, k, &opts).unwrap();
                    for ((rep, w), st) in oracle.iter().zip(&an.statuses) {
                        assert_eq!(
                            w,
                            &matches!(st, OrbitStatus::Witness(_)),
                            "{} k={} {:?} {:?}",
                            g.display_name(),
                            k,
                            rep,
                            st
                        );
                        if let OrbitStatus::Refuted(r) = st {
                            assert!(refutation_holds(&g, &r.candidate, &r.partition));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn intransitive_fixed_point_extension() {
        let g = crate::algebra::catalog::catalog("Fix:PGL,2,5").unwrap();
        let an = analyze(&g, 3, &EtOptions::with_goal(Goal::Full)).unwrap();
        let fixed = g.fixed_points()[0];
        for (rep, st) in an.reps.iter().zip(&an.statuses) {
            assert_eq!(rep.contains(fixed), matches!(st, OrbitStatus::Witness(_)));
        }
    }

    #[test]
    fn weak_et_on_symmetric_group_accepts_everything() {
        let g = PermGroup::symmetric(8);
        assert_eq!(weak_ket(&g, 4).unwrap().len(), 1);
    }

    #[test]
    fn samples_carry_witness_to_a_section() {
        let g = PermGroup::symmetric(6);
        let w = PointSet::new(vec![0, 1, 2]).unwrap();
        for (p, h) in witness_samples(&g, &w, 20, 7) {
            assert!(p.is_section(w.image(&h.unwrap()).points()));
        }
    }
}
