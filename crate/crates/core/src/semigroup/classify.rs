//! Rule-based decision of whether ⟨G, t⟩ is regular for every t with image B.

use serde::Serialize;

use super::certificate::{Factor, NonRegularityCertificate};
use super::exact::{exact_regularity, ExactOutcome};
use super::levels::{level_info, LevelInfo};
use super::reg1::{reg1_find_nonregular, reg1_partition_condition, Reg1Condition, Reg1Search};
use super::transformation::Transformation;
use crate::error::Result;
use crate::et::decide::{candidate_status, EtOptions, OrbitStatus};
use crate::et::search::SearchLimits;
use crate::perm::{PermGroup, PointSet, SetPartition};

/// Node budget for the construction search before falling through to the exact search.
pub const PART1_NODE_CAP: u64 = 2_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Regularity {
    Regular,
    NotRegular,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    /// B fails to witness |B|-et, so t itself is not regular.
    NotWitness,
    /// |B| <= 3 with B a witness.
    SmallRank,
    Intransitive,
    /// The group is (|B|-1)-ut.
    LowerUt,
    Reg1Part2,
    Reg1Part1Counterexample,
    BruteForce,
}

impl Rule {
    pub fn label(&self) -> &'static str {
        match self {
            Rule::NotWitness => "not-a-witness",
            Rule::SmallRank => "k<=3 theorem",
            Rule::Intransitive => "intransitive",
            Rule::LowerUt => "(k-1)-ut",
            Rule::Reg1Part2 => "reg1-part2",
            Rule::Reg1Part1Counterexample => "reg1-part1-counterexample",
            Rule::BruteForce => "brute-force",
        }
    }
}

#[derive(Debug)]
pub struct RegularityReport {
    pub group: String,
    pub image_set: PointSet,
    pub k: usize,
    pub decision: Regularity,
    pub rule: Option<Rule>,
    /// Human-readable support for the verdict, or the reason for Unknown.
    pub detail: String,
    /// The refuting partition when B is not a witness.
    pub partition: Option<SetPartition>,
    pub certificate: Option<Box<NonRegularityCertificate>>,
    pub nodes: u64,
}

impl RegularityReport {
    fn new(g: &PermGroup, b: &PointSet) -> Self {
        RegularityReport {
            group: g.display_name(),
            image_set: b.clone(),
            k: b.len(),
            decision: Regularity::Unknown,
            rule: None,
            detail: String::new(),
            partition: None,
            certificate: None,
            nodes: 0,
        }
    }

    fn decide(mut self, d: Regularity, rule: Rule, detail: impl Into<String>) -> Self {
        self.decision = d;
        self.rule = Some(rule);
        self.detail = detail.into();
        self
    }

    fn unknown(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }
}

/// The map with kernel `p` sending its blocks, in order, onto the points of B.
pub fn map_onto(p: &SetPartition, b: &PointSet) -> Result<Transformation> {
    Transformation::from_kernel(p, b.points())
}

pub fn classify_regularity(
    g: &PermGroup,
    b: &PointSet,
    opts: &EtOptions,
) -> Result<RegularityReport> {
    let n = g.degree();
    let k = b.len();
    b.check_degree(n)?;
    let rep = RegularityReport::new(g, b);
    if k == 0 || k > n {
        return Err(crate::Error::InvalidArgument(format!(
            "image set of size {} on {} points",
            k, n
        )));
    }
    if k == 1 {
        return Ok(rep.decide(Regularity::Regular, Rule::SmallRank, "constant maps are idempotent"));
    }
    if k == n {
        return Ok(rep.decide(Regularity::Regular, Rule::SmallRank, "t is a permutation"));
    }
    let limits = SearchLimits {
        max_nodes: opts.max_nodes,
        deadline: opts.timeout.map(|t| std::time::Instant::now() + t),
    };
    match candidate_status(g, b, opts)? {
        OrbitStatus::Refuted(r) => {
            let t = map_onto(&r.partition, b)?;
            let cert = NonRegularityCertificate::for_product(g, &t, vec![Factor::Map]);
            let mut rep = rep.decide(
                Regularity::NotRegular,
                Rule::NotWitness,
                "no image of B is a section of the kernel of t",
            );
            rep.partition = Some(r.partition);
            rep.certificate = cert.map(Box::new);
            return Ok(rep);
        }
        OrbitStatus::Witness(_) => {}
        OrbitStatus::Unknown(w) => return Ok(rep.unknown(format!("witness check: {}", w))),
        other => return Ok(rep.unknown(format!("witness check: {:?}", other))),
    }
    // the small-rank theorems carry degree hypotheses; below them the later rules decide
    if (k == 2 && n >= 4) || (k == 3 && n >= 6) {
        return Ok(rep.decide(Regularity::Regular, Rule::SmallRank, "B witnesses k-et"));
    }
    if !g.is_transitive() {
        return Ok(rep.decide(Regularity::Regular, Rule::Intransitive, "group is intransitive"));
    }
    // levels k-1, k-2, ... until one is ut; ut passes down to lower levels
    let mut levels: Vec<LevelInfo> = Vec::new();
    for r in (2..k).rev() {
        match level_info(g, r, opts)? {
            Ok(l) => {
                let ut = l.is_ut();
                levels.push(l);
                if ut {
                    break;
                }
            }
            Err(w) => return Ok(rep.unknown(w)),
        }
    }
    if levels.first().map_or(true, |l| l.is_ut()) {
        return Ok(rep.decide(
            Regularity::Regular,
            Rule::LowerUt,
            format!("group is {}-ut", k - 1),
        ));
    }
    let mut nodes = 0;
    let lower = &levels[0];
    let below_ut = levels.len() == 1 || levels[1].is_ut();
    if below_ut {
        match reg1_partition_condition(g, b, lower, &limits)? {
            Reg1Condition::Holds { nodes: m } => {
                let mut rep = rep.decide(
                    Regularity::Regular,
                    Rule::Reg1Part2,
                    format!("partition condition holds and the group is {}-ut", k - 2),
                );
                rep.nodes = m;
                return Ok(rep);
            }
            Reg1Condition::Unknown(w) => return Ok(rep.unknown(w)),
            Reg1Condition::Fails(_) | Reg1Condition::Precondition(_) => {}
        }
    }
    let part1_limits = SearchLimits {
        max_nodes: limits.max_nodes.min(PART1_NODE_CAP),
        deadline: limits.deadline,
    };
    match reg1_find_nonregular(g, b, lower, &part1_limits)? {
        Reg1Search::Found(c) => {
            let mut rep = rep.decide(
                Regularity::NotRegular,
                Rule::Reg1Part1Counterexample,
                format!("t·t has rank {} and is not regular", c.s.rank()),
            );
            rep.certificate = Some(c);
            return Ok(rep);
        }
        // an inconclusive construction search leaves the exact search to decide
        Reg1Search::Unknown(_) | Reg1Search::NotFound(_) => {}
    }
    let mut rep = match exact_regularity(g, b, &levels, &limits)? {
        ExactOutcome::Regular(st) => {
            nodes += st.nodes;
            rep.decide(
                Regularity::Regular,
                Rule::BruteForce,
                format!(
                    "every kernel searched ({} nodes, {} needing element enumeration)",
                    st.nodes, st.enumerated
                ),
            )
        }
        ExactOutcome::NotRegular(c, st) => {
            nodes += st.nodes;
            let mut rep = rep.decide(
                Regularity::NotRegular,
                Rule::BruteForce,
                format!("element of rank {} is not regular", c.s.rank()),
            );
            rep.certificate = Some(c);
            rep
        }
        ExactOutcome::Unknown(w) => rep.unknown(w),
    };
    rep.nodes = nodes;
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog::catalog;

    fn run(key: &str, b: &[usize]) -> RegularityReport {
        let g = catalog(key).unwrap();
        let b = PointSet::new(b.to_vec()).unwrap();
        classify_regularity(&g, &b, &EtOptions::default()).unwrap()
    }

    #[test]
    fn symmetric_groups_are_regular() {
        let r = run("S,9", &[0, 1, 2, 3]);
        assert_eq!(r.decision, Regularity::Regular);
        assert_eq!(r.rule, Some(Rule::LowerUt));
        let r = run("S,9", &[0, 4]);
        assert_eq!(r.rule, Some(Rule::SmallRank));
    }

    #[test]
    fn non_witness_gives_a_certificate() {
        let g = PermGroup::cyclic(8);
        // {1,3} (0-based 0,2) lies in an orbit of a disconnected orbital graph
        let b = PointSet::new(vec![0, 2]).unwrap();
        let r = classify_regularity(&g, &b, &EtOptions::default()).unwrap();
        assert_eq!(r.decision, Regularity::NotRegular);
        assert_eq!(r.rule, Some(Rule::NotWitness));
        let c = r.certificate.unwrap();
        assert!(c.verify(&g).is_ok());
        assert_eq!(c.s.rank(), 2);
    }

    #[test]
    fn intransitive_groups_are_regular() {
        let g = catalog("Fix:PSL,2,11").unwrap();
        let an = crate::et::analyze(&g, 4, &EtOptions::default()).unwrap();
        let b = an.witnesses()[0].clone();
        let r = classify_regularity(&g, &b, &EtOptions::default()).unwrap();
        assert_eq!(r.decision, Regularity::Regular);
        assert_eq!(r.rule, Some(Rule::Intransitive));
    }

    #[test]
    fn psl33_is_not_regular_at_four() {
        let g = catalog("PSL,3,3").unwrap();
        let an = crate::et::analyze(&g, 4, &EtOptions::default()).unwrap();
        let b = an.witnesses()[0].clone();
        let r = classify_regularity(&g, &b, &EtOptions::default()).unwrap();
        assert_eq!(r.decision, Regularity::NotRegular);
        assert!(r.certificate.unwrap().verify(&g).is_ok());
    }
}
