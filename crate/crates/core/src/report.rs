//! JSON reports and self-contained certificates. Points are 1-based throughout.
//! Certificates carry their group, so `verify_certificate` needs nothing else and
//! only uses membership tests, set-orbit walks, section checks and composition.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::et::bounds::{order_bound, BoundReport, BoundVariant};
use crate::et::decide::{witness_samples, EtAnalysis, OrbitStatus};
use crate::io::format::emit_group;
use crate::perm::pointset::binomial_big;
use crate::perm::{PermGroup, Permutation, PointSet, SetPartition};
use crate::semigroup::certificate::{Factor, NonRegularityCertificate};
use crate::semigroup::Transformation;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
/// Random partitions checked against each witness in a certificate.
pub const SAMPLES: usize = 8;
const SAMPLE_SEED: u64 = 0x5eed;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupData {
    pub degree: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub generators: Vec<Vec<usize>>,
}

impl GroupData {
    pub fn of(g: &PermGroup) -> Self {
        GroupData {
            degree: g.degree(),
            name: g.name().map(str::to_string),
            generators: g.generators().iter().map(perm_out).collect(),
        }
    }

    pub fn group(&self) -> Result<PermGroup, String> {
        let gens = self
            .generators
            .iter()
            .map(|v| perm_in(self.degree, v))
            .collect::<Result<Vec<_>, _>>()?;
        PermGroup::new(self.degree, gens).map_err(|e| e.to_string())
    }
}

fn perm_out(p: &Permutation) -> Vec<usize> {
    p.images().iter().map(|x| x + 1).collect()
}

fn perm_in(n: usize, v: &[usize]) -> Result<Permutation, String> {
    if v.len() != n || v.iter().any(|&x| x == 0 || x > n) {
        return Err(format!("bad permutation of degree {}", n));
    }
    Permutation::from_images(v.iter().map(|x| x - 1).collect()).map_err(|e| e.to_string())
}

fn set_out(s: &PointSet) -> Vec<usize> {
    s.to_one_based()
}

fn set_in(n: usize, v: &[usize]) -> Result<PointSet, String> {
    if v.iter().any(|&x| x == 0 || x > n) {
        return Err("point out of range".into());
    }
    PointSet::new(v.iter().map(|x| x - 1).collect()).map_err(|e| e.to_string())
}

fn mask_out(m: u128) -> Vec<usize> {
    set_out(&PointSet::from_mask(m))
}

fn partition_out(p: &SetPartition) -> Vec<Vec<usize>> {
    p.blocks()
        .iter()
        .map(|b| b.iter().map(|x| x + 1).collect())
        .collect()
}

fn partition_in(n: usize, v: &[Vec<usize>]) -> Result<SetPartition, String> {
    let blocks = v
        .iter()
        .map(|b| {
            if b.iter().any(|&x| x == 0 || x > n) {
                Err("point out of range".to_string())
            } else {
                Ok(b.iter().map(|x| x - 1).collect())
            }
        })
        .collect::<Result<Vec<Vec<usize>>, String>>()?;
    SetPartition::new(n, blocks).map_err(|e| e.to_string())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sample {
    pub partition: Vec<Vec<usize>>,
    /// Element carrying the witness onto a section of the partition.
    pub element: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessData {
    pub witness: Vec<usize>,
    pub samples: Vec<Sample>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefutationData {
    pub candidate: Vec<usize>,
    /// No image of the candidate is a section of this partition.
    pub partition: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundData {
    pub variant: BoundVariant,
    pub order: String,
    pub numerator: String,
    pub denominator: u64,
    pub pass: bool,
}

impl BoundData {
    pub fn of(b: &BoundReport) -> Self {
        BoundData {
            variant: b.variant,
            order: b.order.clone(),
            numerator: b.numerator.clone(),
            denominator: b.denominator,
            pass: b.pass,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FactorData {
    Map,
    Perm(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonRegularData {
    pub t: Vec<usize>,
    /// s is the product of these factors, applied left to right.
    pub factors: Vec<FactorData>,
    pub s: Vec<usize>,
    /// Every image reachable from Im(s) without losing rank; none is a transversal of ker(s).
    pub reach: Vec<Vec<usize>>,
}

impl NonRegularData {
    pub fn of(c: &NonRegularityCertificate) -> Self {
        NonRegularData {
            t: c.t.to_one_based(),
            factors: c
                .factors
                .iter()
                .map(|f| match f {
                    Factor::Map => FactorData::Map,
                    Factor::Perm(p) => FactorData::Perm(perm_out(p)),
                })
                .collect(),
            s: c.s.to_one_based(),
            reach: c.reach.iter().map(|&m| mask_out(m)).collect(),
        }
    }

    pub fn certificate(&self, n: usize) -> Result<NonRegularityCertificate, String> {
        let map = |v: &[usize]| -> Result<Transformation, String> {
            if v.len() != n || v.iter().any(|&x| x == 0 || x > n) {
                return Err("bad transformation".into());
            }
            Transformation::new(v.iter().map(|x| x - 1).collect()).map_err(|e| e.to_string())
        };
        let factors = self
            .factors
            .iter()
            .map(|f| match f {
                FactorData::Map => Ok(Factor::Map),
                FactorData::Perm(p) => perm_in(n, p).map(Factor::Perm),
            })
            .collect::<Result<Vec<_>, String>>()?;
        let reach = self
            .reach
            .iter()
            .map(|v| set_in(n, v).map(|s| s.mask()))
            .collect::<Result<Vec<_>, String>>()?;
        Ok(NonRegularityCertificate {
            t: map(&self.t)?,
            factors,
            s: map(&self.s)?,
            reach,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    /// Some k-set witnesses k-et (checked on sample partitions).
    EtWitness {
        group: GroupData,
        k: usize,
        witness: WitnessData,
    },
    /// No k-set witnesses k-et: either the order bound fails, or every orbit is refuted.
    EtNone {
        group: GroupData,
        k: usize,
        bound: BoundData,
        refutations: Vec<RefutationData>,
    },
    /// Every k-set orbit witnesses k-et (checked on sample partitions).
    UtAll {
        group: GroupData,
        k: usize,
        witnesses: Vec<WitnessData>,
    },
    UtRefuted {
        group: GroupData,
        k: usize,
        bound: BoundData,
        refutation: Option<RefutationData>,
    },
    /// `sets` meet every (k-1)-set orbit in a (k-1)-subset. When empty, `misses`
    /// lists one set per k-set orbit with a (k-1)-set whose orbit it avoids.
    WeakEt {
        group: GroupData,
        k: usize,
        sets: Vec<Vec<usize>>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        misses: Vec<WeakMiss>,
    },
    Orbits {
        group: GroupData,
        k: usize,
        representatives: Vec<Vec<usize>>,
        sizes: Vec<u64>,
    },
    OrderBound {
        n: usize,
        k: usize,
        bound: BoundData,
    },
    NonRegular {
        group: GroupData,
        image_set: Vec<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        kernel_without_section: Option<Vec<Vec<usize>>>,
        element: NonRegularData,
    },
    /// The image set witnesses |B|-et; the regularity rule itself is recorded in the report.
    Regular {
        group: GroupData,
        image_set: Vec<usize>,
        rule: String,
        witness: WitnessData,
    },
    Table {
        entries: Vec<TableEntry>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeakMiss {
    pub set: Vec<usize>,
    pub avoided: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableEntry {
    pub key: String,
    pub name: String,
    pub degree: usize,
    pub order: String,
    pub transitive: bool,
    pub homogeneous: bool,
    pub verdict: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub aliases: Vec<String>,
    pub certificate: Option<Box<Certificate>>,
}

pub fn witness_data(g: &PermGroup, w: &PointSet) -> WitnessData {
    let samples = witness_samples(g, w, SAMPLES, SAMPLE_SEED)
        .into_iter()
        .map(|(p, h)| Sample {
            partition: partition_out(&p),
            element: perm_out(&h.expect("a witness meets every partition")),
        })
        .collect();
    WitnessData {
        witness: set_out(w),
        samples,
    }
}

fn refutation_data(cand: &PointSet, p: &SetPartition) -> RefutationData {
    RefutationData {
        candidate: set_out(cand),
        partition: partition_out(p),
    }
}

/// Certificate for the k-et verdict of an analysis; None while undecided.
pub fn et_certificate(g: &PermGroup, an: &EtAnalysis) -> Option<Certificate> {
    let group = GroupData::of(g);
    if let Some(w) = an.witnesses().first() {
        return Some(Certificate::EtWitness {
            group,
            k: an.k,
            witness: witness_data(g, w),
        });
    }
    if !an.et().is_no() {
        return None;
    }
    let refutations = if an.bound.pass {
        an.refutations()
            .iter()
            .map(|r| refutation_data(&r.candidate, &r.partition))
            .collect()
    } else {
        Vec::new()
    };
    Some(Certificate::EtNone {
        group,
        k: an.k,
        bound: BoundData::of(&an.bound),
        refutations,
    })
}

pub fn ut_certificate(g: &PermGroup, an: &EtAnalysis) -> Option<Certificate> {
    let group = GroupData::of(g);
    match an.ut() {
        crate::et::Decision::Yes => Some(Certificate::UtAll {
            group,
            k: an.k,
            witnesses: an.witnesses().iter().map(|w| witness_data(g, w)).collect(),
        }),
        crate::et::Decision::No => {
            let refutation = an.statuses.iter().find_map(|s| match s {
                OrbitStatus::Refuted(r) => Some(refutation_data(&r.candidate, &r.partition)),
                _ => None,
            });
            Some(Certificate::UtRefuted {
                group,
                k: an.k,
                bound: BoundData::of(&an.bound),
                refutation,
            })
        }
        crate::et::Decision::Unknown(_) => None,
    }
}

/// Weak k-et verdict with its certificate.
pub fn weak_certificate(g: &PermGroup, k: usize) -> crate::Result<(bool, Certificate)> {
    crate::et::decide::validate_k(g.degree(), k, true)?;
    if k < 2 {
        return Err(crate::Error::InvalidArgument("weak k-et needs k >= 2".into()));
    }
    let idx = crate::perm::KSetOrbitIndex::new(g, k)?;
    let lower = crate::perm::KSetOrbitIndex::new(g, k - 1)?;
    idx.num_orbits()?;
    lower.num_orbits()?;
    let misses = crate::et::decide::weak_misses(&idx, &lower);
    let sets: Vec<Vec<usize>> = misses
        .iter()
        .zip(idx.reps())
        .filter(|(m, _)| m.is_none())
        .map(|(_, &b)| mask_out(b))
        .collect();
    let yes = !sets.is_empty();
    let misses = if yes {
        Vec::new()
    } else {
        misses
            .iter()
            .zip(idx.reps())
            .map(|(m, &b)| WeakMiss {
                set: mask_out(b),
                avoided: mask_out(lower.reps()[m.expect("no weak witness")]),
            })
            .collect()
    };
    Ok((
        yes,
        Certificate::WeakEt {
            group: GroupData::of(g),
            k,
            sets,
            misses,
        },
    ))
}

pub fn sha256_hex(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

/// Digest of the canonical group text, so file and catalog inputs for the same
/// generators agree.
pub fn group_digest(g: &PermGroup) -> String {
    sha256_hex(&emit_group(g))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub version: String,
    pub command: String,
    pub input_sha256: String,
    pub verdict: String,
    pub rule: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub certificate: Option<Certificate>,
    #[serde(default)]
    pub details: serde_json::Value,
    pub elapsed_ms: u64,
    pub nodes: u64,
    pub deterministic: bool,
}

// ---- verification ----

fn check_refutation(g: &PermGroup, k: usize, r: &RefutationData) -> Result<u128, String> {
    let n = g.degree();
    let cand = set_in(n, &r.candidate)?;
    let p = partition_in(n, &r.partition)?;
    if cand.len() != k || p.num_blocks() != k {
        return Err("refutation has the wrong size".into());
    }
    let block_of = p.block_of();
    for m in g.set_orbit(cand.mask()) {
        let hit = crate::perm::points_of(m)
            .iter()
            .fold(0u64, |h, &x| h | 1 << block_of[x]);
        if hit.count_ones() as usize == k {
            return Err(format!(
                "{:?} is a section of the partition",
                mask_out(m)
            ));
        }
    }
    Ok(cand.mask())
}

fn check_witness(g: &PermGroup, k: usize, w: &WitnessData) -> Result<u128, String> {
    let n = g.degree();
    let b = set_in(n, &w.witness)?;
    if b.len() != k {
        return Err("witness has the wrong size".into());
    }
    for s in &w.samples {
        let p = partition_in(n, &s.partition)?;
        let h = perm_in(n, &s.element)?;
        if !g.contains(&h) {
            return Err("sample element is not in the group".into());
        }
        if !p.is_section(b.image(&h).points()) {
            return Err("sample image is not a section".into());
        }
    }
    Ok(b.mask())
}

/// The listed sets lie in distinct orbits that together cover all k-sets.
fn check_cover(g: &PermGroup, k: usize, sets: &[u128]) -> Result<(), String> {
    let mut seen = std::collections::HashSet::new();
    let mut total = BigUint::from(0u32);
    for &m in sets {
        if seen.contains(&m) {
            return Err("two listed sets share an orbit".into());
        }
        let orb = g.set_orbit(m);
        total += orb.len();
        seen.extend(orb);
    }
    if total != binomial_big(g.degree() as u64, k as u64) {
        return Err("listed orbits do not cover every k-set".into());
    }
    Ok(())
}

fn check_bound(n: usize, k: usize, order: &BigUint, b: &BoundData) -> Result<(), String> {
    let again = order_bound(n, k, order, b.variant);
    if again.order != b.order
        || again.numerator != b.numerator
        || again.denominator != b.denominator
        || again.pass != b.pass
    {
        return Err("order bound does not recompute".into());
    }
    Ok(())
}

fn orbit_ids(g: &PermGroup, k: usize) -> Result<crate::perm::KSetOrbitIndex, String> {
    crate::perm::KSetOrbitIndex::new(g, k).map_err(|e| e.to_string())
}

pub fn verify_certificate(c: &Certificate) -> Result<(), String> {
    match c {
        Certificate::EtWitness { group, k, witness } => {
            let g = group.group()?;
            check_witness(&g, *k, witness).map(|_| ())
        }
        Certificate::EtNone {
            group,
            k,
            bound,
            refutations,
        } => {
            let g = group.group()?;
            check_bound(g.degree(), *k, &g.order(), bound)?;
            if !bound.pass {
                return Ok(());
            }
            let mut sets = Vec::new();
            for r in refutations {
                sets.push(check_refutation(&g, *k, r)?);
            }
            check_cover(&g, *k, &sets)
        }
        Certificate::UtAll {
            group,
            k,
            witnesses,
        } => {
            let g = group.group()?;
            let mut sets = Vec::new();
            for w in witnesses {
                sets.push(check_witness(&g, *k, w)?);
            }
            check_cover(&g, *k, &sets)
        }
        Certificate::UtRefuted {
            group,
            k,
            bound,
            refutation,
        } => {
            let g = group.group()?;
            check_bound(g.degree(), *k, &g.order(), bound)?;
            match refutation {
                Some(r) => check_refutation(&g, *k, r).map(|_| ()),
                None if !bound.pass => Ok(()),
                None => Err("no refutation and the bound passes".into()),
            }
        }
        Certificate::WeakEt {
            group,
            k,
            sets,
            misses,
        } => {
            let g = group.group()?;
            let n = g.degree();
            if *k < 2 {
                return Err("weak et needs k >= 2".into());
            }
            if !sets.is_empty() {
                let lower = orbit_ids(&g, k - 1)?;
                let count = lower.num_orbits().map_err(|e| e.to_string())?;
                for s in sets {
                    let b = set_in(n, s)?;
                    if b.len() != *k {
                        return Err("set has the wrong size".into());
                    }
                    let hit: std::collections::HashSet<u32> = b
                        .points()
                        .iter()
                        .map(|&x| lower.orbit_id(b.mask() & !(1u128 << x)))
                        .collect();
                    if hit.len() != count {
                        return Err(format!("{:?} misses a (k-1)-set orbit", s));
                    }
                }
                return Ok(());
            }
            let mut reps = Vec::new();
            for m in misses {
                let b = set_in(n, &m.set)?;
                let a = set_in(n, &m.avoided)?;
                if b.len() != *k || a.len() != k - 1 {
                    return Err("miss has the wrong sizes".into());
                }
                let orbit: std::collections::HashSet<u128> = g.set_orbit(a.mask()).into_iter().collect();
                if b.points().iter().any(|&x| orbit.contains(&(b.mask() & !(1u128 << x)))) {
                    return Err(format!("{:?} meets the orbit of {:?}", m.set, m.avoided));
                }
                reps.push(b.mask());
            }
            check_cover(&g, *k, &reps)
        }
        Certificate::Orbits {
            group,
            k,
            representatives,
            sizes,
        } => {
            let g = group.group()?;
            let mut sets = Vec::new();
            for (r, &sz) in representatives.iter().zip(sizes) {
                let b = set_in(g.degree(), r)?;
                if g.set_orbit(b.mask()).len() as u64 != sz {
                    return Err("orbit size does not match".into());
                }
                sets.push(b.mask());
            }
            if representatives.len() != sizes.len() {
                return Err("sizes and representatives differ in length".into());
            }
            check_cover(&g, *k, &sets)
        }
        Certificate::OrderBound { n, k, bound } => {
            let order: BigUint = bound.order.parse().map_err(|_| "bad order".to_string())?;
            check_bound(*n, *k, &order, bound)
        }
        Certificate::NonRegular {
            group,
            image_set,
            kernel_without_section,
            element,
        } => {
            let g = group.group()?;
            let n = g.degree();
            let b = set_in(n, image_set)?;
            let c = element.certificate(n)?;
            if c.t.image_set() != b {
                return Err("t does not have the stated image".into());
            }
            if let Some(p) = kernel_without_section {
                let p = partition_in(n, p)?;
                if c.t.kernel() != p {
                    return Err("t does not have the stated kernel".into());
                }
                check_refutation(
                    &g,
                    b.len(),
                    &RefutationData {
                        candidate: image_set.clone(),
                        partition: partition_out(&p),
                    },
                )?;
            }
            c.verify(&g)
        }
        Certificate::Regular {
            group,
            image_set,
            witness,
            ..
        } => {
            let g = group.group()?;
            if &witness.witness != image_set {
                return Err("witness differs from the image set".into());
            }
            check_witness(&g, image_set.len(), witness).map(|_| ())
        }
        Certificate::Table { entries } => {
            for e in entries {
                if let Some(c) = &e.certificate {
                    verify_certificate(c).map_err(|m| format!("{}: {}", e.key, m))?;
                }
            }
            Ok(())
        }
    }
}

/// The verdict a certificate supports, for certificates that support exactly one.
fn supported_verdict(c: &Certificate) -> Option<String> {
    Some(match c {
        Certificate::EtWitness { .. } | Certificate::UtAll { .. } => "yes".into(),
        Certificate::EtNone { .. } | Certificate::UtRefuted { .. } => "no".into(),
        Certificate::WeakEt { sets, .. } => if sets.is_empty() { "no" } else { "yes" }.into(),
        Certificate::Orbits { representatives, .. } => representatives.len().to_string(),
        Certificate::OrderBound { bound, .. } => if bound.pass { "pass" } else { "fail" }.into(),
        Certificate::NonRegular { .. } => "not-regular".into(),
        Certificate::Regular { .. } => "regular".into(),
        Certificate::Table { .. } => return None,
    })
}

/// Check a JSON report: its certificate must verify and support the stated verdict.
/// Returns the number of certificates checked.
pub fn verify_report_text(text: &str) -> Result<usize, String> {
    let v: serde_json::Value = serde_json::from_str(text).map_err(|e| e.to_string())?;
    let cert = v.get("certificate").cloned().unwrap_or(serde_json::Value::Null);
    if cert.is_null() {
        return Err("report carries no certificate".into());
    }
    let c: Certificate = serde_json::from_value(cert).map_err(|e| e.to_string())?;
    let verdict = v.get("verdict").and_then(|x| x.as_str()).unwrap_or("");
    if let Some(want) = supported_verdict(&c) {
        if want != verdict {
            return Err(format!("certificate supports '{}', report says '{}'", want, verdict));
        }
    }
    if let Certificate::Table { entries } = &c {
        for e in entries {
            if let Some(want) = e.certificate.as_deref().and_then(supported_verdict) {
                if want != e.verdict {
                    return Err(format!("{}: certificate supports '{}', row says '{}'", e.key, want, e.verdict));
                }
            }
        }
    }
    verify_certificate(&c)?;
    Ok(match &c {
        Certificate::Table { entries } => entries.iter().filter(|e| e.certificate.is_some()).count(),
        _ => 1,
    })
}
