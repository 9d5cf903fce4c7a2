//! Catalog sweeps: which available groups of bounded degree have k-et (or k-ut).

use std::str::FromStr;

use crate::algebra::catalog::{catalog, catalog_keys};
use crate::error::{Error, Result};
use crate::et::decide::{analyze, EtOptions, Goal};
use crate::et::Decision;
use crate::perm::{KSetOrbitIndex, PermGroup, PointSet};
use crate::report::{et_certificate, ut_certificate, witness_data, Certificate, GroupData, TableEntry};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Property {
    Et(usize),
    Ut(usize),
}

impl Property {
    pub fn k(&self) -> usize {
        match self {
            Property::Et(k) | Property::Ut(k) => *k,
        }
    }
}

impl FromStr for Property {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("property '{}' is not of the form <k>et or <k>ut", s));
        let s = s.trim().to_ascii_lowercase();
        let (num, ut) = if let Some(n) = s.strip_suffix("et") {
            (n, false)
        } else if let Some(n) = s.strip_suffix("ut") {
            (n, true)
        } else {
            return Err(bad());
        };
        let k: usize = num.trim_end_matches('-').parse().map_err(|_| bad())?;
        if k < 1 {
            return Err(bad());
        }
        Ok(if ut { Property::Ut(k) } else { Property::Et(k) })
    }
}

#[derive(Clone, Debug, Default)]
pub struct TableResult {
    pub entries: Vec<TableEntry>,
    pub nodes: u64,
    /// Entries left undecided, with the reason.
    pub unknown: Vec<(String, String)>,
}

fn same_group(a: &PermGroup, b: &PermGroup) -> bool {
    a.degree() == b.degree()
        && a.order() == b.order()
        && a.generators().iter().all(|g| b.contains(g))
}

fn homogeneous(g: &PermGroup, k: usize) -> Result<Option<PointSet>> {
    let idx = KSetOrbitIndex::new(g, k)?;
    Ok(if idx.num_orbits()? == 1 {
        Some(PointSet::from_mask(idx.reps()[0]))
    } else {
        None
    })
}

/// Transitive catalog groups with 2k <= degree <= max_degree, one row per distinct
/// group (later keys for the same permutation group become aliases).
pub fn property_table(prop: Property, max_degree: usize, base: &EtOptions) -> Result<TableResult> {
    let k = prop.k();
    let mut groups: Vec<(String, PermGroup)> = Vec::new();
    let mut aliases: Vec<Vec<String>> = Vec::new();
    for key in catalog_keys() {
        let g = match catalog(&key) {
            Ok(g) => g,
            Err(Error::Unavailable(_)) | Err(Error::ResourceLimit(_)) => continue,
            Err(e) => return Err(e),
        };
        let n = g.degree();
        if n > max_degree || n < 2 * k || !g.is_transitive() {
            continue;
        }
        match groups.iter().position(|(_, h)| same_group(&g, h)) {
            Some(i) => aliases[i].push(key),
            None => {
                groups.push((key, g));
                aliases.push(Vec::new());
            }
        }
    }
    let mut out = TableResult::default();
    for ((key, g), al) in groups.into_iter().zip(aliases) {
        let mut entry = TableEntry {
            key: key.clone(),
            name: g.display_name(),
            degree: g.degree(),
            order: g.order().to_string(),
            transitive: true,
            homogeneous: false,
            verdict: String::new(),
            aliases: al,
            certificate: None,
        };
        if let Some(rep) = homogeneous(&g, k)? {
            // one orbit: every k-set is a witness, and this one stands for all
            entry.homogeneous = true;
            entry.verdict = "yes".into();
            let w = witness_data(&g, &rep);
            entry.certificate = Some(Box::new(match prop {
                Property::Et(_) => Certificate::EtWitness {
                    group: GroupData::of(&g),
                    k,
                    witness: w,
                },
                Property::Ut(_) => Certificate::UtAll {
                    group: GroupData::of(&g),
                    k,
                    witnesses: vec![w],
                },
            }));
            out.entries.push(entry);
            continue;
        }
        let opts = EtOptions {
            goal: match prop {
                Property::Et(_) => Goal::Et,
                Property::Ut(_) => Goal::Ut,
            },
            ..base.clone()
        };
        let an = analyze(&g, k, &opts)?;
        out.nodes += an.nodes;
        let (d, cert) = match prop {
            Property::Et(_) => (an.et(), et_certificate(&g, &an)),
            Property::Ut(_) => (an.ut(), ut_certificate(&g, &an)),
        };
        if let Decision::Unknown(w) = &d {
            out.unknown.push((key.clone(), w.clone()));
        }
        entry.verdict = d.label().to_string();
        entry.certificate = cert.map(Box::new);
        out.entries.push(entry);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn property_names_parse() {
        assert_eq!("6et".parse::<Property>().unwrap(), Property::Et(6));
        assert_eq!("4-ut".parse::<Property>().unwrap(), Property::Ut(4));
        assert!("et".parse::<Property>().is_err());
        assert!("6xt".parse::<Property>().is_err());
    }

    #[test]
    fn small_two_et_table_verifies() {
        let t = property_table(Property::Et(2), 7, &EtOptions::default()).unwrap();
        assert!(t.unknown.is_empty());
        let c7 = t.entries.iter().find(|e| e.key == "C,7").unwrap();
        // C7 has connected orbital graphs
        assert_eq!(c7.verdict, "yes");
        // PΣL(2,4) on the projective line is S5 on 5 points
        let s5 = t.entries.iter().find(|e| e.key == "S,5").unwrap();
        assert!(s5.aliases.contains(&"PSigmaL,2,4".to_string()));
        crate::report::verify_certificate(&Certificate::Table { entries: t.entries }).unwrap();
    }
}
