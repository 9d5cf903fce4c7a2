//! Plain-text group files.
//!
//! ```text
//! # comment
//! degree 7
//! name PSL(3,2)
//! gen (1,2)(3,6)
//! gen 2 3 4 5 6 7 1
//! ```
//!
//! Points are 1-based. A `gen` line is either cycle notation or a full image list.

use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation};

pub fn parse_group(text: &str) -> Result<PermGroup> {
    let mut degree: Option<usize> = None;
    let mut name: Option<String> = None;
    let mut gens = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let (key, rest) = match line.find(char::is_whitespace) {
            Some(p) => (&line[..p], line[p..].trim()),
            None => (line, ""),
        };
        match key {
            "degree" => {
                if degree.is_some() {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: "duplicate degree".into(),
                    });
                }
                let n: usize = rest.parse().map_err(|_| Error::Parse {
                    line: line_no,
                    msg: format!("bad degree '{}'", rest),
                })?;
                if n == 0 {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: "degree must be positive".into(),
                    });
                }
                degree = Some(n);
            }
            "name" => name = Some(rest.to_string()),
            "gen" => {
                let n = degree.ok_or(Error::Parse {
                    line: line_no,
                    msg: "gen before degree".into(),
                })?;
                gens.push(parse_perm(n, rest).map_err(|e| Error::Parse {
                    line: line_no,
                    msg: e.to_string(),
                })?);
            }
            other => {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!("unknown keyword '{}'", other),
                })
            }
        }
    }
    let n = degree.ok_or(Error::Parse {
        line: 0,
        msg: "missing degree line".into(),
    })?;
    let g = PermGroup::new(n, gens)?;
    Ok(match name {
        Some(s) => g.with_name(s),
        None => g,
    })
}

/// Parses 1-based cycle notation or an image list.
pub fn parse_perm(n: usize, s: &str) -> Result<Permutation> {
    let s = s.trim();
    if s.starts_with('(') {
        let mut cycles = Vec::new();
        let mut rest = s;
        while !rest.is_empty() {
            if !rest.starts_with('(') {
                return Err(Error::InvalidPermutation(format!(
                    "expected '(' at '{}'",
                    rest
                )));
            }
            let close = rest
                .find(')')
                .ok_or_else(|| Error::InvalidPermutation("unclosed cycle".into()))?;
            let inner = &rest[1..close];
            let pts = parse_points(inner)?;
            if !pts.is_empty() {
                cycles.push(pts);
            }
            rest = rest[close + 1..].trim_start();
        }
        Permutation::from_cycles(n, &cycles)
    } else {
        let pts = parse_points(s)?;
        if pts.len() != n {
            return Err(Error::InvalidPermutation(format!(
                "image list has {} entries, degree is {}",
                pts.len(),
                n
            )));
        }
        Permutation::from_images(pts)
    }
}

/// Parses 1-based points separated by commas and/or spaces into 0-based points.
pub fn parse_points(s: &str) -> Result<Vec<usize>> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            let v: usize = t
                .parse()
                .map_err(|_| Error::InvalidPermutation(format!("bad point '{}'", t)))?;
            if v == 0 {
                return Err(Error::InvalidPermutation("points are 1-based".into()));
            }
            Ok(v - 1)
        })
        .collect()
}

/// Canonical emission: image lists, 1-based.
pub fn emit_group(g: &PermGroup) -> String {
    let mut out = format!("degree {}\n", g.degree());
    if let Some(name) = g.name() {
        out.push_str(&format!("name {}\n", name));
    }
    for p in g.generators() {
        let imgs: Vec<String> = p.images().iter().map(|x| (x + 1).to_string()).collect();
        out.push_str(&format!("gen {}\n", imgs.join(" ")));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = "# Fano plane\ndegree 7\nname PSL(3,2)\ngen (1,2)(3,6)\ngen 2 3 4 5 6 7 1\n";
        let g = parse_group(text).unwrap();
        assert_eq!(g.order(), num_bigint::BigUint::from(168u32));
        let again = parse_group(&emit_group(&g)).unwrap();
        assert_eq!(again.generators(), g.generators());
        assert_eq!(again.name(), Some("PSL(3,2)"));
        assert_eq!(emit_group(&again), emit_group(&g));
    }

    #[test]
    fn errors_carry_line_numbers() {
        match parse_group("degree 3\ngen (1,2,2)\n") {
            Err(Error::Parse { line: 2, .. }) => {}
            other => panic!("unexpected {:?}", other),
        }
        assert!(matches!(
            parse_group("gen (1,2)\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_group("degree 3\ngen 1 2\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_group("degree 3\nfoo\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn identity_generators_are_dropped() {
        let g = parse_group("degree 4\ngen ()\n").unwrap();
        assert!(g.generators().is_empty());
    }
}
