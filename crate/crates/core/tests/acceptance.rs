//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits non-zero if
//! any criterion fails. Oracles here are written independently of the library's
//! search code: orbits by plain breadth-first search over generator images,
//! witnesses by running through every k-partition, and semigroup regularity by
//! closing the monoid and checking every element.

use std::collections::{HashMap, HashSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Mutex;
use std::time::Instant;

use clap::Parser;
use transversal_lab::algebra::catalog::{catalog, catalog_keys};
use transversal_lab::algebra::field::Field;
use transversal_lab::algebra::projective::{projective_line_group, LineFlavor};
use transversal_lab::cli::{run, Cli};
use transversal_lab::et::cross_ratio::{crossratio_witness_filter, FilterVerdict};
use transversal_lab::et::decide::refutation_holds;
use transversal_lab::et::unital::pgu_orbit_count_check;
use transversal_lab::et::{analyze, Decision, EtOptions, Goal, OrbitStatus};
use transversal_lab::perm::{mask_of, points_of, KSetOrbitIndex, PermGroup, PointSet};
use transversal_lab::report::{verify_certificate, verify_report_text, Certificate};
use transversal_lab::semigroup::classify::{classify_regularity, Regularity};
use transversal_lab::semigroup::closure::monoid_closure;
use transversal_lab::semigroup::Transformation;

type Outcome = Result<String, String>;

/// JSON reports emitted while the suite runs; criterion 11 re-verifies all of them.
static REPORTS: Mutex<Vec<(String, String)>> = Mutex::new(Vec::new());

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn group(key: &str) -> Result<PermGroup, String> {
    catalog(key).map_err(|e| format!("{}: {}", key, e))
}

/// Run the command-line front end and keep its JSON report.
fn cli(args: &str) -> Result<serde_json::Value, String> {
    let argv = std::iter::once("transversal-lab").chain(args.split_whitespace());
    let parsed = Cli::try_parse_from(argv).map_err(|e| e.to_string())?;
    let out = run(&parsed);
    let text = out.render(true);
    REPORTS.lock().unwrap().push((args.to_string(), text.clone()));
    serde_json::from_str(&text).map_err(|e| e.to_string())
}

fn verdict(v: &serde_json::Value) -> String {
    v["verdict"].as_str().unwrap_or("").to_string()
}

fn et(g: &PermGroup, k: usize, goal: Goal) -> Result<transversal_lab::et::EtAnalysis, String> {
    analyze(
        g,
        k,
        &EtOptions {
            goal,
            force: true,
            ..Default::default()
        },
    )
    .map_err(|e| e.to_string())
}

// ---- independent oracles ----

/// Orbit id of every k-set, by breadth-first search over generator images.
fn kset_orbits(g: &PermGroup, k: usize) -> HashMap<u128, usize> {
    let n = g.degree();
    let mut id = HashMap::new();
    let mut next = 0;
    let mut stack = Vec::new();
    for set in subsets(n, k) {
        if id.contains_key(&set) {
            continue;
        }
        id.insert(set, next);
        stack.push(set);
        while let Some(m) = stack.pop() {
            for h in g.generators() {
                let img = points_of(m).iter().fold(0u128, |a, &x| a | 1 << h.image(x));
                if let std::collections::hash_map::Entry::Vacant(e) = id.entry(img) {
                    e.insert(next);
                    stack.push(img);
                }
            }
        }
        next += 1;
    }
    id
}

fn subsets(n: usize, k: usize) -> Vec<u128> {
    let mut out = Vec::new();
    fn rec(i: usize, n: usize, k: usize, cur: u128, out: &mut Vec<u128>) {
        if k == 0 {
            out.push(cur);
            return;
        }
        for x in i..n {
            if n - x < k {
                break;
            }
            rec(x + 1, n, k - 1, cur | 1 << x, out);
        }
    }
    rec(0, n, k, 0, &mut out);
    out
}

/// Every partition of 0..n into exactly k blocks, as block labels in first-occurrence order.
fn partitions(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(i: usize, n: usize, k: usize, used: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == n {
            if used == k {
                out.push(cur.clone());
            }
            return;
        }
        if k - used > n - i {
            return;
        }
        for b in 0..=used.min(k - 1) {
            cur.push(b);
            rec(i + 1, n, k, used.max(b + 1), cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, 0, &mut Vec::new(), &mut out);
    out
}

fn blocks_of(labels: &[usize], k: usize) -> Vec<Vec<usize>> {
    (0..k)
        .map(|b| (0..labels.len()).filter(|&x| labels[x] == b).collect())
        .collect()
}

/// For each orbit id of k-sets: does some member meet every k-partition in a section?
fn witness_oracle(g: &PermGroup, k: usize, orbit: &HashMap<u128, usize>) -> Vec<bool> {
    let r = orbit.values().max().map_or(0, |m| m + 1);
    let mut alive = vec![true; r];
    for labels in partitions(g.degree(), k) {
        let blocks = blocks_of(&labels, k);
        let mut hit = vec![false; r];
        let mut stack = vec![(0usize, 0u128)];
        while let Some((i, m)) = stack.pop() {
            if i == k {
                hit[orbit[&m]] = true;
                continue;
            }
            for &x in &blocks[i] {
                stack.push((i + 1, m | 1 << x));
            }
        }
        for (a, h) in alive.iter_mut().zip(hit) {
            *a &= h;
        }
    }
    alive
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for i in 0..k {
            let mut q = p.clone();
            q.insert(i, k - 1);
            out.push(q);
        }
    }
    out
}

/// Relabel blocks in first-occurrence order.
fn normalize(labels: &[usize]) -> Vec<usize> {
    let mut map = HashMap::new();
    labels
        .iter()
        .map(|&l| {
            let next = map.len();
            *map.entry(l).or_insert(next)
        })
        .collect()
}

/// Kernels up to the group: keep a partition when no group element maps it to a smaller one.
fn canonical_kernels(g: &PermGroup, k: usize) -> Vec<Vec<usize>> {
    let elems = g.elements();
    let n = g.degree();
    partitions(n, k)
        .into_iter()
        .filter(|p| {
            elems.iter().all(|h| {
                let mut img = vec![0; n];
                for x in 0..n {
                    img[h.image(x)] = p[x];
                }
                normalize(&img) >= *p
            })
        })
        .collect()
}

/// Is <G, t> regular for every t with image B (kernels up to G)? Ground truth from
/// the full monoid closure. Returns None when some closure is too large.
fn closure_truth(g: &PermGroup, b: &PointSet, kernels: &[Vec<usize>]) -> Option<bool> {
    let k = b.len();
    let gens: Vec<Transformation> = g.generators().iter().map(Transformation::from_perm).collect();
    for labels in kernels {
        for sigma in permutations(k) {
            let images: Vec<usize> = labels.iter().map(|&l| b.points()[sigma[l]]).collect();
            let t = Transformation::new(images).unwrap();
            let mut all = gens.clone();
            all.push(t);
            let m = monoid_closure(&all, 200_000).ok()?;
            if !m.is_regular() {
                return Some(false);
            }
        }
    }
    Some(true)
}

// ---- criteria ----

fn c1() -> Outcome {
    let g = group("AGL,4,2")?;
    let want = [(4, true), (5, false), (6, true), (7, false)];
    let mut got = Vec::new();
    for (k, expect) in want {
        let v = cli(&format!("et --catalog AGL,4,2 --k {} --deterministic", k))?;
        let d = verdict(&v);
        got.push(format!("{}:{}", k, d));
        ensure(d == if expect { "yes" } else { "no" }, || format!("k={} gave {}", k, d))?;
        let lib = et(&g, k, Goal::Et)?.et();
        ensure(lib.is_yes() == expect && !matches!(lib, Decision::Unknown(_)), || {
            format!("library disagrees at k={}", k)
        })?;
    }
    Ok(got.join(" "))
}

fn c2() -> Outcome {
    let g = group("M24")?;
    let mut got = Vec::new();
    let mut witness7 = None;
    for (k, expect) in [(5, true), (6, true), (7, true), (8, false)] {
        let an = et(&g, k, Goal::Et)?;
        let d = an.et();
        ensure(!matches!(d, Decision::Unknown(_)), || format!("k={} unknown: {:?}", k, d))?;
        ensure(d.is_yes() == expect, || format!("k={} gave {}", k, d.label()))?;
        if k == 7 {
            witness7 = Some(an.witnesses()[0].clone());
        }
        got.push(format!("{}:{}", k, d.label()));
    }
    let w = witness7.unwrap();
    // octad through five points of the witness: they and the short orbit of their
    // pointwise stabiliser
    let five: Vec<usize> = w.points()[..5].to_vec();
    let stab = g.pointwise_stabilizer(&five);
    let extra: Vec<usize> = stab
        .orbits()
        .into_iter()
        .find(|o| o.len() == 3 && o.iter().all(|x| !five.contains(x)))
        .ok_or("no orbit of size 3 completing an octad")?;
    let octad = mask_of(&five) | mask_of(&extra);
    let blocks = g.set_orbit(octad);
    ensure(blocks.len() == 759, || format!("octad orbit has {} members", blocks.len()))?;
    // Steiner property: every 5-set lies in exactly one block
    let mut cover: HashMap<u128, usize> = HashMap::new();
    for &bl in &blocks {
        for s in subsets(8, 5) {
            let pts = points_of(bl);
            let m = points_of(s).iter().fold(0u128, |a, &i| a | 1 << pts[i]);
            *cover.entry(m).or_default() += 1;
        }
    }
    ensure(cover.len() == 42504 && cover.values().all(|&c| c == 1), || {
        "blocks do not form a Steiner system".into()
    })?;
    let best = blocks.iter().map(|&bl| (bl & w.mask()).count_ones()).max().unwrap();
    ensure(best == 6, || format!("witness meets a block in at most {} points", best))?;
    Ok(format!("{}; 7-witness {:?} has 6 points in a block", got.join(" "), w.to_one_based()))
}

fn c3() -> Outcome {
    let v = cli("orbits --catalog PGL,2,32 --k 4 --deterministic")?;
    ensure(verdict(&v) == "5", || format!("PGL(2,32) 4-set orbits: {}", verdict(&v)))?;
    let pgl = projective_line_group(32, LineFlavor::Pgl).map_err(|e| e.to_string())?;
    ensure(kset_orbits(&pgl, 4).values().max() == Some(&4), || "oracle count is not 5".into())?;
    let e = cli("et --catalog PGL,2,32 --k 5 --deterministic")?;
    ensure(verdict(&e) == "yes", || format!("PGL(2,32) 5-et: {}", verdict(&e)))?;
    let m = cli("orbits --catalog M24 --k 7 --deterministic")?;
    ensure(verdict(&m) == "2", || format!("M24 7-set orbits: {}", verdict(&m)))?;
    let m24 = group("M24")?;
    let idx = KSetOrbitIndex::new(&m24, 7).map_err(|e| e.to_string())?;
    let total: u64 = idx.sizes().iter().sum();
    ensure(total == 346104, || "M24 orbit sizes do not sum to C(24,7)".into())?;
    Ok("PGL(2,32): 5 orbits on 4-sets, 5-et; M24: 2 orbits on 7-sets".into())
}

fn c4() -> Outcome {
    let expected: [(&str, &[&str]); 2] = [
        ("6et", &["AGL,4,2", "2^4:A7", "PGL,2,17", "M11,12", "M12", "M23", "M24"]),
        ("7et", &["M24"]),
    ];
    let mut notes = Vec::new();
    for (prop, want) in expected {
        let v = cli(&format!("table --property {} --max-degree 24 --deterministic", prop))?;
        ensure(verdict(&v) == "complete", || format!("{} table: {}", prop, verdict(&v)))?;
        let got: HashSet<String> = v["details"]["non_homogeneous_yes"]
            .as_array()
            .ok_or("missing list")?
            .iter()
            .map(|x| x.as_str().unwrap().to_string())
            .collect();
        let want: HashSet<String> = want.iter().map(|s| s.to_string()).collect();
        ensure(got == want, || format!("{}: got {:?}", prop, got))?;
        // every yes row that is homogeneous really is: one orbit on k-sets
        let k: usize = prop[..1].parse().unwrap();
        for row in v["certificate"]["entries"].as_array().unwrap() {
            if row["homogeneous"].as_bool() == Some(true) {
                let g = group(row["key"].as_str().unwrap())?;
                if g.degree() <= 16 {
                    ensure(kset_orbits(&g, k).values().all(|&o| o == 0), || {
                        format!("{} is not {}-homogeneous", row["key"], k)
                    })?;
                }
            }
        }
        notes.push(format!("{} {:?}", prop, { let mut w: Vec<_> = want.into_iter().collect(); w.sort(); w }));
    }
    Ok(notes.join("; "))
}

fn c5() -> Outcome {
    for key in ["AGL,3,2", "AGL,4,2", "PSL,3,3", "ASp,2", "AGL,1,11", "AGL,1,13"] {
        let v = cli(&format!("et --catalog {} --k 4 --deterministic", key))?;
        ensure(verdict(&v) == "yes", || format!("{} 4-et: {}", key, verdict(&v)))?;
    }
    let sp = group("ASp,2")?;
    ensure(sp.degree() == 16 && sp.order() == (16u32 * 720).into(), || "ASp,2 is not 2^4:Sp(4,2)".into())?;
    let pgl_ut = verdict(&cli("ut --catalog PGL,2,7 --k 4 --deterministic")?);
    let pgl_et = verdict(&cli("et --catalog PGL,2,7 --k 4 --deterministic")?);
    let psl_ut = verdict(&cli("ut --catalog PSL,2,7 --k 4 --deterministic")?);
    let psl_et = verdict(&cli("et --catalog PSL,2,7 --k 4 --deterministic")?);
    ensure(pgl_ut == "yes" && pgl_et == "yes", || format!("PGL(2,7): ut {} et {}", pgl_ut, pgl_et))?;
    ensure(psl_ut == "no", || format!("PSL(2,7) 4-ut: {}", psl_ut))?;
    // brute force on the 8-point groups
    for key in ["PGL,2,7", "PSL,2,7"] {
        let g = group(key)?;
        let orb = kset_orbits(&g, 4);
        let w = witness_oracle(&g, 4, &orb);
        let an = et(&g, 4, Goal::Full)?;
        ensure(an.ut().is_yes() == w.iter().all(|&x| x) && an.et().is_yes() == w.iter().any(|&x| x), || {
            format!("{} disagrees with the partition oracle", key)
        })?;
    }
    Ok(format!("six groups 4-et; PGL(2,7) 4-ut and 4-et; PSL(2,7) not 4-ut (4-et {})", psl_et))
}

fn c6() -> Outcome {
    let mut got = Vec::new();
    for (q, want) in [(3, 3), (4, 3), (5, 4)] {
        let c = pgu_orbit_count_check(q).map_err(|e| e.to_string())?;
        ensure(c.computed == want && c.predicted == want, || {
            format!("q={}: computed {} predicted {}", q, c.computed, c.predicted)
        })?;
        got.push(format!("q={}:{}", q, c.computed));
    }
    let g = transversal_lab::algebra::unital::unital_group(3, transversal_lab::algebra::unital::UnitalFlavor::Pgu)
        .map_err(|e| e.to_string())?
        .0;
    ensure(kset_orbits(&g, 3).values().max() == Some(&2), || "oracle count for q=3 is not 3".into())?;
    Ok(got.join(" "))
}

fn c7() -> Outcome {
    let mut got = Vec::new();
    for q in [7u64, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32] {
        let g = projective_line_group(q, LineFlavor::Pgl).map_err(|e| e.to_string())?;
        let idx = KSetOrbitIndex::new(&g, 4).map_err(|e| e.to_string())?;
        let r = idx.num_orbits().map_err(|e| e.to_string())?;
        let bound = (q as usize - 2).div_ceil(6);
        ensure(r >= bound, || format!("q={}: {} orbits < {}", q, r, bound))?;
        got.push(format!("{}:{}", q, r));
    }
    let f = Field::new(13).map_err(|e| e.to_string())?;
    let g = projective_line_group(13, LineFlavor::Pgl).map_err(|e| e.to_string())?;
    let idx = KSetOrbitIndex::new(&g, 4).map_err(|e| e.to_string())?;
    let mut excluded = 0;
    for o in 0..idx.reps().len() {
        let (_, v) = crossratio_witness_filter(&f, &g, &idx, o).map_err(|e| e.to_string())?;
        if let FilterVerdict::Excluded(p) = v {
            let rep = PointSet::from_mask(idx.reps()[o]);
            ensure(refutation_holds(&g, &rep, &p), || "exclusion partition does not refute".into())?;
            excluded += 1;
        }
    }
    ensure(excluded >= 1, || "q=13: no orbit excluded".into())?;
    Ok(format!("orbit counts {}; q=13 excludes {} orbit(s)", got.join(" "), excluded))
}

fn small_groups(max_n: usize) -> Result<Vec<(String, PermGroup)>, String> {
    let mut out: Vec<(String, PermGroup)> = Vec::new();
    for key in catalog_keys() {
        let g = match catalog(&key) {
            Ok(g) => g,
            Err(_) => continue,
        };
        if g.degree() > max_n {
            continue;
        }
        let same = out.iter().any(|(_, h)| {
            h.degree() == g.degree() && h.order() == g.order() && g.generators().iter().all(|x| h.contains(x))
        });
        if !same {
            out.push((key, g));
        }
    }
    Ok(out)
}

fn c8() -> Outcome {
    // k-et against every k-partition
    let mut et_cases = 0;
    for (key, g) in small_groups(10)? {
        let n = g.degree();
        for k in 2..=4.min(n / 2) {
            let orb = kset_orbits(&g, k);
            let truth = witness_oracle(&g, k, &orb);
            let an = et(&g, k, Goal::Full)?;
            for (rep, st) in an.reps.iter().zip(&an.statuses) {
                let w = truth[orb[&rep.mask()]];
                ensure(matches!(st, OrbitStatus::Witness(_) | OrbitStatus::Refuted(_) | OrbitStatus::Excluded(_)), || {
                    format!("{} k={} {:?} undecided", key, k, rep.to_one_based())
                })?;
                ensure(w == matches!(st, OrbitStatus::Witness(_)), || {
                    format!("{} k={} {:?}: oracle {} library {:?}", key, k, rep.to_one_based(), w, st)
                })?;
            }
            ensure(an.et().is_yes() == truth.iter().any(|&x| x), || format!("{} k={} et", key, k))?;
            et_cases += 1;
        }
    }
    // semigroup regularity against the monoid closure
    let (mut reg_cases, mut not_regular) = (0, 0);
    for (key, g) in small_groups(6)? {
        let n = g.degree();
        for k in 2..n {
            let kernels = canonical_kernels(&g, k);
            let idx = KSetOrbitIndex::new(&g, k).map_err(|e| e.to_string())?;
            for b in idx.rep_sets() {
                let truth = closure_truth(&g, &b, &kernels)
                    .ok_or_else(|| format!("{} k={}: closure too large", key, k))?;
                let rep = classify_regularity(&g, &b, &EtOptions::default()).map_err(|e| e.to_string())?;
                let got = match rep.decision {
                    Regularity::Regular => true,
                    Regularity::NotRegular => {
                        let c = rep.certificate.as_ref().ok_or("non-regular without certificate")?;
                        c.verify(&g).map_err(|e| format!("{} {:?}: {}", key, b.to_one_based(), e))?;
                        false
                    }
                    Regularity::Unknown => return Err(format!("{} {:?}: unknown", key, b.to_one_based())),
                };
                ensure(got == truth, || {
                    format!("{} B={:?}: closure {} classifier {:?}", key, b.to_one_based(), truth, rep.decision)
                })?;
                reg_cases += 1;
                not_regular += (!truth) as usize;
            }
        }
    }
    Ok(format!(
        "{} (group, k) et cases; {} image sets ({} not regular) against the closure",
        et_cases, reg_cases, not_regular
    ))
}

fn c9() -> Outcome {
    let regular = [
        ("PGL,2,17", 6, false),
        ("AGL,1,13", 4, true),
        ("M11,12", 6, false),
        ("M23", 6, false),
        ("M24", 7, false),
    ];
    let mut notes = Vec::new();
    for (key, k, all) in regular {
        let g = group(key)?;
        let an = et(&g, k, Goal::Full)?;
        let ws: Vec<PointSet> = an.witnesses().into_iter().cloned().collect();
        ensure(!ws.is_empty(), || format!("{} has no {}-witness", key, k))?;
        if all {
            ensure(ws.len() == 2, || format!("{} has {} witness orbits", key, ws.len()))?;
        }
        for b in if all { &ws[..] } else { &ws[..1] } {
            let pts: Vec<String> = b.to_one_based().iter().map(|x| x.to_string()).collect();
            let v = cli(&format!("regular --catalog {} --image-set {} --deterministic", key, pts.join(",")))?;
            ensure(verdict(&v) == "regular", || format!("{} {:?}: {}", key, pts, verdict(&v)))?;
            notes.push(format!("{}({})", key, v["rule"].as_str().unwrap_or("")));
        }
    }
    for (key, k) in [("PGL,2,27", 5), ("PGammaL,2,27", 5), ("PSL,3,3", 4)] {
        let v = cli(&format!("regular --catalog {} --image-set-witness {} --deterministic", key, k))?;
        ensure(verdict(&v) == "not-regular", || format!("{}: {}", key, verdict(&v)))?;
        let cert: Certificate = serde_json::from_value(v["certificate"].clone()).map_err(|e| e.to_string())?;
        verify_certificate(&cert).map_err(|e| format!("{}: {}", key, e))?;
        notes.push(format!("{} not regular (replayed)", key));
    }
    Ok(notes.join(", "))
}

fn c10() -> Outcome {
    let mut cases = 0;
    for (key, g) in small_groups(6)? {
        let n = g.degree();
        for k in [2usize, 3] {
            if k >= n {
                continue;
            }
            let orb = kset_orbits(&g, k);
            let witness = witness_oracle(&g, k, &orb);
            let kernels = canonical_kernels(&g, k);
            let idx = KSetOrbitIndex::new(&g, k).map_err(|e| e.to_string())?;
            for b in idx.rep_sets() {
                let truth = closure_truth(&g, &b, &kernels).ok_or("closure too large")?;
                let w = witness[orb[&b.mask()]];
                ensure(truth == w, || {
                    format!("{} B={:?}: regular {} witness {}", key, b.to_one_based(), truth, w)
                })?;
                cases += 1;
            }
        }
    }
    Ok(format!("{} image sets of size 2 or 3 on at most 6 points", cases))
}

fn c11() -> Outcome {
    // a few more reports beyond those the other criteria produced
    for args in [
        "et --catalog M24 --k 7 --deterministic",
        "ut --catalog AGL,1,13 --k 4 --deterministic",
        "ut --catalog PGL,2,5 --k 3 --deterministic",
        "weak-et --catalog PSL,2,11 --k 4 --deterministic",
        "weak-et --catalog C,8 --k 3 --deterministic",
        "order-bound --catalog PGL,2,32 --k 7 --deterministic",
        "et --catalog PSL,2,32 --k 8 --deterministic",
        "regular --catalog C,8 --image-set 1,3 --deterministic",
        "regular --catalog S,9 --image-set 1,2,3,4 --deterministic",
        "table --property 4et --max-degree 12 --deterministic",
    ] {
        cli(args)?;
    }
    let reports = REPORTS.lock().unwrap().clone();
    let mut certs = 0;
    for (args, text) in &reports {
        let v: serde_json::Value = serde_json::from_str(text).map_err(|e| e.to_string())?;
        if v["certificate"].is_null() {
            return Err(format!("'{}' emitted no certificate (verdict {})", args, verdict(&v)));
        }
        certs += verify_report_text(text).map_err(|e| format!("'{}': {}", args, e))?;
    }
    Ok(format!("{} reports, {} certificates verified", reports.len(), certs))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("AGL(4,2) k-et for k=4..7", c1),
        ("M24 k-et for k=5..8 and the Steiner block", c2),
        ("orbit counts", c3),
        ("6-et / 7-et tables up to degree 24", c4),
        ("4-et spot rows", c5),
        ("PGU orbit counts on unital 3-sets", c6),
        ("cross-ratio orbit bound and q=13 exclusion", c7),
        ("oracle equivalence", c8),
        ("regularity verdicts", c9),
        ("k=2/3 regularity equals witnessing", c10),
        ("certificate verification", c11),
    ];
    let only: Option<usize> = std::env::var("ACCEPTANCE_ONLY").ok().and_then(|v| v.parse().ok());
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let n = i + 1;
        // criterion 11 checks the reports of the others, so it always runs
        if only.is_some_and(|o| o != n && n != 11) {
            continue;
        }
        let start = Instant::now();
        let r = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match r {
            Ok(detail) => println!("PASS {:>2} {} ({:.1}s): {}", n, name, secs, detail),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {} ({:.1}s): {}", n, name, secs, why);
            }
        }
    }
    if failed > 0 {
        println!("{} criteria failed", failed);
        std::process::exit(1);
    }
}
