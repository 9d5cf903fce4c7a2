//! Command-line front end. `run` turns parsed arguments into a report and an exit code.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;
use serde_json::json;

use crate::algebra::catalog::{catalog, catalog_keys};
use crate::error::Error;
use crate::et::bounds::{order_bound, BoundVariant};
use crate::et::decide::{analyze, EtOptions, Goal};
use crate::et::Decision;
use crate::io::format::{emit_group, parse_group, parse_points};
use crate::perm::{KSetOrbitIndex, PermGroup, PointSet};
use crate::report::{
    et_certificate, group_digest, sha256_hex, ut_certificate, verify_report_text,
    weak_certificate, witness_data, BoundData, Certificate, GroupData, NonRegularData, Report,
    VERSION,
};
use crate::semigroup::classify::{classify_regularity, Regularity};
use crate::table::{property_table, Property};

pub const EXIT_DECIDED: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "transversal-lab", version, about = "k-et / k-ut decisions and semigroup regularity for permutation groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone, Default)]
pub struct Common {
    /// Group file (degree / name / gen lines).
    #[arg(long, global = true, conflicts_with = "catalog")]
    pub group: Option<PathBuf>,
    /// Catalog entry, e.g. M24 or PGL,2,17.
    #[arg(long, global = true)]
    pub catalog: Option<String>,
    #[arg(long, global = true)]
    pub k: Option<usize>,
    #[arg(long, global = true)]
    pub max_nodes: Option<u64>,
    /// Wall-clock limit in seconds.
    #[arg(long, global = true)]
    pub timeout: Option<f64>,
    #[arg(long, global = true)]
    pub json: bool,
    /// Byte-identical output: elapsed time is reported as 0.
    #[arg(long, global = true)]
    pub deterministic: bool,
    /// Allow k > n/2.
    #[arg(long, global = true)]
    pub force: bool,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Does some k-set witness k-et?
    Et,
    /// Does every k-set witness k-et?
    Ut,
    /// Does some k-set meet every (k-1)-set orbit?
    WeakEt,
    /// Orbits of the group on k-sets.
    Orbits,
    /// The group order lower bound required for k-et.
    OrderBound {
        /// et (2C(n,k-1)/(k+1)) or weak (C(n,k-1)/k).
        #[arg(long, default_value = "et")]
        variant: String,
        /// Degree, when no group is given.
        #[arg(long)]
        degree: Option<usize>,
        /// Group order, when no group is given.
        #[arg(long)]
        order: Option<String>,
    },
    /// Is <G, t> regular for every t with the given image set?
    Regular {
        #[arg(long, conflicts_with = "image_set_witness")]
        image_set: Option<String>,
        /// Use the first k-set orbit representative that witnesses k-et.
        #[arg(long)]
        image_set_witness: Option<usize>,
    },
    /// Describe a catalog entry, or list the catalog.
    Catalog,
    /// Sweep the catalog for a property such as 6et or 4ut.
    Table {
        #[arg(long)]
        property: String,
        #[arg(long, default_value_t = 24)]
        max_degree: usize,
    },
    /// Re-check the certificate in a JSON report without searching.
    Verify { report: PathBuf },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Et => "et",
            Command::Ut => "ut",
            Command::WeakEt => "weak-et",
            Command::Orbits => "orbits",
            Command::OrderBound { .. } => "order-bound",
            Command::Regular { .. } => "regular",
            Command::Catalog => "catalog",
            Command::Table { .. } => "table",
            Command::Verify { .. } => "verify",
        }
    }
}

pub struct Outcome {
    pub report: Report,
    pub exit: i32,
    /// Plain-text rendering used without --json.
    pub text: String,
}

impl Outcome {
    pub fn render(&self, json: bool) -> String {
        if json {
            serde_json::to_string_pretty(&self.report).expect("report serializes") + "\n"
        } else {
            self.text.clone()
        }
    }
}

struct Ctx<'a> {
    common: &'a Common,
    start: Instant,
}

impl Ctx<'_> {
    fn opts(&self, goal: Goal) -> EtOptions {
        let mut o = EtOptions::with_goal(goal);
        if let Some(m) = self.common.max_nodes {
            o.max_nodes = m;
        }
        o.timeout = self.common.timeout.map(Duration::from_secs_f64);
        o.force = self.common.force;
        o
    }

    fn k(&self) -> Result<usize, Error> {
        self.common
            .k
            .ok_or_else(|| Error::InvalidArgument("--k is required".into()))
    }

    fn group(&self) -> Result<PermGroup, Error> {
        match (&self.common.group, &self.common.catalog) {
            (Some(p), _) => parse_group(&std::fs::read_to_string(p)?),
            (None, Some(key)) => catalog(key),
            (None, None) => Err(Error::InvalidArgument(
                "one of --group FILE or --catalog NAME is required".into(),
            )),
        }
    }

    fn report(&self, command: &str, digest: String) -> Report {
        Report {
            version: VERSION.to_string(),
            command: command.to_string(),
            input_sha256: digest,
            verdict: String::new(),
            rule: None,
            reason: None,
            certificate: None,
            details: serde_json::Value::Null,
            elapsed_ms: 0,
            nodes: 0,
            deterministic: self.common.deterministic,
        }
    }

    fn finish(&self, mut report: Report, text: String) -> Outcome {
        if !self.common.deterministic {
            report.elapsed_ms = self.start.elapsed().as_millis() as u64;
        }
        let exit = match report.verdict.as_str() {
            "unknown" => EXIT_UNKNOWN,
            "invalid" => EXIT_INPUT,
            _ => EXIT_DECIDED,
        };
        Outcome { report, exit, text }
    }
}

/// Machine-readable reason code for an undecided run.
pub fn reason_code(why: &str) -> &'static str {
    if why.contains("node cap") {
        "node-cap"
    } else if why.contains("timeout") {
        "timeout"
    } else if why.contains("not available") || why.contains("not constructed") {
        "catalog-unavailable"
    } else {
        "resource-limit"
    }
}

fn unknown(report: &mut Report, why: &str) {
    report.verdict = "unknown".into();
    report.reason = Some(reason_code(why).into());
    report.details = json!({ "message": why });
}

fn fmt_set(s: &[usize]) -> String {
    format!(
        "{{{}}}",
        s.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
    )
}

/// Run a parsed command. Input errors become exit code 1 with the message in the report.
pub fn run(cli: &Cli) -> Outcome {
    let ctx = Ctx {
        common: &cli.common,
        start: Instant::now(),
    };
    match dispatch(&ctx, &cli.command) {
        Ok(o) => o,
        Err(Error::Unavailable(why)) => {
            let mut r = ctx.report(cli.command.name(), String::new());
            unknown(&mut r, &format!("not available: {}", why));
            let text = format!("unknown: {}\n", why);
            ctx.finish(r, text)
        }
        Err(Error::ResourceLimit(why)) => {
            let mut r = ctx.report(cli.command.name(), String::new());
            unknown(&mut r, &format!("resource limit: {}", why));
            let text = format!("unknown: {}\n", why);
            ctx.finish(r, text)
        }
        Err(e) => {
            let mut r = ctx.report(cli.command.name(), String::new());
            r.verdict = "error".into();
            r.details = json!({ "message": e.to_string() });
            let text = format!("error: {}\n", e);
            let mut o = ctx.finish(r, text);
            o.exit = EXIT_INPUT;
            o
        }
    }
}

fn dispatch(ctx: &Ctx, cmd: &Command) -> Result<Outcome, Error> {
    match cmd {
        Command::Et | Command::Ut => {
            let g = ctx.group()?;
            let k = ctx.k()?;
            let et = matches!(cmd, Command::Et);
            let an = analyze(&g, k, &ctx.opts(if et { Goal::Et } else { Goal::Ut }))?;
            let mut r = ctx.report(cmd.name(), group_digest(&g));
            r.nodes = an.nodes;
            let d = if et { an.et() } else { an.ut() };
            let mut text = format!("{} {}-{}: ", g.display_name(), k, cmd.name());
            match &d {
                Decision::Unknown(w) => {
                    unknown(&mut r, w);
                    text += &format!("unknown ({})\n", w);
                }
                _ => {
                    r.verdict = d.label().to_string();
                    r.certificate = if et {
                        et_certificate(&g, &an)
                    } else {
                        ut_certificate(&g, &an)
                    };
                    r.rule = Some(rule_of(&r.certificate).into());
                    text += &format!("{}\n", r.verdict);
                    text += &describe(&r.certificate);
                }
            }
            r.details = json!({ "orbits": an.reps.len(), "order": an.group_order.to_string() });
            Ok(ctx.finish(r, text))
        }
        Command::WeakEt => {
            let g = ctx.group()?;
            let k = ctx.k()?;
            let (yes, c) = weak_certificate(&g, k)?;
            let mut r = ctx.report(cmd.name(), group_digest(&g));
            r.verdict = if yes { "yes" } else { "no" }.into();
            r.rule = Some(if yes { "weak-witness" } else { "every-orbit-misses" }.into());
            let text = format!("{} weak {}-et: {}\n", g.display_name(), k, r.verdict);
            r.certificate = Some(c);
            Ok(ctx.finish(r, text))
        }
        Command::Orbits => {
            let g = ctx.group()?;
            let k = ctx.k()?;
            if k == 0 || k > g.degree() {
                return Err(Error::InvalidArgument(format!(
                    "k = {} on {} points",
                    k,
                    g.degree()
                )));
            }
            let idx = KSetOrbitIndex::new(&g, k)?;
            let count = idx.num_orbits()?;
            let reps: Vec<Vec<usize>> = idx.rep_sets().iter().map(|s| s.to_one_based()).collect();
            let mut text = format!("{} has {} orbits on {}-sets\n", g.display_name(), count, k);
            for (rep, size) in reps.iter().zip(idx.sizes()) {
                text += &format!("  {} size {}\n", fmt_set(rep), size);
            }
            let mut r = ctx.report(cmd.name(), group_digest(&g));
            r.verdict = count.to_string();
            r.rule = Some("orbit-enumeration".into());
            r.certificate = Some(Certificate::Orbits {
                group: GroupData::of(&g),
                k,
                representatives: reps,
                sizes: idx.sizes().to_vec(),
            });
            Ok(ctx.finish(r, text))
        }
        Command::OrderBound {
            variant,
            degree,
            order,
        } => {
            let k = ctx.k()?;
            let variant = match variant.as_str() {
                "et" => BoundVariant::Et,
                "weak" => BoundVariant::Weak,
                v => return Err(Error::InvalidArgument(format!("unknown variant '{}'", v))),
            };
            let (n, ord, digest) = match (degree, order) {
                (Some(n), Some(o)) => {
                    let ord: BigUint = o
                        .parse()
                        .map_err(|_| Error::InvalidArgument(format!("bad order '{}'", o)))?;
                    (*n, ord, sha256_hex(&format!("degree {}\norder {}\n", n, o)))
                }
                (None, None) => {
                    let g = ctx.group()?;
                    (g.degree(), g.order(), group_digest(&g))
                }
                _ => {
                    return Err(Error::InvalidArgument(
                        "--degree and --order go together".into(),
                    ))
                }
            };
            if k == 0 || k > n {
                return Err(Error::InvalidArgument(format!("k = {} on {} points", k, n)));
            }
            let b = order_bound(n, k, &ord, variant);
            let mut r = ctx.report(cmd.name(), digest);
            r.verdict = if b.pass { "pass" } else { "fail" }.into();
            r.rule = Some("order-bound".into());
            let text = format!(
                "|G| = {} against {}/{}: {}\n",
                b.order, b.numerator, b.denominator, r.verdict
            );
            r.details = json!({ "fails_through": b.fails_through });
            r.certificate = Some(Certificate::OrderBound {
                n,
                k,
                bound: BoundData::of(&b),
            });
            Ok(ctx.finish(r, text))
        }
        Command::Regular {
            image_set,
            image_set_witness,
        } => regular(ctx, cmd, image_set.as_deref(), *image_set_witness),
        Command::Catalog => {
            let mut r = ctx.report(cmd.name(), String::new());
            match &ctx.common.catalog {
                None => {
                    let keys = catalog_keys();
                    r.input_sha256 = sha256_hex(&keys.join("\n"));
                    r.verdict = "list".into();
                    let text = keys.join("\n") + "\n";
                    r.details = json!({ "keys": keys });
                    Ok(ctx.finish(r, text))
                }
                Some(key) => {
                    let g = catalog(key)?;
                    r.input_sha256 = group_digest(&g);
                    r.verdict = "available".into();
                    let text = emit_group(&g);
                    r.details = json!({
                        "key": key,
                        "name": g.display_name(),
                        "degree": g.degree(),
                        "order": g.order().to_string(),
                        "transitive": g.is_transitive(),
                        "group": text,
                    });
                    Ok(ctx.finish(r, text))
                }
            }
        }
        Command::Table {
            property,
            max_degree,
        } => {
            let prop: Property = property.parse()?;
            let t = property_table(prop, *max_degree, &ctx.opts(Goal::Et))?;
            let mut r = ctx.report(
                cmd.name(),
                sha256_hex(&format!("table {} {}\n", property, max_degree)),
            );
            r.nodes = t.nodes;
            let mut text = format!("{:<16} {:>6} {:>24} {:>7} {}\n", "group", "degree", "order", "verdict", "note");
            for e in &t.entries {
                let mut note = String::new();
                if e.homogeneous {
                    note.push_str(&format!("{}-homogeneous", prop.k()));
                }
                if !e.aliases.is_empty() {
                    if !note.is_empty() {
                        note.push_str("; ");
                    }
                    note.push_str(&format!("same as {}", e.aliases.join(", ")));
                }
                text += &format!(
                    "{:<16} {:>6} {:>24} {:>7} {}\n",
                    e.key, e.degree, e.order, e.verdict, note
                );
            }
            let listed: Vec<&str> = t
                .entries
                .iter()
                .filter(|e| e.verdict == "yes" && !e.homogeneous)
                .map(|e| e.key.as_str())
                .collect();
            r.details = json!({ "non_homogeneous_yes": listed, "unknown": t.unknown });
            if let Some((key, why)) = t.unknown.first() {
                unknown(&mut r, &format!("{}: {}", key, why));
            } else {
                r.verdict = "complete".into();
                r.rule = Some("catalog-sweep".into());
            }
            r.certificate = Some(Certificate::Table { entries: t.entries });
            Ok(ctx.finish(r, text))
        }
        Command::Verify { report } => {
            let text = std::fs::read_to_string(report)?;
            let mut r = ctx.report(cmd.name(), sha256_hex(&text));
            let out = match verify_report_text(&text) {
                Ok(count) => {
                    r.verdict = "valid".into();
                    r.details = json!({ "certificates": count });
                    format!("valid ({} certificate(s))\n", count)
                }
                Err(why) => {
                    r.verdict = "invalid".into();
                    r.details = json!({ "message": why });
                    format!("invalid: {}\n", why)
                }
            };
            Ok(ctx.finish(r, out))
        }
    }
}

fn regular(
    ctx: &Ctx,
    cmd: &Command,
    image_set: Option<&str>,
    witness_k: Option<usize>,
) -> Result<Outcome, Error> {
    let g = ctx.group()?;
    let n = g.degree();
    let b = match (image_set, witness_k) {
        (Some(s), None) => {
            let pts = parse_points(s)?;
            if pts.iter().any(|&x| x >= n) {
                return Err(Error::InvalidArgument(format!("image set outside 1..{}", n)));
            }
            PointSet::new(pts)?
        }
        (None, Some(k)) => {
            let an = analyze(&g, k, &ctx.opts(Goal::Et))?;
            match an.et() {
                Decision::Yes => an.witnesses()[0].clone(),
                Decision::No => {
                    return Err(Error::InvalidArgument(format!(
                        "{} has no {}-set witnessing {}-et",
                        g.display_name(),
                        k,
                        k
                    )))
                }
                Decision::Unknown(w) => {
                    let mut r = ctx.report(cmd.name(), group_digest(&g));
                    r.nodes = an.nodes;
                    unknown(&mut r, &w);
                    return Ok(ctx.finish(r, format!("unknown ({})\n", w)));
                }
            }
        }
        _ => {
            return Err(Error::InvalidArgument(
                "exactly one of --image-set or --image-set-witness is required".into(),
            ))
        }
    };
    let rep = classify_regularity(&g, &b, &ctx.opts(Goal::Et))?;
    let mut r = ctx.report(cmd.name(), group_digest(&g));
    r.nodes = rep.nodes;
    let bset = b.to_one_based();
    let mut text = format!(
        "{} image set {}: ",
        g.display_name(),
        fmt_set(&bset)
    );
    match rep.decision {
        Regularity::Unknown => {
            unknown(&mut r, &rep.detail);
            text += &format!("unknown ({})\n", rep.detail);
        }
        Regularity::Regular => {
            r.verdict = "regular".into();
            r.rule = rep.rule.map(|x| x.label().to_string());
            r.certificate = Some(Certificate::Regular {
                group: GroupData::of(&g),
                image_set: bset.clone(),
                rule: r.rule.clone().unwrap_or_default(),
                witness: witness_data(&g, &b),
            });
            text += &format!("regular [{}] {}\n", r.rule.as_deref().unwrap_or(""), rep.detail);
        }
        Regularity::NotRegular => {
            r.verdict = "not-regular".into();
            r.rule = rep.rule.map(|x| x.label().to_string());
            let c = rep
                .certificate
                .as_ref()
                .ok_or_else(|| Error::Validation("non-regular verdict without an element".into()))?;
            let data = NonRegularData::of(c);
            text += &format!(
                "not regular [{}] {}\n  s = {:?}\n",
                r.rule.as_deref().unwrap_or(""),
                rep.detail,
                data.s
            );
            r.certificate = Some(Certificate::NonRegular {
                group: GroupData::of(&g),
                image_set: bset.clone(),
                kernel_without_section: rep.partition.as_ref().map(|p| {
                    p.blocks()
                        .iter()
                        .map(|b| b.iter().map(|x| x + 1).collect())
                        .collect()
                }),
                element: data,
            });
        }
    }
    r.details = json!({ "detail": rep.detail, "k": rep.k });
    Ok(ctx.finish(r, text))
}

fn rule_of(c: &Option<Certificate>) -> &'static str {
    match c {
        Some(Certificate::EtWitness { .. }) | Some(Certificate::UtAll { .. }) => "witness-search",
        Some(Certificate::EtNone { bound, .. }) | Some(Certificate::UtRefuted { bound, .. })
            if !bound.pass =>
        {
            "order-bound"
        }
        _ => "refuting-partition",
    }
}

fn describe(c: &Option<Certificate>) -> String {
    match c {
        Some(Certificate::EtWitness { witness, .. }) => {
            format!("  witness {}\n", fmt_set(&witness.witness))
        }
        Some(Certificate::UtAll { witnesses, .. }) => {
            format!("  {} orbit(s), all witnesses\n", witnesses.len())
        }
        Some(Certificate::EtNone { refutations, bound, .. }) => {
            if bound.pass {
                format!("  {} orbit(s) refuted\n", refutations.len())
            } else {
                format!("  |G| = {} < {}/{}\n", bound.order, bound.numerator, bound.denominator)
            }
        }
        Some(Certificate::UtRefuted {
            refutation: Some(r),
            ..
        }) => format!(
            "  {} has no image that is a section of {:?}\n",
            fmt_set(&r.candidate),
            r.partition
        ),
        _ => String::new(),
    }
}
