use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::ValueEnum;
use log::info;
use rayon::prelude::*;
use serde_json::{json, Value};

use rbloch_core::configspace::{boundary_check, orbit_census, verify_configurations};
use rbloch_core::funcfield::verify::{verify_spec_relations, SpecOptions};
use rbloch_core::funcfield::{FunctionField, Specializer, Valuation};
use rbloch_core::rings::{prime_power, Ring};
use rbloch_core::scissors::verify as sv;
use rbloch_core::scissors::ScissorsTower;
use rbloch_core::{GModule, Report, Structure};

use crate::cache::Cache;
use crate::output::Output;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// Finite fields `F_q`.
    Fq,
    /// `Z/p^2` for odd primes `p`.
    Zp2,
    /// Dual numbers `F_q[t]/(t^2)` for odd `q`.
    Dual,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Object {
    P,
    B,
    Rp,
    Rb,
    RpTilde,
    RpBar,
    K1,
    K2,
    D,
    Kv,
    Qker,
    Qrb,
    PHat,
}

impl Object {
    pub fn name(self) -> &'static str {
        match self {
            Object::P => "P",
            Object::B => "B",
            Object::Rp => "RP",
            Object::Rb => "RB",
            Object::RpTilde => "RP~",
            Object::RpBar => "RP-",
            Object::K1 => "K1",
            Object::K2 => "K2",
            Object::D => "D",
            Object::Kv => "KV",
            Object::Qker => "QKER",
            Object::Qrb => "QRB",
            Object::PHat => "P^",
        }
    }

    /// The object as a `Z[G]`-module, where it carries an action.
    fn module(self, t: &ScissorsTower) -> Option<GModule> {
        let red = || t.reduced();
        Some(match self {
            Object::Rp => t.rp.clone(),
            Object::Rb => t.refined_bloch().0.clone(),
            Object::RpTilde => red().rp_tilde.clone(),
            Object::RpBar => red().rp_bar.clone(),
            Object::K1 => red().k1.0.clone(),
            Object::K2 => red().k2.0.clone(),
            Object::D => red().d.0.clone(),
            Object::Kv => red().kv(t).0,
            Object::Qker => red().qker.0.clone(),
            Object::Qrb => red().qrb.0.clone(),
            Object::P | Object::B | Object::PHat => return None,
        })
    }

    fn structure(self, t: &ScissorsTower) -> Structure {
        match self {
            Object::P => t.p.structure(),
            Object::B => t.bloch().0.structure(),
            Object::PHat => t.reduced().p_hat.structure(),
            other => other.module(t).unwrap().structure(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Bloch,
    Cocycle,
    KeyIdentity,
    Constants,
    Reduced,
    Eigen,
    Kv,
    PropTwo,
    Boundary,
    Configurations,
    Spec,
}

pub fn parse_ring(desc: &str) -> Result<Arc<Ring>> {
    Ring::parse(desc).with_context(|| format!("ring `{desc}`"))
}

pub fn build_tower(ring: &Arc<Ring>) -> Result<ScissorsTower> {
    info!("building tower for {}", ring.name());
    Ok(ScissorsTower::build(ring.clone())?)
}

fn structure_json(s: &Structure) -> Value {
    json!({
        "structure": s.to_string(),
        "free_rank": s.free_rank,
        "torsion": s.torsion,
        "order": s.order(),
    })
}

fn merge(mut a: Value, b: Value) -> Value {
    if let (Value::Object(x), Value::Object(y)) = (&mut a, b) {
        x.extend(y);
    }
    a
}

/// Parses `a..b` (exclusive) or `a..=b` (inclusive).
pub fn parse_range(s: &str) -> Result<(u64, u64)> {
    let (a, b, inclusive) = if let Some((a, b)) = s.split_once("..=") {
        (a, b, true)
    } else if let Some((a, b)) = s.split_once("..") {
        (a, b, false)
    } else {
        bail!("range `{s}` must look like a..b or a..=b");
    };
    let a: u64 = a.trim().parse().with_context(|| format!("range start in `{s}`"))?;
    let b: u64 = b.trim().parse().with_context(|| format!("range end in `{s}`"))?;
    let end = if inclusive { b } else { b.saturating_sub(1) };
    if a > end {
        bail!("empty range `{s}`");
    }
    Ok((a, end))
}

fn family_rings(family: Family, lo: u64, hi: u64) -> Vec<(u64, String)> {
    (lo..=hi)
        .filter_map(|m| {
            let (p, e) = prime_power(m)?;
            match family {
                Family::Fq if m >= 4 => Some((m, format!("F_{m}"))),
                Family::Dual if m >= 4 && p != 2 => Some((m, format!("F_{m}[t]/(t^2)"))),
                Family::Zp2 if e == 1 && p >= 5 => Some((m, format!("Z/{}", m * m))),
                _ => None,
            }
        })
        .collect()
}

pub fn table(cache: &Cache, family: Family, range: &str, object: Object) -> Result<Output> {
    let (lo, hi) = parse_range(range)?;
    let rings = family_rings(family, lo, hi);
    let rows: Vec<Value> = rings
        .par_iter()
        .map(|(q, desc)| -> Result<Value> {
            let ring = parse_ring(desc)?;
            let (s, _) = cache.get_or_compute(&ring.name(), object.name(), || {
                build_tower(&ring).map(|t| object.structure(&t))
            })?;
            Ok(merge(json!({"ring": ring.name(), "q": q, "object": object.name()}), structure_json(&s)))
        })
        .collect::<Result<_>>()?;
    let family_name = format!("{family:?}").to_lowercase();
    let mut out = Output::new(
        json!({"family": family_name, "object": object.name(), "rows": rows}),
        &["ring", "q", "object", "structure", "order"],
    );
    for r in &rows {
        out.row(vec![
            r["ring"].as_str().unwrap().into(),
            r["q"].to_string(),
            object.name().into(),
            r["structure"].as_str().unwrap().into(),
            value_cell(&r["order"]),
        ]);
    }
    Ok(out)
}

fn value_cell(v: &Value) -> String {
    match v {
        Value::Null => "inf".into(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn group(cache: &Cache, rings: &[String], object: Object) -> Result<Output> {
    let parsed: Vec<Arc<Ring>> = rings.iter().map(|d| parse_ring(d)).collect::<Result<_>>()?;
    let rows: Vec<(Value, bool)> = parsed
        .par_iter()
        .map(|ring| -> Result<(Value, bool)> {
            let (s, hit) = cache.get_or_compute(&ring.name(), object.name(), || {
                build_tower(ring).map(|t| object.structure(&t))
            })?;
            Ok((merge(json!({"ring": ring.name(), "object": object.name()}), structure_json(&s)), hit))
        })
        .collect::<Result<_>>()?;
    for (r, hit) in &rows {
        info!("{} {}: {}", r["ring"], object.name(), if *hit { "cached" } else { "computed" });
    }
    let groups: Vec<Value> = rows.into_iter().map(|(r, _)| r).collect();
    let mut out = Output::new(json!({"groups": groups}), &["ring", "object", "structure", "order"]);
    for r in &groups {
        out.row(vec![
            r["ring"].as_str().unwrap().into(),
            object.name().into(),
            r["structure"].as_str().unwrap().into(),
            value_cell(&r["order"]),
        ]);
    }
    Ok(out)
}

pub fn eigen(rings: &[String], object: Object) -> Result<Output> {
    let parsed: Vec<Arc<Ring>> = rings.iter().map(|d| parse_ring(d)).collect::<Result<_>>()?;
    if matches!(object, Object::P | Object::B | Object::PHat) {
        bail!("{} carries no square-class action; choose a module such as RP or RB", object.name());
    }
    let entries: Vec<Value> = parsed
        .par_iter()
        .map(|ring| -> Result<Value> {
            let t = build_tower(ring)?;
            let m = object.module(&t).unwrap();
            let odd = m.odd_part();
            let comps: Vec<Value> = odd
                .eigen_decomposition()
                .into_iter()
                .map(|c| merge(json!({"chi": c.chi}), structure_json(&c.structure)))
                .collect();
            Ok(json!({
                "ring": ring.name(),
                "object": object.name(),
                "odd": structure_json(&odd.structure()),
                "components": comps,
            }))
        })
        .collect::<Result<_>>()?;
    let mut out = Output::new(json!({"eigen": entries}), &["ring", "object", "chi", "structure"]);
    for e in &entries {
        for c in e["components"].as_array().unwrap() {
            out.row(vec![
                e["ring"].as_str().unwrap().into(),
                object.name().into(),
                c["chi"].to_string(),
                c["structure"].as_str().unwrap().into(),
            ]);
        }
    }
    Ok(out)
}

pub fn orbits(rings: &[String], ns: &[usize]) -> Result<Output> {
    let parsed: Vec<Arc<Ring>> = rings.iter().map(|d| parse_ring(d)).collect::<Result<_>>()?;
    let jobs: Vec<(&Arc<Ring>, usize)> =
        parsed.iter().flat_map(|r| ns.iter().map(move |&n| (r, n))).collect();
    let censuses: Vec<Value> = jobs
        .par_iter()
        .map(|(ring, n)| -> Result<Value> {
            let c = orbit_census(ring, *n)?;
            let mut v = serde_json::to_value(&c)?;
            v["sl2_matches"] = json!(c.sl2_matches());
            v["gl2_matches"] = json!(c.gl2_matches());
            Ok(v)
        })
        .collect::<Result<_>>()?;
    let mut out = Output::new(
        json!({"censuses": censuses}),
        &["ring", "n", "configurations", "sl2_orbits", "gl2_orbits", "square_classes", "z_count", "matches"],
    );
    for c in &censuses {
        let ok = c["sl2_matches"].as_bool().unwrap() && c["gl2_matches"].as_bool().unwrap();
        out.row(vec![
            c["ring"].as_str().unwrap().into(),
            c["n"].to_string(),
            c["configurations"].to_string(),
            c["sl2_orbits"].to_string(),
            c["gl2_orbits"].to_string(),
            c["square_classes"].to_string(),
            c["z_count"].to_string(),
            ok.to_string(),
        ]);
    }
    Ok(out)
}

pub struct SpecArgs {
    pub qs: Vec<u64>,
    pub samples: usize,
    pub seed: u64,
    pub degree: usize,
    pub place: String,
    pub aux_samples: usize,
}

pub struct VerifyArgs {
    pub suite: Suite,
    pub rings: Vec<String>,
    pub max_n: usize,
    pub spec: SpecArgs,
}

fn run_suite(suite: Suite, ring: &Arc<Ring>, max_n: usize) -> Result<Report> {
    let t = build_tower(ring)?;
    Ok(match suite {
        Suite::Bloch => sv::verify_bloch(&t),
        Suite::Cocycle => sv::verify_cocycle_suite(&t),
        Suite::KeyIdentity => sv::verify_key_identity(&t),
        Suite::Constants => sv::verify_constants(&t),
        Suite::Reduced => sv::verify_reduced(&t),
        Suite::Eigen => sv::verify_eigen(&t),
        Suite::Kv | Suite::PropTwo => {
            let tk = build_tower(&ring.residue_field())?;
            if suite == Suite::Kv {
                sv::verify_kv(&t, &tk)?
            } else {
                sv::verify_prop_two(&t, &tk)
            }
        }
        Suite::Boundary => boundary_check(&t),
        Suite::Configurations => verify_configurations(&t, max_n)?,
        Suite::Spec => unreachable!(),
    })
}

/// Runs a suite; the flag is true when every check whose hypothesis holds passed.
pub fn verify(args: &VerifyArgs) -> Result<(Output, bool)> {
    let mut coverage = Vec::new();
    let reports: Vec<Report> = if args.suite == Suite::Spec {
        if args.spec.qs.is_empty() {
            bail!("the spec suite needs at least one --q");
        }
        for &q in &args.spec.qs {
            prime_power(q).with_context(|| format!("q = {q} is not a prime power"))?;
        }
        let opts = |seed| SpecOptions {
            samples: args.spec.samples,
            seed,
            degree: args.spec.degree,
            place: args.spec.place.clone(),
            aux_samples: args.spec.aux_samples,
        };
        let mut reports = Vec::new();
        for &q in &args.spec.qs {
            let (r, cov) = verify_spec_relations(q, &opts(args.spec.seed))?;
            coverage.push(json!({"ring": r.ring, "cases": cov}));
            reports.push(r);
        }
        reports
    } else {
        if args.rings.is_empty() {
            bail!("suite needs at least one --ring");
        }
        let parsed: Vec<Arc<Ring>> = args.rings.iter().map(|d| parse_ring(d)).collect::<Result<_>>()?;
        parsed
            .par_iter()
            .map(|ring| run_suite(args.suite, ring, args.max_n))
            .collect::<Result<_>>()?
    };
    let pass = reports.iter().all(Report::pass_within_hypothesis);
    let failures: Vec<Value> = reports
        .iter()
        .flat_map(|r| {
            r.failures().into_iter().map(move |c| {
                json!({"suite": r.suite, "ring": r.ring, "id": c.id, "args": c.args, "hypothesis_met": c.hypothesis_met})
            })
        })
        .collect();
    let suite_name = args.suite.to_possible_value().unwrap().get_name().to_string();
    let mut doc = json!({"suite": suite_name, "pass": pass, "reports": reports, "failures": failures});
    if !coverage.is_empty() {
        doc["coverage"] = json!(coverage);
    }
    let mut out = Output::new(doc, &["suite", "ring", "check", "passed", "total"]);
    for r in &reports {
        for (id, total, passed) in r.summary() {
            out.row(vec![r.suite.clone(), r.ring.clone(), id, passed.to_string(), total.to_string()]);
        }
    }
    for c in &coverage {
        out.notes.push(format!("case coverage for {}:", c["ring"].as_str().unwrap()));
        for case in c["cases"].as_array().unwrap() {
            out.notes.push(format!(
                "  {:<5} sampled {:>6}  crafted {:>2}  failures {}",
                case["case"].as_str().unwrap(),
                case["sampled"],
                case["crafted"],
                case["failures"]
            ));
        }
    }
    out.notes.push(if pass { "PASS".into() } else { format!("FAIL ({} failing checks)", failures.len()) });
    Ok((out, pass))
}

pub fn specialize(q: u64, place: &str, expr: &str) -> Result<Output> {
    let f = FunctionField::new(q)?;
    let v = Valuation::parse(&f, place)?;
    let s = Specializer::new(v)?;
    let terms = s.parse_expr(expr)?;
    let e = s.specialize(&terms)?;
    let [n0, n1] = s.normal_form(&e);
    let red = s.tower().reduced();
    let part = |n: &Vec<rbloch_core::Int>, m: &[rbloch_core::Int]| {
        json!({"coordinates": n, "is_zero": red.zero_in_tilde(s.tower(), m)})
    };
    let doc = json!({
        "field": format!("F_{q}(t)"),
        "place": s.valuation().label(),
        "residue_field": s.valuation().residue_field().name(),
        "rp_tilde": s.tower().reduced().rp_tilde.structure().to_string(),
        "expr": expr,
        "eps0": part(&n0, &e.parts[0]),
        "eps1": part(&n1, &e.parts[1]),
    });
    let mut out = Output::new(doc.clone(), &["component", "coordinates", "is_zero"]);
    for key in ["eps0", "eps1"] {
        out.row(vec![key.into(), doc[key]["coordinates"].to_string(), doc[key]["is_zero"].to_string()]);
    }
    Ok(out)
}
