//! One pass/fail line per acceptance criterion.

mod common;

use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rbloch_core::configspace::{boundary_check, orbit_census};
use rbloch_core::funcfield::verify::{verify_spec_relations, SpecOptions};
use rbloch_core::rings::{prime_power, Ring};
use rbloch_core::scissors::verify::{
    verify_cocycle_suite, verify_constants, verify_eigen, verify_key_identity, verify_prop_two,
};
use rbloch_core::scissors::ScissorsTower;
use rbloch_core::{GroupRingElement, Int, Report, Structure};

const BLOCH_QS: [u64; 15] = [5, 7, 9, 11, 13, 17, 19, 23, 25, 27, 29, 31, 4, 8, 16];

struct Outcome {
    pass: bool,
    detail: String,
}

fn tower(d: &str) -> ScissorsTower {
    ScissorsTower::parse(d).unwrap_or_else(|e| panic!("{d}: {e}"))
}

fn field_towers() -> Vec<(u64, ScissorsTower)> {
    BLOCH_QS.iter().map(|&q| (q, ScissorsTower::build(Ring::field(q).unwrap()).unwrap())).collect()
}

fn failures(reports: &[Report]) -> Vec<String> {
    reports
        .iter()
        .flat_map(|r| r.failures().into_iter().map(move |c| format!("{} {} {}", r.ring, c.id, c.args)))
        .take(5)
        .collect()
}

fn all_reports_pass(reports: &[Report], limit: Option<Duration>, elapsed: Duration) -> Outcome {
    let bad = failures(reports);
    let checks: usize = reports.iter().map(|r| r.checks.len()).sum();
    let in_time = limit.map_or(true, |l| elapsed <= l);
    Outcome {
        pass: bad.is_empty() && in_time,
        detail: if bad.is_empty() {
            format!("{checks} checks, {:.1?}", elapsed)
        } else {
            format!("{} failing, e.g. {:?}", bad.len(), bad)
        },
    }
}

fn c1_bloch(towers: &[(u64, ScissorsTower)], build: Duration) -> Outcome {
    let start = Instant::now();
    let mut wrong = Vec::new();
    for (q, t) in towers {
        let expected = if q % 2 == 1 { (q + 1) / 2 } else { q + 1 };
        let found = t.bloch().0.structure();
        if found != Structure::from_factors(&[Int::from(expected)]) {
            wrong.push(format!("F_{q}: {found}"));
        }
    }
    let elapsed = build + start.elapsed();
    Outcome {
        pass: wrong.is_empty() && elapsed <= Duration::from_secs(120),
        detail: format!("{} fields, {:.1?}{}", towers.len(), elapsed, if wrong.is_empty() { String::new() } else { format!(", wrong: {wrong:?}") }),
    }
}

fn c2_odd_parts(towers: &[(u64, ScissorsTower)]) -> Outcome {
    let wrong: Vec<u64> = towers
        .iter()
        .filter(|(_, t)| t.bloch().0.structure().odd_part() != t.p.structure().odd_part())
        .map(|(q, _)| *q)
        .collect();
    Outcome { pass: wrong.is_empty(), detail: format!("{} fields, mismatches {wrong:?}", towers.len()) }
}

fn c3_rbl0(towers: &[(u64, ScissorsTower)]) -> Outcome {
    let mut wrong = Vec::new();
    for (q, t) in towers {
        let span = &t.refined_bloch().1;
        let killed = (0..t.rank())
            .all(|i| span.iter().all(|s| t.is_zero(&t.act(&GroupRingElement::pf(1 << i), s))));
        if !killed {
            wrong.push(*q);
        }
    }
    Outcome { pass: wrong.is_empty(), detail: format!("{} fields, nonzero at {wrong:?}", towers.len()) }
}

fn c4_key_identity() -> Outcome {
    let start = Instant::now();
    let reports: Vec<Report> = ["F_11", "F_13", "F_25", "F_27", "Z/121", "Z/169", "F_11[t]/(t^2)"]
        .iter()
        .map(|d| verify_key_identity(&tower(d)))
        .collect();
    all_reports_pass(&reports, Some(Duration::from_secs(600)), start.elapsed())
}

fn c5_cocycle() -> Outcome {
    let start = Instant::now();
    let reports: Vec<Report> = ["F_5", "F_7", "F_9", "F_11", "F_13", "F_5[t]/(t^2)"]
        .iter()
        .map(|d| verify_cocycle_suite(&tower(d)))
        .collect();
    all_reports_pass(&reports, None, start.elapsed())
}

fn c6_constants() -> Outcome {
    let start = Instant::now();
    let reports: Vec<Report> = (4..=49u64)
        .filter(|&q| prime_power(q).is_some())
        .map(|q| verify_constants(&ScissorsTower::build(Ring::field(q).unwrap()).unwrap()))
        .collect();
    let bad: Vec<String> = reports
        .iter()
        .flat_map(|r| {
            r.checks
                .iter()
                .filter(|c| c.hypothesis_met && !c.pass)
                .map(move |c| format!("{} {}", r.ring, c.id))
        })
        .collect();
    Outcome { pass: bad.is_empty(), detail: format!("{} fields, {:.1?}, failing {bad:?}", reports.len(), start.elapsed()) }
}

fn c7_specialization() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for q in [5, 7, 9] {
        let start = Instant::now();
        match verify_spec_relations(q, &SpecOptions::default()) {
            Ok((report, coverage)) => {
                let empty: Vec<&str> =
                    coverage.iter().filter(|c| c.sampled + c.crafted == 0).map(|c| c.case.as_str()).collect();
                let failed: usize = coverage.iter().map(|c| c.failures).sum();
                let elapsed = start.elapsed();
                ok &= report.all_pass() && empty.is_empty() && failed == 0 && elapsed <= Duration::from_secs(300);
                parts.push(format!("q={q}: {} checks, empty cases {empty:?}, {:.1?}", report.checks.len(), elapsed));
            }
            Err(e) => {
                ok = false;
                parts.push(format!("q={q}: {e}"));
            }
        }
    }
    Outcome { pass: ok, detail: parts.join("; ") }
}

fn c8_orbits() -> Outcome {
    let mut bad = Vec::new();
    for d in ["F_5", "F_7", "Z/9", "F_4"] {
        let r: Arc<Ring> = Ring::parse(d).unwrap();
        for n in [3, 4, 5] {
            match orbit_census(&r, n) {
                Ok(c) if c.sl2_matches() && c.gl2_matches() => {}
                Ok(c) => bad.push(format!("{d} n={n}: {} vs {}x{}", c.sl2_orbits, c.square_classes, c.z_count)),
                Err(e) => bad.push(format!("{d} n={n}: {e}")),
            }
        }
    }
    Outcome { pass: bad.is_empty(), detail: format!("12 censuses, mismatches {bad:?}") }
}

fn c9_boundary() -> Outcome {
    let start = Instant::now();
    let reports: Vec<Report> = ["F_5", "F_7"].iter().map(|d| boundary_check(&tower(d))).collect();
    all_reports_pass(&reports, None, start.elapsed())
}

fn c10_eigen() -> Outcome {
    let start = Instant::now();
    let reports: Vec<Report> = ["F_5", "F_7", "F_9", "F_11", "F_13"].iter().map(|d| verify_eigen(&tower(d))).collect();
    all_reports_pass(&reports, None, start.elapsed())
}

fn c11_prop_two() -> Outcome {
    let start = Instant::now();
    let reports: Vec<Report> = ["F_5[t]/(t^2)", "F_13[t]/(t^2)", "Z/121"]
        .iter()
        .map(|d| {
            let t = tower(d);
            let tk = ScissorsTower::build(t.ring().residue_field()).unwrap();
            verify_prop_two(&t, &tk)
        })
        .collect();
    all_reports_pass(&reports, None, start.elapsed())
}

fn c12_oracles() -> Outcome {
    let start = Instant::now();
    let snf = common::snf_oracle_agrees(10_000, 1);
    let kerim = common::ker_im_exhaustive(10_000, 1);
    let pass = snf.is_ok() && kerim.is_ok();
    let detail = match (snf, kerim) {
        (Ok(()), Ok(n)) => format!("10000 random matrices, {n} invariant-factor lists, {:.1?}", start.elapsed()),
        (s, k) => format!("snf: {s:?}, kernel/image: {k:?}"),
    };
    Outcome { pass, detail }
}

fn main() -> ExitCode {
    let build = Instant::now();
    let towers = field_towers();
    let build = build.elapsed();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("Bloch groups of finite fields", Box::new(|| c1_bloch(&towers, build))),
        ("odd parts of P and B agree", Box::new(|| c2_odd_parts(&towers))),
        ("augmentation ideal kills RB(F_q)", Box::new(|| c3_rbl0(&towers))),
        ("key identity for every unit", Box::new(c4_key_identity)),
        ("cocycle suite", Box::new(c5_cocycle)),
        ("constants", Box::new(c6_constants)),
        ("specialization well-defined", Box::new(c7_specialization)),
        ("orbit bijections", Box::new(c8_orbits)),
        ("boundary consistency", Box::new(c9_boundary)),
        ("eigen decomposition", Box::new(c10_eigen)),
        ("nontrivial eigen part of odd K_V vanishes", Box::new(c11_prop_two)),
        ("oracle equivalence", Box::new(c12_oracles)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        if !o.pass {
            failed += 1;
        }
        println!("criterion {:>2} {}: {} ({})", i + 1, if o.pass { "PASS" } else { "FAIL" }, name, o.detail);
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
