//! Checks of the specialization map.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::induced::{five_term, Specializer, Term};
use super::place::Valuation;
use super::poly::Poly;
use super::ratfunc::{FunctionField, RationalFunction};
use crate::error::Result;
use crate::report::Report;
use crate::scissors::ScissorsTower;

/// The case labels of the well-definedness argument, in order.
pub const CASES: [&str; 20] = [
    "i-a", "i-b", "i-c", "i-d", "i-e", "i-f", "i-g", "i-h", "ii-a", "ii-b", "iii", "iv-a", "iv-b",
    "v-a", "v-b", "vi-a", "vi-b", "vii", "viii", "ix",
];

/// Case class of the pair `(x, y)` with respect to `v`.
pub fn classify(v: &Valuation, x: &RationalFunction, y: &RationalFunction) -> Result<&'static str> {
    let f = v.field();
    let (vx, vy) = (v.valuation(x)?, v.valuation(y)?);
    let one = v.residue_field().one();
    let principal = |a: &RationalFunction, va: i64| -> Result<bool> { Ok(va == 0 && v.residue(a)? == one) };
    let (ux, uy) = (principal(x, vx)?, principal(y, vy)?);
    Ok(match (vx.signum(), vy.signum()) {
        (0, 0) => match (ux, uy) {
            (true, true) => {
                let a = v.valuation(&f.sub(&f.one(), x))?;
                let b = v.valuation(&f.sub(&f.one(), y))?;
                if a != b { "ii-a" } else { "ii-b" }
            }
            (false, true) => "vii",
            (true, false) => "viii",
            (false, false) => "ix",
        },
        (0, s) => match (ux, s > 0) {
            (true, _) => "iii",
            (false, true) => "v-a",
            (false, false) => "v-b",
        },
        (s, 0) => match (uy, s > 0) {
            (true, true) => "iv-a",
            (true, false) => "iv-b",
            (false, true) => "vi-a",
            (false, false) => "vi-b",
        },
        _ => {
            if vx == vy {
                if vx > 0 { "i-a" } else { "i-b" }
            } else if vx > vy {
                if vy > 0 {
                    "i-c"
                } else if vx > 0 {
                    "i-d"
                } else {
                    "i-e"
                }
            } else if vx > 0 {
                "i-f"
            } else if vy > 0 {
                "i-g"
            } else {
                "i-h"
            }
        }
    })
}

/// Pairs covering every case class, built from the uniformizer and a constant `c != 0, 1`.
pub fn crafted_pairs(v: &Valuation) -> Vec<(RationalFunction, RationalFunction)> {
    let f = v.field();
    let base = f.base();
    let c = f.constant(if base.characteristic_residue() == 2 {
        base.field_tables().generator()
    } else {
        base.from_int(2)
    });
    let one = f.one();
    let p = v.uniformizer();
    let pi = f.inv(&p).unwrap();
    let p2 = f.mul(&p, &p);
    let pi2 = f.mul(&pi, &pi);
    let cp = f.mul(&c, &p);
    let one_p = f.add(&one, &p);
    let pairs = vec![
        (p.clone(), cp.clone()),
        (pi.clone(), f.mul(&c, &pi)),
        (p2.clone(), p.clone()),
        (p.clone(), pi.clone()),
        (pi.clone(), pi2.clone()),
        (p.clone(), p2.clone()),
        (pi.clone(), p.clone()),
        (pi2, pi.clone()),
        (one_p.clone(), f.add(&one, &p2)),
        (one_p.clone(), f.add(&one, &cp)),
        (one_p.clone(), p.clone()),
        (p.clone(), one_p.clone()),
        (pi.clone(), one_p.clone()),
        (c.clone(), p.clone()),
        (c.clone(), pi.clone()),
        (p.clone(), c.clone()),
        (pi, c.clone()),
        (c.clone(), one_p.clone()),
        (one_p, c.clone()),
        (c.clone(), f.add(&c, &p)),
        (c.clone(), f.mul(&c, &c)),
    ];
    pairs.into_iter().filter(|(x, y)| valid_pair(f, x, y)).collect()
}

fn valid_pair(f: &FunctionField, x: &RationalFunction, y: &RationalFunction) -> bool {
    !x.is_zero() && !y.is_zero() && !f.is_one(x) && !f.is_one(y) && x != y
}

fn random_poly(f: &FunctionField, rng: &mut ChaCha8Rng, degree: usize) -> Poly {
    let q = f.q() as u32;
    let mut c: Vec<u32> = (0..=degree).map(|_| rng.gen_range(0..q)).collect();
    while c.last() == Some(&0) {
        c.pop();
    }
    Poly(c)
}

/// A uniformly drawn `num / den` with both of degree at most `degree`, `num != 0`.
pub fn random_function(f: &FunctionField, rng: &mut ChaCha8Rng, degree: usize) -> RationalFunction {
    loop {
        let n = random_poly(f, rng, degree);
        let d = random_poly(f, rng, degree);
        if !n.is_zero() && !d.is_zero() {
            return f.fraction(&n, &d).unwrap();
        }
    }
}

fn random_symbol(f: &FunctionField, rng: &mut ChaCha8Rng, degree: usize) -> RationalFunction {
    loop {
        let a = random_function(f, rng, degree);
        if !f.is_one(&a) {
            return a;
        }
    }
}

fn sample_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Draws the `i`-th sample pair.
pub fn sample_pair(f: &FunctionField, seed: u64, i: u64, degree: usize) -> (RationalFunction, RationalFunction) {
    let mut rng = sample_rng(seed, i);
    loop {
        let x = random_function(f, &mut rng, degree);
        let y = random_function(f, &mut rng, degree);
        if valid_pair(f, &x, &y) {
            return (x, y);
        }
    }
}

/// Number of sampled and crafted pairs in one case class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseCoverage {
    pub case: String,
    pub sampled: usize,
    pub crafted: usize,
    pub failures: usize,
}

/// Options for [`verify_spec_relations`].
#[derive(Clone, Debug)]
pub struct SpecOptions {
    pub samples: usize,
    pub seed: u64,
    pub degree: usize,
    pub place: String,
    /// Number of random inputs for the equivariance and `lambda~_1` checks.
    pub aux_samples: usize,
}

impl Default for SpecOptions {
    fn default() -> Self {
        SpecOptions { samples: 10_000, seed: 1, degree: 4, place: "t".into(), aux_samples: 1000 }
    }
}

struct Outcome {
    case: &'static str,
    zero: bool,
    x: String,
    y: String,
}

fn five_term_outcome(s: &Specializer, x: &RationalFunction, y: &RationalFunction) -> Result<Outcome> {
    let f = s.field();
    let case = classify(s.valuation(), x, y)?;
    let zero = s.is_zero(&s.specialize(&five_term(f, x, y)?)?);
    Ok(Outcome { case, zero, x: f.format(x), y: f.format(y) })
}

/// Well-definedness of `S_v` on five-term relations over `F_q(t)`, plus the
/// equivariance, `lambda~_1`-compatibility and `RP-` vanishing properties.
pub fn verify_spec_relations(q: u64, opts: &SpecOptions) -> Result<(Report, Vec<CaseCoverage>)> {
    let f = FunctionField::new(q)?;
    let v = Valuation::parse(&f, &opts.place)?;
    let tower = Arc::new(ScissorsTower::build(v.residue_field().clone())?);
    let s = Specializer::with_tower(v, tower);
    let label = format!("F_{q}(t) at {}", s.valuation().label());
    let mut report = Report::new("spec", label);

    let crafted: Vec<Outcome> = crafted_pairs(s.valuation())
        .par_iter()
        .map(|(x, y)| five_term_outcome(&s, x, y))
        .collect::<Result<_>>()?;
    let sampled: Vec<Outcome> = (0..opts.samples as u64)
        .into_par_iter()
        .map(|i| {
            let (x, y) = sample_pair(&f, opts.seed, i, opts.degree);
            five_term_outcome(&s, &x, &y)
        })
        .collect::<Result<_>>()?;

    for o in &crafted {
        report.push("spec-crafted", json!({"case": o.case, "x": o.x, "y": o.y}), o.zero, true);
    }
    let mut coverage = Vec::new();
    for case in &CASES {
        let hits: Vec<&Outcome> = sampled.iter().filter(|o| o.case == *case).collect();
        let bad: Vec<&&Outcome> = hits.iter().filter(|o| !o.zero).collect();
        let crafted_hits: Vec<&Outcome> = crafted.iter().filter(|o| o.case == *case).collect();
        let failures = bad.len() + crafted_hits.iter().filter(|o| !o.zero).count();
        let examples: Vec<_> = bad.iter().take(3).map(|o| json!([o.x, o.y])).collect();
        report.push(
            "spec-sampled",
            json!({"case": case, "samples": hits.len(), "failures": bad.len(), "examples": examples}),
            bad.is_empty(),
            true,
        );
        report.push(
            "case-coverage",
            json!({"case": case, "sampled": hits.len(), "crafted": crafted_hits.len()}),
            !hits.is_empty() || !crafted_hits.is_empty(),
            true,
        );
        coverage.push(CaseCoverage {
            case: case.to_string(),
            sampled: hits.len(),
            crafted: crafted_hits.len(),
            failures,
        });
    }

    equivariance(&s, opts, &mut report)?;
    lambda_square(&s, opts, &mut report)?;
    kvv(&s, opts, &mut report)?;
    graded(&s, &mut report)?;
    Ok((report, coverage))
}

fn random_expr(f: &FunctionField, rng: &mut ChaCha8Rng, degree: usize) -> Vec<Term> {
    let n = rng.gen_range(1..=3);
    (0..n)
        .map(|_| Term {
            coeff: rng.gen_range(-3..=3),
            class: random_function(f, rng, degree),
            symbol: random_symbol(f, rng, degree),
        })
        .collect()
}

fn equivariance(s: &Specializer, opts: &SpecOptions, report: &mut Report) -> Result<()> {
    let f = s.field();
    let stream0 = 1u64 << 40;
    let bad: Vec<u64> = (0..opts.aux_samples as u64)
        .into_par_iter()
        .map(|i| -> Result<Option<u64>> {
            let mut rng = sample_rng(opts.seed, stream0 + i);
            let b = random_function(f, &mut rng, opts.degree);
            let e = random_expr(f, &mut rng, opts.degree);
            let moved: Vec<Term> =
                e.iter().map(|t| Term { class: f.mul(&b, &t.class), ..t.clone() }).collect();
            let lhs = s.specialize(&moved)?;
            let rhs = s.act(&b, &s.specialize(&e)?)?;
            let diff = s.add(&lhs, &s.scale(&rhs, -1));
            Ok((!s.is_zero(&diff)).then_some(i))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    report.push(
        "equivariance",
        json!({"samples": opts.aux_samples, "failures": bad.len()}),
        bad.is_empty(),
        true,
    );
    Ok(())
}

fn lambda_square(s: &Specializer, opts: &SpecOptions, report: &mut Report) -> Result<()> {
    let f = s.field();
    let stream0 = 2u64 << 40;
    let bad: Vec<String> = (0..opts.aux_samples as u64)
        .into_par_iter()
        .map(|i| -> Result<Option<String>> {
            let mut rng = sample_rng(opts.seed, stream0 + i);
            let a = random_symbol(f, &mut rng, opts.degree);
            let lhs = s.lambda1_symbol(&a)?;
            let rhs = s.lambda1_tilde(&s.symbol(&a)?);
            let same = lhs == rhs;
            Ok((!same).then(|| f.format(&a)))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    report.push(
        "qsv",
        json!({"samples": opts.aux_samples, "failures": bad.len(), "examples": &bad[..bad.len().min(3)]}),
        bad.is_empty(),
        true,
    );
    Ok(())
}

fn kvv(s: &Specializer, opts: &SpecOptions, report: &mut Report) -> Result<()> {
    let f = s.field();
    let v = s.valuation();
    let p = v.uniformizer();
    let stream0 = 3u64 << 40;
    let (mut principal, mut nonunit, mut bad) = (0usize, 0usize, 0usize);
    for i in 0..opts.aux_samples as u64 {
        let mut rng = sample_rng(opts.seed, stream0 + i);
        let r = random_function(f, &mut rng, opts.degree);
        let k = rng.gen_range(1..=3);
        let h = f.mul(&r, &f.pow(&p, k)?);
        let u = f.add(&f.one(), &h);
        if v.valuation(&h)? > 0 {
            principal += 1;
            if !s.is_zero_bar(&s.symbol(&u)?) {
                bad += 1;
            }
        }
        let a = random_symbol(f, &mut rng, opts.degree);
        if v.valuation(&a)? != 0 {
            nonunit += 1;
            if !s.is_zero_bar(&s.symbol(&a)?) {
                bad += 1;
            }
        }
    }
    report.push(
        "kvv",
        json!({"principal_units": principal, "nonunits": nonunit, "failures": bad}),
        bad == 0,
        true,
    );
    Ok(())
}

fn graded(s: &Specializer, report: &mut Report) -> Result<()> {
    let t = s.tower();
    let red = t.reduced();
    let p = s.valuation().uniformizer();
    let w = t.w_set().to_vec();
    let mut ok = true;
    for &x in &w {
        let e = super::induced::InducedElement { parts: [t.bracket(x), t.zero()] };
        let m = s.act(&p, &e)?;
        ok &= red.zero_in_tilde(t, &m.parts[0]) && m.parts[1] == e.parts[0];
        let back = s.act(&p, &m)?;
        ok &= back == e;
    }
    report.push(
        "graded-parts",
        json!({"structure": red.rp_tilde.structure().to_string(), "generators": w.len()}),
        ok,
        true,
    );
    Ok(())
}
