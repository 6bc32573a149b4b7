use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::groupring::{Character, GModule, GroupRingElement};
use crate::modz::{Int, PresentedModule, Structure};
use crate::report::{Check, Report};
use crate::rings::{Elem, Ring, RingKind};

use super::tower::{add, scale, sub, Element, ScissorsTower};

/// Cached cocycle values on all units.
struct Ctx<'a> {
    t: &'a ScissorsTower,
    units: Vec<Elem>,
    psi: [Vec<Element>; 2],
    pos: Vec<usize>,
}

impl<'a> Ctx<'a> {
    fn new(t: &'a ScissorsTower) -> Self {
        let units = t.ring().units();
        let mut pos = vec![usize::MAX; t.ring().size() as usize];
        for (i, &u) in units.iter().enumerate() {
            pos[u as usize] = i;
        }
        let psi = [1u8, 2].map(|i| units.par_iter().map(|&x| t.psi(i, x).unwrap()).collect());
        Ctx { t, units, psi, pos }
    }

    fn psi(&self, i: u8, x: Elem) -> &Element {
        &self.psi[i as usize - 1][self.pos[x as usize]]
    }

    fn zero(&self, v: &[Int]) -> bool {
        self.t.is_zero(v)
    }

    fn f(&self, x: Elem) -> String {
        self.t.ring().format(x)
    }

    fn pairs(&self) -> Vec<(Elem, Elem)> {
        self.units.iter().flat_map(|&x| self.units.iter().map(move |&y| (x, y))).collect()
    }
}

fn check(id: &str, args: Value, pass: bool, hyp: bool) -> Check {
    Check { id: id.into(), args, pass, hypothesis_met: hyp }
}

/// Whether `X^2 - X + 1` has a root in `A`.
pub fn phi_has_root(ring: &Ring) -> bool {
    ring.elements().any(|a| phi(ring, a) == ring.zero())
}

fn phi(ring: &Ring, a: Elem) -> Elem {
    ring.add(ring.sub(ring.mul(a, a), a), ring.one())
}

/// `W~_A`: elements of `W_A` whose residue is not a root of `Phi`.
pub fn w_tilde(ring: &Ring) -> Vec<Elem> {
    ring.w_set().into_iter().filter(|&x| ring.is_unit(phi(ring, x))).collect()
}

/// A witness `x = sign * Phi(a) * u^2` for an element of the generating set of `N_A`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormWitness {
    pub x: Elem,
    pub a: Elem,
    pub u: Elem,
    pub sign: i8,
}

/// The subgroup `N_A` generated by `+-Phi(a) u^2`, `a` in `W~_A`, with one witness
/// per distinct generator.
pub fn tnorm(ring: &Ring) -> (Vec<Elem>, Vec<NormWitness>) {
    let units = ring.units();
    let mut seen = vec![false; ring.size() as usize];
    let mut witnesses = Vec::new();
    for a in w_tilde(ring) {
        let p = phi(ring, a);
        for &u in &units {
            let base = ring.mul(p, ring.mul(u, u));
            for (sign, x) in [(1i8, base), (-1, ring.neg(base))] {
                if !seen[x as usize] {
                    seen[x as usize] = true;
                    witnesses.push(NormWitness { x, a, u, sign });
                }
            }
        }
    }
    let mut inside = vec![false; ring.size() as usize];
    inside[ring.one() as usize] = true;
    let mut members = vec![ring.one()];
    for w in &witnesses {
        if inside[w.x as usize] {
            continue;
        }
        let mut frontier = members.clone();
        while let Some(m) = frontier.pop() {
            let y = ring.mul(m, w.x);
            if !inside[y as usize] {
                inside[y as usize] = true;
                members.push(y);
                frontier.push(y);
            }
        }
        // Close under all earlier generators as well.
        let mut i = 0;
        while i < members.len() {
            for v in &witnesses {
                if inside[v.x as usize] && v.x != w.x {
                    let y = ring.mul(members[i], v.x);
                    if !inside[y as usize] {
                        inside[y as usize] = true;
                        members.push(y);
                    }
                }
            }
            i += 1;
        }
    }
    members.sort_unstable();
    (members, witnesses)
}

/// `D_A` together with the data of the quotient `G~_A = A^x / N_A`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DModuleInfo {
    pub structure: Structure,
    pub phi_has_root: bool,
    pub n_order: usize,
    pub gtilde_order: usize,
    pub killed_by_three: bool,
    pub n_acts_trivially: bool,
}

pub fn dmod(t: &ScissorsTower) -> DModuleInfo {
    let ring = t.ring();
    let red = t.reduced();
    let c = t.c_const();
    let (n, witnesses) = tnorm(ring);
    let units = ring.num_units() as usize;
    let n_acts_trivially =
        witnesses.iter().all(|w| t.is_zero(&t.act(&t.pf(w.x), &c)));
    DModuleInfo {
        structure: red.d.0.structure(),
        phi_has_root: phi_has_root(ring),
        n_order: n.len(),
        gtilde_order: units / n.len(),
        killed_by_three: t.is_zero(&scale(&c, 3)),
        n_acts_trivially,
    }
}

fn big_residue(t: &ScissorsTower) -> bool {
    t.ring().residue_size() >= 10
}

/// Tower-level checks: Bloch groups of fields, coinvariants, `I_A RB(A) = 0`.
pub fn verify_bloch(t: &ScissorsTower) -> Report {
    let ring = t.ring();
    let mut r = Report::new("bloch", ring.name());
    let ng = 1usize << t.rank();
    let w = t.w_set();
    let pairs = w
        .iter()
        .map(|&x| w.iter().filter(|&&y| y != x && ring.is_unit(ring.sub(x, y))).count())
        .sum::<usize>();
    r.push(
        "relation-count",
        json!({"relations": t.relation_count(), "classes": ng, "pairs": pairs}),
        t.relation_count() == ng * pairs,
        true,
    );
    let coinv = t.rp.coinvariants().structure();
    r.push(
        "coinvariants",
        json!({"rp_coinvariants": coinv.to_string(), "p": t.p.structure().to_string()}),
        coinv == t.p.structure(),
        true,
    );
    let (b, _) = t.bloch();
    let (rb, rb_span) = t.refined_bloch();
    let is_field = ring.kind() == RingKind::Field;
    let q = ring.size() as i64;
    let expected = if q % 2 == 1 { (q + 1) / 2 } else { q + 1 };
    r.push(
        "bloch-structure",
        json!({"q": q, "expected": format!("Z/{expected}"), "found": b.structure().to_string()}),
        !is_field || b.structure() == Structure::from_factors(&[Int::from(expected)]),
        is_field,
    );
    r.push(
        "bloch-odd-equals-pre-bloch-odd",
        json!({"b": b.structure().odd_part().to_string(), "p": t.p.structure().odd_part().to_string()}),
        !is_field || b.structure().odd_part() == t.p.structure().odd_part(),
        is_field,
    );
    let aug_zero = (0..t.rank()).all(|i| {
        rb_span.iter().all(|s| t.is_zero(&t.act(&GroupRingElement::pf(1 << i), s)))
    });
    r.push("rbl0-trivial-action", json!({}), !is_field || aug_zero, is_field);
    r.push(
        "rbl0-odd-equals-bloch-odd",
        json!({"rb": rb.structure().odd_part().to_string(), "b": b.structure().odd_part().to_string()}),
        !is_field || rb.structure().odd_part() == b.structure().odd_part(),
        is_field,
    );
    let lambda_ok = rb_span.iter().all(|s| t.lambda_target().is_zero(&t.lambda(s)));
    r.push("rb-in-kernel", json!({}), lambda_ok, true);
    r
}

/// Cocycle identities for `psi_1` and `psi_2`, exhaustively over all units.
pub fn verify_cocycle_suite(t: &ScissorsTower) -> Report {
    let ctx = Ctx::new(t);
    let ring = t.ring();
    let one = ring.one();
    let m1 = ring.neg(one);
    let minus_one_square = t.class_of(m1) == 0;
    let eps: i64 = if minus_one_square { 1 } else { 2 };
    let mut r = Report::new("cocycle", ring.name());
    let pairs = ctx.pairs();
    let hyp_b = big_residue(t);
    let red = t.reduced();
    let ct = t.c_tilde();

    for i in [1u8, 2] {
        let pair_checks: Vec<Vec<Check>> = pairs
            .par_iter()
            .map(|&(x, y)| {
                let args = json!({"i": i, "x": ctx.f(x), "y": ctx.f(y)});
                let px = ctx.psi(i, x);
                let py = ctx.psi(i, y);
                let xy = ring.mul(x, y);
                let y2 = ring.mul(y, y);
                let mut out = Vec::new();
                let v = sub(&sub(ctx.psi(i, xy), &t.act_class(x, py)), px);
                out.push(check("cocycle", args.clone(), ctx.zero(&v), true));
                let v = sub(&t.act(&t.pf(x), py), &t.act(&t.pf(y), px));
                out.push(check("cocycle-1", args.clone(), ctx.zero(&v), true));
                let v = sub(&sub(ctx.psi(i, ring.mul(x, y2)), px), ctx.psi(i, y2));
                out.push(check("cocycle-2", args.clone(), ctx.zero(&v), true));
                let v = t.act(&t.pf(x), ctx.psi(i, y2));
                out.push(check("cocycle-3", args.clone(), ctx.zero(&v), true));
                let v = t.act(&t.pf(x).mul(&t.pf(y)), ctx.psi(i, m1));
                out.push(check("cocycle-7", args.clone(), ctx.zero(&v), true));
                let fx = t.act(&t.pf(x), py);
                let v = sub(&t.act_class(m1, &fx), &fx);
                out.push(check("cocycle-8", args.clone(), ctx.zero(&v), true));
                let v = scale(&sub(ctx.psi(i, ring.mul(x, y2)), px), eps);
                out.push(check("cocycle-9-well-defined", args.clone(), ctx.zero(&v), true));
                let v = scale(&sub(&sub(ctx.psi(i, xy), &t.act_class(x, py)), px), eps);
                out.push(check("cocycle-9-cocycle", args, ctx.zero(&v), true));
                out
            })
            .collect();
        r.extend(pair_checks.into_iter().flatten());

        r.push("cocycle-4", json!({"i": i}), ctx.zero(&scale(ctx.psi(i, m1), 2)), true);
        let single: Vec<Vec<Check>> = ctx
            .units
            .par_iter()
            .map(|&x| {
                let args = json!({"i": i, "x": ctx.f(x)});
                let px = ctx.psi(i, x);
                let xi = ring.inv(x).unwrap();
                let x2 = ring.mul(x, x);
                let mut out = Vec::new();
                let v = add(ctx.psi(i, x2), &t.act(&t.pf(x), ctx.psi(i, m1)));
                out.push(check("cocycle-5", args.clone(), ctx.zero(&v), true));
                let ok6 = ctx.zero(&scale(ctx.psi(i, x2), 2))
                    && (!minus_one_square || ctx.zero(ctx.psi(i, x2)));
                out.push(check("cocycle-6", args.clone(), ok6, true));
                let v = add(&t.act_class(x, ctx.psi(i, xi)), px);
                out.push(check("sus1-2", args.clone(), ctx.zero(&v), true));
                let v = sub(ctx.psi(i, xi), &t.act_class(m1, px));
                out.push(check("psi-inverse", args.clone(), ctx.zero(&v), true));
                let v = sub(&sub(px, ctx.psi(i, ring.neg(xi))), ctx.psi(i, m1));
                out.push(check("psi-minus-one", args.clone(), ctx.zero(&v), true));
                let l1 = t.lambda1(px);
                let expect = t.pf(ring.neg(x)).mul(&t.pf(x));
                let alt = GroupRingElement::p_plus(t.class_of(m1)).mul(&t.pf(x)).neg();
                out.push(check(
                    "sus2-1",
                    args.clone(),
                    l1 == expect.to_vec(t.rank()) && l1 == alt.to_vec(t.rank()),
                    true,
                ));
                let v = sub(&t.lambda2(px), &t.asym.circ(ring.neg(x), x));
                out.push(check("sus2-2", args.clone(), t.asym.module.is_zero(&v), true));
                if i == 2 {
                    let v = sub(&sub(&t.act_class(x, &ct), &ct), px);
                    out.push(check("bconst-1", args.clone(), red.zero_in_tilde(t, &v), hyp_b));
                    let ok = red.zero_in_tilde(t, &sub(px, ctx.psi(2, xi)))
                        && red.zero_in_tilde(t, &sub(px, ctx.psi(2, ring.neg(x))));
                    out.push(check("bconst-2", args, ok, hyp_b));
                }
                out
            })
            .collect();
        r.extend(single.into_iter().flatten());

        let u1: Vec<Elem> = ring.principal_units();
        let wit: Vec<Vec<Check>> = u1
            .par_iter()
            .map(|&u| {
                t.w_set()
                    .iter()
                    .map(|&w| {
                        let v = sub(&t.psi_with_witness(i, u, w), ctx.psi(i, u));
                        check(
                            "witness-independence",
                            json!({"i": i, "u": ctx.f(u), "w": ctx.f(w)}),
                            ctx.zero(&v),
                            true,
                        )
                    })
                    .collect()
            })
            .collect();
        r.extend(wit.into_iter().flatten());
    }
    r
}

/// `<<x>> C_A = psi_1(x) - psi_2(x)` and its companions, for every unit.
pub fn verify_key_identity(t: &ScissorsTower) -> Report {
    let ctx = Ctx::new(t);
    let ring = t.ring();
    let hyp = big_residue(t);
    let c = t.c_const();
    let ct = t.c_tilde();
    let mut r = Report::new("key-identity", ring.name());
    let checks: Vec<Vec<Check>> = ctx
        .units
        .par_iter()
        .map(|&x| {
            let args = json!({"x": ctx.f(x)});
            let lhs = t.act(&t.pf(x), &c);
            let v = add(&sub(&lhs, ctx.psi(1, x)), ctx.psi(2, x));
            let xi = ring.inv(x).unwrap();
            let w = add(&sub(&t.act(&t.pf(x), &ct), ctx.psi(2, x)), ctx.psi(1, xi));
            vec![
                check("df-1", args.clone(), ctx.zero(&v), hyp),
                check("cor-df", args, ctx.zero(&w), hyp),
            ]
        })
        .collect();
    r.extend(checks.into_iter().flatten());
    let (_, witnesses) = tnorm(ring);
    let checks: Vec<Check> = witnesses
        .par_iter()
        .map(|w| {
            check(
                "df-2",
                json!({"x": ctx.f(w.x), "a": ctx.f(w.a), "u": ctx.f(w.u), "sign": w.sign}),
                ctx.zero(&t.act(&t.pf(w.x), &c)),
                hyp,
            )
        })
        .collect();
    r.extend(checks);
    r
}

/// Constancy and order of `C~_A`, and vanishing of `C_A`.
pub fn verify_constants(t: &ScissorsTower) -> Report {
    let ctx = Ctx::new(t);
    let ring = t.ring();
    let one = ring.one();
    let m1 = ring.neg(one);
    let mut r = Report::new("constants", ring.name());
    let ct = t.c_tilde();
    let c = t.c_const();
    let w = t.w_set();
    let checks: Vec<Vec<Check>> = w
        .par_iter()
        .map(|&a| {
            let args = json!({"a": ctx.f(a)});
            let ca = t.c_at(a).unwrap();
            let b = ring.inv(ring.sub(one, ring.inv(a).unwrap())).unwrap();
            let mut alt = t.bracket(a);
            alt = add(&alt, &t.bracket_in(t.class_of(m1), b).unwrap());
            alt = sub(&alt, ctx.psi(1, ring.inv(ring.sub(one, a)).unwrap()));
            vec![
                check("constbl-constant", args.clone(), ctx.zero(&sub(&ca, &ct)), true),
                check("cconst-formula", args, ctx.zero(&sub(&alt, &c)), true),
            ]
        })
        .collect();
    r.extend(checks.into_iter().flatten());
    r.push(
        "constbl-in-rb",
        json!({}),
        t.lambda_target().is_zero(&t.lambda(&ct)),
        true,
    );
    r.push(
        "cconst-3",
        json!({}),
        ctx.zero(&sub(&scale(&ct, 3), ctx.psi(1, m1))),
        true,
    );
    r.push("cconst-6", json!({}), ctx.zero(&scale(&ct, 6)), true);
    let root = phi_has_root(ring);
    r.push(
        "cconst-root",
        json!({"phi_has_root": root}),
        !root || (ctx.zero(&c) && ctx.zero(&sub(&ct, ctx.psi(1, m1)))),
        root,
    );
    r.push(
        "pcconst",
        json!({"phi_has_root": root, "c_zero": ctx.zero(&c)}),
        root == ctx.zero(&c),
        true,
    );
    if ring.kind() == RingKind::Field {
        let q = ring.size();
        let p = ring.descriptor().p;
        let crit = q % 3 == 1 || p == 3;
        r.push(
            "pcconst-congruence",
            json!({"q": q, "criterion": crit}),
            crit == ctx.zero(&c),
            true,
        );
    }
    let info = dmod(t);
    let order_ok = match info.structure.order() {
        Some(o) => {
            let mut o = o;
            while Int::from(3).divides(&o) && !o.is_one() {
                o = o.div_exact(&Int::from(3));
            }
            o.is_one()
        }
        None => false,
    };
    r.push("d-order", json!({"structure": info.structure.to_string()}), order_ok, true);
    r.push("d-three", json!({}), info.killed_by_three, true);
    r.push(
        "d-zero-iff-root",
        json!({"phi_has_root": info.phi_has_root}),
        info.structure.is_trivial() == info.phi_has_root,
        true,
    );
    r.push(
        "n-acts-trivially",
        json!({"n_order": info.n_order, "gtilde_order": info.gtilde_order}),
        info.n_acts_trivially,
        big_residue(t),
    );
    r
}

/// Identities in `RP~(A)`, `RP-(A)` and the kernels of `lambda~_1`, `lambda~_2`.
pub fn verify_reduced(t: &ScissorsTower) -> Report {
    let ctx = Ctx::new(t);
    let ring = t.ring();
    let one = ring.one();
    let m1 = ring.neg(one);
    let red = t.reduced();
    let mut r = Report::new("reduced", ring.name());

    let checks: Vec<Vec<Check>> = t
        .w_set()
        .par_iter()
        .map(|&x| {
            let args = json!({"x": ctx.f(x)});
            let bx = t.bracket(x);
            let xi = ring.inv(x).unwrap();
            let bxi = t.bracket(xi);
            let ok1 = red.zero_in_bar(t, &add(&bxi, &t.act_class(m1, &bx)))
                && red.zero_in_bar(t, &add(&bxi, &t.act_class(x, &bx)));
            let ok2 = red.zero_in_bar(t, &t.act(&t.pf(ring.neg(x)), &bx));
            let b1 = t.bracket(ring.sub(one, x));
            let ok3 = red.zero_in_bar(t, &add(&b1, &t.act_class(m1, &bx)))
                && red.zero_in_bar(t, &sub(&b1, &bxi));
            let pp = t.act(&GroupRingElement::p_plus(t.class_of(m1)), &bx);
            let in_qker = red.qzg.is_zero(&t.lambda1(&pp));
            let two_x = scale(&t.p_bracket(x), 2);
            let maps_to_two = red.p_hat.is_zero(&sub(&t.p.normal_form(&t.to_p(&pp)), &t.p.normal_form(&two_x)));
            vec![
                check("pb-1", args.clone(), ok1, true),
                check("pb-2", args.clone(), ok2, true),
                check("pb-3", args.clone(), ok3, true),
                check("qrpbker-p-plus", args, in_qker && maps_to_two, true),
            ]
        })
        .collect();
    r.extend(checks.into_iter().flatten());

    let vanish: Vec<Check> = ctx
        .units
        .par_iter()
        .flat_map_iter(|&x| {
            [1u8, 2].map(|i| {
                check(
                    "psi-vanish-bar",
                    json!({"i": i, "x": ctx.f(x)}),
                    red.zero_in_bar(t, ctx.psi(i, x)),
                    i == 1 || big_residue(t),
                )
            })
        })
        .collect();
    r.extend(vanish);

    let qa: Vec<Check> = ctx
        .units
        .iter()
        .map(|&x| {
            let v = add(&t.lambda2(ctx.psi(1, x)), &t.asym.circ(x, ring.neg(x)));
            check("qrbl-qa", json!({"x": ctx.f(x)}), t.asym.module.is_zero(&v), true)
        })
        .collect();
    r.extend(qa);

    for (i, (k, span)) in [(1, &red.k1), (2, &red.k2)] {
        let images: Vec<Vec<Int>> = span.iter().map(|s| t.lambda1(s)).collect();
        let free = PresentedModule::free(1 << t.rank());
        let ker = k.module.kernel_generators(&images, &free);
        let ok = ker.iter().all(|c| k.module.is_zero(&scale(c, 4)));
        r.push("kf", json!({"i": i, "kernel_generators": ker.len()}), ok, true);
    }

    let lifts = t.rp.module.std_generators();
    let l1: Vec<Vec<Int>> = lifts.iter().map(|l| t.lambda1(l)).collect();
    r.push(
        "lambda-tilde-1-well-defined",
        json!({}),
        red.rp_tilde.module.is_hom(&l1, &red.qzg),
        true,
    );

    let (qker, _) = &red.qker;
    let img = qker.module.image_generators(&red.qker_to_p_hat, red.p_hat.ngens());
    let coker = red.p_hat.quotient(&img);
    let coker_s = coker.structure();
    let killed = coker_s.free_rank == 0 && coker_s.torsion.iter().all(|d| Int::from(2).divides(d) || d.is_one());
    r.push(
        "qrpbker-cokernel",
        json!({"p_hat": red.p_hat.structure().to_string(), "cokernel": coker_s.to_string()}),
        qker.module.is_hom(&red.qker_to_p_hat, &red.p_hat) && killed,
        true,
    );
    let kernel = qker.module.kernel_generators(&red.qker_to_p_hat, &red.p_hat);
    let lifts_q: Vec<Element> = red.qker.1.iter().map(|y| t.rp.module.from_std(y)).collect();
    let exact = kernel.iter().all(|k| {
        let mut v = t.zero();
        for (j, c) in k.iter().enumerate() {
            crate::modz::vec_add_scaled(&mut v, &lifts_q[j], c);
        }
        red.qasym.is_zero(&t.asym.module.normal_form(&t.lambda2(&v)))
    });
    r.push("qrpbker-exact", json!({"kernel_generators": kernel.len()}), exact, true);

    // RB(A) -> Q~RB(A) is onto with kernel killed by 4.
    let (rb, rb_span) = t.refined_bloch();
    let rb_img: Vec<Vec<Int>> = rb_span.iter().map(|s| red.to_tilde(t, s)).collect();
    let qrb_in_tilde: Vec<Vec<Int>> = red
        .qrb
        .1
        .iter()
        .map(|c| {
            let mut y = vec![Int::ZERO; red.rp_tilde.ngens()];
            for (j, x) in c.iter().enumerate() {
                crate::modz::vec_add_scaled(&mut y, &red.qker.1[j], x);
            }
            y
        })
        .collect();
    let by_rb = red.rp_tilde.module.quotient(&rb_img);
    let by_qrb = red.rp_tilde.module.quotient(&qrb_in_tilde);
    let onto = qrb_in_tilde.iter().all(|y| by_rb.is_zero(&red.rp_tilde.normal_form(y)))
        && rb_img.iter().all(|y| by_qrb.is_zero(&red.rp_tilde.normal_form(y)));
    let ker = rb.module.kernel_generators(&rb_img, &red.rp_tilde.module);
    let four = ker.iter().all(|k| rb.module.is_zero(&scale(k, 4)));
    r.push("qrbl-surjective", json!({}), onto, true);
    r.push("qrbl-kernel-four", json!({"kernel_generators": ker.len()}), four, true);
    r
}

/// Eigenspace decomposition of the odd part of `RP(A)`.
pub fn verify_eigen(t: &ScissorsTower) -> Report {
    let ring = t.ring();
    let mut r = Report::new("eigen", ring.name());
    let m = t.rp.odd_part();
    let whole = m.structure().odd_part();
    let chars = Character::all(t.rank());
    let comps: Vec<GModule> = chars.par_iter().map(|&chi| m.eigen_component(chi)).collect();
    let mut free = 0;
    let mut primary: Vec<Int> = Vec::new();
    for (chi, c) in chars.iter().zip(&comps) {
        let s = c.structure().odd_part();
        free += s.free_rank;
        primary.extend(s.primary());
        let killed = (0..t.rank()).all(|i| {
            c.module.std_generators().iter().all(|g| {
                let v = sub(&c.act(1 << i, g), &scale(g, chi.value(1 << i)));
                c.is_zero(&v)
            })
        });
        r.push(
            "component-killed",
            json!({"chi": chi.signs(t.rank()), "structure": s.to_string()}),
            killed,
            true,
        );
    }
    primary.sort();
    let mut whole_primary = whole.primary();
    whole_primary.sort();
    r.push(
        "odd-decomposition",
        json!({"odd_rp": whole.to_string()}),
        free == whole.free_rank && primary == whole_primary,
        true,
    );
    let chi0 = comps[0].structure().odd_part();
    let odd_p = t.p.structure().odd_part();
    r.push(
        "chi0-is-odd-p",
        json!({"chi0": chi0.to_string(), "odd_p": odd_p.to_string()}),
        chi0 == odd_p,
        true,
    );
    let (aug, _) = m.augmentation_submodule();
    let a = aug.structure().odd_part();
    let mut ap = a.primary();
    ap.extend(chi0.primary());
    ap.sort();
    r.push(
        "augmentation-complement",
        json!({"aug": a.to_string(), "chi0": chi0.to_string()}),
        a.free_rank + chi0.free_rank == whole.free_rank && ap == whole_primary,
        true,
    );
    r
}

/// Reduction of a residue class of square classes from `A` to its residue field.
fn class_to_residue(t: &ScissorsTower, tk: &ScissorsTower, g: u64) -> u64 {
    let ring = t.ring();
    let rep = t.square_classes().representative(ring, g);
    tk.class_of(ring.residue(rep))
}

/// `RP(A) -> RP(k)`, `<g>[x] -> <g bar>[x bar]`, in generator coordinates.
pub fn reduce_to_residue(t: &ScissorsTower, tk: &ScissorsTower, v: &[Int]) -> Element {
    let ring = t.ring();
    let nw = t.w_set().len();
    let mut out = tk.zero();
    for (idx, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let g = (idx / nw) as u64;
        let x = t.w_set()[idx % nw];
        let e = tk.bracket_in(class_to_residue(t, tk, g), ring.residue(x)).unwrap();
        crate::modz::vec_add_scaled(&mut out, &e, c);
    }
    out
}

/// Whether `U_1 = U_1^2`.
pub fn principal_units_are_squares(ring: &Ring) -> bool {
    let u1 = ring.principal_units();
    let mut sq = vec![false; ring.size() as usize];
    for &u in &u1 {
        sq[ring.mul(u, u) as usize] = true;
    }
    u1.iter().all(|&u| sq[u as usize])
}

/// `K_V(A)` and the isomorphism `RP-(A) / K_V(A) = RP-(k)`.
pub fn verify_kv(t: &ScissorsTower, tk: &ScissorsTower) -> Result<Report> {
    let ring = t.ring();
    if tk.ring().descriptor() != &ring.descriptor().residue_descriptor() {
        return Err(Error::Domain("second tower must be over the residue field".into()));
    }
    let mut r = Report::new("kv", ring.name());
    let red = t.reduced();
    let redk = tk.reduced();
    let (kv, kv_gens) = red.kv(t);
    let images: Vec<Vec<Int>> = t
        .rp
        .module
        .std_generators()
        .iter()
        .map(|l| tk.rp.normal_form(&reduce_to_residue(t, tk, l)))
        .collect();
    r.push(
        "kv-hom",
        json!({}),
        red.rp_bar.module.is_hom(&images, &redk.rp_bar.module),
        true,
    );
    let in_kernel = kv_gens.iter().all(|y| {
        let v = t.rp.module.from_std(y);
        redk.rp_bar.is_zero(&tk.rp.normal_form(&reduce_to_residue(t, tk, &v)))
    });
    r.push("kv-in-kernel", json!({}), in_kernel, true);
    let coker = redk.rp_bar.module.quotient(&images);
    r.push("kv-surjective", json!({"cokernel": coker.structure().to_string()}), coker.is_trivial(), true);
    let q = red.kv_quotient(t).structure();
    let target = redk.rp_bar.structure();
    r.push(
        "kv-quotient-iso",
        json!({"quotient": q.to_string(), "residue": target.to_string(), "kv": kv.structure().to_string()}),
        q == target,
        true,
    );
    if ring.kind() == RingKind::Field {
        r.push("kv-field-trivial", json!({}), kv.structure().is_trivial(), true);
    }
    Ok(r)
}

/// Vanishing of the nontrivial eigen component of the odd part of `K_V(A)`.
pub fn verify_prop_two(t: &ScissorsTower, tk: &ScissorsTower) -> Report {
    let ring = t.ring();
    let mut r = Report::new("prop-two", ring.name());
    let hyp = t.rank() == 1 && tk.rank() == 1 && principal_units_are_squares(ring);
    let (kv, _) = t.reduced().kv(t);
    let odd = kv.odd_part();
    for chi in Character::all(t.rank()).into_iter().filter(|c| !c.is_trivial()) {
        let s = odd.eigen_component(chi).structure().odd_part();
        r.push(
            "prop-two",
            json!({"chi": chi.signs(t.rank()), "component": s.to_string(), "kv": kv.structure().to_string()}),
            s.is_trivial(),
            hyp,
        );
    }
    r
}
