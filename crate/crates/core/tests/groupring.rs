mod common;

use std::collections::HashSet;

use proptest::prelude::*;
use rand::Rng;
use rbloch_core::rings::{prime_power, Ring};
use rbloch_core::scissors::ScissorsTower;
use rbloch_core::{Character, GModule, GroupRingElement, Int, PresentedModule};

use common::rng;

#[test]
fn augmentation_of_pf_and_p_plus() {
    for m in 4..=125u64 {
        let Some((p, _)) = prime_power(m) else { continue };
        let descs = if p == 2 { vec![format!("F_{m}")] } else { vec![format!("F_{m}"), format!("Z/{m}")] };
        for d in descs {
            let r = Ring::parse(&d).unwrap();
            let sq = r.square_classes();
            for u in r.units() {
                let g = sq.class_of(u);
                assert_eq!(GroupRingElement::pf(g).augmentation(), 0);
                assert_eq!(GroupRingElement::p_plus(g).augmentation(), 2);
                assert_eq!(GroupRingElement::p_minus(g).augmentation(), 0);
            }
        }
    }
}

/// The regular permutation module `(Z/n)^(2^rank)`.
fn regular(n: i64, rank: usize) -> GModule {
    let size = 1usize << rank;
    let module = PresentedModule::from_factors(&vec![Int::from(n); size]);
    let perm: Vec<Vec<usize>> = (0..rank).map(|i| (0..size).map(|j| j ^ (1 << i)).collect()).collect();
    GModule::permutation(module, rank, &perm)
}

fn std_elements(m: &PresentedModule) -> Vec<Vec<Int>> {
    let mut out = vec![Vec::new()];
    for d in m.factors() {
        let d = d.to_i64().unwrap();
        out = out
            .into_iter()
            .flat_map(|v: Vec<Int>| (0..d).map(move |c| [v.clone(), vec![Int::from(c)]].concat()))
            .collect();
    }
    out
}

fn add_std(m: &PresentedModule, a: &[Int], b: &[Int]) -> Vec<Int> {
    let mut s: Vec<Int> = a.iter().zip(b).map(|(x, y)| x + y).collect();
    m.reduce_std(&mut s);
    s
}

/// `I^chi M` by closure, in standard coordinates.
fn i_chi_brute(m: &GModule, chi: Character) -> HashSet<Vec<Int>> {
    let pm = &m.module;
    let mut gens = Vec::new();
    for i in 0..m.rank() {
        for g in pm.std_generators() {
            let mut v = m.act(1 << i, &g);
            for (a, b) in v.iter_mut().zip(&g) {
                *a -= &(b * &Int::from(chi.value(1 << i)));
            }
            gens.push(pm.normal_form(&v));
        }
    }
    let zero = vec![Int::ZERO; pm.std_len()];
    let mut seen = HashSet::from([zero.clone()]);
    let mut stack = vec![zero];
    while let Some(x) = stack.pop() {
        for g in &gens {
            let y = add_std(pm, &x, g);
            if seen.insert(y.clone()) {
                stack.push(y);
            }
        }
    }
    seen
}

fn projector(rank: usize, chi: Character) -> GroupRingElement {
    (0..rank).fold(GroupRingElement::one(), |acc, i| {
        let g = 1u64 << i;
        acc.mul(&GroupRingElement::one().add(&GroupRingElement::term(g, chi.value(g))))
    })
}

/// Membership in `I^chi M` three ways, for every element of an odd module.
fn check_upp(m: &GModule) {
    let pm = &m.module;
    let order = pm.order().unwrap().to_i64().unwrap();
    assert!(order % 2 == 1 && order <= 729, "order {order}");
    for chi in Character::all(m.rank()) {
        let brute = i_chi_brute(m, chi);
        let comp = m.eigen_component(chi);
        let e = projector(m.rank(), chi);
        for y in std_elements(pm) {
            let x = pm.from_std(&y);
            let nf = pm.normal_form(&x);
            let in_brute = brute.contains(&nf);
            assert_eq!(comp.is_zero(&nf), in_brute, "chi {:?} at {y:?}", chi.mask);
            assert_eq!(pm.is_zero(&m.act_ring(&e, &x)), in_brute, "chi {:?} at {y:?}", chi.mask);
        }
    }
}

fn check_decomposition(m: &GModule) {
    let mut parts: Vec<Int> = Vec::new();
    let mut free = 0;
    for chi in Character::all(m.rank()) {
        let c = m.eigen_component(chi);
        let s = c.structure().odd_part();
        free += s.free_rank;
        parts.extend(s.primary());
        for i in 0..m.rank() {
            for g in c.module.std_generators() {
                let mut v = c.act(1 << i, &g);
                for (a, b) in v.iter_mut().zip(&g) {
                    *a -= &(b * &Int::from(chi.value(1 << i)));
                }
                assert!(c.is_zero(&v));
            }
        }
    }
    parts.sort();
    let mut whole = m.structure().odd_part().primary();
    whole.sort();
    assert_eq!(free, m.structure().free_rank);
    assert_eq!(parts, whole);
}

#[test]
fn upp_criterion_on_permutation_modules() {
    for (n, rank) in [(3, 1), (5, 1), (9, 1), (27, 1), (3, 2), (5, 2)] {
        let m = regular(n, rank);
        check_upp(&m);
        check_decomposition(&m);
    }
}

#[test]
fn upp_criterion_on_random_quotients() {
    let mut g = rng(21);
    for _ in 0..40 {
        let rank = g.gen_range(1..=2);
        let n = if rank == 1 { [3, 5, 7, 9, 15, 21, 25, 27][g.gen_range(0..8)] } else { [3, 5][g.gen_range(0..2)] };
        let m = regular(n, rank);
        let rels: Vec<Vec<Int>> = (0..g.gen_range(0..=2))
            .map(|_| (0..1usize << rank).map(|_| Int::from(g.gen_range(-n..n))).collect())
            .collect();
        let q = m.quotient(&rels);
        check_upp(&q);
        check_decomposition(&q);
    }
}

#[test]
fn upp_criterion_on_odd_refined_scissors_groups() {
    let mut tested = 0;
    for d in ["F_5", "F_7", "F_8", "F_9", "F_11", "F_13", "F_16", "F_17", "F_19", "F_25", "F_5[t]/(t^2)"] {
        let t = ScissorsTower::parse(d).unwrap();
        check_decomposition(&t.rp.odd_part());
        let odd_rb = t.refined_bloch().0.odd_part();
        check_decomposition(&odd_rb);
        let order = odd_rb.module.order().unwrap();
        if odd_rb.rank() > 0 && order > Int::ONE && order <= Int::from(729) {
            check_upp(&odd_rb);
            tested += 1;
        }
    }
    assert!(tested >= 3, "{tested}");
}

fn element(rank: usize) -> impl Strategy<Value = GroupRingElement> {
    prop::collection::vec((0u64..1 << rank, -5i64..=5), 0..6).prop_map(|terms| {
        let mut e = GroupRingElement::zero();
        for (g, c) in terms {
            e.add_term(g, c);
        }
        e
    })
}

proptest! {
    #[test]
    fn group_ring_axioms(a in element(3), b in element(3), c in element(3), g in 0u64..8, mask in 0u64..8) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).augmentation(), a.augmentation() * b.augmentation());
        let chi = Character { mask };
        prop_assert_eq!(a.mul(&b).eval(chi), a.eval(chi) * b.eval(chi));
        prop_assert_eq!(GroupRingElement::class(g).mul(&GroupRingElement::class(g)), GroupRingElement::one());
        prop_assert_eq!(a.sub(&a), GroupRingElement::zero());
        prop_assert_eq!(a.mul(&GroupRingElement::one()), a.clone());
    }

    #[test]
    fn characters_are_multiplicative(mask in 0u64..16, g in 0u64..16, h in 0u64..16) {
        let chi = Character { mask };
        prop_assert_eq!(chi.value(g ^ h), chi.value(g) * chi.value(h));
        prop_assert_eq!(chi.value(0), 1);
    }
}
