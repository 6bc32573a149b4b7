//! Worked values checked against brute-force oracles, then frozen.

mod common;

use std::collections::HashSet;

use rbloch_core::configspace::orbit_census;
use rbloch_core::modz::{smith_diagonal, IntMatrix};
use rbloch_core::rings::{Elem, Ring};
use rbloch_core::scissors::verify::{phi_has_root, tnorm};
use rbloch_core::scissors::ScissorsTower;
use rbloch_core::{Character, GroupRingElement, Int, PresentedModule, Structure};

fn units_by_search(r: &Ring) -> Vec<Elem> {
    r.elements().filter(|&a| r.elements().any(|b| r.mul(a, b) == r.one())).collect()
}

fn squares_by_search(r: &Ring) -> HashSet<Elem> {
    units_by_search(r).iter().map(|&u| r.mul(u, u)).collect()
}

fn ints(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| Int::from(x)).collect()
}

#[test]
fn unit_count_of_truncated_polynomials() {
    let r = Ring::parse("F_5[t]/(t^3)").unwrap();
    assert_eq!(r.size(), 125);
    assert_eq!(units_by_search(&r).len(), 100);
    assert_eq!(r.num_units(), 100);
}

#[test]
fn w_sets() {
    for (d, w) in [("F_5", vec![2, 3, 4]), ("Z/9", vec![2, 5, 8])] {
        let r = Ring::parse(d).unwrap();
        let units: HashSet<Elem> = units_by_search(&r).into_iter().collect();
        let oracle: Vec<Elem> =
            r.elements().filter(|&a| units.contains(&a) && units.contains(&r.sub(r.one(), a))).collect();
        assert_eq!(oracle, w);
        assert_eq!(r.w_set(), w);
    }
}

#[test]
fn square_classes_of_sample_units() {
    let f5 = Ring::parse("F_5").unwrap();
    let sq5 = squares_by_search(&f5);
    assert_eq!(sq5, HashSet::from([1, 4]));
    assert!(!sq5.contains(&2));
    assert_ne!(f5.square_classes().class_of(2), 0);

    let z49 = Ring::parse("Z/49").unwrap();
    let f7 = z49.residue_field();
    assert!(!squares_by_search(&z49).contains(&3));
    assert!(!squares_by_search(&f7).contains(&z49.residue(3)));
    assert_ne!(z49.square_classes().class_of(3), 0);
    assert_eq!(z49.square_classes().class_of(3), f7.square_classes().class_of(z49.residue(3)));
}

#[test]
fn small_smith_forms() {
    let m = IntMatrix::from_dense(2, &[vec![2i64, 4], vec![6, 8]]);
    assert_eq!(common::naive_snf(&[vec![2, 4], vec![6, 8]]), vec![2, 4]);
    assert_eq!(smith_diagonal(&m), ints(&[2, 4]));
    let m = IntMatrix::from_dense(2, &[vec![2i64, 0], vec![0, 3]]);
    assert_eq!(common::naive_snf(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
    assert_eq!(PresentedModule::from_matrix(&m).structure(), Structure::from_factors(&ints(&[6])));
}

#[test]
fn kernel_and_image_of_maps_between_cyclic_groups() {
    let z12 = PresentedModule::from_factors(&ints(&[12]));
    let z4 = PresentedModule::from_factors(&ints(&[4]));
    let red = vec![ints(&[1])];
    let kernel = z12.submodule(&z12.kernel_generators(&red, &z4));
    assert_eq!((0..12u64).filter(|x| x % 4 == 0).count(), 3);
    assert_eq!(kernel.structure(), Structure::from_factors(&ints(&[3])));

    let times3 = vec![ints(&[3])];
    let image = z12.submodule(&z12.image_generators(&times3, 1));
    assert_eq!(common::ker_im_brute(&[12], &[vec![3]]).1, 4);
    assert_eq!(image.structure(), Structure::from_factors(&ints(&[4])));
}

#[test]
fn product_of_two_augmentation_generators_in_f5() {
    let r = Ring::parse("F_5").unwrap();
    let sq = r.square_classes();
    let (g2, g3, g6) = (sq.class_of(2), sq.class_of(3), sq.class_of(r.mul(2, 3)));
    assert_eq!(g6, 0);
    let lhs = GroupRingElement::pf(g2).mul(&GroupRingElement::pf(g3));
    let mut rhs = GroupRingElement::class(g6);
    rhs.add_term(g2, -1);
    rhs.add_term(g3, -1);
    rhs.add_term(0, 1);
    assert_eq!(lhs, rhs);
    assert_eq!(rhs, GroupRingElement::term(0, 2).add(&GroupRingElement::term(g2, -2)));
}

#[test]
fn character_counts() {
    let r = Ring::parse("F_5[t]/(t^2)").unwrap();
    assert_eq!(Character::all(r.square_classes().rank()).len(), 2);
}

#[test]
fn eigen_components_of_odd_refined_pre_bloch_groups() {
    for d in ["F_7", "F_11"] {
        let t = ScissorsTower::parse(d).unwrap();
        let m = t.rp.odd_part();
        let whole = m.structure().odd_part();
        let comps: Vec<Structure> =
            Character::all(m.rank()).into_iter().map(|c| m.eigen_component(c).structure().odd_part()).collect();
        let mut parts: Vec<Int> = comps.iter().flat_map(|s| s.primary()).collect();
        parts.sort();
        assert_eq!(parts, whole.primary(), "{d}");
        assert_eq!(comps.iter().map(|s| s.free_rank).sum::<usize>(), whole.free_rank, "{d}");
        let aug = m.augmentation_submodule().0.structure().odd_part();
        assert_eq!(aug.free_rank + comps[0].free_rank, whole.free_rank);
        let mut ap = aug.primary();
        ap.extend(comps[0].primary());
        ap.sort();
        assert_eq!(ap, whole.primary(), "{d}");
    }
    let t = ScissorsTower::parse("F_7").unwrap();
    assert_eq!(t.rp.odd_part().structure().odd_part(), Structure { free_rank: 1, torsion: vec![] });
    let t = ScissorsTower::parse("F_11").unwrap();
    assert_eq!(t.rp.odd_part().structure().odd_part(), Structure { free_rank: 1, torsion: ints(&[3]) });
}

#[test]
fn kv_quotients_match_the_residue_field() {
    for d in ["F_5[t]/(t^2)", "Z/49"] {
        let t = ScissorsTower::parse(d).unwrap();
        let tk = ScissorsTower::build(t.ring().residue_field()).unwrap();
        let quotient = t.reduced().kv_quotient(&t).structure();
        let residue = tk.reduced().rp_bar.structure();
        assert_eq!(quotient, residue, "{d}");
    }
    let f5 = ScissorsTower::parse("F_5").unwrap();
    assert!(f5.reduced().kv(&f5).0.structure().is_trivial());
}

#[test]
fn orbit_counts() {
    let c = orbit_census(&Ring::parse("F_5").unwrap(), 3).unwrap();
    assert_eq!(c.sl2_orbits, 2);
    let c = orbit_census(&Ring::parse("F_5").unwrap(), 4).unwrap();
    assert_eq!((c.sl2_orbits, c.z_count), (6, 3));
    let c = orbit_census(&Ring::parse("Z/9").unwrap(), 3).unwrap();
    assert_eq!(c.sl2_orbits, 2);
}

#[test]
fn norm_subgroup_of_f7() {
    let ring = Ring::parse("F_7").unwrap();
    let r: &Ring = &ring;
    let units = units_by_search(r);
    let phi = |a: Elem| r.add(r.sub(r.mul(a, a), a), r.one());
    let gens: Vec<Elem> = r
        .w_set()
        .into_iter()
        .filter(|&a| units.contains(&phi(a)))
        .flat_map(|a| units.iter().flat_map(move |&u| [1, -1].map(|s| (a, u, s))))
        .map(|(a, u, s)| {
            let x = r.mul(phi(a), r.mul(u, u));
            if s == 1 { x } else { r.neg(x) }
        })
        .collect();
    let mut group: HashSet<Elem> = HashSet::from([r.one()]);
    loop {
        let next: HashSet<Elem> = group.iter().flat_map(|&m| gens.iter().map(move |&g| r.mul(m, g))).chain(group.iter().copied()).collect();
        if next.len() == group.len() {
            break;
        }
        group = next;
    }
    let (members, _) = tnorm(r);
    assert_eq!(members.iter().copied().collect::<HashSet<_>>(), group);
    assert_eq!(members.len(), 6);
    assert!(phi_has_root(r));
}
