use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rbloch_core::funcfield::verify::random_function;
use rbloch_core::funcfield::{five_term, FunctionField, Place, Poly, RationalFunction, Specializer, Valuation};

fn field(q: u64) -> FunctionField {
    FunctionField::new(q).unwrap()
}

fn sample(f: &FunctionField, seed: u64, degree: usize) -> RationalFunction {
    random_function(f, &mut ChaCha8Rng::seed_from_u64(seed), degree)
}

fn places(q: u64) -> Vec<&'static str> {
    match q {
        5 => vec!["t", "inf", "t+1", "t^2+2"],
        7 => vec!["t", "inf", "t^2+1"],
        _ => vec!["t", "inf", "t+1"],
    }
}

/// `v_t` by counting vanishing low coefficients.
fn v_t_oracle(a: &RationalFunction) -> i64 {
    let low = |p: &Poly| p.0.iter().take_while(|&&c| c == 0).count() as i64;
    low(&a.num) - low(&a.den)
}

#[test]
fn valuation_oracles_at_zero_and_infinity() {
    for q in [5, 7, 9] {
        let f = field(q);
        let vt = Valuation::t_adic(&f);
        let vinf = Valuation::new(&f, Place::Infinity).unwrap();
        for s in 0..300 {
            let a = sample(&f, s, 5);
            assert_eq!(vt.valuation(&a).unwrap(), v_t_oracle(&a));
            assert_eq!(vinf.valuation(&a).unwrap(), a.den.degree() as i64 - a.num.degree() as i64);
        }
    }
}

#[test]
fn product_formula() {
    for q in [5, 7, 9] {
        let f = field(q);
        let pr = f.polys();
        for s in 0..100 {
            let a = sample(&f, 1000 + s, 5);
            let mut total = Valuation::new(&f, Place::Infinity).unwrap().valuation(&a).unwrap();
            let both = pr.mul(&a.num, &a.den);
            for (p, _) in pr.factor(&both) {
                let v = Valuation::new(&f, Place::Finite(p.clone())).unwrap();
                total += p.degree() as i64 * v.valuation(&a).unwrap();
            }
            assert_eq!(total, 0, "{}", f.format(&a));
        }
    }
}

#[test]
fn factorization_is_complete_and_irreducible() {
    for q in [5, 9] {
        let f = field(q);
        let pr = f.polys();
        for s in 0..80 {
            let a = sample(&f, 2000 + s, 6);
            if a.num.degree() < 1 {
                continue;
            }
            let factors = pr.factor(&a.num);
            let mut prod = pr.one();
            for (p, e) in &factors {
                assert!(pr.is_irreducible(p));
                assert_eq!(p.lead(), 1);
                prod = pr.mul(&prod, &pr.pow(p, *e as u64));
            }
            assert_eq!(prod, pr.monic(&a.num));
        }
        for c in 0..q as u32 {
            let lin = Poly(vec![c, 1]);
            assert!(pr.is_irreducible(&lin));
            let quad = pr.mul(&lin, &lin);
            assert!(!pr.is_irreducible(&quad));
        }
    }
}

#[test]
fn reducible_places_are_rejected() {
    let f = field(5);
    assert!(Valuation::parse(&f, "t^2+1").is_err());
    assert!(Valuation::parse(&f, "t^2+2").is_ok());
    assert!(Valuation::parse(&f, "1/t").is_err());
}

fn arb_seed() -> impl Strategy<Value = (u64, u64, usize)> {
    (any::<u64>(), any::<u64>(), 0usize..4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn valuation_axioms(q in prop::sample::select(vec![5u64, 7, 9]), (s1, s2, pi) in arb_seed()) {
        let f = field(q);
        let ps = places(q);
        let v = Valuation::parse(&f, ps[pi % ps.len()]).unwrap();
        let a = sample(&f, s1, 4);
        let b = sample(&f, s2, 4);
        let (va, vb) = (v.valuation(&a).unwrap(), v.valuation(&b).unwrap());
        prop_assert_eq!(v.valuation(&f.mul(&a, &b)).unwrap(), va + vb);
        let sum = f.add(&a, &b);
        if !sum.is_zero() {
            let vs = v.valuation(&sum).unwrap();
            prop_assert!(vs >= va.min(vb));
            if va != vb {
                prop_assert_eq!(vs, va.min(vb));
            }
        }
        prop_assert_eq!(v.valuation(&v.uniformizer()).unwrap(), 1);
        let k = v.residue_field();
        prop_assert_eq!(v.unit_residue(&f.mul(&a, &b)).unwrap(), k.mul(v.unit_residue(&a).unwrap(), v.unit_residue(&b).unwrap()));
        if va == 0 && vb == 0 {
            prop_assert_eq!(v.residue(&f.mul(&a, &b)).unwrap(), k.mul(v.residue(&a).unwrap(), v.residue(&b).unwrap()));
            if !sum.is_zero() && v.valuation(&sum).unwrap() == 0 {
                prop_assert_eq!(v.residue(&sum).unwrap(), k.add(v.residue(&a).unwrap(), v.residue(&b).unwrap()));
            }
        } else if va != 0 {
            prop_assert!(v.residue(&a).is_err());
        }
    }

    #[test]
    fn square_class_data_is_a_homomorphism(q in prop::sample::select(vec![5u64, 7, 9]), (s1, s2, pi) in arb_seed()) {
        let f = field(q);
        let ps = places(q);
        let v = Valuation::parse(&f, ps[pi % ps.len()]).unwrap();
        let sp = Specializer::new(v).unwrap();
        let a = sample(&f, s1, 4);
        let b = sample(&f, s2, 4);
        let (ea, ca) = sp.class_data(&a).unwrap();
        let (eb, cb) = sp.class_data(&b).unwrap();
        prop_assert_eq!(sp.class_data(&f.mul(&a, &b)).unwrap(), ((ea + eb) % 2, ca ^ cb));
        prop_assert_eq!(sp.class_data(&f.mul(&a, &f.mul(&b, &b))).unwrap(), (ea, ca));
        prop_assert_eq!(sp.valuation().square_class_data(&a).unwrap(), (ea, ca));
    }

    #[test]
    fn action_is_a_group_action_and_symbols_are_equivariant(q in prop::sample::select(vec![5u64, 7, 9]), (s1, s2, pi) in arb_seed(), s3 in any::<u64>()) {
        let f = field(q);
        let ps = places(q);
        let sp = Specializer::new(Valuation::parse(&f, ps[pi % ps.len()]).unwrap()).unwrap();
        let a = sample(&f, s1, 3);
        let b = sample(&f, s2, 3);
        let c = sample(&f, s3, 3);
        prop_assume!(!f.is_one(&a));
        let x = sp.symbol(&a).unwrap();
        let bc = sp.act(&b, &sp.act(&c, &x).unwrap()).unwrap();
        prop_assert_eq!(sp.normal_form(&bc), sp.normal_form(&sp.act(&f.mul(&b, &c), &x).unwrap()));
        let bb = sp.act(&f.mul(&b, &b), &x).unwrap();
        prop_assert_eq!(sp.normal_form(&bb), sp.normal_form(&x));
        let term = sp.parse_expr(&format!("{{{}}}[{}]", f.format(&b), f.format(&a))).unwrap();
        prop_assert_eq!(sp.normal_form(&sp.specialize(&term).unwrap()), sp.normal_form(&sp.act(&b, &x).unwrap()));
    }

    #[test]
    fn five_term_relations_specialize_to_zero(q in prop::sample::select(vec![5u64, 7, 9]), (s1, s2, pi) in arb_seed()) {
        let f = field(q);
        let ps = places(q);
        let sp = Specializer::new(Valuation::parse(&f, ps[pi % ps.len()]).unwrap()).unwrap();
        let x = sample(&f, s1, 3);
        let y = sample(&f, s2, 3);
        let valid = [&x, &y].iter().all(|z| !f.is_one(z)) && x != y;
        prop_assume!(valid);
        let rel = five_term(&f, &x, &y).unwrap();
        prop_assert!(sp.is_zero(&sp.specialize(&rel).unwrap()));
    }
}
