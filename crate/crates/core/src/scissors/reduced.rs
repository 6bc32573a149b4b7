use crate::groupring::GModule;
use crate::modz::{Int, PresentedModule, SparseRow};
use crate::rings::Elem;

use super::tower::{Element, ScissorsTower};

/// Submodules and quotients of `RP(A)` attached to the cocycles and the constant.
///
/// `RP~`, `RP-` and `P^` are presented on standard generators of their parents,
/// so their projections are normal forms.
#[derive(Debug)]
pub struct Reduced {
    /// `K_1`, `K_2`, `D_A` as `Z[G]`-submodules with generator images in `RP(A)`.
    pub k1: (GModule, Vec<Element>),
    pub k2: (GModule, Vec<Element>),
    pub d: (GModule, Vec<Element>),
    /// `RP~(A) = RP(A) / K_1`.
    pub rp_tilde: GModule,
    /// `RP-(A) = RP(A) / (K_1 + D_A)`.
    pub rp_bar: GModule,
    /// `Z[G] / p^+(-1) Z[G]`.
    pub qzg: PresentedModule,
    /// Kernel of `lambda~_1` with generator images in `RP~(A)` coordinates.
    pub qker: (GModule, Vec<Vec<Int>>),
    /// `asym^2(A^x) / Q_A`, on standard generators of `asym^2`.
    pub qasym: PresentedModule,
    /// Kernel of `lambda~_2` on `qker`, with generator images in `qker` coordinates.
    pub qrb: (GModule, Vec<Vec<Int>>),
    /// `P^(A) = P(A) / <[x] + [x^-1]>`.
    pub p_hat: PresentedModule,
    /// Images of the generators of `qker` in `P^(A)`.
    pub qker_to_p_hat: Vec<Vec<Int>>,
}

impl Reduced {
    pub fn new(t: &ScissorsTower) -> Self {
        let ring = t.ring();
        let units = ring.units();
        let psi1: Vec<Element> = units.iter().map(|&x| t.psi(1, x).unwrap()).collect();
        let psi2: Vec<Element> = units.iter().map(|&x| t.psi(2, x).unwrap()).collect();
        let c = t.c_const();
        let k1 = t.rp.submodule(&psi1);
        let k2 = t.rp.submodule(&psi2);
        let d = t.rp.submodule(std::slice::from_ref(&c));
        let rp_tilde = t.rp.quotient(&psi1);
        let mut bar_gens = psi1.clone();
        bar_gens.push(c);
        let rp_bar = t.rp.quotient(&bar_gens);

        let rank = t.rank();
        let ng = 1usize << rank;
        let m1 = t.class_of(ring.neg(ring.one()));
        let qzg = PresentedModule::new(
            ng,
            (0..ng)
                .map(|g| SparseRow::from_pairs([(g, 1i64), (g ^ m1 as usize, 1)]))
                .collect(),
        );
        let lifts = t.rp.module.std_generators();
        let l1: Vec<Vec<Int>> = lifts.iter().map(|l| t.lambda1(l)).collect();
        let qker = rp_tilde.kernel(&l1, &qzg);

        let q_a: Vec<Vec<Int>> = units.iter().map(|&x| t.asym.circ(x, ring.neg(x))).collect();
        let qasym = t.asym.module.quotient(&q_a);
        let lift_qker: Vec<Element> = qker.1.iter().map(|y| t.rp.module.from_std(y)).collect();
        let l2: Vec<Vec<Int>> =
            lift_qker.iter().map(|v| t.asym.module.normal_form(&t.lambda2(v))).collect();
        let qrb = qker.0.kernel(&l2, &qasym);

        let inv_pairs: Vec<Vec<Int>> = t
            .w_set()
            .iter()
            .map(|&x| {
                let mut v = t.p_bracket(x);
                v[t.w_set().iter().position(|&y| y == ring.inv(x).unwrap()).unwrap()] += &Int::ONE;
                v
            })
            .collect();
        let p_hat = t.p.quotient(&inv_pairs);
        let qker_to_p_hat = lift_qker.iter().map(|v| t.p.normal_form(&t.to_p(v))).collect();

        Reduced { k1, k2, d, rp_tilde, rp_bar, qzg, qker, qasym, qrb, p_hat, qker_to_p_hat }
    }

    /// Projection `RP(A) -> RP~(A)`.
    pub fn to_tilde(&self, t: &ScissorsTower, v: &[Int]) -> Vec<Int> {
        self.rp_tilde.normal_form(&t.rp.normal_form(v))
    }

    /// Projection `RP(A) -> RP-(A)`.
    pub fn to_bar(&self, t: &ScissorsTower, v: &[Int]) -> Vec<Int> {
        self.rp_bar.normal_form(&t.rp.normal_form(v))
    }

    pub fn zero_in_tilde(&self, t: &ScissorsTower, v: &[Int]) -> bool {
        self.rp_tilde.is_zero(&t.rp.normal_form(v))
    }

    pub fn zero_in_bar(&self, t: &ScissorsTower, v: &[Int]) -> bool {
        self.rp_bar.is_zero(&t.rp.normal_form(v))
    }

    /// `K_V(A)` inside `RP-(A)`, generated by `[au] - [a]`, `a` in `W_A`, `u` in `U_1`,
    /// with generator images in `RP-(A)` coordinates.
    pub fn kv(&self, t: &ScissorsTower) -> (GModule, Vec<Vec<Int>>) {
        self.rp_bar.submodule(&kv_generators(t))
    }

    /// `RP-(A) / K_V(A)`.
    pub fn kv_quotient(&self, t: &ScissorsTower) -> GModule {
        self.rp_bar.quotient(&kv_generators(t))
    }
}

/// `[au] - [a]` in `RP-(A)` generator coordinates (the standard coordinates of `RP(A)`).
fn kv_generators(t: &ScissorsTower) -> Vec<Vec<Int>> {
    let ring = t.ring();
    let u1: Vec<Elem> = ring.principal_units().into_iter().filter(|&u| u != ring.one()).collect();
    let mut gens = Vec::new();
    for &a in t.w_set() {
        for &u in &u1 {
            let mut v = t.bracket(ring.mul(a, u));
            v.iter_mut().zip(t.bracket(a)).for_each(|(x, y)| *x -= &y);
            let y = t.rp.normal_form(&v);
            if y.iter().any(|c| !c.is_zero()) {
                gens.push(y);
            }
        }
    }
    gens
}
