use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::groupring::{GModule, GroupRingElement};
use crate::modz::{vec_add_scaled, Int, PresentedModule, SparseRow};
use crate::rings::{Elem, Ring, SquareClassGroup};

use super::asym::AsymSquare;
use super::reduced::Reduced;

/// An element of `RP(A)` in generator coordinates: index `g * |W| + i` holds
/// the coefficient of `<g>[w_i]`.
pub type Element = Vec<Int>;

/// `P(A)`, `RP(A)`, `B(A)`, `RB(A)` and the maps between them for one ring.
#[derive(Debug)]
pub struct ScissorsTower {
    ring: Arc<Ring>,
    sq: SquareClassGroup,
    rank: usize,
    w: Vec<Elem>,
    w_pos: Vec<u32>,
    class: Vec<u64>,
    pub rp: GModule,
    pub p: PresentedModule,
    pub asym: AsymSquare,
    relation_count: usize,
    lambda_target: PresentedModule,
    rb: OnceLock<(GModule, Vec<Element>)>,
    b: OnceLock<(PresentedModule, Vec<Vec<Int>>)>,
    reduced: OnceLock<Reduced>,
}

const NONE: u32 = u32::MAX;

impl ScissorsTower {
    pub fn build(ring: Arc<Ring>) -> Result<Self> {
        if ring.residue_size() < 4 {
            return Err(Error::Domain(format!(
                "{}: the residue field must have at least 4 elements",
                ring.name()
            )));
        }
        let sq = ring.square_classes();
        let rank = sq.rank();
        let w = ring.w_set();
        let mut w_pos = vec![NONE; ring.size() as usize];
        for (i, &x) in w.iter().enumerate() {
            w_pos[x as usize] = i as u32;
        }
        let mut class = vec![0u64; ring.size() as usize];
        for u in ring.units() {
            class[u as usize] = sq.class_of(u);
        }
        let nw = w.len();
        let ng = 1usize << rank;
        let one = ring.one();

        let mut base = Vec::new();
        let mut p_rels = Vec::new();
        for &x in &w {
            let xi = ring.inv(x).unwrap();
            let c_x = class[x as usize];
            let c_a = class[ring.sub(xi, one) as usize];
            let c_b = class[ring.sub(one, x) as usize];
            for &y in &w {
                if y == x || !ring.is_unit(ring.sub(x, y)) {
                    continue;
                }
                let yi = ring.inv(y).unwrap();
                let t3 = ring.mul(y, xi);
                let t4 = ring.div(ring.sub(one, xi), ring.sub(one, yi)).unwrap();
                let t5 = ring.div(ring.sub(one, x), ring.sub(one, y)).unwrap();
                let terms = [(0, x, 1i64), (0, y, -1), (c_x, t3, 1), (c_a, t4, -1), (c_b, t5, 1)];
                base.push(terms);
                p_rels.push(SparseRow::from_pairs(
                    terms.iter().map(|&(_, e, s)| (w_pos[e as usize] as usize, s)),
                ));
            }
        }
        let pairs = base.len();
        let mut rels = Vec::with_capacity(pairs * ng);
        for g in 0..ng as u64 {
            for terms in &base {
                rels.push(SparseRow::from_pairs(
                    terms
                        .iter()
                        .map(|&(c, e, s)| (((g ^ c) as usize) * nw + w_pos[e as usize] as usize, s)),
                ));
            }
        }
        let relation_count = rels.len();
        let asym = AsymSquare::new(&ring);
        let free = PresentedModule::free(ng);
        let lambda_target = PresentedModule::direct_sum(&[&free, &asym.module]);
        let lambda_images = lambda_images(&ring, &w, &class, rank, &asym);
        for r in &rels {
            let mut acc = vec![Int::ZERO; lambda_target.ngens()];
            for (j, c) in &r.entries {
                vec_add_scaled(&mut acc, &lambda_images[*j], c);
            }
            if !lambda_target.is_zero(&acc) {
                return Err(Error::Hypothesis(format!(
                    "{}: the map (lambda_1, lambda_2) does not kill every relation",
                    ring.name()
                )));
            }
        }

        let module = PresentedModule::new(nw * ng, rels);
        let perm: Vec<Vec<usize>> = (0..rank)
            .map(|i| (0..nw * ng).map(|idx| ((idx / nw) ^ (1 << i)) * nw + idx % nw).collect())
            .collect();
        let rp = GModule::permutation(module, rank, &perm);
        let p = PresentedModule::new(nw, p_rels);
        Ok(ScissorsTower {
            ring,
            sq,
            rank,
            w,
            w_pos,
            class,
            rp,
            p,
            asym,
            relation_count,
            lambda_target,
            rb: OnceLock::new(),
            b: OnceLock::new(),
            reduced: OnceLock::new(),
        })
    }

    pub fn parse(desc: &str) -> Result<Self> {
        Self::build(Ring::parse(desc)?)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn square_classes(&self) -> &SquareClassGroup {
        &self.sq
    }

    /// Rank of the square-class group.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn w_set(&self) -> &[Elem] {
        &self.w
    }

    pub fn relation_count(&self) -> usize {
        self.relation_count
    }

    pub fn ngens(&self) -> usize {
        self.rp.ngens()
    }

    pub fn class_of(&self, u: Elem) -> u64 {
        debug_assert!(self.ring.is_unit(u));
        self.class[u as usize]
    }

    pub fn zero(&self) -> Element {
        vec![Int::ZERO; self.ngens()]
    }

    /// `<g>[x]` for `x` in `W_A`.
    pub fn bracket_in(&self, g: u64, x: Elem) -> Result<Element> {
        let pos = self.w_pos[x as usize];
        if pos == NONE {
            return Err(Error::Domain(format!("{} is not in W", self.ring.format(x))));
        }
        let mut v = self.zero();
        v[g as usize * self.w.len() + pos as usize] = Int::ONE;
        Ok(v)
    }

    /// `[x]`; panics unless `x` lies in `W_A`.
    pub fn bracket(&self, x: Elem) -> Element {
        self.bracket_in(0, x).expect("argument in W")
    }

    /// `<<x>>` for a unit `x`.
    pub fn pf(&self, x: Elem) -> GroupRingElement {
        GroupRingElement::pf(self.class_of(x))
    }

    pub fn an(&self, x: Elem) -> GroupRingElement {
        GroupRingElement::class(self.class_of(x))
    }

    pub fn act(&self, r: &GroupRingElement, v: &[Int]) -> Element {
        self.rp.act_ring(r, v)
    }

    pub fn act_class(&self, x: Elem, v: &[Int]) -> Element {
        self.rp.act(self.class_of(x), v)
    }

    pub fn is_zero(&self, v: &[Int]) -> bool {
        self.rp.is_zero(v)
    }

    /// The five-term element `S_{x,y}` (zero in `RP(A)`).
    pub fn five_term(&self, x: Elem, y: Elem) -> Result<Element> {
        let r = &self.ring;
        let one = r.one();
        let xi = r.inv(x).ok_or_else(|| Error::NotUnit(r.format(x)))?;
        let yi = r.inv(y).ok_or_else(|| Error::NotUnit(r.format(y)))?;
        let t4 = r
            .div(r.sub(one, xi), r.sub(one, yi))
            .ok_or_else(|| Error::Domain("1 - 1/y".into()))?;
        let t5 = r
            .div(r.sub(one, x), r.sub(one, y))
            .ok_or_else(|| Error::Domain("1 - y".into()))?;
        let mut v = self.bracket_in(0, x)?;
        sub_assign(&mut v, &self.bracket_in(0, y)?);
        add_assign(&mut v, &self.bracket_in(self.class_of(x), r.mul(y, xi))?);
        sub_assign(&mut v, &self.bracket_in(self.class_of(r.sub(xi, one)), t4)?);
        add_assign(&mut v, &self.bracket_in(self.class_of(r.sub(one, x)), t5)?);
        Ok(v)
    }

    /// `lambda_1` into `Z[G]`, as a coefficient vector of length `2^r`.
    pub fn lambda1(&self, v: &[Int]) -> Vec<Int> {
        let nw = self.w.len();
        let one = self.ring.one();
        let mut out = vec![Int::ZERO; 1 << self.rank];
        for (idx, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (g, x) = ((idx / nw) as u64, self.w[idx % nw]);
            let img = GroupRingElement::class(g)
                .mul(&self.pf(self.ring.sub(one, x)))
                .mul(&self.pf(x));
            for (h, d) in img.terms() {
                out[h as usize].add_mul(&Int::from(d), c);
            }
        }
        out
    }

    /// `lambda_2` into `asym^2(A^x)`, in generator coordinates.
    pub fn lambda2(&self, v: &[Int]) -> Vec<Int> {
        let nw = self.w.len();
        let mut out = vec![Int::ZERO; self.asym.ngens()];
        for (idx, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let x = self.w[idx % nw];
            vec_add_scaled(&mut out, &self.asym.circ(self.ring.sub(self.ring.one(), x), x), c);
        }
        out
    }

    /// `Lambda = (lambda_1, lambda_2)`.
    pub fn lambda(&self, v: &[Int]) -> Vec<Int> {
        let mut out = self.lambda1(v);
        out.extend(self.lambda2(v));
        out
    }

    pub fn lambda_target(&self) -> &PresentedModule {
        &self.lambda_target
    }

    /// The natural map `RP(A) -> P(A)`, in generator coordinates of `P(A)`.
    pub fn to_p(&self, v: &[Int]) -> Vec<Int> {
        let nw = self.w.len();
        let mut out = vec![Int::ZERO; nw];
        for (idx, c) in v.iter().enumerate() {
            if !c.is_zero() {
                out[idx % nw] += c;
            }
        }
        out
    }

    /// `[x]` in `P(A)`.
    pub fn p_bracket(&self, x: Elem) -> Vec<Int> {
        let mut v = vec![Int::ZERO; self.w.len()];
        v[self.w_pos[x as usize] as usize] = Int::ONE;
        v
    }

    /// `RB(A) = ker Lambda` with the images of its generators in `RP(A)`.
    pub fn refined_bloch(&self) -> &(GModule, Vec<Element>) {
        self.rb.get_or_init(|| {
            let images: Vec<Vec<Int>> = (0..self.ngens())
                .map(|j| {
                    let mut e = self.zero();
                    e[j] = Int::ONE;
                    self.lambda(&e)
                })
                .collect();
            self.rp.kernel(&images, &self.lambda_target)
        })
    }

    /// `B(A) = ker lambda` on `P(A)` with the images of its generators in `P(A)`.
    pub fn bloch(&self) -> &(PresentedModule, Vec<Vec<Int>>) {
        self.b.get_or_init(|| {
            let one = self.ring.one();
            let images: Vec<Vec<Int>> =
                self.w.iter().map(|&x| self.asym.circ(self.ring.sub(one, x), x)).collect();
            let gens = self.p.kernel_generators(&images, &self.asym.module);
            (self.p.submodule(&gens), gens)
        })
    }

    pub fn reduced(&self) -> &Reduced {
        self.reduced.get_or_init(|| Reduced::new(self))
    }

    /// Least element of `W_A` whose product with `u` lies in `W_A`.
    pub fn witness(&self, u: Elem) -> Elem {
        *self
            .w
            .iter()
            .find(|&&w| self.w_pos[self.ring.mul(u, w) as usize] != NONE)
            .expect("W is nonempty")
    }

    /// `psi_i(x)` for `x` in `W_A`.
    fn psi_w(&self, i: u8, x: Elem) -> Element {
        let r = &self.ring;
        let one = r.one();
        let xi = r.inv(x).unwrap();
        let minus_one = r.neg(one);
        let (c1, c2) = match i {
            1 => (0, self.class_of(minus_one)),
            _ => (self.class_of(r.sub(xi, one)), self.class_of(r.sub(one, x))),
        };
        let mut v = self.bracket_in(c1, x).unwrap();
        add_assign(&mut v, &self.bracket_in(c2, xi).unwrap());
        v
    }

    /// `psi_i(u) = psi_i(uw) - <u> psi_i(w)` for `u` in `U_1`.
    pub fn psi_with_witness(&self, i: u8, u: Elem, w: Elem) -> Element {
        let mut v = self.psi_w(i, self.ring.mul(u, w));
        sub_assign(&mut v, &self.act_class(u, &self.psi_w(i, w)));
        v
    }

    /// The cocycle `psi_i` on all units.
    pub fn psi(&self, i: u8, x: Elem) -> Result<Element> {
        if !(i == 1 || i == 2) {
            return Err(Error::Domain(format!("psi index {i}")));
        }
        if !self.ring.is_unit(x) {
            return Err(Error::NotUnit(self.ring.format(x)));
        }
        if self.w_pos[x as usize] != NONE {
            Ok(self.psi_w(i, x))
        } else {
            Ok(self.psi_with_witness(i, x, self.witness(x)))
        }
    }

    /// `C(a) = [a] + <-1>[1-a] + <<1-a>> psi_1(a)`.
    pub fn c_at(&self, a: Elem) -> Result<Element> {
        let r = &self.ring;
        let one = r.one();
        let b = r.sub(one, a);
        let mut v = self.bracket_in(0, a)?;
        add_assign(&mut v, &self.bracket_in(self.class_of(r.neg(one)), b)?);
        add_assign(&mut v, &self.act(&self.pf(b), &self.psi(1, a)?));
        Ok(v)
    }

    /// The constant `C~_A`, evaluated at the least element of `W_A`.
    pub fn c_tilde(&self) -> Element {
        self.c_at(self.w[0]).unwrap()
    }

    /// `C_A = 2 C~_A`.
    pub fn c_const(&self) -> Element {
        scale(&self.c_tilde(), 2)
    }
}

fn lambda_images(
    ring: &Ring,
    w: &[Elem],
    class: &[u64],
    rank: usize,
    asym: &AsymSquare,
) -> Vec<Vec<Int>> {
    let one = ring.one();
    let ng = 1usize << rank;
    let mut out = Vec::with_capacity(w.len() * ng);
    for g in 0..ng as u64 {
        for &x in w {
            let y = ring.sub(one, x);
            let l1 = GroupRingElement::class(g)
                .mul(&GroupRingElement::pf(class[y as usize]))
                .mul(&GroupRingElement::pf(class[x as usize]));
            let mut v = l1.to_vec(rank);
            v.extend(asym.circ(y, x));
            out.push(v);
        }
    }
    out
}

pub fn add_assign(a: &mut [Int], b: &[Int]) {
    for (x, y) in a.iter_mut().zip(b) {
        if !y.is_zero() {
            *x += y;
        }
    }
}

pub fn sub_assign(a: &mut [Int], b: &[Int]) {
    for (x, y) in a.iter_mut().zip(b) {
        if !y.is_zero() {
            *x -= y;
        }
    }
}

pub fn add(a: &[Int], b: &[Int]) -> Vec<Int> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Int], b: &[Int]) -> Vec<Int> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[Int], k: i64) -> Vec<Int> {
    let k = Int::from(k);
    a.iter().map(|x| x * &k).collect()
}
