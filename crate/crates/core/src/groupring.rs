//! Integral group rings of elementary abelian 2-groups and modules over them.
//!
//! Group elements are bitmasks over a fixed basis `b_0, ..., b_{r-1}`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::modz::{vec_add_scaled, Int, PresentedModule, SparseRow, Structure};

/// An element of `Z[G]`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GroupRingElement {
    terms: BTreeMap<u64, i64>,
}

impl GroupRingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::class(0)
    }

    /// The basis element `<g>`.
    pub fn class(g: u64) -> Self {
        Self::term(g, 1)
    }

    pub fn term(g: u64, c: i64) -> Self {
        let mut e = Self::zero();
        e.add_term(g, c);
        e
    }

    /// `<<g>> = <g> - 1`.
    pub fn pf(g: u64) -> Self {
        Self::class(g).sub(&Self::one())
    }

    /// `p^+(g) = <g> + 1`.
    pub fn p_plus(g: u64) -> Self {
        Self::class(g).add(&Self::one())
    }

    /// `p^-(g) = 1 - <g>`.
    pub fn p_minus(g: u64) -> Self {
        Self::one().sub(&Self::class(g))
    }

    pub fn add_term(&mut self, g: u64, c: i64) {
        if c == 0 {
            return;
        }
        let e = self.terms.entry(g).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&g);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, i64)> + '_ {
        self.terms.iter().map(|(&g, &c)| (g, c))
    }

    pub fn coeff(&self, g: u64) -> i64 {
        self.terms.get(&g).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (g, c) in o.terms() {
            r.add_term(g, c);
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(-1))
    }

    pub fn neg(&self) -> Self {
        self.scale(-1)
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut r = Self::zero();
        for (g, c) in self.terms() {
            r.add_term(g, c * k);
        }
        r
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = Self::zero();
        for (g, c) in self.terms() {
            for (h, d) in o.terms() {
                r.add_term(g ^ h, c * d);
            }
        }
        r
    }

    pub fn augmentation(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn eval(&self, chi: Character) -> i64 {
        self.terms().map(|(g, c)| c * chi.value(g)).sum()
    }

    /// Coefficient vector indexed by group element, length `2^rank`.
    pub fn to_vec(&self, rank: usize) -> Vec<Int> {
        let mut v = vec![Int::ZERO; 1 << rank];
        for (g, c) in self.terms() {
            v[g as usize] = Int::from(c);
        }
        v
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms().map(|(g, c)| format!("{c}<{g}>")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// A character `G -> {+-1}`; bit `i` of the mask is set when `chi(b_i) = -1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Character {
    pub mask: u64,
}

impl Character {
    pub const TRIVIAL: Character = Character { mask: 0 };

    pub fn value(self, g: u64) -> i64 {
        if (self.mask & g).count_ones() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn is_trivial(self) -> bool {
        self.mask == 0
    }

    pub fn signs(self, rank: usize) -> Vec<i64> {
        (0..rank).map(|i| self.value(1 << i)).collect()
    }

    /// All characters of a group of the given rank, trivial first, then in
    /// lexicographic order of the sign vector with `+1` before `-1`.
    pub fn all(rank: usize) -> Vec<Character> {
        let mut v: Vec<Character> = (0..1u64 << rank).map(|mask| Character { mask }).collect();
        v.sort_by_key(|c| (0..rank).map(|i| c.mask >> i & 1).collect::<Vec<_>>());
        v
    }
}

/// A finitely presented `Z[G]`-module: a presented abelian group together with
/// the action of each basis element of `G` on its generators.
#[derive(Clone, Debug)]
pub struct GModule {
    pub module: PresentedModule,
    rank: usize,
    action: Vec<Vec<SparseRow>>,
}

/// One summand of an eigenspace decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigenComponent {
    pub chi: Vec<i64>,
    pub structure: Structure,
}

impl GModule {
    /// `action[i][j]` is the image of generator `j` under `b_i`.
    pub fn new(module: PresentedModule, rank: usize, action: Vec<Vec<SparseRow>>) -> Self {
        assert_eq!(action.len(), rank);
        GModule { module, rank, action }
    }

    /// A module whose generators are permuted by `G` via `perm[i][j]`.
    pub fn permutation(module: PresentedModule, rank: usize, perm: &[Vec<usize>]) -> Self {
        let action = perm
            .iter()
            .map(|p| p.iter().map(|&j| SparseRow::unit(j)).collect())
            .collect();
        GModule::new(module, rank, action)
    }

    /// `M` with trivial action.
    pub fn trivial_action(module: PresentedModule, rank: usize) -> Self {
        let n = module.ngens();
        let perm: Vec<Vec<usize>> = (0..rank).map(|_| (0..n).collect()).collect();
        GModule::permutation(module, rank, &perm)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn ngens(&self) -> usize {
        self.module.ngens()
    }

    pub fn structure(&self) -> Structure {
        self.module.structure()
    }

    pub fn is_zero(&self, x: &[Int]) -> bool {
        self.module.is_zero(x)
    }

    pub fn normal_form(&self, x: &[Int]) -> Vec<Int> {
        self.module.normal_form(x)
    }

    fn act_basis(&self, i: usize, x: &[Int]) -> Vec<Int> {
        let mut out = vec![Int::ZERO; self.ngens()];
        for (j, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (k, v) in &self.action[i][j].entries {
                out[*k].add_mul(v, c);
            }
        }
        out
    }

    /// `g . x`.
    pub fn act(&self, g: u64, x: &[Int]) -> Vec<Int> {
        let mut v = x.to_vec();
        for i in 0..self.rank {
            if g >> i & 1 == 1 {
                v = self.act_basis(i, &v);
            }
        }
        v
    }

    /// `r . x` for `r` in `Z[G]`.
    pub fn act_ring(&self, r: &GroupRingElement, x: &[Int]) -> Vec<Int> {
        let mut out = vec![Int::ZERO; self.ngens()];
        for (g, c) in r.terms() {
            vec_add_scaled(&mut out, &self.act(g, x), &Int::from(c));
        }
        out
    }

    /// All `g . x` for `g` in `G` and `x` in `elems`, indexed `g * |elems| + j`.
    fn orbit_span(&self, elems: &[Vec<Int>]) -> Vec<Vec<Int>> {
        let mut out = Vec::with_capacity(elems.len() << self.rank);
        for g in 0..1u64 << self.rank {
            for e in elems {
                out.push(self.act(g, e));
            }
        }
        out
    }

    /// Transports the action to a module presented on the standard generators
    /// of `self.module` (quotients and odd parts).
    fn on_std_generators(&self, module: PresentedModule) -> GModule {
        let lifts = self.module.std_generators();
        let action = (0..self.rank)
            .map(|i| {
                lifts
                    .iter()
                    .map(|l| SparseRow::from_dense(&self.module.normal_form(&self.act_basis(i, l))))
                    .collect()
            })
            .collect();
        GModule::new(module, self.rank, action)
    }

    /// Quotient by the `Z[G]`-submodule generated by `elems`; the projection is
    /// `self.normal_form`.
    pub fn quotient(&self, elems: &[Vec<Int>]) -> GModule {
        let q = self.module.quotient(&self.orbit_span(elems));
        self.on_std_generators(q)
    }

    /// The `Z[G]`-submodule generated by `elems`, presented on generators
    /// `(g, j) -> g . elems[j]` at index `g * |elems| + j`. Returns the module
    /// and the images of its generators in `self`.
    pub fn submodule(&self, elems: &[Vec<Int>]) -> (GModule, Vec<Vec<Int>>) {
        let span = self.orbit_span(elems);
        let m = self.module.submodule(&span);
        let k = elems.len();
        let perm: Vec<Vec<usize>> = (0..self.rank)
            .map(|i| (0..span.len()).map(|idx| ((idx / k) ^ (1 << i)) * k + idx % k).collect())
            .collect();
        (GModule::permutation(m, self.rank, &perm), span)
    }

    /// Kernel of the `G`-equivariant map sending generator `j` to `images[j]` in `target`.
    pub fn kernel(&self, images: &[Vec<Int>], target: &PresentedModule) -> (GModule, Vec<Vec<Int>>) {
        let gens = self.module.kernel_generators(images, target);
        self.submodule(&gens)
    }

    /// `M_chi = M / I^chi M`.
    pub fn eigen_component(&self, chi: Character) -> GModule {
        let mut rels = Vec::new();
        for i in 0..self.rank {
            let s = Int::from(chi.value(1 << i));
            for j in 0..self.ngens() {
                let mut v = self.action[i][j].to_dense(self.ngens());
                v[j] -= &s;
                rels.push(v);
            }
        }
        self.quotient(&rels)
    }

    /// Coinvariants `M_G`.
    pub fn coinvariants(&self) -> GModule {
        self.eigen_component(Character::TRIVIAL)
    }

    /// `I_G M`, generated by `(<b_i> - 1) m_j`.
    pub fn augmentation_submodule(&self) -> (GModule, Vec<Vec<Int>>) {
        let mut gens = Vec::new();
        for i in 0..self.rank {
            for j in 0..self.ngens() {
                let mut v = self.action[i][j].to_dense(self.ngens());
                v[j] -= &Int::ONE;
                if !self.module.is_zero(&v) {
                    gens.push(v);
                }
            }
        }
        self.submodule(&gens)
    }

    /// Quotient by the 2-primary torsion; generators are the standard ones.
    pub fn odd_part(&self) -> GModule {
        let m = self.module.odd_part();
        self.on_std_generators(m)
    }

    /// Eigenspace components for every character, in [`Character::all`] order.
    pub fn eigen_decomposition(&self) -> Vec<EigenComponent> {
        Character::all(self.rank)
            .into_iter()
            .map(|chi| EigenComponent {
                chi: chi.signs(self.rank),
                structure: self.eigen_component(chi).structure(),
            })
            .collect()
    }

    /// Checks that the generator images define a `G`-equivariant homomorphism
    /// into a module on which `G` acts through `target_act`.
    pub fn is_equivariant(
        &self,
        images: &[Vec<Int>],
        target: &GModule,
    ) -> bool {
        if !self.module.is_hom(images, &target.module) {
            return false;
        }
        (0..self.rank).all(|i| {
            (0..self.ngens()).all(|j| {
                let gx = self.action[i][j].to_dense(self.ngens());
                let mut lhs = vec![Int::ZERO; target.ngens()];
                for (k, c) in gx.iter().enumerate() {
                    vec_add_scaled(&mut lhs, &images[k], c);
                }
                let rhs = target.act_basis(i, &images[j]);
                let diff: Vec<Int> = lhs.iter().zip(&rhs).map(|(a, b)| a - b).collect();
                target.is_zero(&diff)
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn character_order() {
        let all = Character::all(2);
        let signs: Vec<Vec<i64>> = all.iter().map(|c| c.signs(2)).collect();
        assert_eq!(signs, vec![vec![1, 1], vec![1, -1], vec![-1, 1], vec![-1, -1]]);
    }

    #[test]
    fn regular_module_components() {
        // Z[G] for |G| = 2 modulo 3: components Z/3 and Z/3.
        let m = PresentedModule::new(
            2,
            vec![SparseRow::from_pairs([(0, 3)]), SparseRow::from_pairs([(1, 3)])],
        );
        let gm = GModule::permutation(m, 1, &[vec![1, 0]]);
        let d = gm.eigen_decomposition();
        assert_eq!(d.len(), 2);
        for c in &d {
            assert_eq!(c.structure.torsion, vec![Int::from(3)]);
        }
        let (aug, _) = gm.augmentation_submodule();
        assert_eq!(aug.structure().torsion, vec![Int::from(3)]);
    }

    #[test]
    fn pf_products() {
        let a = GroupRingElement::pf(1);
        // <<g>>^2 = -2 <<g>> for g of order 2.
        assert_eq!(a.mul(&a), a.scale(-2));
        assert_eq!(a.augmentation(), 0);
    }
}
