//! Finitely presented abelian groups.
//!
//! A presentation `Z^n / <relations>` is reduced once, at construction, to
//! standard coordinates `Z^t -> (+)_i Z/d_i` (with `d_i = 0` for free summands and
//! all `d_i != 1`). Reduction eliminates generators against relations with a
//! `+-1` coefficient as the relations stream in, then runs a dense Smith normal
//! form on the residual lattice over the surviving generators.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use serde::{Deserialize, Serialize};

use super::int::Int;
use super::snf::{kernel_lattice, row_basis, DenseSnf};
use super::sparse::{vec_add_scaled, vec_is_zero, IntMatrix, SparseRow};

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

/// Isomorphism type `Z^free_rank (+) (+)_i Z/torsion_i`, torsion in divisibility order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Structure {
    pub free_rank: usize,
    pub torsion: Vec<Int>,
}

impl Structure {
    pub fn from_factors(factors: &[Int]) -> Self {
        let free_rank = factors.iter().filter(|d| d.is_zero()).count();
        let mut torsion: Vec<Int> = factors
            .iter()
            .filter(|d| !d.is_zero() && !d.is_one())
            .map(Int::abs)
            .collect();
        torsion.sort();
        Structure { free_rank, torsion }
    }

    pub fn trivial() -> Self {
        Structure::default()
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Order, or `None` when infinite.
    pub fn order(&self) -> Option<Int> {
        self.is_finite()
            .then(|| self.torsion.iter().fold(Int::ONE, |a, d| a * d.clone()))
    }

    pub fn exponent(&self) -> Option<Int> {
        self.is_finite()
            .then(|| self.torsion.iter().fold(Int::ONE, |a, d| a.lcm(d)))
    }

    /// Structure of the odd part (free rank kept).
    pub fn odd_part(&self) -> Structure {
        Structure::from_factors(
            &self
                .torsion
                .iter()
                .map(Int::odd_part)
                .chain(std::iter::repeat(Int::ZERO).take(self.free_rank))
                .collect::<Vec<_>>(),
        )
    }

    /// Canonical primary decomposition: prime powers in ascending order.
    pub fn primary(&self) -> Vec<Int> {
        let mut out = Vec::new();
        for d in &self.torsion {
            let d = d.to_i64().expect("primary decomposition needs machine-sized factors");
            let mut m = d;
            let mut p = 2;
            while p * p <= m {
                if m % p == 0 {
                    let mut q = 1;
                    while m % p == 0 {
                        m /= p;
                        q *= p;
                    }
                    out.push(Int::from(q));
                }
                p += 1;
            }
            if m > 1 {
                out.push(Int::from(m));
            }
        }
        out.sort();
        out
    }
}

impl fmt::Display for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        if self.free_rank == 1 {
            parts.push("Z".to_string());
        } else if self.free_rank > 1 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Finitely presented abelian group with cached normal-form data.
#[derive(Clone, Debug)]
pub struct PresentedModule {
    id: u64,
    ngens: usize,
    relations: Vec<SparseRow>,
    factors: Vec<Int>,
    proj: Vec<SparseRow>,
    lift: Vec<SparseRow>,
}

impl PresentedModule {
    /// `Z^ngens` modulo the row span of `relations`.
    pub fn new(ngens: usize, relations: Vec<SparseRow>) -> Self {
        let mut red = Reducer::new(ngens);
        for r in &relations {
            red.add_relation(r);
        }
        let (factors, proj, lift) = red.finish();
        PresentedModule {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            ngens,
            relations,
            factors,
            proj,
            lift,
        }
    }

    pub fn from_matrix(m: &IntMatrix) -> Self {
        PresentedModule::new(m.ncols, m.rows.clone())
    }

    pub fn free(n: usize) -> Self {
        PresentedModule::new(n, Vec::new())
    }

    /// `(+)_i Z/d_i`, one generator per factor.
    pub fn from_factors(factors: &[Int]) -> Self {
        let rels = factors
            .iter()
            .enumerate()
            .filter(|(_, d)| !d.is_zero())
            .map(|(i, d)| SparseRow { entries: vec![(i, d.abs())] })
            .collect();
        PresentedModule::new(factors.len(), rels)
    }

    pub fn trivial() -> Self {
        PresentedModule::new(0, Vec::new())
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    pub fn relations(&self) -> &[SparseRow] {
        &self.relations
    }

    pub fn relation_matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(self.ngens, self.relations.clone())
    }

    /// Nontrivial invariant factors in standard-coordinate order (zeros are free).
    pub fn factors(&self) -> &[Int] {
        &self.factors
    }

    /// Number of standard coordinates.
    pub fn std_len(&self) -> usize {
        self.factors.len()
    }

    pub fn structure(&self) -> Structure {
        Structure::from_factors(&self.factors)
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn order(&self) -> Option<Int> {
        self.structure().order()
    }

    pub fn is_finite(&self) -> bool {
        self.factors.iter().all(|d| !d.is_zero())
    }

    /// Standard coordinates of an element given in generator coordinates.
    pub fn normal_form(&self, x: &[Int]) -> Vec<Int> {
        assert_eq!(x.len(), self.ngens, "element length does not match the generator count");
        let mut y = vec![Int::ZERO; self.factors.len()];
        for (j, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (i, v) in &self.proj[j].entries {
                y[*i].add_mul(v, c);
            }
        }
        self.reduce_std(&mut y);
        y
    }

    pub fn normal_form_sparse(&self, x: &SparseRow) -> Vec<Int> {
        let mut y = vec![Int::ZERO; self.factors.len()];
        for (j, c) in &x.entries {
            for (i, v) in &self.proj[*j].entries {
                y[*i].add_mul(v, c);
            }
        }
        self.reduce_std(&mut y);
        y
    }

    pub fn reduce_std(&self, y: &mut [Int]) {
        for (x, d) in y.iter_mut().zip(&self.factors) {
            if !d.is_zero() {
                *x = x.mod_floor(d);
            }
        }
    }

    pub fn is_zero(&self, x: &[Int]) -> bool {
        vec_is_zero(&self.normal_form(x))
    }

    pub fn is_zero_sparse(&self, x: &SparseRow) -> bool {
        vec_is_zero(&self.normal_form_sparse(x))
    }

    /// An element in generator coordinates with the given standard coordinates.
    pub fn from_std(&self, y: &[Int]) -> Vec<Int> {
        let mut x = vec![Int::ZERO; self.ngens];
        for (i, c) in y.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, v) in &self.lift[i].entries {
                x[*j].add_mul(v, c);
            }
        }
        x
    }

    /// Generator-coordinate lift of the `i`-th standard generator.
    pub fn std_generator(&self, i: usize) -> Vec<Int> {
        self.lift[i].to_dense(self.ngens)
    }

    pub fn std_generators(&self) -> Vec<Vec<Int>> {
        (0..self.std_len()).map(|i| self.std_generator(i)).collect()
    }

    /// Additive order of an element; `None` if it has infinite order.
    pub fn element_order(&self, x: &[Int]) -> Option<Int> {
        let y = self.normal_form(x);
        let mut o = Int::ONE;
        for (c, d) in y.iter().zip(&self.factors) {
            if c.is_zero() {
                continue;
            }
            if d.is_zero() {
                return None;
            }
            o = o.lcm(&d.div_exact(&c.gcd(d)));
        }
        Some(o)
    }

    pub fn element(&self, coords: Vec<Int>) -> ModuleElement {
        let normal = self.normal_form(&coords);
        ModuleElement { module: self.id, coords, normal }
    }

    /// Quotient by the span of `elems`. Its generators are this module's
    /// standard generators, so the projection is [`normal_form`](Self::normal_form).
    pub fn quotient(&self, elems: &[Vec<Int>]) -> PresentedModule {
        let t = self.std_len();
        let mut rels: Vec<SparseRow> = self
            .factors
            .iter()
            .enumerate()
            .filter(|(_, d)| !d.is_zero())
            .map(|(i, d)| SparseRow { entries: vec![(i, d.clone())] })
            .collect();
        for e in elems {
            let y = self.normal_form(e);
            if !vec_is_zero(&y) {
                rels.push(SparseRow::from_dense(&y));
            }
        }
        PresentedModule::new(t, rels)
    }

    /// Subgroup generated by `elems`, presented on one generator per element;
    /// generator `j` maps to `elems[j]`.
    pub fn submodule(&self, elems: &[Vec<Int>]) -> PresentedModule {
        let y: Vec<Vec<Int>> = elems.iter().map(|e| self.normal_form(e)).collect();
        let k = kernel_lattice(&y, &self.factors);
        PresentedModule::new(elems.len(), k.iter().map(|r| SparseRow::from_dense(r)).collect())
    }

    /// Whether `images` (one per generator, in `target` coordinates) defines a homomorphism.
    pub fn is_hom(&self, images: &[Vec<Int>], target: &PresentedModule) -> bool {
        self.relations.iter().all(|r| {
            let mut acc = vec![Int::ZERO; target.ngens];
            for (j, c) in &r.entries {
                vec_add_scaled(&mut acc, &images[*j], c);
            }
            target.is_zero(&acc)
        })
    }

    /// Generators (in this module's coordinates) of the kernel of the
    /// homomorphism sending generator `j` to `images[j]`.
    pub fn kernel_generators(&self, images: &[Vec<Int>], target: &PresentedModule) -> Vec<Vec<Int>> {
        let lifts = self.std_generators();
        let y: Vec<Vec<Int>> = lifts
            .iter()
            .map(|l| {
                let mut acc = vec![Int::ZERO; target.ngens];
                for (j, c) in l.iter().enumerate() {
                    vec_add_scaled(&mut acc, &images[j], c);
                }
                target.normal_form(&acc)
            })
            .collect();
        kernel_lattice(&y, &target.factors)
            .into_iter()
            .map(|c| self.from_std(&c))
            .filter(|v| !self.is_zero(v))
            .collect()
    }

    /// Images of the standard generators under a homomorphism, in `target` coordinates.
    pub fn image_generators(&self, images: &[Vec<Int>], target_ngens: usize) -> Vec<Vec<Int>> {
        self.std_generators()
            .iter()
            .map(|l| {
                let mut acc = vec![Int::ZERO; target_ngens];
                for (j, c) in l.iter().enumerate() {
                    vec_add_scaled(&mut acc, &images[j], c);
                }
                acc
            })
            .collect()
    }

    /// Kills the 2-primary torsion. Generators are this module's standard generators.
    pub fn odd_part(&self) -> PresentedModule {
        let elems: Vec<Vec<Int>> = self
            .factors
            .iter()
            .enumerate()
            .filter(|(_, d)| !d.is_zero())
            .map(|(i, d)| {
                let mut y = vec![Int::ZERO; self.std_len()];
                y[i] = d.odd_part();
                self.from_std(&y)
            })
            .collect();
        self.quotient(&elems)
    }

    /// Block direct sum; summand `k` occupies a contiguous range of generators.
    pub fn direct_sum(parts: &[&PresentedModule]) -> PresentedModule {
        let mut off = 0;
        let mut rels = Vec::new();
        for p in parts {
            for r in &p.relations {
                rels.push(r.remap(|c| c + off));
            }
            off += p.ngens;
        }
        PresentedModule::new(off, rels)
    }
}

/// An element together with its normal form; equality compares normal forms.
#[derive(Clone, Debug)]
pub struct ModuleElement {
    module: u64,
    pub coords: Vec<Int>,
    normal: Vec<Int>,
}

impl ModuleElement {
    pub fn normal(&self) -> &[Int] {
        &self.normal
    }

    pub fn is_zero(&self) -> bool {
        vec_is_zero(&self.normal)
    }
}

impl PartialEq for ModuleElement {
    fn eq(&self, other: &Self) -> bool {
        assert_eq!(self.module, other.module, "elements of different modules");
        self.normal == other.normal
    }
}

/// Streaming reduction of a presentation.
struct Reducer {
    n: usize,
    /// Value of each eliminated generator in terms of surviving ones.
    expr: Vec<Option<SparseRow>>,
    /// For a surviving generator, eliminated generators whose value may mention it.
    users: Vec<Vec<usize>>,
    residual: Vec<SparseRow>,
    alive: usize,
    compress_at: usize,
}

impl Reducer {
    fn new(n: usize) -> Self {
        Reducer {
            n,
            expr: vec![None; n],
            users: vec![Vec::new(); n],
            residual: Vec::new(),
            alive: n,
            compress_at: 2 * n + 16,
        }
    }

    fn substitute(&self, r: &SparseRow) -> SparseRow {
        if r.entries.iter().all(|(c, _)| self.expr[*c].is_none()) {
            return r.clone();
        }
        let mut pairs: Vec<(usize, Int)> = Vec::with_capacity(r.len() * 4);
        for (c, x) in &r.entries {
            match &self.expr[*c] {
                None => pairs.push((*c, x.clone())),
                Some(e) => pairs.extend(e.entries.iter().map(|(d, y)| (*d, y * x))),
            }
        }
        SparseRow::from_pairs(pairs)
    }

    fn add_relation(&mut self, r: &SparseRow) {
        let r = self.substitute(r);
        if r.is_zero() {
            return;
        }
        if !self.try_eliminate(&r) {
            self.residual.push(r);
            if self.residual.len() > self.compress_at {
                self.compress();
            }
        }
    }

    /// Uses a relation with a unit coefficient to eliminate a generator.
    fn try_eliminate(&mut self, r: &SparseRow) -> bool {
        let best = r
            .entries
            .iter()
            .filter(|(_, x)| x.is_unit())
            .min_by_key(|(c, _)| self.users[*c].len())
            .map(|(c, x)| (*c, x.clone()));
        let Some((c, s)) = best else { return false };
        // s*g_c + rest = 0  =>  g_c = -s * rest
        let k = -s;
        let value = SparseRow {
            entries: r
                .entries
                .iter()
                .filter(|(d, _)| *d != c)
                .map(|(d, x)| (*d, x * &k))
                .collect(),
        };
        let users = std::mem::take(&mut self.users[c]);
        for u in users {
            let Some(e) = &self.expr[u] else { continue };
            let Some(coef) = e.get(c).cloned() else { continue };
            let without = SparseRow {
                entries: e.entries.iter().filter(|(d, _)| *d != c).cloned().collect(),
            };
            let updated = without.add_scaled(&value, &coef);
            for (d, _) in &value.entries {
                self.users[*d].push(u);
            }
            self.expr[u] = Some(updated);
        }
        for row in self.residual.iter_mut() {
            if let Some(coef) = row.get(c).cloned() {
                let without = SparseRow {
                    entries: row.entries.iter().filter(|(d, _)| *d != c).cloned().collect(),
                };
                *row = without.add_scaled(&value, &coef);
            }
        }
        self.residual.retain(|r| !r.is_zero());
        for (d, _) in &value.entries {
            self.users[*d].push(c);
        }
        self.expr[c] = Some(value);
        self.alive -= 1;
        self.compress_at = 2 * self.alive + 16;
        true
    }

    fn survivors(&self) -> Vec<usize> {
        (0..self.n).filter(|&c| self.expr[c].is_none()).collect()
    }

    /// Replaces the residual rows by a basis of their span, then
    /// eliminates any generator that acquired a unit coefficient.
    fn compress(&mut self) {
        loop {
            let surv = self.survivors();
            let mut pos = vec![usize::MAX; self.n];
            for (i, &c) in surv.iter().enumerate() {
                pos[c] = i;
            }
            let dense: Vec<Vec<Int>> = self
                .residual
                .drain(..)
                .map(|r| {
                    let mut v = vec![Int::ZERO; surv.len()];
                    for (c, x) in &r.entries {
                        v[pos[*c]] = x.clone();
                    }
                    v
                })
                .collect();
            self.residual = row_basis(dense, surv.len())
                .into_iter()
                .map(|v| {
                    SparseRow::from_pairs(v.into_iter().enumerate().map(|(i, x)| (surv[i], x)))
                })
                .filter(|r| !r.is_zero())
                .collect();
            let rows = std::mem::take(&mut self.residual);
            let mut progressed = false;
            for r in rows {
                let r = self.substitute(&r);
                if r.is_zero() {
                    continue;
                }
                if self.try_eliminate(&r) {
                    progressed = true;
                } else {
                    self.residual.push(r);
                }
            }
            if !progressed {
                break;
            }
        }
        self.compress_at = self.residual.len() + 2 * self.alive + 16;
    }

    fn finish(mut self) -> (Vec<Int>, Vec<SparseRow>, Vec<SparseRow>) {
        self.compress();
        let surv = self.survivors();
        let s = surv.len();
        let mut pos = vec![usize::MAX; self.n];
        for (i, &c) in surv.iter().enumerate() {
            pos[c] = i;
        }
        let dense: Vec<Vec<Int>> = self
            .residual
            .iter()
            .map(|r| {
                let mut v = vec![Int::ZERO; s];
                for (c, x) in &r.entries {
                    v[pos[*c]] = x.clone();
                }
                v
            })
            .collect();
        let mut snf = DenseSnf::new(dense, s, false, true);
        let mut diag = snf.run();
        diag.resize(s, Int::ZERO);
        let v = snf.right.take().unwrap();
        let vinv = snf.right_inv.take().unwrap();
        let keep: Vec<usize> = (0..s).filter(|&i| !diag[i].is_one()).collect();
        let factors: Vec<Int> = keep.iter().map(|&i| diag[i].clone()).collect();

        // Row j of proj: standard coordinates of generator j before reduction.
        let surv_proj = |row: &SparseRow| -> SparseRow {
            let mut y = vec![Int::ZERO; keep.len()];
            for (c, x) in &row.entries {
                let vr = &v[pos[*c]];
                for (k, &i) in keep.iter().enumerate() {
                    if !vr[i].is_zero() {
                        y[k].add_mul(&vr[i], x);
                    }
                }
            }
            SparseRow::from_dense(&y)
        };
        let proj: Vec<SparseRow> = (0..self.n)
            .map(|j| match &self.expr[j] {
                None => surv_proj(&SparseRow::unit(j)),
                Some(e) => surv_proj(e),
            })
            .collect();
        let lift: Vec<SparseRow> = keep
            .iter()
            .map(|&i| SparseRow::from_pairs(vinv[i].iter().enumerate().map(|(k, x)| (surv[k], x.clone()))))
            .collect();
        (factors, proj, lift)
    }
}
