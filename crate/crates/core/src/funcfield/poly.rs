use std::sync::Arc;

use rand::Rng as _;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::rings::{Elem, Ring};

/// A polynomial over `F_q`, coefficients low degree first, without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Poly(pub Vec<Elem>);

impl Poly {
    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn constant(c: Elem) -> Self {
        Poly(vec![c]).trimmed()
    }

    /// `c t^k`.
    pub fn monomial(c: Elem, k: usize) -> Self {
        let mut v = vec![0; k + 1];
        v[k] = c;
        Poly(v).trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, with `deg 0 = -1`.
    pub fn degree(&self) -> isize {
        self.0.len() as isize - 1
    }

    pub fn lead(&self) -> Elem {
        self.0.last().copied().unwrap_or(0)
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.0.get(i).copied().unwrap_or(0)
    }
}

/// Arithmetic in `F_q[t]`.
#[derive(Clone, Debug)]
pub struct PolyRing {
    field: Arc<Ring>,
}

impl PolyRing {
    pub fn new(field: Arc<Ring>) -> Self {
        assert!(field.is_field(), "coefficients must lie in a field");
        PolyRing { field }
    }

    pub fn field(&self) -> &Arc<Ring> {
        &self.field
    }

    pub fn one(&self) -> Poly {
        Poly::constant(self.field.one())
    }

    /// The variable `t`.
    pub fn t(&self) -> Poly {
        Poly::monomial(self.field.one(), 1)
    }

    pub fn add(&self, a: &Poly, b: &Poly) -> Poly {
        let n = a.0.len().max(b.0.len());
        Poly((0..n).map(|i| self.field.add(a.coeff(i), b.coeff(i))).collect()).trimmed()
    }

    pub fn neg(&self, a: &Poly) -> Poly {
        Poly(a.0.iter().map(|&c| self.field.neg(c)).collect())
    }

    pub fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, a: &Poly, c: Elem) -> Poly {
        Poly(a.0.iter().map(|&x| self.field.mul(x, c)).collect()).trimmed()
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() || b.is_zero() {
            return Poly::zero();
        }
        let f = &self.field;
        let mut out = vec![0; a.0.len() + b.0.len() - 1];
        for (i, &x) in a.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(x, y));
            }
        }
        Poly(out).trimmed()
    }

    pub fn pow(&self, a: &Poly, mut e: u64) -> Poly {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn divrem(&self, a: &Poly, b: &Poly) -> (Poly, Poly) {
        assert!(!b.is_zero(), "polynomial division by zero");
        let f = &self.field;
        let db = b.0.len() - 1;
        let li = f.inv(b.lead()).unwrap();
        let mut r = a.0.clone();
        if r.len() <= db {
            return (Poly::zero(), a.clone());
        }
        let mut q = vec![0; r.len() - db];
        for i in (db..r.len()).rev() {
            let c = f.mul(r[i], li);
            if c == 0 {
                continue;
            }
            q[i - db] = c;
            for (j, &bj) in b.0.iter().enumerate() {
                r[i - db + j] = f.sub(r[i - db + j], f.mul(c, bj));
            }
        }
        (Poly(q).trimmed(), Poly(r).trimmed())
    }

    pub fn rem(&self, a: &Poly, b: &Poly) -> Poly {
        self.divrem(a, b).1
    }

    pub fn monic(&self, a: &Poly) -> Poly {
        if a.is_zero() {
            return Poly::zero();
        }
        self.scale(a, self.field.inv(a.lead()).unwrap())
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, a: &Poly, b: &Poly) -> Poly {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let r = self.rem(&x, &y);
            x = y;
            y = r;
        }
        self.monic(&x)
    }

    pub fn derivative(&self, a: &Poly) -> Poly {
        Poly(
            a.0.iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| self.field.mul(self.field.from_int(i as i64), c))
                .collect(),
        )
        .trimmed()
    }

    pub fn eval(&self, a: &Poly, x: Elem) -> Elem {
        a.0.iter().rev().fold(0, |acc, &c| self.field.add(self.field.mul(acc, x), c))
    }

    pub fn mulmod(&self, a: &Poly, b: &Poly, m: &Poly) -> Poly {
        self.rem(&self.mul(a, b), m)
    }

    pub fn powmod(&self, a: &Poly, e: &num_bigint::BigUint, m: &Poly) -> Poly {
        let mut acc = self.rem(&self.one(), m);
        let base = self.rem(a, m);
        for i in (0..e.bits()).rev() {
            acc = self.mulmod(&acc, &acc, m);
            if e.bit(i) {
                acc = self.mulmod(&acc, &base, m);
            }
        }
        acc
    }

    fn q(&self) -> u64 {
        self.field.size() as u64
    }

    /// `t^(q^k) mod m`.
    fn frobenius_power(&self, m: &Poly, k: u32) -> Poly {
        let mut x = self.rem(&self.t(), m);
        let q = num_bigint::BigUint::from(self.q());
        for _ in 0..k {
            x = self.powmod(&x, &q, m);
        }
        x
    }

    /// Rabin's irreducibility test.
    pub fn is_irreducible(&self, f: &Poly) -> bool {
        let d = f.degree();
        if d < 1 {
            return false;
        }
        if d == 1 {
            return true;
        }
        let d = d as u32;
        let f = self.monic(f);
        if self.sub(&self.frobenius_power(&f, d), &self.rem(&self.t(), &f)).is_zero() {
            for r in prime_divisors(d) {
                let g = self.sub(&self.frobenius_power(&f, d / r), &self.t());
                if self.gcd(&f, &g).degree() != 0 {
                    return false;
                }
            }
            true
        } else {
            false
        }
    }

    /// `f^(1/p)` for `f` with zero derivative in characteristic `p`.
    fn pth_root(&self, f: &Poly) -> Poly {
        let p = self.field.characteristic_residue() as usize;
        let e = self.q() / p as u64;
        Poly(
            f.0.iter()
                .step_by(p)
                .map(|&c| self.field.pow(c, e))
                .collect(),
        )
        .trimmed()
    }

    /// Square-free decomposition `f = lead * prod g_i^i` as pairs `(g_i, i)`.
    pub fn squarefree(&self, f: &Poly) -> Vec<(Poly, u32)> {
        let mut out = Vec::new();
        self.squarefree_into(&self.monic(f), 1, &mut out);
        out.sort();
        out
    }

    fn squarefree_into(&self, f: &Poly, mult: u32, out: &mut Vec<(Poly, u32)>) {
        if f.degree() < 1 {
            return;
        }
        let p = self.field.characteristic_residue();
        let df = self.derivative(f);
        if df.is_zero() {
            self.squarefree_into(&self.pth_root(f), mult * p, out);
            return;
        }
        let mut c = self.gcd(f, &df);
        let mut w = self.divrem(f, &c).0;
        let mut i = 1;
        while w.degree() > 0 {
            let y = self.gcd(&w, &c);
            let z = self.divrem(&w, &y).0;
            if z.degree() > 0 {
                out.push((self.monic(&z), i * mult));
            }
            i += 1;
            w = y;
            c = self.divrem(&c, &w).0;
        }
        if c.degree() > 0 {
            self.squarefree_into(&self.pth_root(&c), mult * p, out);
        }
    }

    /// Distinct-degree factorization of a monic square-free polynomial.
    pub fn distinct_degree(&self, f: &Poly) -> Vec<(Poly, u32)> {
        let mut out = Vec::new();
        let mut rest = self.monic(f);
        let mut x = self.rem(&self.t(), &rest);
        let q = num_bigint::BigUint::from(self.q());
        let mut d = 0;
        while rest.degree() >= 2 * (d as isize + 1) {
            d += 1;
            x = self.powmod(&x, &q, &rest);
            let g = self.gcd(&rest, &self.sub(&x, &self.t()));
            if g.degree() > 0 {
                out.push((g.clone(), d));
                rest = self.divrem(&rest, &g).0;
                x = self.rem(&x, &rest);
            }
        }
        if rest.degree() > 0 {
            out.push((rest.clone(), rest.degree() as u32));
        }
        out
    }

    /// Equal-degree splitting of a product of distinct monic irreducibles of degree `d`.
    pub fn equal_degree(&self, f: &Poly, d: u32, rng: &mut ChaCha8Rng) -> Vec<Poly> {
        let n = f.degree() as u32;
        if n == d {
            return vec![self.monic(f)];
        }
        let q = self.q();
        loop {
            let a = Poly(
                (0..n as usize).map(|_| rng.gen_range(0..q as u32)).collect(),
            )
            .trimmed();
            if a.degree() < 1 {
                continue;
            }
            let b = if q % 2 == 1 {
                let e = (num_bigint::BigUint::from(q).pow(d) - 1u32) / 2u32;
                self.sub(&self.powmod(&a, &e, f), &self.one())
            } else {
                // Trace map a + a^2 + ... + a^(2^(md - 1)) for q = 2^m.
                let m = q.trailing_zeros();
                let mut acc = self.rem(&a, f);
                let mut s = acc.clone();
                for _ in 1..m * d {
                    s = self.mulmod(&s, &s, f);
                    acc = self.add(&acc, &s);
                }
                acc
            };
            let g = self.gcd(f, &b);
            if g.degree() > 0 && g.degree() < f.degree() {
                let mut out = self.equal_degree(&g, d, rng);
                out.extend(self.equal_degree(&self.divrem(f, &g).0, d, rng));
                return out;
            }
        }
    }

    /// Factorization into monic irreducibles with multiplicities, sorted.
    /// Randomness in the splitting step comes from a fixed seed.
    pub fn factor(&self, f: &Poly) -> Vec<(Poly, u32)> {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let mut out = Vec::new();
        for (g, m) in self.squarefree(f) {
            for (h, d) in self.distinct_degree(&g) {
                for p in self.equal_degree(&h, d, &mut rng) {
                    out.push((p, m));
                }
            }
        }
        out.sort();
        out
    }
}

fn prime_divisors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pr(q: u64) -> PolyRing {
        PolyRing::new(Ring::field(q).unwrap())
    }

    #[test]
    fn division_identity() {
        let r = pr(7);
        let a = Poly(vec![3, 0, 5, 1, 6]);
        let b = Poly(vec![2, 1, 1]);
        let (q, m) = r.divrem(&a, &b);
        assert_eq!(r.add(&r.mul(&q, &b), &m), a);
        assert!(m.degree() < b.degree());
    }

    #[test]
    fn irreducibility_counts() {
        // Number of monic irreducibles of degree d over F_q.
        for (q, d, count) in [(2u64, 2usize, 1usize), (2, 3, 2), (3, 2, 3), (5, 2, 10), (4, 2, 6)] {
            let r = pr(q);
            let mut n = 0;
            let total = (q as usize).pow(d as u32);
            for low in 0..total {
                let mut c = Vec::new();
                let mut x = low;
                for _ in 0..d {
                    c.push((x % q as usize) as u32);
                    x /= q as usize;
                }
                c.push(1);
                if r.is_irreducible(&Poly(c)) {
                    n += 1;
                }
            }
            assert_eq!(n, count, "q={q} d={d}");
        }
    }

    #[test]
    fn factor_recovers_product() {
        for q in [3u64, 4, 5, 9] {
            let r = pr(q);
            let a = Poly(vec![1, 1]);
            let b = Poly(vec![r.field().from_int(2), 0, 1]);
            let c = Poly(vec![0, 1]);
            let f = r.mul(&r.mul(&r.pow(&a, 3), &b), &r.pow(&c, (q as u64) + 1));
            let fac = r.factor(&f);
            let back = fac.iter().fold(r.one(), |acc, (p, m)| r.mul(&acc, &r.pow(p, *m as u64)));
            assert_eq!(back, r.monic(&f), "q={q}");
            assert!(fac.iter().all(|(p, _)| r.is_irreducible(p)));
        }
    }
}
