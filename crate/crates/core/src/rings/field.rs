//! Arithmetic tables for a finite field `F_p[x]/(f)`.

/// Elements are indices `sum c_i p^i` over the coefficient vector of the
/// polynomial basis `1, x, ..., x^(n-1)`.
#[derive(Clone, Debug)]
pub struct FieldTables {
    pub p: u32,
    pub n: u32,
    pub q: u32,
    /// Monic modulus, low degree first, length `n + 1`.
    pub modulus: Vec<u32>,
    /// `exp[i] = x^i` for `0 <= i < q - 1`.
    pub exp: Vec<u32>,
    /// Discrete log of nonzero elements; `log[0]` is unused.
    pub log: Vec<u32>,
}

fn digits(mut a: u32, p: u32, n: u32) -> Vec<u32> {
    let mut d = Vec::with_capacity(n as usize);
    for _ in 0..n {
        d.push(a % p);
        a /= p;
    }
    d
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

impl FieldTables {
    /// Builds the field of order `p^n` over the least primitive modulus, where
    /// monic candidates are scanned by increasing index of their lower coefficients.
    pub fn new(p: u32, n: u32) -> Self {
        let q = p.pow(n);
        if n == 1 {
            let g = (1..p.max(2))
                .find(|&g| p == 2 || multiplicative_order(g, p) == p - 1)
                .unwrap_or(1);
            let mut exp = Vec::with_capacity((p - 1) as usize);
            let mut log = vec![0u32; p as usize];
            let mut x = 1u64;
            for i in 0..p - 1 {
                exp.push(x as u32);
                log[x as usize] = i;
                x = x * g as u64 % p as u64;
            }
            // Linear modulus x - g, so that x itself is the primitive element.
            let modulus = vec![(p - g % p) % p, 1];
            return FieldTables { p, n, q, modulus, exp, log };
        }
        for low in 0..q {
            let mut f = digits(low, p, n);
            if f[0] == 0 {
                continue;
            }
            f.push(1);
            if let Some(exp) = powers_of_x(&f, p, n, q) {
                let mut log = vec![0u32; q as usize];
                for (i, &e) in exp.iter().enumerate() {
                    log[e as usize] = i as u32;
                }
                return FieldTables { p, n, q, modulus: f, exp, log };
            }
        }
        unreachable!("a primitive polynomial always exists")
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.n == 1 {
            let s = a + b;
            return if s >= self.p { s - self.p } else { s };
        }
        if self.p == 2 {
            return a ^ b;
        }
        let (mut a, mut b) = (a, b);
        let (mut r, mut place) = (0u32, 1u32);
        while a > 0 || b > 0 {
            let s = a % self.p + b % self.p;
            r += if s >= self.p { s - self.p } else { s } * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        r
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if self.n == 1 {
            return if a == 0 { 0 } else { self.p - a };
        }
        if self.p == 2 {
            return a;
        }
        let (mut a, mut r, mut place) = (a, 0u32, 1u32);
        while a > 0 {
            let c = a % self.p;
            r += if c == 0 { 0 } else { self.p - c } * place;
            a /= self.p;
            place *= self.p;
        }
        r
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let m = self.q - 1;
        let e = (self.log[a as usize] + self.log[b as usize]) % m;
        self.exp[e as usize]
    }

    #[inline]
    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let m = self.q - 1;
        Some(self.exp[((m - self.log[a as usize]) % m) as usize])
    }

    /// Index of the prime-field element `c mod p`.
    pub fn from_int(&self, c: i64) -> u32 {
        c.rem_euclid(self.p as i64) as u32
    }

    /// The primitive element `x`.
    pub fn generator(&self) -> u32 {
        self.exp.get(1).copied().unwrap_or(1)
    }

    pub fn coefficients(&self, a: u32) -> Vec<u32> {
        digits(a, self.p, self.n)
    }

    pub fn from_coefficients(&self, c: &[u32]) -> u32 {
        undigits(c, self.p)
    }
}

fn multiplicative_order(g: u32, p: u32) -> u32 {
    let mut x = g as u64 % p as u64;
    let mut k = 1;
    while x != 1 {
        x = x * g as u64 % p as u64;
        k += 1;
        if k > p {
            return 0;
        }
    }
    k
}

/// Powers `x^0, ..., x^(q-2)` modulo `f`, if `x` has order exactly `q - 1`.
fn powers_of_x(f: &[u32], p: u32, n: u32, q: u32) -> Option<Vec<u32>> {
    let n = n as usize;
    let mut cur = vec![0u32; n];
    cur[0] = 1;
    let mut exp = Vec::with_capacity((q - 1) as usize);
    for i in 0..q - 1 {
        let idx = undigits(&cur, p);
        if i > 0 && idx == 1 {
            return None;
        }
        exp.push(idx);
        let top = cur[n - 1];
        for j in (1..n).rev() {
            cur[j] = cur[j - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for j in 0..n {
                cur[j] = (cur[j] + (p - f[j]) * top) % p;
            }
        }
    }
    (undigits(&cur, p) == 1).then_some(exp)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f9_modulus_and_tables() {
        let f = FieldTables::new(3, 2);
        assert_eq!(f.modulus, vec![2, 1, 1]); // x^2 + x + 2
        for a in 1..9 {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            assert_eq!(f.add(a, f.neg(a)), 0);
        }
    }

    #[test]
    fn distributive_f16() {
        let f = FieldTables::new(2, 4);
        for a in 0..16 {
            for b in 0..16 {
                for c in [0, 1, 5, 11] {
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }
}
