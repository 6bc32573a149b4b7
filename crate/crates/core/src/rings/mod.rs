//! Finite local rings with enumerable elements.
//!
//! Supported families: finite fields `F_q`, the rings `Z/p^k` for odd `p`, and
//! truncated polynomial rings `F_q[t]/(t^k)` for odd `q`. Elements are dense
//! indices `0..|A|`; see [`Ring`] for the encodings.

mod field;
mod units;

use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
pub use field::FieldTables;
pub use units::{SquareClassGroup, UnitGroup};

/// Index of a ring element.
pub type Elem = u32;

/// Largest supported ring order.
pub const MAX_ORDER: u64 = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RingKind {
    Field,
    IntegersMod,
    Truncated,
}

/// Parsed ring descriptor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RingDescriptor {
    pub kind: RingKind,
    /// Residue characteristic.
    pub p: u32,
    /// Residue field degree over `F_p`.
    pub n: u32,
    /// Nilpotency length: `A` has length `k` as a module over itself.
    pub k: u32,
}

/// `(p, e)` with `m = p^e`, `p` prime.
pub fn prime_power(m: u64) -> Option<(u32, u32)> {
    if m < 2 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= m && m % p != 0 {
        p += 1;
    }
    if m % p != 0 {
        p = m;
    }
    let (mut r, mut e) = (m, 0u32);
    while r % p == 0 {
        r /= p;
        e += 1;
    }
    (r == 1).then_some((p as u32, e))
}

fn parse_u64(s: &str, whole: &str) -> Result<u64> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Descriptor(whole.into(), format!("`{s}` is not a positive integer")));
    }
    s.parse::<u64>()
        .map_err(|_| Error::Descriptor(whole.into(), "integer out of range".into()))
}

impl RingDescriptor {
    pub fn field(q: u64) -> Result<Self> {
        format!("F_{q}").parse()
    }

    pub fn residue_order(&self) -> u64 {
        (self.p as u64).pow(self.n)
    }

    pub fn order(&self) -> u64 {
        self.residue_order().pow(self.k)
    }

    pub fn residue_descriptor(&self) -> RingDescriptor {
        RingDescriptor { kind: RingKind::Field, p: self.p, n: self.n, k: 1 }
    }

    fn validate(self, whole: &str) -> Result<Self> {
        let too_big = (self.p as u64)
            .checked_pow(self.n * self.k)
            .map_or(true, |m| m > MAX_ORDER);
        if too_big {
            return Err(Error::TooLarge(format!("{whole}: order exceeds 2^20")));
        }
        if self.kind != RingKind::Field && self.p == 2 {
            return Err(Error::Unsupported(format!(
                "{whole}: residue characteristic 2 is supported only for finite fields"
            )));
        }
        Ok(self)
    }
}

impl FromStr for RingDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| Error::Descriptor(s.to_string(), why.to_string());
        if s.chars().any(char::is_whitespace) {
            return Err(bad("descriptors contain no whitespace"));
        }
        let t = s;
        if let Some(rest) = t.strip_prefix("F_") {
            let (qs, tail) = match rest.find('[') {
                Some(i) => (&rest[..i], Some(&rest[i..])),
                None => (rest, None),
            };
            let q = parse_u64(qs, s)?;
            if q > MAX_ORDER {
                return Err(Error::TooLarge(format!("{s}: order exceeds 2^20")));
            }
            let (p, n) = prime_power(q).ok_or_else(|| bad("field order must be a prime power"))?;
            return match tail {
                None => RingDescriptor { kind: RingKind::Field, p, n, k: 1 }.validate(s),
                Some(tail) => {
                    let ks = tail
                        .strip_prefix("[t]/(t^")
                        .and_then(|r| r.strip_suffix(')'))
                        .ok_or_else(|| bad("expected F_q[t]/(t^k)"))?;
                    let k = parse_u64(ks, s)?;
                    if k == 0 || k > 20 {
                        return Err(bad("exponent k must satisfy 1 <= k <= 20"));
                    }
                    RingDescriptor { kind: RingKind::Truncated, p, n, k: k as u32 }.validate(s)
                }
            };
        }
        if let Some(rest) = t.strip_prefix("Z/") {
            let (p, k) = match rest.split_once('^') {
                Some((ps, ks)) => {
                    let p = parse_u64(ps, s)?;
                    let k = parse_u64(ks, s)?;
                    match prime_power(p) {
                        Some((pp, 1)) if k >= 1 && k <= 20 => (pp, k as u32),
                        _ => return Err(bad("expected Z/p^k with p prime and 1 <= k <= 20")),
                    }
                }
                None => {
                    let m = parse_u64(rest, s)?;
                    if m > MAX_ORDER {
                        return Err(Error::TooLarge(format!("{s}: order exceeds 2^20")));
                    }
                    prime_power(m).ok_or_else(|| bad("modulus must be a prime power"))?
                }
            };
            if p == 2 {
                return Err(Error::Unsupported(format!("{s}: Z/2^k is not supported")));
            }
            return RingDescriptor { kind: RingKind::IntegersMod, p, n: 1, k }.validate(s);
        }
        Err(bad("expected F_q, Z/m, Z/p^k or F_q[t]/(t^k)"))
    }
}

impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            RingKind::Field => write!(f, "F_{}", self.residue_order()),
            RingKind::IntegersMod => write!(f, "Z/{}", self.order()),
            RingKind::Truncated => write!(f, "F_{}[t]/(t^{})", self.residue_order(), self.k),
        }
    }
}

/// A finite local ring.
///
/// Encodings of the index of an element:
/// * `F_q`: `sum c_i p^i` over its coefficients in the polynomial basis;
/// * `Z/p^k`: the least nonnegative residue;
/// * `F_q[t]/(t^k)`: `sum a_i q^i` where `a_i` is the `F_q`-index of the
///   coefficient of `t^i`.
///
/// In every family `0` and `1` have indices `0` and `1`, the residue map is
/// reduction of the index modulo `q`, and the canonical order is the index order.
pub struct Ring {
    desc: RingDescriptor,
    size: u32,
    q: u32,
    modulus: u64,
    field: Arc<FieldTables>,
    inv: Vec<u32>,
    mul_table: Option<Vec<u32>>,
    residue: OnceLock<Arc<Ring>>,
    units: OnceLock<Arc<UnitGroup>>,
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring({})", self.desc)
    }
}

const NO_INV: u32 = u32::MAX;

impl Ring {
    pub fn new(desc: RingDescriptor) -> Result<Arc<Ring>> {
        let desc = desc.validate(&desc.to_string())?;
        let field = Arc::new(FieldTables::new(desc.p, desc.n));
        Ok(Arc::new(Ring::build(desc, field)))
    }

    pub fn parse(s: &str) -> Result<Arc<Ring>> {
        Ring::new(s.parse()?)
    }

    /// The finite field `F_q`.
    pub fn field(q: u64) -> Result<Arc<Ring>> {
        Ring::new(RingDescriptor::field(q)?)
    }

    fn build(desc: RingDescriptor, field: Arc<FieldTables>) -> Ring {
        let q = field.q;
        let size = desc.order() as u32;
        let mut r = Ring {
            desc,
            size,
            q,
            modulus: desc.order(),
            field,
            inv: Vec::new(),
            mul_table: None,
            residue: OnceLock::new(),
            units: OnceLock::new(),
        };
        if desc.kind == RingKind::Truncated && size <= 1024 {
            let mut t = vec![0u32; (size as usize) * (size as usize)];
            for a in 0..size {
                for b in 0..size {
                    t[(a * size + b) as usize] = r.mul_slow(a, b);
                }
            }
            r.mul_table = Some(t);
        }
        r.inv = (0..size).map(|a| r.inv_slow(a).unwrap_or(NO_INV)).collect();
        r
    }

    pub fn descriptor(&self) -> &RingDescriptor {
        &self.desc
    }

    pub fn kind(&self) -> RingKind {
        self.desc.kind
    }

    pub fn name(&self) -> String {
        self.desc.to_string()
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    /// Order of the residue field.
    pub fn residue_size(&self) -> u32 {
        self.q
    }

    pub fn characteristic_residue(&self) -> u32 {
        self.desc.p
    }

    pub fn is_field(&self) -> bool {
        self.desc.k == 1
    }

    pub fn field_tables(&self) -> &Arc<FieldTables> {
        &self.field
    }

    pub fn zero(&self) -> Elem {
        0
    }

    pub fn one(&self) -> Elem {
        1 % self.size
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.size
    }

    pub fn from_int(&self, c: i64) -> Elem {
        match self.desc.kind {
            RingKind::Field | RingKind::Truncated => self.field.from_int(c),
            RingKind::IntegersMod => c.rem_euclid(self.modulus as i64) as Elem,
        }
    }

    /// Coefficients of a truncated-polynomial element in `F_q` (length `k`).
    pub fn coeffs(&self, a: Elem) -> Vec<u32> {
        let mut a = a;
        (0..self.desc.k)
            .map(|_| {
                let c = a % self.q;
                a /= self.q;
                c
            })
            .collect()
    }

    pub fn from_coeffs(&self, c: &[u32]) -> Elem {
        c.iter().rev().fold(0, |acc, &x| acc * self.q + x)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        match self.desc.kind {
            RingKind::Field => self.field.add(a, b),
            RingKind::IntegersMod => ((a as u64 + b as u64) % self.modulus) as Elem,
            RingKind::Truncated => {
                if self.desc.k == 1 {
                    return self.field.add(a, b);
                }
                let (ca, cb) = (self.coeffs(a), self.coeffs(b));
                let c: Vec<u32> = ca.iter().zip(&cb).map(|(&x, &y)| self.field.add(x, y)).collect();
                self.from_coeffs(&c)
            }
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        match self.desc.kind {
            RingKind::Field => self.field.neg(a),
            RingKind::IntegersMod => ((self.modulus - a as u64) % self.modulus) as Elem,
            RingKind::Truncated => {
                let c: Vec<u32> = self.coeffs(a).iter().map(|&x| self.field.neg(x)).collect();
                self.from_coeffs(&c)
            }
        }
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if let Some(t) = &self.mul_table {
            return t[(a * self.size + b) as usize];
        }
        self.mul_slow(a, b)
    }

    fn mul_slow(&self, a: Elem, b: Elem) -> Elem {
        match self.desc.kind {
            RingKind::Field => self.field.mul(a, b),
            RingKind::IntegersMod => ((a as u64 * b as u64) % self.modulus) as Elem,
            RingKind::Truncated => {
                let k = self.desc.k as usize;
                let (ca, cb) = (self.coeffs(a), self.coeffs(b));
                let mut c = vec![0u32; k];
                for i in 0..k {
                    if ca[i] == 0 {
                        continue;
                    }
                    for j in 0..k - i {
                        c[i + j] = self.field.add(c[i + j], self.field.mul(ca[i], cb[j]));
                    }
                }
                self.from_coeffs(&c)
            }
        }
    }

    fn inv_slow(&self, a: Elem) -> Option<Elem> {
        if !self.is_unit(a) {
            return None;
        }
        match self.desc.kind {
            RingKind::Field => self.field.inv(a),
            RingKind::IntegersMod => {
                let (m, x) = (self.modulus as i64, a as i64);
                let (mut r0, mut r1, mut s0, mut s1) = (m, x, 0i64, 1i64);
                while r1 != 0 {
                    let qq = r0 / r1;
                    (r0, r1) = (r1, r0 - qq * r1);
                    (s0, s1) = (s1, s0 - qq * s1);
                }
                Some(s0.rem_euclid(m) as Elem)
            }
            RingKind::Truncated => {
                // Power series inversion.
                let k = self.desc.k as usize;
                let ca = self.coeffs(a);
                let i0 = self.field.inv(ca[0])?;
                let mut b = vec![0u32; k];
                b[0] = i0;
                for n in 1..k {
                    let mut s = 0;
                    for j in 1..=n {
                        s = self.field.add(s, self.field.mul(ca[j], b[n - j]));
                    }
                    b[n] = self.field.mul(self.field.neg(s), i0);
                }
                Some(self.from_coeffs(&b))
            }
        }
    }

    #[inline]
    pub fn is_unit(&self, a: Elem) -> bool {
        match self.desc.kind {
            RingKind::Field => a != 0,
            RingKind::IntegersMod => a % self.desc.p != 0,
            RingKind::Truncated => a % self.q != 0,
        }
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        let i = self.inv[a as usize];
        (i != NO_INV).then_some(i)
    }

    pub fn div(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.inv(b).map(|ib| self.mul(a, ib))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        let (mut base, mut e, mut acc) = (a, e, self.one());
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Residue in the residue field, as an index of [`residue_field`](Self::residue_field).
    #[inline]
    pub fn residue(&self, a: Elem) -> Elem {
        match self.desc.kind {
            RingKind::Field => a,
            RingKind::IntegersMod => a % self.desc.p,
            RingKind::Truncated => a % self.q,
        }
    }

    pub fn residue_field(&self) -> Arc<Ring> {
        self.residue
            .get_or_init(|| Arc::new(Ring::build(self.desc.residue_descriptor(), self.field.clone())))
            .clone()
    }

    pub fn units(&self) -> Vec<Elem> {
        self.elements().filter(|&a| self.is_unit(a)).collect()
    }

    pub fn num_units(&self) -> u32 {
        self.size / self.q * (self.q - 1)
    }

    /// `W_A = { u unit : 1 - u unit }` in canonical order.
    pub fn w_set(&self) -> Vec<Elem> {
        self.elements().filter(|&a| self.is_w(a)).collect()
    }

    #[inline]
    pub fn is_w(&self, a: Elem) -> bool {
        self.is_unit(a) && self.is_unit(self.sub(self.one(), a))
    }

    /// Principal units `1 + M`.
    pub fn principal_units(&self) -> Vec<Elem> {
        self.elements().filter(|&a| self.residue(a) == 1 % self.q).collect()
    }

    pub fn maximal_ideal(&self) -> Vec<Elem> {
        self.elements().filter(|&a| !self.is_unit(a)).collect()
    }

    pub fn unit_group(&self) -> Arc<UnitGroup> {
        self.units.get_or_init(|| Arc::new(UnitGroup::new(self))).clone()
    }

    pub fn square_classes(&self) -> SquareClassGroup {
        SquareClassGroup::new(self.unit_group())
    }

    pub fn format(&self, a: Elem) -> String {
        match self.desc.kind {
            RingKind::IntegersMod => a.to_string(),
            RingKind::Field => self.format_field(a),
            RingKind::Truncated => {
                let c = self.coeffs(a);
                let mut parts = Vec::new();
                for (i, &x) in c.iter().enumerate() {
                    if x == 0 {
                        continue;
                    }
                    let cs = self.format_field(x);
                    let cs = if self.desc.n > 1 && cs.contains('+') { format!("({cs})") } else { cs };
                    parts.push(match i {
                        0 => cs,
                        1 if x == 1 => "t".into(),
                        1 => format!("{cs}*t"),
                        _ if x == 1 => format!("t^{i}"),
                        _ => format!("{cs}*t^{i}"),
                    });
                }
                if parts.is_empty() { "0".into() } else { parts.join("+") }
            }
        }
    }

    fn format_field(&self, a: u32) -> String {
        if self.desc.n == 1 {
            return a.to_string();
        }
        let c = self.field.coefficients(a);
        let mut parts = Vec::new();
        for (i, &x) in c.iter().enumerate() {
            if x == 0 {
                continue;
            }
            parts.push(match (i, x) {
                (0, _) => x.to_string(),
                (1, 1) => "g".into(),
                (1, _) => format!("{x}*g"),
                (_, 1) => format!("g^{i}"),
                _ => format!("{x}*g^{i}"),
            });
        }
        if parts.is_empty() { "0".into() } else { parts.join("+") }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descriptors() {
        for (s, canon, size) in [
            ("F_9", "F_9", 9),
            ("Z/49", "Z/49", 49),
            ("Z/7^2", "Z/49", 49),
            ("F_5[t]/(t^2)", "F_5[t]/(t^2)", 25),
            ("F_4", "F_4", 4),
        ] {
            let r = Ring::parse(s).unwrap();
            assert_eq!(r.name(), canon);
            assert_eq!(r.size(), size);
        }
        for bad in ["F_6", "Z/8", "Z/2^3", "Z/12", "F_4[t]/(t^2)", "Q", "F_", "Z/9^2", "F_5[t]/(t^0)"] {
            assert!(bad.parse::<RingDescriptor>().is_err(), "{bad}");
        }
        assert!(matches!("F_2097152".parse::<RingDescriptor>(), Err(Error::TooLarge(_))));
    }

    #[test]
    fn w_counts() {
        for s in ["F_7", "F_9", "Z/49", "F_5[t]/(t^2)", "F_8", "Z/27"] {
            let r = Ring::parse(s).unwrap();
            let q = r.residue_size() as usize;
            assert_eq!(r.w_set().len(), (q - 2) * r.size() as usize / q, "{s}");
        }
    }

    #[test]
    fn truncated_inverse() {
        let r = Ring::parse("F_9[t]/(t^3)").unwrap();
        for a in r.units() {
            assert_eq!(r.mul(a, r.inv(a).unwrap()), 1);
        }
    }
}
