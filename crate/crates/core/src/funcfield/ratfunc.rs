use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::poly::{Poly, PolyRing};
use crate::error::{Error, Result};
use crate::rings::{Elem, Ring};

/// `num / den` in lowest terms with `den` monic.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RationalFunction {
    pub num: Poly,
    pub den: Poly,
}

impl RationalFunction {
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

/// The rational function field `F_q(t)`.
#[derive(Clone, Debug)]
pub struct FunctionField {
    poly: PolyRing,
}

impl FunctionField {
    pub fn new(q: u64) -> Result<Self> {
        Ok(Self::over(Ring::field(q)?))
    }

    pub fn over(field: Arc<Ring>) -> Self {
        FunctionField { poly: PolyRing::new(field) }
    }

    pub fn base(&self) -> &Arc<Ring> {
        self.poly.field()
    }

    pub fn polys(&self) -> &PolyRing {
        &self.poly
    }

    pub fn q(&self) -> u64 {
        self.base().size() as u64
    }

    /// `num / den` reduced; errors if `den = 0`.
    pub fn fraction(&self, num: &Poly, den: &Poly) -> Result<RationalFunction> {
        if den.is_zero() {
            return Err(Error::Domain("division by zero in F_q(t)".into()));
        }
        if num.is_zero() {
            return Ok(self.zero());
        }
        let p = &self.poly;
        let g = p.gcd(num, den);
        let (n, d) = (p.divrem(num, &g).0, p.divrem(den, &g).0);
        let l = self.base().inv(d.lead()).unwrap();
        Ok(RationalFunction { num: p.scale(&n, l), den: p.scale(&d, l) })
    }

    pub fn from_poly(&self, p: Poly) -> RationalFunction {
        RationalFunction { num: p, den: self.poly.one() }
    }

    pub fn constant(&self, c: Elem) -> RationalFunction {
        self.from_poly(Poly::constant(c))
    }

    pub fn zero(&self) -> RationalFunction {
        self.from_poly(Poly::zero())
    }

    pub fn one(&self) -> RationalFunction {
        self.from_poly(self.poly.one())
    }

    pub fn t(&self) -> RationalFunction {
        self.from_poly(self.poly.t())
    }

    pub fn is_one(&self, a: &RationalFunction) -> bool {
        *a == self.one()
    }

    pub fn add(&self, a: &RationalFunction, b: &RationalFunction) -> RationalFunction {
        let p = &self.poly;
        let num = p.add(&p.mul(&a.num, &b.den), &p.mul(&b.num, &a.den));
        self.fraction(&num, &p.mul(&a.den, &b.den)).unwrap()
    }

    pub fn neg(&self, a: &RationalFunction) -> RationalFunction {
        RationalFunction { num: self.poly.neg(&a.num), den: a.den.clone() }
    }

    pub fn sub(&self, a: &RationalFunction, b: &RationalFunction) -> RationalFunction {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &RationalFunction, b: &RationalFunction) -> RationalFunction {
        let p = &self.poly;
        self.fraction(&p.mul(&a.num, &b.num), &p.mul(&a.den, &b.den)).unwrap()
    }

    pub fn inv(&self, a: &RationalFunction) -> Result<RationalFunction> {
        self.fraction(&a.den, &a.num)
    }

    pub fn div(&self, a: &RationalFunction, b: &RationalFunction) -> Result<RationalFunction> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &RationalFunction, e: i64) -> Result<RationalFunction> {
        let base = if e < 0 { self.inv(a)? } else { a.clone() };
        let p = &self.poly;
        let k = e.unsigned_abs();
        Ok(RationalFunction { num: p.pow(&base.num, k), den: p.pow(&base.den, k) })
    }

    pub fn format_poly(&self, a: &Poly) -> String {
        let f = self.base();
        let mut parts = Vec::new();
        for i in (0..a.0.len()).rev() {
            let c = a.0[i];
            if c == 0 {
                continue;
            }
            let cs = f.format(c);
            let cs = if cs.contains('+') { format!("({cs})") } else { cs };
            parts.push(match (i, c == f.one()) {
                (0, _) => cs,
                (1, true) => "t".into(),
                (1, false) => format!("{cs}*t"),
                (_, true) => format!("t^{i}"),
                (_, false) => format!("{cs}*t^{i}"),
            });
        }
        if parts.is_empty() { "0".into() } else { parts.join("+") }
    }

    pub fn format(&self, a: &RationalFunction) -> String {
        let n = self.format_poly(&a.num);
        if a.den == self.poly.one() {
            return n;
        }
        let wrap = |s: String| if s.contains('+') { format!("({s})") } else { s };
        format!("{}/{}", wrap(n), wrap(self.format_poly(&a.den)))
    }

    /// Parses expressions in `t`, integer constants and the field generator `g`
    /// with `+ - * / ^` and parentheses.
    pub fn parse(&self, s: &str) -> Result<RationalFunction> {
        let toks: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut pos = 0;
        let v = self.parse_sum(&toks, &mut pos)?;
        if pos != toks.len() {
            return Err(Error::Parse(format!("unexpected `{}` in `{s}`", toks[pos])));
        }
        Ok(v)
    }

    fn parse_sum(&self, toks: &[char], pos: &mut usize) -> Result<RationalFunction> {
        let mut acc = self.parse_product(toks, pos)?;
        while let Some(&c) = toks.get(*pos) {
            if c != '+' && c != '-' {
                break;
            }
            *pos += 1;
            let rhs = self.parse_product(toks, pos)?;
            acc = if c == '+' { self.add(&acc, &rhs) } else { self.sub(&acc, &rhs) };
        }
        Ok(acc)
    }

    fn parse_product(&self, toks: &[char], pos: &mut usize) -> Result<RationalFunction> {
        let mut acc = self.parse_power(toks, pos)?;
        while let Some(&c) = toks.get(*pos) {
            if c != '*' && c != '/' {
                break;
            }
            *pos += 1;
            let rhs = self.parse_power(toks, pos)?;
            acc = if c == '*' { self.mul(&acc, &rhs) } else { self.div(&acc, &rhs)? };
        }
        Ok(acc)
    }

    fn parse_power(&self, toks: &[char], pos: &mut usize) -> Result<RationalFunction> {
        if toks.get(*pos) == Some(&'-') {
            *pos += 1;
            return Ok(self.neg(&self.parse_power(toks, pos)?));
        }
        let base = self.parse_atom(toks, pos)?;
        if toks.get(*pos) == Some(&'^') {
            *pos += 1;
            let neg = toks.get(*pos) == Some(&'-');
            if neg {
                *pos += 1;
            }
            let e = parse_uint(toks, pos)? as i64;
            return self.pow(&base, if neg { -e } else { e });
        }
        Ok(base)
    }

    fn parse_atom(&self, toks: &[char], pos: &mut usize) -> Result<RationalFunction> {
        match toks.get(*pos) {
            Some('(') => {
                *pos += 1;
                let v = self.parse_sum(toks, pos)?;
                if toks.get(*pos) != Some(&')') {
                    return Err(Error::Parse("missing `)`".into()));
                }
                *pos += 1;
                Ok(v)
            }
            Some('t') => {
                *pos += 1;
                Ok(self.t())
            }
            Some('g') => {
                *pos += 1;
                Ok(self.constant(self.base().field_tables().generator()))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = parse_uint(toks, pos)?;
                let p = self.base().characteristic_residue() as u64;
                Ok(self.constant(self.base().from_int((n % p) as i64)))
            }
            Some(c) => Err(Error::Parse(format!("unexpected `{c}`"))),
            None => Err(Error::Parse("unexpected end of expression".into())),
        }
    }
}

fn parse_uint(toks: &[char], pos: &mut usize) -> Result<u64> {
    let start = *pos;
    while toks.get(*pos).is_some_and(|c| c.is_ascii_digit()) {
        *pos += 1;
    }
    if start == *pos {
        return Err(Error::Parse("expected an integer".into()));
    }
    toks[start..*pos]
        .iter()
        .collect::<String>()
        .parse()
        .map_err(|_| Error::Parse("integer out of range".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        let k = FunctionField::new(5).unwrap();
        for s in ["t^2+3*t+1", "(t+1)/(t^2+2)", "1/t", "3", "t^-2"] {
            let a = k.parse(s).unwrap();
            assert_eq!(k.parse(&k.format(&a)).unwrap(), a, "{s}");
        }
        assert_eq!(k.parse("(t^2-1)/(t-1)").unwrap(), k.parse("t+1").unwrap());
        assert_eq!(k.parse("5*t").unwrap(), k.zero());
    }

    #[test]
    fn field_axioms_sample() {
        let k = FunctionField::new(7).unwrap();
        let a = k.parse("(t+3)/(t^2+1)").unwrap();
        let b = k.parse("t^3-2").unwrap();
        let c = k.parse("2/(t+5)").unwrap();
        assert_eq!(k.mul(&a, &k.add(&b, &c)), k.add(&k.mul(&a, &b), &k.mul(&a, &c)));
        assert_eq!(k.mul(&a, &k.inv(&a).unwrap()), k.one());
        assert!(k.inv(&k.zero()).is_err());
    }
}
