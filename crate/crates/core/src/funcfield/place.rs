use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::poly::Poly;
use super::ratfunc::{FunctionField, RationalFunction};
use crate::error::{Error, Result};
use crate::rings::{Elem, Ring};

/// A place of `F_q(t)`: a monic irreducible `pi(t)` or the place at infinity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Place {
    Finite(Poly),
    Infinity,
}

/// A discrete valuation of `F_q(t)` with its residue field realized as a finite field.
#[derive(Clone)]
pub struct Valuation {
    field: FunctionField,
    place: Place,
    residue: Arc<Ring>,
    /// Image of each element of `F_q` in the residue field.
    embed: Vec<Elem>,
    /// A root of `pi` in the residue field.
    root: Elem,
    label: String,
}

impl fmt::Debug for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Valuation({})", self.label)
    }
}

impl Valuation {
    /// Parses `t`, `inf` or a monic irreducible polynomial in `t`.
    pub fn parse(field: &FunctionField, s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" => Ok(Self::new(field, Place::Infinity)?),
            other => {
                let f = field.parse(other)?;
                if f.den != field.polys().one() {
                    return Err(Error::Parse(format!("place `{s}` must be a polynomial")));
                }
                Self::new(field, Place::Finite(f.num))
            }
        }
    }

    pub fn t_adic(field: &FunctionField) -> Self {
        Self::new(field, Place::Finite(field.polys().t())).unwrap()
    }

    pub fn new(field: &FunctionField, place: Place) -> Result<Self> {
        let base = field.base().clone();
        let q = base.size() as u64;
        match &place {
            Place::Infinity => Ok(Valuation {
                field: field.clone(),
                place,
                embed: base.elements().collect(),
                residue: base,
                root: 0,
                label: "inf".into(),
            }),
            Place::Finite(pi) => {
                let pr = field.polys();
                if pi.lead() != base.one() || !pr.is_irreducible(pi) {
                    return Err(Error::Domain(format!(
                        "place `{}` is not a monic irreducible polynomial",
                        field.format_poly(pi)
                    )));
                }
                let d = pi.degree() as u32;
                let label = field.format_poly(pi);
                if d == 1 {
                    let root = base.neg(pi.coeff(0));
                    return Ok(Valuation {
                        field: field.clone(),
                        place,
                        embed: base.elements().collect(),
                        residue: base,
                        root,
                        label,
                    });
                }
                let residue = Ring::field(q.pow(d))?;
                let embed = embedding(&base, &residue);
                let pim: Vec<Elem> = pi.0.iter().map(|&c| embed[c as usize]).collect();
                let root = residue
                    .elements()
                    .find(|&x| eval_in(&residue, &pim, x) == 0)
                    .expect("an irreducible polynomial splits in its residue field");
                Ok(Valuation { field: field.clone(), place, residue, embed, root, label })
            }
        }
    }

    pub fn place(&self) -> &Place {
        &self.place
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn field(&self) -> &FunctionField {
        &self.field
    }

    pub fn residue_field(&self) -> &Arc<Ring> {
        &self.residue
    }

    /// The uniformizer `pi`, or `1/t` at infinity.
    pub fn uniformizer(&self) -> RationalFunction {
        match &self.place {
            Place::Finite(pi) => self.field.from_poly(pi.clone()),
            Place::Infinity => self.field.inv(&self.field.t()).unwrap(),
        }
    }

    fn ord(&self, a: &Poly, pi: &Poly) -> (i64, Poly) {
        let pr = self.field.polys();
        let mut a = a.clone();
        let mut k = 0;
        loop {
            let (quot, rem) = pr.divrem(&a, pi);
            if !rem.is_zero() {
                return (k, a);
            }
            a = quot;
            k += 1;
        }
    }

    pub fn valuation(&self, f: &RationalFunction) -> Result<i64> {
        if f.is_zero() {
            return Err(Error::Domain("valuation of 0".into()));
        }
        Ok(match &self.place {
            Place::Finite(pi) => self.ord(&f.num, pi).0 - self.ord(&f.den, pi).0,
            Place::Infinity => (f.den.degree() - f.num.degree()) as i64,
        })
    }

    /// Residue of an element of valuation 0.
    pub fn residue(&self, f: &RationalFunction) -> Result<Elem> {
        let v = self.valuation(f)?;
        if v != 0 {
            return Err(Error::Domain(format!(
                "{} has valuation {v} at {}",
                self.field.format(f),
                self.label
            )));
        }
        Ok(self.unit_residue_unchecked(f))
    }

    /// Residue of `f / pi^v(f)`.
    pub fn unit_residue(&self, f: &RationalFunction) -> Result<Elem> {
        if f.is_zero() {
            return Err(Error::Domain("residue of 0".into()));
        }
        Ok(self.unit_residue_unchecked(f))
    }

    fn unit_residue_unchecked(&self, f: &RationalFunction) -> Elem {
        let k = &self.residue;
        match &self.place {
            Place::Infinity => {
                let b = self.field.base();
                b.div(f.num.lead(), f.den.lead()).unwrap()
            }
            Place::Finite(pi) => {
                let (_, n) = self.ord(&f.num, pi);
                let (_, d) = self.ord(&f.den, pi);
                k.div(self.eval(&n), self.eval(&d)).unwrap()
            }
        }
    }

    fn eval(&self, a: &Poly) -> Elem {
        let m: Vec<Elem> = a.0.iter().map(|&c| self.embed[c as usize]).collect();
        eval_in(&self.residue, &m, self.root)
    }

    /// Image of a constant of `F_q` in the residue field.
    pub fn embed_constant(&self, c: Elem) -> Elem {
        self.embed[c as usize]
    }

    /// `(v(a) mod 2, square class of the residue of a / pi^v(a))`.
    pub fn square_class_data(&self, a: &RationalFunction) -> Result<(u8, u64)> {
        let v = self.valuation(a)?;
        let u = self.unit_residue(a)?;
        Ok((v.rem_euclid(2) as u8, self.residue.square_classes().class_of(u)))
    }
}

fn eval_in(ring: &Ring, coeffs: &[Elem], x: Elem) -> Elem {
    coeffs.iter().rev().fold(0, |acc, &c| ring.add(ring.mul(acc, x), c))
}

/// An embedding `F_q -> F_{q^d}` sending the polynomial generator of `F_q` to the
/// least root of its modulus.
fn embedding(base: &Ring, target: &Ring) -> Vec<Elem> {
    let ft = base.field_tables();
    let modulus: Vec<Elem> = ft.modulus.iter().map(|&c| target.from_int(c as i64)).collect();
    let beta = target
        .elements()
        .find(|&x| eval_in(target, &modulus, x) == 0)
        .expect("the modulus of F_q has a root in every extension");
    base.elements()
        .map(|a| {
            let c: Vec<Elem> =
                ft.coefficients(a).iter().map(|&ci| target.from_int(ci as i64)).collect();
            eval_in(target, &c, beta)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuations_and_residues() {
        let k = FunctionField::new(5).unwrap();
        let vt = Valuation::t_adic(&k);
        assert_eq!(vt.valuation(&k.parse("t^2+t").unwrap()).unwrap(), 1);
        assert_eq!(vt.residue(&k.parse("t+1").unwrap()).unwrap(), 1);
        let vi = Valuation::parse(&k, "inf").unwrap();
        assert_eq!(vi.valuation(&k.parse("(t^2+1)/t").unwrap()).unwrap(), -1);
        let k3 = FunctionField::new(3).unwrap();
        let vp = Valuation::parse(&k3, "t^2+1").unwrap();
        assert_eq!(vp.valuation(&k3.parse("t^2+1").unwrap()).unwrap(), 1);
        assert_eq!(vp.residue_field().size(), 9);
    }

    #[test]
    fn residue_is_multiplicative() {
        for (q, place) in [(3u64, "t^2+1"), (4, "t^2+t+g"), (5, "t+2"), (9, "inf")] {
            let k = FunctionField::new(q).unwrap();
            let v = Valuation::parse(&k, place).unwrap();
            let r = v.residue_field().clone();
            let xs: Vec<RationalFunction> = ["t+1", "t^2+2", "(t+g)/(t^2+t+1)", "t^3+t+1", "2*t-1"]
                .iter()
                .map(|s| k.parse(s).unwrap())
                .filter(|f| !f.is_zero())
                .collect();
            for a in &xs {
                for b in &xs {
                    let ab = k.mul(a, b);
                    let lhs = v.unit_residue(&ab).unwrap();
                    let rhs = r.mul(v.unit_residue(a).unwrap(), v.unit_residue(b).unwrap());
                    assert_eq!(lhs, rhs, "q={q} place={place}");
                    let s = k.add(a, b);
                    if !s.is_zero()
                        && v.valuation(a).unwrap() == 0
                        && v.valuation(b).unwrap() == 0
                        && v.valuation(&s).unwrap() == 0
                    {
                        let sum = r.add(v.residue(a).unwrap(), v.residue(b).unwrap());
                        assert_eq!(v.residue(&s).unwrap(), sum, "q={q} place={place}");
                    }
                }
            }
        }
    }
}
