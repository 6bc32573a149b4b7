use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::place::Valuation;
use super::ratfunc::{FunctionField, RationalFunction};
use crate::error::{Error, Result};
use crate::modz::{vec_add_scaled, Int};
use crate::scissors::verify::tnorm;
use crate::scissors::{add, scale, Element, ScissorsTower};

/// An element of `RP~(k)_F` in the normal form `1 (x) m_0 + <pi> (x) m_1`, with
/// `m_0, m_1` in `RP(k)` generator coordinates, read modulo `K_1(k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedElement {
    pub parts: [Element; 2],
}

/// One term `c <b> [a]` of a formal `Z[G_F]`-combination.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub coeff: i64,
    pub class: RationalFunction,
    pub symbol: RationalFunction,
}

/// `S_v: RP(F) -> RP~(k)_F` for a place `v` of `F = F_q(t)`.
#[derive(Clone, Debug)]
pub struct Specializer {
    v: Valuation,
    tower: Arc<ScissorsTower>,
    c_tilde: Element,
}

impl Specializer {
    pub fn new(v: Valuation) -> Result<Self> {
        let tower = Arc::new(ScissorsTower::build(v.residue_field().clone())?);
        Ok(Self::with_tower(v, tower))
    }

    /// Reuses an existing tower over the residue field.
    pub fn with_tower(v: Valuation, tower: Arc<ScissorsTower>) -> Self {
        assert_eq!(tower.ring().descriptor(), v.residue_field().descriptor());
        let c_tilde = tower.c_tilde();
        Specializer { v, tower, c_tilde }
    }

    pub fn valuation(&self) -> &Valuation {
        &self.v
    }

    pub fn field(&self) -> &FunctionField {
        self.v.field()
    }

    pub fn tower(&self) -> &Arc<ScissorsTower> {
        &self.tower
    }

    /// `(v(b) mod 2, square class of the unit residue of b)`.
    pub fn class_data(&self, b: &RationalFunction) -> Result<(u8, u64)> {
        let v = self.v.valuation(b)?;
        let u = self.v.unit_residue(b)?;
        Ok((v.rem_euclid(2) as u8, self.tower.class_of(u)))
    }

    pub fn zero(&self) -> InducedElement {
        InducedElement { parts: [self.tower.zero(), self.tower.zero()] }
    }

    pub fn add(&self, a: &InducedElement, b: &InducedElement) -> InducedElement {
        InducedElement { parts: [add(&a.parts[0], &b.parts[0]), add(&a.parts[1], &b.parts[1])] }
    }

    pub fn scale(&self, a: &InducedElement, k: i64) -> InducedElement {
        InducedElement { parts: [scale(&a.parts[0], k), scale(&a.parts[1], k)] }
    }

    /// The action of `<b>`, `b` in `F^x`.
    pub fn act(&self, b: &RationalFunction, x: &InducedElement) -> Result<InducedElement> {
        let (eps, cls) = self.class_data(b)?;
        let g = crate::groupring::GroupRingElement::class(cls);
        let moved = [self.tower.act(&g, &x.parts[0]), self.tower.act(&g, &x.parts[1])];
        Ok(if eps == 0 {
            InducedElement { parts: moved }
        } else {
            let [m0, m1] = moved;
            InducedElement { parts: [m1, m0] }
        })
    }

    /// `S_v([a])`: `1 (x) [a bar]`, `1 (x) C~_k` or `-(1 (x) C~_k)` as `v(a)` is zero,
    /// positive or negative. `[1] = 0` in `RP(k)`.
    pub fn symbol(&self, a: &RationalFunction) -> Result<InducedElement> {
        let f = self.field();
        if a.is_zero() || f.is_one(a) {
            return Err(Error::Domain(format!("[{}] needs a symbol other than 0, 1", f.format(a))));
        }
        let v = self.v.valuation(a)?;
        let m = match v.signum() {
            0 => {
                let r = self.v.residue(a)?;
                if r == self.tower.ring().one() {
                    self.tower.zero()
                } else {
                    self.tower.bracket(r)
                }
            }
            1 => self.c_tilde.clone(),
            _ => scale(&self.c_tilde, -1),
        };
        Ok(InducedElement { parts: [m, self.tower.zero()] })
    }

    pub fn specialize(&self, expr: &[Term]) -> Result<InducedElement> {
        let mut acc = self.zero();
        for t in expr {
            let s = self.act(&t.class, &self.symbol(&t.symbol)?)?;
            acc = self.add(&acc, &self.scale(&s, t.coeff));
        }
        Ok(acc)
    }

    pub fn is_zero(&self, x: &InducedElement) -> bool {
        let red = self.tower.reduced();
        x.parts.iter().all(|m| red.zero_in_tilde(&self.tower, m))
    }

    /// Zero after further reduction to `RP-(k)_F`.
    pub fn is_zero_bar(&self, x: &InducedElement) -> bool {
        let red = self.tower.reduced();
        x.parts.iter().all(|m| red.zero_in_bar(&self.tower, m))
    }

    /// Normal forms of both graded parts in `RP~(k)` coordinates.
    pub fn normal_form(&self, x: &InducedElement) -> [Vec<Int>; 2] {
        let red = self.tower.reduced();
        [red.to_tilde(&self.tower, &x.parts[0]), red.to_tilde(&self.tower, &x.parts[1])]
    }

    /// `(lambda~_1)_F` of an element: both parts in `Z[G_k] / p^+(-1)`.
    pub fn lambda1_tilde(&self, x: &InducedElement) -> [Vec<Int>; 2] {
        let qzg = &self.tower.reduced().qzg;
        [
            qzg.normal_form(&self.tower.lambda1(&x.parts[0])),
            qzg.normal_form(&self.tower.lambda1(&x.parts[1])),
        ]
    }

    /// `lambda~_1([a]) (x) 1` for `a` in `F \ {0, 1}`.
    pub fn lambda1_symbol(&self, a: &RationalFunction) -> Result<[Vec<Int>; 2]> {
        let f = self.field();
        let b = f.sub(&f.one(), a);
        let ng = 1usize << self.tower.rank();
        let mut parts = [vec![Int::ZERO; ng], vec![Int::ZERO; ng]];
        // <<1-a>><<a>> = <(1-a)a> - <1-a> - <a> + 1.
        for (c, x) in [(1, f.mul(&b, a)), (-1, b), (-1, a.clone()), (1, f.one())] {
            let (eps, cls) = self.class_data(&x)?;
            parts[eps as usize][cls as usize] += &Int::from(c as i64);
        }
        let qzg = &self.tower.reduced().qzg;
        Ok([qzg.normal_form(&parts[0]), qzg.normal_form(&parts[1])])
    }

    /// `delta_pi = (rho_pi (x) id) o S_v`: the `<pi>` component, with a flag for
    /// membership in the kernel of `lambda~_1`.
    pub fn delta_pi(&self, expr: &[Term]) -> Result<DeltaPi> {
        let s = self.specialize(expr)?;
        let red = self.tower.reduced();
        let in_kernel = red.qzg.is_zero(&self.tower.lambda1(&s.parts[1]));
        Ok(DeltaPi { value: red.to_tilde(&self.tower, &s.parts[1]), in_kernel })
    }

    /// Whether `a` lies in `N_F = pi^(2Z) N~_k`: `v(a)` even and the residue of the
    /// unit part in `N_k`.
    pub fn tnorm_membership(&self, a: &RationalFunction) -> Result<bool> {
        let k = self.v.residue_field();
        if k.characteristic_residue() == 3 {
            return Err(Error::Hypothesis("residue characteristic 3".into()));
        }
        if crate::scissors::verify::phi_has_root(k) {
            return Err(Error::Hypothesis("the residue field contains a primitive cube root of 1".into()));
        }
        let v = self.v.valuation(a)?;
        let u = self.v.unit_residue(a)?;
        let (n, _) = tnorm(k);
        Ok(v % 2 == 0 && n.contains(&u))
    }

    /// Parses `c*{b}[a] + ...`; the class `{b}` and coefficient `c*` are optional.
    pub fn parse_expr(&self, s: &str) -> Result<Vec<Term>> {
        parse_expr(self.field(), s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaPi {
    pub value: Vec<Int>,
    pub in_kernel: bool,
}

fn take_bracketed(chars: &[char], pos: &mut usize, open: char, close: char) -> Result<String> {
    debug_assert_eq!(chars[*pos], open);
    let mut depth = 0;
    let start = *pos + 1;
    while *pos < chars.len() {
        let c = chars[*pos];
        if c == open {
            depth += 1;
        } else if c == close {
            depth -= 1;
            if depth == 0 {
                *pos += 1;
                return Ok(chars[start..*pos - 1].iter().collect());
            }
        }
        *pos += 1;
    }
    Err(Error::Parse(format!("unbalanced `{open}`")))
}

pub fn parse_expr(f: &FunctionField, s: &str) -> Result<Vec<Term>> {
    let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut pos = 0;
    let mut out = Vec::new();
    if chars.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    while pos < chars.len() {
        let mut sign = 1i64;
        while pos < chars.len() && (chars[pos] == '+' || chars[pos] == '-') {
            if chars[pos] == '-' {
                sign = -sign;
            }
            pos += 1;
        }
        let mut coeff = 1i64;
        let start = pos;
        while pos < chars.len() && chars[pos].is_ascii_digit() {
            pos += 1;
        }
        if pos > start {
            coeff = chars[start..pos]
                .iter()
                .collect::<String>()
                .parse()
                .map_err(|_| Error::Parse("coefficient out of range".into()))?;
            if chars.get(pos) == Some(&'*') {
                pos += 1;
            } else {
                return Err(Error::Parse("expected `*` after a coefficient".into()));
            }
        }
        let class = if chars.get(pos) == Some(&'{') {
            let b = take_bracketed(&chars, &mut pos, '{', '}')?;
            let b = f.parse(&b)?;
            if b.is_zero() {
                return Err(Error::Domain("square class of 0".into()));
            }
            b
        } else {
            f.one()
        };
        if chars.get(pos) != Some(&'[') {
            return Err(Error::Parse(format!("expected `[` at position {pos} of `{s}`")));
        }
        let a = take_bracketed(&chars, &mut pos, '[', ']')?;
        let symbol = f.parse(&a)?;
        out.push(Term { coeff: sign * coeff, class, symbol });
        if pos < chars.len() && chars[pos] != '+' && chars[pos] != '-' {
            return Err(Error::Parse(format!("expected `+` or `-` at position {pos} of `{s}`")));
        }
    }
    Ok(out)
}

/// The formal five-term expression `S_{x,y}` in `Z[G_F][F \ {0,1}]`, with
/// symbols equal to 1 dropped.
pub fn five_term(f: &FunctionField, x: &RationalFunction, y: &RationalFunction) -> Result<Vec<Term>> {
    let one = f.one();
    let xi = f.inv(x)?;
    let yi = f.inv(y)?;
    let u = f.div(y, x)?;
    let w = f.div(&f.sub(&one, x), &f.sub(&one, y))?;
    let uw = f.div(&f.sub(&one, &xi), &f.sub(&one, &yi))?;
    let terms = [
        (1, one.clone(), x.clone()),
        (-1, one.clone(), y.clone()),
        (1, x.clone(), u),
        (-1, f.sub(&xi, &one), uw),
        (1, f.sub(&one, x), w),
    ];
    Ok(terms
        .into_iter()
        .filter(|(_, _, a)| !f.is_one(a))
        .map(|(coeff, class, symbol)| Term { coeff, class, symbol })
        .collect())
}

/// Adds `k` times `v` into `acc`.
pub fn accumulate(acc: &mut InducedElement, v: &InducedElement, k: i64) {
    for i in 0..2 {
        vec_add_scaled(&mut acc.parts[i], &v.parts[i], &Int::from(k));
    }
}
