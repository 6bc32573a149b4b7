use std::sync::Arc;

use crate::modz::{Int, PresentedModule, SparseRow};
use crate::rings::{Elem, Ring, UnitGroup};

/// `asym^2(A^x)`, presented on `e_i o e_j` (`i <= j`) over an invariant-factor
/// basis `e_i` of the unit group.
#[derive(Clone, Debug)]
pub struct AsymSquare {
    units: Arc<UnitGroup>,
    pairs: Vec<(usize, usize)>,
    pub module: PresentedModule,
}

impl AsymSquare {
    pub fn new(ring: &Ring) -> Self {
        let units = ring.unit_group();
        let d = &units.invariants;
        let s = d.len();
        let mut pairs = Vec::new();
        let mut rels = Vec::new();
        for i in 0..s {
            for j in i..s {
                let idx = pairs.len();
                pairs.push((i, j));
                let g = if i == j {
                    Int::from(d[i] as i64).gcd(&Int::from(2))
                } else {
                    Int::from(d[i] as i64).gcd(&Int::from(d[j] as i64))
                };
                rels.push(SparseRow { entries: vec![(idx, g)] });
            }
        }
        let module = PresentedModule::new(pairs.len(), rels);
        AsymSquare { units, pairs, module }
    }

    pub fn ngens(&self) -> usize {
        self.pairs.len()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// `x o y` in generator coordinates.
    pub fn circ(&self, x: Elem, y: Elem) -> Vec<Int> {
        let a = self.units.dlog(x);
        let b = self.units.dlog(y);
        self.pairs
            .iter()
            .map(|&(i, j)| {
                let (ai, aj, bi, bj) = (a[i] as i64, a[j] as i64, b[i] as i64, b[j] as i64);
                if i == j {
                    Int::from(ai * bi)
                } else {
                    Int::from(ai * bj - aj * bi)
                }
            })
            .collect()
    }
}
