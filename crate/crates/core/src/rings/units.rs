//! Unit groups and square-class groups.

use std::collections::VecDeque;
use std::sync::Arc;

use super::{Elem, Ring, RingKind};
use crate::modz::{Int, PresentedModule, SparseRow};

/// The unit group `A^x` as `(+)_i Z/d_i` with an explicit discrete logarithm.
#[derive(Debug)]
pub struct UnitGroup {
    /// Nontrivial invariant factors, each dividing the next.
    pub invariants: Vec<u64>,
    /// `basis[i]` generates the `i`-th cyclic factor.
    pub basis: Vec<Elem>,
    rank: usize,
    dlog: Vec<u32>,
    order: u64,
}

impl UnitGroup {
    pub fn new(ring: &Ring) -> Self {
        let units = ring.units();
        let order = units.len() as u64;
        if ring.kind() == RingKind::Field {
            let f = ring.field_tables();
            if order <= 1 {
                return UnitGroup { invariants: vec![], basis: vec![], rank: 0, dlog: vec![], order };
            }
            let mut dlog = vec![0u32; ring.size() as usize];
            for (i, &e) in f.exp.iter().enumerate() {
                dlog[e as usize] = i as u32;
            }
            return UnitGroup {
                invariants: vec![order],
                basis: vec![f.generator()],
                rank: 1,
                dlog,
                order,
            };
        }
        let gens = greedy_generators(ring, &units);
        let m = gens.len();
        let size = ring.size() as usize;
        let mut vecs = vec![i64::MIN; size * m.max(1)];
        let mut seen = vec![false; size];
        let mut rels: Vec<SparseRow> = Vec::new();
        let one = ring.one();
        seen[one as usize] = true;
        for j in 0..m {
            vecs[one as usize * m + j] = 0;
        }
        let mut queue = VecDeque::from([one]);
        while let Some(u) = queue.pop_front() {
            for (j, &s) in gens.iter().enumerate() {
                let v = ring.mul(u, s);
                let mut vu: Vec<i64> = vecs[u as usize * m..u as usize * m + m].to_vec();
                vu[j] += 1;
                if !seen[v as usize] {
                    seen[v as usize] = true;
                    vecs[v as usize * m..v as usize * m + m].copy_from_slice(&vu);
                    queue.push_back(v);
                } else {
                    let vv = &vecs[v as usize * m..v as usize * m + m];
                    let r = SparseRow::from_pairs((0..m).map(|i| (i, vu[i] - vv[i])));
                    if !r.is_zero() {
                        rels.push(r);
                    }
                }
            }
        }
        let pm = PresentedModule::new(m, rels);
        let factors: Vec<u64> = pm
            .factors()
            .iter()
            .map(|d| d.to_i64().expect("finite unit group") as u64)
            .collect();
        let rank = factors.len();
        let mut dlog = vec![0u32; size * rank.max(1)];
        for &u in &units {
            let x: Vec<Int> = vecs[u as usize * m..u as usize * m + m].iter().map(|&c| Int::from(c)).collect();
            let y = pm.normal_form(&x);
            for (i, c) in y.iter().enumerate() {
                dlog[u as usize * rank + i] = c.to_i64().unwrap() as u32;
            }
        }
        let basis = (0..rank)
            .map(|i| {
                let l = pm.std_generator(i);
                let mut acc = one;
                for (j, c) in l.iter().enumerate() {
                    let c = c.to_i64().unwrap();
                    let g = if c >= 0 { gens[j] } else { ring.inv(gens[j]).unwrap() };
                    acc = ring.mul(acc, ring.pow(g, c.unsigned_abs()));
                }
                acc
            })
            .collect();
        UnitGroup { invariants: factors, basis, rank, dlog, order }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Coordinates of a unit with respect to [`basis`](Self::basis).
    pub fn dlog(&self, u: Elem) -> &[u32] {
        let r = self.rank;
        &self.dlog[u as usize * r..u as usize * r + r]
    }

    pub fn exp(&self, ring: &Ring, coords: &[u64]) -> Elem {
        coords
            .iter()
            .zip(&self.basis)
            .fold(ring.one(), |acc, (&c, &b)| ring.mul(acc, ring.pow(b, c)))
    }

    pub fn is_cyclic(&self) -> bool {
        self.rank <= 1
    }
}

fn greedy_generators(ring: &Ring, units: &[Elem]) -> Vec<Elem> {
    let mut gens: Vec<Elem> = Vec::new();
    let mut inside = vec![false; ring.size() as usize];
    inside[ring.one() as usize] = true;
    let mut members = vec![ring.one()];
    for &u in units {
        if inside[u as usize] {
            continue;
        }
        gens.push(u);
        // Close the subgroup under multiplication by the new generator.
        let mut frontier = members.clone();
        while let Some(x) = frontier.pop() {
            for &g in &gens {
                let y = ring.mul(x, g);
                if !inside[y as usize] {
                    inside[y as usize] = true;
                    members.push(y);
                    frontier.push(y);
                }
            }
        }
        if members.len() == units.len() {
            break;
        }
    }
    gens
}

/// `G_A = A^x / (A^x)^2`, an elementary abelian 2-group; classes are bitmasks.
#[derive(Clone, Debug)]
pub struct SquareClassGroup {
    units: Arc<UnitGroup>,
    /// Indices of the even invariant factors of the unit group.
    even: Vec<usize>,
}

impl SquareClassGroup {
    pub fn new(units: Arc<UnitGroup>) -> Self {
        let even = (0..units.rank).filter(|&i| units.invariants[i] % 2 == 0).collect();
        SquareClassGroup { units, even }
    }

    pub fn rank(&self) -> usize {
        self.even.len()
    }

    pub fn order(&self) -> usize {
        1 << self.rank()
    }

    /// Square class of a unit.
    pub fn class_of(&self, u: Elem) -> u64 {
        let d = self.units.dlog(u);
        self.even
            .iter()
            .enumerate()
            .fold(0, |acc, (b, &i)| acc | (((d[i] & 1) as u64) << b))
    }

    /// A unit representing the class.
    pub fn representative(&self, ring: &Ring, class: u64) -> Elem {
        self.even.iter().enumerate().fold(ring.one(), |acc, (b, &i)| {
            if class >> b & 1 == 1 {
                ring.mul(acc, self.units.basis[i])
            } else {
                acc
            }
        })
    }

    pub fn classes(&self) -> impl Iterator<Item = u64> {
        0..self.order() as u64
    }
}
