use serde::{Deserialize, Serialize};

use super::int::Int;

/// A sparse integer row: strictly increasing column indices, no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SparseRow {
    pub entries: Vec<(usize, Int)>,
}

impl SparseRow {
    pub fn new() -> Self {
        SparseRow::default()
    }

    /// Builds a row from unsorted `(column, coefficient)` pairs, merging duplicates.
    pub fn from_pairs<I, C>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (usize, C)>,
        C: Into<Int>,
    {
        let mut v: Vec<(usize, Int)> = pairs.into_iter().map(|(c, x)| (c, x.into())).collect();
        v.sort_by_key(|p| p.0);
        let mut out: Vec<(usize, Int)> = Vec::with_capacity(v.len());
        for (c, x) in v {
            match out.last_mut() {
                Some((lc, lx)) if *lc == c => *lx += &x,
                _ => out.push((c, x)),
            }
        }
        out.retain(|p| !p.1.is_zero());
        SparseRow { entries: out }
    }

    pub fn from_dense(v: &[Int]) -> Self {
        SparseRow {
            entries: v
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, x)| (i, x.clone()))
                .collect(),
        }
    }

    pub fn unit(i: usize) -> Self {
        SparseRow { entries: vec![(i, Int::ONE)] }
    }

    pub fn to_dense(&self, n: usize) -> Vec<Int> {
        let mut v = vec![Int::ZERO; n];
        for (c, x) in &self.entries {
            v[*c] = x.clone();
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, col: usize) -> Option<&Int> {
        self.entries
            .binary_search_by_key(&col, |p| p.0)
            .ok()
            .map(|i| &self.entries[i].1)
    }

    /// `self + k * other`.
    pub fn add_scaled(&self, other: &SparseRow, k: &Int) -> SparseRow {
        let (a, b) = (&self.entries, &other.entries);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i].clone());
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                let mut x = Int::ZERO;
                x.add_mul(&b[j].1, k);
                out.push((b[j].0, x));
                j += 1;
            } else {
                let mut x = a[i].1.clone();
                x.add_mul(&b[j].1, k);
                if !x.is_zero() {
                    out.push((a[i].0, x));
                }
                i += 1;
                j += 1;
            }
        }
        SparseRow { entries: out }
    }

    pub fn scale(&self, k: &Int) -> SparseRow {
        if k.is_zero() {
            return SparseRow::new();
        }
        SparseRow {
            entries: self.entries.iter().map(|(c, x)| (*c, x * k)).collect(),
        }
    }

    pub fn neg(&self) -> SparseRow {
        self.scale(&Int::from(-1))
    }

    /// Relabels columns through `map`; entries landing on the same column are merged.
    pub fn remap(&self, map: impl Fn(usize) -> usize) -> SparseRow {
        SparseRow::from_pairs(self.entries.iter().map(|(c, x)| (map(*c), x.clone())))
    }
}

/// A sparse integer matrix stored by rows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntMatrix {
    pub nrows: usize,
    pub ncols: usize,
    pub rows: Vec<SparseRow>,
}

impl IntMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        IntMatrix { nrows, ncols, rows: vec![SparseRow::new(); nrows] }
    }

    pub fn from_rows(ncols: usize, rows: Vec<SparseRow>) -> Self {
        debug_assert!(rows.iter().all(|r| r.entries.iter().all(|(c, _)| *c < ncols)));
        IntMatrix { nrows: rows.len(), ncols, rows }
    }

    pub fn from_dense<T: Clone + Into<Int>>(ncols: usize, data: &[Vec<T>]) -> Self {
        let rows = data
            .iter()
            .map(|r| {
                assert_eq!(r.len(), ncols);
                SparseRow::from_dense(&r.iter().map(|x| x.clone().into()).collect::<Vec<Int>>())
            })
            .collect();
        IntMatrix::from_rows(ncols, rows)
    }

    pub fn to_dense(&self) -> Vec<Vec<Int>> {
        self.rows.iter().map(|r| r.to_dense(self.ncols)).collect()
    }

    pub fn get(&self, i: usize, j: usize) -> Int {
        self.rows[i].get(j).cloned().unwrap_or(Int::ZERO)
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.ncols, other.nrows);
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut acc = SparseRow::new();
                for (k, x) in &r.entries {
                    acc = acc.add_scaled(&other.rows[*k], x);
                }
                acc
            })
            .collect();
        IntMatrix::from_rows(other.ncols, rows)
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut cols: Vec<Vec<(usize, Int)>> = vec![Vec::new(); self.ncols];
        for (i, r) in self.rows.iter().enumerate() {
            for (j, x) in &r.entries {
                cols[*j].push((i, x.clone()));
            }
        }
        IntMatrix::from_rows(
            self.nrows,
            cols.into_iter().map(|e| SparseRow { entries: e }).collect(),
        )
    }
}

/// Dense vector helpers.
pub fn vec_add_scaled(acc: &mut [Int], v: &[Int], k: &Int) {
    if k.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            a.add_mul(x, k);
        }
    }
}

pub fn vec_is_zero(v: &[Int]) -> bool {
    v.iter().all(Int::is_zero)
}
