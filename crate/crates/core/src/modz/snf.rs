//! Dense Smith normal form, row lattice bases and kernels modulo invariant factors.

use super::int::Int;
use super::sparse::{vec_add_scaled, vec_is_zero, IntMatrix};

/// `left * m * right = diag`, with `diag` of length `min(rows, cols)` and
/// every nonzero entry dividing the next.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub diag: Vec<Int>,
    pub left: Vec<Vec<Int>>,
    pub right: Vec<Vec<Int>>,
}

fn identity(n: usize) -> Vec<Vec<Int>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Int::ONE } else { Int::ZERO }).collect())
        .collect()
}

/// Working state for the dense elimination. Column operations are mirrored on
/// `right` and, inversely, on `right_inv`; row operations on `left`.
pub(crate) struct DenseSnf {
    pub a: Vec<Vec<Int>>,
    pub r: usize,
    pub c: usize,
    pub left: Option<Vec<Vec<Int>>>,
    pub right: Option<Vec<Vec<Int>>>,
    pub right_inv: Option<Vec<Vec<Int>>>,
}

impl DenseSnf {
    pub fn new(a: Vec<Vec<Int>>, c: usize, track_left: bool, track_right: bool) -> Self {
        let r = a.len();
        DenseSnf {
            a,
            r,
            c,
            left: track_left.then(|| identity(r)),
            right: track_right.then(|| identity(c)),
            right_inv: track_right.then(|| identity(c)),
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        if let Some(l) = &mut self.left {
            l.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in &mut self.a {
            row.swap(i, j);
        }
        if let Some(rt) = &mut self.right {
            for row in rt.iter_mut() {
                row.swap(i, j);
            }
        }
        if let Some(ri) = &mut self.right_inv {
            ri.swap(i, j);
        }
    }

    /// row_i += q * row_j
    fn row_addmul(&mut self, i: usize, j: usize, q: &Int) {
        if q.is_zero() {
            return;
        }
        let (src, dst) = two_mut(&mut self.a, j, i);
        vec_add_scaled(dst, src, q);
        if let Some(l) = &mut self.left {
            let (src, dst) = two_mut(l, j, i);
            vec_add_scaled(dst, src, q);
        }
    }

    /// col_j += q * col_k
    fn col_addmul(&mut self, j: usize, k: usize, q: &Int) {
        if q.is_zero() {
            return;
        }
        for row in &mut self.a {
            if !row[k].is_zero() {
                let t = row[k].clone();
                row[j].add_mul(&t, q);
            }
        }
        if let Some(rt) = &mut self.right {
            for row in rt.iter_mut() {
                if !row[k].is_zero() {
                    let t = row[k].clone();
                    row[j].add_mul(&t, q);
                }
            }
        }
        if let Some(ri) = &mut self.right_inv {
            let nq = -q;
            let (src, dst) = two_mut(ri, j, k);
            vec_add_scaled(dst, src, &nq);
        }
    }

    fn neg_row(&mut self, i: usize) {
        for x in &mut self.a[i] {
            *x = -(x.clone());
        }
        if let Some(l) = &mut self.left {
            for x in &mut l[i] {
                *x = -(x.clone());
            }
        }
    }

    /// Runs the elimination; returns the diagonal of length `min(r, c)`.
    pub fn run(&mut self) -> Vec<Int> {
        let n = self.r.min(self.c);
        let mut k = 0;
        while k < n {
            let Some((pi, pj)) = self.min_abs(k) else { break };
            self.swap_rows(k, pi);
            self.swap_cols(k, pj);
            loop {
                let p = self.a[k][k].clone();
                let mut clean = true;
                for i in k + 1..self.r {
                    if !self.a[i][k].is_zero() {
                        let q = -self.a[i][k].div_round(&p);
                        self.row_addmul(i, k, &q);
                        clean &= self.a[i][k].is_zero();
                    }
                }
                for j in k + 1..self.c {
                    if !self.a[k][j].is_zero() {
                        let q = -self.a[k][j].div_round(&p);
                        self.col_addmul(j, k, &q);
                        clean &= self.a[k][j].is_zero();
                    }
                }
                if !clean {
                    let mut best: Option<(bool, usize)> = None;
                    let mut best_val = p.clone();
                    for i in k + 1..self.r {
                        let v = &self.a[i][k];
                        if !v.is_zero() && v.cmp_abs(&best_val).is_lt() {
                            best_val = v.clone();
                            best = Some((true, i));
                        }
                    }
                    for j in k + 1..self.c {
                        let v = &self.a[k][j];
                        if !v.is_zero() && v.cmp_abs(&best_val).is_lt() {
                            best_val = v.clone();
                            best = Some((false, j));
                        }
                    }
                    match best {
                        Some((true, i)) => self.swap_rows(k, i),
                        Some((false, j)) => self.swap_cols(k, j),
                        None => {}
                    }
                    continue;
                }
                let bad = (k + 1..self.r).find(|&i| {
                    self.a[i][k + 1..].iter().any(|x| !x.is_zero() && !p.divides(x))
                });
                match bad {
                    Some(i) => self.row_addmul(k, i, &Int::ONE),
                    None => break,
                }
            }
            if self.a[k][k].is_negative() {
                self.neg_row(k);
            }
            k += 1;
        }
        (0..n).map(|i| self.a[i][i].clone()).collect()
    }

    fn min_abs(&self, k: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in k..self.r {
            for j in k..self.c {
                let v = &self.a[i][j];
                if v.is_zero() {
                    continue;
                }
                if v.is_unit() {
                    return Some((i, j));
                }
                if best.map_or(true, |(bi, bj)| v.cmp_abs(&self.a[bi][bj]).is_lt()) {
                    best = Some((i, j));
                }
            }
        }
        best
    }
}

fn two_mut<T>(v: &mut [T], src: usize, dst: usize) -> (&T, &mut T) {
    assert_ne!(src, dst);
    if src < dst {
        let (a, b) = v.split_at_mut(dst);
        (&a[src], &mut b[0])
    } else {
        let (a, b) = v.split_at_mut(src);
        (&b[0], &mut a[dst])
    }
}

/// Smith normal form with both transforms.
pub fn smith_form(m: &IntMatrix) -> SmithForm {
    let mut s = DenseSnf::new(m.to_dense(), m.ncols, true, true);
    let diag = s.run();
    SmithForm { diag, left: s.left.unwrap(), right: s.right.unwrap() }
}

/// Diagonal of the Smith normal form (length `min(rows, cols)`).
pub fn smith_diagonal(m: &IntMatrix) -> Vec<Int> {
    let rows = row_basis(m.to_dense(), m.ncols);
    let mut s = DenseSnf::new(rows, m.ncols, false, false);
    let mut d = s.run();
    d.resize(m.nrows.min(m.ncols), Int::ZERO);
    d
}

/// A basis of the row lattice of `rows`, found by unimodular row operations
/// that always pivot on an entry of least absolute value.
pub fn row_basis(rows: Vec<Vec<Int>>, ncols: usize) -> Vec<Vec<Int>> {
    let mut active: Vec<Vec<Int>> = rows.into_iter().filter(|r| !vec_is_zero(r)).collect();
    let mut out = Vec::new();
    while !active.is_empty() {
        let mut best: Option<(usize, usize)> = None;
        for (i, r) in active.iter().enumerate() {
            for (j, x) in r.iter().enumerate().take(ncols) {
                if x.is_zero() {
                    continue;
                }
                if best.map_or(true, |(bi, bj)| x.cmp_abs(&active[bi][bj]).is_lt()) {
                    best = Some((i, j));
                    if x.is_unit() {
                        break;
                    }
                }
            }
            if best.is_some_and(|(bi, bj)| active[bi][bj].is_unit()) {
                break;
            }
        }
        let col = best.expect("active rows are nonzero").1;
        loop {
            let pi = (0..active.len())
                .filter(|&i| !active[i][col].is_zero())
                .min_by(|&a, &b| active[a][col].cmp_abs(&active[b][col]))
                .unwrap();
            let piv = active[pi].clone();
            let mut clean = true;
            for (i, r) in active.iter_mut().enumerate() {
                if i == pi || r[col].is_zero() {
                    continue;
                }
                let q = -r[col].div_round(&piv[col]);
                vec_add_scaled(r, &piv, &q);
                if !r[col].is_zero() {
                    clean = false;
                }
            }
            if clean {
                out.push(active.swap_remove(pi));
                active.retain(|r| !vec_is_zero(r));
                break;
            }
        }
    }
    out
}

/// Basis of `{c in Z^k : sum_j c_j * y_j == 0 (mod moduli, columnwise)}`, where
/// `y` has `k` rows of width `moduli.len()` and a zero modulus means no reduction.
pub fn kernel_lattice(y: &[Vec<Int>], moduli: &[Int]) -> Vec<Vec<Int>> {
    let k = y.len();
    let t = moduli.len();
    // Work rows carry (y-part, coefficient part, index of the modulus they encode).
    let mut rows: Vec<(Vec<Int>, Vec<Int>, Option<usize>)> = y
        .iter()
        .enumerate()
        .map(|(j, r)| {
            let mut c = vec![Int::ZERO; k];
            c[j] = Int::ONE;
            (r.clone(), c, None)
        })
        .collect();
    for (i, d) in moduli.iter().enumerate() {
        if !d.is_zero() {
            let mut r = vec![Int::ZERO; t];
            r[i] = d.clone();
            rows.push((r, vec![Int::ZERO; k], Some(i)));
        }
    }
    for col in 0..t {
        for (r, _, own) in rows.iter_mut() {
            for (i, m) in moduli.iter().enumerate().skip(col + 1) {
                if *own != Some(i) && !m.is_zero() && !r[i].is_zero() && r[i].cmp_abs(m).is_ge() {
                    r[i] = r[i].mod_floor(m);
                }
            }
        }
        let mut active: Vec<usize> = (0..rows.len()).filter(|&i| !rows[i].0[col].is_zero()).collect();
        while active.len() > 1 {
            let (pos, _) = active
                .iter()
                .enumerate()
                .min_by(|a, b| rows[*a.1].0[col].cmp_abs(&rows[*b.1].0[col]))
                .unwrap();
            let pi = active[pos];
            let (py, pc, _) = rows[pi].clone();
            let mut next = vec![pi];
            for &i in &active {
                if i == pi {
                    continue;
                }
                let q = -rows[i].0[col].div_round(&py[col]);
                let (ry, rc, own) = &mut rows[i];
                vec_add_scaled(ry, &py, &q);
                vec_add_scaled(rc, &pc, &q);
                *own = None;
                if !ry[col].is_zero() {
                    next.push(i);
                }
            }
            rows[pi].2 = None;
            active = next;
        }
        if let Some(&pi) = active.first() {
            rows.swap_remove(pi);
        }
    }
    rows.into_iter()
        .filter(|(_, c, _)| !vec_is_zero(c))
        .map(|(_, c, _)| c)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> IntMatrix {
        let n = rows.first().map_or(0, |r| r.len());
        IntMatrix::from_dense(n, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    #[test]
    fn small_examples() {
        assert_eq!(smith_diagonal(&mat(&[&[2, 4], &[6, 8]])), vec![Int::from(2), Int::from(4)]);
        assert_eq!(smith_diagonal(&mat(&[&[3, 0], &[0, 6]])), vec![Int::from(3), Int::from(6)]);
        assert_eq!(smith_diagonal(&IntMatrix::zeros(2, 3)), vec![Int::ZERO, Int::ZERO]);
        assert_eq!(smith_diagonal(&mat(&[&[2, 0], &[0, 3]])), vec![Int::ONE, Int::from(6)]);
    }

    #[test]
    fn transforms_reproduce_diagonal() {
        let m = mat(&[&[4, 6, 2], &[8, 3, 9], &[0, 12, 6], &[2, 2, 2]]);
        let s = smith_form(&m);
        let l = IntMatrix::from_dense(4, &s.left);
        let r = IntMatrix::from_dense(3, &s.right);
        let d = l.mul(&m).mul(&r).to_dense();
        for (i, row) in d.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                let want = if i == j { s.diag[i].clone() } else { Int::ZERO };
                assert_eq!(*x, want);
            }
        }
    }

    #[test]
    fn kernel_mod() {
        // c0*2 + c1*3 == 0 mod 6
        let y = vec![vec![Int::from(2)], vec![Int::from(3)]];
        let k = kernel_lattice(&y, &[Int::from(6)]);
        let m = IntMatrix::from_dense(2, &k);
        // Lattice {c : 2c0 + 3c1 = 0 mod 6} = {c0 = 0 mod 3, c1 = 0 mod 2}: index 6.
        let d = smith_diagonal(&m);
        assert_eq!(d.iter().fold(Int::ONE, |a, b| a * b.clone()), Int::from(6));
    }
}
