#![allow(dead_code)]

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rbloch_core::modz::{smith_diagonal, IntMatrix};
use rbloch_core::{Int, PresentedModule};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Smith diagonal by plain elementary row and column operations.
pub fn naive_snf(m: &[Vec<i128>]) -> Vec<i128> {
    let mut a: Vec<Vec<i128>> = m.to_vec();
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let n = rows.min(cols);
    for t in 0..n {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if a[i][j] != 0 && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            let p = a[t][t];
            let mut clean = true;
            for i in t + 1..rows {
                let q = a[i][t].div_euclid(p);
                for j in t..cols {
                    a[i][j] -= q * a[t][j];
                }
                clean &= a[i][t] == 0;
            }
            for j in t + 1..cols {
                let q = a[t][j].div_euclid(p);
                for i in t..rows {
                    a[i][j] -= q * a[i][t];
                }
                clean &= a[t][j] == 0;
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[i][j] % p != 0));
            match bad {
                Some(i) => {
                    for j in t..cols {
                        a[t][j] += a[i][j];
                    }
                }
                None => break,
            }
        }
    }
    (0..n).map(|i| a[i][i].abs()).collect()
}

pub fn random_matrix(rng: &mut ChaCha8Rng, max_dim: usize, bound: i64) -> Vec<Vec<i64>> {
    let r = rng.gen_range(1..=max_dim);
    let c = rng.gen_range(1..=max_dim);
    (0..r).map(|_| (0..c).map(|_| rng.gen_range(-bound..=bound)).collect()).collect()
}

/// Agreement of `smith_diagonal` with the naive oracle on `count` random matrices.
pub fn snf_oracle_agrees(count: usize, seed: u64) -> Result<(), String> {
    let mut g = rng(seed);
    for k in 0..count {
        let m = random_matrix(&mut g, 6, 3);
        let cols = m[0].len();
        let fast: Vec<i128> = smith_diagonal(&IntMatrix::from_dense(cols, &m))
            .iter()
            .map(|d| d.to_i64().unwrap() as i128)
            .collect();
        let wide: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
        let slow = naive_snf(&wide);
        if fast != slow {
            return Err(format!("matrix {k}: {m:?} gave {fast:?}, oracle {slow:?}"));
        }
    }
    Ok(())
}

/// Every invariant-factor list `d_1 | d_2 | ...` (each `d_i > 1`) with product at most `bound`.
pub fn factor_lists(bound: u64) -> Vec<Vec<u64>> {
    fn go(prefix: &mut Vec<u64>, product: u64, bound: u64, out: &mut Vec<Vec<u64>>) {
        out.push(prefix.clone());
        let last = prefix.last().copied().unwrap_or(1);
        let mut d = if last == 1 { 2 } else { last };
        while product * d <= bound {
            if d % last == 0 {
                prefix.push(d);
                go(prefix, product * d, bound, out);
                prefix.pop();
            }
            d += if last == 1 { 1 } else { last };
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), 1, bound, &mut out);
    out
}

fn ints(v: &[u64]) -> Vec<Int> {
    v.iter().map(|&x| Int::from(x)).collect()
}

/// A random endomorphism of `(+)_i Z/d_i`, as images of the generators.
pub fn random_endomorphism(rng: &mut ChaCha8Rng, d: &[u64]) -> Vec<Vec<u64>> {
    (0..d.len())
        .map(|j| {
            (0..d.len())
                .map(|i| {
                    let step = d[i] / gcd(d[i], d[j]);
                    rng.gen_range(0..d[i]) * step % d[i]
                })
                .collect()
        })
        .collect()
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `(|ker f|, |im f|)` through the module machinery.
pub fn ker_im_orders(d: &[u64], images: &[Vec<u64>]) -> (u64, u64) {
    let m = PresentedModule::from_factors(&ints(d));
    let imgs: Vec<Vec<Int>> = images.iter().map(|v| ints(v)).collect();
    assert!(m.is_hom(&imgs, &m));
    let ker = m.submodule(&m.kernel_generators(&imgs, &m));
    let im = m.submodule(&m.image_generators(&imgs, d.len()));
    let order = |p: &PresentedModule| p.order().unwrap().to_i64().unwrap() as u64;
    (order(&ker), order(&im))
}

/// `(|ker f|, |im f|)` by listing every element.
pub fn ker_im_brute(d: &[u64], images: &[Vec<u64>]) -> (u64, u64) {
    let mut kernel = 0;
    let mut image = HashSet::new();
    for x in elements(d) {
        let y: Vec<u64> = (0..d.len())
            .map(|i| (0..d.len()).map(|j| x[j] * images[j][i]).sum::<u64>() % d[i])
            .collect();
        if y.iter().all(|&c| c == 0) {
            kernel += 1;
        }
        image.insert(y);
    }
    (kernel, image.len() as u64)
}

/// All elements of `(+)_i Z/d_i`.
pub fn elements(d: &[u64]) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for &di in d {
        out = out
            .into_iter()
            .flat_map(|v| (0..di).map(move |c| [v.clone(), vec![c]].concat()))
            .collect();
    }
    out
}

/// `|ker|·|im| = |M|` for one random endomorphism of every module of order at most `bound`.
pub fn ker_im_exhaustive(bound: u64, seed: u64) -> Result<usize, String> {
    let mut g = rng(seed);
    let lists = factor_lists(bound);
    for d in &lists {
        if d.is_empty() {
            continue;
        }
        let f = random_endomorphism(&mut g, d);
        let (k, i) = ker_im_orders(d, &f);
        let total: u64 = d.iter().product();
        if k * i != total {
            return Err(format!("{d:?} with {f:?}: |ker| = {k}, |im| = {i}"));
        }
    }
    Ok(lists.len())
}
