//! Shared helpers for integration tests: random valid family samples and a
//! dense linear-algebra oracle for the interpolation problem.
#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use symterp::grid::IIIVariant;
use symterp::{Grid, GridFamily, Partition, Rational, Scalar};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn r(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

/// A nonzero rational with small height.
pub fn small_rational(rng: &mut StdRng) -> Rational {
    let mut n = 0;
    while n == 0 {
        n = rng.gen_range(-9..=9);
    }
    r(n, rng.gen_range(1..=5))
}

/// `len` pairwise distinct rationals.
pub fn distinct_rationals(rng: &mut StdRng, len: usize) -> Vec<Rational> {
    let mut out: Vec<Rational> = Vec::with_capacity(len);
    while out.len() < len {
        let x = r(rng.gen_range(-60..=60), rng.gen_range(1..=7));
        if !out.contains(&x) {
            out.push(x);
        }
    }
    out
}

pub const FAMILIES: [&str; 8] = ["E1", "E2", "I", "II", "IIIa", "IIIb", "IIIc", "IV"];

/// Largest row index the family supports.
pub fn max_n(tag: &str) -> usize {
    if tag == "IV" {
        1
    } else {
        usize::MAX
    }
}

fn draw(tag: &str, rng: &mut StdRng) -> GridFamily<Rational> {
    let mut x = || small_rational(rng);
    match tag {
        "I" => GridFamily::I { a: x(), b: x(), c: x(), q: x(), t: x() },
        "II" => GridFamily::II { alpha: x(), beta: x(), beta_p: x(), gamma: x() },
        "IIIa" | "IIIb" | "IIIc" => GridFamily::III {
            variant: match tag {
                "IIIa" => IIIVariant::A,
                "IIIb" => IIIVariant::B,
                _ => IIIVariant::C,
            },
            alpha: x(),
            alpha_p: x(),
            beta: x(),
            beta_p: x(),
        },
        "IV" => GridFamily::IV { alpha: x(), beta: x(), beta_p: x(), q: x() },
        "E1" => GridFamily::E1 { gamma: distinct_rationals(rng, 16) },
        "E2" => GridFamily::E2 { gamma: distinct_rationals(rng, 20), start: -4 },
        other => panic!("unknown family {other}"),
    }
}

/// Whether the grid is one of the elementary ones (values depending only on
/// `j`, or only on `j - i`), as happens for I at `t = 1` or `t = 1/q`.
pub fn is_elementary(g: &Grid<Rational>) -> bool {
    if g.n() == 0 {
        return true;
    }
    let v = |i, j| g.value(i, j).unwrap();
    v(0, 0) == v(1, 1) || (v(0, 0) == v(1, 0) && v(0, 1) == v(1, 1))
}

/// A random grid of the family with `n + 1` rows, redrawn until it passes
/// the non-degeneracy checks on columns `0..=jcut`. Draws of the
/// non-elementary families that land in E1 or E2 are redrawn too.
pub fn sample(tag: &str, n: usize, jcut: usize, rng: &mut StdRng) -> Grid<Rational> {
    loop {
        let g = Grid::new(draw(tag, rng), n).expect("family supports n");
        let elementary = !tag.starts_with('E') && n > 0 && is_elementary(&g);
        if !elementary && g.require_nondegenerate(jcut).is_ok() {
            return g;
        }
    }
}

/// `m_kappa` at `point`: the sum of `x^e` over distinct rearrangements `e`
/// of `kappa` padded with zeros.
pub fn monomial_symmetric<S: Scalar>(kappa: &[usize], point: &[S]) -> S {
    let mut e: Vec<usize> = kappa.to_vec();
    e.resize(point.len(), 0);
    e.sort_unstable();
    let mut total = S::zero();
    loop {
        let mut term = S::one();
        for (x, &k) in point.iter().zip(&e) {
            term = term * &x.pow(k as u32);
        }
        total = total + &term;
        if !next_permutation(&mut e) {
            return total;
        }
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("pivot exists");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Partitions of size at most `d` with at most `len` parts, as plain vectors.
pub fn small_partitions(d: usize, len: usize) -> Vec<Vec<usize>> {
    fn go(rem: usize, max: usize, len: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        out.push(cur.clone());
        if len == 0 {
            return;
        }
        for p in 1..=rem.min(max) {
            cur.push(p);
            go(rem - p, p, len - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(d, d, len, &mut Vec::new(), &mut out);
    out
}

/// Solves `sum_kappa c_kappa m_kappa(lambda_hat) = target(lambda)` over all
/// `|lambda|, |kappa| <= d` by Gaussian elimination. Returns `(kappa, c_kappa)`.
pub fn dense_oracle(
    g: &Grid<Rational>,
    d: usize,
    target: impl Fn(&[usize]) -> Rational,
) -> Vec<(Vec<usize>, Rational)> {
    let n = g.n();
    let parts = small_partitions(d, n + 1);
    let size = parts.len();
    let mut rows: Vec<Vec<Rational>> = parts
        .iter()
        .map(|lambda| {
            let knot: Vec<Rational> =
                (0..=n).map(|i| g.value(i, lambda.get(i).copied().unwrap_or(0)).unwrap()).collect();
            let mut row: Vec<Rational> = parts.iter().map(|k| monomial_symmetric(k, &knot)).collect();
            row.push(target(lambda));
            row
        })
        .collect();
    for col in 0..size {
        let piv = (col..size).find(|&i| !rows[i][col].is_zero()).expect("oracle system is singular");
        rows.swap(col, piv);
        let inv = rows[col][col].inv().unwrap();
        for v in rows[col].iter_mut() {
            *v = v.clone() * &inv;
        }
        for i in 0..size {
            if i != col && !rows[i][col].is_zero() {
                let f = rows[i][col].clone();
                for k in col..=size {
                    let sub = f.clone() * &rows[col][k];
                    rows[i][k] = rows[i][k].clone() - &sub;
                }
            }
        }
    }
    parts.into_iter().zip(rows.into_iter().map(|row| row[size].clone())).collect()
}

pub fn partition(parts: &[usize]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}
