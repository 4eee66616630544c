//! Newton interpolation on a grid.
//!
//! `solve` builds the unique symmetric polynomial of degree at most `d` in
//! `n + 1` variables with prescribed values at the knots
//! `lambda_hat = (Omega(0, lambda_0), ..., Omega(n, lambda_n))`, `|lambda| <= d`.
//! It recurses on rows: interpolate the knots with `lambda_n = 0` on rows
//! `0..n`, extend by one variable with pivot `Omega(n, 0)`, then correct by
//! `prod_i (x_i - Omega(n, 0))` times the solution of the remaining problem
//! on the column-shifted grid.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactfield::Scalar;
use crate::grid::Grid;
use crate::partition::{enumerate_partitions, Partition};
use crate::sympoly::SymPoly;

/// Solves the interpolation problem for targets `phi(lambda)`, `|lambda| <= d`.
pub fn solve<S: Scalar>(
    grid: &Grid<S>,
    degree: usize,
    targets: impl Fn(&Partition) -> Result<S>,
) -> Result<SymPoly<S>> {
    let mut map = HashMap::new();
    for l in enumerate_partitions(degree, grid.n() + 1) {
        let v = targets(&l)?;
        map.insert(l, v);
    }
    solve_rec(grid, degree, &map)
}

fn degenerate(what: String) -> Error {
    Error::DegenerateGrid(what)
}

fn solve_rec<S: Scalar>(g: &Grid<S>, d: usize, targets: &HashMap<Partition, S>) -> Result<SymPoly<S>> {
    let n = g.n();
    let target = |l: &Partition| -> Result<S> {
        targets.get(l).cloned().ok_or_else(|| Error::InvalidArgument(format!("no target value for {l}")))
    };
    if d == 0 {
        return Ok(SymPoly::constant(n + 1, target(&Partition::empty())?));
    }
    if n == 0 {
        let knots = (0..=d).map(|j| g.value(0, j)).collect::<Result<Vec<S>>>()?;
        let values =
            (0..=d).map(|j| target(&Partition::new(vec![j]).expect("one part"))).collect::<Result<Vec<S>>>()?;
        let coeffs = newton_univariate(&knots, &values)?;
        let mut p = SymPoly::zero(1);
        for (k, c) in coeffs.into_iter().enumerate() {
            p.add_term(Partition::new(vec![k]).expect("one part"), c);
        }
        return Ok(p);
    }

    let lower: HashMap<Partition, S> =
        targets.iter().filter(|(l, _)| l.length() <= n).map(|(l, v)| (l.clone(), v.clone())).collect();
    let f1 = solve_rec(&g.restrict_rows(n - 1)?, d, &lower)?;
    let pivot = g.value(n, 0)?;
    let big_f1 = f1.ext(&pivot);
    if d < n + 1 {
        return Ok(big_f1);
    }

    let mut upper: HashMap<Partition, S> = HashMap::new();
    for (l, v) in targets.iter().filter(|(l, _)| l.length() == n + 1) {
        let knot = g.knot(l)?;
        let mut r = v.clone() - &big_f1.eval(&knot)?;
        for (i, x) in knot.iter().enumerate() {
            let diff = x.clone() - &pivot;
            if diff.is_zero() {
                return Err(degenerate(format!("Omega({i},{}) = Omega({n},0)", l.part(i))));
            }
            r = r.try_div(&diff)?;
        }
        upper.insert(l.minus_ones(n + 1)?, r);
    }
    let f2 = solve_rec(&g.shift_j(1), d - (n + 1), &upper)?;
    let corr = f2.checked_mul(&SymPoly::shifted_product(n + 1, &pivot))?;
    big_f1.checked_add(&corr)
}

/// Power-basis coefficients of the interpolant through `(knots[k], values[k])`.
pub fn newton_univariate<S: Scalar>(knots: &[S], values: &[S]) -> Result<Vec<S>> {
    let m = knots.len();
    let mut dd: Vec<S> = values.to_vec();
    for level in 1..m {
        for k in (level..m).rev() {
            let den = knots[k].clone() - &knots[k - level];
            if den.is_zero() {
                return Err(degenerate(format!("Omega(0,{}) = Omega(0,{k})", k - level)));
            }
            dd[k] = (dd[k].clone() - &dd[k - 1]).try_div(&den)?;
        }
    }
    if m == 0 {
        return Ok(Vec::new());
    }
    // Horner on the Newton form
    let mut poly = vec![dd[m - 1].clone()];
    for k in (0..m - 1).rev() {
        let mut next = vec![S::zero(); poly.len() + 1];
        for (e, c) in poly.iter().enumerate() {
            next[e + 1] = next[e + 1].clone() + c;
            next[e] = next[e].clone() - &(c.clone() * &knots[k]);
        }
        next[0] = next[0].clone() + &dd[k];
        poly = next;
    }
    Ok(poly)
}

/// `prod_{(i,j) in mu} (Omega(i, mu_i) - Omega(mu'_j - 1, j))`, the value of
/// the monic interpolation polynomial at its own knot.
pub fn normalization_value<S: Scalar>(grid: &Grid<S>, mu: &Partition) -> Result<S> {
    check_length(grid, mu)?;
    let conj = mu.conjugate();
    let mut v = S::one();
    for c in mu.cells() {
        let a = grid.value(c.i, mu.part(c.i))?;
        let b = grid.value(conj.part(c.j) - 1, c.j)?;
        v = v * &(a - &b);
    }
    Ok(v)
}

fn check_length<S: Scalar>(grid: &Grid<S>, mu: &Partition) -> Result<()> {
    if mu.length() > grid.n() + 1 {
        return Err(Error::InvalidArgument(format!("{mu} has more than {} parts", grid.n() + 1)));
    }
    Ok(())
}

/// The interpolation polynomial `P_mu`: vanishes at every other knot of size
/// at most `|mu|` and takes the normalization value at `mu`.
pub fn interpolation_polynomial<S: Scalar>(grid: &Grid<S>, mu: &Partition) -> Result<SymPoly<S>> {
    let norm = normalization_value(grid, mu)?;
    if norm.is_zero() {
        return Err(degenerate(format!("normalization of {mu} vanishes")));
    }
    solve(grid, mu.size(), |l| Ok(if l == mu { norm.clone() } else { S::zero() }))
}

/// `P_mu` for every `mu` with `|mu| <= d`, optionally in parallel.
pub fn interpolation_basis<S: Scalar>(grid: &Grid<S>, d: usize, jobs: usize) -> Result<Vec<(Partition, SymPoly<S>)>> {
    let mus = enumerate_partitions(d, grid.n() + 1);
    let run = |mu: &Partition| interpolation_polynomial(grid, mu).map(|p| (mu.clone(), p));
    if jobs <= 1 {
        return mus.iter().map(run).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    pool.install(|| mus.par_iter().map(run).collect())
}

/// Coefficients of `f` in the interpolation basis, verified by reconstruction.
pub fn expand<S: Scalar>(f: &SymPoly<S>, grid: &Grid<S>, jobs: usize) -> Result<Vec<(Partition, S)>> {
    if f.nvars() != grid.n() + 1 {
        return Err(Error::InvalidArgument(format!(
            "polynomial has {} variables, grid has {} rows",
            f.nvars(),
            grid.n() + 1
        )));
    }
    let d = f.degree().unwrap_or(0);
    let basis = interpolation_basis(grid, d, jobs)?;
    let mut coeffs: Vec<(Partition, S)> = Vec::new();
    for (mu, p) in &basis {
        let knot = grid.knot(mu)?;
        let mut r = f.eval(&knot)?;
        for ((nu, c), (_, q)) in coeffs.iter().zip(&basis) {
            if nu.size() < mu.size() && !c.is_zero() {
                r = r - &(c.clone() * &q.eval(&knot)?);
            }
        }
        let c = r.try_div(&p.eval(&knot)?)?;
        coeffs.push((mu.clone(), c));
    }
    let mut rebuilt = SymPoly::zero(f.nvars());
    for ((_, c), (_, p)) in coeffs.iter().zip(&basis) {
        rebuilt = rebuilt.checked_add(&p.scale(c))?;
    }
    if rebuilt != *f {
        return Err(Error::Hypothesis("expansion does not reconstruct the input".into()));
    }
    coeffs.retain(|(_, c)| !c.is_zero());
    Ok(coeffs)
}

/// `P_mu = P_{mu - 1}(x; shifted grid) * prod_i (x_i - Omega(n, 0))` when `mu` has `n + 1` parts.
pub fn check_shift_identity<S: Scalar>(grid: &Grid<S>, mu: &Partition) -> Result<bool> {
    let n = grid.n();
    if mu.length() != n + 1 {
        return Err(Error::InvalidArgument(format!("{mu} must have exactly {} parts", n + 1)));
    }
    let lhs = interpolation_polynomial(grid, mu)?;
    let inner = interpolation_polynomial(&grid.shift_j(1), &mu.minus_ones(n + 1)?)?;
    let rhs = inner.checked_mul(&SymPoly::shifted_product(n + 1, &grid.value(n, 0)?))?;
    Ok(lhs == rhs)
}

/// `P_mu(x_0, ..., x_{n-1}, Omega(n, 0)) = P_mu` on rows `0..n` when `mu_n = 0`.
pub fn check_restriction_identity<S: Scalar>(grid: &Grid<S>, mu: &Partition) -> Result<bool> {
    let n = grid.n();
    if n == 0 || mu.length() > n {
        return Err(Error::InvalidArgument(format!("{mu} must have at most {n} parts on a grid with {} rows", n + 1)));
    }
    let full = interpolation_polynomial(grid, mu)?;
    let restricted = full.restrict(&grid.value(n, 0)?)?;
    let lower = interpolation_polynomial(&grid.restrict_rows(n - 1)?, mu)?;
    Ok(restricted == lower)
}

/// Restriction identity at every level from `n` down to `length(mu)`.
pub fn check_stability<S: Scalar>(grid: &Grid<S>, mu: &Partition) -> Result<bool> {
    let mut g = grid.clone();
    while g.n() >= mu.length().max(1) {
        if !check_restriction_identity(&g, mu)? {
            return Ok(false);
        }
        g = g.restrict_rows(g.n() - 1)?;
    }
    Ok(true)
}
