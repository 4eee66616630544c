//! Closed forms of interpolation polynomials for the classical grids:
//! factorial monomials (rows all equal), factorial Schur polynomials
//! (`Omega` depends on `j - i`) and interpolation Macdonald polynomials
//! (family I, as a weighted sum over reverse tableaux).

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exactfield::Scalar;
use crate::grid::{Grid, GridFamily};
use crate::partition::{enumerate_reverse_tableaux, Cell, Partition, ReverseTableau};
use crate::sympoly::{orbit, poly_from_roots, MultiPoly, SymPoly};

fn check_len<S: Scalar>(g: &Grid<S>, mu: &Partition) -> Result<()> {
    if mu.length() > g.n() + 1 {
        return Err(Error::InvalidArgument(format!("{mu} has more than {} parts", g.n() + 1)));
    }
    Ok(())
}

/// `sum over distinct arrangements alpha of mu of prod_i prod_{j < alpha_i} (x_i - gamma_j)`.
pub fn factorial_monomial<S: Scalar>(g: &Grid<S>, mu: &Partition) -> Result<SymPoly<S>> {
    if !matches!(g.family(), GridFamily::E1 { .. }) {
        return Err(Error::WrongFamily("E1"));
    }
    check_len(g, mu)?;
    let nv = g.n() + 1;
    let gamma = (0..mu.part(0)).map(|j| g.value(0, j)).collect::<Result<Vec<S>>>()?;
    let mut out = SymPoly::zero(nv);
    for alpha in orbit(&mu.padded(nv)) {
        let factors: Vec<Vec<S>> = alpha.iter().map(|&a| poly_from_roots(&gamma[..a])).collect();
        out.add_sorted_product(&factors, &S::one());
    }
    Ok(out)
}

/// `c_k` of a grid with `Omega(i, j) = c_{j - i}`, for `k >= -n`.
fn e2_value<S: Scalar>(g: &Grid<S>, k: i64) -> Result<S> {
    if k >= 0 {
        g.value(0, k as usize)
    } else {
        g.value((-k) as usize, 0)
    }
}

/// Determinant of `[prod_{k=-n}^{mu_j - j - 1} (x_i - c_k)]` divided by the
/// Vandermonde `prod_{i<j} (x_i - x_j)`; the division is exact.
pub fn factorial_schur_det<S: Scalar>(g: &Grid<S>, mu: &Partition) -> Result<SymPoly<S>> {
    if !matches!(g.family(), GridFamily::E2 { .. }) {
        return Err(Error::WrongFamily("E2"));
    }
    check_len(g, mu)?;
    let n = g.n();
    let nv = n + 1;
    // column j: roots c_{-n}, ..., c_{mu_j - j - 1}
    let mut cols: Vec<Vec<S>> = Vec::with_capacity(nv);
    for j in 0..nv {
        let top = mu.part(j) as i64 - j as i64 - 1;
        let roots = (-(n as i64)..=top).map(|k| e2_value(g, k)).collect::<Result<Vec<S>>>()?;
        cols.push(poly_from_roots(&roots));
    }
    let mut det = MultiPoly::zero(nv);
    for perm in permutations(nv) {
        let sign = if inversions(&perm).is_multiple_of(2) { S::one() } else { -S::one() };
        let mut term = MultiPoly::constant(nv, sign);
        for (i, &j) in perm.iter().enumerate() {
            term = term.mul(&MultiPoly::univariate(nv, i, &cols[j]));
        }
        det = det.add(&term);
    }
    for i in 0..nv {
        for j in i + 1..nv {
            det = det.div_difference(i, j)?;
        }
    }
    det.to_sympoly(true)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let base: Vec<usize> = (0..n).collect();
    orbit(&base)
}

fn inversions(p: &[usize]) -> usize {
    let mut c = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                c += 1;
            }
        }
    }
    c
}

/// `sum_T w(T) prod_{(i,j) in mu} (x_{T(i,j)} - Omega(i + T(i,j), j))` over
/// reverse tableaux `T` of shape `mu` with entries in `0..=n`.
pub fn tableaux_sum<S: Scalar>(
    g: &Grid<S>,
    mu: &Partition,
    mut weight: impl FnMut(&ReverseTableau) -> Result<S>,
) -> Result<SymPoly<S>> {
    check_len(g, mu)?;
    let n = g.n();
    let mut out = SymPoly::zero(n + 1);
    for t in enumerate_reverse_tableaux(mu, n) {
        let w = weight(&t)?;
        if w.is_zero() {
            continue;
        }
        let mut roots: Vec<Vec<S>> = vec![Vec::new(); n + 1];
        for c in mu.cells() {
            let e = t.get(c);
            roots[e].push(g.value(c.i + e, c.j)?);
        }
        let factors: Vec<Vec<S>> = roots.iter().map(|r| poly_from_roots(r)).collect();
        out.add_sorted_product(&factors, &w);
    }
    Ok(out)
}

/// Factorial Schur polynomial as an unweighted tableaux sum.
pub fn factorial_schur_tableaux<S: Scalar>(g: &Grid<S>, mu: &Partition) -> Result<SymPoly<S>> {
    if !matches!(g.family(), GridFamily::E2 { .. }) {
        return Err(Error::WrongFamily("E2"));
    }
    tableaux_sum(g, mu, |_| Ok(S::one()))
}

/// Exponents of the factors `(1 - q^k t^l)` in Macdonald's weight
/// `psi_T(q, t^-1)`, after cancellation. Keys are `(k, l)` with `k >= 0`, `l <= 0`.
pub fn psi_factors(t: &ReverseTableau, n: usize) -> BTreeMap<(i64, i64), i64> {
    let chain = t.chain(n);
    let mut f: BTreeMap<(i64, i64), i64> = BTreeMap::new();
    let mut bump = |key: (i64, i64), e: i64| {
        let v = f.entry(key).or_insert(0);
        *v += e;
    };
    for k in 0..=n {
        let (outer, inner) = (&chain[k], &chain[k + 1]);
        let strip: Vec<Cell> = outer.cells().filter(|&c| !inner.contains_cell(c)).collect();
        if strip.is_empty() {
            continue;
        }
        let rows: Vec<usize> = strip.iter().map(|c| c.i).collect();
        let cols: Vec<usize> = strip.iter().map(|c| c.j).collect();
        let (oc, ic) = (outer.conjugate(), inner.conjugate());
        for s in inner.cells() {
            if !rows.contains(&s.i) || cols.contains(&s.j) {
                continue;
            }
            // b_lambda(s) = (1 - q^a t^-(l+1)) / (1 - q^(a+1) t^-l) with t -> 1/t
            let arm_in = (inner.part(s.i) - s.j - 1) as i64;
            let leg_in = (ic.part(s.j) - s.i - 1) as i64;
            let arm_out = (outer.part(s.i) - s.j - 1) as i64;
            let leg_out = (oc.part(s.j) - s.i - 1) as i64;
            bump((arm_in, -(leg_in + 1)), 1);
            bump((arm_in + 1, -leg_in), -1);
            bump((arm_out, -(leg_out + 1)), -1);
            bump((arm_out + 1, -leg_out), 1);
        }
    }
    f.retain(|_, e| *e != 0);
    f
}

/// Evaluates a factored weight at `q` and `t`.
pub fn eval_psi<S: Scalar>(factors: &BTreeMap<(i64, i64), i64>, q: &S, t: &S) -> Result<S> {
    let tinv = t.inv()?;
    let mut num = S::one();
    let mut den = S::one();
    for (&(k, l), &e) in factors {
        let v = S::one() - &(q.pow(k as u32) * &tinv.pow((-l) as u32));
        let p = v.pow(e.unsigned_abs() as u32);
        if e > 0 {
            num = num * &p;
        } else {
            den = den * &p;
        }
    }
    num.try_div(&den)
}

/// Interpolation Macdonald polynomial for a family-I grid, via the weighted
/// tableaux sum.
pub fn macdonald_tableaux<S: Scalar>(g: &Grid<S>, mu: &Partition) -> Result<SymPoly<S>> {
    let GridFamily::I { q, t, .. } = g.family() else {
        return Err(Error::WrongFamily("I"));
    };
    if g.offsets() != (0, 0) {
        return Err(Error::WrongFamily("I"));
    }
    let n = g.n();
    tableaux_sum(g, mu, |tab| eval_psi(&psi_factors(tab, n), q, t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::Rational;
    use crate::newton::interpolation_polynomial;
    use crate::partition::enumerate_partitions;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn psi_of_two_row_cells() {
        // mu = (2), T = (1, 0): weight (1 + q)(1 - 1/t) / (1 - q/t)
        let t = ReverseTableau::new(Partition::new(vec![2]).unwrap(), vec![vec![1, 0]], 1).unwrap();
        let f = psi_factors(&t, 1);
        let v = eval_psi(&f, &r(2, 1), &r(3, 1)).unwrap();
        let expect = (r(1, 1) + r(2, 1)) * (r(1, 1) - r(1, 3)) * (r(1, 1) - r(2, 3)).inv().unwrap();
        assert_eq!(v, expect);
    }

    #[test]
    fn macdonald_matches_solver_small() {
        let f = GridFamily::I { a: r(1, 1), b: r(2, 1), c: r(3, 1), q: r(2, 3), t: r(5, 7) };
        let g = Grid::new(f, 1).unwrap();
        for mu in enumerate_partitions(3, 2) {
            assert_eq!(macdonald_tableaux(&g, &mu).unwrap(), interpolation_polynomial(&g, &mu).unwrap(), "{mu}");
        }
    }

    #[test]
    fn factorial_forms_match_solver() {
        let e1 = Grid::new(GridFamily::E1 { gamma: (0..6).map(|k| r(k * k + 1, 2)).collect() }, 2).unwrap();
        let e2 =
            Grid::new(GridFamily::E2 { gamma: (0..12).map(|k| r(k * k * k - 3, 1)).collect(), start: -3 }, 2).unwrap();
        for mu in enumerate_partitions(4, 3) {
            assert_eq!(factorial_monomial(&e1, &mu).unwrap(), interpolation_polynomial(&e1, &mu).unwrap(), "{mu}");
            let p = interpolation_polynomial(&e2, &mu).unwrap();
            assert_eq!(factorial_schur_det(&e2, &mu).unwrap(), p, "{mu}");
            assert_eq!(factorial_schur_tableaux(&e2, &mu).unwrap(), p, "{mu}");
        }
    }

    #[test]
    fn wrong_family_is_rejected() {
        let g = Grid::new(GridFamily::E1 { gamma: vec![r(0, 1), r(1, 1)] }, 1).unwrap();
        let mu = Partition::new(vec![1]).unwrap();
        assert_eq!(macdonald_tableaux(&g, &mu).unwrap_err(), Error::WrongFamily("I"));
        assert_eq!(factorial_schur_det(&g, &mu).unwrap_err(), Error::WrongFamily("E2"));
        assert!(factorial_monomial(&g, &mu).is_ok());
    }
}
