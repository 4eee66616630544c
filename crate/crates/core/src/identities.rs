//! Named identity suites checked exactly, for `symterp verify` and tests.

use std::collections::HashMap;

use crate::classify::{f, f1, g2, g3};
use crate::closedform::{factorial_schur_det, factorial_schur_tableaux};
use crate::error::{Error, Result};
use crate::exactfield::{parse_ratfunc, universal_name, RatFunc, Rational, Scalar, Var};
use crate::grid::{Grid, GridFamily, IIIVariant};
use crate::newton::{check_restriction_identity, check_shift_identity, check_stability, interpolation_polynomial};
use crate::partition::{enumerate_partitions, Partition};

const GOLDEN_P3: &str = include_str!("../data/universal_p3_golden.txt");

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

type SuiteFn = fn() -> Result<Option<String>>;

/// Suites in execution order. A suite returns `None` on success or a
/// description of the first failing case.
pub const SUITES: &[(&str, SuiteFn)] = &[
    ("f-diagonal", f_diagonal),
    ("f-columns", f_columns),
    ("f-shifted", f_shifted),
    ("universal-p3-golden", universal_p3_golden),
    ("universal-p30-at-22", universal_p30_at_22),
    ("universal-p200-at-111", universal_p200_at_111),
    ("universal-p40-at-32", universal_p40_at_32),
    ("universal-p300-at-211", universal_p300_at_211),
    ("restriction", restriction),
    ("shift", shift),
    ("stability", stability),
    ("factorial-schur", factorial_schur),
    ("row-recurrence", row_recurrence),
    ("column-recurrence", column_recurrence),
    ("row2-determination", row2_determination),
];

pub fn suite_names() -> Vec<&'static str> {
    SUITES.iter().map(|(n, _)| *n).collect()
}

pub fn run_suite(name: &str) -> Result<SuiteOutcome> {
    let (name, run) = SUITES
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| Error::InvalidArgument(format!("unknown suite `{name}`")))?;
    Ok(match run() {
        Ok(None) => SuiteOutcome { name, passed: true, detail: "ok".into() },
        Ok(Some(d)) => SuiteOutcome { name, passed: false, detail: d },
        Err(e) => SuiteOutcome { name, passed: false, detail: format!("error: {e}") },
    })
}

pub fn run_all() -> Vec<SuiteOutcome> {
    SUITES.iter().map(|(n, _)| run_suite(n).expect("registered suite")).collect()
}

fn u(i: usize, j: usize) -> RatFunc {
    RatFunc::var(&universal_name(i, j))
}

fn p(parts: &[usize]) -> Partition {
    Partition::new(parts.to_vec()).expect("valid partition")
}

fn var(name: &str) -> RatFunc {
    RatFunc::var(name)
}

fn expect_eq(label: &str, lhs: &RatFunc, rhs: &RatFunc) -> Option<String> {
    (lhs != rhs).then(|| format!("{label}: {lhs} != {rhs}"))
}

/// `P_mu` evaluated at the knot of `lambda` on the universal grid with `n + 1` rows.
pub fn universal_value(n: usize, mu: &Partition, lambda: &Partition) -> Result<RatFunc> {
    let g: Grid<RatFunc> = Grid::universal(n);
    interpolation_polynomial(&g, mu)?.eval(&g.knot(lambda)?)
}

/// Replaces `u_ij` by `value` throughout.
fn substitute(x: &RatFunc, i: usize, j: usize, value: &RatFunc) -> Result<RatFunc> {
    let mut m = HashMap::new();
    m.insert(Var::new(&universal_name(i, j)), value.clone());
    x.substitute(&m)
}

fn f_diagonal() -> Result<Option<String>> {
    let (z, uu, v, w) = (var("z"), var("u"), var("v"), var("w"));
    Ok(expect_eq("F(z,u,v,z,w)", &f(&z, &uu, &v, &z, &w)?, &v))
}

fn f_columns() -> Result<Option<String>> {
    let (uu, v, w) = (var("u"), var("v"), var("w"));
    Ok(expect_eq("F(u,u,v,v,w)", &f(&uu, &uu, &v, &v, &w)?, &w))
}

fn f_shifted() -> Result<Option<String>> {
    let (z, uu, v, w) = (var("z"), var("u"), var("v"), var("w"));
    let lhs = f(&uu, &(uu.clone() + &z), &v, &(v.clone() - &z), &w)?;
    Ok(expect_eq("F(u,u+z,v,v-z,w)", &lhs, &(w.clone() + &z)))
}

/// The printed golden coefficients of `P_[3]` on the two-row universal grid.
pub fn golden_p3() -> Result<(RatFunc, Vec<(Partition, RatFunc)>)> {
    let mut den = None;
    let mut coeffs = Vec::new();
    for line in GOLDEN_P3.lines().filter(|l| !l.starts_with('#') && !l.trim().is_empty()) {
        let (key, text) = line.split_once(' ').ok_or_else(|| Error::Parse(format!("golden line `{line}`")))?;
        let value = parse_ratfunc(text)?;
        let lambda = match key {
            "den" => {
                den = Some(value);
                continue;
            }
            "c21" => p(&[2, 1]),
            "c20" => p(&[2]),
            "c11" => p(&[1, 1]),
            "c10" => p(&[1]),
            "c00" => p(&[]),
            other => return Err(Error::Parse(format!("golden key `{other}`"))),
        };
        coeffs.push((lambda, value));
    }
    Ok((den.ok_or_else(|| Error::Parse("golden denominator missing".into()))?, coeffs))
}

fn universal_p3_golden() -> Result<Option<String>> {
    let g: Grid<RatFunc> = Grid::universal(1);
    let poly = interpolation_polynomial(&g, &p(&[3]))?;
    let (den, coeffs) = golden_p3()?;
    if !poly.coeff(&p(&[3])).is_one() {
        return Ok(Some(format!("m[3] coefficient is {}", poly.coeff(&p(&[3])))));
    }
    for (lambda, c) in &coeffs {
        let expect = c.try_div(&den)?;
        if let Some(d) = expect_eq(&format!("m{lambda}"), &poly.coeff(lambda), &expect) {
            return Ok(Some(d));
        }
    }
    if poly.num_terms() != coeffs.len() + 1 {
        return Ok(Some(format!("unexpected number of terms {}", poly.num_terms())));
    }
    Ok(None)
}

fn universal_p30_at_22() -> Result<Option<String>> {
    let lhs = universal_value(1, &p(&[3]), &p(&[2, 2]))?;
    let eps = parse_ratfunc("(u12-u11)*(u12-u10)/(u01-u10)")?;
    let body = parse_ratfunc("u00*u02-u00*u11-u01^2+u01*u10+u01*u12-u02*u11-u10*u12+u11^2")?;
    Ok(expect_eq("P_[3] at [2,2]", &lhs, &(eps * &body)))
}

fn universal_p200_at_111() -> Result<Option<String>> {
    let lhs = universal_value(2, &p(&[2]), &p(&[1, 1, 1]))?;
    let eps = parse_ratfunc("(u21-u20)/(u10-u01)")?;
    let body = parse_ratfunc("u10*u21-u01*u21+u11^2-u11*u00+u01*u10-u10^2+u00*u20-u11*u20")?;
    Ok(expect_eq("P_[2] at [1,1,1]", &lhs, &(eps * &body)))
}

/// `u12` as the two-row recurrence determines it.
fn u12_from_recurrence() -> Result<RatFunc> {
    f(&u(0, 0), &u(1, 0), &u(0, 1), &u(1, 1), &u(0, 2))
}

fn universal_p40_at_32() -> Result<Option<String>> {
    let u12 = u12_from_recurrence()?;
    let lhs = substitute(&universal_value(1, &p(&[4]), &p(&[3, 2]))?, 1, 2, &u12)?;
    let eps = substitute(&parse_ratfunc("(u03-u02)*(u12-u11)*(u12-u10)/((u02-u10)*(u10-u01)^2)")?, 1, 2, &u12)?;
    let body = f1([&u(0, 0), &u(1, 0), &u(0, 1), &u(1, 1), &u(0, 2), &u(0, 3)]);
    let rhs = eps * &(u(0, 0) - &u(1, 1)) * &body;
    Ok(expect_eq("P_[4] at [3,2]", &lhs, &rhs))
}

fn universal_p300_at_211() -> Result<Option<String>> {
    let u21 = f(&u(0, 0), &u(0, 1), &u(1, 0), &u(1, 1), &u(2, 0))?;
    let lhs = substitute(&universal_value(2, &p(&[3]), &p(&[2, 1, 1]))?, 2, 1, &u21)?;
    let eps =
        substitute(&parse_ratfunc("(u02-u01)*(u21-u20)*(u11-u20)/((u20-u01)*(u10-u02)*(u10-u01)^2)")?, 2, 1, &u21)?;
    let args = [u(0, 0), u(1, 0), u(0, 1), u(1, 1), u(0, 2)];
    let [a, b, c, d, e] = &args;
    let body = u(2, 0) * &g2(a, b, c, d, e) - &g3(a, b, c, d, e);
    let rhs = eps * &(u(1, 1) - &u(0, 0)) * &body;
    Ok(expect_eq("P_[3] at [2,1,1]", &lhs, &rhs))
}

fn sample_family_i() -> Grid<Rational> {
    let r = Rational::new;
    Grid::new(GridFamily::I { a: r(1, 1), b: r(2, 1), c: r(3, 1), q: r(2, 3), t: r(5, 7) }, 2).expect("valid grid")
}

/// Structural checks on the universal and a family-I grid, `n <= 2`, `|mu| <= 4`.
fn structural(check: impl Fn(&dyn StructuralGrid, &Partition) -> Result<Option<bool>>) -> Result<Option<String>> {
    let fam = sample_family_i();
    for n in 1..=2 {
        let uni: Grid<RatFunc> = Grid::universal(n);
        let fi = fam.restrict_rows(n)?;
        let grids: [(&str, &dyn StructuralGrid); 2] = [("universal", &uni), ("family I", &fi)];
        for (label, g) in grids {
            for mu in enumerate_partitions(4, n + 1) {
                if check(g, &mu)? == Some(false) {
                    return Ok(Some(format!("{label} grid, n={n}, mu={mu}")));
                }
            }
        }
    }
    Ok(None)
}

/// Object-safe view of a grid for the structural checks.
trait StructuralGrid {
    fn n(&self) -> usize;
    fn restriction(&self, mu: &Partition) -> Result<bool>;
    fn shift(&self, mu: &Partition) -> Result<bool>;
    fn stability(&self, mu: &Partition) -> Result<bool>;
}

impl<S: Scalar> StructuralGrid for Grid<S> {
    fn n(&self) -> usize {
        Grid::n(self)
    }
    fn restriction(&self, mu: &Partition) -> Result<bool> {
        check_restriction_identity(self, mu)
    }
    fn shift(&self, mu: &Partition) -> Result<bool> {
        check_shift_identity(self, mu)
    }
    fn stability(&self, mu: &Partition) -> Result<bool> {
        check_stability(self, mu)
    }
}

fn restriction() -> Result<Option<String>> {
    structural(|g, mu| if mu.length() <= g.n() { g.restriction(mu).map(Some) } else { Ok(None) })
}

fn shift() -> Result<Option<String>> {
    structural(|g, mu| if mu.length() == g.n() + 1 { g.shift(mu).map(Some) } else { Ok(None) })
}

fn stability() -> Result<Option<String>> {
    structural(|g, mu| if mu.length() <= g.n() { g.stability(mu).map(Some) } else { Ok(None) })
}

fn factorial_schur() -> Result<Option<String>> {
    let gamma: Vec<Rational> = (0..16).map(|k| Rational::from(k * k * k - 2 * k + 5)).collect();
    for n in 0..=2 {
        let g = Grid::new(GridFamily::E2 { gamma: gamma.clone(), start: -4 }, n)?;
        for mu in enumerate_partitions(4, n + 1) {
            let solver = interpolation_polynomial(&g, &mu)?;
            if factorial_schur_det(&g, &mu)? != solver || factorial_schur_tableaux(&g, &mu)? != solver {
                return Ok(Some(format!("n={n}, mu={mu}")));
            }
        }
    }
    Ok(None)
}

/// Symbolic family I and II grids plus rational samples of the other families.
fn family_grids(n: usize) -> Result<Vec<(String, Grid<RatFunc>)>> {
    let r = |a: i64, b: i64| RatFunc::from_rational(&Rational::new(a, b));
    let mut fams: Vec<(String, GridFamily<RatFunc>)> = vec![
        ("I".into(), GridFamily::I { a: var("a"), b: var("b"), c: var("c"), q: var("q"), t: var("t") }),
        ("II".into(), GridFamily::II { alpha: var("al"), beta: var("be"), beta_p: var("bp"), gamma: var("ga") }),
        ("E1".into(), GridFamily::E1 { gamma: (0..12).map(|k| r(k * k + 1, 3)).collect() }),
        ("E2".into(), GridFamily::E2 { gamma: (0..16).map(|k| r(k * k * k - 7, 2)).collect(), start: -4 }),
    ];
    for v in [IIIVariant::A, IIIVariant::B, IIIVariant::C] {
        fams.push((
            v.tag().to_string(),
            GridFamily::III { variant: v, alpha: r(1, 1), alpha_p: r(2, 3), beta: r(3, 1), beta_p: r(5, 7) },
        ));
    }
    if n <= 1 {
        fams.push(("IV".into(), GridFamily::IV { alpha: r(1, 2), beta: r(2, 1), beta_p: r(-3, 1), q: r(3, 1) }));
    }
    fams.into_iter().map(|(name, f)| Ok((name, Grid::new(f, n)?))).collect()
}

fn row_recurrence() -> Result<Option<String>> {
    for (name, g) in family_grids(1)? {
        for j in 0..3usize {
            let v = |i: usize, k: usize| g.value(i, k + j);
            let rhs = f(&v(0, 0)?, &v(1, 0)?, &v(0, 1)?, &v(1, 1)?, &v(0, 2)?)?;
            if v(1, 2)? != rhs {
                return Ok(Some(format!("{name}: Omega(1,{}) != F(...)", j + 2)));
            }
        }
    }
    Ok(None)
}

fn column_recurrence() -> Result<Option<String>> {
    for (name, g) in family_grids(2)? {
        for j in 0..3usize {
            let v = |i: usize, k: usize| g.value(i, k + j);
            let rhs = f(&v(0, 0)?, &v(0, 1)?, &v(1, 0)?, &v(1, 1)?, &v(2, 0)?)?;
            if v(2, 1)? != rhs {
                return Ok(Some(format!("{name}: Omega(2,{}) != F(...)", j + 1)));
            }
        }
    }
    Ok(None)
}

/// `Omega(2,0) G2 = G3` and `Omega(0,3) G1 = G0` away from the elementary cases.
fn row2_determination() -> Result<Option<String>> {
    for (name, g) in family_grids(2)? {
        if name == "E1" || name == "E2" {
            continue;
        }
        let v = |i, j| g.value(i, j);
        let (a, b, c, d, e) = (v(0, 0)?, v(1, 0)?, v(0, 1)?, v(1, 1)?, v(0, 2)?);
        if v(2, 0)? * &g2(&a, &b, &c, &d, &e) != g3(&a, &b, &c, &d, &e) {
            return Ok(Some(format!("{name}: Omega(2,0) G2 != G3")));
        }
        if !f1([&a, &b, &c, &d, &e, &v(0, 3)?]).is_zero() {
            return Ok(Some(format!("{name}: Omega(0,3) G1 != G0")));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fast_suites_pass() {
        for name in ["f-diagonal", "f-columns", "f-shifted", "universal-p3-golden", "factorial-schur"] {
            let o = run_suite(name).unwrap();
            assert!(o.passed, "{name}: {}", o.detail);
        }
        assert!(run_suite("nope").is_err());
    }
}
