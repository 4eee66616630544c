//! Extra vanishing: a non-degenerate grid is perfect when `P_mu` vanishes at
//! every knot `lambda^` with `mu` not contained in `lambda`. Only finite
//! degrees are ever checked.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactfield::Scalar;
use crate::grid::Grid;
use crate::newton::interpolation_basis;
use crate::partition::{contains, enumerate_partitions, Partition, ReverseTableau};
use crate::sympoly::SymPoly;

#[derive(Clone, Debug, PartialEq)]
pub struct Violation<S> {
    pub mu: Partition,
    pub lambda: Partition,
    pub value: S,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VanishingReport<S> {
    pub degree: usize,
    pub checked: Vec<(Partition, Partition)>,
    pub violations: Vec<Violation<S>>,
}

impl<S: Scalar> VanishingReport<S> {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    /// Plain-text report, one violation per line.
    pub fn to_text(&self) -> String {
        let mut s = format!(
            "degree {}: {} pairs checked, {} violations\n",
            self.degree,
            self.checked.len(),
            self.violations.len()
        );
        for v in &self.violations {
            s.push_str(&format!("mu={} lambda={} value={}\n", v.mu, v.lambda, v.value));
        }
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct V {
            mu: String,
            lambda: String,
            value: String,
        }
        serde_json::json!({
            "degree": self.degree,
            "checked": self.checked.len(),
            "violations": self.violations.iter().map(|v| V {
                mu: v.mu.to_string(),
                lambda: v.lambda.to_string(),
                value: v.value.to_string(),
            }).collect::<Vec<_>>(),
        })
    }
}

/// Evaluates every `P_mu`, `|mu| <= d`, at the knots of all `lambda` with
/// `|lambda| <= d` and `mu` not inside `lambda`. Pairs with `|lambda| <= |mu|`
/// vanish by definition and are asserted rather than reported.
pub fn extra_vanishing_check<S: Scalar>(g: &Grid<S>, d: usize, jobs: usize) -> Result<VanishingReport<S>> {
    g.require_nondegenerate(d + 1)?;
    let basis = interpolation_basis(g, d, jobs)?;
    let lambdas = enumerate_partitions(d, g.n() + 1);
    let knots = lambdas.iter().map(|l| g.knot(l)).collect::<Result<Vec<_>>>()?;
    let one = |(mu, p): &(Partition, SymPoly<S>)| -> Result<(Vec<(Partition, Partition)>, Vec<Violation<S>>)> {
        let mut checked = Vec::new();
        let mut bad = Vec::new();
        for (lambda, knot) in lambdas.iter().zip(&knots) {
            if contains(mu, lambda) {
                continue;
            }
            let v = p.eval(knot)?;
            if lambda.size() <= mu.size() {
                if !v.is_zero() {
                    return Err(Error::Hypothesis(format!("P_{mu} does not vanish at the defining knot {lambda}")));
                }
                continue;
            }
            checked.push((mu.clone(), lambda.clone()));
            if !v.is_zero() {
                bad.push(Violation { mu: mu.clone(), lambda: lambda.clone(), value: v });
            }
        }
        Ok((checked, bad))
    };
    let parts: Vec<_> = if jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::InvalidArgument(e.to_string()))?;
        pool.install(|| basis.par_iter().map(one).collect::<Result<Vec<_>>>())?
    } else {
        basis.iter().map(one).collect::<Result<Vec<_>>>()?
    };
    let mut report = VanishingReport { degree: d, checked: Vec::new(), violations: Vec::new() };
    for (c, v) in parts {
        report.checked.extend(c);
        report.violations.extend(v);
    }
    Ok(report)
}

/// Perfectness certified only through degree `d`.
pub fn is_perfect_up_to<S: Scalar>(g: &Grid<S>, d: usize) -> Result<bool> {
    Ok(extra_vanishing_check(g, d, 1)?.is_clean())
}

/// Whether the tableau term `prod (Omega(T, lambda_T) - Omega(i + T, j))`
/// has a zero factor at `lambda^`.
pub fn term_vanishes<S: Scalar>(t: &ReverseTableau, lambda: &Partition, g: &Grid<S>) -> Result<bool> {
    for c in t.shape().cells() {
        let e = t.get(c);
        if g.value(e, lambda.part(e))? == g.value(c.i + e, c.j)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Coefficient of `m_mu` in `P_mu` is 1 for all `|mu| <= d`.
pub fn check_monic<S: Scalar>(g: &Grid<S>, d: usize) -> Result<bool> {
    for (mu, p) in interpolation_basis(g, d, 1)? {
        if !p.coeff(&mu).is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The top coefficient in `x_0` of `P_mu` is `x_0^{mu_0}` times
/// `P_{(mu_1, ..., mu_n)}` on the grid with the first row dropped.
pub fn check_first_variable<S: Scalar>(g: &Grid<S>, d: usize) -> Result<bool> {
    if g.n() == 0 {
        return Ok(true);
    }
    let lower = g.shift_rows(1)?;
    let lower_basis: std::collections::HashMap<Partition, SymPoly<S>> =
        interpolation_basis(&lower, d, 1)?.into_iter().collect();
    for (mu, p) in interpolation_basis(g, d, 1)? {
        let m0 = mu.part(0);
        for m in m0 + 1..=d {
            if !p.first_variable_coefficient(m)?.is_zero() {
                return Ok(false);
            }
        }
        let expect = &lower_basis[&mu.tail()];
        if p.first_variable_coefficient(m0)? != *expect {
            return Ok(false);
        }
    }
    Ok(true)
}
