//! Acceptance criteria, run exactly. Prints one line per criterion and exits
//! nonzero on any unexpected failure.

mod common;

use std::time::Instant;

use common::*;
use rand::Rng;
use symterp::classify::{classify_window, f};
use symterp::closedform::{factorial_monomial, factorial_schur_det, factorial_schur_tableaux, macdonald_tableaux};
use symterp::exactfield::{parse_ratfunc, RatFunc};
use symterp::grid::IIIVariant;
use symterp::identities::golden_p3;
use symterp::newton::{
    check_restriction_identity, check_shift_identity, check_stability, interpolation_polynomial, solve,
};
use symterp::partition::enumerate_partitions;
use symterp::perfect::{check_first_variable, extra_vanishing_check};
use symterp::{Grid, GridFamily, Rational, Result, Scalar};

enum Status {
    Pass,
    Fail,
    /// Cannot pass as stated; the reason is printed and documented.
    Unattainable(&'static str),
}

struct Outcome {
    status: Status,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome { status: Status::Pass, detail: detail.into() }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome { status: Status::Fail, detail: detail.into() }
}

fn check(ok: bool, detail: impl Into<String>) -> Outcome {
    if ok {
        pass(detail)
    } else {
        fail(detail)
    }
}

fn run(c: fn() -> Result<Outcome>) -> Outcome {
    c().unwrap_or_else(|e| fail(format!("error: {e}")))
}

fn u(name: &str) -> RatFunc {
    RatFunc::var(name)
}

fn criterion_1() -> Result<Outcome> {
    let g: Grid<RatFunc> = Grid::universal(1);
    let poly = interpolation_polynomial(&g, &partition(&[3]))?;
    let (den, coeffs) = golden_p3()?;
    if den != parse_ratfunc("(u02-u10)*(u01-u10)")? {
        return Ok(fail("golden denominator"));
    }
    if !poly.coeff(&partition(&[3])).is_one() {
        return Ok(fail("m[3] coefficient is not 1"));
    }
    for (lambda, c) in &coeffs {
        // cross-multiplied comparison
        if poly.coeff(lambda) * &den != *c {
            return Ok(fail(format!("coefficient of m{lambda}")));
        }
    }
    Ok(check(poly.num_terms() == 6, "m[3] + five coefficients over (u02-u10)(u01-u10)"))
}

fn criterion_2() -> Result<Outcome> {
    let g1: Grid<RatFunc> = Grid::universal(1);
    let lhs = interpolation_polynomial(&g1, &partition(&[3]))?.eval(&g1.knot(&partition(&[2, 2]))?)?;
    let eps = (u("u12") - &u("u11")) * &(u("u12") - &u("u10")) * &(u("u01") - &u("u10")).inv()?;
    let body = parse_ratfunc("u00*u02-u00*u11-u01^2+u01*u10+u01*u12-u02*u11-u10*u12+u11^2")?;
    let first = lhs == eps * &body;

    let g2: Grid<RatFunc> = Grid::universal(2);
    let lhs = interpolation_polynomial(&g2, &partition(&[2]))?.eval(&g2.knot(&partition(&[1, 1, 1]))?)?;
    let eps = (u("u21") - &u("u20")) * &(u("u10") - &u("u01")).inv()?;
    let body = parse_ratfunc("u10*u21-u01*u21+u11^2-u11*u00+u01*u10-u10^2+u00*u20-u11*u20")?;
    let second = lhs == eps * &body;
    Ok(check(first && second, format!("P_(3,0) at (2,2): {first}; P_(2,0,0) at (1,1,1): {second}")))
}

fn criterion_3() -> Result<Outcome> {
    let mut rng = rng(3);
    let mut grids = vec![Grid::new(GridFamily::I { a: r(1, 1), b: r(2, 1), c: r(3, 1), q: r(2, 3), t: r(5, 7) }, 2)?];
    while grids.len() < 21 {
        grids.push(sample("I", 2, 10, &mut rng));
    }
    let mut count = 0;
    for (k, g) in grids.iter().enumerate() {
        for n in 0..=2 {
            let g = Grid::new(g.family().clone(), n)?;
            for mu in enumerate_partitions(4, n + 1) {
                if macdonald_tableaux(&g, &mu)? != interpolation_polynomial(&g, &mu)? {
                    return Ok(fail(format!("grid {k}, n={n}, mu={mu}")));
                }
                count += 1;
            }
        }
    }
    Ok(pass(format!("21 grids, {count} polynomials")))
}

fn criterion_4() -> Result<Outcome> {
    let mut rng = rng(4);
    let mut count = 0;
    for draw in 0..3 {
        let gamma = distinct_rationals(&mut rng, 16);
        for n in 0..=3 {
            let g = Grid::new(GridFamily::E2 { gamma: gamma.clone(), start: -4 }, n)?;
            for mu in enumerate_partitions(5, n + 1) {
                let solver = interpolation_polynomial(&g, &mu)?;
                if factorial_schur_det(&g, &mu)? != solver || factorial_schur_tableaux(&g, &mu)? != solver {
                    return Ok(fail(format!("draw {draw}, n={n}, mu={mu}")));
                }
                count += 1;
            }
        }
    }
    Ok(pass(format!("{count} triples")))
}

fn criterion_5() -> Result<Outcome> {
    let mut rng = rng(5);
    let mut count = 0;
    for _ in 0..5 {
        let (a, b, c, q) =
            (small_rational(&mut rng), small_rational(&mut rng), small_rational(&mut rng), small_rational(&mut rng));
        if q.abs() == Rational::one() {
            continue;
        }
        let qinv = q.inv()?;
        let gamma = |k: i64| a.clone() + &(b.clone() * &q.powi(k).unwrap()) + &(c.clone() * &qinv.powi(k).unwrap());
        let e1 = GridFamily::E1 { gamma: (0..12).map(gamma).collect() };
        let e2 = GridFamily::E2 { gamma: (-4..12).map(gamma).collect(), start: -4 };
        for n in 0..=2 {
            let at_one =
                Grid::new(GridFamily::I { a: a.clone(), b: b.clone(), c: c.clone(), q: q.clone(), t: r(1, 1) }, n)?;
            let at_inv = Grid::new(
                GridFamily::I { a: a.clone(), b: b.clone(), c: c.clone(), q: q.clone(), t: qinv.clone() },
                n,
            )?;
            let (ge1, ge2) = (Grid::new(e1.clone(), n)?, Grid::new(e2.clone(), n)?);
            if ge1.require_nondegenerate(6).is_err() || ge2.require_nondegenerate(6).is_err() {
                continue;
            }
            for mu in enumerate_partitions(4, n + 1) {
                let fm = factorial_monomial(&ge1, &mu)?;
                if macdonald_tableaux(&at_one, &mu)? != fm || interpolation_polynomial(&at_one, &mu)? != fm {
                    return Ok(fail(format!("t=1, n={n}, mu={mu}")));
                }
                let fs = factorial_schur_det(&ge2, &mu)?;
                if macdonald_tableaux(&at_inv, &mu)? != fs || interpolation_polynomial(&at_inv, &mu)? != fs {
                    return Ok(fail(format!("t=1/q, n={n}, mu={mu}")));
                }
                count += 1;
            }
        }
    }
    Ok(check(count > 0, format!("{count} partitions at t=1 and t=1/q")))
}

fn criterion_6() -> Result<Outcome> {
    let mut rng = rng(6);
    let mut pairs = 0;
    for tag in FAMILIES {
        for n in 0..=2.min(max_n(tag)) {
            let g = sample(tag, n, 12, &mut rng);
            let report = extra_vanishing_check(&g, 5, 1)?;
            if !report.is_clean() {
                return Ok(fail(format!("family {tag}, n={n}: {}", report.to_text().trim())));
            }
            pairs += report.checked.len();
        }
    }
    let g: Grid<RatFunc> = Grid::universal(1);
    let stated = interpolation_polynomial(&g, &partition(&[2]))?.eval(&g.knot(&partition(&[1, 1]))?)?;
    let actual = interpolation_polynomial(&g, &partition(&[3]))?.eval(&g.knot(&partition(&[2, 2]))?)?;
    let detail = format!(
        "families clean ({pairs} extra pairs); universal ((3),(2,2)) nonzero: {}; universal ((2),(1,1)) = {stated}",
        !actual.is_zero()
    );
    if !actual.is_zero() && stated.is_zero() {
        Ok(Outcome {
            status: Status::Unattainable("((2),(1,1)) has |lambda| = |mu|, so P_(2) vanishes there by definition"),
            detail,
        })
    } else {
        Ok(fail(detail))
    }
}

/// Parameters of a recovered classification as base-field values.
fn base(c: &symterp::classify::Classification<Rational>) -> Option<Vec<Rational>> {
    c.base_params().map(|v| v.into_iter().map(|(_, x)| x).collect())
}

fn originals(f: &GridFamily<Rational>) -> Vec<Rational> {
    f.params().into_iter().map(|(_, x)| x).collect()
}

fn params_match(orig: &GridFamily<Rational>, c: &symterp::classify::Classification<Rational>, n: usize) -> bool {
    let jmax = 5;
    match (orig, &c.family) {
        (GridFamily::E1 { gamma }, GridFamily::E1 { gamma: got }) => {
            got.len() == jmax + 1 && got.iter().zip(gamma).all(|(x, y)| x.as_base() == Some(y))
        }
        (GridFamily::E2 { gamma, start }, GridFamily::E2 { gamma: got, start: s }) => {
            (0..got.len()).all(|k| {
                let idx = (s + k as i64 - start) as usize;
                got[k].as_base() == gamma.get(idx)
            }) && *s == -(n as i64)
                && got.len() == jmax + n + 1
        }
        (GridFamily::I { a, b, c: cc, q, t }, GridFamily::I { .. }) => {
            let Some(got) = base(c) else { return false };
            let direct = vec![a.clone(), b.clone(), cc.clone(), q.clone(), t.clone()];
            let mirrored = vec![a.clone(), cc.clone(), b.clone(), q.inv().unwrap(), t.inv().unwrap()];
            got == direct || got == mirrored
        }
        (
            GridFamily::III { variant: IIIVariant::B, alpha, alpha_p, beta, beta_p },
            GridFamily::III { variant: IIIVariant::B, .. },
        ) if n == 1 => {
            let expect = [alpha.clone() + alpha_p, alpha.clone() - alpha_p - beta_p, beta.clone()];
            c.determined.len() == 3 && c.determined.iter().zip(&expect).all(|((_, x), y)| x.as_base() == Some(y))
        }
        (o, g) if o.tag() == g.tag() => base(c) == Some(originals(o)),
        _ => false,
    }
}

fn criterion_7() -> Result<Outcome> {
    let mut rng = rng(7);
    let mut total = 0;
    for tag in FAMILIES {
        for k in 0..100 {
            let n = if tag == "IV" { 1 } else { 1 + k % 2 };
            let g = sample(tag, n, 10, &mut rng);
            let w = g.window(5)?;
            let c = match classify_window(&w) {
                Ok(c) => c,
                Err(e) => return Ok(fail(format!("{tag} draw {k}: {e}"))),
            };
            let back = Grid::new(c.family.clone(), n)?.window(5)?;
            if back != w.map(|x| symterp::QuadExt::base(x.clone())) {
                return Ok(fail(format!("{tag} draw {k}: regenerated window differs")));
            }
            if !params_match(g.family(), &c, n) {
                return Ok(fail(format!(
                    "{tag} draw {k}: parameters differ: {:?} vs {}",
                    originals(g.family()),
                    c.to_json()
                )));
            }
            total += 1;
        }
    }
    Ok(pass(format!(
        "{total} round trips; I up to (q,t,b,c)~(1/q,1/t,c,b); two-row IIIb via alpha+alpha', alpha-alpha'-beta', beta"
    )))
}

fn criterion_8() -> Result<Outcome> {
    let fam = Grid::new(GridFamily::I { a: r(1, 1), b: r(2, 1), c: r(3, 1), q: r(2, 3), t: r(5, 7) }, 2)?;
    let mut count = 0;
    for n in 0..=2 {
        let uni: Grid<RatFunc> = Grid::universal(n);
        let fi = fam.restrict_rows(n)?;
        for mu in enumerate_partitions(4, n + 1) {
            let ok = if n == 0 && mu.is_empty() {
                continue;
            } else if mu.length() <= n {
                check_restriction_identity(&uni, &mu)?
                    && check_restriction_identity(&fi, &mu)?
                    && check_stability(&uni, &mu)?
                    && check_stability(&fi, &mu)?
            } else {
                check_shift_identity(&uni, &mu)? && check_shift_identity(&fi, &mu)?
            };
            if !ok {
                return Ok(fail(format!("n={n}, mu={mu}")));
            }
            count += 1;
        }
    }
    Ok(pass(format!("{count} partitions on universal and family I grids")))
}

fn criterion_9() -> Result<Outcome> {
    let mut rng = rng(9);
    let mut grids = 0;
    while grids < 20 {
        let n = grids % 3;
        let d = 1 + grids % 3;
        let table: Vec<Vec<Rational>> = (0..=n).map(|_| distinct_rationals(&mut rng, d + 2)).collect();
        let g = Grid::explicit(table)?;
        if g.require_nondegenerate(d + 1).is_err() {
            continue;
        }
        let targets: std::collections::HashMap<Vec<usize>, Rational> = small_partitions(d, n + 1)
            .into_iter()
            .map(|l| (l, r(rng.gen_range(-20..=20), rng.gen_range(1..=4))))
            .collect();
        let got = solve(&g, d, |l| Ok(targets[l.parts()].clone()))?;
        for (kappa, c) in dense_oracle(&g, d, |l| targets[l].clone()) {
            if got.coeff(&partition(&kappa)) != c {
                return Ok(fail(format!("grid {grids}, n={n}, d={d}, kappa={kappa:?}")));
            }
        }
        grids += 1;
    }
    Ok(pass("20 grids, n <= 2, d <= 3"))
}

fn criterion_10() -> Result<Outcome> {
    let mut rng = rng(10);
    let mut count = 0;
    for tag in FAMILIES {
        for n in 0..=2.min(max_n(tag)) {
            let g = sample(tag, n, 10, &mut rng);
            for mu in enumerate_partitions(4, n + 1) {
                if !interpolation_polynomial(&g, &mu)?.coeff(&mu).is_one() {
                    return Ok(fail(format!("{tag}, n={n}, mu={mu}: not monic")));
                }
                count += 1;
            }
            if !check_first_variable(&g, 4)? {
                return Ok(fail(format!("{tag}, n={n}: leading x0 coefficient")));
            }
        }
    }
    Ok(pass(format!("{count} monic polynomials, leading x0 identity on every sample")))
}

fn criterion_11() -> Result<Outcome> {
    let (z, uu, v, w) = (u("z"), u("u"), u("v"), u("w"));
    let a = f(&z, &uu, &v, &z, &w)? == v;
    let b = f(&uu, &uu, &v, &v, &w)? == w;
    let c = f(&uu, &(uu.clone() + &z), &v, &(v.clone() - &z), &w)? == w.clone() + &z;
    Ok(check(a && b && c, format!("F(z,u,v,z,w)=v: {a}; F(u,u,v,v,w)=w: {b}; F(u,u+z,v,v-z,w)=w+z: {c}")))
}

fn main() {
    let criteria: [fn() -> Result<Outcome>; 11] = [
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
        criterion_9,
        criterion_10,
        criterion_11,
    ];
    let results: Vec<(Outcome, f64)> = std::thread::scope(|s| {
        let handles: Vec<_> = criteria
            .iter()
            .map(|c| {
                s.spawn(move || {
                    let start = Instant::now();
                    let out = run(*c);
                    (out, start.elapsed().as_secs_f64())
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("criterion panicked")).collect()
    });
    let mut unexpected = 0;
    for (k, (out, secs)) in results.iter().enumerate() {
        let n = k + 1;
        match out.status {
            Status::Pass => println!("criterion {n}: PASS ({secs:.2}s) {}", out.detail),
            Status::Fail => {
                unexpected += 1;
                println!("criterion {n}: FAIL ({secs:.2}s) {}", out.detail);
            }
            Status::Unattainable(why) => {
                println!("criterion {n}: FAIL ({secs:.2}s) {} [unattainable as stated: {why}]", out.detail)
            }
        }
    }
    if unexpected > 0 {
        eprintln!("{unexpected} criteria failed");
        std::process::exit(1);
    }
}
