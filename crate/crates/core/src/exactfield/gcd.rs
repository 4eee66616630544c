//! Multivariate gcd over the rationals by recursive primitive remainder sequences.
//! Only used when a caller asks for canonical (fully reduced) fractions.

use super::{ParamPoly, Rational, Scalar, Var};

/// Normalized gcd of `a` and `b`; `gcd(0, 0) = 0`.
pub fn gcd(a: &ParamPoly, b: &ParamPoly) -> ParamPoly {
    gcd_rec(a, b).normalize().1
}

fn one() -> ParamPoly {
    ParamPoly::constant(Rational::one())
}

fn gcd_rec(a: &ParamPoly, b: &ParamPoly) -> ParamPoly {
    if a.is_zero() {
        return b.normalize().1;
    }
    if b.is_zero() {
        return a.normalize().1;
    }
    if a.as_constant().is_some() || b.as_constant().is_some() {
        return one();
    }
    let va = a.vars();
    let vb = b.vars();
    let v: Var = *va.union(&vb).next().expect("non-constant");
    if !va.contains(&v) {
        return gcd_rec(a, &content_in(b, v));
    }
    if !vb.contains(&v) {
        return gcd_rec(&content_in(a, v), b);
    }
    let ua = a.to_univariate(v);
    let ub = b.to_univariate(v);
    let ca = list_content(&ua);
    let cb = list_content(&ub);
    let c = gcd_rec(&ca, &cb);
    let mut pa = divide_list(&ua, &ca);
    let mut pb = divide_list(&ub, &cb);
    if pa.len() < pb.len() {
        std::mem::swap(&mut pa, &mut pb);
    }
    loop {
        let r = prem(&pa, &pb);
        if r.is_empty() {
            break;
        }
        if r.len() == 1 {
            return c;
        }
        pa = pb;
        let cr = list_content(&r);
        pb = divide_list(&r, &cr);
    }
    let g = ParamPoly::from_univariate(v, &pb);
    c.mul(&g).normalize().1
}

fn content_in(p: &ParamPoly, v: Var) -> ParamPoly {
    list_content(&p.to_univariate(v))
}

fn list_content(coeffs: &[ParamPoly]) -> ParamPoly {
    let mut g = ParamPoly::zero();
    for c in coeffs {
        if c.is_zero() {
            continue;
        }
        g = gcd_rec(&g, c);
        if g.as_constant().is_some() {
            return one();
        }
    }
    g
}

fn divide_list(coeffs: &[ParamPoly], d: &ParamPoly) -> Vec<ParamPoly> {
    coeffs.iter().map(|c| c.div_exact(d).expect("content divides coefficients")).collect()
}

fn trim(mut v: Vec<ParamPoly>) -> Vec<ParamPoly> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

/// Pseudo-remainder of `a` by `b` as univariate polynomials; empty means zero.
fn prem(a: &[ParamPoly], b: &[ParamPoly]) -> Vec<ParamPoly> {
    let mut r = trim(a.to_vec());
    let b = trim(b.to_vec());
    let n = b.len() - 1;
    let lc = b[n].clone();
    while r.len() > n && !r.is_empty() {
        let k = r.len() - 1;
        let coef = r[k].clone();
        for c in r.iter_mut() {
            *c = c.mul(&lc);
        }
        for (i, bc) in b.iter().enumerate() {
            let idx = k - n + i;
            r[idx] = r[idx].sub(&coef.mul(bc));
        }
        r = trim(r);
    }
    r
}
