//! Rational functions with a factored denominator.
//!
//! The numerator is an expanded [`ParamPoly`]; the denominator is a list of
//! normalized, pairwise distinct factors with multiplicities. Sums use the
//! lcm of the factor lists, and after every operation each denominator factor
//! that divides the numerator is cancelled. Factors of the form `a - b` (two
//! parameters) are split off whenever a polynomial enters a denominator, which
//! is what keeps grid computations from swelling.

use std::collections::HashMap;
use std::fmt;

use super::{gcd, ParamPoly, Rational, Scalar, Var};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct RatFunc {
    num: ParamPoly,
    den: Vec<(ParamPoly, u32)>,
}

impl RatFunc {
    pub fn from_poly(p: ParamPoly) -> Self {
        RatFunc { num: p, den: Vec::new() }
    }

    pub fn var(name: &str) -> Self {
        Self::from_poly(ParamPoly::var(Var::new(name)))
    }

    pub fn numer(&self) -> &ParamPoly {
        &self.num
    }

    /// Denominator factors with multiplicities.
    pub fn denom_factors(&self) -> &[(ParamPoly, u32)] {
        &self.den
    }

    pub fn denom(&self) -> ParamPoly {
        let mut d = ParamPoly::constant(Rational::one());
        for (f, m) in &self.den {
            d = d.mul(&f.pow(*m));
        }
        d
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.den.is_empty() {
            self.num.as_constant()
        } else {
            None
        }
    }

    /// Fraction `num / den` with `den` split into factors.
    pub fn from_fraction(num: ParamPoly, den: &ParamPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (unit, factors) = split_factors(den);
        let mut r = RatFunc { num: num.scale(&unit.inv()?), den: Vec::new() };
        for (f, m) in factors {
            push_factor(&mut r.den, f, m);
        }
        r.cancel_all();
        Ok(r)
    }

    fn cancel_all(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        for k in 0..self.den.len() {
            while self.den[k].1 > 0 {
                match divide_by_factor(&self.num, &self.den[k].0) {
                    Some(q) => {
                        self.num = q;
                        self.den[k].1 -= 1;
                    }
                    None => break,
                }
            }
        }
        self.den.retain(|(_, m)| *m > 0);
    }

    /// Multiplies the numerator by denominator factors so that the
    /// denominator becomes `target` (which must contain `self.den`).
    fn lift_to(&self, target: &[(ParamPoly, u32)]) -> ParamPoly {
        let mut num = self.num.clone();
        for (f, m) in target {
            let have = self.den.iter().find(|(g, _)| g == f).map(|(_, k)| *k).unwrap_or(0);
            if *m > have {
                num = num.mul(&f.pow(m - have));
            }
        }
        num
    }

    fn lcm_den(&self, other: &RatFunc) -> Vec<(ParamPoly, u32)> {
        let mut out = self.den.clone();
        for (f, m) in &other.den {
            match out.iter_mut().find(|(g, _)| g == f) {
                Some((_, k)) => *k = (*k).max(*m),
                None => out.push((f.clone(), *m)),
            }
        }
        out
    }

    fn add_impl(&self, other: &RatFunc, negate: bool) -> RatFunc {
        if self.den.is_empty() && other.den.is_empty() {
            let num = if negate { self.num.sub(&other.num) } else { self.num.add(&other.num) };
            return RatFunc::from_poly(num);
        }
        let den = self.lcm_den(other);
        let a = self.lift_to(&den);
        let b = other.lift_to(&den);
        let num = if negate { a.sub(&b) } else { a.add(&b) };
        let mut r = RatFunc { num, den };
        r.cancel_all();
        r
    }

    fn mul_impl(&self, other: &RatFunc) -> RatFunc {
        if self.num.is_zero() || other.num.is_zero() {
            return RatFunc::from_poly(ParamPoly::zero());
        }
        // Both operands are reduced, so only cross cancellation can occur.
        let (mut a, mut bden) = (self.num.clone(), other.den.clone());
        cancel_against(&mut a, &mut bden);
        let (mut b, mut aden) = (other.num.clone(), self.den.clone());
        cancel_against(&mut b, &mut aden);
        let mut den = aden;
        for (f, m) in bden {
            push_factor(&mut den, f, m);
        }
        RatFunc { num: a.mul(&b), den }
    }

    fn inv_impl(&self) -> Result<RatFunc> {
        if self.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (unit, factors) = split_factors(&self.num);
        let mut num = ParamPoly::constant(unit.inv()?);
        for (f, m) in &self.den {
            num = num.mul(&f.pow(*m));
        }
        let mut den = Vec::new();
        for (f, m) in factors {
            push_factor(&mut den, f, m);
        }
        Ok(RatFunc { num, den })
    }

    /// Substitutes rationals for every variable.
    pub fn specialize(&self, bindings: &HashMap<String, Rational>) -> Result<Rational> {
        let num = self.num.eval_rational(bindings)?;
        let mut den = Rational::one();
        for (f, m) in &self.den {
            let v = f.eval_rational(bindings)?;
            if v.is_zero() {
                return Err(Error::DenominatorVanishes);
            }
            den = den * v.pow(*m);
        }
        num.try_div(&den)
    }

    /// Substitutes a scalar for every variable through `f`.
    pub fn eval_with<S: Scalar>(&self, f: &mut impl FnMut(Var) -> Result<S>) -> Result<S> {
        let num: S = self.num.eval_with(f)?;
        let mut den = S::one();
        for (g, m) in &self.den {
            let v: S = g.eval_with(f)?;
            if v.is_zero() {
                return Err(Error::DenominatorVanishes);
            }
            den = den * v.pow(*m);
        }
        num.try_div(&den)
    }

    /// Replaces the listed variables by rational functions; others are kept.
    pub fn substitute(&self, bindings: &HashMap<Var, RatFunc>) -> Result<RatFunc> {
        self.eval_with(&mut |v: Var| {
            Ok(bindings.get(&v).cloned().unwrap_or_else(|| RatFunc::from_poly(ParamPoly::var(v))))
        })
    }

    /// Fully reduced form via multivariate gcd.
    pub fn reduce_canonical(&self) -> RatFunc {
        if self.den.is_empty() {
            return self.clone();
        }
        let mut num = self.num.clone();
        let mut den = Vec::new();
        for (f0, m) in &self.den {
            for _ in 0..*m {
                let mut f = f0.clone();
                let g = gcd::gcd(&num, &f);
                if !g.is_one() && g.as_constant().is_none() {
                    num = num.div_exact(&g).expect("gcd divides");
                    f = f.div_exact(&g).expect("gcd divides");
                }
                let (unit, p) = f.normalize();
                num = num.scale(&unit.inv().expect("nonzero unit"));
                f = p;
                if f.as_constant().is_none() {
                    push_factor(&mut den, f, 1);
                }
            }
        }
        RatFunc { num, den }
    }

    pub fn pow(&self, e: u32) -> RatFunc {
        RatFunc {
            num: self.num.pow(e),
            den: if e == 0 { Vec::new() } else { self.den.iter().map(|(f, m)| (f.clone(), m * e)).collect() },
        }
    }
}

fn push_factor(den: &mut Vec<(ParamPoly, u32)>, f: ParamPoly, m: u32) {
    if m == 0 {
        return;
    }
    match den.iter_mut().find(|(g, _)| *g == f) {
        Some((_, k)) => *k += m,
        None => den.push((f, m)),
    }
}

/// Cancels factors of `den` against `num` in place.
fn cancel_against(num: &mut ParamPoly, den: &mut Vec<(ParamPoly, u32)>) {
    for (f, m) in den.iter_mut() {
        while *m > 0 {
            match divide_by_factor(num, f) {
                Some(q) => {
                    *num = q;
                    *m -= 1;
                }
                None => break,
            }
        }
    }
    den.retain(|(_, m)| *m > 0);
}

/// `num / f` when exact, using cheap divisibility tests where possible.
fn divide_by_factor(num: &ParamPoly, f: &ParamPoly) -> Option<ParamPoly> {
    if let Some(v) = f.as_single_var() {
        if !num.divisible_by_var(v) {
            return None;
        }
    } else if let Some((a, b)) = f.as_difference() {
        if !num.divisible_by_difference(a, b) {
            return None;
        }
    } else {
        for (m, _) in f.terms() {
            // every variable of f must occur in num to at least its f-degree
            for &(v, e) in m.pairs() {
                if num.degree_in(v) < e {
                    return None;
                }
            }
        }
    }
    num.div_exact(f)
}

/// Splits `p = unit * prod f_i^{m_i}`, separating single-variable factors and
/// parameter differences `a - b`; the remaining cofactor is kept whole.
fn split_factors(p: &ParamPoly) -> (Rational, Vec<(ParamPoly, u32)>) {
    let mut factors = Vec::new();
    let mut rest = p.clone();
    let mc = rest.monomial_content();
    for &(v, e) in mc.pairs() {
        factors.push((ParamPoly::var(v), e));
    }
    if !mc.is_one() {
        rest = rest.div_exact(&ParamPoly::from_terms([(mc, Rational::one())])).expect("monomial content divides");
    }
    if rest.as_constant().is_none() && rest.as_difference().is_none() {
        let vars: Vec<Var> = rest.vars().into_iter().collect();
        'outer: for x in 0..vars.len() {
            for y in x + 1..vars.len() {
                let (a, b) = (vars[x], vars[y]);
                // divide by the normalized difference so no unit is lost
                let (_, d) = ParamPoly::var(a).sub(&ParamPoly::var(b)).normalize();
                let mut m = 0;
                while rest.as_constant().is_none() && rest.divisible_by_difference(a, b) {
                    rest = rest.div_exact(&d).expect("difference divides");
                    m += 1;
                }
                if m > 0 {
                    factors.push((d, m));
                }
                if rest.as_constant().is_some() || rest.as_difference().is_some() {
                    break 'outer;
                }
            }
        }
    }
    let (unit, rest) = rest.normalize();
    if rest.as_constant().is_none() {
        factors.push((rest, 1));
    }
    // merge duplicates
    let mut out: Vec<(ParamPoly, u32)> = Vec::new();
    for (f, m) in factors {
        push_factor(&mut out, f, m);
    }
    (unit, out)
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        if self.den.len() == other.den.len() && self.den.iter().all(|d| other.den.contains(d)) {
            return self.num == other.num;
        }
        let den = self.lcm_den(other);
        self.lift_to(&den) == other.lift_to(&den)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        if let [(g, 1)] = self.den.as_slice() {
            return write!(f, "({})/({g})", self.num);
        }
        let mut parts: Vec<String> = self
            .den
            .iter()
            .map(|(g, m)| {
                let base = if g.num_terms() == 1 { g.to_string() } else { format!("({g})") };
                if *m > 1 {
                    if g.num_terms() == 1 && g.total_degree() > 1 {
                        format!("({base})^{m}")
                    } else {
                        format!("{base}^{m}")
                    }
                } else {
                    base
                }
            })
            .collect();
        parts.sort();
        write!(f, "({})/({})", self.num, parts.join("*"))
    }
}

macro_rules! ratfunc_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl std::ops::$tr for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                $body(&self, &rhs)
            }
        }
        impl<'a> std::ops::$tr<&'a RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: &'a RatFunc) -> RatFunc {
                $body(&self, rhs)
            }
        }
        impl<'a, 'b> std::ops::$tr<&'b RatFunc> for &'a RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: &'b RatFunc) -> RatFunc {
                $body(self, rhs)
            }
        }
    };
}
ratfunc_binop!(Add, add, |a: &RatFunc, b: &RatFunc| a.add_impl(b, false));
ratfunc_binop!(Sub, sub, |a: &RatFunc, b: &RatFunc| a.add_impl(b, true));
ratfunc_binop!(Mul, mul, |a: &RatFunc, b: &RatFunc| a.mul_impl(b));

impl std::ops::Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: self.num.neg(), den: self.den }
    }
}

impl Scalar for RatFunc {
    fn zero() -> Self {
        RatFunc::from_poly(ParamPoly::zero())
    }
    fn one() -> Self {
        RatFunc::from_poly(ParamPoly::constant(Rational::one()))
    }
    fn from_rational(r: &Rational) -> Self {
        RatFunc::from_poly(ParamPoly::constant(r.clone()))
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn is_one(&self) -> bool {
        self.den.is_empty() && self.num.is_one()
    }
    fn inv(&self) -> Result<Self> {
        self.inv_impl()
    }
    fn param(name: &str) -> Result<Self> {
        Ok(RatFunc::var(name))
    }
    fn to_rational(&self) -> Option<Rational> {
        self.as_constant()
    }
    fn canonical(&self) -> Self {
        self.reduce_canonical()
    }
}
