//! Sparse multivariate polynomials with rational coefficients.
//!
//! Terms are kept sorted in decreasing lexicographic order of variable ids
//! (a genuine monomial order, used by exact division). Display uses a
//! graded-lex order on variable *names* so that output does not depend on
//! interning order.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use super::{Rational, Scalar, Var};
use crate::error::{Error, Result};

/// A power product: `(var, exponent)` pairs sorted by var, exponents positive.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn from_pairs(mut pairs: Vec<(Var, u32)>) -> Self {
        pairs.retain(|&(_, e)| e > 0);
        pairs.sort_by_key(|&(v, _)| v);
        let mut out: Vec<(Var, u32)> = Vec::with_capacity(pairs.len());
        for (v, e) in pairs {
            match out.last_mut() {
                Some((w, f)) if *w == v => *f += e,
                _ => out.push((v, e)),
            }
        }
        Monomial(out)
    }

    pub fn pairs(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0.binary_search_by_key(&v, |&(w, _)| w).map(|k| self.0[k].1).unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for &(v, e) in &self.0 {
            if j < other.0.len() && other.0[j].0 == v {
                let f = other.0[j].1;
                if f > e {
                    return None;
                }
                if e > f {
                    out.push((v, e - f));
                }
                j += 1;
            } else if j < other.0.len() && other.0[j].0 < v {
                return None;
            } else {
                out.push((v, e));
            }
        }
        if j < other.0.len() {
            return None;
        }
        Some(Monomial(out))
    }

    /// Replaces `from` by `to`, merging exponents.
    fn rename(&self, from: Var, to: Var) -> Monomial {
        let e = self.exponent(from);
        if e == 0 {
            return self.clone();
        }
        let mut pairs: Vec<(Var, u32)> = self.0.iter().copied().filter(|&(v, _)| v != from).collect();
        pairs.push((to, e));
        Monomial::from_pairs(pairs)
    }

    fn name_key(&self) -> (u32, Vec<(Arc<str>, u32)>) {
        let mut named: Vec<(Arc<str>, u32)> = self.0.iter().map(|&(v, e)| (v.name(), e)).collect();
        named.sort();
        (self.degree(), named)
    }
}

impl Ord for Monomial {
    /// Lexicographic order with smaller variable ids more significant.
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(va, ea)), Some(&(vb, eb))) => {
                    if va == vb {
                        if ea != eb {
                            return ea.cmp(&eb);
                        }
                        i += 1;
                        j += 1;
                    } else if va < vb {
                        return Ordering::Greater;
                    } else {
                        return Ordering::Less;
                    }
                }
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Graded lex on names, descending: higher degree first, then larger exponent
/// of the alphabetically first variable.
fn name_order(a: &(u32, Vec<(Arc<str>, u32)>), b: &(u32, Vec<(Arc<str>, u32)>)) -> Ordering {
    if a.0 != b.0 {
        return b.0.cmp(&a.0);
    }
    let (x, y) = (&a.1, &b.1);
    let (mut i, mut j) = (0, 0);
    loop {
        match (x.get(i), y.get(j)) {
            (None, None) => return Ordering::Equal,
            (Some(_), None) => return Ordering::Less,
            (None, Some(_)) => return Ordering::Greater,
            (Some((na, ea)), Some((nb, eb))) => match na.cmp(nb) {
                Ordering::Equal => {
                    if ea != eb {
                        return eb.cmp(ea);
                    }
                    i += 1;
                    j += 1;
                }
                Ordering::Less => return Ordering::Less,
                Ordering::Greater => return Ordering::Greater,
            },
        }
    }
}

/// Sparse polynomial over the rationals.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct ParamPoly {
    terms: Vec<(Monomial, Rational)>,
}

impl ParamPoly {
    pub fn zero() -> Self {
        ParamPoly { terms: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            ParamPoly { terms: vec![(Monomial::one(), c)] }
        }
    }

    pub fn var(v: Var) -> Self {
        ParamPoly { terms: vec![(Monomial::var(v), Rational::one())] }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(iter: I) -> Self {
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in iter {
            accumulate(&mut acc, m, c);
        }
        Self::from_map(acc)
    }

    fn from_map(acc: HashMap<Monomial, Rational>) -> Self {
        let mut terms: Vec<(Monomial, Rational)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        ParamPoly { terms }
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self.terms.as_slice(), [(m, c)] if m.is_one() && c.is_one())
    }

    pub fn leading(&self) -> Option<&(Monomial, Rational)> {
        self.terms.first()
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms.iter().flat_map(|(m, _)| m.pairs().iter().map(|&(v, _)| v)).collect()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.iter().map(|(m, _)| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn add(&self, other: &ParamPoly) -> ParamPoly {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &ParamPoly) -> ParamPoly {
        self.merge(other, true)
    }

    fn merge(&self, other: &ParamPoly, negate: bool) -> ParamPoly {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let sign = |c: &Rational| if negate { -c } else { c.clone() };
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0.clone(), sign(&b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (m.clone(), sign(c))));
        ParamPoly { terms: out }
    }

    pub fn neg(&self) -> ParamPoly {
        ParamPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn scale(&self, c: &Rational) -> ParamPoly {
        if c.is_zero() {
            return Self::zero();
        }
        ParamPoly { terms: self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> ParamPoly {
        if c.is_zero() {
            return Self::zero();
        }
        ParamPoly { terms: self.terms.iter().map(|(n, d)| (n.mul(m), d * c)).collect() }
    }

    pub fn mul(&self, other: &ParamPoly) -> ParamPoly {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if let Some(c) = self.as_constant() {
            return other.scale(&c);
        }
        if let Some(c) = other.as_constant() {
            return self.scale(&c);
        }
        let mut acc: HashMap<Monomial, Rational> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (m, c) in &self.terms {
            for (n, d) in &other.terms {
                accumulate(&mut acc, m.mul(n), c * d);
            }
        }
        Self::from_map(acc)
    }

    pub fn pow(&self, e: u32) -> ParamPoly {
        let mut result = ParamPoly::constant(Rational::one());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &ParamPoly) -> Option<ParamPoly> {
        let (lm, lc) = d.leading()?;
        if self.is_zero() {
            return Some(Self::zero());
        }
        if let Some(c) = d.as_constant() {
            return Some(self.scale(&c.inv().ok()?));
        }
        if d.terms.len() == 1 {
            let inv = lc.inv().ok()?;
            let mut terms = Vec::with_capacity(self.terms.len());
            for (m, c) in &self.terms {
                terms.push((m.div(lm)?, c * &inv));
            }
            return Some(ParamPoly { terms });
        }
        let lc_inv = lc.inv().ok()?;
        let mut rem: BTreeMap<Monomial, Rational> = self.terms.iter().cloned().collect();
        let mut quot: Vec<(Monomial, Rational)> = Vec::new();
        while let Some((m, c)) = rem.pop_last() {
            let qm = m.div(lm)?;
            let qc = &c * &lc_inv;
            for (dm, dc) in &d.terms[1..] {
                let key = dm.mul(&qm);
                let delta = dc * &qc;
                match rem.entry(key) {
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        let v = e.get() - &delta;
                        if v.is_zero() {
                            e.remove();
                        } else {
                            *e.get_mut() = v;
                        }
                    }
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(-delta);
                    }
                }
            }
            quot.push((qm, qc));
        }
        Some(ParamPoly { terms: quot })
    }

    /// Positive rational content (gcd of coefficients).
    pub fn content(&self) -> Rational {
        let mut g = Rational::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
        }
        g
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        let Some((first, _)) = it.next() else { return Monomial::one() };
        let mut pairs: Vec<(Var, u32)> = first.pairs().to_vec();
        for (m, _) in it {
            pairs = pairs
                .into_iter()
                .filter_map(|(v, e)| {
                    let f = m.exponent(v).min(e);
                    (f > 0).then_some((v, f))
                })
                .collect();
            if pairs.is_empty() {
                break;
            }
        }
        Monomial(pairs)
    }

    /// Leading coefficient with respect to the name-based display order.
    pub fn display_leading_coeff(&self) -> Option<&Rational> {
        self.terms.iter().map(|(m, c)| (m.name_key(), c)).min_by(|a, b| name_order(&a.0, &b.0)).map(|(_, c)| c)
    }

    /// Splits `self = unit * primitive` where `primitive` has coprime integer
    /// coefficients and positive display-leading coefficient.
    pub fn normalize(&self) -> (Rational, ParamPoly) {
        if self.is_zero() {
            return (Rational::zero(), Self::zero());
        }
        let mut unit = self.content();
        if self.display_leading_coeff().is_some_and(|c| c.is_negative()) {
            unit = -unit;
        }
        let inv = unit.inv().expect("nonzero content");
        (unit, self.scale(&inv))
    }

    /// `(a, b)` when `self == a - b` for variables `a`, `b` (up to a unit).
    pub fn as_difference(&self) -> Option<(Var, Var)> {
        match self.terms.as_slice() {
            [(m1, c1), (m2, c2)] if m1.pairs().len() == 1 && m2.pairs().len() == 1 => {
                let (v1, e1) = m1.pairs()[0];
                let (v2, e2) = m2.pairs()[0];
                (e1 == 1 && e2 == 1 && (c1 + c2).is_zero()).then_some((v1, v2))
            }
            _ => None,
        }
    }

    /// The variable `v` when `self` is a unit multiple of `v`.
    pub fn as_single_var(&self) -> Option<Var> {
        match self.terms.as_slice() {
            [(m, _)] if m.pairs().len() == 1 && m.pairs()[0].1 == 1 => Some(m.pairs()[0].0),
            _ => None,
        }
    }

    /// `self` with every occurrence of `from` replaced by `to`.
    pub fn rename(&self, from: Var, to: Var) -> ParamPoly {
        Self::from_terms(self.terms.iter().map(|(m, c)| (m.rename(from, to), c.clone())))
    }

    /// Whether `self` vanishes after identifying `a` with `b`, i.e. whether
    /// `a - b` divides `self`.
    pub fn divisible_by_difference(&self, a: Var, b: Var) -> bool {
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in &self.terms {
            accumulate(&mut acc, m.rename(a, b), c.clone());
        }
        acc.values().all(|c| c.is_zero())
    }

    /// Whether `v` divides every term.
    pub fn divisible_by_var(&self, v: Var) -> bool {
        self.terms.iter().all(|(m, _)| m.exponent(v) > 0)
    }

    /// Evaluates with every variable mapped through `f`.
    pub fn eval_with<S: Scalar>(&self, f: &mut impl FnMut(Var) -> Result<S>) -> Result<S> {
        let mut cache: HashMap<Var, Vec<S>> = HashMap::new();
        let mut total = S::zero();
        for (m, c) in &self.terms {
            let mut t = S::from_rational(c);
            for &(v, e) in m.pairs() {
                if let std::collections::hash_map::Entry::Vacant(e) = cache.entry(v) {
                    e.insert(vec![S::one(), f(v)?]);
                }
                let pows = cache.get_mut(&v).unwrap();
                while pows.len() <= e as usize {
                    let next = pows.last().unwrap().clone() * &pows[1];
                    pows.push(next);
                }
                t = t * &pows[e as usize];
            }
            total = total + &t;
        }
        Ok(total)
    }

    /// Evaluates at rational values given by name.
    pub fn eval_rational(&self, bindings: &HashMap<String, Rational>) -> Result<Rational> {
        self.eval_with(&mut |v: Var| {
            let name = v.name();
            bindings.get(&*name).cloned().ok_or_else(|| Error::UnboundVariable(name.to_string()))
        })
    }

    /// Views `self` as a polynomial in `v`: coefficient of `v^k` at index `k`.
    pub fn to_univariate(&self, v: Var) -> Vec<ParamPoly> {
        let deg = self.degree_in(v) as usize;
        let mut parts: Vec<HashMap<Monomial, Rational>> = vec![HashMap::new(); deg + 1];
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            let rest = Monomial(m.pairs().iter().copied().filter(|&(w, _)| w != v).collect());
            accumulate(&mut parts[e as usize], rest, c.clone());
        }
        parts.into_iter().map(Self::from_map).collect()
    }

    pub fn from_univariate(v: Var, coeffs: &[ParamPoly]) -> ParamPoly {
        let mut acc = ParamPoly::zero();
        for (k, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&c.mul_monomial(&Monomial::from_pairs(vec![(v, k as u32)]), &Rational::one()));
            }
        }
        acc
    }
}

fn accumulate(acc: &mut HashMap<Monomial, Rational>, m: Monomial, c: Rational) {
    match acc.entry(m) {
        std::collections::hash_map::Entry::Occupied(mut e) => {
            let v = e.get_mut();
            *v = &*v + &c;
        }
        std::collections::hash_map::Entry::Vacant(e) => {
            e.insert(c);
        }
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, named: &[(Arc<str>, u32)]) -> fmt::Result {
    for (k, (name, e)) in named.iter().enumerate() {
        if k > 0 {
            f.write_str("*")?;
        }
        f.write_str(name)?;
        if *e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut keyed: Vec<_> = self.terms.iter().map(|(m, c)| (m.name_key(), c)).collect();
        keyed.sort_by(|a, b| name_order(&a.0, &b.0));
        for (k, ((deg, named), c)) in keyed.iter().enumerate() {
            let neg = c.is_negative();
            if neg {
                f.write_str("-")?;
            } else if k > 0 {
                f.write_str("+")?;
            }
            let mag = c.abs();
            if *deg == 0 {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                write_monomial(f, named)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(name: &str) -> ParamPoly {
        ParamPoly::var(Var::new(name))
    }

    fn c(n: i64) -> ParamPoly {
        ParamPoly::constant(Rational::from(n))
    }

    #[test]
    fn arithmetic_and_display() {
        let x = v("px");
        let y = v("py");
        let p = x.add(&y).mul(&x.sub(&y));
        assert_eq!(p.to_string(), "px^2-py^2");
        assert_eq!(p.sub(&p), ParamPoly::zero());
        assert_eq!(c(3).scale(&Rational::new(1, 2)).to_string(), "3/2");
        assert_eq!(x.scale(&Rational::new(-2, 3)).add(&c(1)).to_string(), "-2/3*px+1");
    }

    #[test]
    fn exact_division() {
        let x = v("dx");
        let y = v("dy");
        let f = x.sub(&y);
        let g = x.pow(3).add(&y.mul(&c(2)));
        let prod = f.mul(&g);
        assert_eq!(prod.div_exact(&f), Some(g.clone()));
        assert_eq!(prod.div_exact(&g), Some(f.clone()));
        assert_eq!(g.div_exact(&f), None);
        assert!(prod.divisible_by_difference(Var::new("dx"), Var::new("dy")));
        assert!(!g.divisible_by_difference(Var::new("dx"), Var::new("dy")));
    }

    #[test]
    fn normalization_is_sign_canonical() {
        let x = v("nx");
        let y = v("ny");
        let (u1, p1) = y.sub(&x).scale(&Rational::new(3, 2)).normalize();
        let (u2, p2) = x.sub(&y).normalize();
        assert_eq!(p1, p2);
        assert_eq!(u1, Rational::new(-3, 2));
        assert_eq!(u2, Rational::one());
        assert_eq!(p1.to_string(), "nx-ny");
    }
}
