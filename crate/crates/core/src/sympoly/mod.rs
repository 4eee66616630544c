//! Symmetric polynomials in the monomial basis `m_lambda`.

mod multipoly;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;

pub use multipoly::MultiPoly;

use crate::error::{Error, Result};
use crate::exactfield::{Rational, Scalar};
use crate::partition::Partition;

/// Symmetric polynomial in `nvars` variables, stored as coefficients of the
/// monomial symmetric functions. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct SymPoly<S> {
    nvars: usize,
    coeffs: BTreeMap<Partition, S>,
}

/// Distinct permutations of `v`, in lexicographic order.
pub fn orbit(v: &[usize]) -> Vec<Vec<usize>> {
    let mut cur: Vec<usize> = v.to_vec();
    cur.sort_unstable();
    let mut out = vec![cur.clone()];
    loop {
        let n = cur.len();
        if n < 2 {
            return out;
        }
        let mut i = n - 1;
        while i > 0 && cur[i - 1] >= cur[i] {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        let mut j = n - 1;
        while cur[j] <= cur[i - 1] {
            j -= 1;
        }
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

fn is_weakly_decreasing(v: &[usize]) -> bool {
    v.windows(2).all(|w| w[0] >= w[1])
}

fn to_partition(v: Vec<usize>) -> Partition {
    Partition::new(v).expect("sorted exponent vector")
}

fn count_to_scalar<S: Scalar>(c: u64) -> S {
    S::from_rational(&Rational::from(BigInt::from(c)))
}

type Counts = Arc<Vec<(Partition, u64)>>;

fn product_counts(nvars: usize, a: &Partition, b: &Partition) -> Counts {
    static CACHE: OnceLock<RwLock<HashMap<(usize, Partition, Partition), Counts>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = (nvars, a.clone(), b.clone());
    if let Some(c) = cache.read().unwrap().get(&key) {
        return c.clone();
    }
    let mut acc: BTreeMap<Partition, u64> = BTreeMap::new();
    let ob = orbit(&b.padded(nvars));
    for alpha in orbit(&a.padded(nvars)) {
        for beta in &ob {
            let kappa: Vec<usize> = alpha.iter().zip(beta).map(|(x, y)| x + y).collect();
            if is_weakly_decreasing(&kappa) {
                *acc.entry(to_partition(kappa)).or_default() += 1;
            }
        }
    }
    let c: Counts = Arc::new(acc.into_iter().collect());
    cache.write().unwrap().insert(key, c.clone());
    c
}

/// `m_lambda(x + 1) = sum_kappa N(lambda, kappa) m_kappa(x)`.
fn shift_counts(nvars: usize, lambda: &Partition) -> Counts {
    static CACHE: OnceLock<RwLock<HashMap<(usize, Partition), Counts>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = (nvars, lambda.clone());
    if let Some(c) = cache.read().unwrap().get(&key) {
        return c.clone();
    }
    let mut acc: BTreeMap<Partition, u64> = BTreeMap::new();
    for alpha in orbit(&lambda.padded(nvars)) {
        // all weakly decreasing kappa <= alpha componentwise
        fn rec(alpha: &[usize], k: usize, cur: &mut Vec<usize>, weight: u64, acc: &mut BTreeMap<Partition, u64>) {
            if k == alpha.len() {
                *acc.entry(to_partition(cur.clone())).or_default() += weight;
                return;
            }
            let hi = if k == 0 { alpha[0] } else { alpha[k].min(cur[k - 1]) };
            for e in 0..=hi {
                cur.push(e);
                rec(alpha, k + 1, cur, weight * binomial(alpha[k] as u64, e as u64), acc);
                cur.pop();
            }
        }
        rec(&alpha, 0, &mut Vec::new(), 1, &mut acc);
    }
    let c: Counts = Arc::new(acc.into_iter().collect());
    cache.write().unwrap().insert(key, c.clone());
    c
}

pub(crate) fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u64 = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// Removes one copy of `e` from `v` (which must contain it).
fn remove_one(v: &[usize], e: usize) -> Vec<usize> {
    let mut w = v.to_vec();
    let pos = w.iter().position(|&x| x == e).expect("value present");
    w.remove(pos);
    w
}

fn distinct_values(v: &[usize]) -> Vec<usize> {
    let mut d = v.to_vec();
    d.dedup();
    d
}

impl<S: Scalar> SymPoly<S> {
    pub fn zero(nvars: usize) -> Self {
        SymPoly { nvars, coeffs: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: S) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Partition::empty(), c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, S::one())
    }

    /// `c * m_lambda`.
    pub fn monomial(nvars: usize, lambda: Partition, c: S) -> Result<Self> {
        let mut p = Self::zero(nvars);
        p.check_len(&lambda)?;
        p.add_term(lambda, c);
        Ok(p)
    }

    pub fn from_terms<I: IntoIterator<Item = (Partition, S)>>(nvars: usize, terms: I) -> Result<Self> {
        let mut p = Self::zero(nvars);
        for (l, c) in terms {
            p.check_len(&l)?;
            p.add_term(l, c);
        }
        Ok(p)
    }

    fn check_len(&self, l: &Partition) -> Result<()> {
        if l.length() > self.nvars {
            return Err(Error::InvalidArgument(format!("{l} has more than {} parts", self.nvars)));
        }
        Ok(())
    }

    /// Adds `c * m_lambda` in place.
    pub fn add_term(&mut self, lambda: Partition, c: S) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(lambda) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = e.get().clone() + &c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn coeff(&self, lambda: &Partition) -> S {
        self.coeffs.get(lambda).cloned().unwrap_or_else(S::zero)
    }

    /// Terms in partition order.
    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &S)> {
        self.coeffs.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.keys().map(|l| l.size()).max()
    }

    fn same_space(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::InvalidArgument(format!(
                "symmetric polynomials in {} and {} variables",
                self.nvars, other.nvars
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_space(other)?;
        let mut out = self.clone();
        for (l, c) in &other.coeffs {
            out.add_term(l.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_space(other)?;
        let mut out = self.clone();
        for (l, c) in &other.coeffs {
            out.add_term(l.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_space(other)?;
        let mut out = Self::zero(self.nvars);
        for (a, c) in &self.coeffs {
            for (b, d) in &other.coeffs {
                let cd = c.clone() * d;
                for (k, n) in product_counts(self.nvars, a, b).iter() {
                    out.add_term(k.clone(), cd.clone() * &count_to_scalar::<S>(*n));
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        SymPoly { nvars: self.nvars, coeffs: self.coeffs.iter().map(|(l, d)| (l.clone(), d.clone() * c)).collect() }
    }

    pub fn neg(&self) -> Self {
        SymPoly { nvars: self.nvars, coeffs: self.coeffs.iter().map(|(l, d)| (l.clone(), -d.clone())).collect() }
    }

    /// Value at a point with `nvars` coordinates.
    pub fn eval(&self, point: &[S]) -> Result<S> {
        if point.len() != self.nvars {
            return Err(Error::InvalidArgument(format!(
                "point has {} coordinates, polynomial has {} variables",
                point.len(),
                self.nvars
            )));
        }
        let deg = self.degree().unwrap_or(0);
        let pows: Vec<Vec<S>> = point
            .iter()
            .map(|x| {
                let mut v = vec![S::one()];
                for _ in 0..deg {
                    let next = v.last().unwrap().clone() * x;
                    v.push(next);
                }
                v
            })
            .collect();
        let mut total = S::zero();
        for (l, c) in &self.coeffs {
            let mut m = S::zero();
            for alpha in orbit(&l.padded(self.nvars)) {
                let mut t = S::one();
                for (i, &e) in alpha.iter().enumerate() {
                    if e > 0 {
                        t = t * &pows[i][e];
                    }
                }
                m = m + &t;
            }
            total = total + &(m * c);
        }
        Ok(total)
    }

    /// `f(x_0 + s, ..., x_{n-1} + s)`.
    pub fn shift_vars(&self, s: &S) -> Self {
        if s.is_zero() {
            return self.clone();
        }
        let deg = self.degree().unwrap_or(0);
        let mut spow = vec![S::one()];
        for _ in 0..deg {
            let next = spow.last().unwrap().clone() * s;
            spow.push(next);
        }
        let mut out = Self::zero(self.nvars);
        for (l, c) in &self.coeffs {
            for (k, n) in shift_counts(self.nvars, l).iter() {
                let w = c.clone() * &spow[l.size() - k.size()] * &count_to_scalar::<S>(*n);
                out.add_term(k.clone(), w);
            }
        }
        out
    }

    /// The same coefficients read in `nvars` variables (at least as many).
    pub fn with_nvars(&self, nvars: usize) -> Result<Self> {
        if self.coeffs.keys().any(|l| l.length() > nvars) {
            return Err(Error::InvalidArgument(format!("cannot read in {nvars} variables")));
        }
        Ok(SymPoly { nvars, coeffs: self.coeffs.clone() })
    }

    /// Extension by one variable with pivot `p`: the unique polynomial in
    /// `nvars + 1` variables whose shift by `p` agrees with the shift of `f`.
    pub fn ext(&self, p: &S) -> Self {
        let g = self.shift_vars(p);
        let g = SymPoly { nvars: self.nvars + 1, coeffs: g.coeffs };
        g.shift_vars(&-p.clone())
    }

    /// Substitutes `p` for the last variable.
    pub fn restrict(&self, p: &S) -> Result<Self> {
        if self.nvars == 0 {
            return Err(Error::InvalidArgument("cannot restrict a polynomial in no variables".into()));
        }
        let deg = self.degree().unwrap_or(0);
        let mut ppow = vec![S::one()];
        for _ in 0..deg {
            let next = ppow.last().unwrap().clone() * p;
            ppow.push(next);
        }
        let mut out = Self::zero(self.nvars - 1);
        for (l, c) in &self.coeffs {
            let v = l.padded(self.nvars);
            for e in distinct_values(&v) {
                let rest = to_partition(remove_one(&v, e));
                out.add_term(rest, c.clone() * &ppow[e]);
            }
        }
        Ok(out)
    }

    /// Coefficient of `x_0^m`, a symmetric polynomial in the other variables.
    pub fn first_variable_coefficient(&self, m: usize) -> Result<Self> {
        if self.nvars == 0 {
            return Err(Error::InvalidArgument("no variables".into()));
        }
        let mut out = Self::zero(self.nvars - 1);
        for (l, c) in &self.coeffs {
            let v = l.padded(self.nvars);
            if v.contains(&m) {
                out.add_term(to_partition(remove_one(&v, m)), c.clone());
            }
        }
        Ok(out)
    }

    /// Homogeneous component of top degree.
    pub fn top_component(&self) -> Result<Self> {
        let d = self.degree().ok_or(Error::ZeroPolynomial)?;
        Ok(SymPoly {
            nvars: self.nvars,
            coeffs: self.coeffs.iter().filter(|(l, _)| l.size() == d).map(|(l, c)| (l.clone(), c.clone())).collect(),
        })
    }

    /// `prod_i (x_i - p) = sum_k (-p)^{n-k} m_{1^k}`.
    pub fn shifted_product(nvars: usize, p: &S) -> Self {
        let mut out = Self::zero(nvars);
        let negp = -p.clone();
        for k in 0..=nvars {
            let c = negp.pow((nvars - k) as u32);
            out.add_term(to_partition(vec![1; k]), c);
        }
        out
    }

    /// Adds the symmetric part of `weight * prod_i g_i(x_i)`, i.e. its
    /// coefficients on weakly decreasing exponent vectors. Summing this over
    /// all arrangements of a symmetric product yields the product itself.
    pub fn add_sorted_product(&mut self, factors: &[Vec<S>], weight: &S) {
        assert_eq!(factors.len(), self.nvars, "one factor per variable");
        fn rec<S: Scalar>(factors: &[Vec<S>], k: usize, cur: &mut Vec<usize>, acc: S, out: &mut SymPoly<S>) {
            if k == factors.len() {
                out.add_term(to_partition(cur.clone()), acc);
                return;
            }
            let deg = factors[k].len().saturating_sub(1);
            let hi = if k == 0 { deg } else { deg.min(cur[k - 1]) };
            for e in 0..=hi {
                let c = &factors[k][e];
                if c.is_zero() || factors[k].is_empty() {
                    continue;
                }
                cur.push(e);
                rec(factors, k + 1, cur, acc.clone() * c, out);
                cur.pop();
            }
        }
        if factors.iter().any(|f| f.is_empty()) {
            return;
        }
        rec(factors, 0, &mut Vec::new(), weight.clone(), self);
    }

    pub fn map<T: Scalar>(&self, mut f: impl FnMut(&S) -> Result<T>) -> Result<SymPoly<T>> {
        let mut out = SymPoly::zero(self.nvars);
        for (l, c) in &self.coeffs {
            out.add_term(l.clone(), f(c)?);
        }
        Ok(out)
    }

    pub fn canonical(&self) -> Self {
        SymPoly { nvars: self.nvars, coeffs: self.coeffs.iter().map(|(l, c)| (l.clone(), c.canonical())).collect() }
    }

    /// Text form: terms joined by ` + ` in partition order, each `(c)*m[lambda]`,
    /// with the coefficient bare when it is a single name or unsigned number
    /// and omitted when it is one; the constant term has no `m[]`.
    pub fn to_text(&self, descending: bool) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        let mut parts: Vec<String> = Vec::with_capacity(self.coeffs.len());
        for (l, c) in &self.coeffs {
            let ctext = c.to_string();
            let simple = is_simple_text(&ctext);
            let cpart = if simple { ctext } else { format!("({ctext})") };
            if l.is_empty() {
                parts.push(cpart);
            } else if c.is_one() {
                parts.push(format!("m{l}"));
            } else {
                parts.push(format!("{cpart}*m{l}"));
            }
        }
        if descending {
            parts.reverse();
        }
        parts.join(" + ")
    }
}

fn is_simple_text(s: &str) -> bool {
    !s.is_empty()
        && (s.chars().all(|c| c.is_ascii_digit())
            || (s.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')))
}

/// Parses the text form of [`SymPoly::to_text`] with a scalar parser.
pub fn parse_sympoly<S: Scalar>(
    nvars: usize,
    text: &str,
    parse_scalar: impl Fn(&str) -> Result<S>,
) -> Result<SymPoly<S>> {
    let text = text.trim();
    let mut out = SymPoly::zero(nvars);
    if text == "0" {
        return Ok(out);
    }
    for piece in split_top_level(text)? {
        let piece = piece.trim();
        let (coef, lambda) = match piece.rfind("m[") {
            Some(pos) if piece.ends_with(']') && (pos == 0 || piece[..pos].ends_with('*')) => {
                let lambda: Partition = piece[pos + 1..].parse()?;
                let coef = if pos == 0 { None } else { Some(&piece[..pos - 1]) };
                (coef, lambda)
            }
            _ => (Some(piece), Partition::empty()),
        };
        let c = match coef {
            None => S::one(),
            Some(t) => parse_scalar(t)?,
        };
        out.check_len(&lambda)?;
        out.add_term(lambda, c);
    }
    Ok(out)
}

fn split_top_level(s: &str) -> Result<Vec<&str>> {
    let bytes = s.as_bytes();
    let mut depth: i64 = 0;
    let mut out = Vec::new();
    let mut start = 0;
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b'(' | b'[' => depth += 1,
            b')' | b']' => depth -= 1,
            b' ' if depth == 0 && s[i..].starts_with(" + ") => {
                out.push(&s[start..i]);
                i += 3;
                start = i;
                continue;
            }
            _ => {}
        }
        if depth < 0 {
            return Err(Error::Parse(format!("unbalanced brackets in `{s}`")));
        }
        i += 1;
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced brackets in `{s}`")));
    }
    out.push(&s[start..]);
    Ok(out)
}

impl<S: Scalar> fmt::Display for SymPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text(false))
    }
}

macro_rules! sym_binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl<'a, 'b, S: Scalar> std::ops::$tr<&'b SymPoly<S>> for &'a SymPoly<S> {
            type Output = SymPoly<S>;
            /// Panics when the variable counts differ.
            fn $m(self, rhs: &'b SymPoly<S>) -> SymPoly<S> {
                self.$checked(rhs).expect("same number of variables")
            }
        }
    };
}
sym_binop!(Add, add, checked_add);
sym_binop!(Sub, sub, checked_sub);
sym_binop!(Mul, mul, checked_mul);

/// Coefficients (ascending) of `prod_k (x - roots[k])`.
pub fn poly_from_roots<S: Scalar>(roots: &[S]) -> Vec<S> {
    let mut c = vec![S::one()];
    for r in roots {
        let mut next = vec![S::zero(); c.len() + 1];
        for (k, a) in c.iter().enumerate() {
            next[k + 1] = next[k + 1].clone() + a;
            next[k] = next[k].clone() - &(a.clone() * r);
        }
        c = next;
    }
    c
}
