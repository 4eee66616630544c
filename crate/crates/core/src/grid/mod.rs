//! Grids `Omega(i, j)` for rows `0..=n` and columns `j >= 0`.

mod spec;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use serde::Serialize;

pub use spec::GridSpec;

use crate::error::{Error, Result};
use crate::exactfield::{universal_name, Rational, Scalar};
use crate::partition::Partition;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum IIIVariant {
    A,
    B,
    C,
}

impl IIIVariant {
    /// Signs `(eps, eps')` in `alpha + eps^j eps'^i (alpha' + beta j + beta' i)`.
    pub fn signs(self) -> (i64, i64) {
        match self {
            IIIVariant::A => (-1, 1),
            IIIVariant::B => (1, -1),
            IIIVariant::C => (-1, -1),
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            IIIVariant::A => "IIIa",
            IIIVariant::B => "IIIb",
            IIIVariant::C => "IIIc",
        }
    }
}

/// Parametrized grid families plus the universal and explicit grids.
#[derive(Clone, Debug, PartialEq)]
pub enum GridFamily<S> {
    /// `Omega(i, j) = gamma_j`.
    E1 { gamma: Vec<S> },
    /// `Omega(i, j) = gamma_{j - i}`, with `gamma[k]` holding `gamma_{start + k}`.
    E2 { gamma: Vec<S>, start: i64 },
    /// `a + b q^j t^i + c q^-j t^-i`.
    I { a: S, b: S, c: S, q: S, t: S },
    /// `alpha + (beta j + beta' i) + gamma (beta j + beta' i)^2`.
    II { alpha: S, beta: S, beta_p: S, gamma: S },
    /// `alpha + eps^j eps'^i (alpha' + beta j + beta' i)`.
    III { variant: IIIVariant, alpha: S, alpha_p: S, beta: S, beta_p: S },
    /// Two rows: `alpha + beta q^j` and `alpha + beta' q^-j`.
    IV { alpha: S, beta: S, beta_p: S, q: S },
    /// Independent parameters `u_ij`.
    Universal,
    /// A finite table of values, rows `i`, columns `j`.
    Explicit { table: Vec<Vec<S>> },
}

fn sign_pow<S: Scalar>(eps: i64, k: usize) -> S {
    if eps < 0 && k % 2 == 1 {
        -S::one()
    } else {
        S::one()
    }
}

fn from_usize<S: Scalar>(k: usize) -> S {
    S::from_i64(k as i64)
}

impl<S: Scalar> GridFamily<S> {
    pub fn tag(&self) -> &'static str {
        match self {
            GridFamily::E1 { .. } => "E1",
            GridFamily::E2 { .. } => "E2",
            GridFamily::I { .. } => "I",
            GridFamily::II { .. } => "II",
            GridFamily::III { variant, .. } => variant.tag(),
            GridFamily::IV { .. } => "IV",
            GridFamily::Universal => "Universal",
            GridFamily::Explicit { .. } => "Explicit",
        }
    }

    /// Named parameters in a fixed order.
    pub fn params(&self) -> Vec<(&'static str, S)> {
        match self {
            GridFamily::I { a, b, c, q, t } => {
                vec![("a", a.clone()), ("b", b.clone()), ("c", c.clone()), ("q", q.clone()), ("t", t.clone())]
            }
            GridFamily::II { alpha, beta, beta_p, gamma } => vec![
                ("alpha", alpha.clone()),
                ("beta", beta.clone()),
                ("beta'", beta_p.clone()),
                ("gamma", gamma.clone()),
            ],
            GridFamily::III { alpha, alpha_p, beta, beta_p, .. } => vec![
                ("alpha", alpha.clone()),
                ("alpha'", alpha_p.clone()),
                ("beta", beta.clone()),
                ("beta'", beta_p.clone()),
            ],
            GridFamily::IV { alpha, beta, beta_p, q } => {
                vec![("alpha", alpha.clone()), ("beta", beta.clone()), ("beta'", beta_p.clone()), ("q", q.clone())]
            }
            _ => Vec::new(),
        }
    }

    /// `Omega(i, j)` straight from the family formula.
    pub fn value(&self, i: usize, j: usize) -> Result<S> {
        let oob = || Error::IndexOutOfRange { i, j };
        Ok(match self {
            GridFamily::E1 { gamma } => gamma.get(j).cloned().ok_or_else(oob)?,
            GridFamily::E2 { gamma, start } => {
                let k = j as i64 - i as i64 - start;
                if k < 0 {
                    return Err(oob());
                }
                gamma.get(k as usize).cloned().ok_or_else(oob)?
            }
            GridFamily::I { a, b, c, q, t } => {
                let qj = q.pow(j as u32);
                let ti = t.pow(i as u32);
                let up = qj.clone() * &ti;
                let down = up.inv()?;
                a.clone() + &(b.clone() * &up) + &(c.clone() * &down)
            }
            GridFamily::II { alpha, beta, beta_p, gamma } => {
                let d = beta.clone() * &from_usize::<S>(j) + &(beta_p.clone() * &from_usize::<S>(i));
                alpha.clone() + &d + &(gamma.clone() * &d * &d)
            }
            GridFamily::III { variant, alpha, alpha_p, beta, beta_p } => {
                let (e, f) = variant.signs();
                let s = sign_pow::<S>(e, j) * &sign_pow::<S>(f, i);
                let lin =
                    alpha_p.clone() + &(beta.clone() * &from_usize::<S>(j)) + &(beta_p.clone() * &from_usize::<S>(i));
                alpha.clone() + &(s * &lin)
            }
            GridFamily::IV { alpha, beta, beta_p, q } => match i {
                0 => alpha.clone() + &(beta.clone() * &q.pow(j as u32)),
                1 => alpha.clone() + &(beta_p.clone() * &q.powi(-(j as i64))?),
                _ => return Err(oob()),
            },
            GridFamily::Universal => S::param(&universal_name(i, j))?,
            GridFamily::Explicit { table } => table.get(i).and_then(|r| r.get(j)).cloned().ok_or_else(oob)?,
        })
    }

    /// The family describing `Omega(i, j + k)`, when it is closed under that shift.
    fn shifted_columns(&self, k: usize) -> Option<GridFamily<S>> {
        if k == 0 {
            return Some(self.clone());
        }
        Some(match self {
            GridFamily::E1 { gamma } => {
                GridFamily::E1 { gamma: gamma.get(k..).map(|g| g.to_vec()).unwrap_or_default() }
            }
            GridFamily::E2 { gamma, start } => GridFamily::E2 { gamma: gamma.clone(), start: start - k as i64 },
            GridFamily::I { a, b, c, q, t } => {
                let qk = q.pow(k as u32);
                GridFamily::I {
                    a: a.clone(),
                    b: b.clone() * &qk,
                    c: c.clone() * &qk.inv().ok()?,
                    q: q.clone(),
                    t: t.clone(),
                }
            }
            GridFamily::II { alpha, beta, beta_p, gamma } => {
                let d = beta.clone() * &from_usize::<S>(k);
                ii_reparam(alpha, beta, beta_p, gamma, d)?
            }
            GridFamily::III { variant, alpha, alpha_p, beta, beta_p } => {
                let (e, _) = variant.signs();
                let s = sign_pow::<S>(e, k);
                GridFamily::III {
                    variant: *variant,
                    alpha: alpha.clone(),
                    alpha_p: s.clone() * &(alpha_p.clone() + &(beta.clone() * &from_usize::<S>(k))),
                    beta: s.clone() * beta,
                    beta_p: s * beta_p,
                }
            }
            GridFamily::IV { alpha, beta, beta_p, q } => {
                let qk = q.pow(k as u32);
                GridFamily::IV {
                    alpha: alpha.clone(),
                    beta: beta.clone() * &qk,
                    beta_p: beta_p.clone() * &qk.inv().ok()?,
                    q: q.clone(),
                }
            }
            GridFamily::Universal | GridFamily::Explicit { .. } => return None,
        })
    }

    /// The family describing `Omega(i + l, j)`, when it is closed under that shift.
    fn shifted_rows(&self, l: usize) -> Option<GridFamily<S>> {
        if l == 0 {
            return Some(self.clone());
        }
        Some(match self {
            GridFamily::E1 { gamma } => GridFamily::E1 { gamma: gamma.clone() },
            GridFamily::E2 { gamma, start } => GridFamily::E2 { gamma: gamma.clone(), start: start + l as i64 },
            GridFamily::I { a, b, c, q, t } => {
                let tl = t.pow(l as u32);
                GridFamily::I {
                    a: a.clone(),
                    b: b.clone() * &tl,
                    c: c.clone() * &tl.inv().ok()?,
                    q: q.clone(),
                    t: t.clone(),
                }
            }
            GridFamily::II { alpha, beta, beta_p, gamma } => {
                let d = beta_p.clone() * &from_usize::<S>(l);
                ii_reparam(alpha, beta, beta_p, gamma, d)?
            }
            GridFamily::III { variant, alpha, alpha_p, beta, beta_p } => {
                let (_, f) = variant.signs();
                let s = sign_pow::<S>(f, l);
                GridFamily::III {
                    variant: *variant,
                    alpha: alpha.clone(),
                    alpha_p: s.clone() * &(alpha_p.clone() + &(beta_p.clone() * &from_usize::<S>(l))),
                    beta: s.clone() * beta,
                    beta_p: s * beta_p,
                }
            }
            _ => return None,
        })
    }

    /// Largest supported row index, if the family limits it.
    fn max_rows(&self) -> Option<usize> {
        match self {
            GridFamily::IV { .. } => Some(1),
            GridFamily::Explicit { table } => Some(table.len().saturating_sub(1)),
            _ => None,
        }
    }
}

/// Family II translated by `d` inside the square: `alpha + d + gamma d^2`,
/// slopes scaled by `1 + 2 gamma d`, curvature divided by its square.
fn ii_reparam<S: Scalar>(alpha: &S, beta: &S, beta_p: &S, gamma: &S, d: S) -> Option<GridFamily<S>> {
    let s = S::one() + &(S::from_i64(2) * gamma * &d);
    let s_inv = s.inv().ok()?;
    Some(GridFamily::II {
        alpha: alpha.clone() + &d + &(gamma.clone() * &d * &d),
        beta: beta.clone() * &s,
        beta_p: beta_p.clone() * &s,
        gamma: gamma.clone() * &s_inv * &s_inv,
    })
}

/// A grid with rows `0..=n`. Cheap to clone; values are memoized.
#[derive(Clone)]
pub struct Grid<S: Scalar> {
    family: Arc<GridFamily<S>>,
    n: usize,
    row_off: usize,
    col_off: usize,
    cache: Arc<RwLock<HashMap<(usize, usize), S>>>,
}

impl<S: Scalar> fmt::Debug for Grid<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Grid")
            .field("family", &self.family.tag())
            .field("n", &self.n)
            .field("row_off", &self.row_off)
            .field("col_off", &self.col_off)
            .finish()
    }
}

impl<S: Scalar> Grid<S> {
    pub fn new(family: GridFamily<S>, n: usize) -> Result<Self> {
        if let Some(m) = family.max_rows() {
            if n > m {
                return Err(Error::InvalidArgument(format!("family {} supports at most {} rows", family.tag(), m + 1)));
            }
        }
        Ok(Self::raw(Arc::new(family), n, 0, 0))
    }

    fn raw(family: Arc<GridFamily<S>>, n: usize, row_off: usize, col_off: usize) -> Self {
        Grid { family, n, row_off, col_off, cache: Arc::new(RwLock::new(HashMap::new())) }
    }

    pub fn universal(n: usize) -> Self {
        Self::raw(Arc::new(GridFamily::Universal), n, 0, 0)
    }

    /// Explicit grid from a rectangular table (rows `0..=n`).
    pub fn explicit(table: Vec<Vec<S>>) -> Result<Self> {
        if table.is_empty() {
            return Err(Error::InvalidArgument("empty table".into()));
        }
        let n = table.len() - 1;
        Self::new(GridFamily::Explicit { table }, n)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn family(&self) -> &GridFamily<S> {
        &self.family
    }

    /// Whether offsets are applied on top of the family formula.
    pub fn offsets(&self) -> (usize, usize) {
        (self.row_off, self.col_off)
    }

    pub fn value(&self, i: usize, j: usize) -> Result<S> {
        if i > self.n {
            return Err(Error::IndexOutOfRange { i, j });
        }
        if let Some(v) = self.cache.read().unwrap().get(&(i, j)) {
            return Ok(v.clone());
        }
        let v = self.family.value(i + self.row_off, j + self.col_off).map_err(|e| match e {
            Error::IndexOutOfRange { .. } => Error::IndexOutOfRange { i, j },
            other => other,
        })?;
        self.cache.write().unwrap().insert((i, j), v.clone());
        Ok(v)
    }

    /// The point `(Omega(0, lambda_0), ..., Omega(n, lambda_n))`.
    pub fn knot(&self, lambda: &Partition) -> Result<Vec<S>> {
        if lambda.length() > self.n + 1 {
            return Err(Error::InvalidArgument(format!("{lambda} has more than {} parts", self.n + 1)));
        }
        (0..=self.n).map(|i| self.value(i, lambda.part(i))).collect()
    }

    /// `Omega(i, j + k)`.
    pub fn shift_j(&self, k: usize) -> Self {
        if self.row_off == 0 && self.col_off == 0 {
            if let Some(f) = self.family.shifted_columns(k) {
                return Self::raw(Arc::new(f), self.n, 0, 0);
            }
        }
        Self::raw(self.family.clone(), self.n, self.row_off, self.col_off + k)
    }

    /// Rows `0..=m` only.
    pub fn restrict_rows(&self, m: usize) -> Result<Self> {
        if m > self.n {
            return Err(Error::InvalidArgument(format!("cannot keep {} rows of {}", m + 1, self.n + 1)));
        }
        Ok(Grid {
            family: self.family.clone(),
            n: m,
            row_off: self.row_off,
            col_off: self.col_off,
            cache: self.cache.clone(),
        })
    }

    /// `Omega(i + l, j)` on rows `0..=n-l`.
    pub fn shift_rows(&self, l: usize) -> Result<Self> {
        if l > self.n {
            return Err(Error::InvalidArgument(format!("cannot drop {l} of {} rows", self.n + 1)));
        }
        if self.row_off == 0 && self.col_off == 0 {
            if let Some(f) = self.family.shifted_rows(l) {
                return Ok(Self::raw(Arc::new(f), self.n - l, 0, 0));
            }
        }
        Ok(Self::raw(self.family.clone(), self.n - l, self.row_off + l, self.col_off))
    }

    /// Values on rows `0..=n`, columns `0..=jmax`.
    pub fn window(&self, jmax: usize) -> Result<Window<S>> {
        let values = (0..=self.n)
            .map(|i| (0..=jmax).map(|j| self.value(i, j)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(Window { values })
    }

    /// Checks `Omega(i, j) != Omega(i', j')` for `i >= i'`, `j < j'` on
    /// columns `0..=jcut`, plus the closed-form parameter conditions of the
    /// family. Conditions on unbounded exponents are decided exactly when the
    /// parameters are rational and checked up to `jcut` otherwise.
    pub fn check_nondegenerate(&self, jcut: usize) -> NondegeneracyReport {
        let mut report = NondegeneracyReport::default();
        match self.window(jcut) {
            Ok(w) => {
                if let Some(v) = w.first_degeneracy() {
                    report.window_violation = Some(v);
                    report.violations.push(format!("Omega({},{}) = Omega({},{})", v.0, v.2, v.1, v.3));
                }
            }
            Err(e) => report.violations.push(format!("window unavailable: {e}")),
        }
        if self.row_off == 0 && self.col_off == 0 {
            report.violations.extend(family_conditions(&self.family, self.n, jcut));
        }
        report
    }

    /// Error form of [`Grid::check_nondegenerate`].
    pub fn require_nondegenerate(&self, jcut: usize) -> Result<()> {
        let r = self.check_nondegenerate(jcut);
        if r.violations.is_empty() {
            Ok(())
        } else {
            Err(Error::DegenerateGrid(r.violations.join("; ")))
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct NondegeneracyReport {
    /// First `(i, i', j, j')` with `i >= i'`, `j < j'` and equal values.
    pub window_violation: Option<(usize, usize, usize, usize)>,
    pub violations: Vec<String>,
}

impl NondegeneracyReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Finite rectangle of grid values, rows `0..=n`, columns `0..=jmax`.
#[derive(Clone, Debug, PartialEq)]
pub struct Window<S> {
    pub values: Vec<Vec<S>>,
}

impl<S: Scalar> Window<S> {
    pub fn new(values: Vec<Vec<S>>) -> Result<Self> {
        let w = values.first().map(|r| r.len()).unwrap_or(0);
        if w == 0 || values.iter().any(|r| r.len() != w) {
            return Err(Error::InvalidArgument("window must be a non-empty rectangle".into()));
        }
        Ok(Window { values })
    }

    pub fn n(&self) -> usize {
        self.values.len() - 1
    }

    pub fn jmax(&self) -> usize {
        self.values[0].len() - 1
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.values[i][j]
    }

    /// First `(i, i', j, j')` with `i >= i'`, `j < j'`, equal values.
    pub fn first_degeneracy(&self) -> Option<(usize, usize, usize, usize)> {
        let n = self.n();
        let jm = self.jmax();
        for i in 0..=n {
            for ip in 0..=i {
                for j in 0..=jm {
                    for jp in j + 1..=jm {
                        if self.values[i][j] == self.values[ip][jp] {
                            return Some((i, ip, j, jp));
                        }
                    }
                }
            }
        }
        None
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Window<T> {
        Window { values: self.values.iter().map(|r| r.iter().map(&f).collect()).collect() }
    }

    pub fn to_grid(&self) -> Result<Grid<S>> {
        Grid::explicit(self.values.clone())
    }
}

/// Smallest `k >= 1` with `q^k = x`, decided exactly through heights.
pub fn rational_power_index(x: &Rational, q: &Rational) -> Option<u32> {
    if q.is_zero() {
        return None;
    }
    let one = Rational::one();
    if *q == one {
        return (*x == one).then_some(1);
    }
    if *q == -one.clone() {
        return if *x == -one.clone() {
            Some(1)
        } else if *x == one {
            Some(2)
        } else {
            None
        };
    }
    let limit = x.height_bits() + 1;
    let mut p = q.clone();
    let mut k = 1;
    loop {
        if p == *x {
            return Some(k);
        }
        if p.height_bits() > limit {
            return None;
        }
        p = p * q;
        k += 1;
    }
}

fn family_conditions<S: Scalar>(family: &GridFamily<S>, n: usize, jcut: usize) -> Vec<String> {
    let mut out = Vec::new();
    let rational = |v: &S| v.to_rational();
    // `q^k = x` for some k >= 1: exact for rationals, bounded otherwise
    let power_hit = |x: &S, q: &S| -> Option<u32> {
        match (rational(x), rational(q)) {
            (Some(xr), Some(qr)) => rational_power_index(&xr, &qr),
            _ => {
                let mut p = q.clone();
                for k in 1..=jcut.max(1) as u32 {
                    if p == *x {
                        return Some(k);
                    }
                    p = p * q;
                }
                None
            }
        }
    };
    match family {
        GridFamily::I { b, c, q, t, .. } => {
            if q.is_zero() || t.is_zero() {
                out.push("q and t must be nonzero".to_string());
                return out;
            }
            for l in 0..=n {
                if let Some(k) = power_hit(&t.pow(l as u32), q) {
                    out.push(format!("q^{k} = t^{l}"));
                }
            }
            for l in 0..=2 * n {
                let btl = b.clone() * &t.pow(l as u32);
                if btl.is_zero() {
                    if c.is_zero() {
                        out.push("b = c = 0".to_string());
                    }
                    continue;
                }
                if let Ok(x) = c.try_div(&btl) {
                    if let Some(k) = power_hit(&x, q) {
                        out.push(format!("b q^{k} t^{l} = c"));
                    }
                }
            }
        }
        GridFamily::II { beta, beta_p, gamma, .. } => {
            for l in 0..=n {
                let lb = S::from_i64(l as i64) * beta_p;
                // k beta = l beta' for some k >= 1
                if beta.is_zero() {
                    if lb.is_zero() {
                        out.push(format!("k*beta = {l}*beta'"));
                    }
                } else if let Some(k) = positive_integer(&lb.try_div(beta).expect("beta nonzero"), jcut) {
                    out.push(format!("{k}*beta = {l}*beta'"));
                }
            }
            if !gamma.is_zero() && !beta.is_zero() {
                let target = -(gamma.inv().expect("gamma nonzero"));
                for l in 0..=2 * n {
                    let rest = target.clone() - &(S::from_i64(l as i64) * beta_p);
                    if let Some(k) = positive_integer(&rest.try_div(beta).expect("beta nonzero"), jcut) {
                        out.push(format!("gamma*({k}*beta + {l}*beta') = -1"));
                    }
                }
            }
        }
        GridFamily::IV { beta, beta_p, q, .. } => {
            if beta.is_zero() || beta_p.is_zero() {
                out.push("beta and beta' must be nonzero".to_string());
                return out;
            }
            if let Some(k) = power_hit(&S::one(), q) {
                out.push(format!("q^{k} = 1"));
            }
            if let Some(k) = power_hit(&beta_p.try_div(beta).expect("beta nonzero"), q) {
                out.push(format!("q^{k} = beta'/beta"));
            }
        }
        _ => {}
    }
    out
}

/// `k` when `x = k` is a positive integer (exact for rationals, bounded otherwise).
fn positive_integer<S: Scalar>(x: &S, jcut: usize) -> Option<u64> {
    match x.to_rational() {
        Some(r) => {
            if r.is_integer() && !r.is_negative() && !r.is_zero() {
                r.to_i64().map(|k| k as u64)
            } else {
                None
            }
        }
        None => (1..=jcut.max(1) as i64).find(|&k| *x == S::from_i64(k)).map(|k| k as u64),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn family_i() -> GridFamily<Rational> {
        GridFamily::I { a: r(1, 1), b: r(2, 1), c: r(3, 1), q: r(2, 3), t: r(5, 7) }
    }

    #[test]
    fn shifts_agree_with_parent() {
        let fams = vec![
            family_i(),
            GridFamily::II { alpha: r(1, 1), beta: r(2, 1), beta_p: r(3, 1), gamma: r(1, 5) },
            GridFamily::III {
                variant: IIIVariant::A,
                alpha: r(1, 1),
                alpha_p: r(2, 1),
                beta: r(3, 1),
                beta_p: r(5, 1),
            },
            GridFamily::III {
                variant: IIIVariant::B,
                alpha: r(1, 1),
                alpha_p: r(2, 1),
                beta: r(3, 1),
                beta_p: r(5, 1),
            },
            GridFamily::III {
                variant: IIIVariant::C,
                alpha: r(1, 1),
                alpha_p: r(2, 1),
                beta: r(3, 1),
                beta_p: r(5, 1),
            },
            GridFamily::E2 { gamma: (0..20).map(|k| r(k * k, 1)).collect(), start: -3 },
        ];
        for f in fams {
            let g = Grid::new(f.clone(), 3).unwrap();
            for k in 0..3 {
                let s = g.shift_j(k);
                for l in 0..=2 {
                    let sr = s.shift_rows(l).unwrap();
                    for i in 0..=3 - l {
                        for j in 0..4 {
                            assert_eq!(sr.value(i, j).unwrap(), g.value(i + l, j + k).unwrap(), "{} {k} {l}", f.tag());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn family_iv_is_two_rows() {
        let f = GridFamily::IV { alpha: r(0, 1), beta: r(1, 1), beta_p: r(2, 1), q: r(3, 1) };
        assert!(Grid::new(f.clone(), 2).is_err());
        let g = Grid::new(f, 1).unwrap();
        assert_eq!(g.value(1, 2).unwrap(), r(2, 9));
        assert!(matches!(g.value(2, 0), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn nondegeneracy_reports_first_violation() {
        let f = GridFamily::Explicit { table: vec![vec![r(0, 1), r(1, 1), r(2, 1)], vec![r(2, 1), r(8, 1), r(9, 1)]] };
        let g = Grid::new(f, 1).unwrap();
        let rep = g.check_nondegenerate(2);
        assert_eq!(rep.window_violation, Some((1, 0, 0, 2)));
        assert!(Grid::new(family_i(), 2).unwrap().check_nondegenerate(6).is_ok());
    }

    #[test]
    fn family_i_power_conditions() {
        // q = 1/2, t = 1/4 gives q^2 = t
        let f = GridFamily::I { a: r(0, 1), b: r(1, 1), c: r(1, 1), q: r(1, 2), t: r(1, 4) };
        let rep = Grid::new(f, 1).unwrap().check_nondegenerate(0);
        assert!(rep.violations.iter().any(|v| v == "q^2 = t^1"), "{rep:?}");
        assert_eq!(rational_power_index(&r(1, 8), &r(1, 2)), Some(3));
        assert_eq!(rational_power_index(&r(1, 6), &r(1, 2)), None);
        assert_eq!(rational_power_index(&r(1, 1), &r(-1, 1)), Some(2));
    }

    #[test]
    fn family_ii_conditions() {
        // 2*beta = 1*beta' with n = 1
        let f = GridFamily::II { alpha: r(0, 1), beta: r(1, 1), beta_p: r(2, 1), gamma: r(0, 1) };
        let rep = Grid::new(f, 1).unwrap().check_nondegenerate(0);
        assert!(!rep.is_ok());
        let ok = GridFamily::II { alpha: r(0, 1), beta: r(2, 1), beta_p: r(3, 1), gamma: r(1, 7) };
        assert!(Grid::new(ok, 1).unwrap().check_nondegenerate(6).is_ok());
    }
}
