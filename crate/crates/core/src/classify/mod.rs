//! Classification of perfect grids from a finite window of values.
//!
//! Elementary patterns are tested first, then row 0 is split by the
//! geometric / quadratic / alternating trichotomy and the remaining rows are
//! fitted. Every returned classification regenerates the input window exactly.

mod extend;
mod relations;

use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::json;

pub use extend::{check_recurrences, extend, PartialWindow};
pub use relations::{f, f1, g0, g1, g2, g3};

use crate::error::{Error, Result};
use crate::exactfield::{QuadCtx, QuadExt, Scalar, SqrtField};
use crate::grid::{Grid, GridFamily, IIIVariant, Window};

/// The three mutually exclusive shapes of `(w0, w1, w2, w3)` with `w1 != w2`.
#[derive(Clone, Debug, PartialEq)]
pub enum TupleClass<K: SqrtField> {
    /// `w_j = a + b q^j + c q^-j`, `q != 0, +-1`.
    Geometric { a: QuadExt<K>, b: QuadExt<K>, c: QuadExt<K>, q: QuadExt<K> },
    /// `w_j = alpha + beta j + gamma beta^2 j^2`.
    Quadratic { alpha: K, beta: K, gamma: K },
    /// `w_j = alpha + (-1)^j (alpha' + beta j)`.
    Alternating { alpha: K, alpha_p: K, beta: K },
}

fn base<K: SqrtField>(k: &K) -> QuadExt<K> {
    QuadExt::base(k.clone())
}

/// Gaussian elimination over any field.
fn solve_linear<S: Scalar>(mut m: Vec<Vec<S>>, mut rhs: Vec<S>) -> Result<Vec<S>> {
    let n = rhs.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero()).ok_or(Error::DivisionByZero)?;
        m.swap(col, piv);
        rhs.swap(col, piv);
        let inv = m[col][col].inv()?;
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let factor = m[r][col].clone() * &inv;
                for c in col..n {
                    let v = m[r][c].clone() - &(factor.clone() * &m[col][c]);
                    m[r][c] = v;
                }
                rhs[r] = rhs[r].clone() - &(factor * &rhs[col]);
            }
        }
    }
    (0..n).map(|i| rhs[i].try_div(&m[i][i])).collect()
}

/// Splits a 4-tuple into the geometric, quadratic or alternating case.
pub fn classify_tuple<K: SqrtField>(w: [&K; 4]) -> Result<TupleClass<K>> {
    let [w0, w1, w2, w3] = w;
    if w1 == w2 {
        return Err(Error::Hypothesis("w1 = w2".into()));
    }
    let two = K::from_i64(2);
    // (E - 1)(E^2 - sE + 1) w = 0
    let s = (w3.clone() - w0).try_div(&(w2.clone() - w1))? - &K::one();
    if s == two {
        let p1 = w1.clone() - w0;
        let p2 = w2.clone() - w0;
        let gb2 = (p2 - &(two.clone() * &p1)).try_div(&two)?;
        let beta = p1 - &gb2;
        let gamma = gb2.try_div(&(beta.clone() * &beta))?;
        return Ok(TupleClass::Quadratic { alpha: w0.clone(), beta, gamma });
    }
    if s == -two.clone() {
        let beta = (w2.clone() - w0).try_div(&two)?;
        let alpha = (w0.clone() + w1 + &beta).try_div(&two)?;
        let alpha_p = w0.clone() - &alpha;
        return Ok(TupleClass::Alternating { alpha, alpha_p, beta });
    }
    let disc = s.clone() * &s - &K::from_i64(4);
    let q = match disc.sqrt() {
        Some(r) => {
            let q1 = (s.clone() + &r).try_div(&two)?;
            let q2 = (s.clone() - &r).try_div(&two)?;
            base(if q1.prefer_over(&q2) { &q1 } else { &q2 })
        }
        None => QuadExt::generator(Arc::new(QuadCtx { s: s.clone(), p: K::one() })),
    };
    let qi = q.inv()?;
    let one = QuadExt::<K>::from_i64(1);
    let m = vec![
        vec![one.clone(), one.clone(), one.clone()],
        vec![one.clone(), q.clone(), qi.clone()],
        vec![one, q.clone() * &q, qi.clone() * &qi],
    ];
    let abc = solve_linear(m, vec![base(w0), base(w1), base(w2)])?;
    let (a, mut b, mut c) = (abc[0].clone(), abc[1].clone(), abc[2].clone());
    let mut q = q;
    if b.is_zero() && !c.is_zero() {
        std::mem::swap(&mut b, &mut c);
        q = q.inv()?;
    }
    Ok(TupleClass::Geometric { a, b, c, q })
}

/// A fitted family for a window.
#[derive(Clone, Debug, PartialEq)]
pub struct Classification<K: SqrtField> {
    pub family: GridFamily<QuadExt<K>>,
    pub n: usize,
    /// Minimal polynomial of `theta` when parameters need the extension.
    pub extension: Option<String>,
    pub symmetry: Option<&'static str>,
    /// For a two-row IIIb window, only these combinations are determined.
    pub determined: Vec<(&'static str, QuadExt<K>)>,
    pub residual: &'static str,
}

pub const SYMMETRY_I: &str = "(q, t, b, c) ~ (1/q, 1/t, c, b)";
pub const IIIB_UNDERDETERMINED: &str = "alpha and alpha' are not separately determined by two rows";

impl<K: SqrtField> Classification<K> {
    /// Family parameters as base-field values, when none uses `theta`.
    pub fn base_params(&self) -> Option<Vec<(&'static str, K)>> {
        self.family.params().into_iter().map(|(k, v)| v.as_base().cloned().map(|b| (k, b))).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let params: BTreeMap<&str, String> =
            self.family.params().into_iter().map(|(k, v)| (k, v.to_string())).collect();
        let determined: BTreeMap<&str, String> = self.determined.iter().map(|(k, v)| (*k, v.to_string())).collect();
        let mut out = json!({
            "family": self.family.tag(),
            "n": self.n,
            "params": params,
            "residual": self.residual,
        });
        match &self.family {
            GridFamily::E1 { gamma } => out["gamma"] = json!(gamma.iter().map(|g| g.to_string()).collect::<Vec<_>>()),
            GridFamily::E2 { gamma, start } => {
                out["gamma"] = json!(gamma.iter().map(|g| g.to_string()).collect::<Vec<_>>());
                out["start"] = json!(start);
            }
            _ => {}
        }
        if let Some(e) = &self.extension {
            out["extension"] = json!(e);
        }
        if let Some(s) = self.symmetry {
            out["symmetry"] = json!(s);
        }
        if !determined.is_empty() {
            out["determined"] = json!(determined);
        }
        out
    }
}

fn lift<K: SqrtField>(w: &Window<K>) -> Window<QuadExt<K>> {
    w.map(|v| QuadExt::base(v.clone()))
}

/// Regenerates the window from `family` and compares.
fn confirm<K: SqrtField>(
    family: GridFamily<QuadExt<K>>,
    target: &Window<QuadExt<K>>,
) -> Result<GridFamily<QuadExt<K>>> {
    let g = Grid::new(family, target.n())?;
    let w = g.window(target.jmax())?;
    if w == *target {
        Ok(g.family().clone())
    } else {
        Err(Error::NotPerfectWindow(format!("{} fit does not reproduce the window", g.family().tag())))
    }
}

fn extension_of<K: SqrtField>(family: &GridFamily<QuadExt<K>>) -> Option<String> {
    family.params().iter().find_map(|(_, v)| v.context().map(|c| c.minimal_polynomial()))
}

/// Classifies a non-degenerate window with at least two rows and four
/// columns (or a single row).
pub fn classify_window<K: SqrtField>(w: &Window<K>) -> Result<Classification<K>> {
    if let Some((i, ip, j, jp)) = w.first_degeneracy() {
        return Err(Error::DegenerateGrid(format!("Omega({i},{j}) = Omega({ip},{jp})")));
    }
    fit_window(w)
}

/// The fitting step of [`classify_window`] without the non-degeneracy
/// precondition; only the divisions it performs need nonzero divisors.
pub fn fit_window<K: SqrtField>(w: &Window<K>) -> Result<Classification<K>> {
    let n = w.n();
    let lw = lift(w);
    let done = |family: GridFamily<QuadExt<K>>, symmetry, determined| {
        Ok(Classification {
            extension: extension_of(&family),
            family,
            n,
            symmetry,
            determined,
            residual: "exact match",
        })
    };
    let e1 = || GridFamily::E1 { gamma: lw.values[0].clone() };
    if n == 0 {
        return done(confirm(e1(), &lw)?, None, vec![]);
    }
    let v = |i: usize, j: usize| w.get(i, j).clone();
    if v(0, 0) == v(1, 1) {
        // gamma_k for k = -n..=jmax
        let mut gamma: Vec<QuadExt<K>> = (1..=n).rev().map(|i| lw.get(i, 0).clone()).collect();
        gamma.extend(lw.values[0].iter().cloned());
        return done(confirm(GridFamily::E2 { gamma, start: -(n as i64) }, &lw)?, None, vec![]);
    }
    if w.jmax() >= 1 && v(0, 0) == v(1, 0) && v(0, 1) == v(1, 1) {
        return done(confirm(e1(), &lw)?, None, vec![]);
    }
    if w.jmax() < 3 {
        return Err(Error::InvalidArgument("classification needs columns 0..=3".into()));
    }
    let row0 = [w.get(0, 0), w.get(0, 1), w.get(0, 2), w.get(0, 3)];
    let (o10, o11) = (lw.get(1, 0).clone(), lw.get(1, 1).clone());
    match classify_tuple(row0)? {
        TupleClass::Geometric { a, b, c, q } => {
            let qi = q.inv()?;
            // X = b t, Y = c / t from the two row-1 values
            let (x0, x1) = (o10 - &a, o11 - &a);
            let x = (x1 - &(x0.clone() * &qi)).try_div(&(q.clone() - &qi))?;
            let y = x0 - &x;
            if c.is_zero() && !y.is_zero() {
                if !x.is_zero() {
                    return Err(Error::NotPerfectWindow("row 1 mixes q^j and q^-j with c = 0".into()));
                }
                let fam = GridFamily::IV { alpha: a, beta: b, beta_p: y, q };
                return done(confirm(fam, &lw)?, None, vec![]);
            }
            let t = x.try_div(&b)?;
            if t.is_zero() {
                return Err(Error::NotPerfectWindow("t = 0".into()));
            }
            let fam = GridFamily::I { a, b, c, q, t };
            done(confirm(fam, &lw)?, Some(SYMMETRY_I), vec![])
        }
        TupleClass::Quadratic { alpha, beta, gamma } => {
            let (alpha, beta, gamma) = (base(&alpha), base(&beta), base(&gamma));
            let d = o11.clone() - &o10;
            if !gamma.is_zero() {
                // o11 - o10 = beta + gamma (beta^2 + 2 beta beta')
                let two = QuadExt::from_i64(2);
                let bp = (d - &beta - &(gamma.clone() * &beta * &beta)).try_div(&(two * &gamma * &beta))?;
                let fam = GridFamily::II { alpha, beta, beta_p: bp, gamma };
                return done(confirm(fam, &lw)?, None, vec![]);
            }
            if d == beta {
                let bp = o10 - &alpha;
                let fam = GridFamily::II { alpha, beta, beta_p: bp, gamma };
                return done(confirm(fam, &lw)?, None, vec![]);
            }
            // IIIb: row 0 is alpha + alpha' + beta j, row i adds (-1)^i and beta' i
            let sum = alpha;
            if n >= 2 {
                let two = QuadExt::from_i64(2);
                let bp = (lw.get(2, 0).clone() - &sum).try_div(&two)?;
                let diff = o10 + &bp;
                let al = (sum.clone() + &diff).try_div(&two)?;
                let alp = sum - &al;
                let fam = GridFamily::III { variant: IIIVariant::B, alpha: al, alpha_p: alp, beta, beta_p: bp };
                return done(confirm(fam, &lw)?, None, vec![]);
            }
            let rest = o10;
            let fam = GridFamily::III {
                variant: IIIVariant::B,
                alpha: sum.clone(),
                alpha_p: QuadExt::from_i64(0),
                beta: beta.clone(),
                beta_p: sum.clone() - &rest,
            };
            let fam = confirm(fam, &lw)?;
            let determined = vec![("alpha+alpha'", sum), ("alpha-alpha'-beta'", rest), ("beta", beta)];
            done(fam, Some(IIIB_UNDERDETERMINED), determined)
        }
        TupleClass::Alternating { alpha, alpha_p, beta } => {
            let (alpha, alpha_p, beta) = (base(&alpha), base(&alpha_p), base(&beta));
            let a_bp = o10.clone() - &alpha - &alpha_p;
            let fam_a = GridFamily::III {
                variant: IIIVariant::A,
                alpha: alpha.clone(),
                alpha_p: alpha_p.clone(),
                beta: beta.clone(),
                beta_p: a_bp,
            };
            if let Ok(f) = confirm(fam_a, &lw) {
                return done(f, None, vec![]);
            }
            let c_bp = alpha.clone() - &alpha_p - &o10;
            let fam_c = GridFamily::III { variant: IIIVariant::C, alpha, alpha_p, beta, beta_p: c_bp };
            done(confirm(fam_c, &lw)?, None, vec![])
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::Rational;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn window(f: GridFamily<Rational>, n: usize, jmax: usize) -> Window<Rational> {
        Grid::new(f, n).unwrap().window(jmax).unwrap()
    }

    #[test]
    fn tuple_cases() {
        let t = |v: [i64; 4]| {
            let k: Vec<Rational> = v.iter().map(|&x| Rational::from(x)).collect();
            classify_tuple([&k[0], &k[1], &k[2], &k[3]]).unwrap()
        };
        assert_eq!(t([0, 1, 2, 3]), TupleClass::Quadratic { alpha: r(0, 1), beta: r(1, 1), gamma: r(0, 1) });
        assert_eq!(t([1, -2, 3, -4]), TupleClass::Alternating { alpha: r(0, 1), alpha_p: r(1, 1), beta: r(1, 1) });
        let g: Vec<Rational> = (0..4).map(|j| r(1 << j, 1) + r(1, 1 << j)).collect();
        let TupleClass::Geometric { a, b, c, q } = classify_tuple([&g[0], &g[1], &g[2], &g[3]]).unwrap() else {
            panic!("expected geometric")
        };
        assert_eq!((a, b, c), (QuadExt::from_i64(0), QuadExt::from_i64(1), QuadExt::from_i64(1)));
        assert!(q == QuadExt::from_i64(2) || q == QuadExt::base(r(1, 2)));
    }

    #[test]
    fn irrational_q_uses_extension() {
        // w_j = theta^j + theta^-j with theta^2 = 3 theta - 1
        let w = [r(2, 1), r(3, 1), r(7, 1), r(18, 1)];
        let TupleClass::Geometric { q, .. } = classify_tuple([&w[0], &w[1], &w[2], &w[3]]).unwrap() else {
            panic!("expected geometric")
        };
        assert_eq!(q.context().unwrap().minimal_polynomial(), "theta^2-(3)*theta+(1)");
    }

    #[test]
    fn round_trips() {
        let cases = vec![
            (GridFamily::II { alpha: r(1, 1), beta: r(1, 1), beta_p: r(5, 2), gamma: r(3, 1) }, "II"),
            (GridFamily::I { a: r(1, 1), b: r(2, 1), c: r(3, 1), q: r(2, 3), t: r(5, 7) }, "I"),
            (GridFamily::IV { alpha: r(0, 1), beta: r(1, 1), beta_p: r(1, 1), q: r(3, 1) }, "IV"),
            (
                GridFamily::III {
                    variant: IIIVariant::A,
                    alpha: r(1, 1),
                    alpha_p: r(2, 1),
                    beta: r(3, 1),
                    beta_p: r(5, 1),
                },
                "IIIa",
            ),
            (
                GridFamily::III {
                    variant: IIIVariant::B,
                    alpha: r(1, 1),
                    alpha_p: r(2, 1),
                    beta: r(3, 1),
                    beta_p: r(5, 1),
                },
                "IIIb",
            ),
            (
                GridFamily::III {
                    variant: IIIVariant::C,
                    alpha: r(1, 1),
                    alpha_p: r(2, 1),
                    beta: r(3, 1),
                    beta_p: r(5, 1),
                },
                "IIIc",
            ),
        ];
        for (f, tag) in cases {
            let w = window(f, 1, 5);
            let c = classify_window(&w).unwrap();
            assert_eq!(c.family.tag(), tag);
            let again = Grid::new(c.family.clone(), 1).unwrap().window(5).unwrap();
            assert_eq!(again, lift(&w));
        }
        // beta' = 2 beta makes Omega(1,0) = Omega(0,2): fitted, but not classified
        let w = window(GridFamily::II { alpha: r(1, 1), beta: r(1, 1), beta_p: r(2, 1), gamma: r(3, 1) }, 1, 3);
        assert!(matches!(classify_window(&w), Err(Error::DegenerateGrid(_))));
        let c = fit_window(&w).unwrap();
        let p = c.base_params().unwrap();
        assert_eq!(p, vec![("alpha", r(1, 1)), ("beta", r(1, 1)), ("beta'", r(2, 1)), ("gamma", r(3, 1))]);
    }

    #[test]
    fn three_row_iiib_is_determined() {
        let f = GridFamily::III {
            variant: IIIVariant::B,
            alpha: r(1, 1),
            alpha_p: r(2, 1),
            beta: r(3, 1),
            beta_p: r(5, 1),
        };
        let c = classify_window(&window(f.clone(), 2, 4)).unwrap();
        assert!(c.determined.is_empty());
        assert_eq!(c.base_params().unwrap(), f.params());
    }

    #[test]
    fn non_perfect_window_is_rejected() {
        let vals: Vec<Vec<Rational>> = vec![
            [1, 2, 4, 9, 20].iter().map(|&x| Rational::from(x)).collect(),
            [3, 7, 13, 30, 50].iter().map(|&x| Rational::from(x)).collect(),
        ];
        let w = Window::new(vals).unwrap();
        assert!(matches!(classify_window(&w), Err(Error::NotPerfectWindow(_))));
    }
}
