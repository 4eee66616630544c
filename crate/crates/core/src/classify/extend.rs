use super::relations::{f, g0, g1, g2, g3};
use crate::error::{Error, Result};
use crate::exactfield::Scalar;
use crate::grid::Window;

/// Rectangle of grid values, some of them unknown.
#[derive(Clone, Debug, PartialEq)]
pub struct PartialWindow<S> {
    pub values: Vec<Vec<Option<S>>>,
}

impl<S: Scalar> PartialWindow<S> {
    pub fn empty(n: usize, jmax: usize) -> Self {
        PartialWindow { values: vec![vec![None; jmax + 1]; n + 1] }
    }

    pub fn from_window(w: &Window<S>) -> Self {
        PartialWindow { values: w.values.iter().map(|r| r.iter().cloned().map(Some).collect()).collect() }
    }

    pub fn n(&self) -> usize {
        self.values.len() - 1
    }

    pub fn jmax(&self) -> usize {
        self.values[0].len() - 1
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&S> {
        self.values.get(i).and_then(|r| r.get(j)).and_then(|v| v.as_ref())
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.values[i][j] = Some(v);
    }

    pub fn is_complete(&self) -> bool {
        self.values.iter().flatten().all(|v| v.is_some())
    }

    pub fn to_window(&self) -> Option<Window<S>> {
        let values =
            self.values.iter().map(|r| r.iter().cloned().collect::<Option<Vec<S>>>()).collect::<Option<Vec<_>>>()?;
        Some(Window { values })
    }
}

type Derivation<S> = ((usize, usize), S, &'static str);

/// Every value derivable in one step from the known ones.
fn derivations<S: Scalar>(w: &PartialWindow<S>) -> Result<Vec<Derivation<S>>> {
    let n = w.n();
    let jm = w.jmax();
    let mut out = Vec::new();
    let get = |i: usize, j: usize| w.get(i, j);
    for i in 0..=n {
        for j in 0..=jm {
            // forward along a pair of rows
            if i < n && j + 2 <= jm {
                if let (Some(a), Some(b), Some(c), Some(d), Some(e)) =
                    (get(i, j), get(i + 1, j), get(i, j + 1), get(i + 1, j + 1), get(i, j + 2))
                {
                    out.push(((i + 1, j + 2), f(a, b, c, d, e)?, "row-recurrence"));
                }
                if let (Some(a), Some(b), Some(c), Some(d), Some(e)) =
                    (get(i + 1, j + 2), get(i, j + 2), get(i + 1, j + 1), get(i, j + 1), get(i + 1, j))
                {
                    out.push(((i, j), f(a, b, c, d, e)?, "row-recurrence-inverse"));
                }
            }
            // forward down three rows
            if i + 2 <= n && j < jm {
                if let (Some(a), Some(b), Some(c), Some(d), Some(e)) =
                    (get(i, j), get(i, j + 1), get(i + 1, j), get(i + 1, j + 1), get(i + 2, j))
                {
                    out.push(((i + 2, j + 1), f(a, b, c, d, e)?, "column-recurrence"));
                }
                if let (Some(a), Some(b), Some(c), Some(d), Some(e)) =
                    (get(i + 2, j + 1), get(i + 2, j), get(i + 1, j + 1), get(i + 1, j), get(i, j + 1))
                {
                    out.push(((i, j), f(a, b, c, d, e)?, "column-recurrence-inverse"));
                }
            }
            // the G relations, valid away from the E2 pattern
            if i < n && j + 2 <= jm {
                if let (Some(a), Some(b), Some(c), Some(d), Some(e)) =
                    (get(i, j), get(i + 1, j), get(i, j + 1), get(i + 1, j + 1), get(i, j + 2))
                {
                    if a != d {
                        if j + 3 <= jm {
                            let den = g1(b, c, d);
                            if !den.is_zero() {
                                out.push(((i, j + 3), g0(a, b, c, d, e).try_div(&den)?, "column-three"));
                            }
                        }
                        if i + 2 <= n {
                            let den = g2(a, b, c, d, e);
                            if !den.is_zero() {
                                out.push(((i + 2, j), g3(a, b, c, d, e).try_div(&den)?, "third-row"));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Fills the window with every value the recurrences determine, checking
/// that values derived more than once (or already given) agree.
pub fn extend<S: Scalar>(w: &PartialWindow<S>) -> Result<PartialWindow<S>> {
    let mut cur = w.clone();
    loop {
        let mut changed = false;
        for ((i, j), v, rule) in derivations(&cur)? {
            match cur.get(i, j) {
                Some(old) if *old != v => {
                    return Err(Error::InconsistentWindow(format!("Omega({i},{j}) is {old} but {rule} gives {v}")));
                }
                Some(_) => {}
                None => {
                    cur.set(i, j, v);
                    changed = true;
                }
            }
        }
        if !changed {
            return Ok(cur);
        }
    }
}

/// Checks every recurrence on a complete window.
pub fn check_recurrences<S: Scalar>(w: &Window<S>) -> Result<()> {
    extend(&PartialWindow::from_window(w)).map(|_| ())
}
