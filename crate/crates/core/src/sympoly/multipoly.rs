use std::collections::BTreeMap;

use super::SymPoly;
use crate::error::{Error, Result};
use crate::exactfield::Scalar;
use crate::partition::Partition;

/// Polynomial in `nvars` ordered variables with dense exponent vectors.
/// Needed where symmetry only appears at the end, e.g. alternant quotients.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiPoly<S> {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, S>,
}

impl<S: Scalar> MultiPoly<S> {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: S) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    /// Univariate polynomial (ascending coefficients) in variable `var`.
    pub fn univariate(nvars: usize, var: usize, coeffs: &[S]) -> Self {
        let mut p = Self::zero(nvars);
        for (k, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; nvars];
            e[var] = k as u32;
            p.add_term(e, c.clone());
        }
        p
    }

    pub fn add_term(&mut self, e: Vec<u32>, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let v = o.get().clone() + &c;
                if v.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = v;
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &S)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (a, c) in &self.terms {
            for (b, d) in &other.terms {
                let e: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.add_term(e, c.clone() * d);
            }
        }
        out
    }

    /// Exact quotient by `x_i - x_j` (`i < j`), or an error if it does not divide.
    pub fn div_difference(&self, i: usize, j: usize) -> Result<Self> {
        assert!(i < j && j < self.nvars);
        let mut rem = self.terms.clone();
        let mut quot = Self::zero(self.nvars);
        // lex order with x_0 most significant: the leading term of x_i - x_j is x_i
        while let Some((e, c)) = rem.pop_last() {
            if e[i] == 0 {
                return Err(Error::Hypothesis(format!("x{i} - x{j} does not divide the polynomial")));
            }
            let mut qe = e.clone();
            qe[i] -= 1;
            let mut ne = qe.clone();
            ne[j] += 1;
            let entry = rem.entry(ne).or_insert_with(S::zero);
            *entry = entry.clone() + &c;
            if entry.is_zero() {
                let mut ne = qe.clone();
                ne[j] += 1;
                rem.remove(&ne);
            }
            quot.add_term(qe, c);
        }
        Ok(quot)
    }

    /// Reads the coefficients on weakly decreasing exponents; with `check`,
    /// first verifies that the polynomial is symmetric.
    pub fn to_sympoly(&self, check: bool) -> Result<SymPoly<S>> {
        let mut out = SymPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut sorted: Vec<u32> = e.clone();
            sorted.sort_unstable_by(|a, b| b.cmp(a));
            if sorted == *e {
                out.add_term(Partition::new(e.iter().map(|&x| x as usize).collect())?, c.clone());
            } else if check {
                match self.terms.get(&sorted) {
                    Some(d) if d == c => {}
                    _ => return Err(Error::Hypothesis("polynomial is not symmetric".into())),
                }
            }
        }
        Ok(out)
    }

    pub fn eval(&self, point: &[S]) -> S {
        let mut total = S::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                t = t * &x.pow(k);
            }
            total = total + &t;
        }
        total
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::Rational;

    #[test]
    fn alternant_division() {
        // (x0^2 - x1^2) / (x0 - x1) = x0 + x1
        let mut p = MultiPoly::zero(2);
        p.add_term(vec![2, 0], Rational::from(1));
        p.add_term(vec![0, 2], Rational::from(-1));
        let q = p.div_difference(0, 1).unwrap();
        let s = q.to_sympoly(true).unwrap();
        assert_eq!(s.coeff(&Partition::new(vec![1]).unwrap()), Rational::from(1));
        assert_eq!(s.num_terms(), 1);
        let mut bad = MultiPoly::zero(2);
        bad.add_term(vec![1, 0], Rational::from(1));
        assert!(bad.div_difference(0, 1).is_err());
    }
}
