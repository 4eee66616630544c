//! Partitions, cells and reverse tableaux.
//!
//! Rows and columns are 0-based. A reverse tableau of shape `mu` with entries
//! in `0..=n` decreases weakly along rows and strictly down columns, so that
//! `i + T(i, j) <= n` for every cell.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Weakly decreasing sequence of positive parts. Trailing zeros are trimmed.
///
/// Ordered by size, then reverse lexicographically, which is the order of
/// [`enumerate_partitions`].
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Cell {
    pub i: usize,
    pub j: usize,
}

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument(format!("parts {parts:?} are not weakly decreasing")));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Part `i`, zero beyond the length.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn length(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.part(0);
        let parts = (0..cols).map(|j| self.parts.iter().take_while(|&&p| p > j).count()).collect();
        Partition { parts }
    }

    /// Parts padded with zeros to length `len`.
    pub fn padded(&self, len: usize) -> Vec<usize> {
        let mut v = self.parts.clone();
        v.resize(len.max(v.len()), 0);
        v
    }

    /// Whether `self` is contained in `other` as a diagram.
    pub fn is_contained_in(&self, other: &Partition) -> bool {
        self.length() <= other.length() && self.parts.iter().zip(&other.parts).all(|(a, b)| a <= b)
    }

    pub fn contains_cell(&self, c: Cell) -> bool {
        self.part(c.i) > c.j
    }

    /// Cells in row-major order.
    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.parts.iter().enumerate().flat_map(|(i, &p)| (0..p).map(move |j| Cell { i, j }))
    }

    /// Subtracts one from each of the first `len` parts; all must be positive.
    pub fn minus_ones(&self, len: usize) -> Result<Partition> {
        if self.length() != len {
            return Err(Error::InvalidArgument(format!("{self} does not have exactly {len} parts")));
        }
        Partition::new(self.parts.iter().map(|p| p - 1).collect())
    }

    /// Adds one to each of the first `len` parts.
    pub fn plus_ones(&self, len: usize) -> Partition {
        Partition { parts: self.padded(len).into_iter().map(|p| p + 1).collect() }
    }

    /// Drops the first part (shifts rows up).
    pub fn tail(&self) -> Partition {
        Partition { parts: self.parts.iter().skip(1).copied().collect() }
    }
}

/// `mu ⊂ lambda` as Young diagrams.
pub fn contains(mu: &Partition, lambda: &Partition) -> bool {
    mu.is_contained_in(lambda)
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size().cmp(&other.size()).then_with(|| other.parts.cmp(&self.parts))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, p) in self.parts.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts `[3,1]`, `3,1`, `[]` and whitespace variants.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let t = t.strip_prefix('[').unwrap_or(t);
        let t = t.strip_suffix(']').unwrap_or(t).trim();
        if t.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = t
            .split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad partition `{s}`"))))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// All partitions with `|lambda| <= d` and at most `max_len` parts, by size
/// and then reverse lexicographically.
pub fn enumerate_partitions(d: usize, max_len: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    for size in 0..=d {
        out.extend(partitions_of(size, max_len));
    }
    out
}

/// Partitions of exactly `size` with at most `max_len` parts, reverse lexicographic.
pub fn partitions_of(size: usize, max_len: usize) -> Vec<Partition> {
    fn rec(rem: usize, max_part: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        if slots == 0 {
            return;
        }
        for p in (1..=max_part.min(rem)).rev() {
            cur.push(p);
            rec(rem - p, p, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(size, size, max_len, &mut Vec::new(), &mut out);
    out
}

/// Reverse tableau of shape `shape` with entries in `0..=n`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ReverseTableau {
    shape: Partition,
    rows: Vec<Vec<usize>>,
}

impl ReverseTableau {
    /// Validates the row entries against the shape and the ordering rules.
    pub fn new(shape: Partition, rows: Vec<Vec<usize>>, n: usize) -> Result<Self> {
        let bad = |m: String| Err(Error::MalformedTableau(m));
        if rows.len() != shape.length() {
            return bad(format!("{} rows for shape {shape}", rows.len()));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != shape.part(i) {
                return bad(format!("row {i} has {} entries for shape {shape}", row.len()));
            }
            for (j, &e) in row.iter().enumerate() {
                if e > n {
                    return bad(format!("entry {e} at ({i},{j}) exceeds {n}"));
                }
                if j > 0 && e > row[j - 1] {
                    return bad(format!("row {i} increases at column {j}"));
                }
                if i > 0 && e >= rows[i - 1][j] {
                    return bad(format!("column {j} does not strictly decrease at row {i}"));
                }
            }
        }
        Ok(ReverseTableau { shape, rows })
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn get(&self, c: Cell) -> usize {
        self.rows[c.i][c.j]
    }

    /// Chain `lambda^(0) ⊇ lambda^(1) ⊇ ... ⊇ lambda^(n+1) = ∅` where
    /// `lambda^(k)` holds the cells with entry at least `k`.
    pub fn chain(&self, n: usize) -> Vec<Partition> {
        (0..=n + 1)
            .map(|k| {
                let parts = self.rows.iter().map(|r| r.iter().filter(|&&e| e >= k).count()).collect();
                Partition::new(parts).expect("entries decrease along rows")
            })
            .collect()
    }
}

/// All reverse tableaux of shape `mu` with entries in `0..=n`, ordered by
/// their row-major entry vectors.
pub fn enumerate_reverse_tableaux(mu: &Partition, n: usize) -> Vec<ReverseTableau> {
    let cells: Vec<Cell> = mu.cells().collect();
    let mut rows: Vec<Vec<usize>> = mu.parts().iter().map(|&p| vec![0; p]).collect();
    let mut out = Vec::new();
    fn rec(
        k: usize,
        cells: &[Cell],
        n: usize,
        rows: &mut Vec<Vec<usize>>,
        shape: &Partition,
        out: &mut Vec<ReverseTableau>,
    ) {
        if k == cells.len() {
            out.push(ReverseTableau { shape: shape.clone(), rows: rows.clone() });
            return;
        }
        let Cell { i, j } = cells[k];
        let mut hi = n;
        if j > 0 {
            hi = hi.min(rows[i][j - 1]);
        }
        if i > 0 {
            if rows[i - 1][j] == 0 {
                return;
            }
            hi = hi.min(rows[i - 1][j] - 1);
        }
        for e in 0..=hi {
            rows[i][j] = e;
            rec(k + 1, cells, n, rows, shape, out);
        }
    }
    rec(0, &cells, n, &mut rows, mu, &mut out);
    out
}

/// Chain of a tableau; the steps are horizontal strips.
pub fn tableau_to_chain(t: &ReverseTableau, n: usize) -> Result<Vec<Partition>> {
    if t.rows.iter().flatten().any(|&e| e > n) {
        return Err(Error::MalformedTableau(format!("entries exceed {n}")));
    }
    Ok(t.chain(n))
}

/// Whether `outer / inner` is a horizontal strip (at most one cell per column).
pub fn is_horizontal_strip(outer: &Partition, inner: &Partition) -> bool {
    inner.is_contained_in(outer) && (1..outer.length()).all(|i| outer.part(i) <= inner.part(i - 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn small_enumeration_order() {
        let got: Vec<String> = enumerate_partitions(3, 2).iter().map(|x| x.to_string()).collect();
        assert_eq!(got, ["[]", "[1]", "[2]", "[1,1]", "[3]", "[2,1]"]);
        assert_eq!(enumerate_partitions(2, 1), vec![p(&[]), p(&[1]), p(&[2])]);
    }

    #[test]
    fn conjugate_and_containment() {
        assert_eq!(p(&[3, 1]).conjugate(), p(&[2, 1, 1]));
        assert!(contains(&p(&[2, 1]), &p(&[3, 1, 1])));
        assert!(!contains(&p(&[2, 2]), &p(&[3, 1])));
        assert!(Partition::new(vec![1, 2]).is_err());
        assert_eq!(p(&[2, 0, 0]), p(&[2]));
    }

    #[test]
    fn parse_and_print() {
        assert_eq!("[3,1]".parse::<Partition>().unwrap(), p(&[3, 1]));
        assert_eq!("[]".parse::<Partition>().unwrap(), Partition::empty());
        assert_eq!("2, 2".parse::<Partition>().unwrap().to_string(), "[2,2]");
        assert!("[1,x]".parse::<Partition>().is_err());
    }

    #[test]
    fn column_of_two_has_one_tableau_when_n_is_one() {
        let ts = enumerate_reverse_tableaux(&p(&[1, 1]), 1);
        assert_eq!(ts.len(), 1);
        assert_eq!(ts[0].rows(), &[vec![1], vec![0]]);
        assert!(enumerate_reverse_tableaux(&p(&[1, 1, 1]), 1).is_empty());
    }

    #[test]
    fn malformed_tableaux_are_rejected() {
        assert!(ReverseTableau::new(p(&[2]), vec![vec![0, 1]], 1).is_err());
        assert!(ReverseTableau::new(p(&[1, 1]), vec![vec![0], vec![0]], 1).is_err());
        assert!(ReverseTableau::new(p(&[1]), vec![vec![2]], 1).is_err());
        assert!(ReverseTableau::new(p(&[2, 1]), vec![vec![1, 0], vec![0]], 1).is_ok());
    }

    #[test]
    fn chain_steps_are_horizontal_strips() {
        for t in enumerate_reverse_tableaux(&p(&[3, 2, 1]), 3) {
            let chain = tableau_to_chain(&t, 3).unwrap();
            assert_eq!(chain[0], p(&[3, 2, 1]));
            assert!(chain.last().unwrap().is_empty());
            for w in chain.windows(2) {
                assert!(is_horizontal_strip(&w[0], &w[1]), "{:?}", t);
            }
        }
    }
}
