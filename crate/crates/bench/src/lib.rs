//! Fixed inputs shared by the benchmarks.

use symterp::{Grid, GridFamily, Rational};

/// Family I grid with `(a, b, c, q, t) = (1, 2, 3, 2/3, 5/7)`.
pub fn macdonald_grid(n: usize) -> Grid<Rational> {
    let r = Rational::new;
    Grid::new(GridFamily::I { a: r(1, 1), b: r(2, 1), c: r(3, 1), q: r(2, 3), t: r(5, 7) }, n).expect("valid grid")
}

/// Family II grid with `(alpha, beta, beta', gamma) = (1, 1, 5/2, 3)`.
pub fn jack_grid(n: usize) -> Grid<Rational> {
    let r = Rational::new;
    Grid::new(GridFamily::II { alpha: r(1, 1), beta: r(1, 1), beta_p: r(5, 2), gamma: r(3, 1) }, n).expect("valid grid")
}
