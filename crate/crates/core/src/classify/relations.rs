//! The rational function `F` and the polynomials `G0..G3` relating
//! neighbouring values of a perfect grid.

use crate::error::Result;
use crate::exactfield::Scalar;

/// `(y4^2 - y4 y1 - y4 y5 + y2 y3 + y1 y5 - y3^2) / (y2 - y3)`.
pub fn f<S: Scalar>(y1: &S, y2: &S, y3: &S, y4: &S, y5: &S) -> Result<S> {
    let num = y4.clone() * y4 - &(y4.clone() * y1) - &(y4.clone() * y5) + &(y2.clone() * y3) + &(y1.clone() * y5)
        - &(y3.clone() * y3);
    num.try_div(&(y2.clone() - y3))
}

pub fn g0<S: Scalar>(y1: &S, y2: &S, y3: &S, y4: &S, y5: &S) -> S {
    let m = |a: &S, b: &S, c: &S| a.clone() * b * c;
    let terms_plus = [
        m(y1, y4, y2),
        m(y1, y5, y5),
        m(y3, y3, y4),
        m(y3, y3, y2),
        m(y3, y5, y5),
        m(y4, y4, y5),
        m(y4, y2, y5),
        m(y2, y2, y5),
    ];
    let terms_minus = [
        m(y1, y4, y5),
        m(y1, y2, y5),
        m(y3, y3, y5),
        m(y3, y4, y4),
        m(y3, y4, y2),
        m(y3, y2, y2),
        m(y4, y5, y5),
        m(y2, y5, y5),
    ];
    let mut s = S::zero();
    for t in terms_plus {
        s = s + &t;
    }
    for t in terms_minus {
        s = s - &t;
    }
    s
}

/// `(y3 - y2)(y3 - y4)`.
pub fn g1<S: Scalar>(y2: &S, y3: &S, y4: &S) -> S {
    (y3.clone() - y2) * &(y3.clone() - y4)
}

/// `y6 G1(y2, y3, y4) - G0(y1, ..., y5)`.
pub fn f1<S: Scalar>(y: [&S; 6]) -> S {
    y[5].clone() * &g1(y[1], y[2], y[3]) - &g0(y[0], y[1], y[2], y[3], y[4])
}

pub fn g2<S: Scalar>(y1: &S, y2: &S, y3: &S, y4: &S, y5: &S) -> S {
    y4.clone() * y5 - &(y4.clone() * y3) + &(y2.clone() * y1) - &(y2.clone() * y3) - &(y1.clone() * y5)
        + &(y3.clone() * y3)
}

pub fn g3<S: Scalar>(y1: &S, y2: &S, y3: &S, y4: &S, y5: &S) -> S {
    let m = |a: &S, b: &S, c: &S| a.clone() * b * c;
    let two = S::from_i64(2);
    let plus = [
        m(y4, y4, y4),
        m(y4, y2, y1),
        m(y4, y2, y5),
        two * &m(y4, y2, y3),
        m(y4, y1, y3),
        m(y2, y2, y2),
        m(y2, y5, y3),
        m(y3, y3, y3),
    ];
    let minus = [
        m(y4, y4, y2),
        m(y4, y4, y1),
        m(y4, y4, y3),
        m(y4, y2, y2),
        m(y4, y3, y3),
        m(y2, y2, y5),
        m(y2, y2, y3),
        m(y2, y3, y3),
        m(y1, y3, y5),
    ];
    let mut s = S::zero();
    for t in plus {
        s = s + &t;
    }
    for t in minus {
        s = s - &t;
    }
    s
}
