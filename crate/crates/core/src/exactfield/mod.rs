//! Exact scalar fields: rationals, rational functions in named parameters,
//! and simple quadratic extensions.

mod gcd;
mod poly;
mod quadext;
mod ratfunc;
mod rational;
mod text;
mod var;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub use gcd::gcd;
pub use poly::{Monomial, ParamPoly};
pub use quadext::{QuadCtx, QuadExt};
pub use ratfunc::RatFunc;
pub use rational::Rational;
pub use text::{parse_ratfunc, parse_rational};
pub use var::{universal_name, Var};

use crate::error::{Error, Result};

/// A field with exact equality. Operators never fail; everything that can
/// (inversion, division, parameters) goes through `Result`.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rational(r: &Rational) -> Self;
    fn is_zero(&self) -> bool;
    fn inv(&self) -> Result<Self>;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&Rational::from(n))
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn try_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.clone() * &rhs.inv()?)
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * &base;
            }
        }
        result
    }

    fn powi(&self, e: i64) -> Result<Self> {
        let p = self.pow(e.unsigned_abs() as u32);
        if e < 0 {
            p.inv()
        } else {
            Ok(p)
        }
    }

    /// Named symbolic parameter, for fields that have them.
    fn param(_name: &str) -> Result<Self> {
        Err(Error::NotParametric)
    }

    /// The value as a rational, when it is one.
    fn to_rational(&self) -> Option<Rational>;

    /// Canonical representative (full reduction); identity by default.
    fn canonical(&self) -> Self {
        self.clone()
    }
}

/// Fields where square roots can be decided, used to descend a quadratic
/// extension back to the base field.
pub trait SqrtField: Scalar {
    fn sqrt(&self) -> Option<Self>;

    /// Whether `self` is the preferred of two mutually inverse roots.
    fn prefer_over(&self, _other: &Self) -> bool {
        true
    }
}

/// Substitutes rationals into a rational function.
pub fn specialize(f: &RatFunc, bindings: &std::collections::HashMap<String, Rational>) -> Result<Rational> {
    f.specialize(bindings)
}
