use std::fmt;
use std::sync::Arc;

use super::{Rational, Scalar};
use crate::error::{Error, Result};

/// Defining data of `K(theta)` with `theta^2 = s*theta - p`.
#[derive(Clone, PartialEq, Debug)]
pub struct QuadCtx<K> {
    pub s: K,
    pub p: K,
}

impl<K: Scalar> QuadCtx<K> {
    /// Minimal polynomial of `theta` as text.
    pub fn minimal_polynomial(&self) -> String {
        format!("theta^2-({})*theta+({})", self.s, self.p)
    }
}

/// Element `a0 + a1*theta` of a quadratic extension.
///
/// Base-field elements carry no context, so `zero()`/`one()` need none.
/// Operators panic when two different contexts meet; the `checked_*`
/// methods report [`Error::MixedContext`] instead.
#[derive(Clone, Debug)]
pub struct QuadExt<K> {
    ctx: Option<Arc<QuadCtx<K>>>,
    a0: K,
    a1: K,
}

impl<K: Scalar> QuadExt<K> {
    pub fn base(a: K) -> Self {
        QuadExt { ctx: None, a0: a, a1: K::zero() }
    }

    /// The generator `theta` of `K[theta]/(theta^2 - s*theta + p)`.
    pub fn generator(ctx: Arc<QuadCtx<K>>) -> Self {
        QuadExt { ctx: Some(ctx), a0: K::zero(), a1: K::one() }
    }

    pub fn new(ctx: Arc<QuadCtx<K>>, a0: K, a1: K) -> Self {
        QuadExt { ctx: Some(ctx), a0, a1 }.normalized()
    }

    pub fn parts(&self) -> (&K, &K) {
        (&self.a0, &self.a1)
    }

    pub fn context(&self) -> Option<&Arc<QuadCtx<K>>> {
        self.ctx.as_ref()
    }

    /// The base-field value when the `theta` part vanishes.
    pub fn as_base(&self) -> Option<&K> {
        self.a1.is_zero().then_some(&self.a0)
    }

    fn normalized(mut self) -> Self {
        if self.a1.is_zero() {
            self.ctx = None;
        }
        self
    }

    fn join(&self, other: &Self) -> Result<Option<Arc<QuadCtx<K>>>> {
        match (&self.ctx, &other.ctx) {
            (None, c) | (c, None) => Ok(c.clone()),
            (Some(a), Some(b)) if Arc::ptr_eq(a, b) || a == b => Ok(Some(a.clone())),
            _ => Err(Error::MixedContext),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let ctx = self.join(other)?;
        Ok(QuadExt { ctx, a0: self.a0.clone() + &other.a0, a1: self.a1.clone() + &other.a1 }.normalized())
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        let ctx = self.join(other)?;
        Ok(QuadExt { ctx, a0: self.a0.clone() - &other.a0, a1: self.a1.clone() - &other.a1 }.normalized())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let ctx = self.join(other)?;
        let Some(c) = &ctx else {
            return Ok(QuadExt::base(self.a0.clone() * &other.a0));
        };
        let t = self.a1.clone() * &other.a1;
        let a0 = self.a0.clone() * &other.a0 - c.p.clone() * &t;
        let a1 = self.a0.clone() * &other.a1 + self.a1.clone() * &other.a0 + c.s.clone() * &t;
        Ok(QuadExt { ctx, a0, a1 }.normalized())
    }

    /// Norm `a0^2 + s*a0*a1 + p*a1^2`.
    pub fn norm(&self) -> K {
        match &self.ctx {
            None => self.a0.clone() * &self.a0,
            Some(c) => {
                self.a0.clone() * &self.a0 + c.s.clone() * &self.a0 * &self.a1 + c.p.clone() * &self.a1 * &self.a1
            }
        }
    }

    pub fn checked_inv(&self) -> Result<Self> {
        let Some(c) = &self.ctx else {
            return Ok(QuadExt::base(self.a0.inv()?));
        };
        let n = self.norm().inv()?;
        let a0 = (self.a0.clone() + c.s.clone() * &self.a1) * &n;
        let a1 = -(self.a1.clone() * &n);
        Ok(QuadExt { ctx: self.ctx.clone(), a0, a1 }.normalized())
    }
}

impl<K: Scalar> PartialEq for QuadExt<K> {
    fn eq(&self, other: &Self) -> bool {
        if self.a0 != other.a0 || self.a1 != other.a1 {
            return false;
        }
        self.a1.is_zero() || self.join(other).is_ok()
    }
}

impl<K: Scalar> fmt::Display for QuadExt<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.a1.is_zero() {
            return write!(f, "{}", self.a0);
        }
        let a1 = if self.a1.is_one() { "theta".to_string() } else { format!("({})*theta", self.a1) };
        if self.a0.is_zero() {
            write!(f, "{a1}")
        } else {
            write!(f, "{}+{a1}", self.a0)
        }
    }
}

macro_rules! quad_binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl<K: Scalar> std::ops::$tr for QuadExt<K> {
            type Output = QuadExt<K>;
            fn $m(self, rhs: QuadExt<K>) -> QuadExt<K> {
                self.$checked(&rhs).expect("mixed quadratic-extension contexts")
            }
        }
        impl<'a, K: Scalar> std::ops::$tr<&'a QuadExt<K>> for QuadExt<K> {
            type Output = QuadExt<K>;
            fn $m(self, rhs: &'a QuadExt<K>) -> QuadExt<K> {
                self.$checked(rhs).expect("mixed quadratic-extension contexts")
            }
        }
    };
}
quad_binop!(Add, add, checked_add);
quad_binop!(Sub, sub, checked_sub);
quad_binop!(Mul, mul, checked_mul);

impl<K: Scalar> std::ops::Neg for QuadExt<K> {
    type Output = QuadExt<K>;
    fn neg(self) -> QuadExt<K> {
        QuadExt { ctx: self.ctx, a0: -self.a0, a1: -self.a1 }
    }
}

impl<K: Scalar> Scalar for QuadExt<K> {
    fn zero() -> Self {
        QuadExt::base(K::zero())
    }
    fn one() -> Self {
        QuadExt::base(K::one())
    }
    fn from_rational(r: &Rational) -> Self {
        QuadExt::base(K::from_rational(r))
    }
    fn is_zero(&self) -> bool {
        self.a0.is_zero() && self.a1.is_zero()
    }
    fn inv(&self) -> Result<Self> {
        self.checked_inv()
    }
    fn to_rational(&self) -> Option<Rational> {
        self.as_base().and_then(|a| a.to_rational())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn golden() -> Arc<QuadCtx<Rational>> {
        // theta^2 = theta + 1
        Arc::new(QuadCtx { s: Rational::from(1), p: Rational::from(-1) })
    }

    #[test]
    fn generator_satisfies_minimal_polynomial() {
        let ctx = golden();
        let t = QuadExt::generator(ctx.clone());
        let lhs = t.clone() * &t;
        let rhs = t.clone() + &QuadExt::one();
        assert_eq!(lhs, rhs);
        assert_eq!((lhs - &rhs).as_base(), Some(&Rational::from(0)));
    }

    #[test]
    fn inverse() {
        let ctx = golden();
        let x = QuadExt::new(ctx, Rational::new(2, 3), Rational::from(-5));
        let y = x.inv().unwrap();
        assert!((x * &y).is_one());
    }

    #[test]
    fn mixing_contexts_is_an_error() {
        let a = QuadExt::generator(golden());
        let b = QuadExt::generator(Arc::new(QuadCtx { s: Rational::from(0), p: Rational::from(-2) }));
        assert_eq!(a.checked_add(&b), Err(Error::MixedContext));
        assert!(a.checked_add(&QuadExt::one()).is_ok());
    }
}
