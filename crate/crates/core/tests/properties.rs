mod common;

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use common::{monomial_symmetric, partition, small_partitions};
use proptest::prelude::*;
use symterp::exactfield::{parse_ratfunc, QuadCtx};
use symterp::newton::interpolation_polynomial;
use symterp::partition::{enumerate_partitions, enumerate_reverse_tableaux};
use symterp::{Grid, Partition, QuadExt, RatFunc, Rational, Scalar, SymPoly};

fn rational() -> impl Strategy<Value = Rational> {
    (-50i64..=50, 1i64..=12).prop_map(|(n, d)| Rational::new(n, d))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |x| !x.is_zero())
}

fn part() -> impl Strategy<Value = Partition> {
    prop::collection::vec(0usize..6, 0..5).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(v).unwrap()
    })
}

/// Elements of Q(theta), theta^2 = 3 theta - 1.
fn quad() -> impl Strategy<Value = QuadExt<Rational>> {
    (rational(), rational()).prop_map(|(a, b)| {
        let ctx = Arc::new(QuadCtx { s: Rational::from(3), p: Rational::from(1) });
        QuadExt::new(ctx, a, b)
    })
}

/// Polynomials in x, y with small integer coefficients and degree <= 2 in each.
fn ratpoly() -> impl Strategy<Value = RatFunc> {
    prop::collection::vec(-4i64..=4, 9).prop_map(|c| {
        let (x, y) = (RatFunc::var("x"), RatFunc::var("y"));
        let mut s = RatFunc::zero();
        for (k, coef) in c.into_iter().enumerate() {
            let term = RatFunc::from_i64(coef) * &x.pow((k / 3) as u32) * &y.pow((k % 3) as u32);
            s = s + &term;
        }
        s
    })
}

/// Number of semistandard fillings of `mu` with entries in `0..m` by the
/// hook-content formula.
fn hook_content(mu: &Partition, m: usize) -> Rational {
    let conj = mu.conjugate();
    let mut v = Rational::one();
    for c in mu.cells() {
        let content = m as i64 + c.j as i64 - c.i as i64;
        let hook = (mu.part(c.i) - c.j) + (conj.part(c.j) - c.i) - 1;
        v = v * &Rational::new(content, hook as i64);
    }
    v
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn rational_field_axioms(a in rational(), b in rational(), c in rational(), d in nonzero_rational()) {
        prop_assert_eq!((a.clone() + &b) + &c, a.clone() + &(b.clone() + &c));
        prop_assert_eq!(a.clone() * &(b.clone() + &c), a.clone() * &b + &(a.clone() * &c));
        prop_assert_eq!(a.clone() * &b, b.clone() * &a);
        prop_assert_eq!(d.clone() * &d.inv().unwrap(), Rational::one());
        prop_assert_eq!((a.clone() - &b) + &b, a);
    }

    #[test]
    fn quadratic_extension_axioms(x in quad(), y in quad(), z in quad()) {
        prop_assert_eq!((x.clone() * &y) * &z, x.clone() * &(y.clone() * &z));
        prop_assert_eq!(x.clone() * &(y.clone() + &z), x.clone() * &y + &(x.clone() * &z));
        prop_assert_eq!((x.clone() * &y).norm(), x.norm() * &y.norm());
        if !x.is_zero() {
            prop_assert_eq!(x.clone() * &x.inv().unwrap(), QuadExt::one());
        }
    }

    #[test]
    fn ratfunc_arithmetic(a in ratpoly(), b in ratpoly()) {
        prop_assert_eq!((a.clone() + &b) - &b, a.clone());
        if !b.is_zero() {
            let q = a.clone().try_div(&b).unwrap();
            prop_assert_eq!(q.clone() * &b, a.clone());
            prop_assert_eq!(parse_ratfunc(&q.to_string()).unwrap(), q);
        }
    }

    #[test]
    fn specialize_is_a_homomorphism(a in ratpoly(), b in ratpoly(), x in rational(), y in rational()) {
        let bind: HashMap<String, Rational> = [("x".to_string(), x), ("y".to_string(), y)].into_iter().collect();
        let (sa, sb) = (a.specialize(&bind).unwrap(), b.specialize(&bind).unwrap());
        prop_assert_eq!((a.clone() * &b).specialize(&bind).unwrap(), sa.clone() * &sb);
        prop_assert_eq!((a + &b).specialize(&bind).unwrap(), sa + &sb);
    }

    #[test]
    fn conjugation_is_an_involution(mu in part()) {
        prop_assert_eq!(mu.conjugate().conjugate(), mu.clone());
        prop_assert_eq!(mu.conjugate().size(), mu.size());
    }

    #[test]
    fn reverse_tableaux_count(mu in part(), n in 0usize..3) {
        let count = enumerate_reverse_tableaux(&mu, n).len();
        let expect = if mu.length() > n + 1 { Rational::zero() } else { hook_content(&mu, n + 1) };
        prop_assert_eq!(Rational::from(count as i64), expect);
    }

    #[test]
    fn sympoly_eval_matches_monomial_oracle(coeffs in prop::collection::vec(rational(), 10), point in prop::collection::vec(rational(), 3)) {
        let parts = small_partitions(3, 3);
        let p = SymPoly::from_terms(3, parts.iter().zip(&coeffs).map(|(k, c)| (partition(k), c.clone()))).unwrap();
        let mut expect = Rational::zero();
        for (k, c) in parts.iter().zip(&coeffs) {
            expect = expect + &(c.clone() * &monomial_symmetric(k, &point));
        }
        prop_assert_eq!(p.eval(&point).unwrap(), expect);
    }

    #[test]
    fn interpolation_conditions_hold(seed in any::<u64>(), n in 0usize..3, d in 0usize..4) {
        let mut rng = common::rng(seed);
        let table: Vec<Vec<Rational>> = (0..=n).map(|_| common::distinct_rationals(&mut rng, d + 2)).collect();
        let g = Grid::explicit(table).unwrap();
        prop_assume!(g.require_nondegenerate(d + 1).is_ok());
        for mu in symterp::partition::partitions_of(d, n + 1) {
            let p = interpolation_polynomial(&g, &mu).unwrap();
            for lambda in enumerate_partitions(d, n + 1) {
                let v = p.eval(&g.knot(&lambda).unwrap()).unwrap();
                prop_assert_eq!(v.is_zero(), lambda != mu);
            }
        }
    }
}

#[test]
fn partition_enumeration_matches_oracle() {
    for d in 0..8 {
        for len in 0..5 {
            let got: BTreeSet<Vec<usize>> = enumerate_partitions(d, len).iter().map(|p| p.parts().to_vec()).collect();
            let expect: BTreeSet<Vec<usize>> = small_partitions(d, len).into_iter().collect();
            assert_eq!(got, expect, "d={d}, len={len}");
            assert_eq!(enumerate_partitions(d, len).len(), expect.len());
        }
    }
}
