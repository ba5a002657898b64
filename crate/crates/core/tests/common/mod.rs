#![allow(dead_code)]

use constraint_forge_core::{GaussRational, PointAssignment, ScalarExpr, Var};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn term(vars: &'static [Var]) -> impl Strategy<Value = ScalarExpr> {
    (
        -4i64..=4,
        1i64..=3,
        proptest::collection::vec((0..vars.len(), 0u32..=2), 0..=2),
    )
        .prop_map(move |(n, d, powers)| {
            let mut t = ScalarExpr::constant(GaussRational::from_ratio(n, d));
            for (v, e) in powers {
                t = &t * &ScalarExpr::var(vars[v]).pow(e);
            }
            t
        })
}

pub fn poly(vars: &'static [Var]) -> impl Strategy<Value = ScalarExpr> {
    proptest::collection::vec(term(vars), 1..=3)
        .prop_map(|ts| ts.iter().fold(ScalarExpr::zero(), |acc, t| &acc + t))
}

pub const PHASE: &[Var] = &[Var::S, Var::P, Var::K, Var::Theta, Var::PiTheta];
pub const PARTICLE: &[Var] = &[Var::S, Var::P, Var::K];

fn denominator(choice: u8) -> ScalarExpr {
    let s = ScalarExpr::s();
    match choice {
        0 => ScalarExpr::one(),
        1 => s,
        2 => &s + &(&ScalarExpr::int(2) * &ScalarExpr::theta()),
        _ => s.pow(2),
    }
}

/// `(a + b R) / den` with small polynomial `a`, `b`.
pub fn scalar_with(vars: &'static [Var], allow_root: bool) -> impl Strategy<Value = ScalarExpr> {
    (poly(vars), poly(vars), 0u8..4, proptest::bool::ANY).prop_map(move |(a, b, den, root)| {
        let num = if allow_root && root {
            &a + &(&b * &ScalarExpr::root())
        } else {
            a
        };
        num.checked_div(&denominator(den)).expect("nonzero denominator")
    })
}

pub fn scalar() -> impl Strategy<Value = ScalarExpr> {
    scalar_with(PHASE, true)
}

fn small_rational() -> impl Strategy<Value = BigRational> {
    (-20i64..=20, 1i64..=20).prop_map(|(n, d)| rational(n, d))
}

/// Admissible point: `S != 0`, and `theta = S (r^2 - 1)/2` so that
/// `R = r` is rational.
pub fn point(d0: usize) -> impl Strategy<Value = PointAssignment> {
    (
        proptest::collection::vec(small_rational(), d0),
        proptest::collection::vec(small_rational(), d0),
        (1i64..=20, 1i64..=20),
        small_rational(),
        small_rational(),
    )
        .prop_filter_map("S = 0", |(q, pi, (rn, rd), pt, c)| {
            let mut p = PointAssignment::new(q, pi);
            let s = p.s();
            if s == rational(0, 1) {
                return None;
            }
            let r = rational(rn, rd);
            p.theta = &s * (&r * &r - rational(1, 1)) / rational(2, 1);
            p.pi_theta = pt;
            p.c = Some(c);
            Some(p)
        })
}

pub fn any_point() -> impl Strategy<Value = PointAssignment> {
    prop_oneof![point(3), point(4), point(5)]
}
